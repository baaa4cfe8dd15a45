#pragma once

#include <string>
#include <vector>

#include "bdwork/rd_model.hpp"
#include "oracles.hpp"

namespace testutil {

inline bdwork::RDCurve make_curve(const std::vector<double>& quality,
                                  const std::vector<double>& cost, std::string codec = "A",
                                  std::string sequence = "Seq",
                                  bdwork::MetricPair pair = {"PSNR", "bitrate_kbps"}) {
    bdwork::RDCurve c{std::move(codec), std::move(sequence), std::move(pair), {}};
    for (std::size_t i = 0; i < quality.size(); ++i)
        c.points.push_back({std::to_string(22 + 5 * i), quality[i], cost[i]});
    return c;
}

inline bdwork::RDCurve make_curve(const oracle::RawCurve& raw, std::string codec = "A",
                                  std::string sequence = "Seq") {
    return make_curve(raw.quality, raw.cost, std::move(codec), std::move(sequence));
}

inline bdwork::MeasurementRow row(std::string seq, std::string codec, std::string label,
                                  double quality, double cost, bool support,
                                  std::string qm = "PSNR", std::string cm = "bitrate_kbps") {
    static std::size_t line = 1;
    return {std::move(seq), std::move(codec), std::move(label),
            std::move(qm),  quality,          std::move(cm),
            cost,           support,          ++line};
}

inline std::string data_path(const std::string& name) {
    return std::string(BDWORK_TEST_DATA_DIR) + "/" + name;
}

}  // namespace testutil
