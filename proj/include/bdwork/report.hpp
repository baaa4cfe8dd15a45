#pragma once

// CSV and JSON renderings of BD and accuracy results. CSV rounds for reading
// (BD-rate as 2-decimal percent, accuracy as 3-decimal percent); JSON keeps
// full double precision.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "bdwork/accuracy.hpp"
#include "bdwork/bd_calculus.hpp"
#include "bdwork/format.hpp"

namespace bdwork {

using ordered_json = nlohmann::ordered_json;

/// BD results of one codec pair, grouped per metric pair.
struct BDReport {
    BDDirection direction = BDDirection::rate;
    InterpolationMethod method = InterpolationMethod::akima;
    std::string codec_ref;
    std::string codec_test;
    std::vector<BDSummary> groups;
};

inline std::string format_bd_delta(double delta, BDDirection dir) {
    return dir == BDDirection::rate ? format_percent(delta, 2) : format_fixed(delta, 4);
}

inline std::string bd_report_csv(const BDReport& report) {
    std::string out = "sequence,metric_pair,method,direction,ref,test,low,high,delta\n";
    const std::string common = std::string(method_name(report.method)) + "," +
                               std::string(direction_name(report.direction)) + "," +
                               csv_field(report.codec_ref) + "," + csv_field(report.codec_test) +
                               ",";
    for (const auto& g : report.groups) {
        const std::string pair = csv_field(g.per_sequence.front().metric_pair.label());
        for (const auto& r : g.per_sequence) {
            out += csv_field(r.sequence_id) + "," + pair + "," + common +
                   format_fixed(r.bounds.low, 4) + "," + format_fixed(r.bounds.high, 4) + "," +
                   format_bd_delta(r.delta, r.direction) + "\n";
        }
        out +=
            "mean," + pair + "," + common + ",," + format_bd_delta(g.mean, report.direction) + "\n";
    }
    return out;
}

inline ordered_json bd_report_json(const BDReport& report) {
    ordered_json doc;
    doc["direction"] = direction_name(report.direction);
    doc["method"] = method_name(report.method);
    doc["ref"] = report.codec_ref;
    doc["test"] = report.codec_test;
    doc["groups"] = ordered_json::array();
    for (const auto& g : report.groups) {
        ordered_json grp;
        grp["metric_pair"] = g.per_sequence.front().metric_pair.label();
        grp["mean"] = g.mean;
        grp["min"] = g.min;
        grp["max"] = g.max;
        grp["results"] = ordered_json::array();
        for (const auto& r : g.per_sequence) {
            grp["results"].push_back({{"sequence", r.sequence_id},
                                      {"low", r.bounds.low},
                                      {"high", r.bounds.high},
                                      {"delta", r.delta}});
        }
        doc["groups"].push_back(std::move(grp));
    }
    return doc;
}

/// Parses bd_report_json output back into per-sequence results.
inline std::vector<BDResult> read_bd_report_json(std::string_view text) {
    auto doc = nlohmann::json::parse(text);
    auto method = parse_method(doc.at("method").get<std::string>());
    if (!method) throw InputError("unknown method in BD report");
    const auto dir =
        doc.at("direction").get<std::string>() == "rate" ? BDDirection::rate : BDDirection::quality;
    std::vector<BDResult> out;
    for (const auto& g : doc.at("groups")) {
        auto pair = MetricPair::parse(g.at("metric_pair").get<std::string>());
        for (const auto& r : g.at("results")) {
            out.push_back({r.at("delta").get<double>(), dir, *method,
                           OverlapBounds(r.at("low").get<double>(), r.at("high").get<double>()),
                           doc.at("ref").get<std::string>(), doc.at("test").get<std::string>(),
                           r.at("sequence").get<std::string>(), pair});
        }
    }
    return out;
}

inline std::string accuracy_csv(const std::vector<MethodComparison>& tables) {
    std::string out = "method,metric_pair,e_bar,e_max,n_points\n";
    for (const auto& t : tables)
        for (const auto& r : t.ranked)
            out += std::string(method_name(r.method)) + "," + csv_field(r.metric_pair.label()) +
                   "," + format_percent(r.e_bar, 3) + "," + format_percent(r.e_max, 3) + "," +
                   std::to_string(r.point_count()) + "\n";
    return out;
}

inline std::string accuracy_points_csv(const std::vector<MethodComparison>& tables) {
    std::string out =
        "method,metric_pair,codec,sequence,label,quality,actual_cost,interpolated_cost,"
        "relative_error\n";
    for (const auto& t : tables)
        for (const auto& r : t.ranked)
            for (const auto& p : r.point_errors)
                out += std::string(method_name(r.method)) + "," + csv_field(r.metric_pair.label()) +
                       "," + csv_field(p.codec_id) + "," + csv_field(p.sequence_id) + "," +
                       csv_field(p.label) + "," + format_roundtrip(p.quality) + "," +
                       format_roundtrip(p.actual_cost) + "," +
                       format_roundtrip(p.interpolated_cost) + "," +
                       format_percent(p.relative_error, 3) + "\n";
    return out;
}

inline ordered_json accuracy_json(const std::vector<MethodComparison>& tables) {
    ordered_json doc;
    doc["pairs"] = ordered_json::array();
    for (const auto& t : tables) {
        ordered_json pair;
        pair["metric_pair"] = t.metric_pair.label();
        pair["methods"] = ordered_json::array();
        for (const auto& r : t.ranked) {
            ordered_json m;
            m["method"] = method_name(r.method);
            m["e_bar"] = r.e_bar;
            m["e_max"] = r.e_max;
            m["n_points"] = r.point_count();
            m["codecs"] = r.codec_count;
            m["sequences"] = r.sequence_count;
            m["curves"] = ordered_json::array();
            for (const auto& [key, n] : r.points_per_curve)
                m["curves"].push_back(
                    {{"codec", key.codec}, {"sequence", key.sequence}, {"n_points", n}});
            pair["methods"].push_back(std::move(m));
        }
        pair["notices"] = t.notices;
        doc["pairs"].push_back(std::move(pair));
    }
    return doc;
}

}  // namespace bdwork
