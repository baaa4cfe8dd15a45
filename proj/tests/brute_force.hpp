#pragma once

// Naive accuracy scoring straight from measurement rows, using the oracle
// fitters, plus synthetic datasets shared by the unit and acceptance suites.

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "bdwork/interpolators.hpp"
#include "bdwork/rd_model.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

namespace testutil::brute {

using bdwork::InterpolationMethod;
using bdwork::MeasurementRow;

// knee_ssim.csv scored by the oracle fitters (scipy agrees to 5 digits)
constexpr double kKneeCsiMean = 0.1698152061954688;
constexpr double kKneeCsiMax = 0.59257956449608828;
constexpr double kKneePchipMean = 0.051915910948951913;
constexpr double kKneePchipMax = 0.23622049280856325;
constexpr double kKneeAkimaMean = 0.038316314274762002;
constexpr double kKneeAkimaMax = 0.20017557808005168;

// 16 QPs per curve, supports at 22/27/32/37, log cost a random cubic of quality
// with a little multiplicative wobble so that interpolation is not exact.
inline std::vector<MeasurementRow> synthetic_rows(std::mt19937_64& rng, int codecs, int sequences,
                                                  double wobble) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<MeasurementRow> rows;
    for (int c = 0; c < codecs; ++c) {
        for (int s = 0; s < sequences; ++s) {
            const double q0 = 34.0 + u(rng), slope = 0.06 + 0.01 * u(rng);
            const double curv = 0.004 + 0.002 * u(rng), cub = 0.0002 * u(rng);
            for (int qp = 22; qp <= 37; ++qp) {
                const double t = 37 - qp;
                const double q = q0 + 0.45 * t;
                const double lc = 2.0 + slope * t + curv * t * t + cub * t * t * t;
                const bool support = qp % 5 == 2;
                const double noise = support ? 1.0 : 1.0 + wobble * u(rng);
                rows.push_back(testutil::row("seq" + std::to_string(s), "codec" + std::to_string(c),
                                             std::to_string(qp), q, std::pow(10.0, lc) * noise,
                                             support));
            }
        }
    }
    return rows;
}

inline double oracle_eval(InterpolationMethod m, const oracle::Vec& x, const oracle::Vec& y,
                          double q) {
    switch (m) {
        case InterpolationMethod::single_cubic:
            return oracle::lagrange_eval(x, y, q);
        case InterpolationMethod::csi_not_a_knot:
            return oracle::textbook_spline(x, y, oracle::Boundary::not_a_knot)(q);
        case InterpolationMethod::csi_natural:
            return oracle::textbook_spline(x, y, oracle::Boundary::natural)(q);
        case InterpolationMethod::csi_clamped:
            return oracle::textbook_spline(x, y, oracle::Boundary::clamped_zero)(q);
        case InterpolationMethod::pchip:
            return oracle::pchip_eval(x, y, q);
        case InterpolationMethod::akima:
            return oracle::akima_eval(x, y, q);
    }
    return NAN;
}

struct BruteScore {
    double e_bar;
    double e_max;
    std::size_t n;
};

// Naive loop over codecs, sequences and points straight from the rows.
inline BruteScore brute_force(const std::vector<MeasurementRow>& rows, InterpolationMethod m) {
    std::set<std::string> codecs, seqs;
    for (const auto& r : rows) {
        codecs.insert(r.codec);
        seqs.insert(r.sequence);
    }
    double sum = 0.0, worst = 0.0;
    std::size_t n = 0;
    for (const auto& codec : codecs) {
        for (const auto& seq : seqs) {
            std::vector<std::pair<double, double>> support;
            for (const auto& r : rows)
                if (r.codec == codec && r.sequence == seq && r.support)
                    support.emplace_back(r.quality, std::log10(r.cost));
            std::sort(support.begin(), support.end());
            oracle::Vec x, y;
            for (auto [q, lc] : support) {
                x.push_back(q);
                y.push_back(lc);
            }
            for (const auto& r : rows) {
                if (r.codec != codec || r.sequence != seq) continue;
                const double est = std::pow(10.0, oracle_eval(m, x, y, r.quality));
                const double e = std::abs(est - r.cost) / r.cost;
                sum += e;
                worst = std::max(worst, e);
                ++n;
            }
        }
    }
    return {sum / static_cast<double>(n), worst, n};
}

}  // namespace testutil::brute
