#pragma once

// Interpolation accuracy against dense validation measurements: for every
// validation point, the relative horizontal distance between the measured
// cost and the cost read off the interpolated curve at the same quality.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "bdwork/bd_calculus.hpp"
#include "bdwork/errors.hpp"
#include "bdwork/interpolators.hpp"
#include "bdwork/rd_model.hpp"

namespace bdwork {

struct PointError {
    std::string codec_id;
    std::string sequence_id;
    std::string label;
    double quality = 0.0;
    double interpolated_cost = 0.0;
    double actual_cost = 0.0;
    double relative_error = 0.0;  // |interpolated - actual| / actual
};

inline PointError make_point_error(std::string codec, std::string sequence, const RDPoint& p,
                                   double interpolated_cost) {
    return {std::move(codec),
            std::move(sequence),
            p.label,
            p.quality,
            interpolated_cost,
            p.cost,
            std::abs(interpolated_cost - p.cost) / p.cost};
}

struct AccuracyReport {
    InterpolationMethod method = InterpolationMethod::akima;
    MetricPair metric_pair;
    std::vector<PointError> point_errors;
    double e_bar = 0.0;  // mean relative error over all points
    double e_max = 0.0;  // maximum relative error over all points
    std::size_t codec_count = 0;
    std::size_t sequence_count = 0;
    std::map<CurveKey, std::size_t> points_per_curve;

    std::size_t point_count() const { return point_errors.size(); }
};

/// Scores one method on every (codec, sequence) curve of a metric pair. The
/// mean runs element-wise over all validation points, so curves with more
/// points weigh more when counts differ.
inline AccuracyReport assess(const Dataset& dataset, InterpolationMethod method,
                             const MetricPair& pair) {
    AccuracyReport report;
    report.method = method;
    report.metric_pair = pair;
    std::set<std::string> codecs, sequences;
    double sum = 0.0;
    for (const auto& [key, curve] : dataset.supporting_curves()) {
        if (!(key.metric_pair == pair)) continue;
        const auto* points = dataset.validation(key);
        if (!points || points->empty()) continue;
        PiecewiseCubic pp = [&] {
            try {
                return fit_log_cost(curve, method);
            } catch (const FitError& e) {
                throw FitError(key.describe() + ": " + e.what());
            }
        }();
        for (const auto& p : *points) {
            auto err = make_point_error(key.codec, key.sequence, p,
                                        std::pow(10.0, pp.evaluate(p.quality)));
            sum += err.relative_error;
            report.e_max = std::max(report.e_max, err.relative_error);
            report.point_errors.push_back(std::move(err));
        }
        report.points_per_curve[key] = points->size();
        codecs.insert(key.codec);
        sequences.insert(key.sequence);
    }
    if (report.point_errors.empty())
        throw ComputeError("no validation points for metric pair " + pair.label());
    report.e_bar = sum / static_cast<double>(report.point_errors.size());
    report.codec_count = codecs.size();
    report.sequence_count = sequences.size();
    return report;
}

struct MethodComparison {
    MetricPair metric_pair;
    std::vector<AccuracyReport> ranked;  // ascending e_bar, then e_max, then name
    std::vector<std::string> notices;    // methods skipped and why
};

inline MethodComparison compare_methods(
    const Dataset& dataset, const MetricPair& pair,
    std::span<const InterpolationMethod> methods = kComparedMethods) {
    MethodComparison out;
    out.metric_pair = pair;
    for (auto method : methods) {
        std::string reason;
        for (const auto& [key, curve] : dataset.supporting_curves()) {
            if (!(key.metric_pair == pair)) continue;
            if (!accepts_point_count(method, curve.points.size())) {
                reason = key.describe() + " has " + std::to_string(curve.points.size()) +
                         " supporting points";
                break;
            }
        }
        if (!reason.empty()) {
            out.notices.push_back("skipping " + std::string(method_name(method)) + " for " +
                                  pair.label() + ": " + reason + ", needs " +
                                  (max_points(method) ? "exactly " : "at least ") +
                                  std::to_string(min_points(method)));
            continue;
        }
        out.ranked.push_back(assess(dataset, method, pair));
    }
    std::sort(out.ranked.begin(), out.ranked.end(), [](const auto& a, const auto& b) {
        return std::make_tuple(a.e_bar, a.e_max, method_name(a.method)) <
               std::make_tuple(b.e_bar, b.e_max, method_name(b.method));
    });
    return out;
}

}  // namespace bdwork
