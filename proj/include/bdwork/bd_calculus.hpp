#pragma once

// Bjontegaard-Delta averages between two codecs' curves. Codec A is the
// reference, codec B the test; a negative BD-rate means B needs less cost
// than A at equal quality.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "bdwork/errors.hpp"
#include "bdwork/format.hpp"
#include "bdwork/interpolators.hpp"
#include "bdwork/rd_model.hpp"

namespace bdwork {

/// (quality, log10 cost) pair of one curve point.
struct LogPoint {
    double quality;
    double log_cost;
};

inline std::vector<LogPoint> log_transform(const RDCurve& curve) {
    std::vector<LogPoint> out;
    out.reserve(curve.points.size());
    for (const auto& p : curve.points) {
        if (!(p.cost > 0.0))
            throw InputError("cost must be positive for the log transform (point '" + p.label +
                             "')");
        out.push_back({p.quality, std::log10(p.cost)});
    }
    return out;
}

struct OverlapBounds {
    double low;
    double high;

    OverlapBounds(double lo, double hi) : low(lo), high(hi) {
        if (!(lo < hi))
            throw OverlapError("no overlap: lower bound " + format_roundtrip(lo) +
                               " is not below upper bound " + format_roundtrip(hi));
    }

    double width() const { return high - low; }

    friend bool operator==(const OverlapBounds&, const OverlapBounds&) = default;
};

/// Intersection of two closed spans [a_lo, a_hi] and [b_lo, b_hi].
inline OverlapBounds overlap_of(double a_lo, double a_hi, double b_lo, double b_hi) {
    return OverlapBounds(std::max(a_lo, b_lo), std::min(a_hi, b_hi));
}

/// Common quality span of two curves.
inline OverlapBounds overlap_bounds(const RDCurve& a, const RDCurve& b) {
    if (a.points.empty() || b.points.empty()) throw OverlapError("no overlap: empty curve");
    auto [a_lo, a_hi] = std::minmax_element(a.points.begin(), a.points.end(),
                                            [](auto& p, auto& q) { return p.quality < q.quality; });
    auto [b_lo, b_hi] = std::minmax_element(b.points.begin(), b.points.end(),
                                            [](auto& p, auto& q) { return p.quality < q.quality; });
    return overlap_of(a_lo->quality, a_hi->quality, b_lo->quality, b_hi->quality);
}

enum class BDDirection { rate, quality };

constexpr std::string_view direction_name(BDDirection d) {
    return d == BDDirection::rate ? "rate" : "quality";
}

struct BDResult {
    double delta = 0.0;  // fraction for rate, quality units for quality
    BDDirection direction = BDDirection::rate;
    InterpolationMethod method = InterpolationMethod::akima;
    OverlapBounds bounds{0.0, 1.0};
    std::string codec_ref;
    std::string codec_test;
    std::string sequence_id;
    MetricPair metric_pair;

    friend bool operator==(const BDResult&, const BDResult&) = default;
};

namespace detail {

inline void require_fit_ready(const RDCurve& c, InterpolationMethod method) {
    auto verdict = validate_curve(c, method);
    if (!verdict.ok()) {
        std::string msg = "curve " + c.codec_id + "/" + c.sequence_id + " cannot be fitted with " +
                          std::string(method_name(method)) + ":";
        for (const auto& v : verdict.violations()) msg += " " + v + ";";
        msg.pop_back();
        throw FitError(msg);
    }
}

inline void require_same_context(const RDCurve& a, const RDCurve& b) {
    if (!(a.metric_pair == b.metric_pair))
        throw InputError("curves use different metric pairs (" + a.metric_pair.label() + " vs " +
                         b.metric_pair.label() + ")");
    if (a.sequence_id != b.sequence_id)
        throw InputError("curves belong to different sequences ('" + a.sequence_id + "' vs '" +
                         b.sequence_id + "')");
}

/// Points sorted by ascending quality, so results do not depend on input order.
inline RDCurve sorted_by_quality(RDCurve c) {
    std::stable_sort(c.points.begin(), c.points.end(),
                     [](const RDPoint& p, const RDPoint& q) { return p.quality < q.quality; });
    return c;
}

}  // namespace detail

/// Interpolant of log10(cost) over quality for one curve.
inline PiecewiseCubic fit_log_cost(const RDCurve& curve, InterpolationMethod method) {
    auto c = detail::sorted_by_quality(curve);
    detail::require_fit_ready(c, method);
    auto lp = log_transform(c);
    std::vector<double> x, y;
    for (const auto& p : lp) {
        x.push_back(p.quality);
        y.push_back(p.log_cost);
    }
    return fit(method, x, y);
}

/// Average relative cost difference of B against A over the common quality span:
/// 10^(mean of log10 cost_B - log10 cost_A) - 1.
inline BDResult bd_rate(const RDCurve& a, const RDCurve& b, InterpolationMethod method) {
    detail::require_same_context(a, b);
    auto bounds = overlap_bounds(a, b);
    auto fa = fit_log_cost(a, method);
    auto fb = fit_log_cost(b, method);
    const double diff =
        fb.integrate(bounds.low, bounds.high) - fa.integrate(bounds.low, bounds.high);
    const double delta = std::pow(10.0, diff / bounds.width()) - 1.0;
    return {delta,      BDDirection::rate, method,        bounds,
            a.codec_id, b.codec_id,        a.sequence_id, a.metric_pair};
}

/// Interpolant of quality over log10(cost). Needs strictly increasing log cost
/// once points are ordered by quality; anything else cannot be inverted.
inline PiecewiseCubic fit_quality_over_log_cost(const RDCurve& curve, InterpolationMethod method) {
    auto c = detail::sorted_by_quality(curve);
    detail::require_fit_ready(c, method);
    auto lp = log_transform(c);
    for (std::size_t i = 1; i < lp.size(); ++i)
        if (!(lp[i].log_cost > lp[i - 1].log_cost))
            throw FitError("axis not invertible: log cost of curve " + c.codec_id + "/" +
                           c.sequence_id + " is not strictly increasing");
    std::vector<double> x, y;
    for (const auto& p : lp) {
        x.push_back(p.log_cost);
        y.push_back(p.quality);
    }
    return fit(method, x, y);
}

/// Average quality difference of B against A over the common log-cost span.
inline BDResult bd_quality(const RDCurve& a, const RDCurve& b, InterpolationMethod method) {
    detail::require_same_context(a, b);
    auto fa = fit_quality_over_log_cost(a, method);
    auto fb = fit_quality_over_log_cost(b, method);
    auto bounds = overlap_of(fa.lower(), fa.upper(), fb.lower(), fb.upper());
    const double diff =
        fb.integrate(bounds.low, bounds.high) - fa.integrate(bounds.low, bounds.high);
    return {diff / bounds.width(), BDDirection::quality, method, bounds, a.codec_id, b.codec_id,
            a.sequence_id,         a.metric_pair};
}

struct BDSummary {
    BDDirection direction;
    InterpolationMethod method;
    std::string codec_ref;
    std::string codec_test;
    double mean;
    double min;
    double max;
    std::vector<BDResult> per_sequence;
};

inline BDSummary aggregate_bd(const std::vector<BDResult>& results) {
    if (results.empty()) throw ComputeError("cannot aggregate an empty result list");
    const auto& first = results.front();
    BDSummary s{first.direction,
                first.method,
                first.codec_ref,
                first.codec_test,
                0.0,
                std::numeric_limits<double>::infinity(),
                -std::numeric_limits<double>::infinity(),
                results};
    double sum = 0.0;
    for (const auto& r : results) {
        if (r.direction != first.direction || r.method != first.method ||
            r.codec_ref != first.codec_ref || r.codec_test != first.codec_test)
            throw ComputeError("aggregated results must share direction, method and codec pair");
        sum += r.delta;
        s.min = std::min(s.min, r.delta);
        s.max = std::max(s.max, r.delta);
    }
    s.mean = sum / static_cast<double>(results.size());
    return s;
}

}  // namespace bdwork
