#pragma once

// Interpolation backends for performance curves. Every backend produces the
// same PiecewiseCubic representation: breakpoints x_0 < ... < x_n and, per
// interval, the coefficients of p_j(t) = a + b t + c t^2 + d t^3 in the local
// coordinate t = x - x_j.

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bdwork/errors.hpp"

namespace bdwork {

enum class InterpolationMethod {
    single_cubic,
    csi_not_a_knot,
    csi_natural,
    csi_clamped,
    pchip,
    akima,
};

inline constexpr std::array<InterpolationMethod, 6> kAllMethods = {
    InterpolationMethod::single_cubic, InterpolationMethod::csi_not_a_knot,
    InterpolationMethod::csi_natural,  InterpolationMethod::csi_clamped,
    InterpolationMethod::pchip,        InterpolationMethod::akima,
};

/// The five backends compared in accuracy studies. single_cubic is left out
/// because on four points it coincides with csi_not_a_knot.
inline constexpr std::array<InterpolationMethod, 5> kComparedMethods = {
    InterpolationMethod::csi_not_a_knot, InterpolationMethod::csi_natural,
    InterpolationMethod::csi_clamped,    InterpolationMethod::pchip,
    InterpolationMethod::akima,
};

constexpr std::string_view method_name(InterpolationMethod m) {
    switch (m) {
        case InterpolationMethod::single_cubic:
            return "single_cubic";
        case InterpolationMethod::csi_not_a_knot:
            return "csi_not_a_knot";
        case InterpolationMethod::csi_natural:
            return "csi_natural";
        case InterpolationMethod::csi_clamped:
            return "csi_clamped";
        case InterpolationMethod::pchip:
            return "pchip";
        case InterpolationMethod::akima:
            return "akima";
    }
    return "unknown";
}

/// Case-insensitive lookup of the exact enumeration names.
inline std::optional<InterpolationMethod> parse_method(std::string_view name) {
    std::string lowered(name);
    std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    for (auto m : kAllMethods) {
        if (method_name(m) == lowered) return m;
    }
    return std::nullopt;
}

/// Smallest admissible number of supporting points.
constexpr std::size_t min_points(InterpolationMethod m) {
    switch (m) {
        case InterpolationMethod::single_cubic:
            return 4;
        case InterpolationMethod::csi_not_a_knot:
            return 4;
        case InterpolationMethod::csi_natural:
            return 3;
        case InterpolationMethod::csi_clamped:
            return 3;
        case InterpolationMethod::pchip:
            return 2;
        case InterpolationMethod::akima:
            return 3;
    }
    return 0;
}

/// Largest admissible number of supporting points (single_cubic is a global cubic).
constexpr std::optional<std::size_t> max_points(InterpolationMethod m) {
    if (m == InterpolationMethod::single_cubic) return 4;
    return std::nullopt;
}

constexpr bool accepts_point_count(InterpolationMethod m, std::size_t n) {
    auto hi = max_points(m);
    return n >= min_points(m) && (!hi || n <= *hi);
}

/// Required continuity order at interior breakpoints (1 = C1, 2 = C2).
constexpr int continuity_order(InterpolationMethod m) {
    switch (m) {
        case InterpolationMethod::pchip:
        case InterpolationMethod::akima:
            return 1;
        default:
            return 2;
    }
}

enum class SplineBoundary { not_a_knot, natural, clamped_zero };

using CubicCoefficients = std::array<double, 4>;

class PiecewiseCubic {
public:
    PiecewiseCubic(std::vector<double> breakpoints, std::vector<CubicCoefficients> segments,
                   InterpolationMethod method)
        : breakpoints_(std::move(breakpoints)), segments_(std::move(segments)), method_(method) {
        if (breakpoints_.size() < 2 || segments_.size() + 1 != breakpoints_.size())
            throw FitError("piecewise cubic needs n+1 breakpoints for n segments");
    }

    const std::vector<double>& breakpoints() const { return breakpoints_; }
    const std::vector<CubicCoefficients>& segments() const { return segments_; }
    InterpolationMethod method() const { return method_; }
    std::size_t segment_count() const { return segments_.size(); }
    double lower() const { return breakpoints_.front(); }
    double upper() const { return breakpoints_.back(); }

    /// Index of the segment containing x; x == upper() maps to the last segment.
    std::size_t locate(double x) const {
        if (!(x >= lower() && x <= upper()))
            throw DomainError("abscissa " + std::to_string(x) + " outside interpolation domain [" +
                              std::to_string(lower()) + ", " + std::to_string(upper()) + "]");
        auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
        auto j = static_cast<std::size_t>(std::distance(breakpoints_.begin(), it));
        return std::min(j == 0 ? 0 : j - 1, segments_.size() - 1);
    }

    double operator()(double x) const { return evaluate(x); }

    double evaluate(double x) const {
        std::size_t j = locate(x);
        return eval_segment(j, x - breakpoints_[j]);
    }

    /// order-th derivative (0..3) at x.
    double derivative(double x, int order = 1) const {
        std::size_t j = locate(x);
        return segment_derivative(j, x - breakpoints_[j], order);
    }

    double eval_segment(std::size_t j, double t) const {
        const auto& c = segments_[j];
        return c[0] + t * (c[1] + t * (c[2] + t * c[3]));
    }

    double segment_derivative(std::size_t j, double t, int order) const {
        const auto& c = segments_[j];
        switch (order) {
            case 0:
                return eval_segment(j, t);
            case 1:
                return c[1] + t * (2.0 * c[2] + t * 3.0 * c[3]);
            case 2:
                return 2.0 * c[2] + 6.0 * c[3] * t;
            case 3:
                return 6.0 * c[3];
            default:
                return 0.0;
        }
    }

    /// Exact integral over [a, b] from the segment antiderivatives.
    double integrate(double a, double b) const {
        if (a > b) throw DomainError("integration bounds reversed");
        if (a < lower() || b > upper())
            throw DomainError("integration bounds outside interpolation domain");
        if (a == b) return 0.0;
        std::size_t first = locate(a);
        std::size_t last = locate(b);
        double total = 0.0;
        for (std::size_t j = first; j <= last; ++j) {
            double x0 = breakpoints_[j];
            double lo = std::max(a, x0) - x0;
            double hi = std::min(b, breakpoints_[j + 1]) - x0;
            total += antiderivative(j, hi) - antiderivative(j, lo);
        }
        return total;
    }

    friend bool operator==(const PiecewiseCubic&, const PiecewiseCubic&) = default;

private:
    double antiderivative(std::size_t j, double t) const {
        const auto& c = segments_[j];
        return t * (c[0] + t * (c[1] / 2.0 + t * (c[2] / 3.0 + t * c[3] / 4.0)));
    }

    std::vector<double> breakpoints_;
    std::vector<CubicCoefficients> segments_;
    InterpolationMethod method_;
};

inline double evaluate(const PiecewiseCubic& pp, double x) { return pp.evaluate(x); }

inline double integrate(const PiecewiseCubic& pp, double a, double b) { return pp.integrate(a, b); }

namespace detail {

inline void check_input(std::span<const double> x, std::span<const double> y,
                        InterpolationMethod method) {
    if (x.size() != y.size()) throw FitError("abscissa and ordinate counts differ");
    if (!accepts_point_count(method, x.size())) {
        std::string need = method == InterpolationMethod::single_cubic
                               ? "exactly 4"
                               : "at least " + std::to_string(min_points(method));
        throw FitError(std::string(method_name(method)) + " requires " + need +
                       " supporting points, got " + std::to_string(x.size()));
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!std::isfinite(x[i]) || !std::isfinite(y[i]))
            throw FitError("non-finite supporting point");
        if (i > 0 && !(x[i] > x[i - 1])) throw FitError("abscissae must be strictly increasing");
    }
}

inline std::vector<double> secants(std::span<const double> x, std::span<const double> y) {
    std::vector<double> s(x.size() - 1);
    for (std::size_t i = 0; i + 1 < x.size(); ++i) s[i] = (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
    return s;
}

/// Coefficients of a cubic Hermite segment from end values and end slopes.
inline CubicCoefficients hermite_segment(double h, double y0, double y1, double d0, double d1) {
    double secant = (y1 - y0) / h;
    return {y0, d0, (3.0 * secant - 2.0 * d0 - d1) / h, (d0 + d1 - 2.0 * secant) / (h * h)};
}

inline PiecewiseCubic from_slopes(std::span<const double> x, std::span<const double> y,
                                  const std::vector<double>& slopes, InterpolationMethod method) {
    std::vector<CubicCoefficients> segs(x.size() - 1);
    for (std::size_t j = 0; j + 1 < x.size(); ++j)
        segs[j] = hermite_segment(x[j + 1] - x[j], y[j], y[j + 1], slopes[j], slopes[j + 1]);
    return PiecewiseCubic(std::vector<double>(x.begin(), x.end()), std::move(segs), method);
}

// Thomas algorithm; lower[0] and upper[n-1] are ignored.
inline std::vector<double> solve_tridiagonal(std::vector<double> lower, std::vector<double> diag,
                                             std::vector<double> upper, std::vector<double> rhs) {
    const std::size_t n = diag.size();
    for (std::size_t i = 1; i < n; ++i) {
        if (diag[i - 1] == 0.0) throw FitError("singular spline system");
        double w = lower[i] / diag[i - 1];
        diag[i] -= w * upper[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    if (diag[n - 1] == 0.0) throw FitError("singular spline system");
    std::vector<double> sol(n);
    sol[n - 1] = rhs[n - 1] / diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) sol[i] = (rhs[i] - upper[i] * sol[i + 1]) / diag[i];
    return sol;
}

inline int sign(double v) { return (v > 0.0) - (v < 0.0); }

}  // namespace detail

/// Global cubic through exactly four points, stored as one segment on
/// [x_0, x_3]. Built from Newton divided differences in t = x - x_0, which
/// solves the same Vandermonde system without forming it.
inline PiecewiseCubic fit_single_cubic(std::span<const double> x, std::span<const double> y) {
    detail::check_input(x, y, InterpolationMethod::single_cubic);
    const double h1 = x[1] - x[0], h2 = x[2] - x[0], h3 = x[3] - x[0];
    double f01 = (y[1] - y[0]) / h1;
    double f12 = (y[2] - y[1]) / (x[2] - x[1]);
    double f23 = (y[3] - y[2]) / (x[3] - x[2]);
    double f012 = (f12 - f01) / h2;
    double f123 = (f23 - f12) / (x[3] - x[1]);
    double f0123 = (f123 - f012) / h3;
    if (!std::isfinite(f0123)) throw FitError("singular Vandermonde system");
    // y0 + f01 t + f012 t (t - h1) + f0123 t (t - h1)(t - h2)
    CubicCoefficients c{y[0], f01 - f012 * h1 + f0123 * h1 * h2, f012 - f0123 * (h1 + h2), f0123};
    return PiecewiseCubic({x[0], x[3]}, {c}, InterpolationMethod::single_cubic);
}

/// Monomial coefficients a + b x + c x^2 + d x^3 of a one-segment cubic in
/// global coordinates (expands the local shift t = x - x_0).
inline CubicCoefficients global_coefficients(const PiecewiseCubic& pp) {
    if (pp.segment_count() != 1) throw FitError("global coefficients need a single segment");
    const auto& c = pp.segments().front();
    const double s = pp.lower();
    return {c[0] - c[1] * s + c[2] * s * s - c[3] * s * s * s,
            c[1] - 2.0 * c[2] * s + 3.0 * c[3] * s * s, c[2] - 3.0 * c[3] * s, c[3]};
}

/// C2 cubic spline through all points. Solves for the second derivatives M_i
/// at the knots; not-a-knot eliminates M_0 and M_n from the end rows so the
/// system stays tridiagonal.
inline PiecewiseCubic fit_csi(std::span<const double> x, std::span<const double> y,
                              SplineBoundary boundary) {
    const auto method = boundary == SplineBoundary::not_a_knot ? InterpolationMethod::csi_not_a_knot
                        : boundary == SplineBoundary::natural  ? InterpolationMethod::csi_natural
                                                               : InterpolationMethod::csi_clamped;
    detail::check_input(x, y, method);
    const std::size_t n = x.size() - 1;  // segments
    std::vector<double> h(n);
    for (std::size_t i = 0; i < n; ++i) h[i] = x[i + 1] - x[i];
    const auto delta = detail::secants(x, y);

    std::vector<double> m(n + 1, 0.0);
    if (boundary == SplineBoundary::clamped_zero) {
        // unknowns M_0..M_n
        std::vector<double> lo(n + 1), di(n + 1), up(n + 1), rhs(n + 1);
        di[0] = 2.0 * h[0];
        up[0] = h[0];
        rhs[0] = 6.0 * delta[0];
        for (std::size_t i = 1; i < n; ++i) {
            lo[i] = h[i - 1];
            di[i] = 2.0 * (h[i - 1] + h[i]);
            up[i] = h[i];
            rhs[i] = 6.0 * (delta[i] - delta[i - 1]);
        }
        lo[n] = h[n - 1];
        di[n] = 2.0 * h[n - 1];
        rhs[n] = -6.0 * delta[n - 1];
        m = detail::solve_tridiagonal(std::move(lo), std::move(di), std::move(up), std::move(rhs));
    } else {
        // unknowns M_1..M_{n-1}
        const std::size_t k = n - 1;
        std::vector<double> lo(k), di(k), up(k), rhs(k);
        for (std::size_t r = 0; r < k; ++r) {
            std::size_t i = r + 1;
            lo[r] = h[i - 1];
            di[r] = 2.0 * (h[i - 1] + h[i]);
            up[r] = h[i];
            rhs[r] = 6.0 * (delta[i] - delta[i - 1]);
        }
        if (boundary == SplineBoundary::not_a_knot) {
            // M_0 = ((h0 + h1) M_1 - h0 M_2) / h1, substituted into the first row (scaled by h1).
            di[0] = (h[0] + h[1]) * (h[0] + 2.0 * h[1]);
            up[0] = h[1] * h[1] - h[0] * h[0];
            rhs[0] *= h[1];
            // mirrored at the right end
            const double a = h[n - 2], b = h[n - 1];
            lo[k - 1] = a * a - b * b;
            di[k - 1] = (a + b) * (2.0 * a + b);
            rhs[k - 1] *= a;
        }
        auto inner =
            detail::solve_tridiagonal(std::move(lo), std::move(di), std::move(up), std::move(rhs));
        std::copy(inner.begin(), inner.end(), m.begin() + 1);
        if (boundary == SplineBoundary::not_a_knot) {
            m[0] = ((h[0] + h[1]) * m[1] - h[0] * m[2]) / h[1];
            const double a = h[n - 2], b = h[n - 1];
            m[n] = ((a + b) * m[n - 1] - b * m[n - 2]) / a;
        }
    }

    std::vector<CubicCoefficients> segs(n);
    for (std::size_t j = 0; j < n; ++j) {
        segs[j] = {y[j], delta[j] - h[j] * (2.0 * m[j] + m[j + 1]) / 6.0, m[j] / 2.0,
                   (m[j + 1] - m[j]) / (6.0 * h[j])};
    }
    return PiecewiseCubic(std::vector<double>(x.begin(), x.end()), std::move(segs), method);
}

/// Shape-preserving Hermite interpolant with Fritsch-Carlson slopes:
/// weighted harmonic mean of neighbouring secants, zero at local extrema,
/// and the three-point one-sided formula at the ends.
inline PiecewiseCubic fit_pchip(std::span<const double> x, std::span<const double> y) {
    detail::check_input(x, y, InterpolationMethod::pchip);
    const std::size_t n = x.size();
    const auto delta = detail::secants(x, y);
    std::vector<double> d(n, 0.0);
    if (n == 2) {
        d[0] = d[1] = delta[0];
        return detail::from_slopes(x, y, d, InterpolationMethod::pchip);
    }
    std::vector<double> h(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) h[i] = x[i + 1] - x[i];

    for (std::size_t k = 1; k + 1 < n; ++k) {
        const double s0 = delta[k - 1], s1 = delta[k];
        if (detail::sign(s0) * detail::sign(s1) <= 0) {
            d[k] = 0.0;
            continue;
        }
        const double w1 = 2.0 * h[k] + h[k - 1];
        const double w2 = h[k] + 2.0 * h[k - 1];
        d[k] = (w1 + w2) / (w1 / s0 + w2 / s1);
    }

    auto edge = [](double h0, double h1, double s0, double s1) {
        double d = ((2.0 * h0 + h1) * s0 - h0 * s1) / (h0 + h1);
        if (detail::sign(d) != detail::sign(s0)) return 0.0;
        if (detail::sign(s0) != detail::sign(s1) && std::abs(d) > 3.0 * std::abs(s0))
            return 3.0 * s0;
        return d;
    };
    d[0] = edge(h[0], h[1], delta[0], delta[1]);
    d[n - 1] = edge(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
    return detail::from_slopes(x, y, d, InterpolationMethod::pchip);
}

/// Akima's locally weighted slopes. Secants are extended by two quadratic
/// ghost values on each side; equal weights of zero fall back to the mean of
/// the two adjacent secants.
inline PiecewiseCubic fit_akima(std::span<const double> x, std::span<const double> y) {
    detail::check_input(x, y, InterpolationMethod::akima);
    const std::size_t n = x.size();
    const auto delta = detail::secants(x, y);
    // ext[i + 2] holds the secant with index i, for i = -2 .. n
    std::vector<double> ext(n + 3);
    std::copy(delta.begin(), delta.end(), ext.begin() + 2);
    ext[1] = 2.0 * ext[2] - ext[3];
    ext[0] = 2.0 * ext[1] - ext[2];
    ext[n + 1] = 2.0 * ext[n] - ext[n - 1];
    ext[n + 2] = 2.0 * ext[n + 1] - ext[n];

    std::vector<double> t(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double m_m2 = ext[i], m_m1 = ext[i + 1], m_0 = ext[i + 2], m_p1 = ext[i + 3];
        const double w_plus = std::abs(m_p1 - m_0);
        const double w_minus = std::abs(m_m1 - m_m2);
        const double wsum = w_plus + w_minus;
        t[i] = wsum == 0.0 ? 0.5 * (m_m1 + m_0) : (w_plus * m_m1 + w_minus * m_0) / wsum;
    }
    return detail::from_slopes(x, y, t, InterpolationMethod::akima);
}

/// Dispatch on the method id.
inline PiecewiseCubic fit(InterpolationMethod method, std::span<const double> x,
                          std::span<const double> y) {
    switch (method) {
        case InterpolationMethod::single_cubic:
            return fit_single_cubic(x, y);
        case InterpolationMethod::csi_not_a_knot:
            return fit_csi(x, y, SplineBoundary::not_a_knot);
        case InterpolationMethod::csi_natural:
            return fit_csi(x, y, SplineBoundary::natural);
        case InterpolationMethod::csi_clamped:
            return fit_csi(x, y, SplineBoundary::clamped_zero);
        case InterpolationMethod::pchip:
            return fit_pchip(x, y);
        case InterpolationMethod::akima:
            return fit_akima(x, y);
    }
    throw FitError("unknown interpolation method");
}

}  // namespace bdwork
