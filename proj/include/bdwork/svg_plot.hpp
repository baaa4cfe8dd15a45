#pragma once

// Self-contained SVG rendering of performance curves: supporting points as
// crosses, validation points as circles, one sampled polyline per codec and
// method, and dashed lines at the BD integration bounds when two codecs are
// shown. Cost runs along x, quality along y.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "bdwork/bd_calculus.hpp"
#include "bdwork/format.hpp"
#include "bdwork/interpolators.hpp"
#include "bdwork/rd_model.hpp"

namespace bdwork {

inline constexpr std::size_t kPlotSamples = 512;

struct SampledCurve {
    std::string codec_id;
    InterpolationMethod method;
    std::vector<double> quality;
    std::vector<double> cost;
};

struct PlotCurve {
    RDCurve support;
    std::vector<RDPoint> validation;
};

struct PlotData {
    std::string sequence_id;
    MetricPair metric_pair;
    std::vector<PlotCurve> curves;
    std::vector<SampledCurve> samples;
    std::optional<OverlapBounds> bounds;
};

/// Samples the log-cost interpolant at uniformly spaced qualities over the
/// supporting range, endpoints included.
inline SampledCurve sample_curve(const RDCurve& curve, InterpolationMethod method,
                                 std::size_t count = kPlotSamples) {
    auto pp = fit_log_cost(curve, method);
    SampledCurve s{curve.codec_id, method, {}, {}};
    s.quality.reserve(count);
    s.cost.reserve(count);
    const double lo = pp.lower(), hi = pp.upper();
    for (std::size_t i = 0; i < count; ++i) {
        double q = i + 1 == count
                       ? hi
                       : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
        s.quality.push_back(q);
        s.cost.push_back(std::pow(10.0, pp.evaluate(q)));
    }
    return s;
}

inline PlotData build_plot_data(const Dataset& ds, const std::string& sequence,
                                const MetricPair& pair,
                                const std::vector<InterpolationMethod>& methods) {
    PlotData data{sequence, pair, {}, {}, std::nullopt};
    for (const auto& [key, curve] : ds.supporting_curves()) {
        if (key.sequence != sequence || !(key.metric_pair == pair)) continue;
        data.curves.push_back({curve, *ds.validation(key)});
        for (auto m : methods) data.samples.push_back(sample_curve(curve, m));
    }
    if (data.curves.size() == 2)
        data.bounds = overlap_bounds(data.curves[0].support, data.curves[1].support);
    return data;
}

inline std::string plot_samples_csv(const PlotData& data) {
    std::string out = "sequence,metric_pair,codec,method,index,quality,cost\n";
    for (const auto& s : data.samples)
        for (std::size_t i = 0; i < s.quality.size(); ++i)
            out += csv_field(data.sequence_id) + "," + csv_field(data.metric_pair.label()) + "," +
                   csv_field(s.codec_id) + "," + std::string(method_name(s.method)) + "," +
                   std::to_string(i) + "," + format_roundtrip(s.quality[i]) + "," +
                   format_roundtrip(s.cost[i]) + "\n";
    return out;
}

namespace detail {

inline std::string xml_escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&':
                out += "&amp;";
                break;
            case '<':
                out += "&lt;";
                break;
            case '>':
                out += "&gt;";
                break;
            case '"':
                out += "&quot;";
                break;
            default:
                out += c;
        }
    }
    return out;
}

inline std::string num(double v) { return format_fixed(v, 2); }

// 1, 2 or 5 times a power of ten, giving roughly `target` intervals.
inline double nice_step(double span, int target) {
    double raw = span / target;
    double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double norm = raw / mag;
    return (norm < 1.5 ? 1.0 : norm < 3.5 ? 2.0 : norm < 7.5 ? 5.0 : 10.0) * mag;
}

inline std::string tick_label(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

inline constexpr std::array<const char*, 6> kPalette = {"#1f77b4", "#d62728", "#2ca02c",
                                                        "#9467bd", "#ff7f0e", "#8c564b"};

}  // namespace detail

struct PlotOptions {
    bool log_x = false;
    int width = 640;
    int height = 480;
};

inline std::string render_svg(const PlotData& data, const PlotOptions& opt = {}) {
    constexpr double left = 70, right = 20, top = 30, bottom = 50;
    const double pw = opt.width - left - right, ph = opt.height - top - bottom;

    double cmin = std::numeric_limits<double>::infinity(), cmax = -cmin;
    double qmin = cmin, qmax = -cmin;
    auto extend = [&](double q, double c) {
        cmin = std::min(cmin, c);
        cmax = std::max(cmax, c);
        qmin = std::min(qmin, q);
        qmax = std::max(qmax, q);
    };
    for (const auto& c : data.curves) {
        for (const auto& p : c.support.points) extend(p.quality, p.cost);
        for (const auto& p : c.validation) extend(p.quality, p.cost);
    }
    for (const auto& s : data.samples)
        for (std::size_t i = 0; i < s.cost.size(); ++i) extend(s.quality[i], s.cost[i]);
    if (qmax <= qmin) qmax = qmin + 1.0;
    if (cmax <= cmin) cmax = cmin * 2.0;

    double xlo, xhi;
    if (opt.log_x) {
        xlo = std::floor(std::log10(cmin));
        xhi = std::ceil(std::log10(cmax));
        if (xhi <= xlo) xhi = xlo + 1.0;
    } else {
        double step = detail::nice_step(cmax - cmin, 5);
        xlo = std::floor(cmin / step) * step;
        xhi = std::ceil(cmax / step) * step;
    }
    const double qpad = 0.05 * (qmax - qmin);
    const double ylo = qmin - qpad, yhi = qmax + qpad;

    auto sx = [&](double cost) {
        double v = opt.log_x ? std::log10(cost) : cost;
        return left + (v - xlo) / (xhi - xlo) * pw;
    };
    auto sy = [&](double q) { return top + (yhi - q) / (yhi - ylo) * ph; };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(opt.width) +
           "\" height=\"" + std::to_string(opt.height) + "\" viewBox=\"0 0 " +
           std::to_string(opt.width) + " " + std::to_string(opt.height) + "\">\n";
    svg += "<rect x=\"0\" y=\"0\" width=\"" + std::to_string(opt.width) + "\" height=\"" +
           std::to_string(opt.height) + "\" style=\"fill:#ffffff\"/>\n";
    svg += "<text x=\"" + detail::num(left) + "\" y=\"18\" style=\"font:13px sans-serif\">" +
           detail::xml_escape(data.sequence_id + " (" + data.metric_pair.label() + ")") +
           "</text>\n";
    svg += "<rect class=\"frame\" x=\"" + detail::num(left) + "\" y=\"" + detail::num(top) +
           "\" width=\"" + detail::num(pw) + "\" height=\"" + detail::num(ph) +
           "\" style=\"fill:none;stroke:#444444\"/>\n";

    // x ticks
    std::vector<std::pair<double, std::string>> xticks;
    if (opt.log_x) {
        for (double e = xlo; e <= xhi + 1e-9; e += 1.0) {
            double v = std::pow(10.0, e);
            xticks.emplace_back(v, detail::tick_label(v));
        }
    } else {
        double step = detail::nice_step(xhi - xlo, 5);
        for (double v = xlo; v <= xhi + step * 1e-9; v += step)
            xticks.emplace_back(v, detail::tick_label(std::abs(v) < step * 1e-9 ? 0.0 : v));
    }
    for (const auto& [v, label] : xticks) {
        double x = sx(v);
        svg += "<line x1=\"" + detail::num(x) + "\" y1=\"" + detail::num(top + ph) + "\" x2=\"" +
               detail::num(x) + "\" y2=\"" + detail::num(top + ph + 5) +
               "\" style=\"stroke:#444444\"/>\n";
        svg += "<text class=\"tick-x\" x=\"" + detail::num(x) + "\" y=\"" +
               detail::num(top + ph + 18) +
               "\" style=\"font:11px sans-serif;text-anchor:middle\">" + label + "</text>\n";
    }
    {
        double step = detail::nice_step(yhi - ylo, 5);
        for (double v = std::ceil(ylo / step) * step; v <= yhi + step * 1e-9; v += step) {
            double y = sy(v);
            svg += "<line x1=\"" + detail::num(left - 5) + "\" y1=\"" + detail::num(y) +
                   "\" x2=\"" + detail::num(left) + "\" y2=\"" + detail::num(y) +
                   "\" style=\"stroke:#444444\"/>\n";
            svg += "<text class=\"tick-y\" x=\"" + detail::num(left - 8) + "\" y=\"" +
                   detail::num(y + 4) + "\" style=\"font:11px sans-serif;text-anchor:end\">" +
                   detail::tick_label(std::abs(v) < step * 1e-9 ? 0.0 : v) + "</text>\n";
        }
    }
    svg += "<text x=\"" + detail::num(left + pw / 2) + "\" y=\"" + detail::num(opt.height - 8.0) +
           "\" style=\"font:12px sans-serif;text-anchor:middle\">" +
           detail::xml_escape(data.metric_pair.cost) + (opt.log_x ? " (log scale)" : "") +
           "</text>\n";
    svg += "<text x=\"14\" y=\"" + detail::num(top + ph / 2) +
           "\" style=\"font:12px sans-serif;text-anchor:middle\" transform=\"rotate(-90 14 " +
           detail::num(top + ph / 2) + ")\">" + detail::xml_escape(data.metric_pair.quality) +
           "</text>\n";

    if (data.bounds) {
        for (double q : {data.bounds->low, data.bounds->high}) {
            svg += "<line class=\"bound\" x1=\"" + detail::num(left) + "\" y1=\"" +
                   detail::num(sy(q)) + "\" x2=\"" + detail::num(left + pw) + "\" y2=\"" +
                   detail::num(sy(q)) +
                   "\" style=\"stroke:#2ca02c;stroke-width:1.2;stroke-dasharray:6,4\"/>\n";
        }
    }

    std::size_t style_index = 0;
    for (const auto& s : data.samples) {
        const char* color = detail::kPalette[style_index++ % detail::kPalette.size()];
        svg += "<polyline class=\"curve\" data-codec=\"" + detail::xml_escape(s.codec_id) +
               "\" data-method=\"" + std::string(method_name(s.method)) + "\" points=\"";
        for (std::size_t i = 0; i < s.cost.size(); ++i) {
            if (i) svg += ' ';
            svg += detail::num(sx(s.cost[i])) + "," + detail::num(sy(s.quality[i]));
        }
        svg += "\" style=\"fill:none;stroke:" + std::string(color) + ";stroke-width:1.5\"/>\n";
    }

    std::size_t codec_index = 0;
    for (const auto& c : data.curves) {
        const char* color = detail::kPalette[codec_index++ % detail::kPalette.size()];
        for (const auto& p : c.validation) {
            svg += "<circle class=\"validation\" cx=\"" + detail::num(sx(p.cost)) + "\" cy=\"" +
                   detail::num(sy(p.quality)) +
                   "\" r=\"3\" style=\"fill:none;stroke:" + std::string(color) + "\"/>\n";
        }
        for (const auto& p : c.support.points) {
            double x = sx(p.cost), y = sy(p.quality);
            svg += "<path class=\"support\" d=\"M" + detail::num(x - 5) + "," + detail::num(y - 5) +
                   " L" + detail::num(x + 5) + "," + detail::num(y + 5) + " M" +
                   detail::num(x - 5) + "," + detail::num(y + 5) + " L" + detail::num(x + 5) + "," +
                   detail::num(y - 5) + "\" style=\"stroke:" + std::string(color) +
                   ";stroke-width:1.5\"/>\n";
        }
    }

    // legend
    double ly = top + 14;
    for (const auto& s : data.samples) {
        svg += "<text class=\"legend\" x=\"" + detail::num(left + 10) + "\" y=\"" +
               detail::num(ly) + "\" style=\"font:11px sans-serif\">" +
               detail::xml_escape(s.codec_id + " " + std::string(method_name(s.method))) +
               "</text>\n";
        ly += 14;
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace bdwork
