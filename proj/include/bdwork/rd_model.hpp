#pragma once

// Measurement model: (quality, cost) points, per-codec curves and the dataset
// that pairs supporting curves with dense validation points.

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include <json.hpp>

#include "bdwork/errors.hpp"
#include "bdwork/format.hpp"
#include "bdwork/interpolators.hpp"

namespace bdwork {

/// Quality axis (e.g. PSNR, SSIM, VMAF) and cost axis (e.g. bitrate_kbps,
/// decoding energy). Units are carried in the identifiers.
struct MetricPair {
    std::string quality;
    std::string cost;

    std::string label() const { return quality + ":" + cost; }

    bool valid() const { return !quality.empty() && !cost.empty() && quality != cost; }

    /// Parses "QUALITY:COST".
    static MetricPair parse(std::string_view text) {
        auto colon = text.find(':');
        if (colon == std::string_view::npos)
            throw InputError("metric pair must be QUALITY:COST, got '" + std::string(text) + "'");
        MetricPair p{std::string(trim(text.substr(0, colon))),
                     std::string(trim(text.substr(colon + 1)))};
        if (!p.valid())
            throw InputError("metric pair needs distinct non-empty identifiers: '" +
                             std::string(text) + "'");
        return p;
    }

    friend auto operator<=>(const MetricPair&, const MetricPair&) = default;
};

struct RDPoint {
    std::string label;
    double quality = 0.0;
    double cost = 0.0;

    friend bool operator==(const RDPoint&, const RDPoint&) = default;
};

struct RDCurve {
    std::string codec_id;
    std::string sequence_id;
    MetricPair metric_pair;
    std::vector<RDPoint> points;

    std::vector<double> qualities() const {
        std::vector<double> q;
        q.reserve(points.size());
        for (const auto& p : points) q.push_back(p.quality);
        return q;
    }

    std::vector<double> costs() const {
        std::vector<double> c;
        c.reserve(points.size());
        for (const auto& p : points) c.push_back(p.cost);
        return c;
    }

    double min_quality() const { return points.front().quality; }
    double max_quality() const { return points.back().quality; }

    friend bool operator==(const RDCurve&, const RDCurve&) = default;
};

struct CurveKey {
    std::string codec;
    std::string sequence;
    MetricPair metric_pair;

    std::string describe() const { return codec + "/" + sequence + "/" + metric_pair.label(); }

    friend auto operator<=>(const CurveKey&, const CurveKey&) = default;
};

// ---------------------------------------------------------------------------
// Curve validation

enum class IssueKind {
    too_few_points,
    too_many_points,
    quality_not_increasing,
    non_finite_quality,
    non_positive_cost,
    cost_not_monotone,
};

struct CurveIssue {
    IssueKind kind;
    bool warning = false;
    std::string message;
};

struct CurveVerdict {
    std::vector<CurveIssue> issues;

    bool ok() const {
        return std::none_of(issues.begin(), issues.end(), [](const auto& i) { return !i.warning; });
    }

    bool has(IssueKind kind) const {
        return std::any_of(issues.begin(), issues.end(),
                           [kind](const auto& i) { return i.kind == kind; });
    }

    std::vector<std::string> violations() const {
        std::vector<std::string> out;
        for (const auto& i : issues)
            if (!i.warning) out.push_back(i.message);
        return out;
    }

    std::vector<std::string> warnings() const {
        std::vector<std::string> out;
        for (const auto& i : issues)
            if (i.warning) out.push_back(i.message);
        return out;
    }
};

inline CurveVerdict validate_curve(const RDCurve& curve, InterpolationMethod method) {
    CurveVerdict v;
    const std::size_t n = curve.points.size();
    if (method == InterpolationMethod::single_cubic && n != 4) {
        v.issues.push_back({n < 4 ? IssueKind::too_few_points : IssueKind::too_many_points, false,
                            "requires exactly 4 supporting points"});
    } else if (n < min_points(method)) {
        v.issues.push_back(
            {IssueKind::too_few_points, false,
             "requires at least " + std::to_string(min_points(method)) + " supporting points"});
    }
    bool increasing = true, finite = true, positive = true, cost_monotone = true;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& p = curve.points[i];
        if (!std::isfinite(p.quality)) finite = false;
        if (!(p.cost > 0.0) || !std::isfinite(p.cost)) positive = false;
        if (i > 0) {
            if (!(p.quality > curve.points[i - 1].quality)) increasing = false;
            if (!(p.cost > curve.points[i - 1].cost)) cost_monotone = false;
        }
    }
    if (!finite)
        v.issues.push_back({IssueKind::non_finite_quality, false, "quality must be finite"});
    if (!increasing)
        v.issues.push_back(
            {IssueKind::quality_not_increasing, false, "quality not strictly increasing"});
    if (!positive)
        v.issues.push_back({IssueKind::non_positive_cost, false, "cost must be positive"});
    if (positive && !cost_monotone)
        v.issues.push_back(
            {IssueKind::cost_not_monotone, true, "cost not monotonically increasing"});
    return v;
}

// ---------------------------------------------------------------------------
// Measurement rows and ingestion

struct MeasurementRow {
    std::string sequence;
    std::string codec;
    std::string label;
    std::string quality_metric;
    double quality = 0.0;
    std::string cost_metric;
    double cost = 0.0;
    bool support = false;
    std::size_t line = 0;  // 1-based source line (CSV) or row index (JSON)
};

inline constexpr std::array<std::string_view, 8> kCsvColumns = {
    "sequence", "codec", "label", "quality_metric", "quality", "cost_metric", "cost", "support",
};

namespace detail {

inline std::vector<std::string> split_csv_line(std::string_view line, std::size_t lineno) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (quoted) throw InputError("line " + std::to_string(lineno) + ": unterminated quote");
    fields.push_back(std::move(cur));
    return fields;
}

inline std::string where(std::size_t line) { return "line " + std::to_string(line) + ": "; }

inline bool parse_support_flag(std::string_view s, std::size_t line) {
    s = trim(s);
    if (s == "1" || s == "true" || s == "TRUE" || s == "True") return true;
    if (s == "0" || s == "false" || s == "FALSE" || s == "False" || s.empty()) return false;
    throw InputError(where(line) + "support must be 0 or 1, got '" + std::string(s) + "'");
}

inline double parse_number(std::string_view s, std::string_view column, std::size_t line) {
    auto v = parse_double(s);
    if (!v)
        throw InputError(where(line) + std::string(column) + " is not a number: '" +
                         std::string(trim(s)) + "'");
    return *v;
}

}  // namespace detail

inline std::vector<MeasurementRow> parse_measurements_csv(std::string_view text) {
    if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
    std::vector<MeasurementRow> rows;
    std::map<std::string, std::size_t> column;
    bool have_header = false;
    std::size_t lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        std::string_view line =
            text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++lineno;
        if (trim(line).empty()) continue;
        auto fields = detail::split_csv_line(line, lineno);
        if (!have_header) {
            for (std::size_t i = 0; i < fields.size(); ++i)
                column[std::string(trim(fields[i]))] = i;
            for (auto name : kCsvColumns)
                if (!column.contains(std::string(name)))
                    throw InputError(detail::where(lineno) + "header lacks column '" +
                                     std::string(name) + "'");
            have_header = true;
            continue;
        }
        auto get = [&](std::string_view name) -> std::string_view {
            std::size_t idx = column.at(std::string(name));
            if (idx >= fields.size())
                throw InputError(detail::where(lineno) + "missing field '" + std::string(name) +
                                 "'");
            return trim(fields[idx]);
        };
        MeasurementRow r;
        r.sequence = std::string(get("sequence"));
        r.codec = std::string(get("codec"));
        r.label = std::string(get("label"));
        r.quality_metric = std::string(get("quality_metric"));
        r.quality = detail::parse_number(get("quality"), "quality", lineno);
        r.cost_metric = std::string(get("cost_metric"));
        r.cost = detail::parse_number(get("cost"), "cost", lineno);
        r.support = detail::parse_support_flag(get("support"), lineno);
        r.line = lineno;
        rows.push_back(std::move(r));
    }
    if (!have_header) throw InputError("no data rows");
    if (rows.empty()) throw InputError("no data rows");
    return rows;
}

/// JSON mirror of the CSV: an array of objects with the same field names.
/// Numeric fields may be given as numbers or numeric strings.
inline std::vector<MeasurementRow> parse_measurements_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(std::string("JSON parse error: ") + e.what());
    }
    if (!doc.is_array()) throw InputError("JSON measurements must be an array of row objects");
    if (doc.empty()) throw InputError("no data rows");
    std::vector<MeasurementRow> rows;
    std::size_t index = 0;
    for (const auto& obj : doc) {
        ++index;
        auto at = "row " + std::to_string(index) + ": ";
        if (!obj.is_object()) throw InputError(at + "expected an object");
        auto field = [&](std::string_view name) -> const nlohmann::json& {
            auto it = obj.find(std::string(name));
            if (it == obj.end()) throw InputError(at + "missing field '" + std::string(name) + "'");
            return *it;
        };
        auto text_of = [&](std::string_view name) {
            const auto& v = field(name);
            if (v.is_string()) return v.get<std::string>();
            if (v.is_number_integer()) return std::to_string(v.get<long long>());
            if (v.is_number()) return format_roundtrip(v.get<double>());
            throw InputError(at + std::string(name) + " must be a string");
        };
        auto number_of = [&](std::string_view name) {
            const auto& v = field(name);
            if (v.is_number()) return v.get<double>();
            if (v.is_string()) return detail::parse_number(v.get<std::string>(), name, index);
            throw InputError(at + std::string(name) + " must be a number");
        };
        MeasurementRow r;
        r.sequence = text_of("sequence");
        r.codec = text_of("codec");
        r.label = text_of("label");
        r.quality_metric = text_of("quality_metric");
        r.quality = number_of("quality");
        r.cost_metric = text_of("cost_metric");
        r.cost = number_of("cost");
        const auto& s = field("support");
        if (s.is_boolean())
            r.support = s.get<bool>();
        else if (s.is_number())
            r.support = s.get<double>() != 0.0;
        else if (s.is_string())
            r.support = detail::parse_support_flag(s.get<std::string>(), index);
        else
            throw InputError(at + "support must be 0/1 or boolean");
        r.line = index;
        rows.push_back(std::move(r));
    }
    return rows;
}

// ---------------------------------------------------------------------------

/// Supporting curves plus dense validation points, keyed by
/// (codec, sequence, metric pair). Immutable once built; every stored curve
/// has strictly increasing quality and positive costs, and every validation
/// point lies inside its supporting curve's quality range.
class Dataset {
public:
    using CurveMap = std::map<CurveKey, RDCurve>;
    using PointMap = std::map<CurveKey, std::vector<RDPoint>>;

    Dataset() = default;

    /// Rows flagged as support become supporting points; every row becomes a
    /// validation point.
    static Dataset from_rows(const std::vector<MeasurementRow>& rows) {
        if (rows.empty()) throw InputError("no data rows");
        Dataset ds;
        std::set<std::tuple<CurveKey, std::string>> seen;
        std::map<CurveKey, std::size_t> first_line;
        for (const auto& r : rows) {
            const auto at = detail::where(r.line);
            if (r.sequence.empty()) throw InputError(at + "sequence must not be empty");
            if (r.codec.empty()) throw InputError(at + "codec must not be empty");
            MetricPair pair{r.quality_metric, r.cost_metric};
            if (!pair.valid())
                throw InputError(at +
                                 "quality and cost metric identifiers must be non-empty "
                                 "and distinct");
            if (!std::isfinite(r.quality)) throw InputError(at + "quality must be finite");
            if (!(r.cost > 0.0) || !std::isfinite(r.cost))
                throw InputError(at + "cost must be positive");
            CurveKey key{r.codec, r.sequence, pair};
            if (!seen.emplace(key, r.label).second)
                throw InputError(at + "duplicate row for codec '" + r.codec + "', sequence '" +
                                 r.sequence + "', label '" + r.label + "'");
            first_line.try_emplace(key, r.line);
            RDPoint p{r.label, r.quality, r.cost};
            ds.validation_[key].push_back(p);
            if (r.support) {
                auto& curve = ds.supporting_[key];
                if (curve.points.empty()) {
                    curve.codec_id = key.codec;
                    curve.sequence_id = key.sequence;
                    curve.metric_pair = pair;
                }
                curve.points.push_back(p);
            }
        }

        auto by_quality = [](const RDPoint& a, const RDPoint& b) {
            return std::tie(a.quality, a.label) < std::tie(b.quality, b.label);
        };
        for (auto& [key, points] : ds.validation_) {
            auto it = ds.supporting_.find(key);
            if (it == ds.supporting_.end())
                throw InputError(detail::where(first_line[key]) + "curve " + key.describe() +
                                 " has no supporting points");
            auto& curve = it->second;
            std::sort(curve.points.begin(), curve.points.end(), by_quality);
            if (curve.points.size() < 2)
                throw InputError("curve " + key.describe() + " needs at least 2 supporting points");
            for (std::size_t i = 1; i < curve.points.size(); ++i)
                if (!(curve.points[i].quality > curve.points[i - 1].quality))
                    throw InputError("curve " + key.describe() +
                                     ": supporting quality not strictly increasing");
            std::sort(points.begin(), points.end(), by_quality);
            for (const auto& p : points)
                if (p.quality < curve.min_quality() || p.quality > curve.max_quality())
                    throw InputError("curve " + key.describe() + ": validation point '" + p.label +
                                     "' with quality " + format_roundtrip(p.quality) +
                                     " lies outside the supporting range [" +
                                     format_roundtrip(curve.min_quality()) + ", " +
                                     format_roundtrip(curve.max_quality()) + "]");
        }
        return ds;
    }

    const CurveMap& supporting_curves() const { return supporting_; }
    const PointMap& validation_points() const { return validation_; }

    const RDCurve* curve(const CurveKey& key) const {
        auto it = supporting_.find(key);
        return it == supporting_.end() ? nullptr : &it->second;
    }

    const std::vector<RDPoint>* validation(const CurveKey& key) const {
        auto it = validation_.find(key);
        return it == validation_.end() ? nullptr : &it->second;
    }

    std::set<std::string> codecs() const {
        return collect([](const CurveKey& k) { return k.codec; });
    }
    std::set<std::string> sequences() const {
        return collect([](const CurveKey& k) { return k.sequence; });
    }
    std::set<MetricPair> metric_pairs() const {
        std::set<MetricPair> out;
        for (const auto& [k, c] : supporting_) out.insert(k.metric_pair);
        return out;
    }

    std::size_t codec_count() const { return codecs().size(); }
    std::size_t sequence_count() const { return sequences().size(); }
    bool empty() const { return supporting_.empty(); }

    /// Non-fatal findings, currently non-monotone cost along a supporting curve.
    std::vector<std::string> warnings() const {
        std::vector<std::string> out;
        for (const auto& [key, curve] : supporting_)
            for (const auto& w : validate_curve(curve, InterpolationMethod::pchip).warnings())
                out.push_back(key.describe() + ": " + w);
        return out;
    }

    friend bool operator==(const Dataset&, const Dataset&) = default;

private:
    template <class F>
    std::set<std::string> collect(F f) const {
        std::set<std::string> out;
        for (const auto& [k, c] : supporting_) out.insert(f(k));
        return out;
    }

    CurveMap supporting_;
    PointMap validation_;
};

inline bool looks_like_json(std::string_view text) {
    auto t = trim(text);
    return !t.empty() && (t.front() == '[' || t.front() == '{');
}

inline Dataset ingest_dataset_text(std::string_view text) {
    if (trim(text).empty()) throw InputError("no data rows");
    return Dataset::from_rows(looks_like_json(text) ? parse_measurements_json(text)
                                                    : parse_measurements_csv(text));
}

inline Dataset ingest_dataset(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open input file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return ingest_dataset_text(buf.str());
    } catch (const InputError& e) {
        throw InputError(path + ": " + e.what());
    }
}

/// Writes the dataset back in the measurement CSV schema with shortest
/// round-trip number formatting, so ingesting the result reproduces it exactly.
inline std::string serialize_dataset_csv(const Dataset& ds) {
    std::string out;
    for (std::size_t i = 0; i < kCsvColumns.size(); ++i) {
        if (i) out += ',';
        out += kCsvColumns[i];
    }
    out += '\n';
    auto field = [](const std::string& s) { return csv_field(s); };
    for (const auto& [key, points] : ds.validation_points()) {
        const auto& support = ds.curve(key)->points;
        for (const auto& p : points) {
            bool is_support = std::find(support.begin(), support.end(), p) != support.end();
            out += field(key.sequence) + ',' + field(key.codec) + ',' + field(p.label) + ',' +
                   field(key.metric_pair.quality) + ',' + format_roundtrip(p.quality) + ',' +
                   field(key.metric_pair.cost) + ',' + format_roundtrip(p.cost) + ',' +
                   (is_support ? "1" : "0") + '\n';
        }
    }
    return out;
}

}  // namespace bdwork
