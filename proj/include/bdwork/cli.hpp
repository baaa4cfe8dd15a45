#pragma once

// bdwork command-line front end: compute, assess and plot subcommands.
// Exit codes: 0 success, 1 output failure, 2 input error, 3 computation error.

#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bdwork/accuracy.hpp"
#include "bdwork/bd_calculus.hpp"
#include "bdwork/errors.hpp"
#include "bdwork/rd_model.hpp"
#include "bdwork/report.hpp"
#include "bdwork/svg_plot.hpp"

namespace bdwork::cli {

enum ExitCode : int { kOk = 0, kOutputError = 1, kInputError = 2, kComputeError = 3 };

enum class Command { compute, assess, plot };

struct RunConfig {
    Command command = Command::compute;
    std::string input;
    std::string output_dir;
    std::vector<InterpolationMethod> methods{InterpolationMethod::akima};
    std::string ref_codec;
    std::string test_codec;
    std::optional<MetricPair> pair;
    BDDirection direction = BDDirection::rate;
    bool log_x = false;
    bool details = false;
};

class OutputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::vector<InterpolationMethod> parse_method_list(const std::string& text) {
    std::vector<InterpolationMethod> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto name = trim(item);
        if (name.empty()) continue;
        auto m = parse_method(name);
        if (!m) throw InputError("unknown interpolation method '" + std::string(name) + "'");
        if (std::find(out.begin(), out.end(), *m) == out.end()) out.push_back(*m);
    }
    if (out.empty()) throw InputError("no interpolation method given");
    return out;
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw OutputError("cannot write '" + path.string() + "'");
    out << content;
    if (!out) throw OutputError("failed writing '" + path.string() + "'");
}

inline std::filesystem::path prepare_output_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw OutputError("cannot create output directory '" + dir + "': " + ec.message());
    return dir;
}

inline std::vector<MetricPair> selected_pairs(const Dataset& ds, const RunConfig& cfg) {
    auto all = ds.metric_pairs();
    if (cfg.pair) {
        if (!all.contains(*cfg.pair))
            throw InputError("metric pair " + cfg.pair->label() + " not present in input");
        return {*cfg.pair};
    }
    return {all.begin(), all.end()};
}

inline std::string file_stem(std::string_view s) {
    std::string out;
    for (char c : s)
        out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '.') ? c : '_';
    return out;
}

}  // namespace detail

/// Per-sequence BD values of the test codec against the reference codec.
/// Sequences run concurrently; results come back in sorted sequence order.
inline BDReport run_compute(const Dataset& ds, const RunConfig& cfg, std::ostream& log) {
    const auto codecs = ds.codecs();
    for (const auto& c : {cfg.ref_codec, cfg.test_codec})
        if (!codecs.contains(c)) throw InputError("codec '" + c + "' not present in input");
    if (cfg.ref_codec == cfg.test_codec) throw InputError("reference and test codec must differ");

    const auto method = cfg.methods.front();
    BDReport report{cfg.direction, method, cfg.ref_codec, cfg.test_codec, {}};
    for (const auto& pair : detail::selected_pairs(ds, cfg)) {
        struct Job {
            std::string sequence;
            std::future<BDResult> result;
        };
        std::vector<Job> jobs;
        for (const auto& seq : ds.sequences()) {
            const auto* a = ds.curve({cfg.ref_codec, seq, pair});
            const auto* b = ds.curve({cfg.test_codec, seq, pair});
            if (!a || !b) {
                if (a || b)
                    log << "notice: sequence '" << seq << "' lacks one of the codecs for "
                        << pair.label() << ", skipped\n";
                continue;
            }
            jobs.push_back(
                {seq, std::async(std::launch::async, [a, b, method, dir = cfg.direction] {
                     return dir == BDDirection::rate ? bd_rate(*a, *b, method)
                                                     : bd_quality(*a, *b, method);
                 })});
        }
        if (jobs.empty()) continue;
        std::vector<BDResult> results;
        for (auto& job : jobs) {
            try {
                results.push_back(job.result.get());
            } catch (const ComputeError& e) {
                throw ComputeError("sequence '" + job.sequence + "' (" + pair.label() +
                                   "): " + e.what());
            } catch (const InputError& e) {
                throw InputError("sequence '" + job.sequence + "' (" + pair.label() +
                                 "): " + e.what());
            }
        }
        report.groups.push_back(aggregate_bd(results));
    }
    if (report.groups.empty())
        throw InputError("no sequence has curves for both '" + cfg.ref_codec + "' and '" +
                         cfg.test_codec + "'");
    return report;
}

inline std::vector<MethodComparison> run_assess(const Dataset& ds, const RunConfig& cfg) {
    std::vector<std::future<MethodComparison>> jobs;
    for (const auto& pair : detail::selected_pairs(ds, cfg))
        jobs.push_back(std::async(std::launch::async, [&ds, pair, &cfg] {
            return compare_methods(ds, pair, cfg.methods);
        }));
    std::vector<MethodComparison> tables;
    for (auto& j : jobs) tables.push_back(j.get());
    return tables;
}

inline int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        const Dataset ds = ingest_dataset(cfg.input);
        for (const auto& w : ds.warnings()) err << "warning: " << w << "\n";
        const auto dir = detail::prepare_output_dir(cfg.output_dir);
        switch (cfg.command) {
            case Command::compute: {
                auto report = run_compute(ds, cfg, err);
                const std::string stem =
                    cfg.direction == BDDirection::rate ? "bd_rate" : "bd_quality";
                detail::write_file(dir / (stem + ".csv"), bd_report_csv(report));
                detail::write_file(dir / (stem + ".json"), bd_report_json(report).dump(2) + "\n");
                for (const auto& g : report.groups)
                    out << g.per_sequence.front().metric_pair.label() << " mean "
                        << format_bd_delta(g.mean, report.direction) << " ("
                        << method_name(report.method) << ", " << g.per_sequence.size()
                        << " sequences)\n";
                break;
            }
            case Command::assess: {
                auto tables = run_assess(ds, cfg);
                for (const auto& t : tables)
                    for (const auto& n : t.notices) err << "notice: " << n << "\n";
                detail::write_file(dir / "accuracy.csv", accuracy_csv(tables));
                detail::write_file(dir / "accuracy.json", accuracy_json(tables).dump(2) + "\n");
                if (cfg.details)
                    detail::write_file(dir / "accuracy_points.csv", accuracy_points_csv(tables));
                out << accuracy_csv(tables);
                break;
            }
            case Command::plot: {
                for (const auto& pair : detail::selected_pairs(ds, cfg)) {
                    for (const auto& seq : ds.sequences()) {
                        auto data = build_plot_data(ds, seq, pair, cfg.methods);
                        if (data.curves.empty()) continue;
                        const std::string stem = "plot_" + detail::file_stem(seq) + "_" +
                                                 detail::file_stem(pair.quality) + "_" +
                                                 detail::file_stem(pair.cost);
                        detail::write_file(dir / (stem + ".svg"),
                                           render_svg(data, PlotOptions{cfg.log_x}));
                        detail::write_file(dir / (stem + ".csv"), plot_samples_csv(data));
                        out << (dir / (stem + ".svg")).string() << "\n";
                    }
                }
                break;
            }
        }
        return kOk;
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const ComputeError& e) {
        err << "error: " << e.what() << "\n";
        return kComputeError;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kComputeError;
    } catch (const OutputError& e) {
        err << "error: " << e.what() << "\n";
        return kOutputError;
    }
}

/// Parses argv and runs the selected subcommand.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
    CLI::App app{"Bjontegaard-Delta workbench: BD-rate/BD-quality and interpolation accuracy",
                 "bdwork"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string method_text = "akima";
    std::string methods_text;
    std::string pair_text;
    std::string direction_text = "rate";

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--input", cfg.input, "measurement CSV or JSON file")->required();
        sub->add_option("--out", cfg.output_dir, "output directory")->required();
        sub->add_option("--pair", pair_text, "metric pair QUALITY:COST (default: all)");
    };

    auto* compute = app.add_subcommand("compute", "BD values of --test against --ref per sequence");
    add_common(compute);
    compute->add_option("--ref", cfg.ref_codec, "reference codec id")->required();
    compute->add_option("--test", cfg.test_codec, "test codec id")->required();
    compute->add_option("--method", method_text, "interpolation method (default akima)");
    compute->add_option("--direction", direction_text, "rate (horizontal) or quality (vertical)")
        ->check(CLI::IsMember({"rate", "quality"}));

    auto* assess_cmd = app.add_subcommand("assess", "rank interpolation methods by accuracy");
    add_common(assess_cmd);
    assess_cmd->add_option("--methods", methods_text,
                           "comma-separated methods (default: the five compared backends)");
    assess_cmd->add_flag("--details", cfg.details, "also write per-point errors");

    auto* plot = app.add_subcommand("plot", "SVG curves with supporting and validation points");
    add_common(plot);
    plot->add_option("--method", method_text, "method or comma-separated methods (default akima)");
    plot->add_flag("--log-x", cfg.log_x, "logarithmic cost axis");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kInputError;
    }

    try {
        if (!pair_text.empty()) cfg.pair = MetricPair::parse(pair_text);
        if (compute->parsed()) {
            cfg.command = Command::compute;
            cfg.methods = detail::parse_method_list(method_text);
            if (cfg.methods.size() != 1) throw InputError("compute takes a single --method");
            cfg.direction = direction_text == "quality" ? BDDirection::quality : BDDirection::rate;
        } else if (assess_cmd->parsed()) {
            cfg.command = Command::assess;
            cfg.methods = methods_text.empty()
                              ? std::vector<InterpolationMethod>(kComparedMethods.begin(),
                                                                 kComparedMethods.end())
                              : detail::parse_method_list(methods_text);
        } else {
            cfg.command = Command::plot;
            cfg.methods = detail::parse_method_list(method_text);
        }
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }
    return execute(cfg, out, err);
}

}  // namespace bdwork::cli
