// Prints the BD-rate of every sequence under each interpolation method, to show
// how much the choice of interpolant moves the result.
//
//   method_spread [measurements.csv] [ref codec] [test codec]

#include <bdwork/bdwork.hpp>

#include <cstdio>
#include <exception>
#include <string>

int main(int argc, char** argv) {
    const std::string input = argc > 1 ? argv[1] : BDWORK_SAMPLE_DATA "/measurements.csv";
    const std::string ref = argc > 2 ? argv[2] : "x264";
    const std::string test = argc > 3 ? argv[3] : "x265";

    try {
        const auto ds = bdwork::ingest_dataset(input);
        for (const auto& pair : ds.metric_pairs()) {
            std::printf("%s, %s vs %s\n%-18s", pair.label().c_str(), test.c_str(), ref.c_str(),
                        "sequence");
            for (auto m : bdwork::kComparedMethods)
                std::printf("%16s", std::string(bdwork::method_name(m)).c_str());
            std::printf("\n");
            for (const auto& seq : ds.sequences()) {
                const auto* a = ds.curve({ref, seq, pair});
                const auto* b = ds.curve({test, seq, pair});
                if (!a || !b) continue;
                std::printf("%-18s", seq.c_str());
                for (auto m : bdwork::kComparedMethods) {
                    const auto r = bdwork::bd_rate(*a, *b, m);
                    std::printf("%16s", bdwork::format_percent(r.delta, 2).c_str());
                }
                std::printf("\n");
            }

            const auto ranking = bdwork::compare_methods(ds, pair);
            std::printf("most accurate interpolant on this data: %s (mean error %s)\n\n",
                        std::string(bdwork::method_name(ranking.ranked.front().method)).c_str(),
                        bdwork::format_percent(ranking.ranked.front().e_bar, 3).c_str());
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
