#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "bdwork/accuracy.hpp"
#include "brute_force.hpp"
#include "helpers.hpp"

using namespace bdwork;
using testutil::row;
using namespace testutil::brute;

namespace {

const MetricPair kPsnrRate{"PSNR", "bitrate_kbps"};

}  // namespace

TEST(Assess, SupportOnlyPointsScoreZero) {
    std::vector<MeasurementRow> rows{
        row("S", "A", "22", 40, 1000, true), row("S", "A", "27", 38, 500, true),
        row("S", "A", "32", 36, 250, true), row("S", "A", "37", 34, 120, true)};
    auto ds = Dataset::from_rows(rows);
    for (auto m : kAllMethods) {
        auto r = assess(ds, m, kPsnrRate);
        EXPECT_LT(r.e_bar, 1e-13) << method_name(m);
        EXPECT_EQ(r.point_count(), 4u);
    }
}

TEST(Assess, SinglePointRelativeError) {
    auto e = make_point_error("A", "S", RDPoint{"x", 35.0, 110.0}, 100.0);
    EXPECT_NEAR(e.relative_error, 10.0 / 110.0, 1e-15);
}

TEST(Assess, MatchesBruteForceTripleLoop) {
    std::mt19937_64 rng(3);
    auto rows = synthetic_rows(rng, 2, 2, 0.02);
    auto ds = Dataset::from_rows(rows);
    for (auto m : kAllMethods) {
        auto got = assess(ds, m, kPsnrRate);
        auto want = brute_force(rows, m);
        EXPECT_EQ(got.point_count(), 64u);
        EXPECT_EQ(want.n, 64u);
        EXPECT_NEAR(got.e_bar, want.e_bar, 1e-12) << method_name(m);
        EXPECT_NEAR(got.e_max, want.e_max, 1e-12) << method_name(m);
        EXPECT_EQ(got.codec_count, 2u);
        EXPECT_EQ(got.sequence_count, 2u);
    }
}

TEST(Assess, RowOrderDoesNotMatter) {
    std::mt19937_64 rng(4);
    auto rows = synthetic_rows(rng, 2, 3, 0.02);
    auto base = assess(Dataset::from_rows(rows), InterpolationMethod::akima, kPsnrRate);
    for (int i = 0; i < 5; ++i) {
        std::shuffle(rows.begin(), rows.end(), rng);
        auto r = assess(Dataset::from_rows(rows), InterpolationMethod::akima, kPsnrRate);
        EXPECT_EQ(r.e_bar, base.e_bar);
        EXPECT_EQ(r.e_max, base.e_max);
    }
}

TEST(Assess, CostScalingInvariance) {
    std::mt19937_64 rng(8);
    auto rows = synthetic_rows(rng, 2, 2, 0.02);
    auto base = assess(Dataset::from_rows(rows), InterpolationMethod::pchip, kPsnrRate);
    for (auto& r : rows) r.cost *= 1000.0;
    auto scaled = assess(Dataset::from_rows(rows), InterpolationMethod::pchip, kPsnrRate);
    EXPECT_NEAR(scaled.e_bar, base.e_bar, 1e-12);
    EXPECT_NEAR(scaled.e_max, base.e_max, 1e-12);
}

TEST(Assess, OnCurvePointLowersMeanKeepsMax) {
    std::mt19937_64 rng(12);
    auto rows = synthetic_rows(rng, 1, 1, 0.05);
    auto ds = Dataset::from_rows(rows);
    auto base = assess(ds, InterpolationMethod::akima, kPsnrRate);
    auto fitted = fit_log_cost(ds.supporting_curves().begin()->second, InterpolationMethod::akima);
    const double q = 0.5 * (rows[0].quality + rows[1].quality);
    rows.push_back(row("seq0", "codec0", "extra", q, std::pow(10.0, fitted(q)), false));
    auto more = assess(Dataset::from_rows(rows), InterpolationMethod::akima, kPsnrRate);
    EXPECT_EQ(more.point_count(), base.point_count() + 1);
    EXPECT_LT(more.e_bar, base.e_bar);
    EXPECT_EQ(more.e_max, base.e_max);
}

TEST(Assess, UnknownPairIsAComputeError) {
    std::mt19937_64 rng(1);
    auto ds = Dataset::from_rows(synthetic_rows(rng, 1, 1, 0.0));
    EXPECT_THROW(assess(ds, InterpolationMethod::akima, {"VMAF", "energy_J"}), ComputeError);
}

TEST(CompareMethods, ExactCubicDataRanksNotAKnotFirst) {
    std::mt19937_64 rng(21);
    auto rows = synthetic_rows(rng, 2, 2, 0.0);
    auto cmp = compare_methods(Dataset::from_rows(rows), kPsnrRate);
    ASSERT_EQ(cmp.ranked.size(), 5u);
    EXPECT_TRUE(cmp.notices.empty());
    // not-a-knot reproduces any cubic exactly; the rest only approximate it
    auto it = std::find_if(cmp.ranked.begin(), cmp.ranked.end(), [](const auto& r) {
        return r.method == InterpolationMethod::csi_not_a_knot;
    });
    ASSERT_NE(it, cmp.ranked.end());
    EXPECT_LT(it->e_max, 1e-12);
    EXPECT_EQ(cmp.ranked.front().method, InterpolationMethod::csi_not_a_knot);
    for (std::size_t i = 1; i < cmp.ranked.size(); ++i)
        EXPECT_LE(cmp.ranked[i - 1].e_bar, cmp.ranked[i].e_bar);
}

TEST(CompareMethods, ThreePointCurvesSkipCountRestrictedMethods) {
    std::vector<MeasurementRow> rows{
        row("S", "A", "22", 40, 1000, true), row("S", "A", "27", 38, 500, true),
        row("S", "A", "32", 36, 250, true), row("S", "A", "30", 37, 330, false)};
    auto cmp = compare_methods(Dataset::from_rows(rows), kPsnrRate, kAllMethods);
    EXPECT_EQ(cmp.ranked.size(), 4u);
    ASSERT_EQ(cmp.notices.size(), 2u);
    EXPECT_NE(cmp.notices[0].find("single_cubic"), std::string::npos);
    EXPECT_NE(cmp.notices[0].find("exactly 4"), std::string::npos);
    EXPECT_NE(cmp.notices[1].find("csi_not_a_knot"), std::string::npos);
}

TEST(CompareMethods, KneeFixtureFrozenValues) {
    auto ds = ingest_dataset(testutil::data_path("knee_ssim.csv"));
    const MetricPair pair{"SSIM", "bitrate_kbps"};
    auto cmp = compare_methods(ds, pair);
    auto find = [&](InterpolationMethod m) -> const AccuracyReport& {
        return *std::find_if(cmp.ranked.begin(), cmp.ranked.end(),
                             [&](const auto& r) { return r.method == m; });
    };
    const auto& csi = find(InterpolationMethod::csi_not_a_knot);
    const auto& pchip = find(InterpolationMethod::pchip);
    const auto& akima = find(InterpolationMethod::akima);
    EXPECT_GT(csi.e_max, pchip.e_max);
    EXPECT_LT(akima.e_bar, csi.e_bar);
    EXPECT_LT(akima.e_bar, pchip.e_bar);
    EXPECT_NEAR(csi.e_bar, kKneeCsiMean, 1e-12);
    EXPECT_NEAR(csi.e_max, kKneeCsiMax, 1e-12);
    EXPECT_NEAR(pchip.e_bar, kKneePchipMean, 1e-12);
    EXPECT_NEAR(pchip.e_max, kKneePchipMax, 1e-12);
    EXPECT_NEAR(akima.e_bar, kKneeAkimaMean, 1e-12);
    EXPECT_NEAR(akima.e_max, kKneeAkimaMax, 1e-12);

    // the same numbers from the independent fitters
    std::vector<MeasurementRow> rows;
    for (const auto& [key, pts] : ds.validation_points()) {
        const auto& sup = ds.curve(key)->points;
        for (const auto& p : pts) {
            bool is_support = std::any_of(sup.begin(), sup.end(),
                                          [&](const RDPoint& s) { return s.label == p.label; });
            rows.push_back(row(key.sequence, key.codec, p.label, p.quality, p.cost, is_support,
                               pair.quality, pair.cost));
        }
    }
    EXPECT_NEAR(brute_force(rows, InterpolationMethod::csi_not_a_knot).e_bar, csi.e_bar, 1e-12);
    EXPECT_NEAR(brute_force(rows, InterpolationMethod::pchip).e_max, pchip.e_max, 1e-12);
    EXPECT_NEAR(brute_force(rows, InterpolationMethod::akima).e_bar, akima.e_bar, 1e-12);
}
