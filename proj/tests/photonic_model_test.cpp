#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "switchsim/photonic_model.hpp"

using namespace switchsim;

namespace {

const std::filesystem::path kData = SWITCHSIM_TEST_DATA_DIR;

const FiberSegmentTable &alice() {
    static const auto t = load_segment_table(kData / "fiber_segments.csv", Party::Alice);
    return t;
}

const FiberSegmentTable &bob() {
    static const auto t = load_segment_table(kData / "fiber_segments.csv", Party::Bob);
    return t;
}

PhotonicConfig ideal_config(int n, double visibility) {
    PhotonicConfig c;
    c.n = n;
    c.total_loss_db_override = 0.0;
    c.dark_count_rates_hz = {0.0, 0.0};
    c.visibility = visibility;
    return c;
}

PhotonicConfig measured_config() {
    return load_photonic_config(kData / "photonic_config.json", kData);
}

}  // namespace

TEST(SegmentTable, LoadsBothParties) {
    EXPECT_EQ(alice().size(), 12);
    EXPECT_EQ(bob().size(), 12);
    EXPECT_DOUBLE_EQ(alice().segment(8).long_option.length_ns, 257.948);
    EXPECT_DOUBLE_EQ(bob().segment(1).long_option.loss_db, 0.0149);
    EXPECT_DOUBLE_EQ(bob().segment(12).short_option.loss_db, 0.113);
}

TEST(SegmentTable, TargetsAndValidation) {
    FiberSegment s;
    s.index = 12;
    EXPECT_DOUBLE_EQ(s.target_long_ns(), 4098.0);
    s.index = 1;
    EXPECT_DOUBLE_EQ(s.target_long_ns(), 4.0);

    auto rows = alice().segments();
    rows[2].long_option.length_ns += 0.5;
    EXPECT_THROW(FiberSegmentTable(Party::Alice, rows), std::invalid_argument);
    rows = alice().segments();
    rows[0].short_option.loss_db = -0.1;
    EXPECT_THROW(FiberSegmentTable(Party::Alice, rows), std::invalid_argument);
}

TEST(SegmentTable, MalformedCsv) {
    const std::string header = "party,segment,option,length_ns,length_err_ns,loss_db,loss_err_db\n";
    EXPECT_THROW(parse_segment_table("party,segment\nalice,1\n", Party::Alice), std::runtime_error);
    EXPECT_THROW(parse_segment_table(header + "alice,1,long,4.0,0,0.1,0\n", Party::Alice), std::runtime_error);
    EXPECT_THROW(parse_segment_table(header + "alice,1,long,4.0,0,abc,0\nalice,1,short,2,0,0,0\n", Party::Alice),
                 std::runtime_error);
    EXPECT_THROW(parse_segment_table(header + "alice,1,medium,4.0,0,0.1,0\n", Party::Alice), std::runtime_error);
    EXPECT_THROW(load_segment_table(kData / "missing.csv", Party::Bob), std::runtime_error);
    EXPECT_NO_THROW(parse_segment_table(header + "alice,1,long,4.0,0,0.1,0\nalice,1,short,2,0,0,0\n", Party::Alice));
}

TEST(DelayOf, Examples) {
    EXPECT_DOUBLE_EQ(delay_of(alice(), 0), 0.0);
    EXPECT_NEAR(delay_of(alice(), 1), 1.998, 1e-12);
    EXPECT_NEAR(delay_of(bob(), 2), 4.011, 1e-12);
    EXPECT_THROW(delay_of(alice(), 4096), std::domain_error);
}

TEST(DelayOf, AdditiveOverSetBits) {
    for (const auto *table : {&alice(), &bob()}) {
        for (std::uint64_t x = 0; x < 4096; x += 37) {
            double sum = 0;
            for (int k = 0; k < 12; ++k)
                if ((x >> k) & 1) sum += delay_of(*table, std::uint64_t{1} << k);
            EXPECT_NEAR(delay_of(*table, x), sum, 1e-9);
        }
    }
}

TEST(DelayDeviation, MaxBelowModulationBound) {
    EXPECT_DOUBLE_EQ(delay_deviation_max(FiberSegmentTable::ideal(Party::Alice, 12)), 0.0);
    // Frozen from an independent script enumerating all 4096 delays per party.
    EXPECT_NEAR(delay_deviation_max(alice()), 198.0, 1e-6);
    EXPECT_NEAR(delay_deviation_max(bob()), 88.0, 1e-6);
    EXPECT_LT(delay_deviation_max(alice()), kDelayDeviationBoundPs);
    EXPECT_LT(delay_deviation_max(bob()), kDelayDeviationBoundPs);
}

TEST(DelayDeviation, EnumerationMatchesPerSegmentComposition) {
    EXPECT_NEAR(delay_deviation_max(alice()), delay_deviation_max_composed(alice()), 1e-6);
    EXPECT_NEAR(delay_deviation_max(bob()), delay_deviation_max_composed(bob()), 1e-6);

    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> jitter(-0.15, 0.15);
    for (int trial = 0; trial < 20; ++trial) {
        auto rows = FiberSegmentTable::ideal(Party::Bob, 10).segments();
        for (auto &r : rows) r.long_option.length_ns += jitter(rng);
        const FiberSegmentTable t(Party::Bob, rows);
        EXPECT_NEAR(delay_deviation_max(t), delay_deviation_max_composed(t), 1e-6);
    }
}

TEST(SectionLoss, Examples) {
    EXPECT_NEAR(section_loss(alice(), 12, 0), 0.876, 1e-12);
    EXPECT_NEAR(section_loss(alice(), 12, 4095), 1.594, 1e-12);
    EXPECT_NEAR(section_loss(bob(), 12, 4095), 1.7685, 1e-12);
    EXPECT_DOUBLE_EQ(section_loss(FiberSegmentTable::ideal(Party::Alice, 12), 12, 0), 0.0);
    EXPECT_NEAR(section_loss(alice(), 2, 3), 0.101 + 0.090, 1e-12);
    EXPECT_THROW(section_loss(alice(), 13, 0), std::domain_error);
    EXPECT_THROW(section_loss(alice(), 2, 4), std::domain_error);
}

TEST(SectionLoss, MonotoneWhenLongOptionsCostMore) {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> loss(0.0, 0.3);
    auto rows = FiberSegmentTable::ideal(Party::Alice, 8).segments();
    for (auto &r : rows) {
        r.short_option.loss_db = loss(rng);
        r.long_option.loss_db = r.short_option.loss_db + loss(rng);
    }
    const FiberSegmentTable t(Party::Alice, rows);
    for (std::uint64_t x = 0; x < 256; ++x) {
        for (int k = 0; k < 8; ++k) {
            const std::uint64_t more = x | (std::uint64_t{1} << k);
            EXPECT_GE(section_loss(t, 8, more), section_loss(t, 8, x));
            EXPECT_GE(delay_of(t, more), delay_of(t, x));
        }
    }
}

TEST(SystemEfficiency, OverrideAndComposition) {
    auto c = ideal_config(12, 1.0);
    const auto worst = worst_case_instance(12);
    EXPECT_DOUBLE_EQ(system_efficiency(c, worst), 1.0);
    c.total_loss_db_override = 15.14;
    EXPECT_NEAR(system_efficiency(c, worst), 0.030620, 5e-6);
    c.total_loss_db_override = 13.86;
    EXPECT_NEAR(system_efficiency(c, worst_case_instance(9)), 0.041115, 5e-6);

    const auto m = measured_config();
    EXPECT_NEAR(total_loss_db(m, worst), 11.62 + 1.594 + 1.7685, 1e-12);

    PhotonicConfig bare;
    EXPECT_THROW(system_efficiency(bare, worst), std::invalid_argument);
}

TEST(PhotonicConfigJson, ParsesShippedDefaults) {
    const auto c = measured_config();
    EXPECT_EQ(c.n, 12);
    EXPECT_DOUBLE_EQ(c.time_bin_ns, 2.0);
    EXPECT_DOUBLE_EQ(c.system_base_loss_db, 11.62);
    EXPECT_DOUBLE_EQ(c.dark_count_rates_hz[0], 9.3);
    EXPECT_DOUBLE_EQ(c.dark_count_rates_hz[1], 8.3);
    EXPECT_TRUE(c.alice_segments.has_value());
    EXPECT_DOUBLE_EQ(c.coincidence_window_ns(), 16384.0);

    const auto again = parse_photonic_config(photonic_config_to_json(c), kData);
    EXPECT_EQ(photonic_config_to_json(again), photonic_config_to_json(c));
}

TEST(PhotonicConfigJson, RejectsMalformed) {
    EXPECT_THROW(parse_photonic_config("[1,2]", kData), std::invalid_argument);
    EXPECT_THROW(parse_photonic_config(R"({"visibility": 1.5})", kData), std::invalid_argument);
    EXPECT_THROW(parse_photonic_config(R"({"visiblity": 0.5})", kData), std::invalid_argument);
    EXPECT_THROW(parse_photonic_config(R"({"detector_efficiencies": [0.5]})", kData), std::invalid_argument);
    EXPECT_THROW(parse_photonic_config(R"({"n": 20})", kData), std::domain_error);
    EXPECT_THROW(parse_photonic_config(R"({"segment_table_csv": "nope.csv"})", kData), std::runtime_error);
    EXPECT_THROW(parse_photonic_config("{", kData), std::invalid_argument);
}

TEST(SimulateCounts, NoiselessLimit) {
    const auto r = simulate_counts(worst_case_instance(4), ideal_config(4, 1.0), 10000, 1);
    EXPECT_EQ(r.coincidences_correct, 10000u);
    EXPECT_EQ(r.coincidences_wrong, 0u);
    ASSERT_TRUE(r.estimate);
    EXPECT_EQ(r.estimate->epsilon, 0.0);
}

TEST(SimulateCounts, VisibilityLimitedError) {
    const auto r = simulate_counts(worst_case_instance(12), ideal_config(12, 0.9), 200000, 3);
    ASSERT_TRUE(r.estimate);
    EXPECT_NEAR(r.estimate->epsilon, 0.05, 3 * r.estimate->sigma);
}

TEST(SimulateCounts, PureDarkCountsAreCoinFlips) {
    auto c = ideal_config(12, 0.9);
    c.total_loss_db_override = 1000.0;  // eta ~ 1e-100
    c.dark_count_rates_hz = {9.3e3, 8.3e3};
    const auto r = simulate_counts(worst_case_instance(12), c, 200000, 5);
    ASSERT_TRUE(r.estimate);
    EXPECT_GT(r.dark_events, 0u);
    EXPECT_EQ(r.coincidences_correct + r.coincidences_wrong, r.dark_events);
    EXPECT_NEAR(r.estimate->epsilon, 0.5, 3 * r.estimate->sigma);
}

TEST(SimulateCounts, ConvergesToAnalyticMixture) {
    const auto c = measured_config();
    for (const auto &inst : {worst_case_instance(12), bitflip_instance(12, 5), worst_case_instance(9)}) {
        const auto r = simulate_counts(inst, c, 1000000, 11, 4);
        ASSERT_TRUE(r.estimate);
        EXPECT_NEAR(r.estimate->epsilon, analytic_error_probability(inst, c), 3 * r.estimate->sigma);
    }
}

TEST(SimulateCounts, WorkerCountDoesNotChangeRecord) {
    const auto c = measured_config();
    const auto inst = worst_case_instance(12);
    const auto serial = simulate_counts(inst, c, 100003, 99, 1);
    for (unsigned workers : {2u, 3u, 8u, 17u}) {
        EXPECT_EQ(simulate_counts(inst, c, 100003, 99, workers), serial) << workers;
    }
    EXPECT_NE(simulate_counts(inst, c, 100003, 100, 1), serial);
}

TEST(SimulateCounts, Guards) {
    EXPECT_THROW(simulate_counts(worst_case_instance(3), ideal_config(3, 1.0), 0, 1), std::invalid_argument);
    auto silent = ideal_config(3, 1.0);
    silent.total_loss_db_override = 2000.0;
    const auto r = simulate_counts(worst_case_instance(3), silent, 1000, 1);
    EXPECT_FALSE(r.estimate.has_value());
}

TEST(FitVisibility, InvertsAnalyticModel) {
    auto c = measured_config();
    const auto inst = worst_case_instance(12);
    c.visibility = fit_visibility(inst, c, 0.0638);
    EXPECT_NEAR(analytic_error_probability(inst, c), 0.0638, 1e-12);
    EXPECT_NEAR(c.visibility, 0.8801, 1e-4);
    EXPECT_THROW(fit_visibility(inst, c, 0.6), std::domain_error);
}

TEST(EstimateErrorProbability, Examples) {
    const auto a = estimate_error_probability(936, 64);
    EXPECT_DOUBLE_EQ(a.epsilon, 0.064);
    EXPECT_NEAR(a.sigma, 0.00773977, 1e-8);
    const auto b = estimate_error_probability(100, 0);
    EXPECT_EQ(b.epsilon, 0.0);
    EXPECT_EQ(b.sigma, 0.0);
    const auto c = estimate_error_probability(50, 50);
    EXPECT_DOUBLE_EQ(c.epsilon, 0.5);
    EXPECT_DOUBLE_EQ(c.sigma, 0.05);
    EXPECT_THROW(estimate_error_probability(0, 0), std::domain_error);
}

TEST(G2Estimate, ClosedForm) {
    EXPECT_EQ(g2_estimate(1e6, 1e4, 1e4, 0), 0.0);
    EXPECT_DOUBLE_EQ(g2_estimate(1e6, 1e4, 1e4, 2), 0.01);
    EXPECT_THROW(g2_estimate(1e6, 0, 0, 1), std::domain_error);
}

TEST(CountRecordCsv, FixedColumns) {
    CountRecord r;
    r.trials = 1000;
    r.coincidences_correct = 936;
    r.coincidences_wrong = 64;
    r.estimate = estimate_error_probability(r);
    EXPECT_EQ(count_record_csv_header(), "n,x,y,trials,correct,wrong,dark,epsilon,epsilon_stderr,seed");
    EXPECT_EQ(count_record_csv_row(worst_case_instance(2), r, 7), "2,3,3,1000,936,64,0,0.06400000,0.00773977,7");
}
