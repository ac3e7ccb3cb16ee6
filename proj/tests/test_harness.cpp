#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "cranidnc/harness.hpp"

using namespace cranidnc;

namespace {

SweepSpec small_spec()
{
    SweepSpec spec;
    spec.base_config.dims = NetworkDims{2, 2, 4, 4};
    spec.values = {2, 3};
    spec.trials_per_point = 6;
    spec.threads = 2;
    return spec;
}

} // namespace

TEST(Harness, SchemeNames)
{
    for (Scheme s : kAllSchemes) EXPECT_EQ(parse_scheme(to_string(s)), s);
    EXPECT_EQ(parse_scheme_list("rlnc, heu_shd"), (std::vector<Scheme>{Scheme::rlnc, Scheme::heu_shd}));
    EXPECT_THROW(parse_scheme("bogus"), std::invalid_argument);
}

TEST(Harness, SampleStats)
{
    const auto s = sample_stats({1.0, 2.0, 3.0, 4.0});
    EXPECT_DOUBLE_EQ(s.mean, 2.5);
    // sample sd = sqrt(5/3), se = sd / 2
    EXPECT_NEAR(s.stderr_of_mean, std::sqrt(5.0 / 3.0) / 2.0, 1e-15);
    EXPECT_EQ(sample_stats({7.0}).stderr_of_mean, 0.0);
}

TEST(Harness, TrialSeedsDistinctExceptAcrossFileSizes)
{
    EXPECT_NE(trial_seed(1, SweptParameter::num_users, 3, 0), trial_seed(1, SweptParameter::num_users, 4, 0));
    EXPECT_NE(trial_seed(1, SweptParameter::num_users, 3, 0), trial_seed(1, SweptParameter::num_users, 3, 1));
    EXPECT_EQ(trial_seed(1, SweptParameter::file_size, 1000, 5), trial_seed(1, SweptParameter::file_size, 2000, 5));
}

TEST(Harness, CsvHeaderOnlyWhenEmpty)
{
    std::ostringstream out;
    write_csv(out, SweepResult{});
    EXPECT_EQ(out.str(), std::string(kCsvHeader) + "\n");
}

TEST(Harness, SweepRowsSortedAndParseBack)
{
    SweepSpec spec = small_spec();
    const SweepResult r = run_sweep(spec);
    EXPECT_EQ(r.points.size(), 10U);
    EXPECT_EQ(r.records.size(), 60U);
    std::stringstream ss;
    write_csv(ss, r);
    const auto rows = read_csv(ss);
    ASSERT_EQ(rows.size(), r.points.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        EXPECT_EQ(rows[i].scheme, to_string(r.points[i].scheme));
        EXPECT_EQ(rows[i].swept_param, "num_users");
        EXPECT_EQ(rows[i].value, r.points[i].value);
        EXPECT_EQ(rows[i].mean_bits_per_user_hz, r.points[i].mean_bits_per_user_hz);
        EXPECT_EQ(rows[i].trials, 6U);
        if (i > 0) {
            EXPECT_LE(std::tie(rows[i - 1].scheme, rows[i - 1].value), std::tie(rows[i].scheme, rows[i].value));
        }
    }
}

TEST(Harness, SweepIndependentOfThreadCount)
{
    SweepSpec a = small_spec();
    SweepSpec b = small_spec();
    a.threads = 1;
    b.threads = 4;
    std::ostringstream ca, cb;
    write_csv(ca, run_sweep(a));
    write_csv(cb, run_sweep(b));
    EXPECT_EQ(ca.str(), cb.str());
}

TEST(Harness, DeliveredBitsLinearInFileSize)
{
    SweepSpec spec = small_spec();
    spec.swept_parameter = SweptParameter::file_size;
    spec.values = {1000, 2000, 4000};
    const SweepResult r = run_sweep(spec);
    for (Scheme s : kAllSchemes) {
        const auto one = r.series(s, 1000, &TrialRecord::delivered_bits);
        const auto two = r.series(s, 2000, &TrialRecord::delivered_bits);
        const auto four = r.series(s, 4000, &TrialRecord::delivered_bits);
        for (std::size_t t = 0; t < one.size(); ++t) {
            EXPECT_EQ(two[t], 2.0 * one[t]);
            EXPECT_EQ(four[t], 4.0 * one[t]);
        }
        EXPECT_EQ(r.find(s, 1000)->mean_bits_per_user_hz, r.find(s, 4000)->mean_bits_per_user_hz);
    }
}

TEST(Harness, SolverChoiceRecorded)
{
    SweepSpec spec = small_spec();
    spec.schemes = {Scheme::proposed_exact, Scheme::proposed_greedy};
    spec.budget.vertices = 0;
    const SweepResult r = run_sweep(spec);
    for (const auto& rec : r.records) EXPECT_EQ(rec.solver_used, Solver::greedy);
    std::ostringstream out;
    write_trial_records(out, r);
    EXPECT_NE(out.str().find(",greedy,"), std::string::npos);
}

TEST(Harness, SpecFromConfig)
{
    std::istringstream in("sweep_param = num_rrbs\nsweep_values = 1, 2,3\ntrials = 7\nschemes = rlnc\n"
                          "exact_vertex_budget = 40\nnum_users = 5\n");
    KeyValueConfig kv = KeyValueConfig::parse(in);
    const SweepSpec spec = sweep_spec_from(kv);
    EXPECT_EQ(spec.swept_parameter, SweptParameter::num_rrbs);
    EXPECT_EQ(spec.values, (std::vector<std::uint64_t>{1, 2, 3}));
    EXPECT_EQ(spec.trials_per_point, 7U);
    EXPECT_EQ(spec.schemes, std::vector<Scheme>{Scheme::rlnc});
    EXPECT_EQ(spec.budget.vertices, 40U);
    EXPECT_EQ(spec.base_config.dims.num_users, 5U);
    EXPECT_TRUE(kv.unused_keys().empty());
}

TEST(Harness, SpecValidation)
{
    SweepSpec spec = small_spec();
    spec.values = {3, 2};
    EXPECT_THROW(run_sweep(spec), std::invalid_argument);
    spec.values = {};
    EXPECT_THROW(run_sweep(spec), std::invalid_argument);
}
