#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "locaos/config.hpp"
#include "locaos/experiment.hpp"
#include "locaos/instance_io.hpp"
#include "locaos/report.hpp"

namespace locaos {
namespace {

KeyValueConfig parse(const std::string& text) {
    std::istringstream in(text);
    return KeyValueConfig::parse(in);
}

TEST(KeyValueConfigTest, ParsesCommentsAndWhitespace) {
    const KeyValueConfig c = parse("# experiment\n\n repeats = 5 \nmax_ite=100\npolicies = ap, ap-loc\n");
    EXPECT_EQ(c.get_int("repeats", 0), 5);
    EXPECT_EQ(c.get_int("max_ite", 0), 100);
    EXPECT_EQ(c.get_or("policies", ""), "ap, ap-loc");
    EXPECT_EQ(c.get_int("missing", 7), 7);
}

TEST(KeyValueConfigTest, ReportsMalformedLines) {
    try {
        parse("repeats = 5\nrepeats = 6\n");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
        EXPECT_NE(std::string(e.what()).find("duplicate"), std::string::npos);
    }
    EXPECT_THROW(parse("just words\n"), ParseError);
    EXPECT_THROW(parse("= 3\n"), ParseError);
}

TEST(KeyValueConfigTest, OverridesReplaceValues) {
    KeyValueConfig c = parse("repeats = 5\n");
    c.apply_override("repeats=9");
    c.apply_override(" seed = 4 ");
    EXPECT_EQ(c.get_int("repeats", 0), 9);
    EXPECT_EQ(c.get_u64("seed", 0), 4u);
    EXPECT_THROW(c.apply_override("noequals"), std::invalid_argument);
}

TEST(KeyValueConfigTest, TypedGettersValidate) {
    const KeyValueConfig c = parse("a = 12x\nb = -3\nc = 0.25\n");
    EXPECT_THROW(c.get_int("a", 0), std::invalid_argument);
    EXPECT_THROW(c.get_u64("b", 0), std::invalid_argument);
    EXPECT_EQ(c.get_double("c", 0), 0.25);
}

TEST(ExperimentConfigTest, DefaultsForGeneratedInstances) {
    const ExperimentConfig e = resolve_experiment(parse("loc.max_ite = 10\n"));
    EXPECT_TRUE(e.instance_files.empty());
    EXPECT_EQ(e.generator.count, 30);
    EXPECT_EQ(e.max_ite, 40000);
    EXPECT_EQ(e.repeats, 30);
    ASSERT_EQ(e.seeds.size(), 30u);
    EXPECT_EQ(e.seeds.front(), 1u);
    EXPECT_EQ(e.seeds.back(), 30u);
    EXPECT_EQ(e.ops.size(), 17u);
    EXPECT_DOUBLE_EQ(e.params.p_min, 0.5 / 16);
    EXPECT_EQ(e.params.alpha, 0.2);
    EXPECT_EQ(e.params.beta, 0.2);
    ASSERT_EQ(e.policies.size(), 4u);
    EXPECT_EQ(e.policies[1].name(), "ap-loc");
    EXPECT_TRUE(e.needs_loc());
}

TEST(ExperimentConfigTest, LoadedInstancesDefaultToTheShortBudget) {
    const ExperimentConfig e = resolve_experiment(parse("instances = a.vrp, b.vrp\npolicies = ap, pm\n"));
    EXPECT_EQ(e.instance_files, (std::vector<std::string>{"a.vrp", "b.vrp"}));
    EXPECT_EQ(e.max_ite, 2000);
}

TEST(ExperimentConfigTest, RejectsMisconfiguration) {
    EXPECT_THROW(resolve_experiment(parse("bogus = 1\n")), std::invalid_argument);
    EXPECT_THROW(resolve_experiment(parse("policies = ap, pm\nrepeats = 0\n")), std::invalid_argument);
    EXPECT_THROW(resolve_experiment(parse("policies = ap, pm\nrepeats = 3\nseeds = 1,2\n")), std::invalid_argument);
    EXPECT_THROW(resolve_experiment(parse("policies = ap, greedy\n")), std::invalid_argument);
    EXPECT_THROW(resolve_experiment(parse("policies = ap, ap\n")), std::invalid_argument);
    EXPECT_THROW(resolve_experiment(parse("policies = ap, ap-loc\n")), std::invalid_argument);
    EXPECT_THROW(resolve_experiment(parse("policies = ap, pm\nmax_ite = 0\n")), std::invalid_argument);
    EXPECT_THROW(resolve_experiment(parse("policies = ap, pm\np_min = 0.5\n")), std::invalid_argument);
    EXPECT_THROW(resolve_experiment(parse("policies = ap, pm\ndistance = manhattan\n")), std::invalid_argument);
}

TEST(ExperimentConfigTest, ExplicitSeedsAndDescription) {
    const ExperimentConfig e = resolve_experiment(
        parse("policies = uniform, pm\nrepeats = 3\nseeds = 7, 11, 13\ngen.count = 2\ngen.customers = 8\n"));
    EXPECT_EQ(e.seeds, (std::vector<std::uint64_t>{7, 11, 13}));
    const auto lines = describe(e);
    auto has = [&](const std::string& l) { return std::find(lines.begin(), lines.end(), l) != lines.end(); };
    EXPECT_TRUE(has("seeds=7,11,13"));
    EXPECT_TRUE(has("policies=uniform,pm"));
    EXPECT_TRUE(has("gen.customers=8"));
    EXPECT_TRUE(has("operators=1,2,3,4,5,6,7,8,9,10,11,12,13,14,15,16,17"));
    EXPECT_TRUE(has("max_ite=40000"));
}

TEST(ExperimentConfigTest, GeneratedInstancesFollowTheSeed) {
    const ExperimentConfig e =
        resolve_experiment(parse("policies = ap, pm\ngen.count = 3\ngen.customers = 6\ngen.seed = 10\n"));
    const auto insts = materialize_instances(e);
    ASSERT_EQ(insts.size(), 3u);
    EXPECT_EQ(insts[2], generate_uniform_instance(GeneratorSpec{6, 50, 1, 9}, 12));
}

TEST(ExperimentConfigTest, LocFileMustMatchOperators) {
    const auto dir = std::filesystem::temp_directory_path() / "locaos_harness_test";
    std::filesystem::create_directories(dir);
    const auto path = dir / "loc.csv";
    {
        std::ofstream out(path);
        write_loc_csv(out, LocMatrix(2, 1.0), {OperatorId(1), OperatorId(2)});
    }
    KeyValueConfig kv = parse("policies = ap, ap-loc\noperators = 1-2\n");
    kv.set("loc_file", path.string());
    const LocSource src = obtain_loc(resolve_experiment(kv));
    EXPECT_EQ(src.matrix.size(), 2);
    EXPECT_EQ(src.checksum.size(), 16u);
    kv.set("operators", "1-3");
    EXPECT_THROW(obtain_loc(resolve_experiment(kv)), std::invalid_argument);
}

TEST(ParallelForTest, CoversEveryIndexOnceAndPropagatesErrors) {
    std::vector<int> hits(100, 0);
    parallel_for(100, 4, [&](int i) { ++hits[static_cast<std::size_t>(i)]; });
    for (int h : hits) EXPECT_EQ(h, 1);
    EXPECT_THROW(parallel_for(10, 3, [](int i) {
                     if (i == 5) throw std::runtime_error("boom");
                 }),
                 std::runtime_error);
}

ExperimentConfig tiny_config(const std::string& policies) {
    return resolve_experiment(parse("gen.count = 3\ngen.customers = 8\nrepeats = 2\nmax_ite = 60\nloc.customers = 8\n"
                                    "loc.max_ite = 50\npolicies = " +
                                    policies + "\n"));
}

TEST(ComparisonTest, ShapeOfTheReport) {
    const ExperimentConfig e = tiny_config("pm, pm-loc");
    const auto insts = materialize_instances(e);
    const LocSource loc = obtain_loc(e);
    const ComparisonReport r = build_report(e, insts, run_cells(e, insts, &loc.matrix));
    EXPECT_EQ(r.cells.size(), 12u);
    EXPECT_EQ(r.summaries.size(), 6u);
    ASSERT_EQ(r.tests.size(), 4u);  // one per instance plus the aggregate
    EXPECT_EQ(r.tests.back().instance, -1);
    for (const PairTest& t : r.tests) {
        EXPECT_GE(t.distance.p_value, 0.0);
        EXPECT_LE(t.distance.p_value, 1.0);
    }
    ASSERT_EQ(r.tallies.size(), 1u);
    EXPECT_EQ(r.tallies[0].wins + r.tallies[0].losses + r.tallies[0].ties, 3);
    // Paired seeds: both policies start from the same solution in each repeat.
    for (const CellResult& c : r.cells) {
        const CellResult& twin = r.cells[static_cast<std::size_t>(c.instance * 4 + (1 - c.policy) * 2 + c.repeat)];
        EXPECT_EQ(c.seed, twin.seed);
        EXPECT_EQ(c.initial_distance, twin.initial_distance);
    }
    std::ostringstream cells;
    write_cells_csv(cells, r, describe(e));
    EXPECT_NE(cells.str().find("# policies=pm,pm-loc"), std::string::npos);
}

TEST(ComparisonTest, SelfComparisonIsDegenerate) {
    ExperimentConfig e = tiny_config("pm, uniform");
    e.policies = {PolicySpec{PolicyKind::probability_matching, false},
                  PolicySpec{PolicyKind::probability_matching, false}};
    const auto insts = materialize_instances(e);
    const ComparisonReport r = build_report(e, insts, run_cells(e, insts, nullptr));
    for (const PairTest& t : r.tests) {
        EXPECT_TRUE(t.distance.degenerate);
        EXPECT_EQ(t.distance.p_value, 1.0);
        EXPECT_EQ(t.mean_a, t.mean_b);
    }
    EXPECT_EQ(r.tallies[0].ties, 3);
}

TEST(ComparisonTest, ThreadCountDoesNotChangeResults) {
    ExperimentConfig e = tiny_config("ap, pm");
    const auto insts = materialize_instances(e);
    e.threads = 1;
    const auto serial = run_cells(e, insts, nullptr);
    e.threads = 4;
    const auto parallel = run_cells(e, insts, nullptr);
    ASSERT_EQ(serial.size(), parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        EXPECT_EQ(serial[i].best_distance, parallel[i].best_distance);
        EXPECT_EQ(serial[i].trapped_after_trapped, parallel[i].trapped_after_trapped);
    }
}

}  // namespace
}  // namespace locaos
