#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "locaos/instance_io.hpp"
#include "locaos/loc.hpp"
#include "locaos/text.hpp"

namespace locaos {
namespace {

namespace fs = std::filesystem;

int run(const std::string& args) {
    const std::string cmd = std::string(LOCAOS_CLI) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

LocMatrix read_loc(const fs::path& p) {
    std::ifstream in(p);
    return read_loc_csv(in).matrix;
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("locaos_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    fs::path dir_;
};

TEST_F(CliTest, GenIsReproducibleAndRefusesToOverwrite) {
    ASSERT_EQ(run("gen --n 3 --customers 12 --seed 5 --out " + path("a")), 0);
    ASSERT_EQ(run("gen --n 3 --customers 12 --seed 5 --out " + path("b")), 0);
    for (int s = 5; s < 8; ++s) {
        const std::string name = "uniform-n12-s" + std::to_string(s) + ".vrp";
        ASSERT_TRUE(fs::exists(dir_ / "a" / name));
        EXPECT_EQ(slurp(dir_ / "a" / name), slurp(dir_ / "b" / name));
        const Instance inst = load_instance(dir_ / "a" / name);
        EXPECT_EQ(inst.num_customers(), 12);
    }
    const std::string before = slurp(dir_ / "a" / "uniform-n12-s5.vrp");
    EXPECT_EQ(run("gen --n 2 --customers 12 --seed 4 --out " + path("a")), 2);
    EXPECT_EQ(slurp(dir_ / "a" / "uniform-n12-s5.vrp"), before);
    EXPECT_EQ(run("gen --n 1 --customers 12 --seed 5 --force --out " + path("a")), 0);
}

TEST_F(CliTest, GenRejectsBadArguments) {
    EXPECT_NE(run("gen --customers 0 --out " + path("x")), 0);
    EXPECT_NE(run("gen --format xml --out " + path("x")), 0);
    EXPECT_NE(run("gen --demand-lo 9 --demand-hi 2 --out " + path("x")), 0);
    EXPECT_NE(run("no-such-command"), 0);
}

TEST_F(CliTest, SampleLocWritesConsistentMatrices) {
    ASSERT_EQ(run("sample-loc --customers 10 --instance-seed 3 --trials 2 --seed 4 --max-ite 80 --out " +
                  path("loc")),
              0);
    const LocMatrix a = read_loc(dir_ / "loc" / "loc_trial_0.csv");
    const LocMatrix b = read_loc(dir_ / "loc" / "loc_trial_1.csv");
    const LocMatrix mean = read_loc(dir_ / "loc" / "loc_mean.csv");
    ASSERT_EQ(a.size(), 17);
    for (int i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a(i, i), 1.0);
        for (int j = 0; j < a.size(); ++j) {
            EXPECT_EQ(a(i, j), a(j, i));
            EXPECT_EQ(b(i, j), b(j, i));
            EXPECT_NEAR(mean(i, j), (a(i, j) + b(i, j)) / 2, 1e-12);
        }
    }
    EXPECT_TRUE(fs::exists(dir_ / "loc" / "traps_trial_1.csv"));
    EXPECT_TRUE(fs::exists(dir_ / "loc" / "summary.json"));
    const std::string sim = slurp(dir_ / "loc" / "similarity.csv");
    EXPECT_NE(sim.find("\n0,1,"), std::string::npos);
}

TEST_F(CliTest, LocSimTableIsSymmetric) {
    ASSERT_EQ(run("sample-loc --customers 10 --trials 2 --max-ite 60 --out " + path("loc")), 0);
    const std::string a = path("loc/loc_trial_0.csv");
    const std::string b = path("loc/loc_trial_1.csv");
    ASSERT_EQ(run("loc-sim " + a + " " + b + " " + a + " --out " + path("sim.csv")), 0);
    std::istringstream in(slurp(dir_ / "sim.csv"));
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        rows.push_back(split(line, ','));
    }
    ASSERT_EQ(rows.size(), 4u);
    for (std::size_t i = 1; i <= 3; ++i) {
        ASSERT_EQ(rows[i].size(), 4u);
        EXPECT_DOUBLE_EQ(std::stod(rows[i][i]), 1.0);
        for (std::size_t j = 1; j <= 3; ++j) EXPECT_EQ(rows[i][j], rows[j][i]);
    }
    EXPECT_DOUBLE_EQ(std::stod(rows[1][3]), 1.0);
}

TEST_F(CliTest, OptimizeWritesATrace) {
    ASSERT_EQ(run("gen --n 1 --customers 10 --seed 1 --out " + path("inst")), 0);
    const std::string inst = path("inst/uniform-n10-s1.vrp");
    ASSERT_EQ(run("optimize --instance " + inst + " --policy pm --max-ite 50 --out " + path("run")), 0);
    std::istringstream in(slurp(dir_ / "run" / "trace.csv"));
    std::string line;
    int rows = 0;
    bool header = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header) {
            EXPECT_EQ(line, "ite,op,reward,trapped,distance,perturbed");
            header = true;
        } else {
            ++rows;
        }
    }
    EXPECT_EQ(rows, 50);
    EXPECT_EQ(run("optimize --instance " + inst + " --policy pm-loc --out " + path("run2")), 2);
}

TEST_F(CliTest, CompareIsDeterministic) {
    const std::string common =
        "compare --set gen.count=2 --set gen.customers=8 --set repeats=2 --set max_ite=60 "
        "--set loc.customers=8 --set loc.max_ite=40 --set policies=pm,pm-loc";
    ASSERT_EQ(run(common + " --set threads=1 --out " + path("r1")), 0);
    ASSERT_EQ(run(common + " --set threads=3 --out " + path("r2")), 0);
    for (const char* f : {"cells.csv", "summary.csv", "tests.csv", "loc.csv"}) {
        ASSERT_TRUE(fs::exists(dir_ / "r1" / f)) << f;
        EXPECT_EQ(slurp(dir_ / "r1" / f), slurp(dir_ / "r2" / f)) << f;
    }
    const std::string tests = slurp(dir_ / "r1" / "tests.csv");
    EXPECT_NE(tests.find("\nall,pm,pm-loc,"), std::string::npos);
    EXPECT_EQ(run("compare --set policies=ap,ap --out " + path("r3")), 2);
    EXPECT_EQ(run("compare --set bogus=1 --out " + path("r3")), 2);
}

TEST_F(CliTest, OperatorCatalog) {
    const std::string cmd = std::string(LOCAOS_CLI) + " operators > " + path("ops.csv");
    ASSERT_EQ(std::system(cmd.c_str()), 0);
    std::istringstream in(slurp(dir_ / "ops.csv"));
    std::string line;
    int rows = 0;
    while (std::getline(in, line)) ++rows;
    EXPECT_EQ(rows, 18);
}

}  // namespace
}  // namespace locaos
