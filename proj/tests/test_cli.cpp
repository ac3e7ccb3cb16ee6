#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cranidnc/cli.hpp"

using namespace cranidnc;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir()
    {
        path = fs::temp_directory_path() /
               ("cranidnc_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
                ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string write(const std::string& name, const std::string& text) const
    {
        std::ofstream(path / name) << text;
        return (path / name).string();
    }
};

int run(std::vector<std::string> args, std::string* out_text = nullptr, std::string* err_text = nullptr)
{
    args.insert(args.begin(), "cranidnc");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int rc = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
    if (out_text) *out_text = out.str();
    if (err_text) *err_text = err.str();
    return rc;
}

std::string slurp(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

} // namespace

TEST(Cli, Selftest)
{
    std::string out;
    EXPECT_EQ(run({"selftest"}, &out), 0);
    EXPECT_NE(out.find("fig3: 3.0 OK\n"), std::string::npos);
    EXPECT_NE(out.find("fig4: 7.0 OK\n"), std::string::npos);
}

TEST(Cli, SolveWithNoRequestsIsZero)
{
    TempDir dir;
    const auto cfg = dir.write("c.cfg", "num_users = 4\nnum_rrbs = 2\nhas_prob = 1\n");
    std::string out;
    ASSERT_EQ(run({"solve", "--config", cfg}, &out), 0);
    std::size_t lines = 0;
    for (std::size_t pos = out.find("sum_rate=0 "); pos != std::string::npos; pos = out.find("sum_rate=0 ", pos + 1))
        ++lines;
    EXPECT_EQ(lines, 5U);
}

TEST(Cli, SolvePrintsSchedules)
{
    TempDir dir;
    const auto cfg = dir.write("c.cfg", "num_users = 4\nnum_rrbs = 2\n");
    std::string out;
    ASSERT_EQ(run({"solve", "--config", cfg, "--schemes", "proposed_exact", "--seed", "3"}, &out), 0);
    EXPECT_EQ(out.rfind("scheme proposed_exact solver=exact", 0), 0U);
    std::istringstream lines(out);
    std::string header;
    std::getline(lines, header);
    EXPECT_NO_THROW(read_schedule(lines));
}

TEST(Cli, SweepWritesCsvAndRecords)
{
    TempDir dir;
    const auto cfg = dir.write("s.cfg", "sweep_param = num_users\nsweep_values = 2,3\nnum_rrbs = 2\n");
    const auto csv = (dir.path / "out.csv").string();
    const auto rec = (dir.path / "rec.csv").string();
    ASSERT_EQ(run({"sweep", "--config", cfg, "--out", csv, "--records", rec, "--trials", "3", "--schemes",
                   "rlnc,heu_shd"}),
              0);
    std::ifstream in(csv);
    const auto rows = read_csv(in);
    ASSERT_EQ(rows.size(), 4U);
    EXPECT_EQ(rows[0].scheme, "heu_shd");
    EXPECT_EQ(rows[0].trials, 3U);
    EXPECT_EQ(rows[3].scheme, "rlnc");
    EXPECT_EQ(rows[3].value, 3U);
    EXPECT_NE(slurp(rec).find("solver"), std::string::npos);
}

TEST(Cli, GraphDump)
{
    TempDir dir;
    const auto cfg = dir.write("g.cfg", "num_users = 3\nnum_rrbs = 1\nnum_rrhs = 2\n");
    const auto out = (dir.path / "g.dimacs").string();
    ASSERT_EQ(run({"graph-dump", "--config", cfg, "--out", out}), 0);
    std::ifstream in(out);
    const WeightedGraph g = read_dimacs(in);
    const auto text = slurp(out);
    EXPECT_NE(text.find("c v 1 "), std::string::npos);
    EXPECT_NE(text.find("p edge " + std::to_string(g.size()) + " "), std::string::npos);
}

TEST(Cli, Errors)
{
    TempDir dir;
    const auto cfg = dir.write("bad.cfg", "num_user = 3\n");
    std::string err;
    EXPECT_EQ(run({"solve", "--config", cfg}, nullptr, &err), 2);
    EXPECT_NE(err.find("num_user"), std::string::npos);
    EXPECT_NE(run({"solve", "--config", (dir.path / "missing.cfg").string()}), 0);
    EXPECT_NE(run({}), 0);
    EXPECT_NE(run({"sweep", "--config", dir.write("ok.cfg", "sweep_values = 2\n")}), 0); // --out required
}
