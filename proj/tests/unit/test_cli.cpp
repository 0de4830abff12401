#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace fs = std::filesystem;
using polyembed::cli::run;

namespace {

class Cli : public ::testing::Test {
protected:
    void SetUp() override
    {
        dir_ = fs::temp_directory_path() /
               ("polyembed_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    int call(std::vector<std::string> args)
    {
        out_.str("");
        err_.str("");
        args.insert(args.begin(), {"--out-dir", dir_.string()});
        return run(args, out_, err_);
    }

    fs::path dir_;
    std::ostringstream out_, err_;
};

}  // namespace

TEST_F(Cli, HelpAndUsageErrors)
{
    EXPECT_EQ(run({"--help"}, out_, err_), 0);
    EXPECT_EQ(run({}, out_, err_), 2);
    EXPECT_EQ(call({"bogus"}), 2);
    EXPECT_EQ(call({"build", "teleport"}), 2);
    EXPECT_EQ(call({"build", "main-lemma", "--R", "0.2"}), 2);
    EXPECT_NE(err_.str().find("1/3"), std::string::npos) << err_.str();
    EXPECT_EQ(call({"verify", "--map", "missing"}), 2);
}

TEST_F(Cli, BuildThenVerify)
{
    ASSERT_EQ(call({"build", "main-lemma", "--R", "1"}), 0) << err_.str();
    EXPECT_TRUE(fs::exists(dir_ / "main_lemma_R1.json"));
    EXPECT_EQ(call({"--N", "2000", "verify", "--map", "main_lemma_R1", "--checks", "symplectic,containment"}), 0)
        << out_.str() << err_.str();
    EXPECT_TRUE(fs::exists(dir_ / "main_lemma_R1.verify.json"));
    EXPECT_EQ(call({"--N", "500", "verify", "--map", "main_lemma_R1", "--checks", "containment", "--target",
                    "ball4(0.1)"}),
              1);
    EXPECT_EQ(call({"verify", "--map", "main_lemma_R1", "--checks", "wobble"}), 2);
}

TEST_F(Cli, PlanExitCodes)
{
    EXPECT_EQ(call({"plan", "--P", "1,2,3", "--Pp", "2,2,3", "--out", (dir_ / "c.txt").string()}), 0) << err_.str();
    EXPECT_NE(out_.str().find("486"), std::string::npos) << out_.str();
    EXPECT_TRUE(fs::exists(dir_ / "c.txt"));
    EXPECT_EQ(call({"plan", "--P", "3,3", "--Pp", "1,100"}), 1);
    EXPECT_NE(out_.str().find("infeasible"), std::string::npos);
    EXPECT_EQ(call({"plan", "--P", "1,2", "--Pp", "1,2,3"}), 2);
}

TEST_F(Cli, FiguresWriteCsv)
{
    EXPECT_EQ(call({"--N", "400", "figure", "strips", "--svg"}), 0) << err_.str();
    EXPECT_TRUE(fs::exists(dir_ / "figure_strips.csv"));
    EXPECT_TRUE(fs::exists(dir_ / "figure_strips.svg"));
    std::ifstream in(dir_ / "figure_strips.csv");
    std::string header;
    std::getline(in, header);
    EXPECT_EQ(header, "x,y,region,preimages");
}

TEST_F(Cli, ConfigFileSuppliesOptions)
{
    const fs::path cfg = dir_ / "cfg.toml";
    std::ofstream(cfg) << "N = 300\n";
    EXPECT_EQ(call({"--config", cfg.string(), "figure", "psi"}), 0) << err_.str();
    EXPECT_TRUE(fs::exists(dir_ / "figure_psi.csv"));
}
