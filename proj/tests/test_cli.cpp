#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "relage/report.hpp"

namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
    const std::string cmd = std::string(RELAGE_CLI) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path write_config(const std::string& name, const std::string& body) {
    const auto p = fs::temp_directory_path() / ("relage_cli_" + name + ".json");
    std::ofstream(p) << body;
    return p;
}

const std::string quadratic_mrl = std::string(RELAGE_CONFIG_DIR) + "/quadratic_mrl.json";

}  // namespace

TEST(Cli, CompareQuadraticMrlIsDecisive) {
    const auto out = fs::temp_directory_path() / "relage_cli_out_qmrl";
    fs::remove_all(out);
    EXPECT_EQ(run("compare --config " + quadratic_mrl + " --out-dir " + out.string()), 0);
    ASSERT_TRUE(fs::exists(out / "report.json"));
    std::ifstream in(out / "report.json");
    const auto j = relage::json::parse(in);
    EXPECT_EQ(j.at("schema_version").get<int>(), relage::kSchemaVersion);
    const auto rep = relage::report_from_json(j);
    bool found = false;
    for (const auto& c : rep.conclusions) found = found || c == "X ages faster at level 2 (sIFR_R)";
    EXPECT_TRUE(found);
    EXPECT_TRUE(fs::exists(out / "ratio_r_s1.csv"));
    fs::remove_all(out);
}

TEST(Cli, InconclusiveVerdictsExitWithTwo) {
    const auto cfg = write_config("exp", R"j({
        "x": {"family": "exponential", "params": {"rate": 2}},
        "y": {"family": "exponential", "params": {"rate": 1}},
        "s_max": 2})j");
    EXPECT_EQ(run("compare --config " + cfg.string()), 2);
    EXPECT_EQ(run("classify --config " + cfg.string()), 2);
}

TEST(Cli, ErrorsExitWithOne) {
    const auto bad = write_config("bad", R"j({"x": {"mrl": "1"}, "y": {"mrl": "1"}, "bogus": true})j");
    EXPECT_EQ(run("compare --config " + bad.string()), 1);
    const auto syntax = write_config("syntax", R"j({"x": {"mrl": "1/(4+11t^2)"}, "y": {"mrl": "1"}})j");
    EXPECT_EQ(run("compare --config " + syntax.string()), 1);
    EXPECT_EQ(run("compare --config /nonexistent/file.json"), 1);
    EXPECT_EQ(run("frobnicate"), 1);
    EXPECT_EQ(run("curves --config " + quadratic_mrl), 1);  // --out-dir is required
}

TEST(Cli, CurvesAndMcCheck) {
    const auto out = fs::temp_directory_path() / "relage_cli_curves";
    fs::remove_all(out);
    EXPECT_EQ(run("curves --config " + quadratic_mrl + " --out-dir " + out.string()), 0);
    EXPECT_TRUE(fs::exists(out / "x" / "r_s2.csv"));
    EXPECT_TRUE(fs::exists(out / "h_s1.csv"));
    fs::remove_all(out);
    const auto cfg = std::string(RELAGE_CONFIG_DIR) + "/weibull_vs_exponential.json";
    EXPECT_EQ(run("mc-check --config " + cfg + " --seed 9"), 0);
}

TEST(Cli, ClassifyWeibullIsDecisive) {
    const auto cfg = write_config("weib", R"j({
        "x": {"family": "weibull", "params": {"shape": 2}},
        "y": {"family": "weibull", "params": {"shape": 3}},
        "s_max": 2})j");
    EXPECT_EQ(run("classify --config " + cfg.string()), 0);
}
