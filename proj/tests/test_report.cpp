#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "ntcodes/error.hpp"
#include "ntcodes/report.hpp"

using namespace ntc;
namespace fs = std::filesystem;

namespace {

RunConfig cd_dual(int d, std::size_t w)
{
    RunConfig cfg;
    cfg.code.family = Family::Cd;
    cfg.code.d = d;
    cfg.w_max = w;
    cfg.workers = 1;
    return cfg;
}

fs::path scratch_dir(const std::string& name)
{
    const auto dir = fs::temp_directory_path() / ("ntcodes-test-" + name);
    fs::remove_all(dir);
    return dir;
}

}  // namespace

TEST(Config, KeyFormat)
{
    EXPECT_EQ(cd_dual(1, 3).key(), "q2r3-cd-dual-d1-w3-v1");
    RunConfig v;
    v.checks = {"te1", "te2"};
    v.code.d = 2;
    EXPECT_EQ(v.key(), "q2r3-verify.te1+te2-d2a0b0s0t1000x0-w4-v1");
    auto other = cd_dual(1, 3);
    other.workers = 8;
    other.format = "csv";
    EXPECT_EQ(other, cd_dual(1, 3));
    EXPECT_EQ(other.key(), cd_dual(1, 3).key());
}

TEST(Config, JsonRoundTrip)
{
    RunConfig cfg = cd_dual(2, 4);
    cfg.code.family = Family::CdE;
    cfg.code.E = {Point::affine(Felt{0}, Felt{0}), Point::affine(Felt{0}, Felt{2})};
    cfg.seed = 17;
    EXPECT_EQ(config_from_json(config_to_json(cfg)), cfg);
    EXPECT_EQ(format_points(cfg.code.E), "0.0_0.2");
    EXPECT_EQ(parse_points("0.0_0.2"), cfg.code.E);
    EXPECT_TRUE(parse_points("").empty());
    EXPECT_THROW(parse_points("0.x"), Error);
}

TEST(Config, Validation)
{
    const auto bad = [](auto mutate) {
        RunConfig cfg = cd_dual(1, 3);
        mutate(cfg);
        EXPECT_THROW(cfg.validate(), Error);
    };
    bad([](RunConfig& c) { c.q = 6; });
    bad([](RunConfig& c) { c.r = 1; });
    bad([](RunConfig& c) { c.w_max = 0; });
    bad([](RunConfig& c) { c.w_max = 65; });
    bad([](RunConfig& c) { c.engine = "magic"; });
    bad([](RunConfig& c) { c.format = "xml"; });
    bad([](RunConfig& c) { c.checks = {"nope"}; });
    bad([](RunConfig& c) { c.trials = -1; });
    EXPECT_NO_THROW(cd_dual(1, 3).validate());
}

TEST(Report, AnalyzeAndRoundTrip)
{
    const Report rep = run_analyze(cd_dual(1, 3));
    EXPECT_EQ(rep.n, 32u);
    // n and k describe the built code; the weights are those of its dual.
    EXPECT_EQ(rep.k, 3u);
    EXPECT_EQ(rep.distance, 3u);
    EXPECT_EQ(rep.counts.at(3), 3360u);
    EXPECT_EQ(rep.engine, "support_search");
    EXPECT_EQ(rep.key, "q2r3-cd-dual-d1-w3-v1");
    EXPECT_FALSE(rep.supports.empty());
    EXPECT_FALSE(rep.any_fail());
    EXPECT_EQ(report_from_json(report_to_json(rep)), rep);
    EXPECT_THROW(report_from_json(nlohmann::json{{"key", 3}}), std::exception);
}

TEST(Report, PrimalUsesExhaustiveWhenSmall)
{
    RunConfig cfg = cd_dual(1, 32);
    cfg.dual = false;
    const Report rep = run_analyze(cfg);
    EXPECT_EQ(rep.engine, "exhaustive");
    EXPECT_EQ(rep.k, 3u);
    std::uint64_t total = 0;
    for (const auto& [w, c] : rep.counts) total += c;
    EXPECT_EQ(total + 1, 512u);
}

TEST(Report, VerifyCollectsVerdicts)
{
    RunConfig cfg;
    cfg.checks = {"te1", "dims"};
    cfg.code.d = 1;
    cfg.code.b = 1;
    cfg.workers = 1;
    const Report rep = run_config(cfg);
    ASSERT_EQ(rep.checks.size(), 2u);
    EXPECT_EQ(rep.checks[0].id, "te1");
    EXPECT_FALSE(rep.any_fail());
    EXPECT_EQ(report_from_json(report_to_json(rep)), rep);
}

TEST(Cache, HitReturnsIdenticalBody)
{
    const auto dir = scratch_dir("hit");
    const ReportCache cache(dir);
    const auto cfg = cd_dual(1, 3);
    std::vector<std::string> warnings;
    const auto warn = [&](const std::string& w) { warnings.push_back(w); };
    EXPECT_FALSE(cache.load(cfg.key(), warn).has_value());
    const Report rep = run_analyze(cfg);
    cache.store(rep);
    EXPECT_TRUE(fs::exists(cache.path_for(cfg.key())));
    const auto hit = cache.load(cfg.key(), warn);
    ASSERT_TRUE(hit.has_value());
    EXPECT_EQ(*hit, rep);
    EXPECT_EQ(report_to_json(*hit).dump(), report_to_json(rep).dump());
    EXPECT_TRUE(warnings.empty());
    fs::remove_all(dir);
}

TEST(Cache, CorruptFileIsAMissWithWarning)
{
    const auto dir = scratch_dir("corrupt");
    const ReportCache cache(dir);
    const auto key = cd_dual(1, 3).key();
    fs::create_directories(dir);
    std::ofstream(cache.path_for(key)) << "{ not json";
    std::vector<std::string> warnings;
    EXPECT_FALSE(cache.load(key, [&](const std::string& w) { warnings.push_back(w); }).has_value());
    EXPECT_EQ(warnings.size(), 1u);
    // A valid report filed under the wrong key is also a miss.
    Report other = run_analyze(cd_dual(1, 3));
    other.key = "q2r3-cd-dual-d2-w3-v1";
    std::ofstream(cache.path_for(key)) << report_to_json(other).dump();
    EXPECT_FALSE(cache.load(key, [&](const std::string& w) { warnings.push_back(w); }).has_value());
    EXPECT_EQ(warnings.size(), 2u);
    fs::remove_all(dir);
}

TEST(Sweep, GridOrderAndRanges)
{
    const std::string text =
        "# one-point and Cd grid\n"
        "q = 2\n"
        "family = cd\n"
        "d = 1..2   # range\n"
        "w_max = [3, 4]\n"
        "dual = true\n";
    const auto grid = parse_sweep(text, RunConfig{});
    ASSERT_EQ(grid.size(), 4u);
    EXPECT_EQ(grid[0].key(), "q2r3-cd-dual-d1-w3-v1");
    EXPECT_EQ(grid[1].key(), "q2r3-cd-dual-d1-w4-v1");
    EXPECT_EQ(grid[2].key(), "q2r3-cd-dual-d2-w3-v1");
    EXPECT_EQ(grid[3].key(), "q2r3-cd-dual-d2-w4-v1");
}

TEST(Sweep, ChecksAreAListNotAnAxis)
{
    const auto grid = parse_sweep("checks = [te1, te2]\nd = [1, 2]\n", RunConfig{});
    ASSERT_EQ(grid.size(), 2u);
    EXPECT_EQ(grid[0].checks, (std::vector<std::string>{"te1", "te2"}));
    EXPECT_EQ(grid[1].code.d, 2);
    const auto single = parse_sweep("", RunConfig{});
    EXPECT_EQ(single.size(), 1u);
}

TEST(Sweep, Errors)
{
    EXPECT_THROW(parse_sweep("d = 1\nd = 2\n", RunConfig{}), Error);
    EXPECT_THROW(parse_sweep("colour = red\n", RunConfig{}), Error);
    EXPECT_THROW(parse_sweep("d 1\n", RunConfig{}), Error);
    EXPECT_THROW(parse_sweep("d = 3..1\n", RunConfig{}), Error);
    EXPECT_THROW(parse_sweep("d = []\n", RunConfig{}), Error);
    EXPECT_THROW(parse_sweep("q = [2, 6]\n", RunConfig{}), Error);
    EXPECT_THROW(parse_sweep("d = x\n", RunConfig{}), Error);
}

TEST(Csv, Flatten)
{
    const nlohmann::json j{{"a", 1}, {"b", {{"c", "x,y"}}}, {"l", {2, 3}}};
    EXPECT_EQ(json_to_csv(j), "path,value\na,1\nb.c,\"x,y\"\nl.0,2\nl.1,3\n");
}
