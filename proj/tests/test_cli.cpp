#include "cli.hpp"

#include "htriv/catalog.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace htriv {
namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

nlohmann::json json_of(const Outcome& o) { return nlohmann::json::parse(o.out); }

std::string temp_file(const std::string& name, const std::string& text) {
    auto path = std::filesystem::temp_directory_path() / ("htriv_cli_" + name + ".json");
    std::ofstream(path) << text;
    return path.string();
}

TEST(Cli, HTrivialOnP2) {
    Outcome o = run({"h-trivial", "--catalog", "P2", "--coeffs=-1,0,0"});
    EXPECT_EQ(o.code, 0);
    EXPECT_EQ(o.out, "true\n");
    Outcome f = run({"h-trivial", "--catalog", "P2", "--coeffs", "0,0,0"});
    EXPECT_EQ(f.code, 0);
    EXPECT_EQ(f.out.substr(0, 6), "false\n");
}

TEST(Cli, PicOnP1xP1) {
    Outcome o = run({"pic", "--catalog", "P1xP1", "--format", "json"});
    ASSERT_EQ(o.code, 0) << o.err;
    auto j = json_of(o);
    EXPECT_EQ(j["free_rank"], 2);
    EXPECT_TRUE(j["torsion"].empty());
    EXPECT_EQ(j["fingerprint"], catalog_fan("P1xP1").fingerprint());
    EXPECT_NE(run({"pic", "--catalog", "P1xP1"}).out.find("torsion none"), std::string::npos);
}

TEST(Cli, ReportOnP3) {
    Outcome o = run({"report", "--catalog", "P3", "--format", "json"});
    ASSERT_EQ(o.code, 0) << o.err;
    auto j = json_of(o);
    EXPECT_EQ(j["verdict"], "FinitelyMany");
    EXPECT_TRUE(j["degenerate_psi"].is_null());
}

TEST(Cli, ReportOnP1xP2) {
    auto j = json_of(run({"report", "--catalog", "P1xP2", "--format", "json", "--r", "-2:2"}));
    EXPECT_EQ(j["verdict"], "InfinitelyMany");
    EXPECT_EQ(j["family_checks"].size(), 5u);
    EXPECT_TRUE(j["family_all_h_trivial"].get<bool>());
}

TEST(Cli, JsonIsDeterministicAndNewlineTerminated) {
    const std::vector<std::vector<std::string>> cmds = {
        {"validate", "--catalog", "BlP3", "--format", "json"},
        {"delta", "--catalog", "P1xP2", "--format", "json", "--threads", "2"},
        {"scan", "--catalog", "P1xP1", "--box", "-3:3", "--format", "json"},
        {"find-psi", "--catalog", "P1xP1xP1", "--format", "json"},
        {"family", "--catalog", "P1xP1", "--r", "-2:2", "--format", "json"},
        {"report", "--catalog", "P1xP1", "--format", "json"},
    };
    for (const auto& c : cmds) {
        Outcome a = run(c), b = run(c);
        ASSERT_EQ(a.code, 0) << c[0] << ": " << a.err;
        EXPECT_EQ(a.out, b.out) << c[0];
        ASSERT_FALSE(a.out.empty());
        EXPECT_EQ(a.out.back(), '\n');
        EXPECT_NO_THROW(json_of(a));
    }
}

TEST(Cli, CohomologyAndHTrivialAgree) {
    for (const char* coeffs : {"0,0,0,0,0", "-1,0,0,0,0", "0,0,-1,0,0", "3,0,-1,0,0", "0,0,-3,0,0", "-2,0,-3,0,0"}) {
        auto c = json_of(run({"cohomology", "--catalog", "P1xP2", "--format", "json", std::string("--coeffs=") + coeffs}));
        auto h = json_of(run({"h-trivial", "--catalog", "P1xP2", "--format", "json", std::string("--coeffs=") + coeffs}));
        bool zero = true;
        for (const auto& x : c["cohomology"]) zero = zero && x.get<int>() == 0;
        EXPECT_EQ(zero, h["h_trivial"].get<bool>()) << coeffs;
        EXPECT_EQ(c["class"], h["class"]);
        EXPECT_EQ(h["violating_index_set"].is_null(), zero);
    }
}

TEST(Cli, ScanP3) {
    auto j = json_of(run({"scan", "--catalog", "P3", "--box", "-12:12", "--format", "json"}));
    EXPECT_EQ(j["count"], 3);
    EXPECT_EQ(j["scanned"], 25);
    EXPECT_EQ(j["h_trivial_classes"][0]["canonical"]["free"][0], -3);
}

TEST(Cli, FanFileRoundTrip) {
    Outcome dump = run({"catalog", "--catalog", "pentagon"});
    ASSERT_EQ(dump.code, 0);
    std::string path = temp_file("pentagon", dump.out);
    Outcome v = run({"validate", "--fan", path, "--format", "json"});
    ASSERT_EQ(v.code, 0) << v.err;
    EXPECT_EQ(json_of(v)["fingerprint"], catalog_fan("pentagon").fingerprint());
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run({"pic"}).code, cli::kUsage);
    EXPECT_EQ(run({"pic", "--catalog", "P2", "--fan", "x.json"}).code, cli::kUsage);
    EXPECT_EQ(run({"pic", "--fan", "/nonexistent/fan.json"}).code, cli::kUsage);
    EXPECT_EQ(run({"frobnicate", "--catalog", "P2"}).code, cli::kUsage);
    EXPECT_EQ(run({"pic", "--catalog", "nope"}).code, cli::kUsage);
    EXPECT_EQ(run({"h-trivial", "--catalog", "P2", "--coeffs", "1,2"}).code, cli::kUsage);
    EXPECT_EQ(run({"h-trivial", "--catalog", "P2", "--coeffs", "1,x,2"}).code, cli::kUsage);
    EXPECT_EQ(run({"scan", "--catalog", "P2", "--box", "3:1"}).code, cli::kUsage);
    EXPECT_EQ(run({"pic", "--catalog", "P2", "--format", "yaml"}).code, cli::kUsage);

    std::string unpaired = temp_file("unpaired", R"({"rank": 2, "rays": [[1,0],[0,1],[-1,-1]], "max_cones": [[0,1],[1,2]]})");
    Outcome bad = run({"validate", "--fan", unpaired});
    EXPECT_EQ(bad.code, cli::kValidation);
    EXPECT_NE(bad.err.find("facet unpaired"), std::string::npos);
    std::string floaty = temp_file("floaty", R"({"rank": 1, "rays": [[1.5],[-1]], "max_cones": [[0],[1]]})");
    EXPECT_EQ(run({"validate", "--fan", floaty}).code, cli::kValidation);

    Outcome cap = run({"cohomology", "--catalog", "P2", "--coeffs", "6,0,0", "--cap", "3"});
    EXPECT_EQ(cap.code, cli::kComputation);
    EXPECT_NE(cap.err.find("cap of 3"), std::string::npos);
    EXPECT_EQ(run({"delta", "--catalog", "P1", "--delta-cap", "1"}).code, cli::kComputation);
    EXPECT_EQ(run({"family", "--catalog", "P2"}).code, cli::kComputation);
}

TEST(Cli, CatalogListing) {
    Outcome o = run({"catalog"});
    EXPECT_EQ(o.code, 0);
    EXPECT_NE(o.out.find("P1xP2"), std::string::npos);
    EXPECT_EQ(run({"--help"}).code, 0);
}

}  // namespace
}  // namespace htriv
