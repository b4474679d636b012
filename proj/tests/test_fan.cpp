#include "htriv/catalog.hpp"
#include "htriv/errors.hpp"
#include "htriv/fan.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

namespace htriv {
namespace {

using test::iv;

const char* kP2 = R"({"rank": 2, "rays": [[1,0],[0,1],[-1,-1]], "max_cones": [[0,1],[1,2],[2,0]]})";

std::string error_of(const std::string& text) {
    try {
        load_fan(text);
    } catch (const Error& e) {
        return e.what();
    }
    return "";
}

TEST(LoadFan, P2) {
    StackyFan f = load_fan(kP2);
    EXPECT_EQ(f.rank(), 2u);
    EXPECT_EQ(f.num_rays(), 3u);
    EXPECT_EQ(f.ray(2), iv({-1, -1}));
    EXPECT_EQ(f.max_cones().size(), 3u);
}

TEST(LoadFan, MissingConeLeavesFacetUnpaired) {
    const std::string text = R"({"rank": 2, "rays": [[1,0],[0,1],[-1,-1]], "max_cones": [[0,1],[1,2]]})";
    EXPECT_THROW(load_fan(text), ValidationError);
    EXPECT_NE(error_of(text).find("facet unpaired"), std::string::npos);
}

TEST(LoadFan, RankOneStacky) {
    StackyFan f = load_fan(R"({"rank": 1, "rays": [[2],[-1]], "max_cones": [[0],[1]]})");
    EXPECT_EQ(f.num_rays(), 2u);
    EXPECT_EQ(f.ray(0), iv({2}));
}

TEST(LoadFan, RejectsFloatsAndMissingFields) {
    const std::string floaty = R"({"rank": 2, "rays": [[1.0,0],[0,1],[-1,-1]], "max_cones": [[0,1],[1,2],[2,0]]})";
    EXPECT_THROW(load_fan(floaty), ParseError);
    EXPECT_NE(error_of(floaty).find("float"), std::string::npos);
    EXPECT_THROW(load_fan(R"({"rank": 2, "rays": [[1,0]]})"), ParseError);
    EXPECT_THROW(load_fan("{not json"), ParseError);
    EXPECT_THROW(load_fan(R"({"rank": 2, "rays": 3, "max_cones": []})"), ParseError);
    EXPECT_THROW(load_fan(R"({"rank": 1, "rays": [[1],[-1]], "max_cones": [[-1],[1]]})"), ParseError);
}

TEST(Validate, NamesBrokenInvariants) {
    EXPECT_NE(error_of(R"({"rank": 1, "rays": [[1],[2],[-1]], "max_cones": [[0],[2]]})").find("same ray"),
              std::string::npos);
    EXPECT_NE(error_of(R"({"rank": 2, "rays": [[1,0],[0,0],[-1,-1]], "max_cones": [[0,2]]})").find("zero"),
              std::string::npos);
    EXPECT_NE(error_of(R"({"rank": 2, "rays": [[1,0],[-1,0],[0,1]], "max_cones": [[0,1],[1,2],[2,0]]})")
                  .find("not simplicial"),
              std::string::npos);
    EXPECT_NE(error_of(R"({"rank": 2, "rays": [[1,0],[0,1],[-1,-1]], "max_cones": [[0,1],[1,2],[2,0],[0,1]]})")
                  .find("duplicate"),
              std::string::npos);
    EXPECT_NE(error_of(R"({"rank": 2, "rays": [[1,0],[0,1],[-1,-1]], "max_cones": [[0,1,2]]})").find("rank-many"),
              std::string::npos);
    EXPECT_NE(error_of(R"({"rank": 2, "rays": [[1,0],[0,1],[-1,-1],[1,1]], "max_cones": [[0,1],[1,2],[2,0]]})")
                  .find("no maximal cone"),
              std::string::npos);
    // Two triangles folded onto the same side of a shared facet.
    EXPECT_NE(error_of(R"({"rank": 2, "rays": [[1,0],[0,1],[1,2],[-1,-1]],
                          "max_cones": [[0,1],[0,2],[1,3],[2,3]]})")
                  .find("overlap"),
              std::string::npos);
}

TEST(Validate, AcceptsCatalogAndRejectsConeDeletions) {
    for (const auto& e : catalog()) {
        const StackyFan& f = e.fan;
        for (std::size_t k = 0; k < f.max_cones().size(); ++k) {
            auto cones = f.max_cones();
            cones.erase(cones.begin() + static_cast<long>(k));
            EXPECT_THROW(StackyFan(f.rank(), f.rays(), cones), ValidationError) << e.name << " minus cone " << k;
        }
    }
}

TEST(Fingerprint, StableAndOrderInsensitiveForCones) {
    StackyFan a = load_fan(kP2);
    StackyFan b = load_fan(R"({"rank": 2, "rays": [[1,0],[0,1],[-1,-1]], "max_cones": [[2,0],[1,0],[2,1]]})");
    EXPECT_EQ(a.fingerprint(), b.fingerprint());
    EXPECT_EQ(a.fingerprint().size(), 16u);
    EXPECT_NE(a.fingerprint(), catalog_fan("P112").fingerprint());
}

using Pairs = std::vector<std::pair<std::size_t, std::size_t>>;

TEST(CollinearPairs, Examples) {
    EXPECT_TRUE(collinear_pairs(catalog_fan("P2")).empty());
    EXPECT_EQ(collinear_pairs(catalog_fan("P1xP1")), (Pairs{{0, 1}, {2, 3}}));
    EXPECT_EQ(collinear_pairs(catalog_fan("P1xP2")), (Pairs{{0, 1}}));
    EXPECT_EQ(collinear_pairs(catalog_fan("P1xP1-stacky")), (Pairs{{0, 1}, {2, 3}}));
    EXPECT_EQ(collinear_pairs(catalog_fan("BlP3")), (Pairs{{3, 4}}));
}

TEST(CollinearPairs, InvariantUnderRelabeling) {
    std::mt19937_64 rng(5);
    for (const auto& e : catalog()) {
        const StackyFan& f = e.fan;
        std::vector<std::size_t> perm(f.num_rays());
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<IntVector> rays(f.num_rays());
        for (std::size_t i = 0; i < perm.size(); ++i) rays[perm[i]] = f.ray(i);
        auto cones = f.max_cones();
        for (auto& c : cones)
            for (auto& i : c) i = perm[i];
        StackyFan g(f.rank(), rays, cones);
        std::set<std::pair<std::size_t, std::size_t>> expected;
        for (auto [i, j] : collinear_pairs(f)) expected.insert(std::minmax(perm[i], perm[j]));
        auto got = collinear_pairs(g);
        std::set<std::pair<std::size_t, std::size_t>> got_set(got.begin(), got.end());
        EXPECT_EQ(got_set, expected) << e.name;
    }
}

TEST(Neighborhood, P1xP2AtE2) {
    RayNeighborhood nb = neighborhood(catalog_fan("P1xP2"), 2);
    EXPECT_EQ(nb.members, (std::vector<std::size_t>{0, 1, 3, 4}));
    ASSERT_TRUE(nb.cycle.has_value());
    EXPECT_EQ(*nb.cycle, (std::vector<std::size_t>{0, 3, 1, 4}));
}

TEST(Neighborhood, LowRank) {
    EXPECT_EQ(neighborhood(catalog_fan("P2"), 0).members, (std::vector<std::size_t>{1, 2}));
    EXPECT_FALSE(neighborhood(catalog_fan("P2"), 0).cycle.has_value());
    EXPECT_TRUE(neighborhood(catalog_fan("P1"), 0).members.empty());
    EXPECT_THROW(neighborhood(catalog_fan("P1"), 2), PreconditionError);
}

TEST(Neighborhood, CyclesAreClosedWalksIn3D) {
    for (const auto& e : catalog()) {
        const StackyFan& f = e.fan;
        if (f.rank() != 3) continue;
        for (std::size_t s = 0; s < f.num_rays(); ++s) {
            RayNeighborhood nb = neighborhood(f, s);
            ASSERT_TRUE(nb.cycle.has_value());
            auto sorted = *nb.cycle;
            std::sort(sorted.begin(), sorted.end());
            EXPECT_EQ(sorted, nb.members) << e.name << " ray " << s;
            const auto& c = *nb.cycle;
            for (std::size_t k = 0; k < c.size(); ++k) {
                RayMask tri = (RayMask{1} << s) | (RayMask{1} << c[k]) | (RayMask{1} << c[(k + 1) % c.size()]);
                EXPECT_TRUE(std::find(f.cone_masks().begin(), f.cone_masks().end(), tri) != f.cone_masks().end())
                    << e.name << " ray " << s;
            }
        }
    }
}

TEST(Faces, IncludeEmptyAndAreDownwardClosed) {
    for (const auto& e : catalog()) {
        const auto& faces = e.fan.faces();
        ASSERT_FALSE(faces.empty());
        EXPECT_EQ(faces.front(), 0u);
        for (RayMask f : faces)
            for (std::size_t i : mask_indices(f)) EXPECT_TRUE(e.fan.is_face(f & ~(RayMask{1} << i)));
    }
}

}  // namespace
}  // namespace htriv
