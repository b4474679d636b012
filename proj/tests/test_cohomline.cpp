#include "htriv/catalog.hpp"
#include "htriv/cohomline.hpp"
#include "htriv/errors.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

namespace htriv {
namespace {

using test::iv;
using test::q;

using H = std::vector<std::uint64_t>;

H cohom(const std::string& name, const IntVector& a) {
    const StackyFan& f = catalog_fan(name);
    return cohomology(f, delta_set(f), a).h;
}

bool trivial(const std::string& name, const IntVector& a) {
    const StackyFan& f = catalog_fan(name);
    return is_h_trivial(f, delta_set(f), a);
}

std::vector<std::vector<long>> free_parts(const std::vector<LineBundleClass>& classes) {
    std::vector<std::vector<long>> out;
    for (const auto& c : classes) {
        std::vector<long> v;
        for (const auto& x : c.canonical.free) v.push_back(x.get_si());
        out.push_back(v);
    }
    return out;
}

TEST(SignPolyhedron, FullSetAtZeroIsTheOrigin) {
    const StackyFan& f = catalog_fan("P2");
    LinearSystem s = sign_polyhedron(f, iv({0, 0, 0}), full_mask(3), Strictness::Weak);
    EXPECT_EQ(s.rows().size(), 3u);
    auto pts = integer_points(s);
    ASSERT_EQ(pts.status, LatticeStatus::Points);
    EXPECT_EQ(pts.points, (std::vector<IntVector>{iv({0, 0})}));
}

TEST(SignPolyhedron, EmptySetForMinusOnes) {
    const StackyFan& f = catalog_fan("P2");
    LinearSystem s = sign_polyhedron(f, iv({-1, -1, -1}), 0, Strictness::Weak);
    EXPECT_TRUE(s.satisfied_by(test::rv({0, 0})));
    auto pts = integer_points(s);
    ASSERT_EQ(pts.status, LatticeStatus::Points);
    EXPECT_EQ(pts.points, (std::vector<IntVector>{iv({0, 0})}));
}

TEST(SignPolyhedron, NonNegativeCoefficientsAdmitZero) {
    for (const auto& e : catalog()) {
        IntVector a(e.fan.num_rays());
        for (std::size_t i = 0; i < a.size(); ++i) a[i] = static_cast<long>(i % 3);
        LinearSystem s = sign_polyhedron(e.fan, a, full_mask(a.size()), Strictness::Weak);
        EXPECT_TRUE(s.satisfied_by(RatVector(e.fan.rank()))) << e.name;
    }
}

TEST(SignPolyhedron, StrictRows) {
    LinearSystem s = sign_polyhedron(catalog_fan("P2"), iv({1, 0, 0}), indices_mask({0}), Strictness::Strict);
    for (const auto& r : s.rows()) EXPECT_EQ(r.rel, Relation::Gt);
    EXPECT_EQ(s.rows()[0].rhs, -1);
    EXPECT_EQ(s.rows()[1].rhs, 0);
}

TEST(ForbiddenConeTest, VertexAndGenerators) {
    ForbiddenCone fc = forbidden_cone(catalog_fan("P1xP1"), indices_mask({0, 1}));
    EXPECT_EQ(fc.vertex, iv({0, 0, -1, -1}));
    ASSERT_EQ(fc.generators.size(), 4u);
    EXPECT_EQ(fc.generators[0], iv({1, 0, 0, 0}));
    EXPECT_EQ(fc.generators[3], iv({0, 0, 0, -1}));
}

TEST(ForbiddenConeTest, ForbiddenSetMembersLieInTheCone) {
    std::mt19937_64 rng(59);
    std::uniform_int_distribution<long> d(-3, 3);
    for (const auto& e : catalog()) {
        const StackyFan& f = e.fan;
        DeltaFamily delta = delta_set(f);
        for (int t = 0; t < 10; ++t) {
            IntVector a(f.num_rays());
            for (auto& x : a) x = d(rng);
            for (const auto& m : delta.members) {
                auto pts = integer_points(sign_polyhedron(f, a, m.index_set, Strictness::Weak));
                if (pts.status != LatticeStatus::Points) continue;
                ForbiddenCone fc = forbidden_cone(f, m.index_set);
                // r = a + (f.v_i) is a representative; r - q_I must have
                // non-negative coordinates along the generators.
                IntVector r = a;
                IntVector img = character_image(f, pts.points.front());
                for (std::size_t i = 0; i < r.size(); ++i) {
                    r[i] += img[i];
                    Int along = (r[i] - fc.vertex[i]) * fc.generators[i][i];
                    EXPECT_GE(along, 0) << e.name;
                }
            }
        }
    }
}

TEST(Cohomology, P2Examples) {
    EXPECT_EQ(cohom("P2", iv({1, 0, 0})), (H{3, 0, 0}));
    EXPECT_EQ(cohom("P2", iv({-3, 0, 0})), (H{0, 0, 1}));
    EXPECT_EQ(cohom("P2", iv({0, -1, -2})), (H{0, 0, 1}));
    EXPECT_EQ(cohom("P2", iv({2, 0, 0})), (H{6, 0, 0}));
    EXPECT_EQ(cohom("P2", iv({0, 0, -5})), (H{0, 0, 6}));
}

TEST(Cohomology, P1MinusTwo) { EXPECT_EQ(cohom("P1", iv({-2, 0})), (H{0, 1})); }

TEST(Cohomology, P1xP1MiddleCohomology) {
    // O(2,-2): h^1 = 3 * 1.
    EXPECT_EQ(cohom("P1xP1", iv({2, 0, -2, 0})), (H{0, 3, 0}));
}

TEST(Cohomology, MatchesBruteForceSum) {
    std::mt19937_64 rng(61);
    std::uniform_int_distribution<long> d(-2, 2);
    for (const auto& e : catalog()) {
        const StackyFan& f = e.fan;
        DeltaFamily delta = delta_set(f);
        const long radius = f.rank() == 3 ? 6 : 10;
        for (int t = 0; t < 6; ++t) {
            IntVector a(f.num_rays());
            for (auto& x : a) x = d(rng);
            EXPECT_EQ(cohomology(f, delta, a).h, test::brute_cohomology(f, a, radius)) << e.name;
        }
    }
}

TEST(Cohomology, StructureSheaf) {
    for (const auto& e : catalog()) {
        H expected(e.fan.rank() + 1, 0);
        expected[0] = 1;
        EXPECT_EQ(cohomology(e.fan, delta_set(e.fan), IntVector(e.fan.num_rays())).h, expected) << e.name;
    }
}

TEST(Cohomology, RepresentativeInvariance) {
    std::mt19937_64 rng(67);
    std::uniform_int_distribution<long> d(-3, 3);
    for (const auto& e : catalog()) {
        const StackyFan& f = e.fan;
        DeltaFamily delta = delta_set(f);
        for (int t = 0; t < 10; ++t) {
            IntVector a(f.num_rays()), w(f.rank());
            for (auto& x : a) x = d(rng);
            for (auto& x : w) x = d(rng);
            IntVector b = a;
            IntVector img = character_image(f, w);
            for (std::size_t i = 0; i < b.size(); ++i) b[i] += img[i];
            EXPECT_EQ(cohomology(f, delta, a), cohomology(f, delta, b)) << e.name;
        }
    }
}

TEST(Cohomology, TopDegreeComesFromTheEmptySet) {
    std::mt19937_64 rng(71);
    std::uniform_int_distribution<long> d(-4, 2);
    for (const auto& e : catalog()) {
        const StackyFan& f = e.fan;
        DeltaFamily delta = delta_set(f);
        for (int t = 0; t < 15; ++t) {
            IntVector a(f.num_rays());
            for (auto& x : a) x = d(rng);
            const bool top = cohomology(f, delta, a).h.back() > 0;
            const bool point = first_integer_point(sign_polyhedron(f, a, 0, Strictness::Weak)).status ==
                               LatticeStatus::Points;
            EXPECT_EQ(top, point) << e.name;
        }
    }
}

TEST(Cohomology, CapAndProperness) {
    const StackyFan& f = catalog_fan("P2");
    try {
        cohomology(f, delta_set(f), iv({6, 0, 0}), 5);
        FAIL();
    } catch (const ComputationError& e) {
        EXPECT_NE(std::string(e.what()).find("cap of 5"), std::string::npos);
    }
    // A sign pattern outside Delta whose polyhedron is an unbounded strip.
    const StackyFan& g = catalog_fan("P1xP1");
    DeltaFamily fake{4, {{indices_mask({0, 2, 3}), BettiVector{{0, 1, 0}}}}};
    try {
        cohomology(g, fake, iv({0, 0, 0, 0}));
        FAIL();
    } catch (const ComputationError& e) {
        EXPECT_NE(std::string(e.what()).find("infinite-dimensional contribution"), std::string::npos);
    }
    EXPECT_THROW(cohomology(f, delta_set(f), iv({0, 0})), PreconditionError);
}

TEST(HTrivial, Examples) {
    EXPECT_TRUE(trivial("P2", iv({-1, 0, 0})));
    EXPECT_FALSE(trivial("P2", iv({0, 0, 0})));
    EXPECT_TRUE(trivial("P1xP2", iv({4, 0, -1, 0, 0})));
}

TEST(HTrivial, ReportsViolatingSet) {
    const StackyFan& f = catalog_fan("P2");
    HTrivialResult r = h_triviality(f, delta_set(f), iv({0, 0, 0}));
    EXPECT_FALSE(r.h_trivial);
    ASSERT_TRUE(r.violating.has_value());
    EXPECT_EQ(*r.violating, full_mask(3));
    EXPECT_EQ(r.witness, iv({0, 0}));
}

TEST(HTrivial, AgreesWithCohomology) {
    std::mt19937_64 rng(73);
    std::uniform_int_distribution<long> d(-3, 2);
    for (const auto& e : catalog()) {
        const StackyFan& f = e.fan;
        DeltaFamily delta = delta_set(f);
        for (int t = 0; t < 25; ++t) {
            IntVector a(f.num_rays());
            for (auto& x : a) x = d(rng);
            EXPECT_EQ(is_h_trivial(f, delta, a), cohomology(f, delta, a).is_zero()) << e.name;
        }
    }
}

TEST(Interior, Examples) {
    const StackyFan& p2 = catalog_fan("P2");
    EXPECT_TRUE(in_interior_ZI(p2, iv({1, 0, 0}), full_mask(3)));
    EXPECT_TRUE(sign_polyhedron(p2, iv({1, 0, 0}), full_mask(3), Strictness::Strict)
                    .satisfied_by(RatVector{q(-1, 2), q(1, 4)}));
    EXPECT_FALSE(in_interior_ZI(p2, iv({0, 0, 0}), full_mask(3)));
    for (const auto& e : catalog()) EXPECT_FALSE(in_interior_ZI(e.fan, IntVector(e.fan.num_rays()), 0)) << e.name;
}

TEST(Interior, OutsideAllExamples) {
    const StackyFan& p11 = catalog_fan("P1xP1");
    EXPECT_TRUE(outside_all_interiors(p11, delta_set(p11), iv({0, 0, -1, 0})));
    const StackyFan& p2 = catalog_fan("P2");
    EXPECT_FALSE(outside_all_interiors(p2, delta_set(p2), iv({1, 0, 0})));
    EXPECT_FALSE(outside_all_interiors(p2, delta_set(p2), iv({-5, 0, 0})));
}

TEST(Interior, HTrivialClassCanLieInAnInterior) {
    // O(-1) on P2 has the strict-negative representative at f = (1/2, -1/4).
    const StackyFan& p2 = catalog_fan("P2");
    EXPECT_TRUE(is_h_trivial(p2, delta_set(p2), iv({-1, 0, 0})));
    EXPECT_TRUE(in_interior_ZI(p2, iv({-1, 0, 0}), 0));
    EXPECT_TRUE(sign_polyhedron(p2, iv({-1, 0, 0}), 0, Strictness::Strict).satisfied_by(RatVector{q(1, 2), q(-1, 4)}));
}

TEST(Scan, ProjectivePlane) {
    const StackyFan& f = catalog_fan("P2");
    auto got = scan_h_trivial(f, PicStructure(f), delta_set(f), {{-12, 12}});
    EXPECT_EQ(free_parts(got), (std::vector<std::vector<long>>{{-2}, {-1}}));
}

TEST(Scan, ProjectiveThreeSpace) {
    const StackyFan& f = catalog_fan("P3");
    auto got = scan_h_trivial(f, PicStructure(f), delta_set(f), {{-12, 12}});
    EXPECT_EQ(free_parts(got), (std::vector<std::vector<long>>{{-3}, {-2}, {-1}}));
}

TEST(Scan, P1xP2ContainsTheMinusOneColumn) {
    const StackyFan& f = catalog_fan("P1xP2");
    auto got = free_parts(scan_h_trivial(f, PicStructure(f), delta_set(f), {{-6, 6}, {-6, 6}}));
    std::set<std::vector<long>> s(got.begin(), got.end());
    for (long a = -6; a <= 6; ++a) EXPECT_TRUE(s.count({a, -1})) << a;
    for (long a = -6; a <= 6; ++a) EXPECT_TRUE(s.count({a, -2})) << a;
    EXPECT_TRUE(s.count({-1, 0}));
    EXPECT_FALSE(s.count({0, 0}));
    EXPECT_TRUE(std::is_sorted(got.begin(), got.end()));
}

TEST(Scan, TorsionIsExhaustedAndThreadsAgree) {
    StackyFan f(1, {iv({2}), iv({-2})}, {{0}, {1}});
    PicStructure pic(f);
    auto all = classes_in_box(pic, {{-3, 3}});
    EXPECT_EQ(all.size(), 14u);
    std::set<CanonicalClass> distinct;
    for (const auto& c : all) distinct.insert(c.canonical);
    EXPECT_EQ(distinct.size(), 14u);
    DeltaFamily delta = delta_set(f);
    auto serial = scan_h_trivial(f, pic, delta, {{-3, 3}});
    auto threaded = scan_h_trivial(f, pic, delta, {{-3, 3}}, 4);
    ASSERT_EQ(serial.size(), threaded.size());
    for (std::size_t i = 0; i < serial.size(); ++i) EXPECT_EQ(serial[i].canonical, threaded[i].canonical);
    for (const auto& c : all)
        EXPECT_EQ(is_h_trivial(f, delta, c.raw),
                  test::brute_cohomology(f, c.raw, 12) == std::vector<std::uint64_t>(2, 0));
    EXPECT_THROW(classes_in_box(pic, {{0, 1}, {0, 1}}), PreconditionError);
    EXPECT_THROW(classes_in_box(pic, {{1, 0}}), PreconditionError);
}

}  // namespace
}  // namespace htriv
