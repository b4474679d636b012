#include "htriv/catalog.hpp"

#include "htriv/errors.hpp"

namespace htriv {

namespace {

IntVector v(std::initializer_list<long> xs) {
    IntVector out;
    for (long x : xs) out.emplace_back(x);
    return out;
}

using Cones = std::vector<std::vector<std::size_t>>;

std::vector<CatalogEntry> build() {
    std::vector<CatalogEntry> out;
    auto add = [&](std::string name, std::string desc, StackyFan fan) {
        out.push_back({std::move(name), std::move(desc), std::move(fan)});
    };

    add("P1", "projective line", StackyFan(1, {v({1}), v({-1})}, Cones{{0}, {1}}));
    add("P1-stacky", "rank-1 stacky fan with rays (2), (-1)", StackyFan(1, {v({2}), v({-1})}, Cones{{0}, {1}}));

    add("P2", "projective plane", cyclic_fan_2d({v({1, 0}), v({0, 1}), v({-1, -1})}));
    add("P2-stacky", "P2 fan with generators (2,0), (0,3), (-1,-1)",
        cyclic_fan_2d({v({2, 0}), v({0, 3}), v({-1, -1})}));
    add("P112", "weighted projective plane P(1,1,2)", cyclic_fan_2d({v({1, 0}), v({0, 1}), v({-1, -2})}));
    add("F1", "Hirzebruch surface F1", cyclic_fan_2d({v({1, 0}), v({0, 1}), v({-1, 1}), v({0, -1})}));
    add("F2", "Hirzebruch surface F2", cyclic_fan_2d({v({1, 0}), v({0, 1}), v({-1, 2}), v({0, -1})}));
    add("P1xP1", "product of two projective lines",
        StackyFan(2, {v({1, 0}), v({-1, 0}), v({0, 1}), v({0, -1})}, Cones{{0, 2}, {1, 2}, {1, 3}, {0, 3}}));
    add("P1xP1-stacky", "P1xP1 fan with generators (2,0), (-1,0), (0,1), (0,-3)",
        StackyFan(2, {v({2, 0}), v({-1, 0}), v({0, 1}), v({0, -3})}, Cones{{0, 2}, {1, 2}, {1, 3}, {0, 3}}));
    add("pentagon", "2D fan with five rays and no collinear pair",
        cyclic_fan_2d({v({1, 0}), v({1, 2}), v({-1, 1}), v({-2, -1}), v({1, -2})}));
    add("pentagon-collinear", "blow-up of P1xP1 at a fixed point (two collinear pairs)",
        cyclic_fan_2d({v({1, 0}), v({1, 1}), v({0, 1}), v({-1, 0}), v({0, -1})}));
    add("hexagon", "del Pezzo surface of degree 6",
        cyclic_fan_2d({v({1, 0}), v({1, 1}), v({0, 1}), v({-1, 0}), v({-1, -1}), v({0, -1})}));

    const Cones simplex3{{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
    add("P3", "projective 3-space", StackyFan(3, {v({1, 0, 0}), v({0, 1, 0}), v({0, 0, 1}), v({-1, -1, -1})}, simplex3));
    add("P3-stacky", "P3 fan with generator (2,0,0) on the first ray",
        StackyFan(3, {v({2, 0, 0}), v({0, 1, 0}), v({0, 0, 1}), v({-1, -1, -1})}, simplex3));
    add("P1112", "weighted projective space P(1,1,1,2)",
        StackyFan(3, {v({1, 0, 0}), v({0, 1, 0}), v({0, 0, 1}), v({-1, -1, -2})}, simplex3));
    add("P1xP2", "product of P1 and P2",
        StackyFan(3, {v({1, 0, 0}), v({-1, 0, 0}), v({0, 1, 0}), v({0, 0, 1}), v({0, -1, -1})},
                  Cones{{0, 2, 3}, {0, 3, 4}, {0, 2, 4}, {1, 2, 3}, {1, 3, 4}, {1, 2, 4}}));
    add("P1xP1xP1", "product of three projective lines",
        StackyFan(3, {v({1, 0, 0}), v({-1, 0, 0}), v({0, 1, 0}), v({0, -1, 0}), v({0, 0, 1}), v({0, 0, -1})},
                  Cones{{0, 2, 4}, {0, 2, 5}, {0, 3, 4}, {0, 3, 5}, {1, 2, 4}, {1, 2, 5}, {1, 3, 4}, {1, 3, 5}}));
    const Cones star_blowup{{0, 1, 4}, {1, 2, 4}, {0, 2, 4}, {0, 1, 3}, {1, 2, 3}, {0, 2, 3}};
    add("BlP3", "blow-up of P3 at a fixed point (one collinear pair)",
        StackyFan(3, {v({1, 0, 0}), v({0, 1, 0}), v({0, 0, 1}), v({-1, -1, -1}), v({1, 1, 1})}, star_blowup));
    add("P3-wblowup", "P3 with the cone (e1,e2,e3) subdivided by (1,1,2); no collinear pair",
        StackyFan(3, {v({1, 0, 0}), v({0, 1, 0}), v({0, 0, 1}), v({-1, -1, -1}), v({1, 1, 2})}, star_blowup));
    return out;
}

}  // namespace

StackyFan cyclic_fan_2d(const std::vector<IntVector>& rays) {
    Cones cones;
    for (std::size_t i = 0; i < rays.size(); ++i) cones.push_back({i, (i + 1) % rays.size()});
    return StackyFan(2, rays, std::move(cones));
}

const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> entries = build();
    return entries;
}

const StackyFan& catalog_fan(const std::string& name) {
    for (const auto& e : catalog())
        if (e.name == name) return e.fan;
    throw PreconditionError("unknown catalog fan \"" + name + "\"");
}

}  // namespace htriv
