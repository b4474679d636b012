#pragma once

#include "htriv/catalog.hpp"
#include "htriv/cohomline.hpp"
#include "htriv/homology.hpp"

#include <functional>
#include <initializer_list>
#include <vector>

namespace htriv::test {

inline IntVector iv(std::initializer_list<long> xs) {
    IntVector v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

inline RatVector rv(std::initializer_list<long> xs) {
    RatVector v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

inline Rat q(long num, long den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

/// Calls fn on every integer vector in [-radius, radius]^dim.
inline void for_each_in_cube(std::size_t dim, long radius, const std::function<void(const std::vector<long>&)>& fn) {
    std::vector<long> x(dim, -radius);
    for (;;) {
        fn(x);
        std::size_t k = dim;
        while (k > 0 && x[k - 1] == radius) x[--k] = -radius;
        if (k == 0) return;
        ++x[k - 1];
    }
}

/// Cohomology straight from the defining sum over characters f in a cube,
/// with Supp(r_f) built and measured for each f. No Delta, no polyhedra.
inline std::vector<std::uint64_t> brute_cohomology(const StackyFan& fan, const IntVector& a, long radius) {
    const std::size_t m = fan.rank();
    std::vector<std::uint64_t> h(m + 1, 0);
    for_each_in_cube(m, radius, [&](const std::vector<long>& f) {
        IntVector r = a;
        for (std::size_t i = 0; i < fan.num_rays(); ++i)
            for (std::size_t c = 0; c < m; ++c) r[i] += fan.ray(i)[c] * f[c];
        BettiVector b = reduced_betti(supp(fan, r), m);
        for (std::size_t j = 0; j <= m; ++j) h[j] += b(static_cast<int>(m) - static_cast<int>(j) - 1);
    });
    return h;
}

/// a - b in the image of M, searched over characters in a cube.
inline bool brute_classes_equal(const StackyFan& fan, const IntVector& a, const IntVector& b, long radius) {
    bool found = false;
    for_each_in_cube(fan.rank(), radius, [&](const std::vector<long>& w) {
        if (found) return;
        for (std::size_t i = 0; i < fan.num_rays(); ++i) {
            Int s = 0;
            for (std::size_t c = 0; c < fan.rank(); ++c) s += fan.ray(i)[c] * w[c];
            if (a[i] - b[i] != s) return;
        }
        found = true;
    });
    return found;
}

}  // namespace htriv::test
