#include "htriv/homology.hpp"

#include "htriv/errors.hpp"

#include <algorithm>
#include <bit>
#include <future>
#include <numeric>

namespace htriv {

bool SimplicialComplex::contains(RayMask face) const {
    return std::find(faces.begin(), faces.end(), face) != faces.end();
}

int SimplicialComplex::dimension() const {
    int d = -1;
    for (RayMask f : faces) d = std::max(d, std::popcount(f) - 1);
    return d;
}

std::size_t BettiVector::operator()(int k) const {
    const auto idx = static_cast<std::size_t>(k + 1);
    return (k >= -1 && idx < ranks.size()) ? ranks[idx] : 0;
}

bool BettiVector::is_zero() const {
    return std::all_of(ranks.begin(), ranks.end(), [](std::size_t r) { return r == 0; });
}

SimplicialComplex supp(const StackyFan& fan, const IntVector& r) {
    if (r.size() != fan.num_rays()) throw PreconditionError("supp: vector length differs from ray count");
    RayMask nonneg = 0;
    for (std::size_t i = 0; i < r.size(); ++i)
        if (r[i] >= 0) nonneg |= RayMask{1} << i;
    SimplicialComplex cx;
    cx.num_vertices = fan.num_rays();
    for (RayMask f : fan.faces())
        if (mask_subset(f, nonneg)) cx.faces.push_back(f);
    return cx;
}

SimplicialComplex complex_CI(const StackyFan& fan, RayMask index_set) {
    IntVector r(fan.num_rays());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = mask_contains(index_set, i) ? 0 : -1;
    return supp(fan, r);
}

namespace {

// Rank over Q of a {-1,0,1} matrix given column-wise as sparse rows.
std::size_t boundary_rank(const std::vector<RayMask>& lower, const std::vector<RayMask>& upper) {
    if (lower.empty() || upper.empty()) return 0;
    RatMatrix d(lower.size(), upper.size());
    for (std::size_t c = 0; c < upper.size(); ++c) {
        int sign = 1;
        for (std::size_t v : mask_indices(upper[c])) {
            RayMask sub = upper[c] & ~(RayMask{1} << v);
            auto it = std::lower_bound(lower.begin(), lower.end(), sub);
            d(static_cast<std::size_t>(it - lower.begin()), c) = sign;
            sign = -sign;
        }
    }
    return rank(d);
}

}  // namespace

BettiVector reduced_betti(const SimplicialComplex& cx, std::size_t rank) {
    // by_size[k] holds the faces with k vertices (dimension k - 1), sorted.
    std::size_t top = rank;
    for (RayMask f : cx.faces) top = std::max<std::size_t>(top, static_cast<std::size_t>(std::popcount(f)));
    std::vector<std::vector<RayMask>> by_size(top + 2);
    for (RayMask f : cx.faces) by_size[static_cast<std::size_t>(std::popcount(f))].push_back(f);
    for (auto& v : by_size) std::sort(v.begin(), v.end());

    // bd[k] = rank of the boundary from faces of size k to size k - 1.
    std::vector<std::size_t> bd(top + 2, 0);
    for (std::size_t k = 1; k <= top; ++k) bd[k] = boundary_rank(by_size[k - 1], by_size[k]);

    BettiVector out;
    out.ranks.assign(std::max(rank, top) + 1, 0);
    for (std::size_t k = 0; k <= top; ++k) {
        // Faces of size k sit in homological degree k - 1.
        std::size_t dim = by_size[k].size();
        out.ranks[k] = dim - bd[k] - bd[k + 1];
    }
    out.ranks.resize(rank + 1);
    return out;
}

bool DeltaFamily::contains(RayMask index_set) const { return find(index_set) != nullptr; }

const DeltaMember* DeltaFamily::find(RayMask index_set) const {
    auto it = std::lower_bound(members.begin(), members.end(), index_set,
                               [](const DeltaMember& m, RayMask s) { return m.index_set < s; });
    return (it != members.end() && it->index_set == index_set) ? &*it : nullptr;
}

bool DeltaFamily::operator==(const DeltaFamily& o) const {
    if (num_rays != o.num_rays || members.size() != o.members.size()) return false;
    for (std::size_t i = 0; i < members.size(); ++i)
        if (members[i].index_set != o.members[i].index_set || !(members[i].betti == o.members[i].betti)) return false;
    return true;
}

DeltaFamily delta_set(const StackyFan& fan, std::size_t cap, unsigned threads) {
    const std::size_t n = fan.num_rays();
    if (n > cap) throw ComputationError("delta: " + std::to_string(n) + " rays exceed the subset cap of " +
                                        std::to_string(cap) + " (raise --delta-cap)");
    if (n >= 63) throw ComputationError("delta: too many rays for exhaustive subset enumeration");
    const RayMask total = RayMask{1} << n;
    auto scan = [&](RayMask lo, RayMask hi) {
        std::vector<DeltaMember> part;
        for (RayMask s = lo; s < hi; ++s) {
            BettiVector b = reduced_betti(complex_CI(fan, s), fan.rank());
            if (!b.is_zero()) part.push_back({s, std::move(b)});
        }
        return part;
    };

    DeltaFamily out;
    out.num_rays = n;
    threads = std::max(1U, threads);
    if (threads == 1 || total < 64) {
        out.members = scan(0, total);
        return out;
    }
    std::vector<std::future<std::vector<DeltaMember>>> parts;
    const RayMask chunk = (total + threads - 1) / threads;
    for (RayMask lo = 0; lo < total; lo += chunk)
        parts.push_back(std::async(std::launch::async, scan, lo, std::min(total, lo + chunk)));
    for (auto& p : parts) {
        auto part = p.get();
        out.members.insert(out.members.end(), std::make_move_iterator(part.begin()),
                           std::make_move_iterator(part.end()));
    }
    return out;
}

namespace {

// Connected components of the 1-skeleton of C_I (I nonempty).
std::size_t components(const StackyFan& fan, RayMask index_set) {
    auto verts = mask_indices(index_set);
    std::vector<std::size_t> parent(fan.num_rays());
    std::iota(parent.begin(), parent.end(), 0);
    auto root = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (RayMask f : fan.faces()) {
        if (std::popcount(f) != 2 || !mask_subset(f, index_set)) continue;
        auto e = mask_indices(f);
        parent[root(e[0])] = root(e[1]);
    }
    std::size_t count = 0;
    for (auto v : verts)
        if (root(v) == v) ++count;
    return count;
}

inline constexpr std::size_t kFastDeltaMaxRays = 28;

}  // namespace

DeltaFamily delta_fast_lowdim(const StackyFan& fan) {
    const std::size_t m = fan.rank();
    const std::size_t n = fan.num_rays();
    if (m != 2 && m != 3) throw PreconditionError("delta_fast_lowdim: rank must be 2 or 3");
    if (n > kFastDeltaMaxRays)
        throw ComputationError("delta: " + std::to_string(n) + " rays exceed the fast-path limit of " +
                               std::to_string(kFastDeltaMaxRays));
    const RayMask full = full_mask(n);
    DeltaFamily out;
    out.num_rays = n;
    for (RayMask s = 0; s <= full; ++s) {
        BettiVector b;
        b.ranks.assign(m + 1, 0);
        if (s == 0) {
            b.ranks[0] = 1;
        } else if (s == full) {
            b.ranks[m] = 1;
        } else {
            b.ranks[1] = components(fan, s) - 1;
            if (m == 3) b.ranks[2] = components(fan, full & ~s) - 1;
        }
        if (!b.is_zero()) out.members.push_back({s, std::move(b)});
        if (s == full) break;
    }
    return out;
}

DeltaFamily compute_delta(const StackyFan& fan, std::size_t cap, unsigned threads) {
    if (fan.num_rays() > cap && (fan.rank() == 2 || fan.rank() == 3)) return delta_fast_lowdim(fan);
    return delta_set(fan, cap, threads);
}

std::string format_index_set(RayMask mask) {
    std::string s = "{";
    bool first = true;
    for (auto i : mask_indices(mask)) {
        if (!first) s += ",";
        s += std::to_string(i + 1);
        first = false;
    }
    return s + "}";
}

}  // namespace htriv
