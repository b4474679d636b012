#include "htriv/fan.hpp"

#include "htriv/errors.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <map>
#include <random>
#include <set>
#include <sstream>

namespace htriv {

RayMask full_mask(std::size_t n) { return n >= 64 ? ~RayMask{0} : ((RayMask{1} << n) - 1); }

std::vector<std::size_t> mask_indices(RayMask mask) {
    std::vector<std::size_t> out;
    while (mask != 0) {
        out.push_back(static_cast<std::size_t>(std::countr_zero(mask)));
        mask &= mask - 1;
    }
    return out;
}

RayMask indices_mask(const std::vector<std::size_t>& indices) {
    RayMask m = 0;
    for (auto i : indices) m |= RayMask{1} << i;
    return m;
}

namespace {

std::string ray_label(std::size_t i) { return "ray " + std::to_string(i); }

// Positive multiples of each other (same ray of the fan).
bool same_direction(const IntVector& a, const IntVector& b) {
    // a and b parallel: all 2x2 minors vanish; same direction: some
    // coordinate has matching nonzero signs.
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j)
            if (a[i] * b[j] != a[j] * b[i]) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0) return sgn(a[i]) == sgn(b[i]);
    return false;
}

bool parallel(const IntVector& a, const IntVector& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j)
            if (a[i] * b[j] != a[j] * b[i]) return false;
    return true;
}

}  // namespace

StackyFan::StackyFan(std::size_t rank, std::vector<IntVector> rays, std::vector<std::vector<std::size_t>> max_cones,
                     const ValidationOptions& options)
    : rank_(rank), rays_(std::move(rays)), cones_(std::move(max_cones)) {
    validate(options);
}

void StackyFan::validate(const ValidationOptions& options) {
    const std::size_t m = rank_;
    const std::size_t n = rays_.size();
    if (m == 0) throw ValidationError("rank must be positive");
    if (n == 0) throw ValidationError("fan has no rays");
    if (n > kMaxRays) throw ValidationError("too many rays: at most " + std::to_string(kMaxRays) + " supported");

    for (std::size_t i = 0; i < n; ++i) {
        if (rays_[i].size() != m) throw ValidationError(ray_label(i) + " has length different from rank");
        if (std::all_of(rays_[i].begin(), rays_[i].end(), [](const Int& x) { return x == 0; }))
            throw ValidationError(ray_label(i) + " is zero");
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (same_direction(rays_[i], rays_[j]))
                throw ValidationError("rays " + std::to_string(i) + " and " + std::to_string(j) +
                                      " lie on the same ray");

    if (cones_.empty()) throw ValidationError("fan has no maximal cones");
    std::set<RayMask> seen_cones;
    std::vector<bool> used(n, false);
    cone_masks_.clear();
    cone_inverse_.clear();
    for (std::size_t k = 0; k < cones_.size(); ++k) {
        auto& cone = cones_[k];
        const std::string label = "cone " + std::to_string(k);
        std::sort(cone.begin(), cone.end());
        if (cone.size() != m) throw ValidationError(label + " does not have exactly rank-many rays");
        for (std::size_t idx : cone)
            if (idx >= n) throw ValidationError(label + " references a missing ray");
        if (std::adjacent_find(cone.begin(), cone.end()) != cone.end())
            throw ValidationError(label + " repeats a ray");
        RayMask mask = indices_mask(cone);
        if (!seen_cones.insert(mask).second) throw ValidationError(label + " is a duplicate cone");
        IntMatrix b(m, m);
        for (std::size_t r = 0; r < m; ++r)
            for (std::size_t c = 0; c < m; ++c) b(r, c) = rays_[cone[r]][c];
        if (determinant(b) == 0) throw ValidationError(label + " is not simplicial (rays linearly dependent)");
        // Inverse through unit right-hand sides.
        RatMatrix br = to_rational(b);
        RatMatrix inv(m, m);
        for (std::size_t c = 0; c < m; ++c) {
            RatVector e(m);
            e[c] = 1;
            RatVector col = *solve_square(br, e);
            for (std::size_t r = 0; r < m; ++r) inv(r, c) = col[r];
        }
        cone_masks_.push_back(mask);
        cone_inverse_.push_back(std::move(inv));
        for (std::size_t idx : cone) used[idx] = true;
    }
    for (std::size_t i = 0; i < n; ++i)
        if (!used[i]) throw ValidationError(ray_label(i) + " lies in no maximal cone");

    // Facet pairing with opposite sides.
    std::map<RayMask, std::vector<std::pair<std::size_t, std::size_t>>> facets;  // facet -> (cone, opposite ray)
    for (std::size_t k = 0; k < cones_.size(); ++k)
        for (std::size_t idx : cones_[k]) facets[cone_masks_[k] & ~(RayMask{1} << idx)].emplace_back(k, idx);
    for (const auto& [facet, owners] : facets) {
        std::string label = "facet {";
        for (std::size_t i : mask_indices(facet)) label += (label.back() == '{' ? "" : ",") + std::to_string(i);
        label += "}";
        if (owners.size() == 1) throw ValidationError("facet unpaired: " + label + " lies in one maximal cone");
        if (owners.size() > 2) throw ValidationError("facet shared by more than two maximal cones: " + label);
        auto idx = mask_indices(facet);
        RatMatrix fm(idx.size(), m);
        for (std::size_t r = 0; r < idx.size(); ++r)
            for (std::size_t c = 0; c < m; ++c) fm(r, c) = rays_[idx[r]][c];
        auto normal = rational_kernel(fm);
        // Independence of the cone rays makes the kernel a line.
        const RatVector& nv = normal.front();
        Rat sp = dot(nv, to_rational(rays_[owners[0].second]));
        Rat sq = dot(nv, to_rational(rays_[owners[1].second]));
        if (sgn(sp) * sgn(sq) >= 0)
            throw ValidationError("cones " + std::to_string(owners[0].first) + " and " +
                                  std::to_string(owners[1].first) + " overlap across " + label);
    }

    // Deterministic pseudo-random directions must each land in some cone.
    std::mt19937_64 rng(options.seed);
    for (unsigned d = 0; d < options.coverage_directions; ++d) {
        RatVector dir(m);
        bool nonzero = false;
        for (std::size_t c = 0; c < m; ++c) {
            long v = static_cast<long>(rng() % 2001) - 1000;
            dir[c] = v;
            nonzero = nonzero || v != 0;
        }
        if (!nonzero) dir[0] = 1;
        bool covered = false;
        for (std::size_t k = 0; k < cones_.size() && !covered; ++k) {
            // lambda = B^{-T} d expresses d in the cone's rays.
            const RatMatrix& inv = cone_inverse_[k];
            bool ok = true;
            for (std::size_t r = 0; r < m && ok; ++r) {
                Rat lambda = 0;
                for (std::size_t c = 0; c < m; ++c) lambda += inv(c, r) * dir[c];
                ok = lambda >= 0;
            }
            covered = ok;
        }
        if (!covered) throw ValidationError("fan is not complete: a coverage direction lies in no maximal cone");
    }

    std::set<RayMask> faces;
    for (RayMask cone : cone_masks_) {
        // All submasks of the cone, including 0.
        for (RayMask sub = cone;; sub = (sub - 1) & cone) {
            faces.insert(sub);
            if (sub == 0) break;
        }
    }
    faces_.assign(faces.begin(), faces.end());
    std::stable_sort(faces_.begin(), faces_.end(),
                     [](RayMask a, RayMask b) { return std::popcount(a) < std::popcount(b); });
}

bool StackyFan::is_face(RayMask mask) const {
    return std::any_of(cone_masks_.begin(), cone_masks_.end(), [&](RayMask c) { return mask_subset(mask, c); });
}

IntMatrix StackyFan::ray_matrix() const {
    IntMatrix r(rays_.size(), rank_);
    for (std::size_t i = 0; i < rays_.size(); ++i)
        for (std::size_t c = 0; c < rank_; ++c) r(i, c) = rays_[i][c];
    return r;
}

std::string StackyFan::canonical_json() const {
    std::ostringstream os;
    os << "{\"rank\":" << rank_ << ",\"rays\":[";
    for (std::size_t i = 0; i < rays_.size(); ++i) {
        os << (i ? "," : "") << "[";
        for (std::size_t c = 0; c < rank_; ++c) os << (c ? "," : "") << rays_[i][c];
        os << "]";
    }
    os << "],\"max_cones\":[";
    auto cones = cones_;
    std::sort(cones.begin(), cones.end());
    for (std::size_t k = 0; k < cones.size(); ++k) {
        os << (k ? "," : "") << "[";
        for (std::size_t j = 0; j < cones[k].size(); ++j) os << (j ? "," : "") << cones[k][j];
        os << "]";
    }
    os << "]}";
    return os.str();
}

std::string StackyFan::fingerprint() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : canonical_json()) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::vector<std::pair<std::size_t, std::size_t>> collinear_pairs(const StackyFan& fan) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < fan.num_rays(); ++i)
        for (std::size_t j = i + 1; j < fan.num_rays(); ++j)
            if (parallel(fan.ray(i), fan.ray(j))) out.emplace_back(i, j);
    return out;
}

RayNeighborhood neighborhood(const StackyFan& fan, std::size_t s) {
    if (s >= fan.num_rays()) throw PreconditionError("neighborhood: ray index out of range");
    RayNeighborhood nb;
    nb.center = s;
    const RayMask center = RayMask{1} << s;
    for (std::size_t j = 0; j < fan.num_rays(); ++j)
        if (j != s && fan.is_face(center | (RayMask{1} << j))) nb.members.push_back(j);
    if (fan.rank() != 3) return nb;

    std::map<std::size_t, std::vector<std::size_t>> adj;
    for (RayMask cone : fan.cone_masks()) {
        if (!mask_contains(cone, s)) continue;
        auto link = mask_indices(cone & ~center);
        adj[link[0]].push_back(link[1]);
        adj[link[1]].push_back(link[0]);
    }
    const std::string err = "link of ray " + std::to_string(s) + " is not a single cycle";
    for (std::size_t j : nb.members) {
        auto& a = adj[j];
        std::sort(a.begin(), a.end());
        if (a.size() != 2 || a[0] == a[1]) throw ValidationError(err);
    }
    std::vector<std::size_t> cycle{nb.members.front()};
    std::size_t prev = nb.members.front();
    std::size_t cur = adj[prev][0];
    while (cur != cycle.front()) {
        if (cycle.size() > nb.members.size()) throw ValidationError(err);
        cycle.push_back(cur);
        const auto& a = adj[cur];
        std::size_t next = a[0] == prev ? a[1] : a[0];
        prev = cur;
        cur = next;
    }
    if (cycle.size() != nb.members.size()) throw ValidationError(err);
    nb.cycle = std::move(cycle);
    return nb;
}

}  // namespace htriv
