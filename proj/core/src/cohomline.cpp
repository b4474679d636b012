#include "htriv/cohomline.hpp"

#include "htriv/errors.hpp"

#include <algorithm>
#include <future>

namespace htriv {

namespace {

void check_length(const StackyFan& fan, const IntVector& a) {
    if (a.size() != fan.num_rays())
        throw PreconditionError("coefficient vector has " + std::to_string(a.size()) + " entries, fan has " +
                                std::to_string(fan.num_rays()) + " rays");
}

}  // namespace

LinearSystem sign_polyhedron(const StackyFan& fan, const IntVector& a, RayMask index_set, Strictness strictness) {
    check_length(fan, a);
    LinearSystem sys(fan.rank());
    const bool strict = strictness == Strictness::Strict;
    for (std::size_t i = 0; i < fan.num_rays(); ++i) {
        RatVector v = fan.ray_rational(i);
        if (mask_contains(index_set, i)) {
            sys.add(std::move(v), strict ? Relation::Gt : Relation::Geq, Rat(-a[i]));
        } else {
            for (auto& x : v) x = -x;
            sys.add(std::move(v), strict ? Relation::Gt : Relation::Geq, strict ? Rat(a[i]) : Rat(a[i] + 1));
        }
    }
    return sys;
}

ForbiddenCone forbidden_cone(const StackyFan& fan, RayMask index_set) {
    const std::size_t n = fan.num_rays();
    ForbiddenCone fc;
    fc.index_set = index_set;
    fc.vertex.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        IntVector g(n, 0);
        if (mask_contains(index_set, i)) {
            g[i] = 1;
        } else {
            g[i] = -1;
            fc.vertex[i] = -1;
        }
        fc.generators.push_back(std::move(g));
    }
    return fc;
}

bool CohomologyVector::is_zero() const {
    return std::all_of(h.begin(), h.end(), [](std::uint64_t x) { return x == 0; });
}

namespace {

[[noreturn]] void lattice_failure(const LatticeResult& r, RayMask index_set, std::size_t cap) {
    if (r.status == LatticeStatus::UnboundedWithLatticePoint)
        throw ComputationError("infinite-dimensional contribution: fan violates properness assumptions (I = " +
                               format_index_set(index_set) + ")");
    throw ComputationError("lattice-point cap of " + std::to_string(cap) + " exceeded for I = " +
                           format_index_set(index_set) + " (raise --cap)");
}

}  // namespace

CohomologyVector cohomology(const StackyFan& fan, const DeltaFamily& delta, const IntVector& a, std::size_t cap) {
    check_length(fan, a);
    const std::size_t m = fan.rank();
    CohomologyVector out;
    out.h.assign(m + 1, 0);
    for (const auto& member : delta.members) {
        LatticeResult r = integer_points(sign_polyhedron(fan, a, member.index_set, Strictness::Weak), cap);
        if (r.status == LatticeStatus::Infeasible) continue;
        if (r.status != LatticeStatus::Points) lattice_failure(r, member.index_set, cap);
        const std::uint64_t count = r.points.size();
        for (std::size_t j = 0; j <= m; ++j)
            out.h[j] += count * member.betti(static_cast<int>(m) - static_cast<int>(j) - 1);
    }
    return out;
}

HTrivialResult h_triviality(const StackyFan& fan, const DeltaFamily& delta, const IntVector& a, std::size_t cap) {
    check_length(fan, a);
    for (const auto& member : delta.members) {
        LatticeResult r = first_integer_point(sign_polyhedron(fan, a, member.index_set, Strictness::Weak), cap);
        if (r.status == LatticeStatus::Infeasible) continue;
        if (r.status != LatticeStatus::Points) lattice_failure(r, member.index_set, cap);
        return {false, member.index_set, r.points.front()};
    }
    return {};
}

bool is_h_trivial(const StackyFan& fan, const DeltaFamily& delta, const IntVector& a, std::size_t cap) {
    return h_triviality(fan, delta, a, cap).h_trivial;
}

bool in_interior_ZI(const StackyFan& fan, const IntVector& a, RayMask index_set) {
    return feasible(sign_polyhedron(fan, a, index_set, Strictness::Strict)).feasible;
}

bool outside_all_interiors(const StackyFan& fan, const DeltaFamily& delta, const IntVector& a) {
    return std::none_of(delta.members.begin(), delta.members.end(),
                        [&](const DeltaMember& m) { return in_interior_ZI(fan, a, m.index_set); });
}

std::vector<LineBundleClass> classes_in_box(const PicStructure& pic, const ClassBox& box) {
    if (box.size() != pic.free_rank())
        throw PreconditionError("box has " + std::to_string(box.size()) + " ranges, Pic has free rank " +
                                std::to_string(pic.free_rank()));
    for (const auto& [lo, hi] : box)
        if (lo > hi) throw PreconditionError("box range " + std::to_string(lo) + ":" + std::to_string(hi) + " is empty");

    std::vector<LineBundleClass> out;
    const IntVector& tors = pic.torsion();
    std::vector<long> free(box.size());
    for (std::size_t k = 0; k < box.size(); ++k) free[k] = box[k].first;
    // Odometer over free coordinates, with torsion residues innermost.
    for (;;) {
        std::vector<unsigned long> t(tors.size(), 0);
        for (;;) {
            CanonicalClass c;
            for (long x : free) c.free.emplace_back(x);
            for (unsigned long x : t) c.torsion.emplace_back(x);
            IntVector raw = pic.lift(c);
            out.push_back({std::move(raw), std::move(c)});
            bool wrapped = true;
            for (std::size_t k = t.size(); k-- > 0;) {
                if (++t[k] < tors[k].get_ui()) {
                    wrapped = false;
                    break;
                }
                t[k] = 0;
            }
            if (wrapped) break;
        }
        bool done = true;
        for (std::size_t k = free.size(); k-- > 0;) {
            if (free[k] < box[k].second) {
                ++free[k];
                done = false;
                break;
            }
            free[k] = box[k].first;
        }
        if (done) break;
    }
    return out;
}

std::vector<LineBundleClass> scan_h_trivial(const StackyFan& fan, const PicStructure& pic, const DeltaFamily& delta,
                                            const ClassBox& box, unsigned threads, std::size_t cap) {
    std::vector<LineBundleClass> all = classes_in_box(pic, box);
    auto run = [&](std::size_t lo, std::size_t hi) {
        std::vector<LineBundleClass> part;
        for (std::size_t i = lo; i < hi; ++i)
            if (is_h_trivial(fan, delta, all[i].raw, cap)) part.push_back(all[i]);
        return part;
    };
    threads = std::max(1U, threads);
    if (threads == 1 || all.size() < 2 * threads) return run(0, all.size());
    std::vector<std::future<std::vector<LineBundleClass>>> parts;
    const std::size_t chunk = (all.size() + threads - 1) / threads;
    for (std::size_t lo = 0; lo < all.size(); lo += chunk)
        parts.push_back(std::async(std::launch::async, run, lo, std::min(all.size(), lo + chunk)));
    std::vector<LineBundleClass> out;
    for (auto& p : parts) {
        auto part = p.get();
        out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    }
    return out;
}

}  // namespace htriv
