#include "htriv/plsearch.hpp"

#include "htriv/errors.hpp"

#include <algorithm>
#include <set>

namespace htriv {

PLFunction PLFunction::from_integers(const IntVector& v) { return {to_rational(v)}; }

bool PLFunction::is_integral() const {
    return std::all_of(values.begin(), values.end(), [](const Rat& x) { return x.get_den() == 1; });
}

IntVector PLFunction::to_integers() const {
    IntVector out;
    out.reserve(values.size());
    for (const auto& x : values) out.push_back(x.get_num());
    return out;
}

namespace {

void check_values(const StackyFan& fan, const PLFunction& f) {
    if (f.values.size() != fan.num_rays()) throw PreconditionError("PL function needs one value per ray");
}

void check_ray(const StackyFan& fan, std::size_t s) {
    if (s >= fan.num_rays()) throw PreconditionError("ray index " + std::to_string(s) + " out of range");
}

bool parallel(const IntVector& a, const IntVector& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j)
            if (a[i] * b[j] != a[j] * b[i]) return false;
    return true;
}

}  // namespace

LinearForm cone_linear_part(const StackyFan& fan, const PLFunction& psi, std::size_t cone) {
    check_values(fan, psi);
    if (cone >= fan.max_cones().size()) throw PreconditionError("cone index out of range");
    const auto& rays = fan.max_cones()[cone];
    RatVector c;
    for (std::size_t i : rays) c.push_back(psi.values[i]);
    return fan.cone_inverse(cone) * c;
}

LambdaPolytope lambda_polytope(const StackyFan& fan, const PLFunction& psi) {
    LambdaPolytope lp;
    for (std::size_t k = 0; k < fan.max_cones().size(); ++k) lp.forms.push_back(cone_linear_part(fan, psi, k));
    lp.dim = affine_dim(lp.forms);
    return lp;
}

bool is_linear(const StackyFan& fan, const PLFunction& psi) {
    LinearForm w = cone_linear_part(fan, psi, 0);
    for (std::size_t i = 0; i < fan.num_rays(); ++i)
        if (dot(fan.ray_rational(i), w) != psi.values[i]) return false;
    return true;
}

DegenerateSpace degenerate_space(const StackyFan& fan, std::size_t s) {
    check_ray(fan, s);
    const std::size_t n = fan.num_rays();
    const std::size_t m = fan.rank();
    const RatVector vs = fan.ray_rational(s);
    const auto& cones = fan.max_cones();
    // Row per cone: psi_sigma(v_s) = v_s . B^{-1} c_sigma as a functional on c.
    RatMatrix rows(cones.size(), n);
    for (std::size_t k = 0; k < cones.size(); ++k) {
        const RatMatrix& inv = fan.cone_inverse(k);
        for (std::size_t j = 0; j < m; ++j) {
            Rat coef = 0;
            for (std::size_t r = 0; r < m; ++r) coef += vs[r] * inv(r, j);
            rows(k, cones[k][j]) = coef;
        }
    }
    DegenerateSpace ds;
    ds.basis = rational_kernel(rows);
    ds.dim = ds.basis.size();
    return ds;
}

std::optional<DegeneratePsi> find_degenerate_psi(const StackyFan& fan) {
    const std::size_t m = fan.rank();
    for (std::size_t s = 0; s < fan.num_rays(); ++s) {
        DegenerateSpace ds = degenerate_space(fan, s);
        if (ds.dim <= m - 1) continue;
        for (const auto& b : ds.basis) {
            if (is_linear(fan, {b})) continue;
            return DegeneratePsi{s, primitive_integer(b)};
        }
    }
    return std::nullopt;
}

LineBundleClass family_class(const StackyFan& fan, const PicStructure& pic, std::size_t s, const IntVector& psi,
                             long r) {
    check_ray(fan, s);
    PLFunction f = PLFunction::from_integers(psi);
    check_values(fan, f);
    const RatVector vs = fan.ray_rational(s);
    for (std::size_t k = 0; k < fan.max_cones().size(); ++k)
        if (dot(vs, cone_linear_part(fan, f, k)) != 0)
            throw PreconditionError("psi is not in K_s: psi_sigma(v_s) != 0 for cone " + std::to_string(k));
    if (is_linear(fan, f)) throw PreconditionError("psi is linear");
    IntVector a(fan.num_rays());
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = i == s ? Int(-1) : Int(psi[i] * r);
    return class_of(pic, a);
}

PLFunction normalize_at_ray(const StackyFan& fan, const PLFunction& f, std::size_t s) {
    check_ray(fan, s);
    check_values(fan, f);
    const std::size_t m = fan.rank();
    const IntVector& vs = fan.ray(s);
    std::size_t lead = 0;
    while (vs[lead] == 0) ++lead;
    RatVector m0(m);
    m0[lead] = f.values[s] / Rat(vs[lead]);
    RatMatrix row(1, m);
    for (std::size_t c = 0; c < m; ++c) row(0, c) = vs[c];
    const std::vector<RatVector> dirs = rational_kernel(row);

    std::vector<std::size_t> others;
    for (std::size_t i = 0; i < fan.num_rays(); ++i)
        if (!parallel(fan.ray(i), vs)) others.push_back(i);

    auto attempt = [&](const std::vector<long>& t) -> std::optional<PLFunction> {
        RatVector w = m0;
        for (std::size_t j = 0; j < dirs.size(); ++j)
            for (std::size_t c = 0; c < m; ++c) w[c] += t[j] * dirs[j][c];
        PLFunction g;
        for (std::size_t i = 0; i < fan.num_rays(); ++i) g.values.push_back(f.values[i] - dot(fan.ray_rational(i), w));
        for (std::size_t i : others)
            if (g.values[i] == 0) return std::nullopt;
        return g;
    };

    // Integer offsets along v_s^perp, shell by shell in max norm, each shell
    // in lexicographic order.
    const std::size_t d = dirs.size();
    for (long radius = 0;; ++radius) {
        std::vector<long> t(d, -radius);
        for (;;) {
            long norm = 0;
            for (long x : t) norm = std::max(norm, x < 0 ? -x : x);
            if (norm == radius)
                if (auto g = attempt(t)) return *g;
            std::size_t k = d;
            while (k > 0 && t[k - 1] == radius) t[--k] = -radius;
            if (k == 0) break;
            ++t[k - 1];
        }
    }
}

std::size_t sign_changes(const StackyFan& fan, const PLFunction& g, std::size_t s) {
    if (fan.rank() != 3) throw PreconditionError("sign changes need rank 3");
    check_ray(fan, s);
    check_values(fan, g);
    if (g.values[s] != 0) throw PreconditionError("g(v_s) must vanish");
    RayNeighborhood nb = neighborhood(fan, s);
    if (!nb.cycle) throw PreconditionError("link cycle unavailable");
    const auto& cyc = *nb.cycle;
    for (std::size_t i : cyc)
        if (g.values[i] == 0)
            throw PreconditionError("g vanishes at ray " + std::to_string(i) + " in the link of ray " +
                                    std::to_string(s));
    std::size_t count = 0;
    for (std::size_t k = 0; k < cyc.size(); ++k) {
        bool a = g.values[cyc[k]] >= 0;
        bool b = g.values[cyc[(k + 1) % cyc.size()]] >= 0;
        if (a != b) ++count;
    }
    return count;
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::InfinitelyMany: return "InfinitelyMany";
        case Verdict::FinitelyMany: return "FinitelyMany";
        case Verdict::Undetermined: return "Undetermined";
    }
    return "Undetermined";
}

CriterionReport criterion_report(const StackyFan& fan, const PicStructure& pic, const DeltaFamily& delta,
                                 const ReportOptions& options) {
    CriterionReport rep;
    rep.collinear_pair_count = collinear_pairs(fan).size();
    rep.degenerate_psi = find_degenerate_psi(fan);

    ClassBox box = options.search_box;
    if (box.empty()) box.assign(pic.free_rank(), {-3, 3});
    const CanonicalClass zero = pic.canonical(IntVector(fan.num_rays()));
    for (const auto& cls : classes_in_box(pic, box)) {
        if (cls.canonical == zero) continue;
        ++rep.outside_searched;
        if (outside_all_interiors(fan, delta, cls.raw)) {
            rep.outside_witness = cls;
            break;
        }
    }

    if (rep.degenerate_psi) {
        const auto& [s, psi] = *rep.degenerate_psi;
        rep.psi_outside_all_interiors = outside_all_interiors(fan, delta, psi);
        std::set<CanonicalClass> seen;
        rep.family_all_h_trivial = true;
        for (long r = options.r_lo; r <= options.r_hi; ++r) {
            FamilyCheck fc{r, family_class(fan, pic, s, psi, r), false};
            fc.h_trivial = is_h_trivial(fan, delta, fc.cls.raw, options.cap);
            rep.family_all_h_trivial = rep.family_all_h_trivial && fc.h_trivial;
            seen.insert(fc.cls.canonical);
            rep.family_checks.push_back(std::move(fc));
        }
        rep.family_pairwise_distinct = seen.size() == rep.family_checks.size();
        rep.verdict = Verdict::InfinitelyMany;
        rep.reason = "degenerate psi at ray " + std::to_string(s + 1) + " gives an infinite H-trivial family";
    } else if (fan.rank() == 3 && rep.collinear_pair_count <= 1) {
        rep.verdict = Verdict::FinitelyMany;
        rep.reason = "rank 3, at most one collinear pair, and no degenerate psi";
    } else {
        rep.verdict = Verdict::Undetermined;
        rep.reason = fan.rank() == 3 ? "no degenerate psi, but more than one collinear pair"
                                     : "no degenerate psi and the finiteness criterion needs rank 3";
    }
    return rep;
}

}  // namespace htriv
