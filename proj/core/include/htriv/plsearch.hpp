#pragma once

// Sigma-piecewise-linear functions stored by their ray values, the polytope of
// per-cone linear parts, the search for degenerate psi, the infinite families
// they produce, and the rank-3 sign-change analysis.

#include "htriv/cohomline.hpp"

#include <optional>
#include <string>
#include <vector>

namespace htriv {

struct PLFunction {
    RatVector values;  // psi(v_i)

    static PLFunction from_integers(const IntVector& v);
    bool is_integral() const;
    IntVector to_integers() const;  // requires is_integral()
};

using LinearForm = RatVector;

LinearForm cone_linear_part(const StackyFan& fan, const PLFunction& psi, std::size_t cone);

struct LambdaPolytope {
    std::vector<LinearForm> forms;  // one per maximal cone, in cone order
    int dim = -1;
};

LambdaPolytope lambda_polytope(const StackyFan& fan, const PLFunction& psi);

/// Globally linear: a single form fits every ray value.
bool is_linear(const StackyFan& fan, const PLFunction& psi);

struct DegenerateSpace {
    std::vector<RatVector> basis;
    std::size_t dim = 0;
};

/// K_s = { c : psi_sigma(v_s) = 0 for every maximal cone sigma }.
DegenerateSpace degenerate_space(const StackyFan& fan, std::size_t s);

struct DegeneratePsi {
    std::size_t ray = 0;  // 0-based
    IntVector psi;
};

std::optional<DegeneratePsi> find_degenerate_psi(const StackyFan& fan);

/// sum_{i != s} r psi(v_i) E_i - E_s.
LineBundleClass family_class(const StackyFan& fan, const PicStructure& pic, std::size_t s, const IntVector& psi,
                             long r);

/// f minus a linear form that agrees with f at v_s and nowhere else among the
/// rays not parallel to v_s.
PLFunction normalize_at_ray(const StackyFan& fan, const PLFunction& f, std::size_t s);

/// Adjacent pairs around the link cycle of v_s whose values fall in different
/// classes of {>= 0}, {< 0}. Rank 3 only.
std::size_t sign_changes(const StackyFan& fan, const PLFunction& g, std::size_t s);

enum class Verdict { InfinitelyMany, FinitelyMany, Undetermined };

std::string to_string(Verdict v);

struct FamilyCheck {
    long r = 0;
    LineBundleClass cls;
    bool h_trivial = false;
};

struct CriterionReport {
    std::size_t collinear_pair_count = 0;
    std::optional<DegeneratePsi> degenerate_psi;
    /// Class of psi itself; nonzero because psi is not linear.
    std::optional<bool> psi_outside_all_interiors;
    std::optional<LineBundleClass> outside_witness;
    std::size_t outside_searched = 0;
    std::vector<FamilyCheck> family_checks;
    bool family_all_h_trivial = false;
    bool family_pairwise_distinct = false;
    Verdict verdict = Verdict::Undetermined;
    std::string reason;
};

struct ReportOptions {
    ClassBox search_box;  // empty: [-3, 3] per free coordinate
    long r_lo = -5;
    long r_hi = 5;
    std::size_t cap = kDefaultLatticeCap;
};

CriterionReport criterion_report(const StackyFan& fan, const PicStructure& pic, const DeltaFamily& delta,
                                 const ReportOptions& options = {});

}  // namespace htriv
