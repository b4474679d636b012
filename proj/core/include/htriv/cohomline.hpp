#pragma once

// Line bundle cohomology via the sign-pattern stratification over Delta,
// H-triviality, forbidden cones and their interiors, and box scans.

#include "htriv/homology.hpp"
#include "htriv/picard.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace htriv {

enum class Strictness { Weak, Strict };

/// Rows in f over M_Q. Weak: a_i + f.v_i >= 0 on I, <= -1 off I.
/// Strict: > 0 on I, < 0 off I.
LinearSystem sign_polyhedron(const StackyFan& fan, const IntVector& a, RayMask index_set, Strictness strictness);

struct ForbiddenCone {
    RayMask index_set = 0;
    IntVector vertex;                  // -sum_{i not in I} E_i
    std::vector<IntVector> generators; // +E_i on I, -E_i off I
};

ForbiddenCone forbidden_cone(const StackyFan& fan, RayMask index_set);

struct CohomologyVector {
    std::vector<std::uint64_t> h;  // h^0 .. h^m

    bool is_zero() const;
    bool operator==(const CohomologyVector&) const = default;
};

CohomologyVector cohomology(const StackyFan& fan, const DeltaFamily& delta, const IntVector& a,
                            std::size_t cap = kDefaultLatticeCap);

struct HTrivialResult {
    bool h_trivial = true;
    std::optional<RayMask> violating;  // first I in Delta with a lattice point
    IntVector witness;                 // that lattice point f
};

HTrivialResult h_triviality(const StackyFan& fan, const DeltaFamily& delta, const IntVector& a,
                            std::size_t cap = kDefaultLatticeCap);
bool is_h_trivial(const StackyFan& fan, const DeltaFamily& delta, const IntVector& a,
                  std::size_t cap = kDefaultLatticeCap);

/// A strict-sign representative exists.
bool in_interior_ZI(const StackyFan& fan, const IntVector& a, RayMask index_set);
bool outside_all_interiors(const StackyFan& fan, const DeltaFamily& delta, const IntVector& a);

/// Inclusive bounds per free coordinate.
using ClassBox = std::vector<std::pair<long, long>>;

/// Every class in the box, lexicographic in (free, torsion).
std::vector<LineBundleClass> classes_in_box(const PicStructure& pic, const ClassBox& box);

std::vector<LineBundleClass> scan_h_trivial(const StackyFan& fan, const PicStructure& pic, const DeltaFamily& delta,
                                            const ClassBox& box, unsigned threads = 1,
                                            std::size_t cap = kDefaultLatticeCap);

}  // namespace htriv
