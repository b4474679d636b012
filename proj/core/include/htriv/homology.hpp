#pragma once

// The complexes Supp(r) and C_I, their reduced rational homology, and the
// family of index sets I whose C_I is not acyclic.

#include "htriv/fan.hpp"

#include <string>
#include <vector>

namespace htriv {

/// Abstract simplicial complex on ray indices. Faces are ray masks ordered by
/// size then value; the empty face (mask 0) is always present.
struct SimplicialComplex {
    std::size_t num_vertices = 0;
    std::vector<RayMask> faces;

    bool contains(RayMask face) const;
    /// Largest face size minus one; -1 for the complex {empty}.
    int dimension() const;
};

/// Reduced Betti numbers b~_{-1}, b~_0, ..., b~_{m-1}.
struct BettiVector {
    std::vector<std::size_t> ranks;

    /// b~_k for k >= -1; zero outside the stored range.
    std::size_t operator()(int k) const;
    bool is_zero() const;
    bool operator==(const BettiVector&) const = default;
};

SimplicialComplex supp(const StackyFan& fan, const IntVector& r);

/// Supp(r) with r_i = 0 on I and -1 off I.
SimplicialComplex complex_CI(const StackyFan& fan, RayMask index_set);

BettiVector reduced_betti(const SimplicialComplex& cx, std::size_t rank);

struct DeltaMember {
    RayMask index_set = 0;
    BettiVector betti;
};

struct DeltaFamily {
    std::size_t num_rays = 0;
    std::vector<DeltaMember> members;  // ascending index_set

    bool contains(RayMask index_set) const;
    const DeltaMember* find(RayMask index_set) const;
    bool operator==(const DeltaFamily& o) const;
};

inline constexpr std::size_t kDefaultDeltaCap = 16;

/// Exhaustive over all 2^n subsets. Throws ComputationError when n > cap.
DeltaFamily delta_set(const StackyFan& fan, std::size_t cap = kDefaultDeltaCap, unsigned threads = 1);

/// Rank 2 and 3 only: connectivity of C_I (and of the complement in rank 3)
/// decides membership, with the Betti numbers read off component counts.
DeltaFamily delta_fast_lowdim(const StackyFan& fan);

/// Whichever route applies: the fast one for rank <= 3 when n exceeds the
/// exhaustive cap, the exhaustive one otherwise.
DeltaFamily compute_delta(const StackyFan& fan, std::size_t cap = kDefaultDeltaCap, unsigned threads = 1);

/// "{1,3}" style, 1-based.
std::string format_index_set(RayMask mask);

}  // namespace htriv
