#pragma once

// Complete simplicial stacky fans: a lattice rank, one chosen lattice point
// per ray, and the maximal cones as ray-index sets.

#include "htriv/exactlin.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace htriv {

/// Subset of ray indices; bit i is ray i (0-based).
using RayMask = std::uint64_t;
inline constexpr std::size_t kMaxRays = 64;

inline bool mask_contains(RayMask mask, std::size_t i) { return (mask >> i) & 1U; }
inline bool mask_subset(RayMask a, RayMask b) { return (a & ~b) == 0; }
RayMask full_mask(std::size_t n);
std::vector<std::size_t> mask_indices(RayMask mask);
RayMask indices_mask(const std::vector<std::size_t>& indices);

struct ValidationOptions {
    unsigned coverage_directions = 64;
    std::uint64_t seed = 0x5eed'cafe'f00dULL;
};

class StackyFan {
public:
    /// Validates on construction; throws ValidationError naming the broken
    /// invariant.
    StackyFan(std::size_t rank, std::vector<IntVector> rays, std::vector<std::vector<std::size_t>> max_cones,
              const ValidationOptions& options = {});

    std::size_t rank() const noexcept { return rank_; }
    std::size_t num_rays() const noexcept { return rays_.size(); }
    const std::vector<IntVector>& rays() const noexcept { return rays_; }
    const IntVector& ray(std::size_t i) const { return rays_.at(i); }
    RatVector ray_rational(std::size_t i) const { return to_rational(rays_.at(i)); }

    /// Ray indices of each maximal cone, sorted ascending, in file order.
    const std::vector<std::vector<std::size_t>>& max_cones() const noexcept { return cones_; }
    const std::vector<RayMask>& cone_masks() const noexcept { return cone_masks_; }

    /// Inverse of the matrix whose rows are the cone's rays (in the sorted
    /// order of max_cones()); maps ray values to the cone's linear form.
    const RatMatrix& cone_inverse(std::size_t cone) const { return cone_inverse_.at(cone); }

    /// Every cone of the fan as a ray mask (including the zero cone), ordered
    /// by size then mask value.
    const std::vector<RayMask>& faces() const noexcept { return faces_; }
    bool is_face(RayMask mask) const;

    /// n x m matrix with rows v_i.
    IntMatrix ray_matrix() const;

    /// Compact JSON with sorted cones; stable across runs.
    std::string canonical_json() const;
    /// FNV-1a of canonical_json(), 16 hex digits.
    std::string fingerprint() const;

private:
    void validate(const ValidationOptions& options);

    std::size_t rank_;
    std::vector<IntVector> rays_;
    std::vector<std::vector<std::size_t>> cones_;
    std::vector<RayMask> cone_masks_;
    std::vector<RatMatrix> cone_inverse_;
    std::vector<RayMask> faces_;
};

/// Parses the fan JSON format: {"rank": m, "rays": [[...], ...],
/// "max_cones": [[i, ...], ...]} with 0-based ray indices. Throws ParseError
/// or ValidationError.
StackyFan load_fan(std::string_view text, const ValidationOptions& options = {});

/// Pairs (i, j), i < j, with R v_i = R v_j. 0-based.
std::vector<std::pair<std::size_t, std::size_t>> collinear_pairs(const StackyFan& fan);

struct RayNeighborhood {
    std::size_t center = 0;
    std::vector<std::size_t> members;                // ascending
    std::optional<std::vector<std::size_t>> cycle;   // rank 3 only
};

/// Rays spanning a 2-cone with ray s. In rank 3 the link of s is walked
/// starting from the smallest member towards its smaller neighbour.
RayNeighborhood neighborhood(const StackyFan& fan, std::size_t s);

}  // namespace htriv
