#pragma once

// Pic = Z^n / {(w.v_i)_i : w in M}. Free coordinates are the integer linear
// relations among the rays (Hermite basis), torsion coordinates are residues
// of the Smith form.

#include "htriv/fan.hpp"

#include <compare>

namespace htriv {

struct CanonicalClass {
    IntVector free;
    IntVector torsion;  // each entry reduced into [0, d)

    bool operator==(const CanonicalClass&) const = default;
    bool operator<(const CanonicalClass& o) const;
};

struct LineBundleClass {
    IntVector raw;
    CanonicalClass canonical;
};

class PicStructure {
public:
    explicit PicStructure(const StackyFan& fan);

    std::size_t num_rays() const noexcept { return num_rays_; }
    std::size_t free_rank() const noexcept { return relations_.rows(); }
    /// Invariant factors greater than one.
    const IntVector& torsion() const noexcept { return torsion_; }
    /// free_rank x n; row j gives the j-th free coordinate as a functional.
    const IntMatrix& relations() const noexcept { return relations_; }

    CanonicalClass canonical(const IntVector& a) const;
    /// Some raw vector with the given canonical coordinates.
    IntVector lift(const CanonicalClass& c) const;

private:
    std::size_t num_rays_;
    std::size_t rank_;
    IntMatrix relations_;
    IntMatrix u_;
    IntMatrix u_inverse_;
    IntMatrix free_lift_;  // (n - m) x (n - m), inverse of relations * U^{-1} on the free block
    std::vector<std::size_t> torsion_rows_;
    IntVector torsion_;
};

PicStructure pic_structure(const StackyFan& fan);

LineBundleClass class_of(const PicStructure& pic, const IntVector& a);
LineBundleClass class_of(const StackyFan& fan, const IntVector& a);

/// (w . v_i)_i
IntVector character_image(const StackyFan& fan, const IntVector& w);

/// a - b = (w . v_i)_i for an integer w, decided on one maximal cone and
/// checked on every ray.
bool classes_equal(const StackyFan& fan, const IntVector& a, const IntVector& b);

}  // namespace htriv
