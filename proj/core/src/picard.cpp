#include "htriv/picard.hpp"

#include "htriv/errors.hpp"

#include <cassert>

namespace htriv {

bool CanonicalClass::operator<(const CanonicalClass& o) const {
    if (free != o.free) return free < o.free;
    return torsion < o.torsion;
}

PicStructure::PicStructure(const StackyFan& fan) : num_rays_(fan.num_rays()), rank_(fan.rank()) {
    const std::size_t n = num_rays_;
    const std::size_t m = rank_;
    SmithForm snf = smith_normal_form(fan.ray_matrix());
    u_ = snf.U;
    u_inverse_ = unimodular_inverse(u_);
    for (std::size_t k = 0; k < m; ++k) {
        assert(snf.S(k, k) != 0);  // rays span N_Q for a complete fan
        if (snf.S(k, k) > 1) {
            torsion_rows_.push_back(k);
            torsion_.push_back(snf.S(k, k));
        }
    }
    // Rows m.. of U span the integer relations among the rays.
    IntMatrix kernel(n - m, n);
    for (std::size_t r = m; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) kernel(r - m, c) = u_(r, c);
    relations_ = hermite_normal_form(kernel);

    IntMatrix block = relations_ * u_inverse_;
    IntMatrix free_block(n - m, n - m);
    for (std::size_t r = 0; r < n - m; ++r) {
        for (std::size_t c = 0; c < m; ++c) assert(block(r, c) == 0);
        for (std::size_t c = m; c < n; ++c) free_block(r, c - m) = block(r, c);
    }
    free_lift_ = unimodular_inverse(free_block);
}

CanonicalClass PicStructure::canonical(const IntVector& a) const {
    if (a.size() != num_rays_) throw PreconditionError("class vector length differs from ray count");
    CanonicalClass c;
    c.free = relations_ * a;
    if (!torsion_rows_.empty()) {
        IntVector y = u_ * a;
        for (std::size_t k = 0; k < torsion_rows_.size(); ++k) {
            Int r;
            mpz_fdiv_r(r.get_mpz_t(), y[torsion_rows_[k]].get_mpz_t(), torsion_[k].get_mpz_t());
            c.torsion.push_back(r);
        }
    }
    return c;
}

IntVector PicStructure::lift(const CanonicalClass& c) const {
    if (c.free.size() != free_rank() || c.torsion.size() != torsion_.size())
        throw PreconditionError("canonical coordinates have the wrong shape");
    IntVector y(num_rays_);
    for (std::size_t k = 0; k < torsion_rows_.size(); ++k) y[torsion_rows_[k]] = c.torsion[k];
    IntVector tail = free_lift_ * c.free;
    for (std::size_t k = 0; k < tail.size(); ++k) y[rank_ + k] = tail[k];
    return u_inverse_ * y;
}

PicStructure pic_structure(const StackyFan& fan) { return PicStructure(fan); }

LineBundleClass class_of(const PicStructure& pic, const IntVector& a) { return {a, pic.canonical(a)}; }

LineBundleClass class_of(const StackyFan& fan, const IntVector& a) { return class_of(PicStructure(fan), a); }

IntVector character_image(const StackyFan& fan, const IntVector& w) {
    if (w.size() != fan.rank()) throw PreconditionError("character has wrong length");
    IntVector out;
    out.reserve(fan.num_rays());
    for (const auto& v : fan.rays()) out.push_back(dot(v, w));
    return out;
}

bool classes_equal(const StackyFan& fan, const IntVector& a, const IntVector& b) {
    const std::size_t n = fan.num_rays();
    if (a.size() != n || b.size() != n) throw PreconditionError("class vector length differs from ray count");
    const auto& cone = fan.max_cones().front();
    const RatMatrix& inv = fan.cone_inverse(0);
    RatVector rhs(cone.size());
    for (std::size_t r = 0; r < cone.size(); ++r) rhs[r] = a[cone[r]] - b[cone[r]];
    RatVector w = inv * rhs;
    IntVector wi;
    for (const auto& x : w) {
        if (x.get_den() != 1) return false;
        wi.push_back(x.get_num());
    }
    for (std::size_t i = 0; i < n; ++i)
        if (dot(fan.ray(i), wi) != a[i] - b[i]) return false;
    return true;
}

}  // namespace htriv
