#pragma once

// Exact integer/rational linear algebra: Smith and Hermite normal forms,
// rational kernels, affine dimension, and Fourier-Motzkin elimination with
// strict inequalities. Everything is GMP-backed; there is no floating point.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace htriv {

using Int = mpz_class;
using Rat = mpq_class;
using IntVector = std::vector<Int>;
using RatVector = std::vector<Rat>;

template <typename T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    Matrix(std::initializer_list<std::initializer_list<long>> init);

    static Matrix identity(std::size_t n);
    static Matrix from_rows(std::span<const std::vector<T>> rows, std::size_t cols);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::vector<T> row(std::size_t r) const;
    std::vector<T> col(std::size_t c) const;
    void swap_rows(std::size_t a, std::size_t b);
    void swap_cols(std::size_t a, std::size_t b);

    Matrix transpose() const;
    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using IntMatrix = Matrix<Int>;
using RatMatrix = Matrix<Rat>;

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
IntVector operator*(const IntMatrix& a, const IntVector& x);
RatVector operator*(const RatMatrix& a, const RatVector& x);

RatMatrix to_rational(const IntMatrix& a);
RatVector to_rational(const IntVector& v);

Rat dot(const RatVector& a, const RatVector& b);
Int dot(const IntVector& a, const IntVector& b);

/// Integer vector obtained by clearing denominators and dividing out the
/// content; the zero vector maps to the zero vector.
IntVector primitive_integer(const RatVector& v);

/// U * A * V == S with S diagonal, d_1 | d_2 | ... | d_k, all d_i >= 0,
/// and U, V unimodular.
struct SmithForm {
    IntMatrix S;
    IntMatrix U;
    IntMatrix V;
};

SmithForm smith_normal_form(const IntMatrix& a);

/// Row-style Hermite normal form: echelon, positive pivots, entries above
/// each pivot reduced into [0, pivot). Zero rows are dropped.
IntMatrix hermite_normal_form(const IntMatrix& a);

/// Determinant of a square integer matrix (Bareiss).
Int determinant(const IntMatrix& a);

/// Inverse of a unimodular matrix; throws std::domain_error otherwise.
IntMatrix unimodular_inverse(const IntMatrix& a);

RatMatrix reduced_row_echelon(const RatMatrix& a, std::vector<std::size_t>* pivots = nullptr);
std::size_t rank(const RatMatrix& a);

/// Basis of {x : A x = 0} read off the reduced row echelon form, one vector
/// per free column in ascending order with a 1 in that column.
std::vector<RatVector> rational_kernel(const RatMatrix& a);

/// Unique solution of A x = b for square nonsingular A; nullopt if singular.
std::optional<RatVector> solve_square(const RatMatrix& a, const RatVector& b);

/// -1 for the empty set, otherwise the rank of the differences from the
/// first point.
int affine_dim(std::span<const RatVector> points);

// ---------------------------------------------------------------------------
// Linear inequality systems

enum class Relation { Geq, Gt, Eq };

/// coeffs . x  (rel)  rhs
struct Constraint {
    RatVector coeffs;
    Rat rhs;
    Relation rel = Relation::Geq;

    bool is_constant() const;
    /// Truth value of a constant row.
    bool holds_trivially() const;
    bool satisfied_by(const RatVector& x) const;
    bool operator==(const Constraint&) const = default;
};

class LinearSystem {
public:
    LinearSystem() = default;
    explicit LinearSystem(std::size_t vars) : vars_(vars) {}

    std::size_t vars() const noexcept { return vars_; }
    const std::vector<Constraint>& rows() const noexcept { return rows_; }

    /// Throws std::invalid_argument on a coefficient length mismatch.
    void add(Constraint row);
    void add(RatVector coeffs, Relation rel, Rat rhs);

    bool has_strict() const;
    /// True when some constant row is violated.
    bool trivially_inconsistent() const;
    bool satisfied_by(const RatVector& x) const;

    /// Scales rows to primitive integer coefficients, drops true constant
    /// rows, keeps the tightest row per coefficient vector and collapses any
    /// violated constant row to the single row 0 >= 1.
    void normalize();

    /// x_var := value, leaving the variable in place with zero coefficients.
    LinearSystem substitute(std::size_t var, const Rat& value) const;

    std::string to_string() const;

private:
    std::size_t vars_ = 0;
    std::vector<Constraint> rows_;
};

/// Projects out `var`; the result lives in vars() - 1 variables (the column
/// is removed and later variables shift down by one).
LinearSystem fm_eliminate(const LinearSystem& sys, std::size_t var);

struct FeasibilityResult {
    bool feasible = false;
    RatVector witness;  // valid only when feasible
};

FeasibilityResult feasible(const LinearSystem& sys);

/// Rational lower/upper bounds of variable `var` over the polyhedron.
struct VariableBounds {
    bool empty = false;
    std::optional<Rat> lower;
    std::optional<Rat> upper;
    bool lower_strict = false;
    bool upper_strict = false;
};

VariableBounds variable_bounds(const LinearSystem& sys, std::size_t var);

enum class LatticeStatus { Points, Infeasible, CapExceeded, UnboundedWithLatticePoint };

struct LatticeResult {
    LatticeStatus status = LatticeStatus::Infeasible;
    std::vector<IntVector> points;  // lexicographic; first hit only in unbounded case
    IntVector recession;            // primitive ray when unbounded
    std::size_t candidates = 0;     // enumerated integer values across all levels
};

inline constexpr std::size_t kDefaultLatticeCap = 1'000'000;

/// Integer points of a system with only >= and = rows. Bounded polyhedra are
/// enumerated completely; unbounded ones are searched slice by slice until a
/// lattice point shows up or the cap runs out.
LatticeResult integer_points(const LinearSystem& sys, std::size_t cap = kDefaultLatticeCap);

/// Same scheme, stopping at the first lattice point.
LatticeResult first_integer_point(const LinearSystem& sys, std::size_t cap = kDefaultLatticeCap);

std::string to_string(LatticeStatus s);

}  // namespace htriv
