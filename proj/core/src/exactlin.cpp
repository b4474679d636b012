#include "htriv/exactlin.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace htriv {

// ---------------------------------------------------------------------------
// Matrix

template <typename T>
Matrix<T>::Matrix(std::initializer_list<std::initializer_list<long>> init) {
    rows_ = init.size();
    cols_ = rows_ == 0 ? 0 : init.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : init) {
        if (r.size() != cols_) throw std::invalid_argument("ragged matrix initializer");
        for (long v : r) data_.emplace_back(v);
    }
}

template <typename T>
Matrix<T> Matrix<T>::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

template <typename T>
Matrix<T> Matrix<T>::from_rows(std::span<const std::vector<T>> rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw std::invalid_argument("row length mismatch");
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
    }
    return m;
}

template <typename T>
std::vector<T> Matrix<T>::row(std::size_t r) const {
    return {data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
            data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
}

template <typename T>
std::vector<T> Matrix<T>::col(std::size_t c) const {
    std::vector<T> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
}

template <typename T>
void Matrix<T>::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
}

template <typename T>
void Matrix<T>::swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
}

template <typename T>
Matrix<T> Matrix<T>::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

template class Matrix<Int>;
template class Matrix<Rat>;

namespace {

template <typename T>
Matrix<T> multiply(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix product shape mismatch");
    Matrix<T> out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k) == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
        }
    return out;
}

template <typename T>
std::vector<T> apply(const Matrix<T>& a, const std::vector<T>& x) {
    if (a.cols() != x.size()) throw std::invalid_argument("matrix-vector shape mismatch");
    std::vector<T> out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) out[i] += a(i, k) * x[k];
    return out;
}

}  // namespace

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) { return multiply(a, b); }
RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) { return multiply(a, b); }
IntVector operator*(const IntMatrix& a, const IntVector& x) { return apply(a, x); }
RatVector operator*(const RatMatrix& a, const RatVector& x) { return apply(a, x); }

RatMatrix to_rational(const IntMatrix& a) {
    RatMatrix out(a.rows(), a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = Rat(a(r, c));
    return out;
}

RatVector to_rational(const IntVector& v) {
    RatVector out;
    out.reserve(v.size());
    for (const auto& x : v) out.emplace_back(x);
    return out;
}

Rat dot(const RatVector& a, const RatVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Int dot(const IntVector& a, const IntVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

IntVector primitive_integer(const RatVector& v) {
    Int den = 1;
    for (const auto& x : v) den = lcm(den, Int(x.get_den()));
    IntVector out(v.size());
    Int g = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        Rat scaled = v[i] * den;
        out[i] = scaled.get_num();
        g = gcd(g, out[i]);
    }
    if (g != 0)
        for (auto& x : out) x /= g;
    return out;
}

// ---------------------------------------------------------------------------
// Normal forms

SmithForm smith_normal_form(const IntMatrix& a) {
    const std::size_t rows = a.rows();
    const std::size_t cols = a.cols();
    IntMatrix s = a;
    IntMatrix u = IntMatrix::identity(rows);
    IntMatrix v = IntMatrix::identity(cols);

    auto row_add = [&](std::size_t dst, std::size_t src, const Int& k) {
        for (std::size_t c = 0; c < cols; ++c) s(dst, c) += k * s(src, c);
        for (std::size_t c = 0; c < rows; ++c) u(dst, c) += k * u(src, c);
    };
    auto col_add = [&](std::size_t dst, std::size_t src, const Int& k) {
        for (std::size_t r = 0; r < rows; ++r) s(r, dst) += k * s(r, src);
        for (std::size_t r = 0; r < cols; ++r) v(r, dst) += k * v(r, src);
    };
    auto row_swap = [&](std::size_t i, std::size_t j) {
        s.swap_rows(i, j);
        u.swap_rows(i, j);
    };
    auto col_swap = [&](std::size_t i, std::size_t j) {
        s.swap_cols(i, j);
        v.swap_cols(i, j);
    };

    const std::size_t diag = std::min(rows, cols);
    for (std::size_t t = 0; t < diag; ++t) {
        // Smallest nonzero entry of the trailing block becomes the pivot.
        std::optional<std::pair<std::size_t, std::size_t>> best;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j)
                if (s(i, j) != 0 && (!best || abs(s(i, j)) < abs(s(best->first, best->second))))
                    best = {i, j};
        if (!best) break;
        row_swap(t, best->first);
        col_swap(t, best->second);

        while (true) {
            // Euclid on column t, then row t, always pivoting on the smallest
            // nonzero entry; keeps coefficient growth in check.
            for (;;) {
                std::size_t p = t;
                for (std::size_t i = t + 1; i < rows; ++i)
                    if (s(i, t) != 0 && (s(p, t) == 0 || abs(s(i, t)) < abs(s(p, t)))) p = i;
                if (p != t) row_swap(t, p);
                bool clear = true;
                for (std::size_t i = t + 1; i < rows; ++i) {
                    if (s(i, t) == 0) continue;
                    row_add(i, t, -Int(s(i, t) / s(t, t)));
                    clear = clear && s(i, t) == 0;
                }
                if (clear) break;
            }
            for (;;) {
                std::size_t p = t;
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (s(t, j) != 0 && (s(t, p) == 0 || abs(s(t, j)) < abs(s(t, p)))) p = j;
                if (p != t) col_swap(t, p);
                bool clear = true;
                for (std::size_t j = t + 1; j < cols; ++j) {
                    if (s(t, j) == 0) continue;
                    col_add(j, t, -Int(s(t, j) / s(t, t)));
                    clear = clear && s(t, j) == 0;
                }
                if (clear) break;
            }
            bool column_clear = true;
            for (std::size_t i = t + 1; i < rows; ++i) column_clear = column_clear && s(i, t) == 0;
            if (!column_clear) continue;  // a column swap brought entries back

            // Enforce divisibility of the trailing block by the pivot.
            bool fixed = false;
            for (std::size_t i = t + 1; i < rows && !fixed; ++i)
                for (std::size_t j = t + 1; j < cols && !fixed; ++j)
                    if (s(i, j) % s(t, t) != 0) {
                        row_add(t, i, 1);
                        fixed = true;
                    }
            if (!fixed) break;
        }
        if (s(t, t) < 0) {
            for (std::size_t c = 0; c < cols; ++c) s(t, c) = -s(t, c);
            for (std::size_t c = 0; c < rows; ++c) u(t, c) = -u(t, c);
        }
    }
    return {std::move(s), std::move(u), std::move(v)};
}

IntMatrix hermite_normal_form(const IntMatrix& a) {
    IntMatrix h = a;
    const std::size_t rows = h.rows();
    const std::size_t cols = h.cols();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        // Euclid down the column until a single nonzero entry remains at r.
        while (true) {
            std::optional<std::size_t> best;
            for (std::size_t i = r; i < rows; ++i)
                if (h(i, c) != 0 && (!best || abs(h(i, c)) < abs(h(*best, c)))) best = i;
            if (!best) break;
            h.swap_rows(r, *best);
            bool done = true;
            for (std::size_t i = r + 1; i < rows; ++i) {
                if (h(i, c) == 0) continue;
                Int q = h(i, c) / h(r, c);
                for (std::size_t k = 0; k < cols; ++k) h(i, k) -= q * h(r, k);
                if (h(i, c) != 0) done = false;
            }
            if (done) break;
        }
        if (h(r, c) == 0) continue;
        if (h(r, c) < 0)
            for (std::size_t k = 0; k < cols; ++k) h(r, k) = -h(r, k);
        for (std::size_t i = 0; i < r; ++i) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), h(i, c).get_mpz_t(), h(r, c).get_mpz_t());
            if (q != 0)
                for (std::size_t k = 0; k < cols; ++k) h(i, k) -= q * h(r, k);
        }
        ++r;
    }
    IntMatrix out(r, cols);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t k = 0; k < cols; ++k) out(i, k) = h(i, k);
    return out;
}

Int determinant(const IntMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("determinant of non-square matrix");
    const std::size_t n = a.rows();
    if (n == 0) return 1;
    IntMatrix m = a;
    Int sign = 1;
    Int prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && m(p, k) == 0) ++p;
            if (p == n) return 0;
            m.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                m(i, j) = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                m(i, j) /= prev;  // exact by Sylvester's identity
            }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

RatMatrix reduced_row_echelon(const RatMatrix& a, std::vector<std::size_t>* pivots) {
    RatMatrix m = a;
    std::vector<std::size_t> piv;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m(p, c) == 0) ++p;
        if (p == m.rows()) continue;
        m.swap_rows(r, p);
        Rat inv = 1 / m(r, c);
        for (std::size_t k = c; k < m.cols(); ++k) m(r, k) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c) == 0) continue;
            Rat f = m(i, c);
            for (std::size_t k = c; k < m.cols(); ++k) m(i, k) -= f * m(r, k);
        }
        piv.push_back(c);
        ++r;
    }
    if (pivots) *pivots = std::move(piv);
    return m;
}

std::size_t rank(const RatMatrix& a) {
    std::vector<std::size_t> piv;
    reduced_row_echelon(a, &piv);
    return piv.size();
}

std::vector<RatVector> rational_kernel(const RatMatrix& a) {
    std::vector<std::size_t> piv;
    RatMatrix r = reduced_row_echelon(a, &piv);
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto p : piv) is_pivot[p] = true;
    std::vector<RatVector> basis;
    for (std::size_t f = 0; f < a.cols(); ++f) {
        if (is_pivot[f]) continue;
        RatVector x(a.cols());
        x[f] = 1;
        for (std::size_t k = 0; k < piv.size(); ++k) x[piv[k]] = -r(k, f);
        basis.push_back(std::move(x));
    }
    return basis;
}

std::optional<RatVector> solve_square(const RatMatrix& a, const RatVector& b) {
    if (a.rows() != a.cols() || b.size() != a.rows())
        throw std::invalid_argument("solve_square: shape mismatch");
    const std::size_t n = a.rows();
    RatMatrix aug(n, n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
        aug(i, n) = b[i];
    }
    std::vector<std::size_t> piv;
    RatMatrix r = reduced_row_echelon(aug, &piv);
    if (piv.size() != n || (n > 0 && piv.back() != n - 1)) return std::nullopt;
    RatVector x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = r(i, n);
    return x;
}

IntMatrix unimodular_inverse(const IntMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("inverse of non-square matrix");
    const std::size_t n = a.rows();
    RatMatrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = Rat(a(i, j));
        aug(i, n + i) = 1;
    }
    std::vector<std::size_t> piv;
    RatMatrix r = reduced_row_echelon(aug, &piv);
    if (piv.size() < n || (n > 0 && piv[n - 1] != n - 1)) throw std::domain_error("matrix is singular");
    IntMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Rat& x = r(i, n + j);
            if (x.get_den() != 1) throw std::domain_error("matrix is not unimodular");
            inv(i, j) = x.get_num();
        }
    return inv;
}

int affine_dim(std::span<const RatVector> points) {
    if (points.empty()) return -1;
    const std::size_t len = points.front().size();
    RatMatrix diffs(points.size() - 1, len);
    for (std::size_t i = 1; i < points.size(); ++i) {
        if (points[i].size() != len) throw std::invalid_argument("affine_dim: points of different length");
        for (std::size_t k = 0; k < len; ++k) diffs(i - 1, k) = points[i][k] - points.front()[k];
    }
    return static_cast<int>(rank(diffs));
}

// ---------------------------------------------------------------------------
// Constraints and systems

bool Constraint::is_constant() const {
    return std::all_of(coeffs.begin(), coeffs.end(), [](const Rat& c) { return c == 0; });
}

bool Constraint::holds_trivially() const {
    switch (rel) {
        case Relation::Geq: return 0 >= rhs;
        case Relation::Gt: return 0 > rhs;
        case Relation::Eq: return rhs == 0;
    }
    return false;
}

bool Constraint::satisfied_by(const RatVector& x) const {
    Rat lhs = dot(coeffs, x);
    switch (rel) {
        case Relation::Geq: return lhs >= rhs;
        case Relation::Gt: return lhs > rhs;
        case Relation::Eq: return lhs == rhs;
    }
    return false;
}

void LinearSystem::add(Constraint row) {
    if (row.coeffs.size() != vars_) throw std::invalid_argument("constraint has wrong number of coefficients");
    rows_.push_back(std::move(row));
}

void LinearSystem::add(RatVector coeffs, Relation rel, Rat rhs) {
    add(Constraint{std::move(coeffs), std::move(rhs), rel});
}

bool LinearSystem::has_strict() const {
    return std::any_of(rows_.begin(), rows_.end(), [](const Constraint& c) { return c.rel == Relation::Gt; });
}

bool LinearSystem::trivially_inconsistent() const {
    return std::any_of(rows_.begin(), rows_.end(),
                       [](const Constraint& c) { return c.is_constant() && !c.holds_trivially(); });
}

bool LinearSystem::satisfied_by(const RatVector& x) const {
    return std::all_of(rows_.begin(), rows_.end(), [&](const Constraint& c) { return c.satisfied_by(x); });
}

namespace {

void scale_primitive(Constraint& row) {
    Int den = 1;
    for (const auto& c : row.coeffs) den = lcm(den, Int(c.get_den()));
    Int g = 0;
    for (const auto& c : row.coeffs) g = gcd(g, Int(Rat(c * den).get_num()));
    Rat factor = Rat(den) / g;
    for (auto& c : row.coeffs) c *= factor;
    row.rhs *= factor;
    if (row.rel == Relation::Eq) {
        auto first = std::find_if(row.coeffs.begin(), row.coeffs.end(), [](const Rat& c) { return c != 0; });
        if (*first < 0) {
            for (auto& c : row.coeffs) c = -c;
            row.rhs = -row.rhs;
        }
    }
}

bool tighter(const Constraint& a, const Constraint& b) {
    if (a.rhs != b.rhs) return a.rhs > b.rhs;
    return a.rel == Relation::Gt && b.rel != Relation::Gt;
}

}  // namespace

void LinearSystem::normalize() {
    std::vector<Constraint> out;
    std::map<std::pair<bool, RatVector>, std::size_t> seen;
    bool contradiction = false;
    for (auto row : rows_) {
        if (row.is_constant()) {
            if (!row.holds_trivially()) contradiction = true;
            continue;
        }
        scale_primitive(row);
        const bool eq = row.rel == Relation::Eq;
        auto key = std::make_pair(eq, row.coeffs);
        auto it = seen.find(key);
        if (it == seen.end()) {
            seen.emplace(std::move(key), out.size());
            out.push_back(std::move(row));
        } else if (eq) {
            if (out[it->second].rhs != row.rhs) contradiction = true;
        } else if (tighter(row, out[it->second])) {
            out[it->second] = std::move(row);
        }
    }
    if (contradiction) {
        out.clear();
        out.push_back(Constraint{RatVector(vars_), Rat(1), Relation::Geq});
    }
    rows_ = std::move(out);
}

LinearSystem LinearSystem::substitute(std::size_t var, const Rat& value) const {
    LinearSystem out(vars_);
    for (auto row : rows_) {
        row.rhs -= row.coeffs[var] * value;
        row.coeffs[var] = 0;
        out.rows_.push_back(std::move(row));
    }
    return out;
}

std::string LinearSystem::to_string() const {
    std::ostringstream os;
    for (const auto& row : rows_) {
        bool first = true;
        for (std::size_t j = 0; j < vars_; ++j) {
            if (row.coeffs[j] == 0) continue;
            if (!first) os << " + ";
            os << row.coeffs[j] << "*x" << j;
            first = false;
        }
        if (first) os << "0";
        os << (row.rel == Relation::Geq ? " >= " : row.rel == Relation::Gt ? " > " : " = ") << row.rhs << "\n";
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Fourier-Motzkin

namespace {

// Eliminates `var` keeping the column (zeroed) so indices stay stable.
LinearSystem eliminate_in_place(const LinearSystem& sys, std::size_t var) {
    const auto& rows = sys.rows();
    LinearSystem out(sys.vars());

    auto eq = std::find_if(rows.begin(), rows.end(),
                           [&](const Constraint& c) { return c.rel == Relation::Eq && c.coeffs[var] != 0; });
    if (eq != rows.end()) {
        const Constraint& pivot = *eq;
        for (const auto& row : rows) {
            if (&row == &pivot) continue;
            if (row.coeffs[var] == 0) {
                out.add(row);
                continue;
            }
            Rat f = row.coeffs[var] / pivot.coeffs[var];
            Constraint c = row;
            for (std::size_t j = 0; j < c.coeffs.size(); ++j) c.coeffs[j] -= f * pivot.coeffs[j];
            c.coeffs[var] = 0;
            c.rhs -= f * pivot.rhs;
            out.add(std::move(c));
        }
        out.normalize();
        return out;
    }

    std::vector<const Constraint*> pos, neg;
    for (const auto& row : rows) {
        if (row.coeffs[var] > 0)
            pos.push_back(&row);
        else if (row.coeffs[var] < 0)
            neg.push_back(&row);
        else
            out.add(row);
    }
    for (const Constraint* p : pos)
        for (const Constraint* n : neg) {
            Rat fp = 1 / p->coeffs[var];
            Rat fn = -1 / n->coeffs[var];
            Constraint c;
            c.coeffs.resize(sys.vars());
            for (std::size_t j = 0; j < sys.vars(); ++j) c.coeffs[j] = fp * p->coeffs[j] + fn * n->coeffs[j];
            c.coeffs[var] = 0;
            c.rhs = fp * p->rhs + fn * n->rhs;
            c.rel = (p->rel == Relation::Gt || n->rel == Relation::Gt) ? Relation::Gt : Relation::Geq;
            out.add(std::move(c));
        }
    out.normalize();
    return out;
}

bool mentions(const LinearSystem& sys, std::size_t var) {
    return std::any_of(sys.rows().begin(), sys.rows().end(), [&](const Constraint& c) { return c.coeffs[var] != 0; });
}

// Fewest strict rows first, ties broken by lowest index. Only variables that
// still appear in some row (and are not excluded) are candidates.
std::optional<std::size_t> next_variable(const LinearSystem& sys, const std::vector<bool>& excluded) {
    std::optional<std::size_t> best;
    std::size_t best_strict = 0;
    for (std::size_t v = 0; v < sys.vars(); ++v) {
        if (excluded[v] || !mentions(sys, v)) continue;
        std::size_t strict = 0;
        for (const auto& row : sys.rows())
            if (row.coeffs[v] != 0 && row.rel == Relation::Gt) ++strict;
        if (!best || strict < best_strict) {
            best = v;
            best_strict = strict;
        }
    }
    return best;
}

LinearSystem drop_column(const LinearSystem& sys, std::size_t var) {
    LinearSystem out(sys.vars() - 1);
    for (const auto& row : sys.rows()) {
        Constraint c;
        c.rel = row.rel;
        c.rhs = row.rhs;
        c.coeffs.reserve(sys.vars() - 1);
        for (std::size_t j = 0; j < sys.vars(); ++j)
            if (j != var) c.coeffs.push_back(row.coeffs[j]);
        out.add(std::move(c));
    }
    return out;
}

// Interval summary of single-variable rows a*x (rel) b.
struct Interval {
    bool empty = false;
    std::optional<Rat> exact;
    std::optional<Rat> lower, upper;
    bool lower_strict = false, upper_strict = false;
};

void tighten_lower(Interval& iv, const Rat& v, bool strict) {
    if (!iv.lower || v > *iv.lower || (v == *iv.lower && strict)) {
        iv.lower = v;
        iv.lower_strict = strict;
    }
}

void tighten_upper(Interval& iv, const Rat& v, bool strict) {
    if (!iv.upper || v < *iv.upper || (v == *iv.upper && strict)) {
        iv.upper = v;
        iv.upper_strict = strict;
    }
}

Interval interval_of(const LinearSystem& sys, std::size_t var, const RatVector& known) {
    Interval iv;
    for (const auto& row : sys.rows()) {
        Rat rest = row.rhs;
        for (std::size_t j = 0; j < sys.vars(); ++j)
            if (j != var) rest -= row.coeffs[j] * known[j];
        const Rat& a = row.coeffs[var];
        if (a == 0) {
            Constraint c{RatVector(), rest, row.rel};
            if (!c.holds_trivially()) iv.empty = true;
            continue;
        }
        Rat bound = rest / a;
        const bool strict = row.rel == Relation::Gt;
        if (row.rel == Relation::Eq) {
            if (iv.exact && *iv.exact != bound) iv.empty = true;
            iv.exact = bound;
            tighten_lower(iv, bound, false);
            tighten_upper(iv, bound, false);
        } else if (a > 0) {
            tighten_lower(iv, bound, strict);
        } else {
            tighten_upper(iv, bound, strict);
        }
    }
    if (iv.lower && iv.upper) {
        if (*iv.lower > *iv.upper) iv.empty = true;
        if (*iv.lower == *iv.upper && (iv.lower_strict || iv.upper_strict)) iv.empty = true;
    }
    return iv;
}

Int ceil_of(const Rat& x) {
    Int r;
    mpz_cdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return r;
}

Int floor_of(const Rat& x) {
    Int r;
    mpz_fdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return r;
}

bool inside(const Interval& iv, const Rat& x) {
    if (iv.lower && (x < *iv.lower || (iv.lower_strict && x == *iv.lower))) return false;
    if (iv.upper && (x > *iv.upper || (iv.upper_strict && x == *iv.upper))) return false;
    return true;
}

// Integer closest to zero inside the interval, else a midpoint.
Rat pick_value(const Interval& iv) {
    if (iv.exact) return *iv.exact;
    if (inside(iv, Rat(0))) return 0;
    if (iv.lower && *iv.lower >= 0) {
        Int c = iv.lower_strict ? floor_of(*iv.lower) + 1 : ceil_of(*iv.lower);
        if (inside(iv, Rat(c))) return Rat(c);
    } else if (iv.upper && *iv.upper <= 0) {
        Int c = iv.upper_strict ? ceil_of(*iv.upper) - 1 : floor_of(*iv.upper);
        if (inside(iv, Rat(c))) return Rat(c);
    }
    assert(iv.lower && iv.upper);
    Rat mid = (*iv.lower + *iv.upper) / 2;
    mid.canonicalize();
    return mid;
}

}  // namespace

LinearSystem fm_eliminate(const LinearSystem& sys, std::size_t var) {
    if (var >= sys.vars()) throw std::out_of_range("fm_eliminate: variable index out of range");
    LinearSystem norm = sys;
    norm.normalize();
    return drop_column(eliminate_in_place(norm, var), var);
}

FeasibilityResult feasible(const LinearSystem& sys) {
    LinearSystem work = sys;
    work.normalize();
    std::vector<std::pair<LinearSystem, std::size_t>> stages;
    const std::vector<bool> none(sys.vars(), false);
    while (!work.trivially_inconsistent()) {
        auto v = next_variable(work, none);
        if (!v) break;
        LinearSystem next = eliminate_in_place(work, *v);
        stages.emplace_back(std::move(work), *v);
        work = std::move(next);
    }
    if (work.trivially_inconsistent()) return {};

    RatVector x(sys.vars());
    for (auto it = stages.rbegin(); it != stages.rend(); ++it) {
        Interval iv = interval_of(it->first, it->second, x);
        assert(!iv.empty);
        x[it->second] = pick_value(iv);
    }
    assert(sys.satisfied_by(x));
    return {true, std::move(x)};
}

VariableBounds variable_bounds(const LinearSystem& sys, std::size_t var) {
    if (var >= sys.vars()) throw std::out_of_range("variable_bounds: variable index out of range");
    LinearSystem work = sys;
    work.normalize();
    std::vector<bool> keep(sys.vars(), false);
    keep[var] = true;
    while (!work.trivially_inconsistent()) {
        auto v = next_variable(work, keep);
        if (!v) break;
        work = eliminate_in_place(work, *v);
    }
    VariableBounds out;
    if (work.trivially_inconsistent()) {
        out.empty = true;
        return out;
    }
    Interval iv = interval_of(work, var, RatVector(sys.vars()));
    out.empty = iv.empty;
    out.lower = iv.lower;
    out.upper = iv.upper;
    out.lower_strict = iv.lower_strict;
    out.upper_strict = iv.upper_strict;
    return out;
}

// ---------------------------------------------------------------------------
// Lattice points

namespace {

class LatticeSearch {
public:
    LatticeSearch(std::size_t vars, std::size_t cap, bool first_only)
        : cap_(cap), first_only_(first_only), current_(vars), fixed_(vars, false) {}

    LatticeResult run(const LinearSystem& sys) {
        LatticeResult out;
        if (cap_ == 0) {
            out.status = LatticeStatus::CapExceeded;
            return out;
        }
        LinearSystem norm = sys;
        norm.normalize();
        descend(norm, false);
        out.candidates = used_;
        if (cap_hit_) {
            out.status = LatticeStatus::CapExceeded;
        } else if (unbounded_hit_) {
            out.status = LatticeStatus::UnboundedWithLatticePoint;
            out.points = std::move(points_);
            out.recession = std::move(recession_);
        } else if (points_.empty()) {
            out.status = LatticeStatus::Infeasible;
        } else {
            std::sort(points_.begin(), points_.end());
            out.status = LatticeStatus::Points;
            out.points = std::move(points_);
        }
        return out;
    }

private:
    bool stopped() const { return cap_hit_ || unbounded_hit_ || (first_only_ && !points_.empty()); }

    bool spend() {
        if (++used_ > cap_) cap_hit_ = true;
        return !cap_hit_;
    }

    void record_point(bool in_unbounded_fiber) {
        points_.push_back(current_);
        if (in_unbounded_fiber) unbounded_hit_ = true;
    }

    // Primitive integer direction of the recession cone that moves `var`
    // in the unbounded direction.
    void find_recession(const LinearSystem& sys, std::size_t var, bool upward) {
        LinearSystem homog(sys.vars());
        for (const auto& row : sys.rows()) homog.add(row.coeffs, row.rel, Rat(0));
        for (std::size_t j = 0; j < sys.vars(); ++j) {
            if (!fixed_[j]) continue;
            RatVector e(sys.vars());
            e[j] = 1;
            homog.add(std::move(e), Relation::Eq, Rat(0));
        }
        RatVector e(sys.vars());
        e[var] = upward ? 1 : -1;
        homog.add(std::move(e), Relation::Geq, Rat(1));
        auto res = feasible(homog);
        if (res.feasible) recession_ = primitive_integer(res.witness);
    }

    void descend(const LinearSystem& sys, bool in_unbounded_fiber) {
        if (stopped()) return;
        if (sys.trivially_inconsistent()) return;

        std::optional<std::size_t> chosen;
        std::optional<std::pair<std::size_t, VariableBounds>> unbounded;
        VariableBounds bounds;
        for (std::size_t v = 0; v < fixed_.size(); ++v) {
            if (fixed_[v]) continue;
            VariableBounds b = variable_bounds(sys, v);
            if (b.empty) return;
            if (b.lower && b.upper) {
                chosen = v;
                bounds = std::move(b);
                break;
            }
            if (!unbounded) unbounded = std::make_pair(v, std::move(b));
        }

        if (!chosen && !unbounded) {
            record_point(in_unbounded_fiber);
            return;
        }

        if (chosen) {
            const std::size_t v = *chosen;
            fixed_[v] = true;
            for (Int t = ceil_of(*bounds.lower); t <= floor_of(*bounds.upper) && !stopped(); ++t) {
                if (!spend()) break;
                current_[v] = t;
                descend(sys.substitute(v, Rat(t)), in_unbounded_fiber);
            }
            fixed_[v] = false;
            current_[v] = 0;
            return;
        }

        const std::size_t v = unbounded->first;
        const VariableBounds& b = unbounded->second;
        if (recession_.empty()) find_recession(sys, v, !b.upper);
        fixed_[v] = true;
        // Walk outward from the finite end, or zig-zag around 0 when free.
        for (std::size_t step = 0; !stopped(); ++step) {
            if (!spend()) break;
            Int t;
            if (b.lower)
                t = ceil_of(*b.lower) + Int(static_cast<unsigned long>(step));
            else if (b.upper)
                t = floor_of(*b.upper) - Int(static_cast<unsigned long>(step));
            else
                t = (step % 2 == 1) ? Int(static_cast<unsigned long>((step + 1) / 2))
                                    : -Int(static_cast<unsigned long>(step / 2));
            current_[v] = t;
            descend(sys.substitute(v, Rat(t)), true);
        }
        fixed_[v] = false;
        current_[v] = 0;
    }

    std::size_t cap_;
    bool first_only_;
    IntVector current_;
    std::vector<bool> fixed_;
    std::size_t used_ = 0;
    bool cap_hit_ = false;
    bool unbounded_hit_ = false;
    std::vector<IntVector> points_;
    IntVector recession_;
};

LatticeResult lattice_search(const LinearSystem& sys, std::size_t cap, bool first_only) {
    if (sys.has_strict()) throw std::invalid_argument("integer_points: strict rows are not supported");
    return LatticeSearch(sys.vars(), cap, first_only).run(sys);
}

}  // namespace

LatticeResult integer_points(const LinearSystem& sys, std::size_t cap) { return lattice_search(sys, cap, false); }

LatticeResult first_integer_point(const LinearSystem& sys, std::size_t cap) { return lattice_search(sys, cap, true); }

std::string to_string(LatticeStatus s) {
    switch (s) {
        case LatticeStatus::Points: return "Points";
        case LatticeStatus::Infeasible: return "Infeasible";
        case LatticeStatus::CapExceeded: return "CapExceeded";
        case LatticeStatus::UnboundedWithLatticePoint: return "UnboundedWithLatticePoint";
    }
    return "?";
}

}  // namespace htriv
