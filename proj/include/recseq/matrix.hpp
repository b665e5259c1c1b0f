#pragma once

// Small dense matrices over an arbitrary commutative scalar type. The same
// template serves constant number-field entries and sequence-valued entries;
// scalar behavior is injected through ADL shims (zero_like, one_like,
// is_zero_val, complexity_of).

#include <utility>
#include <vector>

#include "recseq/number_field.hpp"

namespace recseq {

// scalar shims for number-field elements
inline NFElement zero_like(const NFElement& x) { return x.field()->zero(); }
inline NFElement one_like(const NFElement& x) { return x.field()->one(); }
inline bool is_zero_val(const NFElement& x) { return x.is_zero(); }
inline long complexity_of(const NFElement&) { return 0; }

template <class T>
class Matrix {
  public:
    Matrix() = default;
    Matrix(size_t rows, size_t cols, const T& fill) : rows_(rows), cols_(cols), a_(rows * cols, fill) {}

    static Matrix identity(size_t n, const T& sample) {
        Matrix m(n, n, zero_like(sample));
        for (size_t i = 0; i < n; ++i) m.at(i, i) = one_like(sample);
        return m;
    }

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    T& at(size_t i, size_t j) { return a_[i * cols_ + j]; }
    const T& at(size_t i, size_t j) const { return a_[i * cols_ + j]; }

    Matrix operator*(const Matrix& o) const {
        if (cols_ != o.rows_) throw domain_error(errc::invalid_input, "matrix dimension mismatch");
        Matrix r(rows_, o.cols_, zero_like(a_[0]));
        for (size_t i = 0; i < rows_; ++i)
            for (size_t k = 0; k < cols_; ++k) {
                const T& aik = at(i, k);
                if (is_zero_val(aik)) continue;
                for (size_t j = 0; j < o.cols_; ++j) r.at(i, j) = r.at(i, j) + aik * o.at(k, j);
            }
        return r;
    }

    Matrix operator+(const Matrix& o) const {
        Matrix r = *this;
        for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = r.a_[i] + o.a_[i];
        return r;
    }

    std::vector<T> apply_row(const std::vector<T>& v) const {  // v * M
        std::vector<T> r(cols_, zero_like(a_[0]));
        for (size_t j = 0; j < cols_; ++j)
            for (size_t i = 0; i < rows_; ++i) r[j] = r[j] + v[i] * at(i, j);
        return r;
    }

    std::vector<T> apply_col(const std::vector<T>& v) const {  // M * v
        std::vector<T> r(rows_, zero_like(a_[0]));
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j) r[i] = r[i] + at(i, j) * v[j];
        return r;
    }

    // direct sum: block diagonal
    Matrix dsum(const Matrix& o) const {
        Matrix r(rows_ + o.rows_, cols_ + o.cols_, zero_like(a_[0]));
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
        for (size_t i = 0; i < o.rows_; ++i)
            for (size_t j = 0; j < o.cols_; ++j) r.at(rows_ + i, cols_ + j) = o.at(i, j);
        return r;
    }

    // Kronecker product
    Matrix kron(const Matrix& o) const {
        Matrix r(rows_ * o.rows_, cols_ * o.cols_, zero_like(a_[0]));
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j)
                for (size_t p = 0; p < o.rows_; ++p)
                    for (size_t q = 0; q < o.cols_; ++q)
                        r.at(i * o.rows_ + p, j * o.cols_ + q) = at(i, j) * o.at(p, q);
        return r;
    }

    template <class F>
    auto map(F&& f) const {
        using U = decltype(f(a_[0]));
        Matrix<U> r(rows_, cols_, f(a_[0]));
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j) r.at(i, j) = f(at(i, j));
        return r;
    }

  private:
    size_t rows_ = 0, cols_ = 0;
    std::vector<T> a_;
};

// Gauss-Jordan inverse over a field-like scalar.
template <class T>
Matrix<T> matrix_inverse(const Matrix<T>& m) {
    if (m.rows() != m.cols()) throw domain_error(errc::invalid_input, "inverse of non-square matrix");
    size_t n = m.rows();
    Matrix<T> a = m;
    Matrix<T> inv = Matrix<T>::identity(n, m.at(0, 0));
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && is_zero_val(a.at(piv, col))) ++piv;
        if (piv == n) throw domain_error(errc::zero_division, "singular matrix");
        if (piv != col)
            for (size_t j = 0; j < n; ++j) {
                std::swap(a.at(piv, j), a.at(col, j));
                std::swap(inv.at(piv, j), inv.at(col, j));
            }
        T d = a.at(col, col);
        for (size_t j = 0; j < n; ++j) {
            a.at(col, j) = a.at(col, j) / d;
            inv.at(col, j) = inv.at(col, j) / d;
        }
        for (size_t i = 0; i < n; ++i) {
            if (i == col || is_zero_val(a.at(i, col))) continue;
            T f = a.at(i, col);
            for (size_t j = 0; j < n; ++j) {
                a.at(i, j) = a.at(i, j) - f * a.at(col, j);
                inv.at(i, j) = inv.at(i, j) - f * inv.at(col, j);
            }
        }
    }
    return inv;
}

inline Matrix<NFElement> matrix_pow(const Matrix<NFElement>& m, const Int& e) {
    if (m.rows() != m.cols()) throw domain_error(errc::invalid_input, "power of non-square matrix");
    Matrix<NFElement> base = sgn(e) < 0 ? matrix_inverse(m) : m;
    Int n = abs(e);
    Matrix<NFElement> acc = Matrix<NFElement>::identity(m.rows(), m.at(0, 0));
    while (sgn(n) > 0) {
        if (mpz_odd_p(n.get_mpz_t())) acc = acc * base;
        base = base * base;
        n >>= 1;
    }
    return acc;
}

// Characteristic polynomial (monic, ascending coefficients) by the
// Faddeev-LeVerrier recurrence; exact over characteristic zero.
inline NFPoly charpoly(const Matrix<NFElement>& m) {
    if (m.rows() != m.cols()) throw domain_error(errc::invalid_input, "charpoly of non-square matrix");
    size_t n = m.rows();
    const FieldPtr& F = m.at(0, 0).field();
    std::vector<NFElement> c(n + 1, F->zero());
    c[n] = F->one();
    Matrix<NFElement> Mk = m;
    for (size_t k = 1; k <= n; ++k) {
        NFElement tr = F->zero();
        for (size_t i = 0; i < n; ++i) tr = tr + Mk.at(i, i);
        NFElement ck = tr * make_rat(Int(-1), Int(static_cast<long>(k)));
        c[n - k] = ck;
        if (k == n) break;
        for (size_t i = 0; i < n; ++i) Mk.at(i, i) = Mk.at(i, i) + ck;
        Mk = m * Mk;
    }
    return NFPoly(F, std::move(c));
}

}  // namespace recseq
