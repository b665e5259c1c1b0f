#pragma once

// Exact lattice kernels: rational Gram-Schmidt, LLL reduction with delta=3/4,
// Smith normal form with unimodular transforms, Hermite normal form, and the
// invariant factor. Everything is plain integer/rational arithmetic; the
// sizes here are small so clarity wins over asymptotics.

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "recseq/rational.hpp"

namespace recseq {

using VecQ = std::vector<Rat>;

inline Rat dot(const VecQ& a, const VecQ& b) {
    Rat s(0);
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}
inline Rat norm2(const VecQ& v) { return dot(v, v); }

struct GramSchmidt {
    std::vector<VecQ> orth;             // mutually orthogonal
    std::vector<std::vector<Rat>> mu;   // lower triangular, mu[i][i] = 1
    std::vector<Rat> B;                 // |orth_i|^2
};

inline GramSchmidt gram_schmidt(const std::vector<VecQ>& basis) {
    GramSchmidt g;
    size_t n = basis.size();
    g.mu.assign(n, std::vector<Rat>(n, Rat(0)));
    for (size_t i = 0; i < n; ++i) {
        VecQ v = basis[i];
        for (size_t j = 0; j < i; ++j) {
            Rat m = dot(basis[i], g.orth[j]) / g.B[j];
            g.mu[i][j] = m;
            for (size_t t = 0; t < v.size(); ++t) v[t] -= m * g.orth[j][t];
        }
        g.mu[i][i] = 1;
        Rat b = norm2(v);
        if (sgn(b) == 0) throw domain_error(errc::dependent_input, "linearly dependent vectors");
        g.orth.push_back(std::move(v));
        g.B.push_back(std::move(b));
    }
    return g;
}

// LLL reduction, Lovasz constant delta = 3/4. Exact rational arithmetic;
// Gram-Schmidt data is recomputed after structural changes (the bases here
// are a handful of vectors, so this stays cheap and obviously correct).
inline std::vector<VecQ> lll_reduce(std::vector<VecQ> b, const Rat& delta = Rat(3, 4)) {
    size_t n = b.size();
    if (n <= 1) return b;
    GramSchmidt g = gram_schmidt(b);
    auto size_reduce = [&](size_t k, size_t j) {
        Int r = rat_round(g.mu[k][j]);
        if (sgn(r) == 0) return false;
        Rat rq(r);
        for (size_t t = 0; t < b[k].size(); ++t) b[k][t] -= rq * b[j][t];
        return true;
    };
    size_t k = 1;
    while (k < n) {
        bool changed = size_reduce(k, k - 1);
        if (changed) g = gram_schmidt(b);
        if (g.B[k] < (delta - g.mu[k][k - 1] * g.mu[k][k - 1]) * g.B[k - 1]) {
            std::swap(b[k], b[k - 1]);
            g = gram_schmidt(b);
            k = k > 1 ? k - 1 : 1;
        } else {
            bool any = false;
            for (size_t j = k - 1; j-- > 0;) any |= size_reduce(k, j);
            if (any) g = gram_schmidt(b);
            ++k;
        }
    }
    return b;
}

// ------------------------------------------------------------------- SNF ---

struct IntMatrix {
    size_t rows = 0, cols = 0;
    std::vector<Int> a;

    IntMatrix() = default;
    IntMatrix(size_t r, size_t c) : rows(r), cols(c), a(r * c, Int(0)) {}
    Int& at(size_t i, size_t j) { return a[i * cols + j]; }
    const Int& at(size_t i, size_t j) const { return a[i * cols + j]; }

    static IntMatrix identity(size_t n) {
        IntMatrix m(n, n);
        for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }
    static IntMatrix from_columns(const std::vector<std::vector<Int>>& cols_in) {
        if (cols_in.empty()) return IntMatrix();
        IntMatrix m(cols_in[0].size(), cols_in.size());
        for (size_t j = 0; j < cols_in.size(); ++j)
            for (size_t i = 0; i < cols_in[j].size(); ++i) m.at(i, j) = cols_in[j][i];
        return m;
    }

    IntMatrix operator*(const IntMatrix& o) const {
        if (cols != o.rows) throw domain_error(errc::invalid_input, "dimension mismatch");
        IntMatrix r(rows, o.cols);
        for (size_t i = 0; i < rows; ++i)
            for (size_t k = 0; k < cols; ++k) {
                if (sgn(at(i, k)) == 0) continue;
                for (size_t j = 0; j < o.cols; ++j) r.at(i, j) += at(i, k) * o.at(k, j);
            }
        return r;
    }
    bool operator==(const IntMatrix& o) const { return rows == o.rows && cols == o.cols && a == o.a; }

    IntMatrix transpose() const {
        IntMatrix t(cols, rows);
        for (size_t i = 0; i < rows; ++i)
            for (size_t j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
        return t;
    }
};

// Fraction-free determinant (Bareiss).
inline Int det_int(const IntMatrix& m_in) {
    if (m_in.rows != m_in.cols) throw domain_error(errc::invalid_input, "determinant of non-square matrix");
    size_t n = m_in.rows;
    if (n == 0) return Int(1);
    IntMatrix m = m_in;
    Int prev(1);
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (sgn(m.at(k, k)) == 0) {
            size_t piv = k + 1;
            while (piv < n && sgn(m.at(piv, k)) == 0) ++piv;
            if (piv == n) return Int(0);
            for (size_t j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(piv, j));
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j) {
                Int v = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                m.at(i, j) = v;
            }
        prev = m.at(k, k);
    }
    return sign > 0 ? m.at(n - 1, n - 1) : Int(-m.at(n - 1, n - 1));
}

struct SNFResult {
    IntMatrix P, D, Q;  // P*V*Q = D
};

// Smith normal form by elementary operations; pivots chosen by least
// absolute value. Returns unimodular P, Q (verified) and the diagonal D with
// the divisibility chain d_i | d_{i+1}.
inline SNFResult smith_normal_form(const IntMatrix& V) {
    size_t m = V.rows, n = V.cols;
    SNFResult r;
    r.D = V;
    r.P = IntMatrix::identity(m);
    r.Q = IntMatrix::identity(n);
    IntMatrix& D = r.D;

    auto row_sub = [&](size_t i, size_t j, const Int& q) {  // row_i -= q*row_j
        for (size_t t = 0; t < n; ++t) D.at(i, t) -= q * D.at(j, t);
        for (size_t t = 0; t < m; ++t) r.P.at(i, t) -= q * r.P.at(j, t);
    };
    auto col_sub = [&](size_t i, size_t j, const Int& q) {  // col_i -= q*col_j
        for (size_t t = 0; t < m; ++t) D.at(t, i) -= q * D.at(t, j);
        for (size_t t = 0; t < n; ++t) r.Q.at(t, i) -= q * r.Q.at(t, j);
    };
    auto row_swap = [&](size_t i, size_t j) {
        if (i == j) return;
        for (size_t t = 0; t < n; ++t) std::swap(D.at(i, t), D.at(j, t));
        for (size_t t = 0; t < m; ++t) std::swap(r.P.at(i, t), r.P.at(j, t));
    };
    auto col_swap = [&](size_t i, size_t j) {
        if (i == j) return;
        for (size_t t = 0; t < m; ++t) std::swap(D.at(t, i), D.at(t, j));
        for (size_t t = 0; t < n; ++t) std::swap(r.Q.at(t, i), r.Q.at(t, j));
    };
    auto row_negate = [&](size_t i) {
        for (size_t t = 0; t < n; ++t) D.at(i, t) = -D.at(i, t);
        for (size_t t = 0; t < m; ++t) r.P.at(i, t) = -r.P.at(i, t);
    };

    size_t k = 0;
    while (k < m && k < n) {
        // locate the least nonzero |entry| in the trailing submatrix
        bool found = false;
        size_t pi = k, pj = k;
        Int best;
        for (size_t i = k; i < m; ++i)
            for (size_t j = k; j < n; ++j) {
                if (sgn(D.at(i, j)) == 0) continue;
                Int v = abs(D.at(i, j));
                if (!found || v < best) {
                    found = true;
                    best = v;
                    pi = i;
                    pj = j;
                }
            }
        if (!found) break;
        row_swap(k, pi);
        col_swap(k, pj);
        if (sgn(D.at(k, k)) < 0) row_negate(k);

        bool clean = true;
        for (size_t i = k + 1; i < m; ++i) {
            if (sgn(D.at(i, k)) == 0) continue;
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), D.at(i, k).get_mpz_t(), D.at(k, k).get_mpz_t());
            row_sub(i, k, q);
            if (sgn(D.at(i, k)) != 0) clean = false;
        }
        for (size_t j = k + 1; j < n; ++j) {
            if (sgn(D.at(k, j)) == 0) continue;
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), D.at(k, j).get_mpz_t(), D.at(k, k).get_mpz_t());
            col_sub(j, k, q);
            if (sgn(D.at(k, j)) != 0) clean = false;
        }
        if (!clean) continue;  // smaller pivot appeared; repeat this k

        // ensure the pivot divides the rest of the submatrix
        bool divides_all = true;
        for (size_t i = k + 1; i < m && divides_all; ++i)
            for (size_t j = k + 1; j < n && divides_all; ++j)
                if (sgn(D.at(i, j) % D.at(k, k)) != 0) {
                    row_sub(k, i, Int(-1));  // add row i to row k, then repeat
                    divides_all = false;
                }
        if (!divides_all) continue;
        ++k;
    }

    // verification of the unimodular transforms and the product
    if (m > 0 && abs(det_int(r.P)) != 1) throw domain_error(errc::internal, "SNF: P not unimodular");
    if (n > 0 && abs(det_int(r.Q)) != 1) throw domain_error(errc::internal, "SNF: Q not unimodular");
    IntMatrix check = (r.P * V) * r.Q;
    if (!(check == r.D)) throw domain_error(errc::internal, "SNF: transform check failed");
    for (size_t i = 0; i + 1 < std::min(m, n); ++i) {
        if (sgn(D.at(i + 1, i + 1)) != 0 && sgn(D.at(i, i)) == 0)
            throw domain_error(errc::internal, "SNF: zero before nonzero on diagonal");
        if (sgn(D.at(i, i)) != 0 && sgn(D.at(i + 1, i + 1) % D.at(i, i)) != 0)
            throw domain_error(errc::internal, "SNF: divisibility chain broken");
    }
    return r;
}

// Largest nonzero diagonal entry of the Smith normal form; 1 for the zero
// (or empty) matrix, matching the trivial lattice whose torsion number is 1.
inline Int invariant_factor(const IntMatrix& V) {
    if (V.rows == 0 || V.cols == 0) return Int(1);
    SNFResult s = smith_normal_form(V);
    Int last(1);
    for (size_t i = 0; i < std::min(V.rows, V.cols); ++i)
        if (sgn(s.D.at(i, i)) != 0) last = s.D.at(i, i);
    return last;
}

// ------------------------------------------------------------------- HNF ---

// Row-style Hermite normal form of the row span: positive pivots, entries
// above a pivot reduced into [0, pivot), zero rows dropped. Canonical for
// the row lattice, so two matrices span the same lattice iff forms agree.
inline IntMatrix hermite_normal_form_rows(IntMatrix w) {
    size_t m = w.rows, n = w.cols;
    size_t row = 0;
    for (size_t col = 0; col < n && row < m; ++col) {
        while (true) {
            size_t piv = m;
            for (size_t i = row; i < m; ++i) {
                if (sgn(w.at(i, col)) == 0) continue;
                if (piv == m || abs(w.at(i, col)) < abs(w.at(piv, col))) piv = i;
            }
            if (piv == m) break;
            if (piv != row)
                for (size_t t = 0; t < n; ++t) std::swap(w.at(row, t), w.at(piv, t));
            if (sgn(w.at(row, col)) < 0)
                for (size_t t = 0; t < n; ++t) w.at(row, t) = -w.at(row, t);
            bool anyleft = false;
            for (size_t i = row + 1; i < m; ++i) {
                if (sgn(w.at(i, col)) == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), w.at(i, col).get_mpz_t(), w.at(row, col).get_mpz_t());
                for (size_t t = 0; t < n; ++t) w.at(i, t) -= q * w.at(row, t);
                if (sgn(w.at(i, col)) != 0) anyleft = true;
            }
            if (!anyleft) break;
        }
        if (sgn(w.at(row, col)) == 0) continue;
        for (size_t i = 0; i < row; ++i) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), w.at(i, col).get_mpz_t(), w.at(row, col).get_mpz_t());
            if (sgn(q) == 0) continue;
            for (size_t t = 0; t < n; ++t) w.at(i, t) -= q * w.at(row, t);
        }
        ++row;
    }
    IntMatrix h(row, n);
    for (size_t i = 0; i < row; ++i)
        for (size_t j = 0; j < n; ++j) h.at(i, j) = w.at(i, j);
    return h;
}

// Same Z-span of integer vectors (given as generator lists)?
inline bool same_lattice(const std::vector<std::vector<Int>>& a, const std::vector<std::vector<Int>>& b) {
    auto pack = [](const std::vector<std::vector<Int>>& v) {
        IntMatrix m(v.size(), v.empty() ? 0 : v[0].size());
        for (size_t i = 0; i < v.size(); ++i)
            for (size_t j = 0; j < v[i].size(); ++j) m.at(i, j) = v[i][j];
        return m;
    };
    if (a.empty() && b.empty()) return true;
    if (a.empty() || b.empty()) {
        const auto& nonempty = a.empty() ? b : a;
        for (const auto& v : nonempty)
            for (const auto& x : v)
                if (sgn(x) != 0) return false;
        return true;
    }
    if (a[0].size() != b[0].size()) return false;
    return hermite_normal_form_rows(pack(a)) == hermite_normal_form_rows(pack(b));
}

// Solve sum_j x_j * basis_j = v exactly over Q (basis linearly independent).
inline std::optional<std::vector<Rat>> express_in_basis(const std::vector<VecQ>& basis, const VecQ& v) {
    if (basis.empty()) {
        for (const auto& x : v)
            if (sgn(x) != 0) return std::nullopt;
        return std::vector<Rat>{};
    }
    size_t dim = v.size(), k = basis.size();
    // augmented system, columns = basis vectors
    std::vector<std::vector<Rat>> m(dim, std::vector<Rat>(k + 1, Rat(0)));
    for (size_t i = 0; i < dim; ++i) {
        for (size_t j = 0; j < k; ++j) m[i][j] = basis[j][i];
        m[i][k] = v[i];
    }
    std::vector<long> pivot_of_col(k, -1);
    size_t row = 0;
    for (size_t col = 0; col < k && row < dim; ++col) {
        size_t piv = row;
        while (piv < dim && sgn(m[piv][col]) == 0) ++piv;
        if (piv == dim) continue;
        std::swap(m[piv], m[row]);
        Rat inv = Rat(1) / m[row][col];
        for (size_t t = col; t <= k; ++t) m[row][t] *= inv;
        for (size_t i = 0; i < dim; ++i) {
            if (i == row || sgn(m[i][col]) == 0) continue;
            Rat f = m[i][col];
            for (size_t t = col; t <= k; ++t) m[i][t] -= f * m[row][t];
        }
        pivot_of_col[col] = static_cast<long>(row);
        ++row;
    }
    // consistency: zero rows must have zero rhs
    for (size_t i = row; i < dim; ++i)
        if (sgn(m[i][k]) != 0) return std::nullopt;
    std::vector<Rat> x(k, Rat(0));
    for (size_t col = 0; col < k; ++col)
        if (pivot_of_col[col] >= 0) x[col] = m[static_cast<size_t>(pivot_of_col[col])][k];
    return x;
}

// Is v in the Z-span of the (independent) integer basis vectors?
inline bool in_int_lattice(const std::vector<std::vector<Int>>& basis, const std::vector<Int>& v) {
    std::vector<VecQ> bq;
    for (const auto& b : basis) {
        VecQ q(b.size());
        for (size_t i = 0; i < b.size(); ++i) q[i] = Rat(b[i]);
        bq.push_back(std::move(q));
    }
    VecQ vq(v.size());
    for (size_t i = 0; i < v.size(); ++i) vq[i] = Rat(v[i]);
    auto x = express_in_basis(bq, vq);
    if (!x) return false;
    // zero target with empty basis handled above; nonzero residual?
    VecQ recon(v.size(), Rat(0));
    for (size_t j = 0; j < bq.size(); ++j)
        for (size_t i = 0; i < recon.size(); ++i) recon[i] += (*x)[j] * bq[j][i];
    if (recon != vq) return false;
    for (const auto& c : *x)
        if (!rat_is_integer(c)) return false;
    return true;
}

}  // namespace recseq
