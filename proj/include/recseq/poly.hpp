#pragma once

// Dense univariate polynomials over Q, ascending coefficient order.
// The zero polynomial is the empty coefficient list (degree -1).

#include <algorithm>
#include <utility>
#include <vector>

#include "recseq/rational.hpp"

namespace recseq {

class RatPoly {
  public:
    RatPoly() = default;
    explicit RatPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

    static RatPoly zero() { return RatPoly(); }
    static RatPoly constant(const Rat& a) { return RatPoly({a}); }
    static RatPoly x() { return RatPoly({Rat(0), Rat(1)}); }
    static RatPoly monomial(int deg, const Rat& a) {
        std::vector<Rat> c(static_cast<size_t>(deg) + 1, Rat(0));
        c.back() = a;
        return RatPoly(std::move(c));
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }

    const Rat& lead() const { return c_.back(); }
    Rat coeff(int i) const {
        if (i < 0 || i >= static_cast<int>(c_.size())) return Rat(0);
        return c_[static_cast<size_t>(i)];
    }
    const std::vector<Rat>& coeffs() const { return c_; }

    bool operator==(const RatPoly& o) const { return c_ == o.c_; }
    bool operator!=(const RatPoly& o) const { return !(*this == o); }

    RatPoly operator-() const {
        std::vector<Rat> c(c_);
        for (auto& a : c) a = -a;
        return RatPoly(std::move(c));
    }

    RatPoly operator+(const RatPoly& o) const {
        std::vector<Rat> c(std::max(c_.size(), o.c_.size()), Rat(0));
        for (size_t i = 0; i < c_.size(); ++i) c[i] += c_[i];
        for (size_t i = 0; i < o.c_.size(); ++i) c[i] += o.c_[i];
        return RatPoly(std::move(c));
    }
    RatPoly operator-(const RatPoly& o) const { return *this + (-o); }

    RatPoly operator*(const RatPoly& o) const {
        if (is_zero() || o.is_zero()) return RatPoly();
        std::vector<Rat> c(c_.size() + o.c_.size() - 1, Rat(0));
        for (size_t i = 0; i < c_.size(); ++i)
            for (size_t j = 0; j < o.c_.size(); ++j) c[i + j] += c_[i] * o.c_[j];
        return RatPoly(std::move(c));
    }

    RatPoly operator*(const Rat& s) const {
        if (sgn(s) == 0) return RatPoly();
        std::vector<Rat> c(c_);
        for (auto& a : c) a *= s;
        return RatPoly(std::move(c));
    }
    RatPoly operator/(const Rat& s) const {
        if (sgn(s) == 0) throw domain_error(errc::zero_division, "polynomial divided by zero scalar");
        return *this * (Rat(1) / s);
    }

    Rat eval(const Rat& x) const {
        Rat r(0);
        for (size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
        return r;
    }

    RatPoly derivative() const {
        if (c_.size() <= 1) return RatPoly();
        std::vector<Rat> c(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i) c[i - 1] = c_[i] * Rat(static_cast<long>(i));
        return RatPoly(std::move(c));
    }

    RatPoly monic() const {
        if (is_zero()) throw domain_error(errc::invalid_input, "monic of zero polynomial");
        return *this / lead();
    }

    // p(a + b*x)
    RatPoly compose_linear(const Rat& a, const Rat& b) const {
        RatPoly lin({a, b});
        RatPoly r;
        for (size_t i = c_.size(); i-- > 0;) r = r * lin + RatPoly::constant(c_[i]);
        return r;
    }

    // p(x^k)
    RatPoly inflate(int k) const {
        if (is_zero()) return RatPoly();
        std::vector<Rat> c(static_cast<size_t>(degree()) * k + 1, Rat(0));
        for (size_t i = 0; i < c_.size(); ++i) c[i * k] = c_[i];
        return RatPoly(std::move(c));
    }

    RatPoly pow(unsigned e) const {
        RatPoly r = RatPoly::constant(Rat(1));
        RatPoly b = *this;
        while (e) {
            if (e & 1u) r = r * b;
            b = b * b;
            e >>= 1u;
        }
        return r;
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::string s;
        for (int i = degree(); i >= 0; --i) {
            Rat a = coeff(i);
            if (sgn(a) == 0) continue;
            if (!s.empty()) s += sgn(a) > 0 ? " + " : " - ";
            else if (sgn(a) < 0) s += "-";
            Rat aa = abs(a);
            if (aa != 1 || i == 0) s += rat_to_string(aa);
            if (i > 0) s += "x";
            if (i > 1) s += "^" + std::to_string(i);
        }
        return s;
    }

  private:
    void trim() {
        while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
    }
    std::vector<Rat> c_;
};

// a = q*b + r with deg r < deg b.  Throws on zero divisor.
inline std::pair<RatPoly, RatPoly> poly_divmod(const RatPoly& a, const RatPoly& b) {
    if (b.is_zero()) throw domain_error(errc::zero_division, "polynomial division by zero");
    std::vector<Rat> rem(a.coeffs());
    int db = b.degree();
    int dq = a.degree() - db;
    if (dq < 0) return {RatPoly(), a};
    std::vector<Rat> q(static_cast<size_t>(dq) + 1, Rat(0));
    Rat inv_lead = Rat(1) / b.lead();
    for (int i = dq; i >= 0; --i) {
        Rat f = rem[static_cast<size_t>(i + db)] * inv_lead;
        if (sgn(f) == 0) continue;
        q[static_cast<size_t>(i)] = f;
        for (int j = 0; j <= db; ++j) rem[static_cast<size_t>(i + j)] -= f * b.coeff(j);
    }
    return {RatPoly(std::move(q)), RatPoly(std::move(rem))};
}

inline RatPoly poly_mod(const RatPoly& a, const RatPoly& b) { return poly_divmod(a, b).second; }
inline RatPoly poly_div_exact(const RatPoly& a, const RatPoly& b) {
    auto [q, r] = poly_divmod(a, b);
    if (!r.is_zero()) throw domain_error(errc::internal, "inexact polynomial division");
    return q;
}

// Monic gcd.
inline RatPoly poly_gcd(RatPoly a, RatPoly b) {
    while (!b.is_zero()) {
        RatPoly r = poly_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    return a.monic();
}

// Yun's squarefree decomposition: p = const * prod_i out[i].first^(out[i].second),
// parts squarefree, pairwise coprime, multiplicities strictly increasing.
inline std::vector<std::pair<RatPoly, int>> squarefree_decomposition(const RatPoly& p) {
    std::vector<std::pair<RatPoly, int>> out;
    if (p.degree() <= 0) return out;
    RatPoly g = poly_gcd(p, p.derivative());
    RatPoly w = poly_div_exact(p, g);
    RatPoly y = poly_div_exact(p.derivative(), g);
    RatPoly z = y - w.derivative();
    int i = 1;
    while (w.degree() > 0) {
        RatPoly gi = poly_gcd(w, z);
        if (gi.degree() > 0) out.emplace_back(gi.monic(), i);
        w = poly_div_exact(w, gi);
        y = poly_div_exact(z, gi);
        z = y - w.derivative();
        ++i;
    }
    return out;
}

inline RatPoly squarefree_part(const RatPoly& p) {
    if (p.degree() <= 0) return p;
    return poly_div_exact(p, poly_gcd(p, p.derivative())).monic();
}

// Primitive integer form: p = scale * P with P in Z[x] primitive, lc(P) > 0.
struct IntPolyScaled {
    std::vector<Int> coeffs;  // ascending
    Rat scale;
};

inline IntPolyScaled to_integer_primitive(const RatPoly& p) {
    if (p.is_zero()) return {{}, Rat(0)};
    Int den(1);
    for (const auto& c : p.coeffs()) den = int_lcm(den, c.get_den());
    std::vector<Int> ic(p.coeffs().size());
    Int content(0);
    for (size_t i = 0; i < ic.size(); ++i) {
        Rat t = p.coeffs()[i] * Rat(den);
        ic[i] = t.get_num();
        content = int_gcd(content, ic[i]);
    }
    if (sgn(ic.back()) < 0) content = -content;
    for (auto& c : ic) c /= content;
    return {std::move(ic), make_rat(content, den)};
}

inline RatPoly from_integer_coeffs(const std::vector<Int>& c) {
    std::vector<Rat> rc(c.size());
    for (size_t i = 0; i < c.size(); ++i) rc[i] = Rat(c[i]);
    return RatPoly(std::move(rc));
}

// Determinant by plain rational Gaussian elimination (matrices here are small).
inline Rat det_gauss(std::vector<std::vector<Rat>> m) {
    size_t n = m.size();
    Rat det(1);
    for (size_t k = 0; k < n; ++k) {
        size_t piv = k;
        while (piv < n && sgn(m[piv][k]) == 0) ++piv;
        if (piv == n) return Rat(0);
        if (piv != k) {
            std::swap(m[piv], m[k]);
            det = -det;
        }
        det *= m[k][k];
        Rat inv = Rat(1) / m[k][k];
        for (size_t i = k + 1; i < n; ++i) {
            if (sgn(m[i][k]) == 0) continue;
            Rat f = m[i][k] * inv;
            for (size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
        }
    }
    return det;
}

// Res_x(f, g) via the Sylvester matrix.
inline Rat resultant(const RatPoly& f, const RatPoly& g) {
    if (f.is_zero() || g.is_zero()) return Rat(0);
    int m = f.degree(), n = g.degree();
    if (m == 0) return rat_pow(f.coeff(0), n);
    if (n == 0) return rat_pow(g.coeff(0), m);
    size_t dim = static_cast<size_t>(m + n);
    std::vector<std::vector<Rat>> s(dim, std::vector<Rat>(dim, Rat(0)));
    for (int r = 0; r < n; ++r)
        for (int j = 0; j <= m; ++j) s[static_cast<size_t>(r)][static_cast<size_t>(r + j)] = f.coeff(m - j);
    for (int r = 0; r < m; ++r)
        for (int j = 0; j <= n; ++j) s[static_cast<size_t>(n + r)][static_cast<size_t>(r + j)] = g.coeff(n - j);
    return det_gauss(std::move(s));
}

// Lagrange interpolation through (xs[i], ys[i]), distinct xs.
inline RatPoly interpolate(const std::vector<Rat>& xs, const std::vector<Rat>& ys) {
    RatPoly acc;
    for (size_t i = 0; i < xs.size(); ++i) {
        RatPoly li = RatPoly::constant(Rat(1));
        Rat denom(1);
        for (size_t j = 0; j < xs.size(); ++j) {
            if (j == i) continue;
            li = li * RatPoly({-xs[j], Rat(1)});
            denom *= xs[i] - xs[j];
        }
        acc = acc + li * (ys[i] / denom);
    }
    return acc;
}

// 1 + max |a_i / a_d|: every complex root has modulus below this.
inline Rat cauchy_root_bound(const RatPoly& p) {
    if (p.degree() < 1) return Rat(1);
    Rat m(0);
    for (int i = 0; i < p.degree(); ++i) {
        Rat t = abs(p.coeff(i) / p.lead());
        if (t > m) m = t;
    }
    return m + 1;
}

}  // namespace recseq
