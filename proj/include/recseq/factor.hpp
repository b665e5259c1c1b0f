#pragma once

// Univariate factorization over Q: squarefree decomposition, then Berlekamp
// modulo a small prime, Hensel lifting and subset recombination on the
// monic integer model. Desk-scale degrees only, no asymptotic tricks.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "recseq/poly.hpp"

namespace recseq {
namespace fdetail {

// --- arithmetic in F_p[x], p < 2^31, coefficients in [0, p) ---------------

using PPoly = std::vector<uint64_t>;  // ascending, trimmed

inline void ptrim(PPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline uint64_t inv_mod(uint64_t a, uint64_t p) {
    int64_t t = 0, newt = 1;
    int64_t r = static_cast<int64_t>(p), newr = static_cast<int64_t>(a % p);
    while (newr != 0) {
        int64_t q = r / newr;
        t -= q * newt;
        std::swap(t, newt);
        r -= q * newr;
        std::swap(r, newr);
    }
    if (t < 0) t += static_cast<int64_t>(p);
    return static_cast<uint64_t>(t);
}

inline PPoly pmul(const PPoly& a, const PPoly& b, uint64_t p) {
    if (a.empty() || b.empty()) return {};
    PPoly c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    }
    ptrim(c);
    return c;
}

inline std::pair<PPoly, PPoly> pdivmod(PPoly a, const PPoly& b, uint64_t p) {
    ptrim(a);
    if (a.size() < b.size()) return {{}, std::move(a)};
    PPoly q(a.size() - b.size() + 1, 0);
    uint64_t binv = inv_mod(b.back(), p);
    while (a.size() >= b.size() && !a.empty()) {
        uint64_t f = (a.back() * binv) % p;
        size_t off = a.size() - b.size();
        q[off] = f;
        for (size_t j = 0; j < b.size(); ++j) {
            uint64_t sub = (f * b[j]) % p;
            a[off + j] = (a[off + j] + p - sub) % p;
        }
        ptrim(a);
    }
    ptrim(q);
    return {std::move(q), std::move(a)};
}

inline PPoly pmod(PPoly a, const PPoly& b, uint64_t p) { return pdivmod(std::move(a), b, p).second; }

inline PPoly pgcd(PPoly a, PPoly b, uint64_t p) {
    while (!b.empty()) {
        PPoly r = pmod(std::move(a), b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        uint64_t inv = inv_mod(a.back(), p);
        for (auto& c : a) c = (c * inv) % p;
    }
    return a;
}

inline PPoly pderiv(const PPoly& a, uint64_t p) {
    if (a.size() <= 1) return {};
    PPoly d(a.size() - 1);
    for (size_t i = 1; i < a.size(); ++i) d[i - 1] = (a[i] * (i % p)) % p;
    ptrim(d);
    return d;
}

inline PPoly psub_scalar(PPoly a, uint64_t s, uint64_t p) {
    s %= p;
    if (s == 0) return a;
    if (a.empty()) a.push_back(0);
    a[0] = (a[0] + p - s) % p;
    ptrim(a);
    return a;
}

// Berlekamp factorization of a monic squarefree f mod p.
inline std::vector<PPoly> berlekamp(const PPoly& f, uint64_t p) {
    size_t n = f.size() - 1;
    if (n <= 1) return {f};
    PPoly xp;  // x^p mod f
    {
        PPoly acc = {1};
        PPoly base = {0, 1};
        uint64_t e = p;
        while (e) {
            if (e & 1) acc = pmod(pmul(acc, base, p), f, p);
            base = pmod(pmul(base, base, p), f, p);
            e >>= 1;
        }
        xp = acc;
    }
    std::vector<PPoly> rows(n);  // row i: x^(p*i) mod f
    rows[0] = {1};
    for (size_t i = 1; i < n; ++i) rows[i] = pmod(pmul(rows[i - 1], xp, p), f, p);
    // nullspace of v -> v*(Q - I); solve the transposed homogeneous system
    std::vector<std::vector<uint64_t>> m(n, std::vector<uint64_t>(n, 0));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < rows[i].size(); ++j) m[j][i] = rows[i][j];
        m[i][i] = (m[i][i] + p - 1) % p;
    }
    std::vector<size_t> pivot_col;
    size_t row = 0;
    for (size_t col = 0; col < n && row < n; ++col) {
        size_t sel = row;
        while (sel < n && m[sel][col] == 0) ++sel;
        if (sel == n) continue;
        std::swap(m[sel], m[row]);
        uint64_t inv = inv_mod(m[row][col], p);
        for (size_t j = 0; j < n; ++j) m[row][j] = (m[row][j] * inv) % p;
        for (size_t i = 0; i < n; ++i) {
            if (i == row || m[i][col] == 0) continue;
            uint64_t f2 = m[i][col];
            for (size_t j = 0; j < n; ++j) {
                uint64_t sub = (f2 * m[row][j]) % p;
                m[i][j] = (m[i][j] + p - sub) % p;
            }
        }
        pivot_col.push_back(col);
        ++row;
    }
    std::vector<std::vector<uint64_t>> basis;
    std::vector<char> is_pivot(n, 0);
    for (size_t c : pivot_col) is_pivot[c] = 1;
    for (size_t c = 0; c < n; ++c) {
        if (is_pivot[c]) continue;
        std::vector<uint64_t> v(n, 0);
        v[c] = 1;
        for (size_t r2 = 0; r2 < pivot_col.size(); ++r2) v[pivot_col[r2]] = (p - m[r2][c]) % p;
        basis.push_back(std::move(v));
    }
    const size_t k = basis.size();  // number of irreducible factors
    std::vector<PPoly> factors = {f};
    for (const auto& v : basis) {
        if (factors.size() == k) break;
        PPoly vp(v.begin(), v.end());
        ptrim(vp);
        if (vp.size() <= 1) continue;
        std::vector<PPoly> next;
        for (auto& u : factors) {
            PPoly cur = std::move(u);
            for (uint64_t s = 0; s < p && cur.size() > 2 && factors.size() + next.size() < k + 1; ++s) {
                PPoly d = pgcd(cur, psub_scalar(vp, s, p), p);
                if (d.size() > 1 && d.size() < cur.size()) {
                    next.push_back(d);
                    cur = pdivmod(std::move(cur), d, p).first;
                }
            }
            next.push_back(std::move(cur));
        }
        factors = std::move(next);
    }
    for (auto& g : factors) {
        uint64_t inv = inv_mod(g.back(), p);
        for (auto& c : g) c = (c * inv) % p;
    }
    std::sort(factors.begin(), factors.end());
    return factors;
}

// --- Z[x] with coefficients reduced into [0, m) ----------------------------

using ZPoly = std::vector<Int>;  // ascending, trimmed

inline void ztrim(ZPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline ZPoly zreduce(ZPoly a, const Int& m) {
    for (auto& c : a) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
    ztrim(a);
    return a;
}

inline ZPoly zmul(const ZPoly& a, const ZPoly& b, const Int& m) {
    if (a.empty() || b.empty()) return {};
    ZPoly c(a.size() + b.size() - 1, Int(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return zreduce(std::move(c), m);
}

inline ZPoly zadd(ZPoly a, const ZPoly& b, const Int& m) {
    if (a.size() < b.size()) a.resize(b.size(), Int(0));
    for (size_t i = 0; i < b.size(); ++i) a[i] += b[i];
    return zreduce(std::move(a), m);
}

inline ZPoly zsub(ZPoly a, const ZPoly& b, const Int& m) {
    if (a.size() < b.size()) a.resize(b.size(), Int(0));
    for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    return zreduce(std::move(a), m);
}

// divmod by a monic divisor, coefficients mod m
inline std::pair<ZPoly, ZPoly> zdivmod_monic(ZPoly a, const ZPoly& b, const Int& m) {
    a = zreduce(std::move(a), m);
    if (a.size() < b.size()) return {{}, std::move(a)};
    ZPoly q(a.size() - b.size() + 1, Int(0));
    while (a.size() >= b.size() && !a.empty()) {
        size_t off = a.size() - b.size();
        Int f = a.back();
        q[off] = f;
        for (size_t j = 0; j < b.size(); ++j) {
            a[off + j] -= f * b[j];
            mpz_fdiv_r(a[off + j].get_mpz_t(), a[off + j].get_mpz_t(), m.get_mpz_t());
        }
        ztrim(a);
    }
    return {zreduce(std::move(q), m), std::move(a)};
}

struct HenselPair {
    ZPoly g, h, s, t;  // f = g*h and s*g + t*h = 1 modulo the tracked modulus
};

// One quadratic lift step from modulus m to m*m (von zur Gathen Alg. 15.10).
inline HenselPair hensel_step(const ZPoly& f, const HenselPair& in, const Int& m) {
    Int m2 = m * m;
    ZPoly e = zsub(f, zmul(in.g, in.h, m2), m2);
    auto [q, r] = zdivmod_monic(zmul(in.s, e, m2), in.h, m2);
    ZPoly g2 = zadd(zadd(in.g, zmul(in.t, e, m2), m2), zmul(q, in.g, m2), m2);
    ZPoly h2 = zadd(in.h, r, m2);
    ZPoly one = {Int(1)};
    ZPoly b = zsub(zadd(zmul(in.s, g2, m2), zmul(in.t, h2, m2), m2), one, m2);
    auto [c, d] = zdivmod_monic(zmul(in.s, b, m2), h2, m2);
    ZPoly s2 = zsub(in.s, d, m2);
    ZPoly t2 = zsub(zsub(in.t, zmul(in.t, b, m2), m2), zmul(c, g2, m2), m2);
    return {std::move(g2), std::move(h2), std::move(s2), std::move(t2)};
}

inline ZPoly from_ppoly(const PPoly& a) {
    ZPoly r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = Int(static_cast<unsigned long>(a[i]));
    return r;
}

// Extended gcd of coprime a, b in F_p[x]: s*a + t*b = 1.
inline std::pair<PPoly, PPoly> pbezout(const PPoly& a, const PPoly& b, uint64_t p) {
    PPoly r0 = a, r1 = b;
    PPoly s0 = {1}, s1 = {};
    PPoly t0 = {}, t1 = {1};
    auto psub = [&](PPoly x, const PPoly& y) {
        if (x.size() < y.size()) x.resize(y.size(), 0);
        for (size_t i = 0; i < y.size(); ++i) x[i] = (x[i] + p - y[i]) % p;
        ptrim(x);
        return x;
    };
    while (!r1.empty()) {
        auto [q, rem] = pdivmod(std::move(r0), r1, p);
        r0 = std::move(r1);
        r1 = std::move(rem);
        PPoly s2 = psub(std::move(s0), pmul(q, s1, p));
        s0 = std::move(s1);
        s1 = std::move(s2);
        PPoly t2 = psub(std::move(t0), pmul(q, t1, p));
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    uint64_t inv = inv_mod(r0[0], p);
    for (auto& c : s0) c = (c * inv) % p;
    for (auto& c : t0) c = (c * inv) % p;
    return {std::move(s0), std::move(t0)};
}

// Lift f = prod(factors) from mod p to mod target = p^e, recursive binary split.
inline void hensel_tree(const ZPoly& f, const std::vector<PPoly>& factors, uint64_t p, const Int& target,
                        std::vector<ZPoly>& out) {
    if (factors.size() == 1) {
        out.push_back(zreduce(f, target));
        return;
    }
    size_t half = factors.size() / 2;
    PPoly gp = {1}, hp = {1};
    for (size_t i = 0; i < half; ++i) gp = pmul(gp, factors[i], p);
    for (size_t i = half; i < factors.size(); ++i) hp = pmul(hp, factors[i], p);
    auto [sp, tp] = pbezout(gp, hp, p);
    HenselPair cur{from_ppoly(gp), from_ppoly(hp), from_ppoly(sp), from_ppoly(tp)};
    Int m(static_cast<unsigned long>(p));
    while (m < target) {
        cur = hensel_step(zreduce(f, m * m), cur, m);
        m = m * m;
    }
    ZPoly g = zreduce(cur.g, target), h = zreduce(cur.h, target);
    std::vector<PPoly> left(factors.begin(), factors.begin() + static_cast<long>(half));
    std::vector<PPoly> right(factors.begin() + static_cast<long>(half), factors.end());
    hensel_tree(g, left, p, target, out);
    hensel_tree(h, right, p, target, out);
}

inline Int centered(const Int& c, const Int& m) { return c > m / 2 ? Int(c - m) : c; }

inline const std::vector<uint64_t>& small_primes() {
    static const std::vector<uint64_t> ps = [] {
        const uint64_t limit = 20000;
        std::vector<char> sieve(limit + 1, 1);
        std::vector<uint64_t> out;
        for (uint64_t i = 2; i <= limit; ++i) {
            if (!sieve[i]) continue;
            out.push_back(i);
            for (uint64_t j = i * i; j <= limit; j += i) sieve[j] = 0;
        }
        return out;
    }();
    return ps;
}

// Factor a monic squarefree integer polynomial into monic integer irreducibles.
inline std::vector<ZPoly> factor_monic_squarefree(const ZPoly& mcoeffs) {
    size_t n = mcoeffs.size() - 1;
    if (n <= 1) return {mcoeffs};
    std::optional<std::pair<uint64_t, std::vector<PPoly>>> best;
    int good_seen = 0;
    for (uint64_t p : small_primes()) {
        PPoly fp(mcoeffs.size());
        for (size_t i = 0; i < mcoeffs.size(); ++i) {
            Int r;
            mpz_fdiv_r_ui(r.get_mpz_t(), mcoeffs[i].get_mpz_t(), static_cast<unsigned long>(p));
            fp[i] = r.get_ui();
        }
        ptrim(fp);
        if (fp.size() != mcoeffs.size()) continue;
        if (pgcd(fp, pderiv(fp, p), p).size() != 1) continue;  // not squarefree mod p
        auto facs = berlekamp(fp, p);
        ++good_seen;
        if (!best || facs.size() < best->second.size()) best = {p, std::move(facs)};
        if (best->second.size() == 1 || good_seen >= 3) break;
    }
    if (!best) throw domain_error(errc::internal, "no usable prime for factorization");
    const uint64_t p = best->first;
    const auto& modular = best->second;
    if (modular.size() == 1) return {mcoeffs};

    // Mignotte-style bound: any integer factor has |coeff| <= 2^n * ||f||_2
    Int norm2(0);
    for (const auto& c : mcoeffs) norm2 += c * c;
    Int b;
    mpz_sqrt(b.get_mpz_t(), norm2.get_mpz_t());
    b += 1;
    Int bound = (Int(1) << static_cast<unsigned long>(n)) * b;
    Int target(static_cast<unsigned long>(p));
    while (target <= 2 * bound) target *= static_cast<unsigned long>(p);

    std::vector<ZPoly> lifted;
    hensel_tree(zreduce(mcoeffs, target), modular, p, target, lifted);

    std::vector<ZPoly> out;
    ZPoly rest = mcoeffs;
    std::vector<size_t> avail(lifted.size());
    std::iota(avail.begin(), avail.end(), size_t{0});

    auto try_subset = [&](const std::vector<size_t>& subset) -> bool {
        ZPoly cand = {Int(1)};
        for (size_t idx : subset) cand = zmul(cand, lifted[avail[idx]], target);
        for (auto& c : cand) c = centered(c, target);
        RatPoly candQ = from_integer_coeffs(cand);
        auto [q, r] = poly_divmod(from_integer_coeffs(rest), candQ);
        if (!r.is_zero()) return false;
        for (const auto& c : q.coeffs())
            if (!rat_is_integer(c)) return false;
        out.push_back(cand);
        ZPoly newrest(q.coeffs().size());
        for (size_t i = 0; i < newrest.size(); ++i) newrest[i] = q.coeff(static_cast<int>(i)).get_num();
        rest = std::move(newrest);
        std::vector<size_t> keep;
        for (size_t i = 0; i < avail.size(); ++i)
            if (std::find(subset.begin(), subset.end(), i) == subset.end()) keep.push_back(avail[i]);
        avail = std::move(keep);
        return true;
    };

    size_t card = 1;
    while (2 * card <= avail.size()) {
        std::vector<size_t> comb(card);
        std::iota(comb.begin(), comb.end(), size_t{0});
        bool found = false;
        while (true) {
            if (try_subset(comb)) {
                found = true;
                break;
            }
            long i = static_cast<long>(card) - 1;
            while (i >= 0 && comb[static_cast<size_t>(i)] == avail.size() - card + static_cast<size_t>(i)) --i;
            if (i < 0) break;
            ++comb[static_cast<size_t>(i)];
            for (size_t j = static_cast<size_t>(i) + 1; j < card; ++j) comb[j] = comb[j - 1] + 1;
        }
        if (!found) ++card;
    }
    if (rest.size() > 1) out.push_back(rest);
    return out;
}

}  // namespace fdetail

struct FactorResult {
    Rat constant;
    std::vector<std::pair<RatPoly, int>> factors;  // monic irreducible over Q, multiplicity

    RatPoly reconstruct() const {
        RatPoly p = RatPoly::constant(constant);
        for (const auto& [f, m] : factors) p = p * f.pow(static_cast<unsigned>(m));
        return p;
    }
};

// Complete factorization of a nonzero rational polynomial into monic
// irreducible factors over Q times a rational constant.
inline FactorResult rat_poly_factor(const RatPoly& p) {
    if (p.is_zero()) throw domain_error(errc::invalid_input, "factoring the zero polynomial");
    FactorResult res;
    res.constant = p.lead();
    if (p.degree() == 0) return res;

    int k = 0;
    while (sgn(p.coeff(k)) == 0) ++k;
    if (k > 0) res.factors.emplace_back(RatPoly::x(), k);
    std::vector<Rat> shifted(p.coeffs().begin() + k, p.coeffs().end());
    RatPoly body = RatPoly(std::move(shifted)).monic();

    for (const auto& [sf, mult] : squarefree_decomposition(body)) {
        if (sf.degree() < 1) continue;
        if (sf.degree() == 1) {
            res.factors.emplace_back(sf.monic(), mult);
            continue;
        }
        auto prim = to_integer_primitive(sf);
        const size_t n = static_cast<size_t>(sf.degree());
        const Int L = prim.coeffs.back();
        // monic model M(y) = L^(n-1) * P(y/L); coefficient i becomes a_i * L^(n-1-i)
        fdetail::ZPoly mono(prim.coeffs.size());
        for (size_t i = 0; i < n; ++i) mono[i] = prim.coeffs[i] * int_pow(L, static_cast<unsigned long>(n - 1 - i));
        mono[n] = 1;
        for (const auto& mf : fdetail::factor_monic_squarefree(mono)) {
            // back-transform m(y) -> monic form of m(L*x)
            std::vector<Rat> bc(mf.size());
            Int lp(1);
            for (size_t i = 0; i < mf.size(); ++i) {
                bc[i] = Rat(mf[i] * lp);
                lp *= L;
            }
            res.factors.emplace_back(RatPoly(std::move(bc)).monic(), mult);
        }
    }
    std::sort(res.factors.begin(), res.factors.end(), [](const auto& a, const auto& b) {
        if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
        for (int i = 0; i <= a.first.degree(); ++i) {
            int c = cmp(a.first.coeff(i), b.first.coeff(i));
            if (c != 0) return c < 0;
        }
        return a.second < b.second;
    });
    if (res.reconstruct() != p) throw domain_error(errc::internal, "factorization self-check failed");
    return res;
}

inline bool is_irreducible(const RatPoly& p) {
    if (p.degree() < 1) return false;
    auto f = rat_poly_factor(p);
    return f.factors.size() == 1 && f.factors[0].second == 1;
}

}  // namespace recseq
