#pragma once

// Rational-endpoint interval arithmetic and certified enclosures of pi and
// the principal complex logarithm. Transcendental values come from truncated
// series with explicit remainder bounds; no machine floats are involved.

#include <algorithm>
#include <optional>
#include <utility>

#include "recseq/poly.hpp"
#include "recseq/rational.hpp"

namespace recseq {

struct RatInterval {
    Rat lo, hi;

    RatInterval() : lo(0), hi(0) {}
    RatInterval(Rat a, Rat b) : lo(std::move(a)), hi(std::move(b)) {
        if (lo > hi) throw domain_error(errc::invalid_input, "interval with lo > hi");
    }
    static RatInterval point(const Rat& a) { return RatInterval(a, a); }

    Rat width() const { return hi - lo; }
    Rat mid() const { return (lo + hi) / 2; }
    bool contains(const Rat& x) const { return lo <= x && x <= hi; }
    bool contains(const RatInterval& o) const { return lo <= o.lo && o.hi <= hi; }
    bool contains_zero() const { return sgn(lo) <= 0 && sgn(hi) >= 0; }
    bool is_point() const { return lo == hi; }

    RatInterval operator+(const RatInterval& o) const { return {lo + o.lo, hi + o.hi}; }
    RatInterval operator-(const RatInterval& o) const { return {lo - o.hi, hi - o.lo}; }
    RatInterval operator-() const { return {-hi, -lo}; }

    RatInterval operator*(const RatInterval& o) const {
        Rat a = lo * o.lo, b = lo * o.hi, c = hi * o.lo, d = hi * o.hi;
        Rat mn = a, mx = a;
        for (const Rat& v : {b, c, d}) {
            if (v < mn) mn = v;
            if (v > mx) mx = v;
        }
        return {mn, mx};
    }
    RatInterval operator*(const Rat& s) const {
        if (sgn(s) >= 0) return {lo * s, hi * s};
        return {hi * s, lo * s};
    }
    RatInterval operator+(const Rat& s) const { return {lo + s, hi + s}; }

    RatInterval recip() const {
        if (contains_zero()) throw domain_error(errc::zero_division, "reciprocal of interval containing zero");
        return {Rat(1) / hi, Rat(1) / lo};
    }
    RatInterval operator/(const RatInterval& o) const { return *this * o.recip(); }

    RatInterval square() const {
        RatInterval p = *this * *this;
        if (contains_zero()) p.lo = 0;
        return p;
    }

    RatInterval abs_iv() const {
        if (sgn(lo) >= 0) return *this;
        if (sgn(hi) <= 0) return {-hi, -lo};
        return {Rat(0), std::max(Rat(-lo), hi)};
    }

    std::optional<RatInterval> intersect(const RatInterval& o) const {
        Rat a = std::max(lo, o.lo);
        Rat b = std::min(hi, o.hi);
        if (a > b) return std::nullopt;
        return RatInterval(a, b);
    }

    // sound outward rounding to dyadic endpoints, keeps denominators small
    RatInterval round_outward(long bits) const {
        Rat scale = rat_pow2(bits);
        Rat nlo = Rat(rat_floor(lo * scale)) / scale;
        Rat nhi = Rat(rat_ceil(hi * scale)) / scale;
        return {nlo, nhi};
    }
};

// Axis-aligned complex box.
struct Box {
    RatInterval re, im;

    Box() = default;
    Box(RatInterval r, RatInterval i) : re(std::move(r)), im(std::move(i)) {}
    static Box point(const Rat& x, const Rat& y) { return {RatInterval::point(x), RatInterval::point(y)}; }
    static Box real_point(const Rat& x) { return point(x, Rat(0)); }

    Rat width() const { return std::max(re.width(), im.width()); }
    bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }
    bool is_real() const { return im.is_point() && sgn(im.lo) == 0; }

    Box operator+(const Box& o) const { return {re + o.re, im + o.im}; }
    Box operator-(const Box& o) const { return {re - o.re, im - o.im}; }
    Box operator*(const Box& o) const { return {re * o.re - im * o.im, re * o.im + im * o.re}; }
    Box operator*(const Rat& s) const { return {re * s, im * s}; }
    Box operator-() const { return {-re, -im}; }

    RatInterval norm2() const { return re.square() + im.square(); }

    Box recip() const {
        RatInterval n = norm2();
        if (n.contains_zero()) throw domain_error(errc::zero_division, "reciprocal of box containing zero");
        RatInterval r = n.recip();
        return {re * r, (-im) * r};
    }
    Box operator/(const Box& o) const { return *this * o.recip(); }

    // multiply by i^k (exact rotation), k any integer
    Box rotate_i(long k) const {
        long m = ((k % 4) + 4) % 4;
        switch (m) {
            case 0: return *this;
            case 1: return {-im, re};
            case 2: return {-re, -im};
            default: return {im, -re};
        }
    }

    Box round_outward(long bits) const { return {re.round_outward(bits), im.round_outward(bits)}; }

    std::optional<Box> intersect(const Box& o) const {
        auto r = re.intersect(o.re);
        auto i = im.intersect(o.im);
        if (!r || !i) return std::nullopt;
        return Box(*r, *i);
    }
    bool contains_box(const Box& o) const { return re.contains(o.re) && im.contains(o.im); }
    bool contains_point(const Rat& x, const Rat& y) const { return re.contains(x) && im.contains(y); }
};

// Horner evaluation of a rational polynomial on a complex box.
inline Box eval_box(const RatPoly& p, const Box& z) {
    Box acc = Box::real_point(Rat(0));
    for (int i = p.degree(); i >= 0; --i) {
        acc = acc * z;
        acc.re = acc.re + p.coeff(i);
    }
    return acc;
}

inline RatInterval eval_interval(const RatPoly& p, const RatInterval& x) {
    RatInterval acc = RatInterval::point(Rat(0));
    for (int i = p.degree(); i >= 0; --i) acc = acc * x + p.coeff(i);
    return acc;
}

namespace idetail {

// atan(1/k) for integer k >= 2, alternating series, |tail| <= next term.
inline RatInterval atan_inv(long k, const Rat& eps) {
    Rat kk(k);
    Rat k2 = kk * kk;
    Rat term = Rat(1) / kk;
    Rat sum(0);
    long j = 0;
    while (true) {
        Rat contrib = term / Rat(2 * j + 1);
        if (contrib < eps) return {sum - contrib, sum + contrib};
        sum += (j % 2 == 0) ? contrib : -contrib;
        term = term / k2;
        ++j;
        if (j > 1000000) throw domain_error(errc::internal, "atan series did not converge");
    }
}

// log 2 = 2*atanh(1/3), positive series with geometric tail.
inline RatInterval log2_interval(const Rat& eps) {
    Rat u(1, 3);
    Rat u2 = u * u;
    Rat term = u;
    Rat sum(0);
    long j = 0;
    while (true) {
        sum += term / Rat(2 * j + 1);
        term = term * u2;
        ++j;
        Rat tail = (term / Rat(2 * j + 1)) * Rat(9, 8);
        if (2 * tail < eps) return {2 * sum, 2 * (sum + tail)};
        if (j > 1000000) throw domain_error(errc::internal, "log2 series did not converge");
    }
}

}  // namespace idetail

// Certified enclosure of pi of width < eps (Machin's formula).
inline Box pi_box(const Rat& eps) {
    if (sgn(eps) <= 0) throw domain_error(errc::invalid_input, "pi_box needs eps > 0");
    RatInterval a5 = idetail::atan_inv(5, eps / 80);
    RatInterval a239 = idetail::atan_inv(239, eps / 20);
    RatInterval pi = a5 * Rat(16) - a239 * Rat(4);
    return {pi, RatInterval::point(Rat(0))};
}

// Principal-branch complex logarithm of every point of z, as one box.
// Requires: z excludes 0 and does not straddle the branch cut; boxes lying
// exactly on the negative real axis are fine (Im = +pi side).
inline Box log_box(const Box& z, const Rat& eps) {
    if (sgn(eps) <= 0) throw domain_error(errc::invalid_input, "log_box needs eps > 0");
    if (z.contains_zero()) throw domain_error(errc::zero_box, "log of box containing zero");
    // ambiguous: the box has points with re < 0 both below and on/above the cut
    if (sgn(z.re.lo) < 0 && sgn(z.im.lo) < 0 && sgn(z.im.hi) >= 0)
        throw domain_error(errc::branch_cut, "log of box straddling the branch cut");

    // scale radius into roughly [1/2, 2) using |z|^2 and powers of two
    RatInterval n2 = z.norm2();
    if (n2.contains_zero()) throw domain_error(errc::zero_box, "log of box containing zero");
    long m2 = floor_log2(n2.mid());            // |z|^2 ~ 2^m2
    long m = m2 >= 0 ? m2 / 2 : (m2 - 1) / 2;  // |z| ~ 2^m
    Box zs = z * rat_pow2(-m);

    // rotate into the sector around the positive real axis by a power of i:
    // log z = log(z * i^k) - k*(pi/2)*i + m*log 2
    Rat xr = zs.re.mid(), yr = zs.im.mid();
    long k;
    if (abs(xr) >= abs(yr))
        k = (sgn(xr) >= 0) ? 0 : (sgn(yr) >= 0 ? -2 : 2);
    else
        k = (sgn(yr) > 0) ? -1 : 1;
    Box zr = zs.rotate_i(k);
    if (sgn(zr.re.lo) <= 0)
        throw domain_error(errc::branch_cut, "log input too wide to certify a sector; refine the box");

    // log w = 2 atanh(u), u = (w-1)/(w+1), |u| bounded away from 1 in the sector
    Box one = Box::real_point(Rat(1));
    Box u = (zr - one) / (zr + one);
    RatInterval u2abs = u.norm2();
    if (!(u2abs.hi < Rat(9, 10)))
        throw domain_error(errc::branch_cut, "log input too wide to certify convergence; refine the box");

    Rat series_eps = eps / 8;
    long prec_bits = std::max<long>(192, -floor_log2(std::min(series_eps, Rat(1, 2))) + 64);
    Box upow = u;
    Box u_sq = u * u;
    Box sum = Box::real_point(Rat(0));
    long j = 0;
    while (true) {
        sum = sum + upow * (Rat(2) / Rat(2 * j + 1));
        upow = upow * u_sq;
        ++j;
        // |2 * sum_{i>=j} u^(2i+1)/(2i+1)| <= 2*|u^(2j+1)| / ((2j+1)(1-|u|^2))
        Rat mag_bound = rat_sqrt_upper(upow.norm2().hi, prec_bits);
        Rat tail = 2 * mag_bound / (Rat(2 * j + 1) * (1 - u2abs.hi));
        if (tail < series_eps) {
            sum.re = sum.re + RatInterval(-tail, tail);
            sum.im = sum.im + RatInterval(-tail, tail);
            break;
        }
        if (j > 100000) throw domain_error(errc::internal, "log series did not converge");
        if (j % 8 == 0) {
            sum = sum.round_outward(prec_bits);
            upow = upow.round_outward(prec_bits);
        }
    }

    Box out = sum;
    if (m != 0) {
        RatInterval l2 = idetail::log2_interval(eps / (8 * (std::abs(m) + 1)));
        out.re = out.re + l2 * Rat(m);
    }
    if (k != 0) {
        Box pib = pi_box(eps / (4 * (std::abs(k) + 1)));
        out.im = out.im + pib.re * make_rat(Int(-k), Int(2));
    }
    return out;
}

}  // namespace recseq
