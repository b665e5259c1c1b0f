#pragma once

// Test-only oracles, independent of the library's computation paths.

#include <string>
#include <vector>

#include "recseq/interval.hpp"
#include "recseq/rational.hpp"

namespace oracles {

using recseq::Box;
using recseq::Int;
using recseq::Rat;
using recseq::RatInterval;

// Interval bracketing a decimal literal "3.1415..." to its printed precision.
inline RatInterval decimal_literal(const std::string& digits) {
    auto dot = digits.find('.');
    std::string intpart = digits.substr(0, dot);
    std::string frac = digits.substr(dot + 1);
    Int scale = recseq::int_pow(Int(10), frac.size());
    Int whole(intpart + frac, 10);
    Rat lo = recseq::make_rat(whole, scale);
    Rat hi = recseq::make_rat(whole + 1, scale);
    return {lo, hi};
}

// pi bracketed by 40 printed digits (well-known constant), plus a second
// Machin-type evaluation (Gauss) as a computed cross-check.
inline RatInterval pi_reference() {
    return decimal_literal("3.1415926535897932384626433832795028841971");
}

inline RatInterval pi_euler(const Rat& eps) {
    // atan(1/2) + atan(1/3) = atan((1/2 + 1/3)/(1 - 1/6)) = atan(1) = pi/4
    RatInterval a = recseq::idetail::atan_inv(2, eps / 16);
    RatInterval b = recseq::idetail::atan_inv(3, eps / 16);
    return (a + b) * Rat(4);
}

inline RatInterval log2_reference() {
    return decimal_literal("0.6931471805599453094172321214581765680755");
}

// log 2 = sum_{n>=1} 1/(n 2^n): a series independent of the library's
// atanh-based route.
inline RatInterval log2_series(const Rat& eps) {
    Rat sum(0);
    Rat pw(1, 2);
    long n = 1;
    while (true) {
        sum += pw / Rat(n);
        pw = pw / 2;
        ++n;
        Rat tail = pw * Rat(2) / Rat(n);
        if (tail < eps) return {sum, sum + tail};
    }
}

// sqrt(2) bracketed via integer square roots at high scale.
inline RatInterval sqrt2_reference() {
    Int scale = recseq::int_pow(Int(10), 40);
    Int v = 2 * scale * scale;
    Int r;
    mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
    return {recseq::make_rat(r, scale), recseq::make_rat(r + 1, scale)};
}

inline RatInterval sqrt_reference(long x) {
    Int scale = recseq::int_pow(Int(10), 40);
    Int v = Int(x) * scale * scale;
    Int r;
    mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
    return {recseq::make_rat(r, scale), recseq::make_rat(r + 1, scale)};
}

}  // namespace oracles
