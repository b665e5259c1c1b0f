#pragma once

// Exact rational scalars on top of GMP, plus the error taxonomy shared by the
// whole library. Everything downstream (polynomials, intervals, lattices,
// sequences) works over these values; no floating point anywhere.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace recseq {

using Int = mpz_class;
using Rat = mpq_class;

enum class errc {
    zero_division,
    reducible_minpoly,
    box_isolation,
    branch_cut,
    zero_box,
    degree_cap,
    mixed_fields,
    missing_patch,
    dependent_input,
    zero_eigenvalue,
    invalid_input,
    internal,
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::zero_division: return "zero_division";
        case errc::reducible_minpoly: return "reducible_minpoly";
        case errc::box_isolation: return "box_isolation";
        case errc::branch_cut: return "branch_cut";
        case errc::zero_box: return "zero_box";
        case errc::degree_cap: return "degree_cap";
        case errc::mixed_fields: return "mixed_fields";
        case errc::missing_patch: return "missing_patch";
        case errc::dependent_input: return "dependent_input";
        case errc::zero_eigenvalue: return "zero_eigenvalue";
        case errc::invalid_input: return "invalid_input";
        case errc::internal: return "internal";
    }
    return "unknown";
}

class domain_error : public std::runtime_error {
  public:
    domain_error(errc code, const std::string& msg, long index = -1)
        : std::runtime_error(msg), code_(code), index_(index) {}
    errc code() const { return code_; }
    long index() const { return index_; }

  private:
    errc code_;
    long index_;  // e.g. the singular index of a missing patch
};

inline Int int_gcd(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Int int_lcm(const Int& a, const Int& b) {
    Int l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

inline Int int_pow(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) throw domain_error(errc::zero_division, "rational with zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline Rat rat_pow(const Rat& base, long e) {
    if (e == 0) return Rat(1);
    if (base == 0) {
        if (e < 0) throw domain_error(errc::zero_division, "0 raised to negative power");
        return Rat(0);
    }
    unsigned long a = static_cast<unsigned long>(e < 0 ? -e : e);
    Rat r;
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num().get_mpz_t(), a);
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den().get_mpz_t(), a);
    r.canonicalize();
    if (e < 0) r = 1 / r;
    return r;
}

// 2^k as an exact rational, k of either sign.
inline Rat rat_pow2(long k) {
    Rat r(1);
    if (k >= 0)
        mpz_mul_2exp(r.get_num_mpz_t(), r.get_num().get_mpz_t(), static_cast<unsigned long>(k));
    else
        mpz_mul_2exp(r.get_den_mpz_t(), r.get_den().get_mpz_t(), static_cast<unsigned long>(-k));
    r.canonicalize();
    return r;
}

inline Int rat_floor(const Rat& q) {
    Int r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return r;
}

inline Int rat_ceil(const Rat& q) {
    Int r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return r;
}

// Nearest integer, ties rounded up. Good enough for LLL size reduction.
inline Int rat_round(const Rat& q) { return rat_floor(q + Rat(1, 2)); }

inline bool rat_is_integer(const Rat& q) { return q.get_den() == 1; }

// Largest k with 2^k <= q. Requires q > 0.
inline long floor_log2(const Rat& q) {
    if (sgn(q) <= 0) throw domain_error(errc::invalid_input, "floor_log2 needs a positive value");
    long nb = static_cast<long>(mpz_sizeinbase(q.get_num().get_mpz_t(), 2));
    long db = static_cast<long>(mpz_sizeinbase(q.get_den().get_mpz_t(), 2));
    long k = nb - db;  // within 1 of the truth; fix up by comparison
    while (rat_pow2(k) > q) --k;
    while (rat_pow2(k + 1) <= q) ++k;
    return k;
}

// Rational upper bound on sqrt(q), q >= 0.
inline Rat rat_sqrt_upper(const Rat& q, long bits = 96) {
    if (sgn(q) < 0) throw domain_error(errc::invalid_input, "sqrt of negative value");
    Int scaled = rat_floor(q * rat_pow2(2 * bits));
    Int r;
    mpz_sqrt(r.get_mpz_t(), scaled.get_mpz_t());
    return Rat(r + 1) / rat_pow2(bits);
}

inline std::string rat_to_string(const Rat& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Rat rat_from_string(std::string_view s) {
    auto bad = [&] { return domain_error(errc::invalid_input, "bad rational literal: " + std::string(s)); };
    if (s.empty()) throw bad();
    std::string str(s);
    try {
        auto slash = str.find('/');
        if (slash == std::string::npos) {
            Int n(str, 10);
            return Rat(n);
        }
        Int num(str.substr(0, slash), 10);
        Int den(str.substr(slash + 1), 10);
        return make_rat(num, den);
    } catch (const std::invalid_argument&) {
        throw bad();
    }
}

// Scalar shims used by the generic matrix / elimination code.
inline Rat zero_like(const Rat&) { return Rat(0); }
inline Rat one_like(const Rat&) { return Rat(1); }
inline bool is_zero_val(const Rat& q) { return sgn(q) == 0; }
inline long complexity_of(const Rat&) { return 0; }

}  // namespace recseq
