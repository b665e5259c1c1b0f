#include <catch2/catch.hpp>

#include <random>

#include "recseq/cfinite.hpp"

using namespace recseq;

namespace {

FieldPtr Q() { return NumberField::rationals(); }

CFiniteSeq make(const FieldPtr& f, std::initializer_list<long> coeffs, std::initializer_list<long> init) {
    std::vector<NFElement> c, v;
    for (long x : coeffs) c.push_back(f->from_rat(Rat(x)));
    for (long x : init) v.push_back(f->from_rat(Rat(x)));
    return CFiniteSeq(f, std::move(c), std::move(v));
}

CFiniteSeq fib(const FieldPtr& f) { return make(f, {1, 1, -1}, {0, 1}); }
CFiniteSeq a006131(const FieldPtr& f) { return make(f, {4, 1, -1}, {1, 1}); }
CFiniteSeq geo(const FieldPtr& f, long g) { return make(f, {g, -1}, {1}); }

std::vector<long> longs(const std::vector<NFElement>& v) {
    std::vector<long> out;
    for (const auto& x : v) out.push_back(static_cast<long>(x.rat_value().get_num().get_si()));
    return out;
}

// does the recurrence of s annihilate the reference terms?
bool annihilates(const CFiniteSeq& s, const std::vector<NFElement>& ref) {
    size_t r = static_cast<size_t>(s.order());
    for (size_t n = 0; n + r < ref.size(); ++n) {
        NFElement acc = s.field()->zero();
        for (size_t i = 0; i <= r; ++i) acc = acc + s.coeffs()[i] * ref[n + i];
        if (!acc.is_zero()) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("term generation") {
    auto f = Q();
    CHECK(longs(fib(f).terms(7)) == std::vector<long>({0, 1, 1, 2, 3, 5, 8}));
    CHECK(longs(a006131(f).terms(5)) == std::vector<long>({1, 1, 5, 9, 29}));
    CHECK(longs(CFiniteSeq::zero(f).terms(3)) == std::vector<long>({0, 0, 0}));
}

TEST_CASE("zero test") {
    auto f = Q();
    CHECK(make(f, {1, 1, -1}, {0, 0}).is_zero());
    CHECK(!fib(f).is_zero());
    // re-encoded copy with redundant higher-order recurrence: difference is zero
    CFiniteSeq redundant = make(f, {-1, 0, 2, -1}, {0, 1, 1});  // (x-1)(x^2-x-1) char, Fibonacci initials
    CHECK(cf_sub(fib(f), redundant).is_zero());
    CHECK(cf_equals(fib(f), redundant));
}

TEST_CASE("addition and multiplication") {
    auto f = Q();
    CFiniteSeq s = cf_add(geo(f, 2), geo(f, 3));
    CHECK(s.order() <= 2);
    CHECK(longs(s.terms(4)) == std::vector<long>({2, 5, 13, 35}));

    CFiniteSeq p = cf_mul(fib(f), fib(f));
    CHECK(p.order() <= 4);
    CHECK(longs(p.terms(6)) == std::vector<long>({0, 1, 1, 4, 9, 25}));

    CHECK(cf_equals(cf_add(fib(f), CFiniteSeq::zero(f)), fib(f)));
}

TEST_CASE("polynomial multiple") {
    auto f = Q();
    CFiniteSeq n2n = cf_poly_mul(geo(f, 2), RatPoly::x());
    CHECK(n2n.order() == 2);
    CHECK(longs(n2n.terms(5)) == std::vector<long>({0, 2, 8, 24, 64}));
    // char poly (x-2)^2 = x^2 - 4x + 4
    NFPoly chi = n2n.char_poly();
    CHECK(chi.coeff(0).rat_value() == Rat(4));
    CHECK(chi.coeff(1).rat_value() == Rat(-4));

    CHECK(cf_equals(cf_poly_mul(fib(f), RatPoly::constant(Rat(1))), fib(f)));

    CFiniteSeq nf = cf_poly_mul(fib(f), RatPoly::x());
    CHECK(nf.order() <= 4);
    CHECK(longs(nf.terms(6)) == std::vector<long>({0, 1, 2, 6, 12, 25}));
}

TEST_CASE("subsequence") {
    auto f = Q();
    CFiniteSeq s = cf_subsequence(fib(f), 2, 0);
    CHECK(longs(s.terms(5)) == std::vector<long>({0, 1, 3, 8, 21}));
    CHECK(s.order() == 2);
    // s(n+2) = 3 s(n+1) - s(n): characteristic x^2 - 3x + 1
    NFPoly chi = s.char_poly();
    CHECK(chi.coeff(0).rat_value() == Rat(1));
    CHECK(chi.coeff(1).rat_value() == Rat(-3));

    CHECK(cf_equals(cf_subsequence(fib(f), 1, 0), fib(f)));

    CFiniteSeq g = cf_subsequence(geo(f, 2), 3, 1);  // 2^(3n+1) = 2*8^n
    CHECK(g.order() == 1);
    CHECK(longs(g.terms(3)) == std::vector<long>({2, 16, 128}));
}

TEST_CASE("interlacing") {
    auto f = Q();
    CFiniteSeq ones = CFiniteSeq::constant(f->one());
    CFiniteSeq zero = CFiniteSeq::zero(f);
    CFiniteSeq e = cf_interlace({ones, zero});
    CHECK(e.order() <= 2);
    CHECK(longs(e.terms(6)) == std::vector<long>({1, 0, 1, 0, 1, 0}));

    CHECK(cf_equals(cf_interlace({fib(f)}), fib(f)));

    CFiniteSeq m = cf_interlace({geo(f, 2), geo(f, 3)});
    CHECK(longs(m.terms(8)) == std::vector<long>({1, 1, 2, 3, 4, 9, 8, 27}));
    // the unminimized constructed operator annihilates: check via raw build
    CFiniteSeq raw = cf_interlace({geo(f, 2), geo(f, 3)}, false);
    CHECK(annihilates(raw, m.terms(24)));
}

TEST_CASE("minimization") {
    auto f = Q();
    CFiniteSeq redundant = make(f, {-1, 0, 2, -1}, {0, 1, 1});
    CFiniteSeq m = cf_minimize(redundant);
    CHECK(m.order() == 2);
    CHECK(cf_equals(m, fib(f)));
    // idempotent, never increases order
    CFiniteSeq mm = cf_minimize(m);
    CHECK(mm.order() == 2);

    CFiniteSeq z = make(f, {1, 0, 0, 0, 0, 1}, {0, 0, 0, 0, 0});
    CHECK(cf_minimize(z).order() == 0);

    CFiniteSeq s = cf_mul(cf_add(geo(f, 2), geo(f, 3)), CFiniteSeq::constant(f->one()));
    CHECK(cf_minimize(s).order() == 2);  // minimal char (x-2)(x-3)
}

TEST_CASE("companion matrices") {
    auto f = Q();
    auto m1 = cf_companion(make(f, {2, -1}, {1}));
    CHECK(m1.rows() == 1);
    CHECK(m1.at(0, 0).rat_value() == Rat(2));

    auto mf = cf_companion(fib(f));
    CHECK(mf.at(0, 0).rat_value() == Rat(0));
    CHECK(mf.at(0, 1).rat_value() == Rat(1));
    CHECK(mf.at(1, 0).rat_value() == Rat(1));
    CHECK(mf.at(1, 1).rat_value() == Rat(1));

    auto ma = cf_companion(a006131(f));
    CHECK(ma.at(0, 1).rat_value() == Rat(4));
    CHECK(ma.at(1, 1).rat_value() == Rat(1));
}

TEST_CASE("matrix power sequences") {
    auto f = Q();
    Matrix<NFElement> m2(1, 1, f->from_rat(Rat(2)));
    auto s = cf_matrix_power_seq(m2, 1, 0);
    CHECK(longs(s.at(0, 0).terms(4)) == std::vector<long>({1, 2, 4, 8}));

    auto s2 = cf_matrix_power_seq(m2, 2, 1);  // 2^(2n+1)
    CHECK(longs(s2.at(0, 0).terms(3)) == std::vector<long>({2, 8, 32}));
    NFPoly chi = s2.at(0, 0).char_poly();
    CHECK(chi.degree() == 1);
    CHECK(chi.coeff(0).rat_value() == Rat(-4));

    // Fibonacci companion squared: entries satisfy x^2 - 3x + 1
    auto mf = cf_companion(fib(f));
    auto ps = cf_matrix_power_seq(mf, 2, 0, false);
    for (size_t i = 0; i < 2; ++i)
        for (size_t j = 0; j < 2; ++j) {
            NFPoly c = ps.at(i, j).char_poly();
            CHECK(c.degree() <= 2);
        }
    // compare against direct matrix powers for n <= 6
    Matrix<NFElement> cur = Matrix<NFElement>::identity(2, f->one());
    Matrix<NFElement> step = mf * mf;
    for (long n = 0; n <= 6; ++n) {
        for (size_t i = 0; i < 2; ++i)
            for (size_t j = 0; j < 2; ++j) CHECK(ps.at(i, j).term(n) == cur.at(i, j));
        cur = cur * step;
    }
    // negative exponent demand on a singular matrix
    Matrix<NFElement> sing(1, 1, f->zero());
    CHECK_THROWS_AS(cf_matrix_power_seq(sing, 1, -1), domain_error);
}

TEST_CASE("eigenvalues") {
    auto f = Q();
    EigenData e1 = cf_eigenvalues(a006131(f));
    REQUIRE(e1.eigenvalues.size() == 2);
    CHECK(e1.field->degree() == 2);
    CHECK(e1.zero_multiplicity == 0);
    for (const auto& [lam, mult] : e1.eigenvalues) {
        CHECK(mult == 1);
        // both roots satisfy x^2 = x + 4
        CHECK((lam * lam) == (lam + e1.field->from_rat(Rat(4))));
    }

    EigenData e2 = cf_eigenvalues(make(f, {1, 0, -1}, {1, 0}));  // c(n) - c(n+2) = 0
    REQUIRE(e2.eigenvalues.size() == 2);
    bool has_one = false, has_minus_one = false;
    for (const auto& [lam, mult] : e2.eigenvalues) {
        if (lam.is_one()) has_one = true;
        if ((-lam).is_one()) has_minus_one = true;
    }
    CHECK(has_one);
    CHECK(has_minus_one);

    EigenData e3 = cf_eigenvalues(cf_poly_mul(geo(f, 2), RatPoly::x()));
    REQUIRE(e3.eigenvalues.size() == 1);
    CHECK(e3.eigenvalues[0].first.rat_value() == Rat(2));
    CHECK(e3.eigenvalues[0].second == 2);

    // char poly rebuilt from eigen data equals the minimized char poly
    CFiniteSeq m = cf_minimize(a006131(f));
    NFPoly rebuilt(e1.field, {e1.field->one()});
    for (const auto& [lam, mult] : e1.eigenvalues) {
        NFPoly lin(e1.field, {-lam, e1.field->one()});
        for (int t = 0; t < mult; ++t) rebuilt = rebuilt * lin;
    }
    // compare coefficients after rebasing the original char poly
    // (base field is Q, so coefficients inject as rationals)
    NFPoly chi = m.char_poly();
    for (int i = 0; i <= chi.degree(); ++i)
        CHECK(rebuilt.coeff(i) == e1.field->from_rat(chi.coeff(i).rat_value()));
}

TEST_CASE("degeneracy") {
    auto f = Q();
    CHECK(cf_is_nondegenerate(fib(f)));
    CHECK(!cf_is_nondegenerate(make(f, {1, 0, -1}, {1, 0})));
    CHECK(cf_is_nondegenerate(geo(f, 2)));
}

TEST_CASE("eventual nonvanishing") {
    auto f = Q();
    CFiniteSeq s = cf_sub(geo(f, 2), CFiniteSeq::constant(f->from_rat(Rat(2))));  // 2^n - 2
    auto r = cf_eventually_nonzero(s, 100);
    CHECK(r.value);
    CHECK(r.zeros_found == std::vector<long>({1}));
    CHECK(r.value_certified);
    CHECK(!r.zeros_complete);

    auto rz = cf_eventually_nonzero(CFiniteSeq::zero(f), 10);
    CHECK(!rz.value);
    CHECK(rz.zeros_found.size() == 10);

    CFiniteSeq inter = cf_interlace({CFiniteSeq::zero(f), CFiniteSeq::constant(f->one())}, false);
    auto ri = cf_eventually_nonzero(inter, 50);
    CHECK(!ri.value);
}

TEST_CASE("order bounds hold on random inputs") {
    auto f = Q();
    std::mt19937 rng(808);
    std::vector<CFiniteSeq> pool;
    pool.push_back(fib(f));
    pool.push_back(geo(f, 2));
    pool.push_back(geo(f, -1));
    pool.push_back(make(f, {1, 0, -1}, {1, 0}));
    pool.push_back(make(f, {2, -3, 1, -1}, {1, 0, 2}));
    pool.push_back(make(f, {-1, 2, 0, 0, -1}, {1, 2, 3, 4}));
    for (int t = 0; t < 20; ++t) {
        const CFiniteSeq& a = pool[rng() % pool.size()];
        const CFiniteSeq& b = pool[rng() % pool.size()];
        CFiniteSeq sum = cf_add(a, b);
        CFiniteSeq prod = cf_mul(a, b);
        CHECK(sum.order() <= a.order() + b.order());
        CHECK(prod.order() <= std::max(1, a.order() * b.order()));
        auto ta = a.terms(50 + a.order() + b.order());
        auto tb = b.terms(50 + a.order() + b.order());
        std::vector<NFElement> rs, rp;
        for (size_t i = 0; i < ta.size(); ++i) {
            rs.push_back(ta[i] + tb[i]);
            rp.push_back(ta[i] * tb[i]);
        }
        CHECK(annihilates(sum, rs));
        CHECK(annihilates(prod, rp));

        long l = 1 + rng() % 3, k = rng() % 3;
        CFiniteSeq sub = cf_subsequence(a, l, k);
        CHECK(sub.order() <= std::max(1, a.order()));
        auto tfull = a.terms(l * 60 + k + 1);
        std::vector<NFElement> rsub;
        for (long n = 0; n < 60; ++n) rsub.push_back(tfull[static_cast<size_t>(l * n + k)]);
        CHECK(annihilates(sub, rsub));

        CFiniteSeq il = cf_interlace({a, b});
        CHECK(il.order() <= 2 * (a.order() + b.order()));
        std::vector<NFElement> ril;
        for (size_t n = 0; n < 60; ++n) ril.push_back(n % 2 == 0 ? ta[n / 2] : tb[n / 2]);
        CHECK(annihilates(il, ril));
    }
}

TEST_CASE("sectioning completeness") {
    auto f = Q();
    for (long d : {2L, 3L}) {
        CFiniteSeq c = make(f, {2, -3, 1, -1}, {1, 0, 2});
        std::vector<CFiniteSeq> sections;
        for (long i = 0; i < d; ++i) sections.push_back(cf_subsequence(c, d, i));
        CFiniteSeq back = cf_interlace(sections);
        CHECK(cf_equals(back, c));
    }
}
