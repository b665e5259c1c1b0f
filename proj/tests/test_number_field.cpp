#include <catch2/catch.hpp>

#include <random>

#include "oracles.hpp"
#include "recseq/number_field.hpp"

using namespace recseq;

namespace {
RatPoly P(std::initializer_list<long> coeffs) {
    std::vector<Rat> c;
    for (long v : coeffs) c.emplace_back(v);
    return RatPoly(std::move(c));
}

FieldPtr sqrt2_field() {
    return NumberField::create(P({-2, 0, 1}), Box(RatInterval(Rat(1), Rat(2)), RatInterval(Rat(-1), Rat(1))));
}
FieldPtr gaussian_field() {  // selects +i
    return NumberField::create(P({1, 0, 1}), Box(RatInterval(Rat(-1), Rat(1)), RatInterval(Rat(1, 2), Rat(2))));
}
}  // namespace

TEST_CASE("field construction and certification") {
    auto F = sqrt2_field();
    CHECK(F->degree() == 2);
    CHECK(F->real_embedding());

    auto G = gaussian_field();
    CHECK(G->degree() == 2);
    CHECK(!G->real_embedding());
    CHECK(sgn(G->root_box().im.lo) > 0);

    // reducible minpoly rejected
    CHECK_THROWS_AS(NumberField::create(P({-1, 0, 1}), Box(RatInterval(Rat(0), Rat(2)), RatInterval(Rat(-1), Rat(1)))),
                    domain_error);
    // box with several roots rejected
    CHECK_THROWS_AS(NumberField::create(P({-2, 0, 1}), Box(RatInterval(Rat(-3), Rat(3)), RatInterval(Rat(-1), Rat(1)))),
                    domain_error);
}

TEST_CASE("arithmetic in Q(sqrt 2)") {
    auto F = sqrt2_field();
    NFElement r2 = F->gen();
    CHECK((r2 * r2) == F->from_rat(Rat(2)));
    // 1/(1 + sqrt 2) = -1 + sqrt 2
    NFElement x = F->one() + r2;
    NFElement inv = x.inverse();
    CHECK(inv == F->from_coords({Rat(-1), Rat(1)}));
    CHECK((x * inv).is_one());
}

TEST_CASE("arithmetic in Q(i)") {
    auto G = gaussian_field();
    NFElement i = G->gen();
    NFElement one = G->one();
    // (1+i)/(1-i) = i, verified by re-expansion (1-i)*i = 1+i
    NFElement q = (one + i) / (one - i);
    CHECK(q == i);
    CHECK(((one - i) * i) == (one + i));
    CHECK_THROWS_AS(G->zero().inverse(), domain_error);
}

TEST_CASE("field axioms on random samples") {
    auto F = sqrt2_field();
    std::mt19937 rng(777);
    auto rnd = [&] {
        return F->from_coords({make_rat(Int(static_cast<long>(rng() % 11) - 5), Int(1 + rng() % 3)),
                               make_rat(Int(static_cast<long>(rng() % 11) - 5), Int(1 + rng() % 3))});
    };
    for (int t = 0; t < 500; ++t) {
        NFElement a = rnd(), b = rnd(), c = rnd();
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        if (!a.is_zero()) CHECK((a * a.inverse()).is_one());
    }
}

TEST_CASE("power products") {
    auto Q = NumberField::rationals();
    std::vector<NFElement> lams = {Q->from_rat(Rat(2)), Q->from_rat(Rat(4))};
    CHECK(nf_pow_product_is_one(lams, {Int(2), Int(-1)}));
    CHECK(!nf_pow_product_is_one({Q->from_rat(Rat(2)), Q->from_rat(Rat(3))}, {Int(1), Int(1)}));

    auto G = gaussian_field();
    NFElement i = G->gen();
    CHECK(nf_pow_product_is_one({i, -i}, {Int(1), Int(1)}));
    CHECK_THROWS_AS(nf_pow_product_is_one({G->zero()}, {Int(1)}), domain_error);
}

TEST_CASE("embedding boxes") {
    auto F = sqrt2_field();
    Box b = nf_embed(F->gen(), Rat(1, 10000));
    CHECK(b.width() < Rat(1, 10000));
    CHECK(b.re.contains(oracles::sqrt2_reference().mid()));
    CHECK(b.im.contains(Rat(0)));

    // rational element: degenerate box
    Box r = nf_embed(F->from_rat(Rat(3, 2)), Rat(1, 10));
    CHECK(r.re.is_point());
    CHECK(r.re.lo == Rat(3, 2));

    auto G = gaussian_field();
    Box gi = nf_embed(G->gen(), Rat(1, 100));
    CHECK(gi.re.contains(Rat(0)));
    CHECK(sgn(gi.im.lo) > 0);  // +i selected, not -i
    CHECK(gi.im.contains(Rat(1)));
}

TEST_CASE("embedding respects products") {
    auto F = sqrt2_field();
    std::mt19937 rng(31337);
    EmbeddingContext ctx(F);
    for (int t = 0; t < 25; ++t) {
        NFElement a = F->from_coords({Rat(static_cast<long>(rng() % 7) - 3), Rat(static_cast<long>(rng() % 7) - 3)});
        NFElement b = F->from_coords({Rat(static_cast<long>(rng() % 7) - 3), Rat(static_cast<long>(rng() % 7) - 3)});
        for (const Rat& eps : {Rat(1, 100), Rat(1, 100000)}) {
            Box ba = ctx.embed(a, eps), bb = ctx.embed(b, eps), bab = ctx.embed(a * b, eps);
            Box prod = ba * bb;
            CHECK(prod.intersect(bab).has_value());
        }
    }
}

TEST_CASE("compositum of sqrt2 and sqrt3") {
    auto F = sqrt2_field();
    Box b3(RatInterval(Rat(3, 2), Rat(2)), RatInterval(Rat(-1), Rat(1)));
    auto C = nf_compositum(F, P({-3, 0, 1}), b3);
    CHECK(C.field->degree() == 4);
    // theta' = sqrt2 + sqrt3 has minimal polynomial x^4 - 10x^2 + 1
    CHECK(C.field->minpoly() == P({1, 0, -10, 0, 1}));
    // images satisfy their minimal polynomials
    CHECK((C.old_gen * C.old_gen) == C.field->from_rat(Rat(2)));
    CHECK((C.new_root * C.new_root) == C.field->from_rat(Rat(3)));
}

TEST_CASE("compositum with the rationals") {
    auto Q = NumberField::rationals();
    auto C = nf_compositum(Q, P({1, 0, 1}), Box(RatInterval(Rat(-1), Rat(1)), RatInterval(Rat(1, 2), Rat(2))));
    CHECK(C.field->degree() == 2);
    CHECK((C.new_root * C.new_root) == C.field->from_rat(Rat(-1)));
}

TEST_CASE("compositum degree can collapse") {
    // Q(i) with another copy of x^2+1: degree stays 2 and mu maps to +-theta
    auto G = gaussian_field();
    auto C = nf_compositum(G, P({1, 0, 1}), Box(RatInterval(Rat(-1), Rat(1)), RatInterval(Rat(1, 2), Rat(2))));
    CHECK(C.field->degree() == 2);
    CHECK((C.new_root * C.new_root) == C.field->from_rat(Rat(-1)));
    // chose the +i box, and the old generator was +i as well: images agree
    CHECK(C.new_root == C.old_gen);
    // lower box selects the conjugate
    auto C2 = nf_compositum(G, P({1, 0, 1}), Box(RatInterval(Rat(-1), Rat(1)), RatInterval(Rat(-2), Rat(-1, 2))));
    CHECK(C2.field->degree() == 2);
    CHECK(C2.new_root == -C2.old_gen);
}

TEST_CASE("roots of unity") {
    auto G = gaussian_field();
    CHECK(nf_root_of_unity_order(G->gen()) == 4);
    CHECK(nf_root_of_unity_order(-G->one()) == 2);
    CHECK(nf_root_of_unity_order(G->one()) == 1);
    CHECK(!nf_root_of_unity_order(G->gen() + G->one()).has_value());

    auto F = sqrt2_field();
    CHECK(!nf_root_of_unity_order(F->gen()).has_value());

    // order k implies a^k = 1 and no smaller power works
    NFElement i = G->gen();
    long k = *nf_root_of_unity_order(i);
    CHECK(nf_pow_product_is_one({i}, {Int(k)}));
    for (long j = 1; j < k; ++j) CHECK(!nf_pow_product_is_one({i}, {Int(j)}));
}

TEST_CASE("power products agree with interval evaluation") {
    auto G = gaussian_field();
    std::mt19937 rng(999);
    std::vector<NFElement> lams = {G->gen(), G->one() + G->gen(), G->from_rat(Rat(2)), -G->gen()};
    EmbeddingContext ctx(G);
    int exact_true = 0;
    for (int t = 0; t < 200; ++t) {
        std::vector<Int> e;
        for (size_t j = 0; j < lams.size(); ++j) e.emplace_back(static_cast<long>(rng() % 7) - 3);
        bool exact = nf_pow_product_is_one(lams, e);
        // box evaluation at high precision
        Box acc = Box::real_point(Rat(1));
        for (size_t j = 0; j < lams.size(); ++j) {
            Box bj = ctx.embed(lams[j], rat_pow2(-100));
            Int cnt = abs(e[j]);
            Box pw = Box::real_point(Rat(1));
            for (Int q(0); q < cnt; ++q) pw = pw * bj;
            if (sgn(e[j]) < 0) pw = pw.recip();
            acc = acc * pw;
        }
        if (exact) {
            ++exact_true;
            CHECK(acc.re.contains(Rat(1)));
            CHECK(acc.im.contains(Rat(0)));
        } else {
            bool separated = !acc.re.contains(Rat(1)) || !acc.im.contains(Rat(0));
            CHECK(separated);
        }
    }
    CHECK(exact_true > 0);
}
