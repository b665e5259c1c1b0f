#include <catch2/catch.hpp>

#include <random>

#include "oracles.hpp"
#include "recseq/interval.hpp"

using namespace recseq;

TEST_CASE("interval arithmetic basics") {
    RatInterval a(Rat(1), Rat(2)), b(Rat(-1), Rat(3));
    auto s = a + b;
    CHECK(s.lo == Rat(0));
    CHECK(s.hi == Rat(5));
    auto p = a * b;
    CHECK(p.lo == Rat(-2));
    CHECK(p.hi == Rat(6));
    CHECK(a.recip().lo == Rat(1, 2));
    CHECK_THROWS_AS(b.recip(), domain_error);
    auto sq = RatInterval(Rat(-2), Rat(1)).square();
    CHECK(sq.lo == Rat(0));
    CHECK(sq.hi == Rat(4));
}

TEST_CASE("box arithmetic and rotation") {
    Box z = Box::point(Rat(1), Rat(1));
    Box w = z * z;  // (1+i)^2 = 2i
    CHECK(w.re.is_point());
    CHECK(w.re.lo == Rat(0));
    CHECK(w.im.lo == Rat(2));
    Box r = z.rotate_i(1);  // i*(1+i) = -1+i
    CHECK(r.re.lo == Rat(-1));
    CHECK(r.im.lo == Rat(1));
    Box q = Box::point(Rat(1), Rat(1)) / Box::point(Rat(1), Rat(-1));  // (1+i)/(1-i) = i
    CHECK(q.re.contains(Rat(0)));
    CHECK(q.im.contains(Rat(1)));
}

TEST_CASE("pi_box contains pi at every precision") {
    auto ref = oracles::pi_reference();
    for (const Rat& eps : {Rat(1), Rat(1, 1000), Rat(1, 1000000), rat_pow2(-80)}) {
        Box p = pi_box(eps);
        CHECK(p.is_real());
        CHECK(p.re.width() < eps);
        CHECK(p.re.contains(ref));
        // cross-check against an independent Machin-type identity
        auto euler = oracles::pi_euler(eps / 16);
        CHECK(p.re.contains(euler.mid()));
    }
    // eps = 1: containment only, e.g. inside [3,4]
    Box coarse = pi_box(Rat(1));
    CHECK(coarse.re.lo > Rat(3) - 1);
    CHECK(coarse.re.hi < Rat(4) + 1);
}

TEST_CASE("log of real points") {
    // log 1 = 0
    Box l1 = log_box(Box::real_point(Rat(1)), Rat(1, 1000));
    CHECK(l1.re.contains(Rat(0)));
    CHECK(l1.im.contains(Rat(0)));
    CHECK(l1.width() < Rat(1, 1000));

    // log 2 in [0.693, 0.6932]
    Box l2 = log_box(Box::real_point(Rat(2)), Rat(1, 1000));
    CHECK(l2.re.lo >= Rat(693, 1000));
    CHECK(l2.re.hi <= Rat(6932, 10000));
    CHECK(l2.re.contains(oracles::log2_reference()));
    CHECK(l2.im.contains(Rat(0)));
    auto series = oracles::log2_series(rat_pow2(-100));
    CHECK(l2.re.contains(series.mid()));
}

TEST_CASE("log of i and branch handling") {
    Box li = log_box(Box::point(Rat(0), Rat(1)), Rat(1, 100000));
    CHECK(li.re.contains(Rat(0)));
    // Im = pi/2
    auto refpi = oracles::pi_reference();
    CHECK(li.im.contains(refpi.mid() / 2));

    // negative real axis: principal value has Im = +pi
    Box lm2 = log_box(Box::real_point(Rat(-2)), Rat(1, 100000));
    CHECK(lm2.im.contains(refpi.mid()));
    CHECK(lm2.re.contains(oracles::log2_reference()));

    // lower half plane near the cut: Im close to -pi, no exception
    Box below = log_box(Box::point(Rat(-2), Rat(-1, 100)), Rat(1, 1000));
    CHECK(sgn(below.im.hi) < 0);

    CHECK_THROWS_AS(log_box(Box::point(Rat(0), Rat(0)), Rat(1, 10)), domain_error);
    // box straddling the cut
    Box straddle(RatInterval(Rat(-3), Rat(-2)), RatInterval(Rat(-1, 10), Rat(1, 10)));
    CHECK_THROWS_AS(log_box(straddle, Rat(1, 10)), domain_error);
}

TEST_CASE("interval soundness on random points with an eps ladder") {
    std::mt19937 rng(987654);
    auto rnd_rat = [&](long lim) {
        long num = static_cast<long>(rng() % (2 * lim + 1)) - lim;
        long den = 1 + static_cast<long>(rng() % lim);
        return make_rat(Int(num), Int(den));
    };
    const Rat tight = rat_pow2(-120);
    int checked = 0;
    for (int i = 0; i < 1000; ++i) {
        Rat x = rnd_rat(50), y = rnd_rat(50);
        if (sgn(x) == 0 && sgn(y) == 0) continue;
        if (sgn(x) < 0 && sgn(y) < 0) y = -y;  // keep off the ambiguous side of the cut
        if (sgn(x) < 0 && sgn(y) == 0) y = Rat(1, 7);
        Box z = Box::point(x, y);
        Box ref = log_box(z, tight);
        for (const Rat& eps : {Rat(1), Rat(1, 1 << 10), rat_pow2(-40)}) {
            Box loose = log_box(z, eps);
            CHECK(loose.re.contains(ref.re));
            CHECK(loose.im.contains(ref.im));
        }
        ++checked;
    }
    CHECK(checked > 900);
}

TEST_CASE("monotone refinement never excludes the reference value") {
    const Rat tight = rat_pow2(-140);
    for (long num : {2L, 3L, 7L, 10L}) {
        Box z = Box::point(Rat(num, 3), Rat(num, 5));
        Box ref = log_box(z, tight);
        Rat eps(1, 2);
        for (int k = 0; k < 20; ++k) {
            Box b = log_box(z, eps);
            CHECK(b.re.contains(ref.re.mid()));
            CHECK(b.im.contains(ref.im.mid()));
            eps = eps / 2;
        }
    }
}

TEST_CASE("log of fat boxes still contains all point logs") {
    Box z(RatInterval(Rat(2), Rat(3)), RatInterval(Rat(1), Rat(2)));
    Box lb = log_box(z, Rat(1, 100));
    for (const auto& [x, y] : std::vector<std::pair<Rat, Rat>>{
             {Rat(2), Rat(1)}, {Rat(3), Rat(2)}, {Rat(5, 2), Rat(3, 2)}, {Rat(2), Rat(2)}}) {
        Box pl = log_box(Box::point(x, y), rat_pow2(-60));
        CHECK(lb.re.contains(pl.re));
        CHECK(lb.im.contains(pl.im));
    }
}
