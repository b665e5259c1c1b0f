#pragma once

// Exact complex root isolation for rational polynomials.
//
// Real roots: Sturm sequences + sign bisection. Complex roots: the winding
// number of p along a rectangle boundary, computed combinatorially from the
// real-axis crossings of p restricted to the edges (all decisions are exact
// sign evaluations of rational polynomials). A box is "countable" when p has
// no root on its boundary; subdivision jitters split lines around that.

#include <array>
#include <cassert>
#include <optional>
#include <utility>
#include <vector>

#include "recseq/interval.hpp"
#include "recseq/poly.hpp"

namespace recseq {

// ---------------------------------------------------------------- Sturm ---

inline std::vector<RatPoly> sturm_chain(const RatPoly& p) {
    std::vector<RatPoly> chain;
    chain.push_back(p);
    RatPoly d = p.derivative();
    if (d.is_zero()) return chain;
    chain.push_back(d);
    while (true) {
        RatPoly r = poly_mod(chain[chain.size() - 2], chain.back());
        if (r.is_zero()) break;
        chain.push_back(-r);
    }
    return chain;
}

inline int sign_variations_at(const std::vector<RatPoly>& chain, const Rat& x) {
    int var = 0, last = 0;
    for (const auto& q : chain) {
        int s = sgn(q.eval(x));
        if (s == 0) continue;
        if (last != 0 && s != last) ++var;
        last = s;
    }
    return var;
}

// Distinct real roots of squarefree p in the open interval (a, b); requires
// p(a) != 0 and p(b) != 0.
inline int count_real_roots_between(const std::vector<RatPoly>& chain, const Rat& a, const Rat& b) {
    return sign_variations_at(chain, a) - sign_variations_at(chain, b);
}

// Isolating intervals (each containing exactly one root, endpoints non-root
// unless the interval is an exact rational point) for squarefree p on (a, b).
inline void isolate_real_roots_rec(const RatPoly& p, const std::vector<RatPoly>& chain, const Rat& a, const Rat& b,
                                   std::vector<RatInterval>& out, int depth = 0) {
    if (depth > 4000) throw domain_error(errc::internal, "real root isolation did not terminate");
    int n = count_real_roots_between(chain, a, b);
    if (n == 0) return;
    if (n == 1) {
        out.emplace_back(a, b);
        return;
    }
    Rat mid = (a + b) / 2;
    // nudge away from a root of p at the split point
    Rat step = (b - a) / 64;
    int guard = 0;
    while (sgn(p.eval(mid)) == 0) {
        mid += step;
        step = -step * Rat(1, 2);
        if (++guard > 64) throw domain_error(errc::internal, "could not find a non-root split point");
    }
    isolate_real_roots_rec(p, chain, a, mid, out, depth + 1);
    isolate_real_roots_rec(p, chain, mid, b, out, depth + 1);
}

inline std::vector<RatInterval> isolate_real_roots(const RatPoly& p_squarefree, const Rat& a, const Rat& b) {
    if (sgn(p_squarefree.eval(a)) == 0 || sgn(p_squarefree.eval(b)) == 0)
        throw domain_error(errc::invalid_input, "isolation endpoints must not be roots");
    auto chain = sturm_chain(p_squarefree);
    std::vector<RatInterval> out;
    isolate_real_roots_rec(p_squarefree, chain, a, b, out);
    return out;
}

// Shrink an isolating interval of a simple real root below target width.
// The sign of p changes across the (simple) root, so plain sign bisection.
inline RatInterval refine_real_root(const RatPoly& p, RatInterval iv, const Rat& target) {
    int sa = sgn(p.eval(iv.lo));
    if (sa == 0) return RatInterval::point(iv.lo);
    int sb = sgn(p.eval(iv.hi));
    if (sb == 0) return RatInterval::point(iv.hi);
    if (sa == sb) throw domain_error(errc::internal, "refine_real_root: no sign change");
    while (iv.width() >= target) {
        Rat mid = iv.mid();
        int sm = sgn(p.eval(mid));
        if (sm == 0) return RatInterval::point(mid);
        if (sm == sa)
            iv.lo = mid;
        else
            iv.hi = mid;
    }
    return iv;
}

// ------------------------------------------------------- winding numbers ---

namespace rdetail {

struct ComplexPoly {
    RatPoly re, im;  // polynomials in the edge parameter t
};

// p(z(t)) for z(t) = u + t*(v-u); u, v rational complex points.
inline ComplexPoly edge_poly(const RatPoly& p, const Rat& ux, const Rat& uy, const Rat& vx, const Rat& vy) {
    RatPoly zr({ux, vx - ux});
    RatPoly zi({uy, vy - uy});
    ComplexPoly acc{RatPoly(), RatPoly()};
    for (int i = p.degree(); i >= 0; --i) {
        RatPoly nre = acc.re * zr - acc.im * zi;
        RatPoly nim = acc.re * zi + acc.im * zr;
        acc.re = nre + RatPoly::constant(p.coeff(i));
        acc.im = nim;
    }
    return acc;
}

// one item of the cyclic boundary walk: a sign run of Im(p) or a zero set of
// Im(p) carrying the (constant, nonzero) sign of Re(p) on it
struct WalkItem {
    bool is_zero;
    int sign;  // run: sign of Im; zero: sign of Re at the zero set
};

// Sign of A at the (unique simple-with-sign-info) root of B inside iv.
// Refines iv against B until interval evaluation of A excludes zero.
inline int sign_at_root(const RatPoly& a, const RatPoly& b, RatInterval iv) {
    for (int guard = 0; guard < 4000; ++guard) {
        RatInterval av = eval_interval(a, iv);
        if (!av.contains_zero()) return sgn(av.lo) > 0 ? 1 : -1;
        if (iv.is_point()) {
            int s = sgn(a.eval(iv.lo));
            if (s == 0) break;
            return s;
        }
        // bisect against b (sign change across a simple root of squarefree b)
        Rat mid = iv.mid();
        int sm = sgn(b.eval(mid));
        if (sm == 0) {
            iv = RatInterval::point(mid);
            continue;
        }
        int slo = sgn(b.eval(iv.lo));
        if (slo == 0) {
            iv = RatInterval::point(iv.lo);
            continue;
        }
        if (sm == slo)
            iv.lo = mid;
        else
            iv.hi = mid;
    }
    throw domain_error(errc::internal, "sign_at_root: A appears to vanish with B");
}

// Build the walk items of one edge, or nullopt when p has a root on it.
inline std::optional<std::vector<WalkItem>> edge_items(const RatPoly& p, const Rat& ux, const Rat& uy, const Rat& vx,
                                                       const Rat& vy) {
    ComplexPoly e = edge_poly(p, ux, uy, vx, vy);
    RatPoly A = e.re, B = e.im;
    // root of p on the edge <=> common root of A and B in [0, 1]
    if (A.is_zero() && B.is_zero()) return std::nullopt;
    RatPoly g = A.is_zero() ? B : (B.is_zero() ? A : poly_gcd(A, B));
    if (!g.is_constant()) {
        RatPoly gs = squarefree_part(g);
        if (sgn(gs.eval(Rat(0))) == 0 || sgn(gs.eval(Rat(1))) == 0) return std::nullopt;
        if (!isolate_real_roots(gs, Rat(0), Rat(1)).empty()) return std::nullopt;
    }

    std::vector<WalkItem> items;
    if (B.is_zero()) {
        // the image travels along the real axis; A has constant sign there
        int s = sgn(A.eval(Rat(1, 2)));
        if (s == 0) throw domain_error(errc::internal, "edge_items: zero on zero-run edge");
        items.push_back({true, s});
        return items;
    }

    bool zero_at_0 = sgn(B.eval(Rat(0))) == 0;
    bool zero_at_1 = sgn(B.eval(Rat(1))) == 0;
    RatPoly Bint = squarefree_part(B);
    // divide out roots at the endpoints so Sturm endpoints are clean
    while (sgn(Bint.eval(Rat(0))) == 0) Bint = poly_div_exact(Bint, RatPoly::x());
    while (sgn(Bint.eval(Rat(1))) == 0) Bint = poly_div_exact(Bint, RatPoly({Rat(-1), Rat(1)}));

    std::vector<RatInterval> roots;
    if (!Bint.is_constant()) roots = isolate_real_roots(Bint, Rat(0), Rat(1));
    std::sort(roots.begin(), roots.end(), [](const RatInterval& x, const RatInterval& y) { return x.lo < y.lo; });
    // shrink until pairwise disjoint and interior
    bool ok = false;
    while (!ok) {
        ok = true;
        for (size_t i = 0; i < roots.size(); ++i) {
            if (sgn(roots[i].lo) <= 0 || roots[i].hi >= 1 ||
                (i + 1 < roots.size() && roots[i].hi >= roots[i + 1].lo)) {
                ok = false;
                roots[i] = refine_real_root(Bint, roots[i], roots[i].width() / 4);
            }
        }
    }

    // samples strictly between consecutive zero sets
    std::vector<Rat> samples;
    Rat prev_hi(0);
    for (const auto& r : roots) {
        samples.push_back((prev_hi + r.lo) / 2);
        prev_hi = r.hi;
    }
    samples.push_back((prev_hi + 1) / 2);

    if (zero_at_0) items.push_back({true, [&] {
                        int s = sgn(A.eval(Rat(0)));
                        if (s == 0) throw domain_error(errc::internal, "boundary root missed");
                        return s;
                    }()});
    for (size_t i = 0; i < roots.size() + 1; ++i) {
        int rs = sgn(B.eval(samples[i]));
        if (rs == 0) throw domain_error(errc::internal, "sample hit a root");
        items.push_back({false, rs});
        if (i < roots.size()) items.push_back({true, sign_at_root(A, Bint, roots[i])});
    }
    if (zero_at_1) items.push_back({true, [&] {
                        int s = sgn(A.eval(Rat(1)));
                        if (s == 0) throw domain_error(errc::internal, "boundary root missed");
                        return s;
                    }()});
    return items;
}

}  // namespace rdetail

// Number of roots of p (with multiplicity; pass a squarefree p for counts of
// distinct roots) strictly inside the box, or nullopt if a root lies on the
// boundary. The box must be non-degenerate.
inline std::optional<long> count_roots_in_box(const RatPoly& p, const Box& box) {
    if (p.is_zero()) throw domain_error(errc::invalid_input, "root count of zero polynomial");
    if (!(box.re.lo < box.re.hi) || !(box.im.lo < box.im.hi))
        throw domain_error(errc::invalid_input, "root count needs a non-degenerate box");
    if (p.degree() == 0) return 0;

    const Rat &a = box.re.lo, &b = box.re.hi, &c = box.im.lo, &d = box.im.hi;
    // counterclockwise
    const std::array<std::array<Rat, 4>, 4> edges = {{
        {a, c, b, c},
        {b, c, b, d},
        {b, d, a, d},
        {a, d, a, c},
    }};
    std::vector<rdetail::WalkItem> seq;
    for (const auto& e : edges) {
        auto items = rdetail::edge_items(p, e[0], e[1], e[2], e[3]);
        if (!items) return std::nullopt;
        seq.insert(seq.end(), items->begin(), items->end());
    }
    // cyclic merge of adjacent equal-kind items
    std::vector<rdetail::WalkItem> merged;
    for (const auto& it : seq) {
        if (!merged.empty() && merged.back().is_zero == it.is_zero) {
            if (merged.back().sign != it.sign)
                throw domain_error(errc::internal, "inconsistent boundary walk");
            continue;
        }
        merged.push_back(it);
    }
    while (merged.size() > 1 && merged.front().is_zero == merged.back().is_zero) {
        if (merged.front().sign != merged.back().sign) throw domain_error(errc::internal, "inconsistent boundary walk");
        merged.pop_back();
    }
    bool any_zero = false;
    for (const auto& it : merged) any_zero |= it.is_zero;
    if (!any_zero) return 0;
    if (merged.size() < 2) return 0;

    long w = 0, balance = 0;
    size_t n = merged.size();
    for (size_t i = 0; i < n; ++i) {
        if (!merged[i].is_zero) continue;
        const auto& prev = merged[(i + n - 1) % n];
        const auto& next = merged[(i + 1) % n];
        if (prev.is_zero || next.is_zero) throw domain_error(errc::internal, "walk did not alternate");
        int transition = (next.sign - prev.sign) / 2;  // -1, 0, +1
        balance += transition;
        if (merged[i].sign > 0) w += transition;
    }
    if (balance != 0) throw domain_error(errc::internal, "boundary walk does not close up");
    if (w < 0) throw domain_error(errc::internal, "negative winding: orientation bug");
    return w;
}

// -------------------------------------------------- subdivision / refine ---

namespace rdetail {

inline std::vector<Rat> split_candidates(const RatInterval& iv) {
    Rat m = iv.mid(), w = iv.width();
    std::vector<Rat> out = {m};
    for (int j = 1; j <= 24; ++j) {
        Rat off = w * make_rat(Int(j), Int(64));
        out.push_back(m + off);
        out.push_back(m - off);
    }
    return out;
}

}  // namespace rdetail

// Split a countable box along its wider axis into two countable halves.
inline std::pair<Box, Box> split_box(const RatPoly& p, const Box& box) {
    bool split_re = box.re.width() >= box.im.width();
    const RatInterval& axis = split_re ? box.re : box.im;
    for (const Rat& cut : rdetail::split_candidates(axis)) {
        if (!(axis.lo < cut && cut < axis.hi)) continue;
        Box lo_box = box, hi_box = box;
        if (split_re) {
            lo_box.re = RatInterval(box.re.lo, cut);
            hi_box.re = RatInterval(cut, box.re.hi);
        } else {
            lo_box.im = RatInterval(box.im.lo, cut);
            hi_box.im = RatInterval(cut, box.im.hi);
        }
        auto c1 = count_roots_in_box(p, lo_box);
        if (!c1) continue;
        auto c2 = count_roots_in_box(p, hi_box);
        if (!c2) continue;
        return {lo_box, hi_box};
    }
    throw domain_error(errc::internal, "no admissible split line found");
}

// All isolating boxes (count exactly 1 each) of the roots inside a countable
// box. Requires p squarefree in the region.
inline void isolate_in_box(const RatPoly& p, const Box& box, std::vector<Box>& out, int depth = 0) {
    if (depth > 512) throw domain_error(errc::internal, "box isolation did not terminate");
    auto c = count_roots_in_box(p, box);
    if (!c) throw domain_error(errc::box_isolation, "root on box boundary");
    if (*c == 0) return;
    if (*c == 1) {
        out.push_back(box);
        return;
    }
    auto [b1, b2] = split_box(p, box);
    isolate_in_box(p, b1, out, depth + 1);
    isolate_in_box(p, b2, out, depth + 1);
}

// One interval-Newton contraction; nullopt if not applicable here.
inline std::optional<Box> newton_contract(const RatPoly& p, const RatPoly& dp, const Box& box) {
    Box dpb = eval_box(dp, box);
    if (dpb.norm2().contains_zero()) return std::nullopt;
    Box mid = Box::point(box.re.mid(), box.im.mid());
    Box fm = eval_box(p, mid);
    Box n = mid - fm / dpb;
    auto inter = n.intersect(box);
    if (!inter) return std::nullopt;
    return inter;
}

// Shrink a box isolating exactly one simple root below the target width.
inline Box refine_complex_root_box(const RatPoly& p, Box box, const Rat& target) {
    RatPoly dp = p.derivative();
    long bits = std::max<long>(64, -floor_log2(std::min(target, Rat(1, 2))) + 32);
    int guard = 0;
    while (box.width() >= target) {
        if (++guard > 20000) throw domain_error(errc::internal, "complex refinement did not terminate");
        auto n = newton_contract(p, dp, box);
        if (n && n->width() * 4 <= box.width() * 3) {
            box = n->round_outward(bits);
            continue;
        }
        auto [b1, b2] = split_box(p, box);
        auto c1 = count_roots_in_box(p, b1);
        box = (c1 && *c1 == 1) ? b1 : b2;
    }
    return box;
}

// ------------------------------------------------------------- all roots ---

struct RootBox {
    Box box;
    bool real;
};

// Isolating boxes for all complex roots of a squarefree polynomial.
// Real roots get exact real-line boxes (im = [0,0]); complex roots come in
// conjugate pairs with sign-definite imaginary parts.
inline std::vector<RootBox> all_root_boxes(const RatPoly& p_in) {
    if (p_in.degree() < 1) return {};
    RatPoly p = squarefree_part(p_in);
    std::vector<RootBox> out;
    if (p.degree() == 1) {
        out.push_back({Box::real_point(-p.coeff(0) / p.coeff(1)), true});
        return out;
    }
    Rat R = cauchy_root_bound(p) + 1;

    std::vector<RatInterval> reals = isolate_real_roots(p, -R, R);
    for (auto& iv : reals) {
        RatInterval r = refine_real_root(p, iv, Rat(1, 1024));
        out.push_back({Box(r, RatInterval::point(Rat(0))), true});
    }

    long n_complex = p.degree() - static_cast<long>(reals.size());
    if (n_complex == 0) return out;
    long n_upper = n_complex / 2;
    // find a floor delta > 0 below every positive imaginary part
    Rat delta = R / 1024;
    for (int tries = 0;; ++tries) {
        if (tries > 200) throw domain_error(errc::internal, "could not capture all upper-half roots");
        Box upper(RatInterval(-R, R), RatInterval(delta, R));
        auto c = count_roots_in_box(p, upper);
        if (c && *c == n_upper) {
            std::vector<Box> boxes;
            isolate_in_box(p, upper, boxes);
            for (auto& b : boxes) {
                out.push_back({b, false});
                out.push_back({Box(b.re, RatInterval(-b.im.hi, -b.im.lo)), false});  // conjugate
            }
            return out;
        }
        if (!c)
            delta = delta * Rat(13, 16);  // jitter off a boundary root
        else
            delta = delta / 1024;
    }
}

}  // namespace recseq
