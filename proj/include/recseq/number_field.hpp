#pragma once

// A working number field Q(theta) given by a monic irreducible minimal
// polynomial plus an isolating complex box that pins down one particular
// root. Elements are coordinate vectors in the power basis. The compositum
// construction (primitive element via resultants) lets several algebraic
// numbers live in a single field, which is what the exponent-lattice
// machinery needs.

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "recseq/factor.hpp"
#include "recseq/interval.hpp"
#include "recseq/poly.hpp"
#include "recseq/roots.hpp"

namespace recseq {

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

class NFElement {
  public:
    NFElement() = default;
    NFElement(FieldPtr field, std::vector<Rat> coords);

    const FieldPtr& field() const { return field_; }
    const std::vector<Rat>& coords() const { return coords_; }

    bool is_zero() const {
        for (const auto& c : coords_)
            if (sgn(c) != 0) return false;
        return true;
    }
    bool is_one() const;
    bool is_rational() const {
        for (size_t i = 1; i < coords_.size(); ++i)
            if (sgn(coords_[i]) != 0) return false;
        return true;
    }
    Rat rat_value() const {
        if (!is_rational()) throw domain_error(errc::invalid_input, "element is not rational");
        return coords_.empty() ? Rat(0) : coords_[0];
    }

    bool operator==(const NFElement& o) const { return coords_ == o.coords_; }
    bool operator!=(const NFElement& o) const { return !(*this == o); }

    NFElement operator+(const NFElement& o) const;
    NFElement operator-(const NFElement& o) const;
    NFElement operator-() const;
    NFElement operator*(const NFElement& o) const;
    NFElement operator/(const NFElement& o) const;
    NFElement operator*(const Rat& s) const;
    NFElement inverse() const;
    NFElement pow(const Int& e) const;

  private:
    FieldPtr field_;
    std::vector<Rat> coords_;
};

class NumberField : public std::enable_shared_from_this<NumberField> {
  public:
    // Certify minpoly irreducible (monic, nonconstant) and the box isolating
    // exactly one of its roots, then build the field.
    static FieldPtr create(const RatPoly& minpoly, const Box& root_box) {
        if (minpoly.degree() < 1 || minpoly.lead() != 1)
            throw domain_error(errc::invalid_input, "minimal polynomial must be monic and nonconstant");
        if (minpoly.degree() >= 2) {
            auto f = rat_poly_factor(minpoly);
            if (f.factors.size() != 1 || f.factors[0].second != 1)
                throw domain_error(errc::reducible_minpoly, "minimal polynomial is reducible");
        }
        return certify_box_and_build(minpoly, root_box);
    }

    // Internal path for polynomials already known irreducible.
    static FieldPtr create_trusted(const RatPoly& minpoly, const Box& root_box) {
        return certify_box_and_build(minpoly, root_box);
    }

    static FieldPtr rationals() {
        return create_trusted(RatPoly::x(), Box::real_point(Rat(0)));
    }

    const RatPoly& minpoly() const { return minpoly_; }
    const Box& root_box() const { return root_box_; }
    bool real_embedding() const { return real_root_; }
    int degree() const { return degree_; }
    bool is_rationals() const { return degree_ == 1; }

    NFElement from_coords(std::vector<Rat> c) const {
        c.resize(static_cast<size_t>(degree_), Rat(0));
        return NFElement(shared_from_this(), std::move(c));
    }
    NFElement zero() const { return from_coords({}); }
    NFElement one() const { return from_coords({Rat(1)}); }
    NFElement from_rat(const Rat& q) const { return from_coords({q}); }
    NFElement gen() const {
        if (degree_ == 1) return from_rat(-minpoly_.coeff(0));
        return from_coords({Rat(0), Rat(1)});
    }

    // theta^(degree + i) for i = 0 .. degree-2, as coordinate vectors
    const std::vector<std::vector<Rat>>& power_table() const { return powers_; }

  private:
    NumberField(RatPoly mp, Box box, bool real)
        : minpoly_(std::move(mp)), root_box_(std::move(box)), real_root_(real), degree_(minpoly_.degree()) {
        size_t d = static_cast<size_t>(degree_);
        if (d >= 2) {
            std::vector<Rat> cur(d, Rat(0));  // theta^d reduced
            for (size_t i = 0; i < d; ++i) cur[i] = -minpoly_.coeff(static_cast<int>(i));
            powers_.push_back(cur);
            for (size_t i = 1; i + 1 < d; ++i) {
                std::vector<Rat> nxt(d, Rat(0));  // multiply by theta, reduce
                Rat top = cur[d - 1];
                for (size_t j = d - 1; j > 0; --j) nxt[j] = cur[j - 1];
                nxt[0] = Rat(0);
                if (sgn(top) != 0)
                    for (size_t j = 0; j < d; ++j) nxt[j] += top * powers_[0][j];
                powers_.push_back(nxt);
                cur = powers_.back();
            }
        }
    }

    static FieldPtr certify_box_and_build(const RatPoly& minpoly, const Box& root_box) {
        if (minpoly.degree() == 1) {
            Rat root = -minpoly.coeff(0);
            if (!root_box.contains_point(root, Rat(0)))
                throw domain_error(errc::box_isolation, "box does not contain the rational root");
            return FieldPtr(new NumberField(minpoly, Box::real_point(root), true));
        }
        if (!(root_box.re.lo < root_box.re.hi))
            throw domain_error(errc::box_isolation, "degenerate box cannot isolate an irrational root");

        // real roots of the minimal polynomial within the box
        std::optional<RatInterval> real_root_iv;
        if (root_box.im.contains_zero()) {
            auto ivs = isolate_real_roots(minpoly, root_box.re.lo, root_box.re.hi);
            for (auto& iv : ivs) {
                RatInterval r = refine_real_root(minpoly, iv, root_box.re.width() / 1024);
                if (root_box.re.contains(r.mid())) {
                    if (real_root_iv) throw domain_error(errc::box_isolation, "box contains several roots");
                    real_root_iv = r;
                }
            }
        }
        if (real_root_iv && root_box.im.is_point()) {
            // purely real box: Sturm already certified uniqueness inside it
            return FieldPtr(new NumberField(minpoly, Box(*real_root_iv, RatInterval::point(Rat(0))), true));
        }
        if (!(root_box.im.lo < root_box.im.hi))
            throw domain_error(errc::box_isolation, "degenerate box cannot isolate this root");

        auto cnt = count_roots_in_box(minpoly, root_box);
        if (!cnt) throw domain_error(errc::box_isolation, "a root lies on the box boundary");
        if (*cnt == 0) throw domain_error(errc::box_isolation, "box isolates no root");
        if (*cnt > 1) throw domain_error(errc::box_isolation, "box contains several roots");

        if (real_root_iv) {
            // the unique root is the real one
            return FieldPtr(new NumberField(minpoly, Box(*real_root_iv, RatInterval::point(Rat(0))), true));
        }
        // complex root: shrink until the imaginary part has a definite sign
        Box b = root_box;
        while (b.im.contains_zero()) b = refine_complex_root_box(minpoly, b, b.width() / 4);
        return FieldPtr(new NumberField(minpoly, b, false));
    }

    RatPoly minpoly_;
    Box root_box_;
    bool real_root_;
    int degree_;
    std::vector<std::vector<Rat>> powers_;
};

inline NFElement::NFElement(FieldPtr field, std::vector<Rat> coords) : field_(std::move(field)), coords_(std::move(coords)) {
    coords_.resize(static_cast<size_t>(field_->degree()), Rat(0));
}

inline bool NFElement::is_one() const {
    if (coords_.empty() || coords_[0] != 1) return false;
    for (size_t i = 1; i < coords_.size(); ++i)
        if (sgn(coords_[i]) != 0) return false;
    return true;
}

inline void check_same_field(const NFElement& a, const NFElement& b) {
    if (a.field() != b.field()) throw domain_error(errc::mixed_fields, "elements of different fields");
}

inline NFElement NFElement::operator+(const NFElement& o) const {
    check_same_field(*this, o);
    std::vector<Rat> c(coords_);
    for (size_t i = 0; i < c.size(); ++i) c[i] += o.coords_[i];
    return NFElement(field_, std::move(c));
}

inline NFElement NFElement::operator-(const NFElement& o) const {
    check_same_field(*this, o);
    std::vector<Rat> c(coords_);
    for (size_t i = 0; i < c.size(); ++i) c[i] -= o.coords_[i];
    return NFElement(field_, std::move(c));
}

inline NFElement NFElement::operator-() const {
    std::vector<Rat> c(coords_);
    for (auto& x : c) x = -x;
    return NFElement(field_, std::move(c));
}

inline NFElement NFElement::operator*(const Rat& s) const {
    std::vector<Rat> c(coords_);
    for (auto& x : c) x *= s;
    return NFElement(field_, std::move(c));
}

inline NFElement NFElement::operator*(const NFElement& o) const {
    check_same_field(*this, o);
    size_t d = coords_.size();
    std::vector<Rat> prod(2 * d - 1, Rat(0));
    for (size_t i = 0; i < d; ++i) {
        if (sgn(coords_[i]) == 0) continue;
        for (size_t j = 0; j < d; ++j) {
            if (sgn(o.coords_[j]) == 0) continue;
            prod[i + j] += coords_[i] * o.coords_[j];
        }
    }
    std::vector<Rat> red(prod.begin(), prod.begin() + static_cast<long>(d));
    const auto& table = field_->power_table();
    for (size_t i = d; i < prod.size(); ++i) {
        if (sgn(prod[i]) == 0) continue;
        const auto& row = table[i - d];
        for (size_t j = 0; j < d; ++j) red[j] += prod[i] * row[j];
    }
    return NFElement(field_, std::move(red));
}

inline NFElement NFElement::inverse() const {
    if (is_zero()) throw domain_error(errc::zero_division, "inverse of zero field element");
    if (field_->degree() == 1) return field_->from_rat(Rat(1) / coords_[0]);
    // extended Euclid of the coordinate polynomial with the minimal polynomial
    std::vector<Rat> cc(coords_);
    RatPoly a(std::move(cc));
    RatPoly m = field_->minpoly();
    RatPoly r0 = m, r1 = a;
    RatPoly t0 = RatPoly::zero(), t1 = RatPoly::constant(Rat(1));
    while (!r1.is_zero()) {
        auto [q, r] = poly_divmod(r0, r1);
        RatPoly t2 = t0 - q * t1;
        r0 = std::move(r1);
        r1 = std::move(r);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.degree() != 0) throw domain_error(errc::internal, "gcd with irreducible minpoly not constant");
    RatPoly inv = t0 / r0.coeff(0);
    inv = poly_mod(inv, m);
    std::vector<Rat> c(static_cast<size_t>(field_->degree()), Rat(0));
    for (int i = 0; i <= inv.degree(); ++i) c[static_cast<size_t>(i)] = inv.coeff(i);
    return NFElement(field_, std::move(c));
}

inline NFElement NFElement::operator/(const NFElement& o) const { return *this * o.inverse(); }

inline NFElement NFElement::pow(const Int& e) const {
    if (sgn(e) == 0) return field_->one();
    NFElement base = sgn(e) < 0 ? inverse() : *this;
    Int n = abs(e);
    NFElement acc = field_->one();
    while (sgn(n) > 0) {
        if (mpz_odd_p(n.get_mpz_t())) acc = acc * base;
        base = base * base;
        n >>= 1;
    }
    return acc;
}

// Exact test of lam_1^e_1 * ... * lam_m^e_m = 1 by binary exponentiation.
inline bool nf_pow_product_is_one(const std::vector<NFElement>& lams, const std::vector<Int>& exps) {
    if (lams.size() != exps.size()) throw domain_error(errc::invalid_input, "length mismatch");
    if (lams.empty()) return true;
    NFElement acc = lams[0].field()->one();
    for (size_t i = 0; i < lams.size(); ++i) {
        if (lams[i].is_zero()) throw domain_error(errc::invalid_input, "zero base in power product");
        if (sgn(exps[i]) == 0) continue;
        acc = acc * lams[i].pow(exps[i]);
    }
    return acc.is_one();
}

// ------------------------------------------------------------- embedding ---

// Holds a privately refined copy of the generator's isolating box so repeated
// embeddings at increasing precision do not restart from scratch. The field
// object itself is never mutated.
class EmbeddingContext {
  public:
    explicit EmbeddingContext(FieldPtr field) : field_(std::move(field)), box_(field_->root_box()) {}

    // box of width < eps around the distinguished root of the minimal polynomial
    Box generator_box(const Rat& eps) {
        if (field_->degree() == 1) return box_;
        if (field_->real_embedding()) {
            if (box_.re.width() >= eps) box_.re = refine_real_root(field_->minpoly(), box_.re, eps);
            return box_;
        }
        if (box_.width() >= eps) box_ = refine_complex_root_box(field_->minpoly(), box_, eps);
        return box_;
    }

    // box of width < eps containing the embedding of a
    Box embed(const NFElement& a, const Rat& eps) {
        if (a.field().get() != field_.get()) throw domain_error(errc::mixed_fields, "element of another field");
        if (a.is_rational()) return Box::real_point(a.coords()[0]);
        std::vector<Rat> cp(a.coords());
        RatPoly coord_poly(std::move(cp));
        Rat target = eps;
        for (int guard = 0; guard < 20000; ++guard) {
            Box g = generator_box(target);
            Box v = eval_box(coord_poly, g);
            if (v.width() < eps) return v;
            target = target / 4;
        }
        throw domain_error(errc::internal, "embedding refinement did not converge");
    }

    const FieldPtr& field() const { return field_; }

  private:
    FieldPtr field_;
    Box box_;
};

// Stateless convenience wrapper.
inline Box nf_embed(const NFElement& a, const Rat& eps) {
    EmbeddingContext ctx(a.field());
    return ctx.embed(a, eps);
}

// ---------------------------------------------------- polynomials over K ---

class NFPoly {
  public:
    NFPoly() = default;
    NFPoly(FieldPtr field, std::vector<NFElement> coeffs) : field_(std::move(field)), c_(std::move(coeffs)) { trim(); }
    static NFPoly from_ratpoly(const FieldPtr& f, const RatPoly& p) {
        std::vector<NFElement> c;
        for (int i = 0; i <= p.degree(); ++i) c.push_back(f->from_rat(p.coeff(i)));
        return NFPoly(f, std::move(c));
    }

    const FieldPtr& field() const { return field_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    NFElement coeff(int i) const {
        if (i < 0 || i >= static_cast<int>(c_.size())) return field_->zero();
        return c_[static_cast<size_t>(i)];
    }
    const NFElement& lead() const { return c_.back(); }
    const std::vector<NFElement>& coeffs() const { return c_; }

    NFPoly operator+(const NFPoly& o) const {
        std::vector<NFElement> c(std::max(c_.size(), o.c_.size()), field_->zero());
        for (size_t i = 0; i < c_.size(); ++i) c[i] = c[i] + c_[i];
        for (size_t i = 0; i < o.c_.size(); ++i) c[i] = c[i] + o.c_[i];
        return NFPoly(field_, std::move(c));
    }
    NFPoly operator-() const {
        std::vector<NFElement> c(c_);
        for (auto& x : c) x = -x;
        return NFPoly(field_, std::move(c));
    }
    NFPoly operator-(const NFPoly& o) const { return *this + (-o); }
    NFPoly operator*(const NFPoly& o) const {
        if (is_zero() || o.is_zero()) return NFPoly(field_, {});
        std::vector<NFElement> c(c_.size() + o.c_.size() - 1, field_->zero());
        for (size_t i = 0; i < c_.size(); ++i)
            for (size_t j = 0; j < o.c_.size(); ++j) c[i + j] = c[i + j] + c_[i] * o.c_[j];
        return NFPoly(field_, std::move(c));
    }
    NFPoly operator*(const NFElement& s) const {
        std::vector<NFElement> c(c_);
        for (auto& x : c) x = x * s;
        return NFPoly(field_, std::move(c));
    }

    std::pair<NFPoly, NFPoly> divmod(const NFPoly& b) const {
        if (b.is_zero()) throw domain_error(errc::zero_division, "polynomial division by zero");
        std::vector<NFElement> rem(c_);
        int db = b.degree(), dq = degree() - db;
        if (dq < 0) return {NFPoly(field_, {}), *this};
        NFElement inv = b.lead().inverse();
        std::vector<NFElement> q(static_cast<size_t>(dq) + 1, field_->zero());
        for (int i = dq; i >= 0; --i) {
            NFElement f = rem[static_cast<size_t>(i + db)] * inv;
            if (f.is_zero()) continue;
            q[static_cast<size_t>(i)] = f;
            for (int j = 0; j <= db; ++j)
                rem[static_cast<size_t>(i + j)] = rem[static_cast<size_t>(i + j)] - f * b.coeff(j);
        }
        return {NFPoly(field_, std::move(q)), NFPoly(field_, std::move(rem))};
    }
    NFPoly mod(const NFPoly& b) const { return divmod(b).second; }
    NFPoly div_exact(const NFPoly& b) const {
        auto [q, r] = divmod(b);
        if (!r.is_zero()) throw domain_error(errc::internal, "inexact division over number field");
        return q;
    }

    NFPoly monic() const {
        if (is_zero()) throw domain_error(errc::invalid_input, "monic of zero polynomial");
        return *this * lead().inverse();
    }

    NFPoly derivative() const {
        if (c_.size() <= 1) return NFPoly(field_, {});
        std::vector<NFElement> c(c_.size() - 1, field_->zero());
        for (size_t i = 1; i < c_.size(); ++i) c[i - 1] = c_[i] * Rat(static_cast<long>(i));
        return NFPoly(field_, std::move(c));
    }

    NFElement eval(const NFElement& x) const {
        NFElement acc = field_->zero();
        for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    // p(a + b*x)
    NFPoly compose_linear(const NFElement& a, const NFElement& b) const {
        NFPoly lin(field_, {a, b});
        NFPoly r(field_, {});
        for (size_t i = c_.size(); i-- > 0;) r = r * lin + NFPoly(field_, {c_[i]});
        return r;
    }

  private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    FieldPtr field_;
    std::vector<NFElement> c_;
};

inline NFPoly nfpoly_gcd(NFPoly a, NFPoly b) {
    while (!b.is_zero()) {
        NFPoly r = a.mod(b);
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    return a.monic();
}

// Yun over K; only multiplicity structure is needed downstream.
inline std::vector<std::pair<NFPoly, int>> nf_squarefree_decomposition(const NFPoly& p) {
    std::vector<std::pair<NFPoly, int>> out;
    if (p.degree() <= 0) return out;
    NFPoly g = nfpoly_gcd(p, p.derivative());
    NFPoly w = p.div_exact(g);
    NFPoly y = p.derivative().div_exact(g);
    NFPoly z = y - w.derivative();
    int i = 1;
    while (w.degree() > 0) {
        NFPoly gi = nfpoly_gcd(w, z);
        if (gi.degree() > 0) out.emplace_back(gi.monic(), i);
        w = w.div_exact(gi);
        y = z.div_exact(gi);
        z = y - w.derivative();
        ++i;
    }
    return out;
}

// ------------------------------------------------------------ compositum ---

// Evaluate an element of the old field inside a bigger field, given the image
// of the old generator there.
inline NFElement rebase(const NFElement& a, const NFElement& old_gen_in_new) {
    const FieldPtr& K = old_gen_in_new.field();
    NFElement acc = K->zero();
    const auto& c = a.coords();
    for (size_t i = c.size(); i-- > 0;) acc = acc * old_gen_in_new + K->from_rat(c[i]);
    return acc;
}

struct Compositum {
    FieldPtr field;       // K' containing both inputs
    NFElement old_gen;    // image of the old field's generator
    NFElement new_root;   // image of the adjoined root of g
};

namespace nfdetail {

// Res_y(f(y), k^deg(g) * g((z - y)/k)) as a polynomial in z, by evaluation
// and interpolation.
inline RatPoly compositum_resultant(const RatPoly& f, const RatPoly& g, long k) {
    int D = f.degree() * g.degree();
    std::vector<Rat> xs, ys;
    Rat scale = rat_pow(Rat(k), g.degree());
    long v = 0;
    while (static_cast<int>(xs.size()) < D + 1) {
        Rat z0(v);
        RatPoly h = g.compose_linear(z0 / Rat(k), Rat(-1, 1) / Rat(k)) * scale;
        xs.push_back(z0);
        ys.push_back(resultant(f, h));
        v = v > 0 ? -v : -v + 1;  // 0, 1, -1, 2, -2, ...
    }
    return interpolate(xs, ys);
}

// Decide whether two certified isolating boxes of the same squarefree
// polynomial select the same root. Certified boxes have root-free
// boundaries, so refining one of them decides in finitely many steps.
inline bool same_root(const RatPoly& p, const Box& a_in, const Box& b, bool a_real, bool b_real) {
    if (a_real != b_real) return false;
    if (a_real) {
        RatInterval ia = a_in.re;
        const RatInterval& ib = b.re;
        for (int guard = 0; guard < 20000; ++guard) {
            if (ib.contains(ia)) return true;
            if (ia.hi < ib.lo || ib.hi < ia.lo) return false;
            ia = refine_real_root(p, ia, ia.width() / 4);
            if (ia.is_point()) return ib.contains(ia.lo);
        }
        throw domain_error(errc::internal, "same_root (real) did not decide");
    }
    Box a = a_in;
    for (int guard = 0; guard < 20000; ++guard) {
        if (b.contains_box(a)) return true;
        if (!a.intersect(b)) return false;
        a = refine_complex_root_box(p, a, a.width() / 4);
    }
    throw domain_error(errc::internal, "same_root did not decide");
}

}  // namespace nfdetail

// Adjoin to F a root mu of the monic irreducible g selected by g_root_box.
// Returns a field generated by theta' = theta + k*mu together with exact
// images of theta and mu. The distinguished embedding of the result is
// compatible with both input boxes.
inline Compositum nf_compositum(const FieldPtr& F, const RatPoly& g, const Box& g_root_box, long degree_cap = 64,
                                bool trusted_irreducible = false) {
    if (g.degree() < 1 || g.lead() != 1)
        throw domain_error(errc::invalid_input, "compositum needs a monic nonconstant polynomial");
    if (!trusted_irreducible && g.degree() >= 2) {
        auto fac = rat_poly_factor(g);
        if (fac.factors.size() != 1 || fac.factors[0].second != 1)
            throw domain_error(errc::reducible_minpoly, "compositum polynomial is reducible");
    }
    if (g.degree() == 1) {
        return {F, F->gen(), F->from_rat(-g.coeff(0))};
    }
    if (F->degree() == 1) {
        FieldPtr K = NumberField::create_trusted(g, g_root_box);
        return {K, K->from_rat(F->gen().rat_value()), K->gen()};
    }
    if (static_cast<long>(F->degree()) * g.degree() > degree_cap)
        throw domain_error(errc::degree_cap, "compositum degree would exceed the cap");

    const RatPoly& f = F->minpoly();
    // certified box for mu (build a scratch field on g to normalize the box)
    FieldPtr Kg = NumberField::create_trusted(g, g_root_box);
    Box mu_box = Kg->root_box();

    for (long k = 1; k <= 64; ++k) {
        RatPoly R = nfdetail::compositum_resultant(f, g, k);
        if (R.degree() != f.degree() * g.degree()) continue;
        if (poly_gcd(R, R.derivative()).degree() != 0) continue;  // not squarefree: retry with next k

        auto factors = rat_poly_factor(R).factors;
        // identify the factor whose root is theta + k*mu via interval evaluation
        EmbeddingContext fctx(F);
        EmbeddingContext gctx(Kg);
        Rat prec(1, 1024);
        const RatPoly* chosen = nullptr;
        for (int guard = 0; guard < 200 && !chosen; ++guard) {
            Box tb = fctx.generator_box(prec);
            Box mb = gctx.generator_box(prec);
            Box zb = tb + mb * Rat(k);
            const RatPoly* candidate = nullptr;
            int alive = 0;
            for (const auto& [fac, mult] : factors) {
                Box v = eval_box(fac, zb);
                if (v.re.contains_zero() && v.im.contains_zero()) {
                    ++alive;
                    candidate = &fac;
                }
            }
            if (alive == 1) chosen = candidate;
            prec = prec / 16;
        }
        if (!chosen) throw domain_error(errc::internal, "could not identify the compositum factor");
        const RatPoly m = *chosen;
        if (m.degree() > degree_cap) throw domain_error(errc::degree_cap, "compositum degree exceeds the cap");

        // isolating box for theta' = theta + k*mu as a root of m
        Rat prec2(1, 1024);
        FieldPtr K;
        for (int guard = 0; guard < 200 && !K; ++guard) {
            Box tb = fctx.generator_box(prec2);
            Box mb = gctx.generator_box(prec2);
            Box zb = tb + mb * Rat(k);
            bool real_target = zb.im.is_point() && sgn(zb.im.lo) == 0;
            try {
                if (real_target) {
                    K = NumberField::create_trusted(m, Box(zb.re, RatInterval(-prec2, prec2)));
                } else {
                    // widen a degenerate axis slightly so counting applies
                    Box cand = zb;
                    if (cand.re.is_point()) cand.re = RatInterval(cand.re.lo - prec2, cand.re.hi + prec2);
                    if (cand.im.is_point()) cand.im = RatInterval(cand.im.lo - prec2, cand.im.hi + prec2);
                    K = NumberField::create_trusted(m, cand);
                }
            } catch (const domain_error& e) {
                if (e.code() != errc::box_isolation) throw;
            }
            prec2 = prec2 / 16;
        }
        if (!K) throw domain_error(errc::internal, "could not isolate the compositum root");

        // express mu inside K': gcd(g(x), f(theta' - k x)) is linear
        NFPoly gK = NFPoly::from_ratpoly(K, g);
        NFPoly fK = NFPoly::from_ratpoly(K, f);
        NFPoly shifted = fK.compose_linear(K->gen(), K->from_rat(Rat(-k)));
        NFPoly h = nfpoly_gcd(gK, shifted);
        if (h.degree() != 1) throw domain_error(errc::internal, "compositum gcd is not linear");
        NFElement mu = -(h.coeff(0));  // h monic
        NFElement theta_old = K->gen() - mu * Rat(k);
        if (!NFPoly::from_ratpoly(K, f).eval(theta_old).is_zero() || !gK.eval(mu).is_zero())
            throw domain_error(errc::internal, "compositum images fail their minimal polynomials");
        return {K, theta_old, mu};
    }
    throw domain_error(errc::internal, "no squarefree compositum resultant found");
}

// ------------------------------------------------------------ field tower ---

// A growing working field built by iterated compositum. Elements registered
// with the tower are re-expressed in the enlarged field after every adjoin,
// so all tracked values stay directly comparable.
class FieldTower {
  public:
    explicit FieldTower(FieldPtr base = NumberField::rationals()) : K_(std::move(base)) {}

    const FieldPtr& field() const { return K_; }

    size_t track(NFElement e) {
        if (e.field() != K_) throw domain_error(errc::mixed_fields, "tracked element must live in the tower field");
        tracked_.push_back(std::move(e));
        return tracked_.size() - 1;
    }
    const NFElement& get(size_t h) const { return tracked_.at(h); }
    size_t size() const { return tracked_.size(); }

    // Adjoin the root of the monic irreducible g selected by the box;
    // returns the handle of the new root.
    size_t adjoin(const RatPoly& g, const Box& box, long degree_cap = 64, bool trusted = false) {
        Compositum c = nf_compositum(K_, g, box, degree_cap, trusted);
        if (c.field != K_) {
            for (auto& e : tracked_) e = rebase(e, c.old_gen);
            K_ = c.field;
        }
        tracked_.push_back(c.new_root);
        return tracked_.size() - 1;
    }

  private:
    FieldPtr K_;
    std::vector<NFElement> tracked_;
};

// Express a list of algebraic numbers, each given by a monic minimal
// polynomial plus an isolating box, inside one common field.
struct AlgebraicSpecs {
    std::vector<RatPoly> minpolys;
    std::vector<Box> boxes;
};

inline std::pair<FieldPtr, std::vector<NFElement>> common_field(const AlgebraicSpecs& specs, long degree_cap = 64) {
    FieldTower tower;
    std::vector<size_t> handles;
    for (size_t i = 0; i < specs.minpolys.size(); ++i) {
        const RatPoly& g = specs.minpolys[i];
        if (g.degree() < 1 || g.lead() != 1)
            throw domain_error(errc::invalid_input, "algebraic numbers need monic minimal polynomials");
        handles.push_back(tower.adjoin(g, specs.boxes[i], degree_cap));
    }
    std::vector<NFElement> elems;
    for (size_t h : handles) elems.push_back(tower.get(h));
    return {tower.field(), std::move(elems)};
}

// --------------------------------------------------------- root of unity ---

inline long euler_phi(long n) {
    long result = n;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

// Multiplicative order of a if it is a root of unity, otherwise nullopt.
// A root of unity of order k generates a subfield of degree phi(k), so only
// k with phi(k) <= [K:Q] can occur.
inline std::optional<long> nf_root_of_unity_order(const NFElement& a) {
    if (a.is_zero()) throw domain_error(errc::invalid_input, "zero is not a root of unity");
    if (a.is_one()) return 1;
    long d = a.field()->degree();
    // cheap numeric rejection: |a|^2 must be 1
    Box b = nf_embed(a, Rat(1, 4096));
    if (!b.norm2().contains(Rat(1))) return std::nullopt;
    long kmax = 2 * d * d + 2;
    for (long k = 2; k <= kmax; ++k) {
        if (euler_phi(k) > d) continue;
        if (a.pow(Int(k)).is_one()) return k;
    }
    return std::nullopt;
}

}  // namespace recseq
