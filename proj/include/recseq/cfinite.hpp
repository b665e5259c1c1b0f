#pragma once

// C-finite sequences: a constant-coefficient linear recurrence over a number
// field plus initial values. Closure properties run through the same ansatz
// and kernel machinery as the sequence-coefficient case (the companion
// matrices here just happen to be constant), recurrences are minimized after
// every construction, and eigenvalues are extracted by factoring over Q and
// adjoining roots to a growing working field.

#include <utility>
#include <vector>

#include "recseq/exponent_lattice.hpp"
#include "recseq/kernel.hpp"
#include "recseq/matrix.hpp"

namespace recseq {

class CFiniteSeq {
  public:
    // coeffs gamma_0..gamma_r (gamma_r nonzero), initial values of length r;
    // the recurrence gamma_0 c(n) + ... + gamma_r c(n+r) = 0 holds for all n
    CFiniteSeq(FieldPtr field, std::vector<NFElement> coeffs, std::vector<NFElement> initial)
        : field_(std::move(field)), coeffs_(std::move(coeffs)), initial_(std::move(initial)) {
        if (coeffs_.empty()) throw domain_error(errc::invalid_input, "recurrence needs coefficients");
        if (coeffs_.back().is_zero()) throw domain_error(errc::invalid_input, "leading coefficient must be nonzero");
        if (initial_.size() + 1 != coeffs_.size())
            throw domain_error(errc::invalid_input, "order r recurrence needs r initial values");
        for (const auto& c : coeffs_)
            if (c.field() != field_) throw domain_error(errc::mixed_fields, "coefficient in wrong field");
        for (const auto& c : initial_)
            if (c.field() != field_) throw domain_error(errc::mixed_fields, "initial value in wrong field");
    }

    static CFiniteSeq zero(const FieldPtr& f) { return CFiniteSeq(f, {f->one()}, {}); }
    static CFiniteSeq constant(const NFElement& value) {
        const FieldPtr& f = value.field();
        return CFiniteSeq(f, {f->one(), -f->one()}, {value});
    }
    static CFiniteSeq geometric(const NFElement& ratio, const NFElement& first) {
        const FieldPtr& f = ratio.field();
        return CFiniteSeq(f, {ratio, -f->one()}, {first});
    }
    // p(0), p(1), p(2), ... for a rational polynomial p
    static CFiniteSeq polynomial(const FieldPtr& f, const RatPoly& p) {
        if (p.is_zero()) return zero(f);
        size_t r = static_cast<size_t>(p.degree()) + 1;
        // annihilated by (shift - 1)^r
        std::vector<NFElement> coeffs;
        for (size_t i = 0; i <= r; ++i) {
            Int binom;
            mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(r), static_cast<unsigned long>(i));
            Rat c = Rat(binom);
            if ((r - i) % 2 == 1) c = -c;
            coeffs.push_back(f->from_rat(c));
        }
        std::vector<NFElement> init;
        for (size_t n = 0; n < r; ++n) init.push_back(f->from_rat(p.eval(Rat(static_cast<long>(n)))));
        return CFiniteSeq(f, std::move(coeffs), std::move(init));
    }

    const FieldPtr& field() const { return field_; }
    int order() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<NFElement>& coeffs() const { return coeffs_; }
    const std::vector<NFElement>& initial() const { return initial_; }

    // all terms vanish iff the initial values do (the leading coefficient is
    // a nonzero constant, so unrolling propagates zeros)
    bool is_zero() const {
        for (const auto& v : initial_)
            if (!v.is_zero()) return false;
        return true;
    }

    std::vector<NFElement> terms(long n_terms) const {
        std::vector<NFElement> t;
        if (n_terms <= 0) return t;
        t.reserve(static_cast<size_t>(n_terms));
        size_t r = initial_.size();
        for (size_t i = 0; i < r && static_cast<long>(i) < n_terms; ++i) t.push_back(initial_[i]);
        if (static_cast<long>(r) >= n_terms) return t;
        if (r == 0) {  // the zero sequence
            while (static_cast<long>(t.size()) < n_terms) t.push_back(field_->zero());
            return t;
        }
        NFElement inv_lead = coeffs_.back().inverse();
        while (static_cast<long>(t.size()) < n_terms) {
            size_t n = t.size() - r;
            NFElement acc = field_->zero();
            for (size_t i = 0; i < r; ++i) acc = acc + coeffs_[i] * t[n + i];
            t.push_back(-(acc * inv_lead));
        }
        return t;
    }

    NFElement term(long n) const { return terms(n + 1).back(); }

    // same coefficients, initial values advanced by k steps: the sequence
    // n -> c(n+k)
    CFiniteSeq shifted(long k) const {
        if (k == 0) return *this;
        size_t r = initial_.size();
        auto t = terms(static_cast<long>(r) + k);
        std::vector<NFElement> init(t.begin() + k, t.end());
        return CFiniteSeq(field_, coeffs_, std::move(init));
    }

    // monic characteristic polynomial of this recurrence
    NFPoly char_poly() const {
        std::vector<NFElement> c = coeffs_;
        NFElement inv = coeffs_.back().inverse();
        for (auto& x : c) x = x * inv;
        return NFPoly(field_, std::move(c));
    }

    CFiniteSeq operator-() const {
        std::vector<NFElement> init = initial_;
        for (auto& v : init) v = -v;
        return CFiniteSeq(field_, coeffs_, std::move(init));
    }

    CFiniteSeq scaled(const NFElement& s) const {
        if (s.is_zero()) return zero(field_);
        std::vector<NFElement> init = initial_;
        for (auto& v : init) v = v * s;
        return CFiniteSeq(field_, coeffs_, std::move(init));
    }

    // declared below (engine-based)
    CFiniteSeq operator+(const CFiniteSeq& o) const;
    CFiniteSeq operator-(const CFiniteSeq& o) const;
    CFiniteSeq operator*(const CFiniteSeq& o) const;

  private:
    FieldPtr field_;
    std::vector<NFElement> coeffs_;
    std::vector<NFElement> initial_;
};

// scalar shims so Matrix<CFiniteSeq> and the kernel engine work
inline CFiniteSeq zero_like(const CFiniteSeq& c) { return CFiniteSeq::zero(c.field()); }
inline CFiniteSeq one_like(const CFiniteSeq& c) { return CFiniteSeq::constant(c.field()->one()); }
inline bool is_zero_val(const CFiniteSeq& c) { return c.is_zero(); }
inline long complexity_of(const CFiniteSeq& c) { return c.order(); }

// ------------------------------------------------------------ minimization ---

// Least-order recurrence for the same sequence. The given order r is an
// upper bound for the true order, so a candidate operator annihilates the
// sequence as soon as it kills the first r windows.
inline CFiniteSeq cf_minimize(const CFiniteSeq& c) {
    size_t r = static_cast<size_t>(c.order());
    if (r == 0) return c;
    auto t = c.terms(static_cast<long>(2 * r + 1));
    auto column = [&](size_t i) {
        std::vector<NFElement> col(r);
        for (size_t n = 0; n < r; ++n) col[n] = t[n + i];
        return col;
    };
    auto k = incremental_kernel<NFElement>(column, r, r + 1);
    if (!k) throw domain_error(errc::internal, "minimization found no annihilator within the known order");
    std::vector<NFElement> init(t.begin(), t.begin() + static_cast<long>(k->order));
    return CFiniteSeq(c.field(), std::move(k->coeffs), std::move(init));
}

inline bool cf_equals(const CFiniteSeq& a, const CFiniteSeq& b);

// ------------------------------------------------------- companion matrix ---

// r x r matrix with 1s on the subdiagonal and -gamma_i/gamma_r in the last
// column; satisfies (c(n+1..n+r)) = (c(n..n+r-1)) * M.
inline Matrix<NFElement> cf_companion(const CFiniteSeq& c) {
    size_t r = static_cast<size_t>(c.order());
    if (r == 0) throw domain_error(errc::invalid_input, "companion matrix needs positive order");
    const FieldPtr& f = c.field();
    Matrix<NFElement> m(r, r, f->zero());
    NFElement inv = c.coeffs().back().inverse();
    for (size_t i = 1; i < r; ++i) m.at(i, i - 1) = f->one();
    for (size_t i = 0; i < r; ++i) m.at(i, r - 1) = -(c.coeffs()[i] * inv);
    return m;
}

// ------------------------------------------------- engine-based closures ---

namespace cfdetail {

inline void require_same_field(const CFiniteSeq& a, const CFiniteSeq& b) {
    if (a.field() != b.field()) throw domain_error(errc::mixed_fields, "sequences over different fields");
}

// The constant-coefficient ansatz evaluated against concrete term windows:
// column i is (t(i), ..., t(i+rows-1)). A candidate that annihilates the
// first R = order_bound windows is certified everywhere, because the
// sequence satisfies some recurrence of order <= R. Candidates are found on
// a small number of rows first and verified against all R windows (cheap
// multiplications), growing the row count only when a false candidate slips
// through; the first surviving dependency is the minimal-order recurrence.
inline CFiniteSeq window_closure(const std::vector<NFElement>& t, size_t order_bound, const FieldPtr& f) {
    if (t.size() < 2 * order_bound) throw domain_error(errc::internal, "window_closure needs 2R terms");
    size_t rows = std::min<size_t>(order_bound, 8);
    while (true) {
        auto column = [&](size_t i) {
            std::vector<NFElement> col(rows);
            for (size_t n = 0; n < rows; ++n) col[n] = t[n + i];
            return col;
        };
        auto k = incremental_kernel<NFElement>(column, rows, order_bound + 1);
        if (k) {
            bool verified = true;
            for (size_t n = 0; n < order_bound && verified; ++n) {
                NFElement acc = f->zero();
                for (size_t i = 0; i < k->coeffs.size(); ++i) acc = acc + k->coeffs[i] * t[n + i];
                if (!acc.is_zero()) verified = false;
            }
            if (verified) {
                std::vector<NFElement> init(t.begin(), t.begin() + static_cast<long>(k->order));
                return CFiniteSeq(f, std::move(k->coeffs), std::move(init));
            }
        }
        if (rows >= order_bound)
            throw domain_error(errc::internal, "ansatz kernel not found within the order bound");
        rows = std::min(order_bound, rows * 4);
    }
}

}  // namespace cfdetail

inline CFiniteSeq cf_add(const CFiniteSeq& a, const CFiniteSeq& b, bool minimize = true) {
    (void)minimize;  // the window kernel already returns the minimal order
    cfdetail::require_same_field(a, b);
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    size_t bound = static_cast<size_t>(a.order()) + static_cast<size_t>(b.order());
    auto ta = a.terms(static_cast<long>(2 * bound));
    auto tb = b.terms(static_cast<long>(2 * bound));
    std::vector<NFElement> ref(2 * bound);
    for (size_t i = 0; i < ref.size(); ++i) ref[i] = ta[i] + tb[i];
    return cfdetail::window_closure(ref, bound, a.field());
}

inline CFiniteSeq cf_mul(const CFiniteSeq& a, const CFiniteSeq& b, bool minimize = true) {
    (void)minimize;
    cfdetail::require_same_field(a, b);
    if (a.is_zero() || b.is_zero()) return CFiniteSeq::zero(a.field());
    size_t bound = static_cast<size_t>(a.order()) * static_cast<size_t>(b.order());
    auto ta = a.terms(static_cast<long>(2 * bound));
    auto tb = b.terms(static_cast<long>(2 * bound));
    std::vector<NFElement> ref(2 * bound);
    for (size_t i = 0; i < ref.size(); ++i) ref[i] = ta[i] * tb[i];
    return cfdetail::window_closure(ref, bound, a.field());
}

inline CFiniteSeq cf_sub(const CFiniteSeq& a, const CFiniteSeq& b, bool minimize = true) {
    return cf_add(a, -b, minimize);
}

inline CFiniteSeq CFiniteSeq::operator+(const CFiniteSeq& o) const { return cf_add(*this, o); }
inline CFiniteSeq CFiniteSeq::operator-(const CFiniteSeq& o) const { return cf_sub(*this, o); }
inline CFiniteSeq CFiniteSeq::operator*(const CFiniteSeq& o) const { return cf_mul(*this, o); }

inline bool cf_equals(const CFiniteSeq& a, const CFiniteSeq& b) { return cf_sub(a, b, false).is_zero(); }

// ------------------------------------------------------------ subsequence ---

// the sequence n -> c(l*n + k); the recurrence comes from the characteristic
// polynomial of the l-th power of the companion matrix
inline CFiniteSeq cf_subsequence(const CFiniteSeq& c, long l, long k = 0, bool minimize = true) {
    if (l < 1 || k < 0) throw domain_error(errc::invalid_input, "subsequence needs l >= 1 and k >= 0");
    if (c.is_zero()) return CFiniteSeq::zero(c.field());
    if (l == 1 && k == 0) return minimize ? cf_minimize(c) : c;
    size_t r = static_cast<size_t>(c.order());
    NFPoly chi = charpoly(matrix_pow(cf_companion(c), Int(l)));
    std::vector<NFElement> coeffs = chi.coeffs();
    auto t = c.terms(l * (static_cast<long>(r) - 1) + k + 1);
    std::vector<NFElement> init;
    for (size_t i = 0; i < r; ++i) init.push_back(t[static_cast<size_t>(l) * i + static_cast<size_t>(k)]);
    CFiniteSeq out(c.field(), std::move(coeffs), std::move(init));
    return minimize ? cf_minimize(out) : out;
}

// ------------------------------------------------------------- interlacing ---

// e(q*m + j) = seqs[j](q); annihilated by the product of the inflated
// characteristic polynomials
inline CFiniteSeq cf_interlace(const std::vector<CFiniteSeq>& seqs, bool minimize = true) {
    if (seqs.empty()) throw domain_error(errc::invalid_input, "interlacing needs at least one sequence");
    const FieldPtr& f = seqs[0].field();
    for (const auto& s : seqs)
        if (s.field() != f) throw domain_error(errc::mixed_fields, "sequences over different fields");
    size_t m = seqs.size();
    if (m == 1) return minimize ? cf_minimize(seqs[0]) : seqs[0];

    NFPoly prod(f, {f->one()});
    for (const auto& s : seqs) {
        if (s.is_zero()) continue;
        NFPoly chi = s.char_poly();
        // chi(x^m)
        std::vector<NFElement> infl(static_cast<size_t>(chi.degree()) * m + 1, f->zero());
        for (int i = 0; i <= chi.degree(); ++i) infl[static_cast<size_t>(i) * m] = chi.coeff(i);
        prod = prod * NFPoly(f, std::move(infl));
    }
    size_t order = static_cast<size_t>(prod.degree());
    if (order == 0) return CFiniteSeq::zero(f);

    std::vector<std::vector<NFElement>> input_terms;
    long need = static_cast<long>(order / m) + 2;
    for (const auto& s : seqs) input_terms.push_back(s.terms(need));
    std::vector<NFElement> init;
    for (size_t n = 0; n < order; ++n) init.push_back(input_terms[n % m][n / m]);
    CFiniteSeq out(f, prod.coeffs(), std::move(init));
    return minimize ? cf_minimize(out) : out;
}

// ---------------------------------------------------- polynomial multiple ---

// the sequence n -> p(n) * c(n); every eigenvalue multiplicity rises by
// deg p, the eigenvalue set itself is unchanged
inline CFiniteSeq cf_poly_mul(const CFiniteSeq& c, const RatPoly& p, bool minimize = true) {
    if (p.is_zero() || c.is_zero()) return CFiniteSeq::zero(c.field());
    if (p.degree() == 0) return c.scaled(c.field()->from_rat(p.coeff(0)));
    CFiniteSeq cm = cf_minimize(c);
    if (cm.order() == 0) return CFiniteSeq::zero(c.field());
    const FieldPtr& f = c.field();
    NFPoly chi = cm.char_poly();
    NFPoly raised(f, {f->one()});
    for (const auto& [part, mult] : nf_squarefree_decomposition(chi)) {
        NFPoly pw(f, {f->one()});
        for (int i = 0; i < mult + p.degree(); ++i) pw = pw * part;
        raised = raised * pw;
    }
    size_t order = static_cast<size_t>(raised.degree());
    auto t = c.terms(static_cast<long>(order));
    std::vector<NFElement> init(order, f->zero());
    for (size_t n = 0; n < order; ++n) init[n] = t[n] * f->from_rat(p.eval(Rat(static_cast<long>(n))));
    CFiniteSeq out(f, raised.coeffs(), std::move(init));
    return minimize ? cf_minimize(out) : out;
}

// -------------------------------------------------- matrix power sequences ---

// Entries of M^(p*n+q) as C-finite sequences; they satisfy the recurrence
// given by the characteristic polynomial of M^p, with initial values read
// off explicit powers. Negative q uses exact inverse powers.
inline Matrix<CFiniteSeq> cf_matrix_power_seq(const Matrix<NFElement>& M, long p, long q, bool minimize = true) {
    if (p < 1) throw domain_error(errc::invalid_input, "matrix power sequence needs p >= 1");
    size_t k = M.rows();
    const FieldPtr& f = M.at(0, 0).field();
    NFPoly chi = charpoly(matrix_pow(M, Int(p)));
    std::vector<Matrix<NFElement>> powers;
    Matrix<NFElement> step = matrix_pow(M, Int(p));
    Matrix<NFElement> cur = matrix_pow(M, Int(q));  // throws on singular M with q < 0
    for (size_t t = 0; t < k; ++t) {
        powers.push_back(cur);
        if (t + 1 < k) cur = cur * step;
    }
    Matrix<CFiniteSeq> out(k, k, CFiniteSeq::zero(f));
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j) {
            std::vector<NFElement> init;
            for (size_t t = 0; t < k; ++t) init.push_back(powers[t].at(i, j));
            CFiniteSeq e(f, chi.coeffs(), std::move(init));
            out.at(i, j) = minimize ? cf_minimize(e) : e;
        }
    return out;
}

// ------------------------------------------------------------- eigenvalues ---

struct EigenData {
    FieldPtr field;                                      // possibly enlarged
    std::vector<std::pair<NFElement, int>> eigenvalues;  // distinct, nonzero
    long zero_multiplicity = 0;                          // the x^(n0) part
};

struct JointEigen {
    FieldPtr field;
    std::vector<EigenData> per_sequence;  // eigenvalues all live in `field`
};

namespace cfdetail {

// d x d rational multiplication matrix of an element of K
inline Matrix<NFElement> mult_matrix_over_q(const NFElement& e, const FieldPtr& rat_field) {
    const FieldPtr& K = e.field();
    size_t d = static_cast<size_t>(K->degree());
    Matrix<NFElement> m(d, d, rat_field->zero());
    NFElement pw = K->one();
    for (size_t j = 0; j < d; ++j) {
        NFElement col = e * pw;  // e * theta^j
        for (size_t i = 0; i < d; ++i) m.at(i, j) = rat_field->from_rat(col.coords()[i]);
        if (j + 1 < d) pw = pw * K->gen();
    }
    return m;
}

// rational characteristic polynomial of the Q-linear action of the companion
// matrix of chi (a monic NFPoly with nonzero constant term)
inline RatPoly rational_norm_charpoly(const NFPoly& chi) {
    const FieldPtr& K = chi.field();
    size_t r = static_cast<size_t>(chi.degree());
    size_t d = static_cast<size_t>(K->degree());
    FieldPtr Q = NumberField::rationals();
    // companion of chi over K, then blow up each entry to a d x d block
    Matrix<NFElement> big(r * d, r * d, Q->zero());
    auto put_block = [&](size_t bi, size_t bj, const NFElement& e) {
        if (e.is_zero()) return;
        Matrix<NFElement> blk = mult_matrix_over_q(e, Q);
        for (size_t i = 0; i < d; ++i)
            for (size_t j = 0; j < d; ++j) big.at(bi * d + i, bj * d + j) = blk.at(i, j);
    };
    for (size_t i = 1; i < r; ++i) put_block(i, i - 1, K->one());
    for (size_t i = 0; i < r; ++i) put_block(i, r - 1, -chi.coeff(static_cast<int>(i)));
    NFPoly cp = charpoly(big);
    std::vector<Rat> rc;
    for (int i = 0; i <= cp.degree(); ++i) rc.push_back(cp.coeff(i).rat_value());
    return RatPoly(std::move(rc));
}

}  // namespace cfdetail

// Eigenvalues of several sequences expressed in one working field built by
// iterated compositum.
inline JointEigen joint_eigenvalues(const std::vector<CFiniteSeq>& seqs, long degree_cap = 64) {
    if (seqs.empty()) throw domain_error(errc::invalid_input, "no sequences given");
    const FieldPtr& base = seqs[0].field();
    for (const auto& s : seqs)
        if (s.field() != base) throw domain_error(errc::mixed_fields, "sequences over different fields");

    FieldTower tower(base);
    struct Pending {
        NFPoly stripped_char;  // over the base field
        long zero_mult;
        std::vector<std::pair<size_t, int>> root_handles;  // filled later
    };
    std::vector<Pending> pending;
    std::vector<std::vector<size_t>> handles_per_seq;

    size_t base_gen_handle = tower.track(base->gen());

    for (const auto& s : seqs) {
        CFiniteSeq m = cf_minimize(s);
        Pending p;
        p.zero_mult = 0;
        if (m.order() == 0) {
            p.stripped_char = NFPoly(base, {});
            pending.push_back(std::move(p));
            handles_per_seq.emplace_back();
            continue;
        }
        NFPoly chi = m.char_poly();
        // strip x^(n0)
        long n0 = 0;
        while (chi.coeff(static_cast<int>(n0)).is_zero()) ++n0;
        if (n0 > 0) {
            std::vector<NFElement> c(chi.coeffs().begin() + n0, chi.coeffs().end());
            chi = NFPoly(base, std::move(c));
        }
        p.zero_mult = n0;
        p.stripped_char = chi;
        std::vector<size_t> handles;
        if (chi.degree() > 0) {
            RatPoly N = cfdetail::rational_norm_charpoly(chi);
            auto factors = rat_poly_factor(N).factors;
            for (const auto& [q, mult] : factors)
                for (const auto& rb : all_root_boxes(q)) handles.push_back(tower.adjoin(q, rb.box, degree_cap, true));
        }
        pending.push_back(std::move(p));
        handles_per_seq.push_back(std::move(handles));
    }

    // everything now lives in the final field; rebase the characteristic
    // polynomials and determine true multiplicities
    JointEigen out;
    out.field = tower.field();
    NFElement base_gen_img = tower.get(base_gen_handle);
    for (size_t si = 0; si < seqs.size(); ++si) {
        EigenData ed;
        ed.field = out.field;
        ed.zero_multiplicity = pending[si].zero_mult;
        const NFPoly& chi0 = pending[si].stripped_char;
        if (chi0.degree() >= 1) {
            std::vector<NFElement> lifted;
            for (const auto& c : chi0.coeffs()) lifted.push_back(rebase(c, base_gen_img));
            NFPoly chi(out.field, std::move(lifted));
            long accounted = 0;
            for (size_t h : handles_per_seq[si]) {
                const NFElement& lam = tower.get(h);
                bool seen = false;
                for (const auto& [prev, mult] : ed.eigenvalues)
                    if (prev == lam) seen = true;
                if (seen) continue;
                int mult = 0;
                NFPoly cur = chi;
                NFPoly lin(out.field, {-lam, out.field->one()});
                while (cur.degree() >= 1 && cur.eval(lam).is_zero()) {
                    cur = cur.div_exact(lin);
                    ++mult;
                }
                if (mult > 0) {
                    ed.eigenvalues.emplace_back(lam, mult);
                    accounted += mult;
                }
            }
            if (accounted != chi0.degree())
                throw domain_error(errc::internal, "eigenvalue multiplicities do not account for the degree");
        }
        out.per_sequence.push_back(std::move(ed));
    }
    return out;
}

inline EigenData cf_eigenvalues(const CFiniteSeq& c, long degree_cap = 64) {
    return joint_eigenvalues({c}, degree_cap).per_sequence[0];
}

// torsion number of all eigenvalues of the given sequences (zero eigenvalues
// are excluded by construction)
inline Int torsion_of_sequences(const std::vector<CFiniteSeq>& seqs, long degree_cap = 64,
                                const ExpLatticeOptions& opts = {}) {
    JointEigen je = joint_eigenvalues(seqs, degree_cap);
    std::vector<NFElement> lams;
    for (const auto& ed : je.per_sequence)
        for (const auto& [lam, mult] : ed.eigenvalues) {
            bool seen = false;
            for (const auto& l : lams)
                if (l == lam) seen = true;
            if (!seen) lams.push_back(lam);
        }
    if (lams.empty()) return Int(1);
    return torsion_number(lams, opts);
}

// -------------------------------------------------------------- degeneracy ---

// no ratio of distinct eigenvalues is a root of unity
inline bool cf_is_nondegenerate(const CFiniteSeq& c, long degree_cap = 64) {
    EigenData ed = cf_eigenvalues(c, degree_cap);
    for (size_t i = 0; i < ed.eigenvalues.size(); ++i)
        for (size_t j = i + 1; j < ed.eigenvalues.size(); ++j) {
            NFElement ratio = ed.eigenvalues[i].first / ed.eigenvalues[j].first;
            if (nf_root_of_unity_order(ratio).has_value()) return false;
        }
    return true;
}

struct EventuallyNonzero {
    bool value = false;               // proven
    std::vector<long> zeros_found;    // scan below the horizon
    bool value_certified = true;      // the boolean is always proven
    bool zeros_complete = false;      // completeness is not certified (Skolem)
};

// Sections c(dn+i) at the torsion number d are non-degenerate, so each is
// either identically zero or has finitely many zeros.
inline EventuallyNonzero cf_eventually_nonzero(const CFiniteSeq& c, long skolem_horizon = 1000,
                                               long degree_cap = 64) {
    if (skolem_horizon < 0) throw domain_error(errc::invalid_input, "negative horizon");
    EventuallyNonzero out;
    auto t = c.terms(skolem_horizon);
    for (long n = 0; n < static_cast<long>(t.size()); ++n)
        if (t[static_cast<size_t>(n)].is_zero()) out.zeros_found.push_back(n);
    if (c.is_zero()) {
        out.value = false;
        out.zeros_complete = false;
        return out;
    }
    Int d = torsion_of_sequences({c}, degree_cap);
    long dl = static_cast<long>(d.get_si());
    out.value = true;
    for (long i = 0; i < dl; ++i) {
        if (cf_subsequence(c, dl, i).is_zero()) {
            out.value = false;
            break;
        }
    }
    return out;
}

}  // namespace recseq
