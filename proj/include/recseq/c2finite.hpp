#pragma once

// C^2-finite sequences: linear recurrences whose coefficients are C-finite
// sequences with eventually nonzero leading coefficient. Closure properties
// (sum, product, subsequence, interlacing, sparse subsequence) are computed
// by sectioning at the torsion number of the coefficient eigenvalues, solving
// an ansatz kernel over the fraction field of the sectioned difference
// algebra, and interlacing the per-offset recurrences back together.

#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "recseq/cfinite.hpp"
#include "recseq/kernel.hpp"

namespace recseq {

// ---------------------------------------------------------- SeqFraction ---

// Formal quotient of two C-finite sequences; the denominators that appear in
// the closure machinery are sectioned and hence non-degenerate, so they are
// nonzero from some index on.
//
// Representation: scalar * prod(num factors) / prod(den factors), where each
// factor is minimized and normalized so its first nonzero initial value is 1
// (the extracted constants live in the scalar). Products stay lazy, and
// factors that agree up to a constant cancel structurally; this keeps the
// recurrence orders small through Gaussian elimination, where the same pivot
// numerators and denominators reappear constantly.
class SeqFraction {
  public:
    SeqFraction(const CFiniteSeq& num, const CFiniteSeq& den) : field_(num.field()), scalar_(field_->one()) {
        if (den.is_zero()) throw domain_error(errc::zero_division, "fraction with zero denominator sequence");
        if (num.field() != den.field()) throw domain_error(errc::mixed_fields, "fraction parts over different fields");
        if (num.is_zero()) {
            zero_ = true;
            return;
        }
        push_num(num);
        push_den(den);
        cancel();
    }
    static SeqFraction from_seq(const CFiniteSeq& c) {
        return SeqFraction(c, CFiniteSeq::constant(c.field()->one()));
    }
    static SeqFraction zero(const FieldPtr& f) {
        SeqFraction r(f);
        r.zero_ = true;
        return r;
    }
    static SeqFraction one(const FieldPtr& f) { return SeqFraction(f); }

    const FieldPtr& field() const { return field_; }
    bool is_zero() const { return zero_; }

    // expanded numerator/denominator as single sequences
    CFiniteSeq num() const {
        if (zero_) return CFiniteSeq::zero(field_);
        return fold(num_).scaled(scalar_);
    }
    CFiniteSeq den() const { return fold(den_); }

    long complexity() const {
        if (zero_) return 0;
        long c = 0;
        for (const auto& x : num_) c += x.order();
        for (const auto& x : den_) c += x.order();
        return c;
    }

    SeqFraction operator*(const SeqFraction& o) const {
        if (zero_ || o.zero_) return zero(field_);
        SeqFraction r = *this;
        r.scalar_ = r.scalar_ * o.scalar_;
        r.num_.insert(r.num_.end(), o.num_.begin(), o.num_.end());
        r.den_.insert(r.den_.end(), o.den_.begin(), o.den_.end());
        r.cancel();
        return r;
    }
    SeqFraction operator/(const SeqFraction& o) const {
        if (o.zero_) throw domain_error(errc::zero_division, "division by zero fraction");
        if (zero_) return zero(field_);
        SeqFraction r = *this;
        r.scalar_ = r.scalar_ / o.scalar_;
        r.num_.insert(r.num_.end(), o.den_.begin(), o.den_.end());
        r.den_.insert(r.den_.end(), o.num_.begin(), o.num_.end());
        r.cancel();
        return r;
    }
    SeqFraction operator-() const {
        if (zero_) return *this;
        SeqFraction r = *this;
        r.scalar_ = -r.scalar_;
        return r;
    }
    SeqFraction operator+(const SeqFraction& o) const {
        if (zero_) return o;
        if (o.zero_) return *this;
        // split off the common denominator factors so they enter only once
        std::vector<CFiniteSeq> common, rest_a = den_, rest_b = o.den_;
        for (auto it = rest_a.begin(); it != rest_a.end();) {
            auto jt = find_factor(rest_b, *it);
            if (jt != rest_b.end()) {
                common.push_back(*it);
                rest_b.erase(jt);
                it = rest_a.erase(it);
            } else {
                ++it;
            }
        }
        std::vector<CFiniteSeq> left = num_;
        left.insert(left.end(), rest_b.begin(), rest_b.end());
        std::vector<CFiniteSeq> right = o.num_;
        right.insert(right.end(), rest_a.begin(), rest_a.end());
        CFiniteSeq sum = cf_add(fold(left).scaled(scalar_), fold(right).scaled(o.scalar_));
        if (sum.is_zero()) return zero(field_);
        SeqFraction r(field_);
        r.push_num(sum);
        r.den_ = std::move(common);
        r.den_.insert(r.den_.end(), rest_a.begin(), rest_a.end());
        r.den_.insert(r.den_.end(), rest_b.begin(), rest_b.end());
        r.cancel();
        return r;
    }
    SeqFraction operator-(const SeqFraction& o) const { return *this + (-o); }

    SeqFraction shifted() const {
        if (zero_) return *this;
        SeqFraction r(field_);
        r.scalar_ = scalar_;
        for (const auto& x : num_) r.push_num(x.shifted(1));
        for (const auto& x : den_) r.push_den(x.shifted(1));
        r.cancel();
        return r;
    }

  private:
    explicit SeqFraction(FieldPtr f) : field_(std::move(f)), scalar_(field_->one()) {}

    static bool same_rep(const CFiniteSeq& a, const CFiniteSeq& b) {
        return a.coeffs() == b.coeffs() && a.initial() == b.initial();
    }
    static std::vector<CFiniteSeq>::iterator find_factor(std::vector<CFiniteSeq>& v, const CFiniteSeq& x) {
        for (auto it = v.begin(); it != v.end(); ++it)
            if (same_rep(*it, x)) return it;
        return v.end();
    }
    // minimize, pull the leading constant into `scale`, drop constant-one factors
    std::optional<CFiniteSeq> normalize(const CFiniteSeq& x, NFElement& scale) const {
        CFiniteSeq m = cf_minimize(x);
        const NFElement* first = nullptr;
        for (const auto& v : m.initial())
            if (!v.is_zero()) {
                first = &v;
                break;
            }
        if (!first) throw domain_error(errc::internal, "normalizing the zero sequence");
        scale = *first;
        CFiniteSeq normalized = m.scaled(first->inverse());
        if (normalized.order() == 1 && normalized.coeffs()[0].is_one() && (-normalized.coeffs()[1]).is_one() &&
            normalized.initial()[0].is_one())
            return std::nullopt;  // constant sequence: fully absorbed by the scalar
        return normalized;
    }
    void push_num(const CFiniteSeq& x) {
        NFElement s = field_->one();
        auto f = normalize(x, s);
        scalar_ = scalar_ * s;
        if (f) num_.push_back(std::move(*f));
    }
    void push_den(const CFiniteSeq& x) {
        NFElement s = field_->one();
        auto f = normalize(x, s);
        scalar_ = scalar_ / s;
        if (f) den_.push_back(std::move(*f));
    }
    void cancel() {
        for (auto it = num_.begin(); it != num_.end();) {
            auto jt = find_factor(den_, *it);
            if (jt != den_.end()) {
                den_.erase(jt);
                it = num_.erase(it);
            } else {
                ++it;
            }
        }
    }
    CFiniteSeq fold(const std::vector<CFiniteSeq>& v) const {
        if (v.empty()) return CFiniteSeq::constant(field_->one());
        // fold cheapest factors first to keep intermediate bounds small
        std::vector<CFiniteSeq> sorted = v;
        std::sort(sorted.begin(), sorted.end(),
                  [](const CFiniteSeq& a, const CFiniteSeq& b) { return a.order() < b.order(); });
        CFiniteSeq acc = sorted[0];
        for (size_t i = 1; i < sorted.size(); ++i) acc = cf_mul(acc, sorted[i]);
        return acc;
    }

    friend std::vector<CFiniteSeq> c2detail_clear(const std::vector<SeqFraction>& x, const FieldPtr& f);

    FieldPtr field_;
    NFElement scalar_;
    std::vector<CFiniteSeq> num_, den_;
    bool zero_ = false;
};

inline SeqFraction zero_like(const SeqFraction& x) { return SeqFraction::zero(x.field()); }
inline SeqFraction one_like(const SeqFraction& x) { return SeqFraction::one(x.field()); }
inline bool is_zero_val(const SeqFraction& x) { return x.is_zero(); }
inline long complexity_of(const SeqFraction& x) { return x.complexity(); }
inline bool frac_is_zero(const SeqFraction& x) { return x.is_zero(); }
inline bool frac_equal(const SeqFraction& a, const SeqFraction& b) { return (a - b).is_zero(); }

// ---------------------------------------------------------- C2FiniteSeq ---

class C2FiniteSeq {
  public:
    C2FiniteSeq(FieldPtr field, std::vector<CFiniteSeq> coeffs, std::vector<NFElement> initial,
                std::map<long, NFElement> patches = {}, long skolem_horizon = 1000, bool verify_leading = true)
        : field_(std::move(field)),
          coeffs_(std::move(coeffs)),
          initial_(std::move(initial)),
          patches_(std::move(patches)),
          horizon_(skolem_horizon) {
        if (coeffs_.empty()) throw domain_error(errc::invalid_input, "recurrence needs coefficients");
        if (initial_.size() + 1 != coeffs_.size())
            throw domain_error(errc::invalid_input, "order r recurrence needs r initial values");
        for (const auto& c : coeffs_)
            if (c.field() != field_) throw domain_error(errc::mixed_fields, "coefficient over wrong field");
        const CFiniteSeq& lead = coeffs_.back();
        if (lead.is_zero()) throw domain_error(errc::invalid_input, "leading coefficient is the zero sequence");
        auto lt = lead.terms(horizon_);
        for (long n = 0; n < static_cast<long>(lt.size()); ++n)
            if (lt[static_cast<size_t>(n)].is_zero()) singular_.push_back(n);
        if (verify_leading && !cf_eventually_nonzero(lead, horizon_).value)
            throw domain_error(errc::invalid_input, "leading coefficient is not eventually nonzero");
    }

    static C2FiniteSeq from_cfinite(const CFiniteSeq& c, long skolem_horizon = 1000) {
        const FieldPtr& f = c.field();
        std::vector<CFiniteSeq> coeffs;
        for (const auto& g : c.coeffs()) coeffs.push_back(CFiniteSeq::constant(g));
        return C2FiniteSeq(f, std::move(coeffs), c.initial(), {}, skolem_horizon, false);
    }

    const FieldPtr& field() const { return field_; }
    int order() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<CFiniteSeq>& coeffs() const { return coeffs_; }
    const std::vector<NFElement>& initial() const { return initial_; }
    const std::map<long, NFElement>& patches() const { return patches_; }
    const std::vector<long>& singular_indices() const { return singular_; }
    long skolem_horizon() const { return horizon_; }

    // Unrolls a(n+r) = -(sum_i c_i(n) a(n+i))/c_r(n); at recurrence indices n
    // with c_r(n) = 0 the value a(n+r) must be supplied as a patch.
    std::vector<NFElement> terms(long n_terms) const {
        std::vector<NFElement> t;
        if (n_terms <= 0) return t;
        size_t r = initial_.size();
        for (size_t i = 0; i < r && static_cast<long>(i) < n_terms; ++i) t.push_back(initial_[i]);
        if (static_cast<long>(t.size()) >= n_terms) return t;
        std::vector<std::vector<NFElement>> ct;
        long need = n_terms - static_cast<long>(r);
        for (const auto& c : coeffs_) ct.push_back(c.terms(need));
        if (r == 0) {
            // canonical zero representation: c_0(n) a(n) = 0 with c_0(n) != 0
            for (long n = 0; n < n_terms; ++n) {
                if (ct[0][static_cast<size_t>(n)].is_zero()) {
                    auto it = patches_.find(n);
                    if (it == patches_.end())
                        throw domain_error(errc::missing_patch, "missing patch at singular index", n);
                    t.push_back(it->second);
                } else {
                    t.push_back(field_->zero());
                }
            }
            return t;
        }
        while (static_cast<long>(t.size()) < n_terms) {
            long n = static_cast<long>(t.size() - r);
            const NFElement& lead = ct[r][static_cast<size_t>(n)];
            if (lead.is_zero()) {
                auto it = patches_.find(n);
                if (it == patches_.end())
                    throw domain_error(errc::missing_patch, "missing patch at singular index", n);
                t.push_back(it->second);
                continue;
            }
            NFElement acc = field_->zero();
            for (size_t i = 0; i < r; ++i) acc = acc + ct[i][static_cast<size_t>(n)] * t[static_cast<size_t>(n) + i];
            t.push_back(-(acc / lead));
        }
        return t;
    }

  private:
    FieldPtr field_;
    std::vector<CFiniteSeq> coeffs_;
    std::vector<NFElement> initial_;
    std::map<long, NFElement> patches_;
    long horizon_;
    std::vector<long> singular_;
};

// ------------------------------------------------------------ the engine ---

// The ansatz data: columns w_0, w_1, ... with w_{i+1} = M * shift(w_i); a
// kernel element of (w_0 ... w_s) yields a recurrence for the target.
struct AnsatzState {
    Matrix<SeqFraction> M;
    std::vector<SeqFraction> w0;
};

struct KernelSolveResult {
    std::vector<CFiniteSeq> coeffs;  // denominators cleared, minimized
    size_t order = 0;
    std::vector<SeqFraction> elimination_fractions;  // recorded when asked
};

// Multiply the kernel vector through by the product of the active entries'
// denominators. Works on the factor lists directly so repeated factors are
// folded once.
inline std::vector<CFiniteSeq> c2detail_clear(const std::vector<SeqFraction>& x, const FieldPtr& f) {
    auto fold = [&](std::vector<CFiniteSeq> factors) {
        if (factors.empty()) return CFiniteSeq::constant(f->one());
        std::sort(factors.begin(), factors.end(),
                  [](const CFiniteSeq& a, const CFiniteSeq& b) { return a.order() < b.order(); });
        CFiniteSeq acc = factors[0];
        for (size_t i = 1; i < factors.size(); ++i) acc = cf_mul(acc, factors[i]);
        return acc;
    };
    std::vector<CFiniteSeq> out;
    for (size_t i = 0; i < x.size(); ++i) {
        if (x[i].is_zero()) {
            out.push_back(CFiniteSeq::zero(f));
            continue;
        }
        std::vector<CFiniteSeq> factors = x[i].num_;
        for (size_t j = 0; j < x.size(); ++j) {
            if (j == i || x[j].is_zero()) continue;
            factors.insert(factors.end(), x[j].den_.begin(), x[j].den_.end());
        }
        out.push_back(fold(std::move(factors)).scaled(x[i].scalar_));
    }
    return out;
}

namespace c2detail {

inline std::vector<SeqFraction> shift_all(const std::vector<SeqFraction>& v) {
    std::vector<SeqFraction> out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(x.shifted());
    return out;
}

inline std::vector<CFiniteSeq> clear_denominators(const std::vector<SeqFraction>& x, const FieldPtr& f) {
    return c2detail_clear(x, f);
}

}  // namespace c2detail

// Kernel element of the columns (w_0 ... w_s) over the fraction field, with
// maximal trailing zeros; s_bound+1 columns are generated at most.
inline KernelSolveResult kernel_solve_ansatz(const AnsatzState& state, size_t s_bound,
                                             bool collect_fractions = false) {
    if (state.w0.empty()) throw domain_error(errc::invalid_input, "empty ansatz");
    FieldPtr f = state.w0[0].field();
    std::vector<std::vector<SeqFraction>> cols = {state.w0};
    auto column = [&](size_t i) {
        while (cols.size() <= i) cols.push_back(state.M.apply_col(c2detail::shift_all(cols.back())));
        return cols[i];
    };
    KernelSolveResult res;
    std::vector<SeqFraction> dens;
    auto k = incremental_kernel<SeqFraction>(column, state.w0.size(), s_bound + 1,
                                             collect_fractions ? &dens : nullptr);
    if (!k) throw domain_error(errc::internal, "ansatz kernel not found within the order bound");
    res.order = k->order;
    res.coeffs = c2detail::clear_denominators(k->coeffs, f);
    res.elimination_fractions = std::move(dens);
    return res;
}

// Kernel of an explicitly given matrix (columns listed left to right).
inline KernelSolveResult kernel_solve(const std::vector<std::vector<SeqFraction>>& columns,
                                      bool collect_fractions = false) {
    if (columns.empty() || columns[0].empty()) throw domain_error(errc::invalid_input, "empty ansatz matrix");
    const FieldPtr& f = columns[0][0].field();
    auto column = [&](size_t i) { return columns[i]; };
    KernelSolveResult res;
    std::vector<SeqFraction> dens;
    auto k = incremental_kernel<SeqFraction>(column, columns[0].size(), columns.size(),
                                             collect_fractions ? &dens : nullptr);
    if (!k) throw domain_error(errc::internal, "ansatz matrix has trivial kernel");
    res.order = k->order;
    res.coeffs = c2detail::clear_denominators(k->coeffs, f);
    res.elimination_fractions = std::move(dens);
    return res;
}

// ------------------------------------------------- sections and closures ---

struct ClosureOptions {
    long skolem_horizon = 1000;
    long verify_terms = 50;
    long degree_cap = 64;
    bool collect_fractions = false;
};

struct ClosureResult {
    C2FiniteSeq seq;
    long order = 0;
    long bound = 0;
    Int torsion = 1;
    std::vector<long> singularities;  // zeros of the output leading coefficient below the horizon
    bool normalized = false;          // a polynomial factor was applied to zero out early rows
    std::vector<SeqFraction> elimination_fractions;
};

namespace c2detail {

// companion matrix of the recurrence given by coefficient sequences, with
// every entry's index precomposed as n -> step*n + shift
inline Matrix<SeqFraction> companion_at(const std::vector<CFiniteSeq>& coeffs, long step, long shift) {
    size_t r = coeffs.size() - 1;
    const FieldPtr& f = coeffs[0].field();
    Matrix<SeqFraction> m(r, r, SeqFraction::zero(f));
    CFiniteSeq lead = cf_subsequence(coeffs[r], step, shift);
    for (size_t i = 1; i < r; ++i) m.at(i, i - 1) = SeqFraction::one(f);
    for (size_t i = 0; i < r; ++i) m.at(i, r - 1) = SeqFraction(-cf_subsequence(coeffs[i], step, shift), lead);
    return m;
}

// per-offset transition matrix M(n) = M_a(step n + o) ... M_a(step n + o + step - 1)
inline Matrix<SeqFraction> section_matrix(const std::vector<CFiniteSeq>& coeffs, long step, long offset) {
    Matrix<SeqFraction> m = companion_at(coeffs, step, offset);
    for (long j = 1; j < step; ++j) m = m * companion_at(coeffs, step, offset + j);
    return m;
}

inline std::vector<SeqFraction> unit_vector(const FieldPtr& f, size_t dim, size_t pos) {
    std::vector<SeqFraction> v(dim, SeqFraction::zero(f));
    v[pos] = SeqFraction::one(f);
    return v;
}

// shift-pad a recurrence to the target order: coefficient j of the padded
// recurrence is shift^k applied to coefficient j-k of the original
inline std::vector<CFiniteSeq> pad_recurrence(const std::vector<CFiniteSeq>& coeffs, size_t target_order,
                                              const FieldPtr& f) {
    size_t r = coeffs.size() - 1;
    if (r > target_order) throw domain_error(errc::internal, "cannot pad to a smaller order");
    long k = static_cast<long>(target_order - r);
    std::vector<CFiniteSeq> out(target_order + 1, CFiniteSeq::zero(f));
    for (size_t j = 0; j <= r; ++j) out[j + static_cast<size_t>(k)] = coeffs[j].shifted(k);
    return out;
}

// interlace per-offset recurrences (all padded to one order T) into the
// order d*T recurrence with nonzero coefficients only at multiples of d
inline std::vector<CFiniteSeq> interlace_recurrences(const std::vector<std::vector<CFiniteSeq>>& recs,
                                                     const FieldPtr& f) {
    size_t d = recs.size();
    size_t T = 0;
    for (const auto& r : recs) T = std::max(T, r.size() - 1);
    std::vector<std::vector<CFiniteSeq>> padded;
    for (const auto& r : recs) padded.push_back(pad_recurrence(r, T, f));
    std::vector<CFiniteSeq> out(d * T + 1, CFiniteSeq::zero(f));
    for (size_t j = 0; j <= T; ++j) {
        std::vector<CFiniteSeq> column;
        for (size_t s = 0; s < d; ++s) column.push_back(padded[s][j]);
        out[d * j] = cf_interlace(column);
    }
    return out;
}

using ReferenceFn = std::function<std::vector<NFElement>(long)>;

inline ClosureResult assemble(const FieldPtr& f, std::vector<CFiniteSeq> coeffs, long bound, Int torsion,
                              const ReferenceFn& reference, const ClosureOptions& opts,
                              std::vector<SeqFraction> fractions);

}  // namespace c2detail

// Per-offset recurrence of order <= r annihilating a(step*n + offset). The
// transition matrix is the product of step consecutive companion matrices.
inline std::vector<CFiniteSeq> c2_section_recurrence(const C2FiniteSeq& a, long step, long offset,
                                                     bool collect = false,
                                                     std::vector<SeqFraction>* fractions = nullptr) {
    if (step < 1 || offset < 0) throw domain_error(errc::invalid_input, "section needs step >= 1, offset >= 0");
    size_t r = static_cast<size_t>(a.order());
    if (r == 0) throw domain_error(errc::invalid_input, "section of an order-0 recurrence");
    AnsatzState st{c2detail::section_matrix(a.coeffs(), step, offset),
                   c2detail::unit_vector(a.field(), r, 0)};
    KernelSolveResult k = kernel_solve_ansatz(st, r, collect);
    if (fractions) *fractions = k.elimination_fractions;
    return k.coeffs;
}

// --------------------------------------------------------------- closures ---

ClosureResult c2_add(const C2FiniteSeq& a, const C2FiniteSeq& b, const ClosureOptions& opts = {});
ClosureResult c2_mul(const C2FiniteSeq& a, const C2FiniteSeq& b, const ClosureOptions& opts = {});
ClosureResult c2_subsequence(const C2FiniteSeq& a, long l, const ClosureOptions& opts = {});
ClosureResult c2_interlace(const std::vector<C2FiniteSeq>& seqs, const ClosureOptions& opts = {});
ClosureResult c2_sparse_subsequence(const CFiniteSeq& c, long j, long k, long l, const ClosureOptions& opts = {});

namespace c2detail {

inline Int joint_torsion(const std::vector<C2FiniteSeq>& ins, const ClosureOptions& opts) {
    std::vector<CFiniteSeq> all;
    for (const auto& s : ins)
        for (const auto& c : s.coeffs())
            if (!c.is_zero()) all.push_back(c);
    if (all.empty()) return Int(1);
    return torsion_of_sequences(all, opts.degree_cap);
}

inline ClosureResult assemble(const FieldPtr& f, std::vector<CFiniteSeq> coeffs, long bound, Int torsion,
                              const ReferenceFn& reference, const ClosureOptions& opts,
                              std::vector<SeqFraction> fractions) {
    long r = static_cast<long>(coeffs.size()) - 1;
    if (r > bound) throw domain_error(errc::internal, "order bound violated by construction");
    long window = std::max(opts.verify_terms, 2 * r + 2);
    std::vector<NFElement> refs = reference(window + r);

    auto violations_of = [&](const std::vector<CFiniteSeq>& cs) {
        std::vector<long> out;
        std::vector<std::vector<NFElement>> ct;
        for (const auto& c : cs) ct.push_back(c.terms(window));
        for (long n = 0; n + r < static_cast<long>(refs.size()) && n < window; ++n) {
            NFElement acc = f->zero();
            for (long i = 0; i <= r; ++i)
                acc = acc + ct[static_cast<size_t>(i)][static_cast<size_t>(n)] * refs[static_cast<size_t>(n + i)];
            if (!acc.is_zero()) out.push_back(n);
        }
        return out;
    };

    ClosureResult res{C2FiniteSeq::from_cfinite(CFiniteSeq::zero(f)), r, bound, torsion, {}, false, {}};
    std::vector<long> bad = violations_of(coeffs);
    if (!bad.empty()) {
        // identities derived in the localization hold from some index on;
        // a polynomial factor zeroes the finitely many early rows without
        // changing the order
        RatPoly p = RatPoly::constant(Rat(1));
        for (long v : bad) p = p * RatPoly({Rat(-v), Rat(1)});
        CFiniteSeq pseq = CFiniteSeq::polynomial(f, p);
        for (auto& c : coeffs) c = cf_minimize(cf_mul(c, pseq, false));
        res.normalized = true;
        if (!violations_of(coeffs).empty())
            throw domain_error(errc::internal, "recurrence still fails after normalization");
    }

    std::vector<NFElement> init(refs.begin(), refs.begin() + r);
    // patches for singular leading-coefficient indices within the window
    std::map<long, NFElement> patches;
    auto lt = coeffs.back().terms(opts.skolem_horizon);
    for (long n = 0; n < static_cast<long>(lt.size()); ++n) {
        if (!lt[static_cast<size_t>(n)].is_zero()) continue;
        if (n + r < static_cast<long>(refs.size())) patches[n] = refs[static_cast<size_t>(n + r)];
    }
    C2FiniteSeq seq(f, std::move(coeffs), std::move(init), std::move(patches), opts.skolem_horizon, true);
    res.singularities = seq.singular_indices();
    res.seq = std::move(seq);
    res.elimination_fractions = std::move(fractions);
    return res;
}

// shared sum/product driver: per-offset section recurrences of both inputs,
// ansatz over the fraction field, interlacing of the d offset recurrences
inline ClosureResult ring_op(const C2FiniteSeq& a, const C2FiniteSeq& b, bool product, const ClosureOptions& opts) {
    if (a.field() != b.field()) throw domain_error(errc::mixed_fields, "inputs over different fields");
    const FieldPtr& f = a.field();
    // canonical zero shortcuts
    if (a.order() == 0 || b.order() == 0) {
        const C2FiniteSeq& z = a.order() == 0 ? a : b;
        const C2FiniteSeq& other = a.order() == 0 ? b : a;
        if (!z.coeffs()[0].is_zero() && z.singular_indices().empty()) {
            if (product) {
                ClosureResult res{C2FiniteSeq::from_cfinite(CFiniteSeq::zero(f)), 0, 0, Int(1), {}, false, {}};
                return res;
            }
            ClosureResult res{other, other.order(), other.order(), Int(1), other.singular_indices(), false, {}};
            return res;
        }
        throw domain_error(errc::invalid_input, "order-0 input is not in canonical zero form");
    }

    Int d = joint_torsion({a, b}, opts);
    long dl = static_cast<long>(d.get_si());
    long r1 = a.order(), r2 = b.order();
    long bound = product ? dl * r1 * r2 : dl * (r1 + r2);

    std::vector<std::vector<CFiniteSeq>> per_offset;
    std::vector<SeqFraction> fracs;
    for (long off = 0; off < dl; ++off) {
        std::vector<SeqFraction> fr1, fr2;
        std::vector<CFiniteSeq> ra = c2_section_recurrence(a, dl, off, opts.collect_fractions, &fr1);
        std::vector<CFiniteSeq> rb = c2_section_recurrence(b, dl, off, opts.collect_fractions, &fr2);
        Matrix<SeqFraction> Ma = c2detail::companion_at(ra, 1, 0);
        Matrix<SeqFraction> Mb = c2detail::companion_at(rb, 1, 0);
        size_t sa = ra.size() - 1, sb = rb.size() - 1;
        AnsatzState st{product ? Ma.kron(Mb) : Ma.dsum(Mb), {}};
        if (product) {
            st.w0 = c2detail::unit_vector(f, sa * sb, 0);
        } else {
            st.w0 = c2detail::unit_vector(f, sa + sb, 0);
            st.w0[sa] = SeqFraction::one(f);
        }
        KernelSolveResult k = kernel_solve_ansatz(st, product ? sa * sb : sa + sb, opts.collect_fractions);
        per_offset.push_back(k.coeffs);
        for (auto& x : fr1) fracs.push_back(std::move(x));
        for (auto& x : fr2) fracs.push_back(std::move(x));
        for (auto& x : k.elimination_fractions) fracs.push_back(std::move(x));
    }
    std::vector<CFiniteSeq> coeffs = c2detail::interlace_recurrences(per_offset, f);

    c2detail::ReferenceFn ref = [&a, &b, product](long n) {
        auto ta = a.terms(n);
        auto tb = b.terms(n);
        std::vector<NFElement> out;
        for (size_t i = 0; i < ta.size(); ++i) out.push_back(product ? ta[i] * tb[i] : ta[i] + tb[i]);
        return out;
    };
    return c2detail::assemble(f, std::move(coeffs), bound, d, ref, opts, std::move(fracs));
}

}  // namespace c2detail

inline ClosureResult c2_add(const C2FiniteSeq& a, const C2FiniteSeq& b, const ClosureOptions& opts) {
    return c2detail::ring_op(a, b, false, opts);
}

inline ClosureResult c2_mul(const C2FiniteSeq& a, const C2FiniteSeq& b, const ClosureOptions& opts) {
    return c2detail::ring_op(a, b, true, opts);
}

// interlacing: b(q*d + s) = seqs[s](q); coefficients are interlacings of the
// shift-padded input coefficients, so the order is at most d * max order
inline ClosureResult c2_interlace(const std::vector<C2FiniteSeq>& seqs, const ClosureOptions& opts) {
    if (seqs.empty()) throw domain_error(errc::invalid_input, "interlacing needs at least one sequence");
    const FieldPtr& f = seqs[0].field();
    for (const auto& s : seqs)
        if (s.field() != f) throw domain_error(errc::mixed_fields, "inputs over different fields");
    size_t d = seqs.size();
    if (d == 1) {
        ClosureResult res{seqs[0], seqs[0].order(), seqs[0].order(), Int(1), seqs[0].singular_indices(), false, {}};
        return res;
    }
    size_t rmax = 0;
    for (const auto& s : seqs) rmax = std::max(rmax, static_cast<size_t>(s.order()));
    if (rmax == 0) throw domain_error(errc::invalid_input, "interlacing of order-0 inputs");
    std::vector<std::vector<CFiniteSeq>> recs;
    for (const auto& s : seqs) recs.push_back(s.coeffs());
    std::vector<CFiniteSeq> coeffs = c2detail::interlace_recurrences(recs, f);
    long bound = static_cast<long>(d * rmax);

    c2detail::ReferenceFn ref = [&seqs, d](long n) {
        std::vector<std::vector<NFElement>> ts;
        long inner = n / static_cast<long>(d) + 2;
        for (const auto& s : seqs) ts.push_back(s.terms(inner));
        std::vector<NFElement> out;
        for (long i = 0; i < n; ++i)
            out.push_back(ts[static_cast<size_t>(i) % d][static_cast<size_t>(i) / d]);
        return out;
    };
    return c2detail::assemble(f, std::move(coeffs), bound, Int(1), ref, opts, {});
}

// subsequence at an arithmetic progression: a(l*n), via per-offset section
// recurrences at step d*l interlaced back together
inline ClosureResult c2_subsequence(const C2FiniteSeq& a, long l, const ClosureOptions& opts) {
    if (l < 1) throw domain_error(errc::invalid_input, "subsequence needs l >= 1");
    const FieldPtr& f = a.field();
    if (a.order() == 0) throw domain_error(errc::invalid_input, "subsequence of an order-0 recurrence");
    std::vector<CFiniteSeq> nonzero;
    for (const auto& c : a.coeffs())
        if (!c.is_zero()) nonzero.push_back(c);
    Int d = torsion_of_sequences(nonzero, opts.degree_cap);
    long dl = static_cast<long>(d.get_si());
    long bound = dl * a.order();

    std::vector<std::vector<CFiniteSeq>> per_offset;
    std::vector<SeqFraction> fracs;
    for (long s = 0; s < dl; ++s) {
        std::vector<SeqFraction> fr;
        per_offset.push_back(c2_section_recurrence(a, dl * l, s * l, opts.collect_fractions, &fr));
        for (auto& x : fr) fracs.push_back(std::move(x));
    }
    std::vector<CFiniteSeq> coeffs = c2detail::interlace_recurrences(per_offset, f);

    c2detail::ReferenceFn ref = [&a, l](long n) {
        auto t = a.terms(l * (n - 1) + 1);
        std::vector<NFElement> out;
        for (long i = 0; i < n; ++i) out.push_back(t[static_cast<size_t>(l * i)]);
        return out;
    };
    return c2detail::assemble(f, std::move(coeffs), bound, d, ref, opts, std::move(fracs));
}

// sparse subsequence c(j n^2 + k n + l) of a C-finite sequence without zero
// eigenvalues; the ansatz uses matrix-power sequences of the companion matrix
inline ClosureResult c2_sparse_subsequence(const CFiniteSeq& c, long j, long k, long l, const ClosureOptions& opts) {
    if (j < 0 || k < 0 || l < 0) throw domain_error(errc::invalid_input, "sparse subsequence needs j,k,l >= 0");
    const FieldPtr& f = c.field();
    if (j == 0) {
        // arithmetic progression; k = 0 collapses to a constant sequence
        CFiniteSeq sub = k == 0 ? CFiniteSeq::constant(c.term(l)) : cf_subsequence(c, k, l);
        C2FiniteSeq wrapped = C2FiniteSeq::from_cfinite(sub, opts.skolem_horizon);
        ClosureResult res{wrapped, wrapped.order(), wrapped.order(), Int(1), {}, false, {}};
        return res;
    }
    CFiniteSeq cm = cf_minimize(c);
    if (cm.is_zero()) {
        ClosureResult res{C2FiniteSeq::from_cfinite(CFiniteSeq::zero(f)), 0, 0, Int(1), {}, false, {}};
        return res;
    }
    EigenData ed = cf_eigenvalues(cm, opts.degree_cap);
    if (ed.zero_multiplicity > 0) throw domain_error(errc::zero_eigenvalue, "sparse subsequence needs nonzero eigenvalues");
    std::vector<NFElement> lams;
    for (const auto& [lam, mult] : ed.eigenvalues) lams.push_back(lam);
    Int d = lams.empty() ? Int(1) : torsion_number(lams);
    long dl = static_cast<long>(d.get_si());
    long r = cm.order();
    long bound = dl * r;

    Matrix<NFElement> Mc = cf_companion(cm);
    std::vector<std::vector<CFiniteSeq>> per_offset;
    std::vector<SeqFraction> fracs;
    for (long s = 0; s < dl; ++s) {
        long J = dl * j;                    // alpha_s(n) = c(dJ n^2 + dK n + L)
        long K = 2 * j * s + k;
        long L = j * s * s + k * s + l;
        Matrix<CFiniteSeq> W0 = dl * K == 0
            ? matrix_pow(Mc, Int(L)).map([](const NFElement& e) { return CFiniteSeq::constant(e); })
            : cf_matrix_power_seq(Mc, dl * K, L);
        Matrix<CFiniteSeq> Mstep = cf_matrix_power_seq(Mc, 2 * dl * J, dl * J);
        AnsatzState st;
        st.M = Mstep.map([](const CFiniteSeq& e) { return SeqFraction::from_seq(e); });
        st.w0.clear();
        for (size_t i = 0; i < static_cast<size_t>(r); ++i)
            st.w0.push_back(SeqFraction::from_seq(W0.at(i, 0)));
        KernelSolveResult kr = kernel_solve_ansatz(st, static_cast<size_t>(r), opts.collect_fractions);
        per_offset.push_back(kr.coeffs);
        for (auto& x : kr.elimination_fractions) fracs.push_back(std::move(x));
    }
    std::vector<CFiniteSeq> coeffs = c2detail::interlace_recurrences(per_offset, f);

    c2detail::ReferenceFn ref = [&c, j, k, l](long n) {
        long top = j * (n - 1) * (n - 1) + k * (n - 1) + l + 1;
        auto t = c.terms(top);
        std::vector<NFElement> out;
        for (long i = 0; i < n; ++i) out.push_back(t[static_cast<size_t>(j * i * i + k * i + l)]);
        return out;
    };
    return c2detail::assemble(f, std::move(coeffs), bound, d, ref, opts, std::move(fracs));
}

// ------------------------------------------------------------ verification ---

struct VerifyReport {
    bool ok = true;
    std::optional<long> first_violation;
    std::vector<long> singular_indices;  // zeros of the leading coefficient among the checked rows
    long order = 0;
    std::optional<long> bound;
    bool bound_ok = true;
};

// Check sum_i c_i(n) * ref(n+i) = 0 for all n with n + r < N; rows at
// singular leading-coefficient indices are checked too and reported.
inline VerifyReport c2_verify(const C2FiniteSeq& a, const std::vector<NFElement>& reference, long N,
                              std::optional<long> bound = {}) {
    VerifyReport rep;
    long r = a.order();
    rep.order = r;
    rep.bound = bound;
    if (bound && r > *bound) {
        rep.bound_ok = false;
        rep.ok = false;
    }
    long limit = std::min<long>(N, static_cast<long>(reference.size()));
    std::vector<std::vector<NFElement>> ct;
    for (const auto& c : a.coeffs()) ct.push_back(c.terms(std::max<long>(0, limit - r)));
    for (long n = 0; n + r < limit; ++n) {
        if (ct.back()[static_cast<size_t>(n)].is_zero()) rep.singular_indices.push_back(n);
        NFElement acc = a.field()->zero();
        for (long i = 0; i <= r; ++i)
            acc = acc + ct[static_cast<size_t>(i)][static_cast<size_t>(n)] * reference[static_cast<size_t>(n + i)];
        if (!acc.is_zero() && !rep.first_violation) {
            rep.first_violation = n;
            rep.ok = false;
        }
    }
    return rep;
}

}  // namespace recseq
