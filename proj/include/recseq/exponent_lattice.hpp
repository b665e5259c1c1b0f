#pragma once

// Iterative computation of a basis of the exponent lattice
//   L(lam_1..lam_m) = { e in Z^m : lam_1^e_1 * ... * lam_m^e_m = 1 }
// via the lifted lattice L+ that also tracks the coefficient of 2*pi*i under
// principal logarithms. Candidate vectors are LLL-reduced approximations,
// membership is decided exactly (power products in the number field plus one
// certified interval evaluation), and Gram-Schmidt norms justify dropping
// trailing vectors. The torsion number is the invariant factor of a basis
// matrix of L.

#include <map>
#include <optional>
#include <vector>

#include "recseq/interval.hpp"
#include "recseq/lattice.hpp"
#include "recseq/matrix.hpp"
#include "recseq/number_field.hpp"

namespace recseq {

struct ExpLatticeOptions {
    std::optional<Rat> masser_override;
    bool stability_check = false;  // re-run with 2M and compare lattices
    long max_iterations = 256;
};

struct ExpLatticeResult {
    std::vector<std::vector<Int>> basis_L;      // vectors of length m
    std::vector<std::vector<Int>> basis_Lplus;  // vectors of length m+1
    long iterations = 0;
    Int final_w = 1;
    Rat M_used = Rat(0);
    std::optional<bool> stable;
};

// Norm bound policy. With an override: max(override, m*d). Without one:
//   M = m * d * (1 + bitlength(1 + H))
// where d is the field degree and H the largest naive coordinate height
// max(|numerator|, denominator) over all inputs. Always >= m*d.
inline Rat masser_bound(const std::vector<NFElement>& lams, const std::optional<Rat>& override_bound = {}) {
    if (lams.empty()) return override_bound.value_or(Rat(0));
    long m = static_cast<long>(lams.size());
    long d = lams[0].field()->degree();
    Rat md(m * d);
    if (override_bound) return std::max(*override_bound, md);
    Int h(1);
    for (const auto& lam : lams)
        for (const auto& c : lam.coords()) {
            Int num = abs(c.get_num());
            if (num > h) h = num;
            if (c.get_den() > h) h = c.get_den();
        }
    long bits = static_cast<long>(mpz_sizeinbase(Int(h + 1).get_mpz_t(), 2));
    return md * Rat(1 + bits);
}

// Certified boxes for log(lambda), principal branch, refined on demand.
class LogWorkspace {
  public:
    explicit LogWorkspace(const NFElement& lam) : ctx_(lam.field()), lam_(lam) {}

    Box log(const Rat& eps) {
        if (has_ && cached_.width() < eps) return cached_;
        Rat delta = std::min(Rat(eps / 4), Rat(1, 16));
        for (int guard = 0; guard < 400; ++guard) {
            Box zb = ctx_.embed(lam_, delta);
            try {
                Box lb = log_box(zb, eps / 2);
                if (lb.width() < eps) {
                    cached_ = lb;
                    has_ = true;
                    return lb;
                }
            } catch (const domain_error& e) {
                if (e.code() != errc::branch_cut && e.code() != errc::zero_box) throw;
            }
            delta = delta / 8;
        }
        throw domain_error(errc::internal, "certified log refinement did not converge");
    }

  private:
    EmbeddingContext ctx_;
    NFElement lam_;
    Box cached_;
    bool has_ = false;
};

namespace eldetail {

struct MembershipOracle {
    const std::vector<NFElement>& lams;  // nonzero, none equal to 1
    std::vector<LogWorkspace>& logs;
    std::map<std::vector<Int>, bool> cache;

    // e has length m+1; decides e_1 log lam_1 + ... + e_m log lam_m + e_{m+1} 2 pi i = 0
    bool contains(const std::vector<Int>& e) {
        auto it = cache.find(e);
        if (it != cache.end()) return it->second;
        bool ans = decide(e);
        cache.emplace(e, ans);
        return ans;
    }

  private:
    bool decide(const std::vector<Int>& e) {
        size_t m = lams.size();
        std::vector<Int> head(e.begin(), e.begin() + static_cast<long>(m));
        if (!nf_pow_product_is_one(lams, head)) return false;
        // the real parts cancel exactly; the imaginary part is an exact
        // multiple of 2*pi, so an interval of width < 2*pi decides it
        Int scale(1);
        for (const auto& c : e) scale += abs(c);
        Rat eps = Rat(6) / Rat(2 * scale);
        for (int guard = 0; guard < 64; ++guard) {
            RatInterval im(Rat(0), Rat(0));
            for (size_t i = 0; i < m; ++i) {
                if (sgn(e[i]) == 0) continue;
                im = im + logs[i].log(eps).im * Rat(e[i]);
            }
            if (sgn(e[m]) != 0) im = im + pi_box(eps).re * Rat(2 * e[m]);
            if (im.width() < 6) return im.contains(Rat(0));
            eps = eps / 4;
        }
        throw domain_error(errc::internal, "membership interval did not narrow");
    }
};

}  // namespace eldetail

// Decide membership of a length-(m+1) vector in L+ directly.
inline bool membership_Lplus(const std::vector<Int>& e, const std::vector<NFElement>& lams) {
    if (e.size() != lams.size() + 1) throw domain_error(errc::invalid_input, "membership vector length mismatch");
    for (const auto& lam : lams) {
        if (lam.is_zero()) throw domain_error(errc::invalid_input, "zero base");
        if (lam.is_one()) throw domain_error(errc::invalid_input, "bases equal to 1 must be preprocessed away");
    }
    std::vector<LogWorkspace> logs;
    logs.reserve(lams.size());
    for (const auto& lam : lams) logs.emplace_back(lam);
    eldetail::MembershipOracle oracle{lams, logs, {}};
    return oracle.contains(e);
}

namespace eldetail {

// Core loop on a preprocessed input (nonzero, no ones). Returns basis of L+
// over the reduced index set.
inline ExpLatticeResult basis_reduced(const std::vector<NFElement>& lams, const Rat& M, long max_iterations) {
    ExpLatticeResult res;
    res.M_used = M;
    const size_t m = lams.size();
    const size_t n = m + 1;

    std::vector<LogWorkspace> logs;
    logs.reserve(m);
    for (const auto& lam : lams) logs.emplace_back(lam);
    MembershipOracle oracle{lams, logs, {}};

    // rows of B live in Q^(n+2): n integer coordinates plus two scaled ones
    std::vector<VecQ> B;
    for (size_t i = 0; i < n; ++i) {
        VecQ v(n + 2, Rat(0));
        v[i] = 1;
        B.push_back(std::move(v));
    }
    auto head_of = [&](const VecQ& v) {
        std::vector<Int> e(n);
        for (size_t i = 0; i < n; ++i) {
            if (!rat_is_integer(v[i])) throw domain_error(errc::internal, "non-integer lattice coordinate");
            e[i] = v[i].get_num();
        }
        return e;
    };

    Int w(1);
    while (true) {
        bool all_in = true;
        for (const auto& v : B)
            if (!oracle.contains(head_of(v))) {
                all_in = false;
                break;
            }
        if (all_in) break;
        if (++res.iterations > max_iterations)
            throw domain_error(errc::internal, "exponent lattice iteration limit reached");

        w *= 2;
        Rat eps = Rat(1) / (Rat(static_cast<long>(n)) * Rat(w));
        // midpoints of certified boxes of width < eps err by less than eps/2;
        // snapping them to a dyadic grid of step <= eps/8 keeps the total
        // error below eps while keeping the LLL arithmetic small
        long grid_bits = floor_log2(Rat(1) / eps) + 4;
        Rat grid_scale = rat_pow2(grid_bits);
        auto snap = [&](const Rat& x) -> Rat {
            Rat r(rat_round(x * grid_scale));
            r /= grid_scale;
            return r;
        };
        std::vector<Rat> xi_re(n), xi_im(n);
        for (size_t i = 0; i < m; ++i) {
            Box lb = logs[i].log(eps);
            xi_re[i] = snap(lb.re.mid());
            xi_im[i] = snap(lb.im.mid());
        }
        xi_re[m] = 0;
        xi_im[m] = snap(pi_box(eps / 2).re.mid() * 2);

        for (auto& v : B) {
            Rat sre(0), sim(0);
            for (size_t i = 0; i < n; ++i) {
                sre += v[i] * xi_re[i];
                sim += v[i] * xi_im[i];
            }
            v[n] = Rat(w) * sre;
            v[n + 1] = Rat(w) * sim;
        }

        B = lll_reduce(B);
        GramSchmidt g = gram_schmidt(B);
        size_t r = B.size();
        while (r > 0 && g.B[r - 1] > Rat(static_cast<long>(n) + 2) * M * M) --r;
        B.resize(r);
        if (B.empty()) break;
    }

    res.final_w = w;
    for (const auto& v : B) {
        std::vector<Int> e = head_of(v);
        res.basis_Lplus.push_back(e);
        res.basis_L.emplace_back(e.begin(), e.begin() + static_cast<long>(m));
    }
    return res;
}

}  // namespace eldetail

// Basis of L(lam_1..lam_m) and of the lifted lattice L+. Entries equal to 1
// are preprocessed away (their unit relations join the output directly).
inline ExpLatticeResult exp_lattice_basis(const std::vector<NFElement>& lams, const ExpLatticeOptions& opts = {}) {
    const size_t m = lams.size();
    std::vector<NFElement> kept;
    std::vector<size_t> kept_pos, one_pos;
    for (size_t i = 0; i < m; ++i) {
        if (lams[i].is_zero()) throw domain_error(errc::invalid_input, "zero entry in exponent lattice input");
        if (lams[i].is_one())
            one_pos.push_back(i);
        else {
            kept.push_back(lams[i]);
            kept_pos.push_back(i);
        }
    }

    ExpLatticeResult reduced;
    if (!kept.empty()) {
        Rat M = masser_bound(kept, opts.masser_override);
        reduced = eldetail::basis_reduced(kept, M, opts.max_iterations);
        if (opts.stability_check) {
            ExpLatticeResult redo = eldetail::basis_reduced(kept, M * 2, opts.max_iterations);
            reduced.stable = same_lattice(reduced.basis_L, redo.basis_L);
        }
    }

    ExpLatticeResult out;
    out.iterations = reduced.iterations;
    out.final_w = reduced.final_w;
    out.M_used = reduced.M_used;
    out.stable = reduced.stable;
    for (size_t i : one_pos) {
        std::vector<Int> l(m, Int(0)), lp(m + 1, Int(0));
        l[i] = 1;
        lp[i] = 1;
        out.basis_L.push_back(std::move(l));
        out.basis_Lplus.push_back(std::move(lp));
    }
    for (size_t t = 0; t < reduced.basis_L.size(); ++t) {
        std::vector<Int> l(m, Int(0)), lp(m + 1, Int(0));
        for (size_t j = 0; j < kept_pos.size(); ++j) {
            l[kept_pos[j]] = reduced.basis_L[t][j];
            lp[kept_pos[j]] = reduced.basis_L[t][j];
        }
        lp[m] = reduced.basis_Lplus[t][kept_pos.size()];
        out.basis_L.push_back(std::move(l));
        out.basis_Lplus.push_back(std::move(lp));
    }

    // soundness: every reported relation really is one
    for (const auto& v : out.basis_L)
        if (!nf_pow_product_is_one(lams, v))
            throw domain_error(errc::internal, "exponent lattice produced a non-relation");
    return out;
}

// Torsion number = invariant factor of a basis matrix of L (1 for the
// trivial lattice).
inline Int torsion_number(const std::vector<NFElement>& lams, const ExpLatticeOptions& opts = {}) {
    ExpLatticeResult r = exp_lattice_basis(lams, opts);
    if (r.basis_L.empty()) return Int(1);
    return invariant_factor(IntMatrix::from_columns(r.basis_L));
}

}  // namespace recseq
