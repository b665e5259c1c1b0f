#pragma once

// Incremental kernel finder shared by every closure-property construction:
// columns w_0, w_1, ... arrive one at a time and the first linear dependency
// yields the kernel vector with maximal trailing zeros (so the resulting
// recurrence order is the least the ansatz permits). Works over any
// field-like scalar; pivots prefer entries of least complexity.

#include <functional>
#include <optional>
#include <vector>

#include "recseq/rational.hpp"

namespace recseq {

template <class S>
struct KernelResult {
    std::vector<S> coeffs;  // support 0..t with coeffs[t] = 1
    size_t order = 0;       // t
};

// next_column(i) must return the i-th column (length `rows`); is_zero_val,
// zero_like, complexity_of are found by ADL on S.
template <class S, class NextColumn>
std::optional<KernelResult<S>> incremental_kernel(NextColumn&& next_column, size_t rows, size_t max_cols,
                                                  std::vector<S>* denominators_seen = nullptr) {
    struct Pivot {
        std::vector<S> col;   // reduced column
        size_t row;           // pivot row
        std::vector<S> expr;  // col = sum expr[i] * w_i (original columns)
    };
    std::vector<Pivot> pivots;

    for (size_t t = 0; t < max_cols; ++t) {
        std::vector<S> v = next_column(t);
        if (v.size() != rows || rows == 0) throw domain_error(errc::internal, "kernel column has wrong length");
        std::vector<S> expr;
        expr.reserve(t + 1);
        S one = one_like(v[0]);
        S zero = zero_like(one);
        for (size_t i = 0; i < t; ++i) expr.push_back(zero);
        expr.push_back(one);

        for (const Pivot& p : pivots) {
            const S& lead = v[p.row];
            if (is_zero_val(lead)) continue;
            S f = lead / p.col[p.row];
            if (denominators_seen) denominators_seen->push_back(f);
            for (size_t i = 0; i < rows; ++i) v[i] = v[i] - f * p.col[i];
            for (size_t i = 0; i < p.expr.size() && i < expr.size(); ++i) expr[i] = expr[i] - f * p.expr[i];
        }

        bool zero_col = true;
        for (const auto& x : v)
            if (!is_zero_val(x)) {
                zero_col = false;
                break;
            }
        if (zero_col) {
            KernelResult<S> res;
            res.coeffs = std::move(expr);
            res.order = t;
            return res;
        }

        // choose the structurally cheapest nonzero entry as pivot
        size_t best = rows;
        long best_c = 0;
        for (size_t i = 0; i < rows; ++i) {
            if (is_zero_val(v[i])) continue;
            long c = complexity_of(v[i]);
            if (best == rows || c < best_c) {
                best = i;
                best_c = c;
            }
        }
        pivots.push_back(Pivot{std::move(v), best, std::move(expr)});
    }
    return std::nullopt;
}

}  // namespace recseq
