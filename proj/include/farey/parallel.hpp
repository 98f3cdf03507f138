#pragma once
// ============================================================================
// Deterministic parallel primitives.
//
// Two rules make every result bit-identical for any thread count:
//   1. parallel maps only ever write disjoint index ranges, and the value
//      written at index i depends on nothing but i;
//   2. reductions always use a fixed binary tree whose shape depends only on
//      the element count, never on the thread count.  Blocks of `sum_block`
//      consecutive terms are accumulated left to right, then the block
//      partials are folded pairwise.
// ============================================================================

#include <cstdint>
#include <thread>
#include <vector>

namespace farey::parallel {

inline int& thread_count_ref() {
    static int n = 1;
    return n;
}

inline int thread_count() { return thread_count_ref(); }

inline void set_thread_count(int n) {
    if (n < 1) n = 1;
    if (n > 256) n = 256;
    thread_count_ref() = n;
}

// Runs body(begin, end) over [0, n) split into contiguous slices.  The body
// must only touch state associated with its own indices.
template <class Body>
void for_range(std::int64_t n, Body&& body) {
    const int nt = thread_count();
    if (nt <= 1 || n < (std::int64_t{1} << 12)) {
        body(std::int64_t{0}, n);
        return;
    }
    const std::int64_t chunk = (n + nt - 1) / nt;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nt));
    for (int t = 0; t < nt; ++t) {
        const std::int64_t lo = t * chunk;
        const std::int64_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&body, lo, hi] { body(lo, hi); });
    }
    for (auto& th : pool) th.join();
}

inline constexpr std::int64_t sum_block = 4096;

// Folds adjacent pairs until one value remains.  Shape depends only on the
// input length.
inline double fold_pairwise(std::vector<double>& v) {
    if (v.empty()) return 0.0;
    std::size_t n = v.size();
    while (n > 1) {
        std::size_t half = n / 2;
        for (std::size_t i = 0; i < half; ++i)
            v[i] = v[2 * i] + v[2 * i + 1];
        if (n & 1) {
            v[half] = v[n - 1];
            n = half + 1;
        } else {
            n = half;
        }
    }
    return v[0];
}

// Deterministic sum of term(i) for i in [0, n).  Each length-`sum_block`
// block is summed serially; blocks are independent, so they may be computed
// on any thread.
template <class Term>
double pairwise_sum(std::int64_t n, Term&& term) {
    if (n <= 0) return 0.0;
    const std::int64_t nblocks = (n + sum_block - 1) / sum_block;
    std::vector<double> partial(static_cast<std::size_t>(nblocks));
    for_range(nblocks, [&](std::int64_t b0, std::int64_t b1) {
        for (std::int64_t b = b0; b < b1; ++b) {
            const std::int64_t lo = b * sum_block;
            const std::int64_t hi = std::min(n, lo + sum_block);
            double acc = 0.0;
            for (std::int64_t i = lo; i < hi; ++i)
                acc += term(i);
            partial[static_cast<std::size_t>(b)] = acc;
        }
    });
    return fold_pairwise(partial);
}

} // namespace farey::parallel
