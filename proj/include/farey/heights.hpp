#pragma once
// ============================================================================
// Canonical and grand-canonical heights.
//
// The canonical height follows the recursion
//     h_0 = 1,   h_{k+1}(sigma, s) = h_k(sigma) + s * h_k(1-sigma)
// where s in {0,1} is the new last spin, and the grand-canonical height is
//     hG_k(sigma) = h_k(sigma) + h_k(1-sigma).
// With the little-endian index convention, 1-sigma is mask - index, so the
// dense recursion is  new[i | 2^j] = old[i] + old[mask_j - i].
// ============================================================================

#include "farey/config.hpp"
#include "farey/exact.hpp"
#include "farey/parallel.hpp"
#include "farey/transfer.hpp"

#include <cstdint>
#include <vector>

namespace farey::chain {

struct HeightPair {
    BigInt canonical;
    BigInt grand; // canonical(sigma) + canonical(1-sigma)
};

// Single-configuration exact height: carry (h(prefix), h(1-prefix)) through
// the recursion.
inline BigInt canonical_height(int k, Index idx) {
    require_k(k, 0);
    BigInt u = 1, v = 1; // h of the empty prefix and of its complement
    for (int i = 0; i < k; ++i) {
        if ((idx >> i) & 1u)
            u += v;   // (u,v) -> (u+v, v)
        else
            v += u;   // (u,v) -> (u, u+v)
    }
    return u;
}

inline HeightPair heights(int k, Index idx) {
    BigInt h = canonical_height(k, idx);
    BigInt hf = canonical_height(k, idx ^ config_mask(k));
    return {h, h + hf};
}

inline std::vector<std::int64_t> height_table(int k) {
    require_k(k, 1);
    const std::size_t n = std::size_t{1} << k;
    std::vector<std::int64_t> h(n);
    h[0] = 1;
    for (int j = 1; j <= k; ++j) {
        const std::int64_t half = std::int64_t{1} << (j - 1);
        parallel::for_range(half, [&](std::int64_t lo, std::int64_t hi) {
            for (std::int64_t i = lo; i < hi; ++i)
                h[static_cast<std::size_t>(i + half)] =
                    h[static_cast<std::size_t>(i)] +
                    h[static_cast<std::size_t>(half - 1 - i)];
        });
    }
    return h;
}

inline std::vector<std::int64_t> grand_height_table(int k) {
    const std::vector<std::int64_t> h = height_table(k);
    const std::int64_t n = static_cast<std::int64_t>(h.size());
    std::vector<std::int64_t> g(h.size());
    parallel::for_range(n, [&](std::int64_t lo, std::int64_t hi) {
        for (std::int64_t i = lo; i < hi; ++i)
            g[static_cast<std::size_t>(i)] =
                h[static_cast<std::size_t>(i)] +
                h[static_cast<std::size_t>(n - 1 - i)];
    });
    return g;
}

} // namespace farey::chain
