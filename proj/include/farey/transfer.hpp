#pragma once
// ============================================================================
// Spin configurations, transfer matrices, traces and energies.
//
// A configuration sigma in Gamma_k = {0,1}^k is stored as a k-bit index with
// the fixed convention  sigma_i <-> bit i-1,  index = sum_i sigma_i 2^{i-1}.
// The transfer product is
//
//     M_k(sigma) = F(sigma_k) * F(sigma_{k-1}) * ... * F(sigma_1),
//     F(0) = A = [[1,0],[1,1]],   F(1) = B = [[1,1],[0,1]],
//
// i.e. each new site left-multiplies.  T_k = Trace(M_k) and E_k = ln T_k.
// The constrained chain prepends a fixed block (0,1,...,1,0) of n ones; its
// traces are obtained from the same recursion seeded with N = A B^n A.
// ============================================================================

#include "farey/config.hpp"
#include "farey/exact.hpp"
#include "farey/parallel.hpp"

#include <bit>
#include <cstdint>
#include <vector>

namespace farey::chain {

using Index = std::uint32_t;

// ---------------------------------------------------------------------------
// 2x2 integer matrices
// ---------------------------------------------------------------------------

template <class T>
struct Mat2 {
    T a{}, b{}, c{}, d{}; // [[a,b],[c,d]]

    friend Mat2 operator*(const Mat2& x, const Mat2& y) {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
                x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
    }
    friend Mat2 operator+(const Mat2& x, const Mat2& y) {
        return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d};
    }
    friend Mat2 operator-(const Mat2& x, const Mat2& y) {
        return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d};
    }
    friend bool operator==(const Mat2& x, const Mat2& y) {
        return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
    }
    T trace() const { return a + d; }
};

template <class T> Mat2<T> mat_identity() { return {1, 0, 0, 1}; }
template <class T> Mat2<T> mat_A() { return {1, 0, 1, 1}; }
template <class T> Mat2<T> mat_B() { return {1, 1, 0, 1}; }
template <class T> Mat2<T> mat_D() { return mat_A<T>() - mat_B<T>(); } // [[0,-1],[1,0]]
template <class T> Mat2<T> mat_S() { return mat_A<T>() + mat_B<T>(); } // [[2,1],[1,2]]
template <class T> Mat2<T> mat_P() { return {0, 1, 1, 0}; }

// N = A B^n A = (n+1)*[[1,1],[1,1]] + D; the seed of the constrained chain.
template <class T>
Mat2<T> mat_N(int n) {
    T m = static_cast<T>(n);
    return {m + 1, m, m + 2, m + 1};
}

// ---------------------------------------------------------------------------
// configuration helpers
// ---------------------------------------------------------------------------

inline Index config_mask(int k) { return (k >= 32) ? ~Index{0} : ((Index{1} << k) - 1); }

// sigma_site for site in {1..k}
inline int spin_bit(Index idx, int site) { return (idx >> (site - 1)) & 1u; }

// s_i = (-1)^{sigma_i} in {+1,-1}
inline int spin_value(Index idx, int site) { return 1 - 2 * spin_bit(idx, site); }

// m_k = (1/k) sum_i s_i = (k - 2*popcount)/k
inline double magnetization(Index idx, int k) {
    return static_cast<double>(k - 2 * std::popcount(idx)) / static_cast<double>(k);
}

enum class Symmetry { shift, mirror, flip };

// shift: sigma'_l = sigma_{l-1} cyclically; mirror: reversal; flip: 1-sigma.
inline Index symmetry_action(Index idx, int k, Symmetry which) {
    const Index mask = config_mask(k);
    switch (which) {
    case Symmetry::shift:
        return ((idx << 1) | (idx >> (k - 1))) & mask;
    case Symmetry::mirror: {
        Index r = 0;
        for (int i = 0; i < k; ++i)
            r |= ((idx >> i) & 1u) << (k - 1 - i);
        return r;
    }
    case Symmetry::flip:
        return idx ^ mask;
    }
    return idx;
}

// ---------------------------------------------------------------------------
// exact single-configuration products
// ---------------------------------------------------------------------------

inline Mat2<BigInt> build_matrix(int k, Index idx) {
    require_k(k, 0);
    Mat2<BigInt> m = mat_identity<BigInt>();
    const Mat2<BigInt> A = mat_A<BigInt>(), B = mat_B<BigInt>();
    for (int i = 0; i < k; ++i)
        m = (((idx >> i) & 1u) ? B : A) * m;
    return m;
}

struct TraceEnergy {
    BigInt trace;
    double energy;
};

inline TraceEnergy trace_energy(int k, Index idx) {
    require_k(k, 1);
    BigInt t = build_matrix(k, idx).trace();
    return {t, log_of_integer(t)};
}

inline Mat2<BigInt> constrained_matrix(int n, int k, Index idx) {
    require_k(k, 1);
    Mat2<BigInt> m = mat_N<BigInt>(n);
    const Mat2<BigInt> A = mat_A<BigInt>(), B = mat_B<BigInt>();
    for (int i = 0; i < k; ++i)
        m = (((idx >> i) & 1u) ? B : A) * m;
    return m;
}

// T^n_k(sigma) = T_{k+n+2}(tau, sigma) with tau = (0, 1_n, 0); the identity
// with the plain trace on the concatenated index is checked in tests.
inline BigInt constrained_trace(int n, int k, Index idx) {
    return constrained_matrix(n, k, idx).trace();
}

// index of (tau, sigma) in Gamma_{k+n+2}: tau occupies sites 1..n+2
inline Index concat_index(int n, Index idx) {
    const Index tau = ((Index{1} << n) - 1) << 1;
    return tau | (idx << (n + 2));
}

// ---------------------------------------------------------------------------
// dense tables (64-bit fast path; entries stay far below 2^62 for k <= 30
// since traces and heights grow like phi^k)
// ---------------------------------------------------------------------------

// Builds all 2^k transfer products in place by the doubling recursion: level
// j fills the upper half (bit j-1 set, new matrix B*M) from the lower half
// and then updates the lower half to A*M.
struct MatrixTable {
    int k = 0;
    std::vector<std::int64_t> a, b, c, d;

    std::vector<std::int64_t> traces() const {
        std::vector<std::int64_t> t(a.size());
        parallel::for_range(static_cast<std::int64_t>(a.size()),
                            [&](std::int64_t lo, std::int64_t hi) {
                                for (std::int64_t i = lo; i < hi; ++i)
                                    t[i] = a[i] + d[i];
                            });
        return t;
    }
};

inline MatrixTable matrix_table(int k, Mat2<std::int64_t> seed) {
    require_k(k, 1);
    const std::size_t n = std::size_t{1} << k;
    MatrixTable m;
    m.k = k;
    m.a.resize(n); m.b.resize(n); m.c.resize(n); m.d.resize(n);
    m.a[0] = seed.a; m.b[0] = seed.b; m.c[0] = seed.c; m.d[0] = seed.d;
    for (int j = 1; j <= k; ++j) {
        const std::int64_t half = std::int64_t{1} << (j - 1);
        parallel::for_range(half, [&](std::int64_t lo, std::int64_t hi) {
            for (std::int64_t i = lo; i < hi; ++i) {
                const std::size_t u = static_cast<std::size_t>(i);
                const std::size_t v = static_cast<std::size_t>(i + half);
                // upper half first: B*M reads the untouched lower entries
                m.a[v] = m.a[u] + m.c[u];
                m.b[v] = m.b[u] + m.d[u];
                m.c[v] = m.c[u];
                m.d[v] = m.d[u];
                // lower half becomes A*M (a,b rows unchanged)
                m.c[u] += m.a[u];
                m.d[u] += m.b[u];
            }
        });
    }
    return m;
}

inline std::vector<std::int64_t> trace_table(int k) {
    return matrix_table(k, mat_identity<std::int64_t>()).traces();
}

inline std::vector<std::int64_t> constrained_trace_table(int k, int n) {
    return matrix_table(k, mat_N<std::int64_t>(n)).traces();
}

// elementwise ln of a positive integer table; table entries are < 2^53 so
// the double conversion is exact
inline std::vector<double> log_table(const std::vector<std::int64_t>& t) {
    std::vector<double> e(t.size());
    parallel::for_range(static_cast<std::int64_t>(t.size()),
                        [&](std::int64_t lo, std::int64_t hi) {
                            for (std::int64_t i = lo; i < hi; ++i)
                                e[i] = std::log(static_cast<double>(t[i]));
                        });
    return e;
}

inline std::vector<double> energy_table(int k) { return log_table(trace_table(k)); }

} // namespace farey::chain
