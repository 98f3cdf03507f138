#pragma once
// ============================================================================
// Walsh-Hadamard transform over Gamma_k and interaction coefficients.
//
//     (F_k f)(t) = 2^{-k} sum_sigma f(sigma) (-1)^{sigma . t}
//
// The character (-1)^{sigma . t} is the parity of popcount(index & t), so the
// transform is the standard in-place butterfly in O(k 2^k).  The forward
// transform carries the 2^{-k} normalization; the inverse is the forward
// followed by multiplication with 2^k.  Scaling by powers of two is exact in
// both double and rational arithmetic, so the butterfly is the only source
// of rounding in float mode.
//
// Interaction coefficients are minus the transform of an energy table:
//     J_k  = -F_k ln T_k          (farey)
//     jC_k = -F_k ln hC_k         (canonical heights)
//     jG_k = -F_k ln hG_k         (grand-canonical heights)
//     jn_k = -F_k ln T^n_k        (constrained chain)
// and j_k = F_k T_k is the exact rational transform of the traces.
// ============================================================================

#include "farey/config.hpp"
#include "farey/exact.hpp"
#include "farey/heights.hpp"
#include "farey/parallel.hpp"
#include "farey/transfer.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

namespace farey::walsh {

using chain::Index;

// In-place unnormalized butterfly: after the call, v[t] = sum_sigma
// f(sigma) (-1)^{sigma.t}.  Each stage pairs indices differing in one bit;
// the iteration owning the pair is the one with that bit clear, so parallel
// slices never touch the same entry and the float rounding pattern is
// independent of the thread count.
template <class T>
void wht_unnormalized(std::vector<T>& v) {
    const std::int64_t n = static_cast<std::int64_t>(v.size());
    for (std::int64_t bs = 1; bs < n; bs <<= 1) {
        parallel::for_range(n, [&](std::int64_t lo, std::int64_t hi) {
            for (std::int64_t i = lo; i < hi; ++i) {
                if (i & bs) continue;
                T x = v[static_cast<std::size_t>(i)];
                T y = v[static_cast<std::size_t>(i | bs)];
                v[static_cast<std::size_t>(i)] = x + y;
                v[static_cast<std::size_t>(i | bs)] = x - y;
            }
        });
    }
}

inline int table_k(std::size_t n) {
    int k = 0;
    while ((std::size_t{1} << k) < n) ++k;
    return k;
}

inline std::vector<double> forward_transform(std::vector<double> v) {
    const int k = table_k(v.size());
    wht_unnormalized(v);
    const double scale = std::ldexp(1.0, -k); // exact power of two
    for (double& x : v) x *= scale;
    return v;
}

inline std::vector<double> inverse_transform(std::vector<double> v) {
    v = forward_transform(std::move(v));
    const int k = table_k(v.size());
    const double scale = std::ldexp(1.0, k);
    for (double& x : v) x *= scale;
    return v;
}

inline std::vector<Rational> forward_transform_exact(std::vector<Rational> v) {
    const int k = table_k(v.size());
    wht_unnormalized(v);
    const Rational scale(BigInt(1), BigInt(1) << k);
    for (Rational& x : v) x *= scale;
    return v;
}

// ---------------------------------------------------------------------------
// trace transforms (exact)
// ---------------------------------------------------------------------------

// Unnormalized integer transform of T_k (or T^n_k when n >= 1); entries are
// bounded by sum T = 3^k + 1, well inside 64 bits for any supported k.
inline std::vector<std::int64_t> trace_transform_int(int k, int n = 0) {
    std::vector<std::int64_t> t =
        (n >= 1) ? chain::constrained_trace_table(k, n) : chain::trace_table(k);
    wht_unnormalized(t);
    return t;
}

// j_k (or j^n_k) as exact rationals with denominator 2^k.
inline std::vector<Rational> trace_transform(int k, int n = 0) {
    const std::vector<std::int64_t> u = trace_transform_int(k, n);
    const BigInt den = BigInt(1) << k;
    std::vector<Rational> j(u.size());
    for (std::size_t i = 0; i < u.size(); ++i)
        j[i] = Rational(BigInt(u[i]), den);
    return j;
}

// ---------------------------------------------------------------------------
// interaction coefficients
// ---------------------------------------------------------------------------

enum class Ensemble { farey, canonical, grand };

inline std::vector<std::int64_t> weight_table(int k, Ensemble e) {
    switch (e) {
    case Ensemble::farey:     return chain::trace_table(k);
    case Ensemble::canonical: return chain::height_table(k);
    case Ensemble::grand:     return chain::grand_height_table(k);
    }
    return {};
}

inline std::vector<double> interaction_coefficients(int k, Ensemble e) {
    std::vector<double> v = chain::log_table(weight_table(k, e));
    v = forward_transform(std::move(v));
    for (double& x : v) x = (x == 0.0) ? 0.0 : -x; // avoid -0 in outputs
    return v;
}

inline std::vector<double> interaction_coefficients_constrained(int k, int n) {
    std::vector<double> v = chain::log_table(chain::constrained_trace_table(k, n));
    v = forward_transform(std::move(v));
    for (double& x : v) x = (x == 0.0) ? 0.0 : -x;
    return v;
}

// Exact-rational transform of an energy table.  Every double is a dyadic
// rational, so symmetry statements about J_k can be checked as exact
// identities even though the energies themselves carry rounding.
inline std::vector<Rational> interaction_coefficients_exact(const std::vector<double>& energies) {
    std::vector<Rational> v(energies.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = Rational(energies[i]); // exact dyadic value
    v = forward_transform_exact(std::move(v));
    for (Rational& x : v) x = -x;
    return v;
}

} // namespace farey::walsh
