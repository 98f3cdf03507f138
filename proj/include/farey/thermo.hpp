#pragma once
// ============================================================================
// Finite-size thermodynamics of the spin chains.
//
// All ensembles share the Gibbs form Z = sum_sigma w(sigma)^-beta with
// integer weights w (traces or heights), so observables are plain weighted
// sums over the 2^k configurations.  Sums go through the deterministic
// pairwise reduction, which keeps every number bit-identical across thread
// counts.  The mean magnetization is summed over flip pairs
// (sigma, 1-sigma): the two weights are bitwise equal and the magnetization
// terms are exact negations, so the result is an exact 0.0 rather than a
// small residual.
// ============================================================================

#include "farey/config.hpp"
#include "farey/heights.hpp"
#include "farey/parallel.hpp"
#include "farey/transfer.hpp"
#include "farey/walsh.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace farey::thermo {

using chain::Index;
using walsh::Ensemble;

// ---------------------------------------------------------------------------
// Gibbs weights and the partition function
// ---------------------------------------------------------------------------

inline std::vector<double> gibbs_weights(int k, double beta, Ensemble e = Ensemble::farey) {
    std::vector<double> v = chain::log_table(walsh::weight_table(k, e));
    parallel::for_range(static_cast<std::int64_t>(v.size()), [&](std::int64_t lo, std::int64_t hi) {
        for (std::int64_t i = lo; i < hi; ++i)
            v[static_cast<std::size_t>(i)] = std::exp(-beta * v[static_cast<std::size_t>(i)]);
    });
    return v;
}

inline double partition_function(int k, double beta, Ensemble e = Ensemble::farey) {
    const std::vector<double> w = gibbs_weights(k, beta, e);
    return parallel::pairwise_sum(static_cast<std::int64_t>(w.size()),
                                  [&](std::int64_t i) { return w[static_cast<std::size_t>(i)]; });
}

// ---------------------------------------------------------------------------
// observables
// ---------------------------------------------------------------------------

struct ThermoPoint {
    int k = 0;
    double beta = 0.0;
    double z = 0.0;   // partition function
    double f = 0.0;   // free energy  -ln Z / (beta k)
    double u = 0.0;   // energy density  <ln w> / k
    double msq = 0.0; // <m^2>
};

inline ThermoPoint observables(int k, double beta, Ensemble e = Ensemble::farey) {
    const std::vector<double> lw = chain::log_table(walsh::weight_table(k, e));
    const auto n = static_cast<std::int64_t>(lw.size());
    std::vector<double> w(lw.size());
    parallel::for_range(n, [&](std::int64_t lo, std::int64_t hi) {
        for (std::int64_t i = lo; i < hi; ++i)
            w[static_cast<std::size_t>(i)] = std::exp(-beta * lw[static_cast<std::size_t>(i)]);
    });

    ThermoPoint p;
    p.k = k;
    p.beta = beta;
    p.z = parallel::pairwise_sum(n, [&](std::int64_t i) { return w[static_cast<std::size_t>(i)]; });
    p.f = -std::log(p.z) / (beta * k);
    p.u = parallel::pairwise_sum(n,
                                 [&](std::int64_t i) {
                                     return w[static_cast<std::size_t>(i)] *
                                            lw[static_cast<std::size_t>(i)];
                                 }) /
          (p.z * k);
    p.msq = parallel::pairwise_sum(n,
                                   [&](std::int64_t i) {
                                       const double m = chain::magnetization(
                                           static_cast<Index>(i), k);
                                       return w[static_cast<std::size_t>(i)] * m * m;
                                   }) /
            p.z;
    return p;
}

inline double mean_square_magnetization(int k, double beta, Ensemble e = Ensemble::farey) {
    return observables(k, beta, e).msq;
}

// Summed over flip pairs (idx, ~idx): equal weights, opposite m, so every
// pair contributes an exact 0.0 and the total is 0.0 in floating point.
inline double mean_magnetization(int k, double beta, Ensemble e = Ensemble::farey) {
    const std::vector<double> w = gibbs_weights(k, beta, e);
    const Index mask = chain::config_mask(k);
    const std::int64_t half = std::int64_t{1} << (k - 1);
    const double num = parallel::pairwise_sum(half, [&](std::int64_t i) {
        const auto a = static_cast<Index>(i);
        const Index b = mask ^ a;
        return w[a] * chain::magnetization(a, k) + w[b] * chain::magnetization(b, k);
    });
    const double z = parallel::pairwise_sum(std::int64_t{1} << k, [&](std::int64_t i) {
        return w[static_cast<std::size_t>(i)];
    });
    return num / z;
}

// <s_i s_j> with s in {+1,-1}; the product is +1 exactly when bits i-1 and
// j-1 agree.
inline double pair_correlation(int k, double beta, int i, int j,
                               Ensemble e = Ensemble::farey) {
    if (i < 1 || i > k || j < 1 || j > k)
        throw std::invalid_argument("correlation sites must lie in 1..k");
    const std::vector<double> w = gibbs_weights(k, beta, e);
    const double num = parallel::pairwise_sum(std::int64_t{1} << k, [&](std::int64_t idx) {
        const auto x = static_cast<Index>(idx);
        const int sign = 1 - 2 * static_cast<int>(((x >> (i - 1)) ^ (x >> (j - 1))) & 1u);
        return w[x] * sign;
    });
    const double z = parallel::pairwise_sum(std::int64_t{1} << k, [&](std::int64_t idx) {
        return w[static_cast<std::size_t>(idx)];
    });
    return num / z;
}

// ---------------------------------------------------------------------------
// free-energy sandwich
// ---------------------------------------------------------------------------

struct FreeEnergyBounds {
    int k = 0;
    double beta = 0.0;
    double farey = 0.0;     // trace ensemble
    double canonical = 0.0; // height ensemble
    double grand = 0.0;     // two-sided height ensemble
    double lower = 0.0;     // (k-1)/k * canonical - ln 2/(beta k) <= farey
    double grand_cap = 0.0; // canonical <= grand <= canonical + ln(k+2)/k
};

inline FreeEnergyBounds free_energy_bounds(int k, double beta) {
    auto free_energy = [&](double z) { return -std::log(z) / (beta * k); };
    FreeEnergyBounds b;
    b.k = k;
    b.beta = beta;
    b.farey = free_energy(partition_function(k, beta, Ensemble::farey));
    b.canonical = free_energy(partition_function(k, beta, Ensemble::canonical));
    b.grand = free_energy(partition_function(k, beta, Ensemble::grand));
    b.lower = (double(k) - 1.0) / k * b.canonical - std::log(2.0) / (beta * k);
    b.grand_cap = b.canonical + std::log(double(k) + 2.0) / k;
    return b;
}

// ---------------------------------------------------------------------------
// conditional expectations (pinned 1-block)
// ---------------------------------------------------------------------------

// <s_Lambda> in the chain of length k+n+2 conditioned on the configuration
// (0, 1^n, 0, sigma); lambda is a site mask over the free sigma sites.  These
// are the correlation inequalities' left-hand sides and must be >= 0.
inline double conditional_expectation(int k, int n, Index lambda, double beta) {
    require_k(k, 1);
    if (n < 1) throw std::invalid_argument("conditioned block length must be >= 1");
    if (lambda & ~chain::config_mask(k))
        throw std::invalid_argument("site mask extends past the chain");
    std::vector<double> w = chain::log_table(chain::constrained_trace_table(k, n));
    const auto nconf = static_cast<std::int64_t>(w.size());
    parallel::for_range(nconf, [&](std::int64_t lo, std::int64_t hi) {
        for (std::int64_t i = lo; i < hi; ++i)
            w[static_cast<std::size_t>(i)] = std::exp(-beta * w[static_cast<std::size_t>(i)]);
    });
    const double num = parallel::pairwise_sum(nconf, [&](std::int64_t idx) {
        const int sign =
            1 - 2 * (std::popcount(static_cast<Index>(idx) & lambda) & 1);
        return w[static_cast<std::size_t>(idx)] * sign;
    });
    const double z = parallel::pairwise_sum(
        nconf, [&](std::int64_t idx) { return w[static_cast<std::size_t>(idx)]; });
    return num / z;
}

// ---------------------------------------------------------------------------
// run-length events
// ---------------------------------------------------------------------------

// Length of the maximal cyclic block of 1s containing site 1 (0 when
// sigma_1 = 0, g when the configuration is all 1s).
inline int cyclic_run_at_origin(Index idx, int g) {
    idx &= chain::config_mask(g);
    const int up = std::countr_one(idx);
    if (up == 0) return 0;
    if (up >= g) return g;
    const int down = std::countl_one(static_cast<std::uint32_t>(idx) << (32 - g));
    return up + down;
}

struct EventProfile {
    int g = 0;
    double beta = 0.0;
    int nmax = 0;
    std::vector<double> prob; // prob[n-1] = P(run at site 1 has length n), n = 1..nmax
    double total = 0.0;       // sum of prob
};

// Gibbs probabilities of the run-length events in the length-g chain.  The
// events are disjoint, and the decomposition they feed requires
// nmax <= g - 3.
inline EventProfile event_profile(int g, double beta, int nmax = -1) {
    require_k(g, 4);
    if (nmax < 0) nmax = g - 3;
    if (nmax < 1 || nmax > g - 3)
        throw std::invalid_argument("event cutoff must lie in 1..g-3");

    const std::vector<double> w = gibbs_weights(g, beta, Ensemble::farey);
    const auto nconf = static_cast<std::int64_t>(w.size());
    const double z = parallel::pairwise_sum(
        nconf, [&](std::int64_t i) { return w[static_cast<std::size_t>(i)]; });

    EventProfile p;
    p.g = g;
    p.beta = beta;
    p.nmax = nmax;
    p.prob.resize(static_cast<std::size_t>(nmax));
    for (int n = 1; n <= nmax; ++n) {
        const double s = parallel::pairwise_sum(nconf, [&](std::int64_t idx) {
            return cyclic_run_at_origin(static_cast<Index>(idx), g) == n
                       ? w[static_cast<std::size_t>(idx)]
                       : 0.0;
        });
        p.prob[static_cast<std::size_t>(n - 1)] = s / z;
        p.total += s / z;
    }
    return p;
}

} // namespace farey::thermo
