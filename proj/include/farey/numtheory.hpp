#pragma once
// ============================================================================
// Number-theoretic side of the height ensemble.
//
// The multiplicity Phi_k(n) counts configurations of length k whose
// canonical height equals n.  It agrees with Euler's totient phi(n) for all
// n <= k+1 and is bounded by phi(n) everywhere, which makes the canonical
// partition function a truncated totient Dirichlet series: as k grows,
// Z^c_k(beta) -> zeta(beta-1)/zeta(beta) for beta > 2.  zeta itself is
// evaluated by Euler-Maclaurin summation.
// ============================================================================

#include "farey/config.hpp"
#include "farey/heights.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace farey::numtheory {

// phi(0..nmax); the divisor-style sieve subtracts phi[m]/p at every prime p.
inline std::vector<std::int64_t> totient_sieve(std::int64_t nmax) {
    if (nmax < 0) throw std::invalid_argument("totient sieve needs nmax >= 0");
    std::vector<std::int64_t> phi(static_cast<std::size_t>(nmax) + 1);
    for (std::int64_t i = 0; i <= nmax; ++i) phi[static_cast<std::size_t>(i)] = i;
    for (std::int64_t p = 2; p <= nmax; ++p)
        if (phi[static_cast<std::size_t>(p)] == p)
            for (std::int64_t m = p; m <= nmax; m += p)
                phi[static_cast<std::size_t>(m)] -= phi[static_cast<std::size_t>(m)] / p;
    return phi;
}

// ---------------------------------------------------------------------------
// height multiplicities
// ---------------------------------------------------------------------------

struct HeightCensus {
    int k = 0;
    std::int64_t max_height = 0;
    std::vector<std::int64_t> counts; // counts[n] = Phi_k(n)

    // Multiplicities with everything of height <= k+1 merged into the n = k+1
    // bucket; above that the census already matches the totient exactly.
    std::int64_t aggregated(std::int64_t n) const {
        if (n < k + 1) return 0;
        if (n > k + 1)
            return n <= max_height ? counts[static_cast<std::size_t>(n)] : 0;
        std::int64_t s = 0;
        for (std::int64_t i = 1; i <= k + 1; ++i) s += counts[static_cast<std::size_t>(i)];
        return s;
    }
};

inline HeightCensus height_census(int k) {
    const std::vector<std::int64_t> h = chain::height_table(k);
    HeightCensus c;
    c.k = k;
    for (std::int64_t v : h) c.max_height = std::max(c.max_height, v);
    c.counts.assign(static_cast<std::size_t>(c.max_height) + 1, 0);
    for (std::int64_t v : h) ++c.counts[static_cast<std::size_t>(v)];
    return c;
}

// Z^c_k(beta) summed over the histogram rather than the configurations.
inline double canonical_partition_from_census(const HeightCensus& c, double beta) {
    double z = 0.0;
    for (std::int64_t n = c.max_height; n >= 1; --n)
        if (const std::int64_t cnt = c.counts[static_cast<std::size_t>(n)])
            z += static_cast<double>(cnt) * std::pow(static_cast<double>(n), -beta);
    return z;
}

// ---------------------------------------------------------------------------
// zeta
// ---------------------------------------------------------------------------

// Euler-Maclaurin with cutoff M = 64 and four Bernoulli corrections; good to
// full double precision for s in (1, 64].
inline double zeta(double s) {
    if (!(s > 1.0 + 1e-3))
        throw std::invalid_argument("zeta is evaluated for s > 1 only");
    constexpr int cutoff = 64;
    constexpr double bern[4] = {1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0};
    constexpr double fact[4] = {2.0, 24.0, 720.0, 40320.0};
    double total = 0.0;
    for (int n = 1; n < cutoff; ++n) total += std::pow(n, -s);
    total += std::pow(cutoff, 1.0 - s) / (s - 1.0);
    total += 0.5 * std::pow(cutoff, -s);
    double poch = s;
    for (int j = 1; j <= 4; ++j) {
        total += bern[j - 1] / fact[j - 1] * poch * std::pow(cutoff, -s - 2 * j + 1);
        poch *= (s + 2 * j - 1) * (s + 2 * j);
    }
    return total;
}

// Enclosure of the tail zeta(s) - 1 - 2^-s = sum_{n >= 3} n^-s: the first
// term from below, first term plus the comparison integral from above.
struct ZetaTailBand {
    double tail = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    bool inside = false;
};

inline ZetaTailBand zeta_tail_band(double s) {
    ZetaTailBand b;
    b.tail = zeta(s) - 1.0 - std::pow(2.0, -s);
    b.lo = std::pow(3.0, -s);
    b.hi = b.lo * (1.0 + 3.0 / (s - 1.0));
    b.inside = b.lo < b.tail && b.tail < b.hi;
    return b;
}

// Large-k limit of the canonical partition function, beta > 2.
inline double canonical_limit(double beta) {
    if (!(beta > 2.0 + 1e-3))
        throw std::invalid_argument("the canonical limit needs beta > 2");
    return zeta(beta - 1.0) / zeta(beta);
}

} // namespace farey::numtheory
