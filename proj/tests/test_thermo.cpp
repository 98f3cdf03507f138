#include <catch_amalgamated.hpp>

#include "farey/parallel.hpp"
#include "farey/thermo.hpp"

#include <bit>
#include <cmath>
#include <vector>

using namespace farey;
using namespace farey::thermo;

TEST_CASE("partition functions freeze the two-site chain") {
    REQUIRE(std::abs(partition_function(2, 1.0) - 5.0 / 3.0) < 1e-15);
    REQUIRE(std::abs(partition_function(2, 2.0) - 13.0 / 18.0) < 1e-15);
    REQUIRE(std::abs(partition_function(2, 1.0, Ensemble::canonical) - 13.0 / 6.0) <
            1e-15);
    REQUIRE(std::abs(partition_function(2, 1.0, Ensemble::grand) - 9.0 / 10.0) <
            1e-15);
}

TEST_CASE("observables are mutually consistent") {
    const auto p = observables(9, 1.4);
    REQUIRE(p.z == partition_function(9, 1.4));
    REQUIRE(p.f == -std::log(p.z) / (1.4 * 9));
    REQUIRE(p.msq == mean_square_magnetization(9, 1.4));
    REQUIRE(p.msq >= 0.0);
    REQUIRE(p.msq <= 1.0);
}

TEST_CASE("the free-energy sandwich holds on a k grid") {
    for (int k = 2; k <= 14; k += 3)
        for (double beta : {0.5, 1.0, 2.0, 3.0, 4.0}) {
            const auto b = free_energy_bounds(k, beta);
            REQUIRE(b.farey - b.lower >= -1e-12);
            REQUIRE(b.grand - b.farey >= -1e-12);
            REQUIRE(b.grand - b.canonical >= -1e-12);
            REQUIRE(b.grand_cap - b.grand >= -1e-12);
        }
}

TEST_CASE("mean-square magnetization freezes at the oracle points") {
    REQUIRE(std::abs(mean_square_magnetization(8, 3.0) - 0.90598) < 2e-5);
    REQUIRE(std::abs(mean_square_magnetization(8, 1.0) - 0.24396) < 2e-5);
    // deep in the ordered phase the two uniform states dominate
    REQUIRE(mean_square_magnetization(10, 12.0) > 0.99);
}

TEST_CASE("the mean magnetization is exactly zero") {
    for (int k : {3, 10, 13})
        for (double beta : {0.5, 2.7}) REQUIRE(mean_magnetization(k, beta) == 0.0);
    REQUIRE(mean_magnetization(8, 1.0, Ensemble::grand) == 0.0);
}

TEST_CASE("pair correlations freeze and respect translation invariance") {
    REQUIRE(std::abs(pair_correlation(2, 1.0, 1, 2) - 0.2) < 1e-15);
    for (int j = 2; j < 10; ++j)
        REQUIRE(std::abs(pair_correlation(10, 1.3, 1, j) -
                         pair_correlation(10, 1.3, 2, j + 1)) < 1e-12);
    REQUIRE_THROWS_AS(pair_correlation(5, 1.0, 0, 3), std::invalid_argument);
    REQUIRE_THROWS_AS(pair_correlation(5, 1.0, 1, 6), std::invalid_argument);
}

TEST_CASE("conditional expectations freeze and stay nonnegative") {
    // k=1, n=1: traces (5,7), <s_1> = (1/5 - 1/7)/(1/5 + 1/7) = 1/6
    REQUIRE(std::abs(conditional_expectation(1, 1, 1, 1.0) - 1.0 / 6.0) < 1e-15);
    for (int k = 2; k <= 6; k += 2)
        for (int n = 1; n <= 2; ++n)
            for (chain::Index lambda = 1; lambda < (chain::Index{1} << k); ++lambda) {
                if (std::popcount(lambda) > 2) continue;
                for (double beta : {0.5, 2.0})
                    REQUIRE(conditional_expectation(k, n, lambda, beta) >= -1e-12);
            }
    REQUIRE_THROWS_AS(conditional_expectation(4, 0, 1, 1.0), std::invalid_argument);
    REQUIRE_THROWS_AS(conditional_expectation(4, 1, 16, 1.0), std::invalid_argument);
}

TEST_CASE("run lengths at the origin follow the bit pattern") {
    REQUIRE(cyclic_run_at_origin(0, 12) == 0);
    REQUIRE(cyclic_run_at_origin(chain::config_mask(12), 12) == 12);
    REQUIRE(cyclic_run_at_origin(0b1, 12) == 1);
    REQUIRE(cyclic_run_at_origin(0b111, 12) == 3);
    REQUIRE(cyclic_run_at_origin((1u << 11) | 0b11, 12) == 3); // wraps around
    REQUIRE(cyclic_run_at_origin(0b110, 12) == 0);             // site 1 empty
}

TEST_CASE("event probabilities form a sub-probability family") {
    const auto p = event_profile(12, 1.0);
    REQUIRE(p.nmax == 9);
    double sum = 0.0;
    for (double q : p.prob) {
        REQUIRE(q >= 0.0);
        sum += q;
    }
    REQUIRE(sum == p.total);
    REQUIRE(p.total <= 0.5 + 1e-12);
    REQUIRE_THROWS_AS(event_profile(12, 1.0, 0), std::invalid_argument);
    REQUIRE_THROWS_AS(event_profile(12, 1.0, 10), std::invalid_argument);
}

TEST_CASE("the long-chain event sum freezes at the oracle point") {
    const auto p = event_profile(18, 1.0, 15);
    REQUIRE(std::abs(p.total - 0.493132) < 1e-6);
    REQUIRE(p.total > 0.45);
}

TEST_CASE("the energy density decreases with beta") {
    double prev = 1e300;
    for (double beta : {0.5, 1.0, 2.0, 3.0}) {
        const double u = observables(12, beta).u;
        REQUIRE(u < prev);
        REQUIRE(u > 0.0);
        prev = u;
    }
}

TEST_CASE("observables are identical for any thread count") {
    const auto serial = observables(13, 1.7);
    const auto p_serial = event_profile(13, 0.75);
    parallel::set_thread_count(7);
    const auto threaded = observables(13, 1.7);
    const auto p_threaded = event_profile(13, 0.75);
    const double m_threaded = mean_magnetization(13, 2.2);
    parallel::set_thread_count(1);
    REQUIRE(serial.z == threaded.z);
    REQUIRE(serial.f == threaded.f);
    REQUIRE(serial.u == threaded.u);
    REQUIRE(serial.msq == threaded.msq);
    REQUIRE(p_serial.prob == p_threaded.prob);
    REQUIRE(m_threaded == 0.0);
}
