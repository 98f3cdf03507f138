#include <catch_amalgamated.hpp>

#include "farey/exact.hpp"
#include "farey/heights.hpp"
#include "farey/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

using namespace farey;
using namespace farey::chain;

TEST_CASE("generator matrices satisfy their defining relations") {
    const auto A = mat_A<BigInt>();
    const auto B = mat_B<BigInt>();

    REQUIRE(A - B == mat_D<BigInt>());
    REQUIRE(A + B == mat_S<BigInt>());

    for (int n = 1; n <= 6; ++n) {
        auto m = A;
        for (int i = 0; i < n; ++i) m = m * B;
        m = m * A;
        REQUIRE(m == mat_N<BigInt>(n));
        REQUIRE(m.trace() == 2 * n + 2);
    }
}

TEST_CASE("trace tables freeze the small chains") {
    REQUIRE(trace_table(1) == std::vector<std::int64_t>{2, 2});
    REQUIRE(trace_table(2) == std::vector<std::int64_t>{2, 3, 3, 2});
    REQUIRE(trace_table(3) == std::vector<std::int64_t>{2, 4, 4, 4, 4, 4, 4, 2});
}

TEST_CASE("the doubled table agrees with direct matrix products") {
    const int k = 6;
    const auto table = matrix_table(k, mat_identity<std::int64_t>());
    for (Index idx = 0; idx < (Index{1} << k); ++idx) {
        const auto m = build_matrix(k, idx);
        REQUIRE(m.a == table.a[idx]);
        REQUIRE(m.b == table.b[idx]);
        REQUIRE(m.c == table.c[idx]);
        REQUIRE(m.d == table.d[idx]);
    }
}

TEST_CASE("traces are invariant under shift, mirror and flip") {
    const int k = 12;
    const auto t = trace_table(k);
    for (Index idx = 0; idx < t.size(); ++idx) {
        REQUIRE(t[symmetry_action(idx, k, Symmetry::shift)] == t[idx]);
        REQUIRE(t[symmetry_action(idx, k, Symmetry::mirror)] == t[idx]);
        REQUIRE(t[symmetry_action(idx, k, Symmetry::flip)] == t[idx]);
    }
}

TEST_CASE("symmetry actions compose as expected") {
    const int k = 9;
    for (Index idx : {Index{0}, Index{1}, Index{37}, Index{211}, Index{511}}) {
        Index s = idx;
        for (int i = 0; i < k; ++i) s = symmetry_action(s, k, Symmetry::shift);
        REQUIRE(s == idx);
        REQUIRE(symmetry_action(symmetry_action(idx, k, Symmetry::mirror), k,
                                Symmetry::mirror) == idx);
        REQUIRE(symmetry_action(symmetry_action(idx, k, Symmetry::flip), k,
                                Symmetry::flip) == idx);
    }
}

TEST_CASE("energies of symmetric configurations are bitwise equal") {
    const int k = 10;
    const auto e = energy_table(k);
    for (Index idx = 0; idx < e.size(); ++idx) {
        REQUIRE(e[symmetry_action(idx, k, Symmetry::shift)] == e[idx]);
        REQUIRE(e[symmetry_action(idx, k, Symmetry::mirror)] == e[idx]);
        REQUIRE(e[symmetry_action(idx, k, Symmetry::flip)] == e[idx]);
    }
}

TEST_CASE("pinned-block traces freeze and embed into longer chains") {
    REQUIRE(constrained_trace_table(1, 1) == std::vector<std::int64_t>{5, 7});
    REQUIRE(constrained_trace_table(2, 1) == std::vector<std::int64_t>{6, 10, 10, 10});

    const int k = 6, n = 3;
    const auto tn = constrained_trace_table(k, n);
    const auto tg = trace_table(k + n + 2);
    for (Index idx = 0; idx < tn.size(); ++idx) {
        REQUIRE(tn[idx] == tg[concat_index(n, idx)]);
        REQUIRE(tn[idx] == constrained_trace(n, k, idx));
    }
}

TEST_CASE("heights freeze and satisfy the recursion") {
    REQUIRE(height_table(2) == std::vector<std::int64_t>{1, 2, 3, 3});
    REQUIRE(height_table(3) == std::vector<std::int64_t>{1, 2, 3, 3, 4, 5, 5, 4});
    REQUIRE(grand_height_table(2) == std::vector<std::int64_t>{4, 5, 5, 4});

    const int k = 8;
    const auto h = height_table(k);
    const auto g = grand_height_table(k);
    for (Index idx = 0; idx < h.size(); ++idx) {
        const auto pair = heights(k, idx);
        REQUIRE(pair.canonical == h[idx]);
        REQUIRE(pair.grand == g[idx]);
    }
    REQUIRE(canonical_height(0, 0) == 1);
}

TEST_CASE("the maximal height is a Fibonacci number") {
    std::int64_t fib = 1, prev = 1; // fib(2), fib(1)
    for (int i = 3; i <= 18; ++i) {
        const std::int64_t next = fib + prev;
        prev = fib;
        fib = next;
    }
    const auto h = height_table(16);
    std::int64_t mx = 0;
    for (auto v : h) mx = std::max(mx, v);
    REQUIRE(mx == fib); // fib(18) = 2584
    REQUIRE(mx == 2584);
}

TEST_CASE("spins and magnetization follow the bit convention") {
    REQUIRE(spin_bit(0b100, 3) == 1);
    REQUIRE(spin_bit(0b100, 1) == 0);
    REQUIRE(spin_value(0b100, 3) == -1);
    REQUIRE(spin_value(0b100, 1) == 1);
    REQUIRE(magnetization(0, 7) == 1.0);
    REQUIRE(magnetization(config_mask(7), 7) == -1.0);
    REQUIRE(magnetization(0b0101, 4) == 0.0);
}

TEST_CASE("chain length caps are enforced") {
    REQUIRE_THROWS_AS(trace_table(0), SizeCapError);
    REQUIRE_THROWS_AS(trace_table(k_max() + 1), SizeCapError);
    REQUIRE_THROWS_AS(height_table(-3), SizeCapError);
    REQUIRE_NOTHROW(trace_energy(4, 7));
}

TEST_CASE("integer logarithms stay accurate for huge arguments") {
    REQUIRE(std::abs(log_of_integer(BigInt(1) << 200) - 200 * std::numbers::ln2) <
            1e-10);
    BigInt big = 1;
    for (int i = 0; i < 50; ++i) big *= 10;
    REQUIRE(std::abs(log_of_integer(big) - 50 * std::log(10.0)) < 1e-10);
    REQUIRE(log_of_integer(std::int64_t{1}) == 0.0);
    REQUIRE_THROWS_AS(log_of_integer(BigInt(0)), std::domain_error);
    REQUIRE_THROWS_AS(log_of_integer(std::int64_t{-4}), std::domain_error);
}

TEST_CASE("trace energies combine the exact trace with its logarithm") {
    const auto te = trace_energy(5, 9);
    REQUIRE(te.trace == trace_table(5)[9]);
    REQUIRE(te.energy == std::log(static_cast<double>(trace_table(5)[9])));
}
