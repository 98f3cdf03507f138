#pragma once
// ============================================================================
// Built-in consistency suites behind the `verify` subcommand.  Each check is
// small enough to run in well under a second; the heavyweight statements
// live in the test binaries.
// ============================================================================

#include "farey/exact.hpp"
#include "farey/heights.hpp"
#include "farey/io.hpp"
#include "farey/numtheory.hpp"
#include "farey/polymer.hpp"
#include "farey/thermo.hpp"
#include "farey/transfer.hpp"
#include "farey/walsh.hpp"

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace farey::verify {

struct Check {
    std::string suite;
    std::string name;
    bool pass = false;
    std::string detail;
};

namespace detail {

struct Recorder {
    std::string suite;
    std::vector<Check>& out;

    void flag(const std::string& name, bool ok, const std::string& info = "") {
        out.push_back({suite, name, ok, info});
    }
    void close(const std::string& name, double got, double want, double tol) {
        const double err = std::abs(got - want);
        flag(name, err <= tol,
             "got " + io::fmt_g12(got) + ", want " + io::fmt_g12(want) + " (err " +
                 io::fmt_g12(err) + ")");
    }
};

} // namespace detail

// ---------------------------------------------------------------------------

inline void transfer_suite(std::vector<Check>& out) {
    detail::Recorder r{"transfer", out};

    r.flag("trace table k=2 frozen",
           chain::trace_table(2) == std::vector<std::int64_t>{2, 3, 3, 2});
    r.flag("trace table k=3 frozen",
           chain::trace_table(3) == std::vector<std::int64_t>{2, 4, 4, 4, 4, 4, 4, 2});
    r.flag("height table k=3 frozen",
           chain::height_table(3) == std::vector<std::int64_t>{1, 2, 3, 3, 4, 5, 5, 4});
    r.flag("grand height table k=2 frozen",
           chain::grand_height_table(2) == std::vector<std::int64_t>{4, 5, 5, 4});

    {
        bool ok = true;
        for (int n = 1; n <= 5 && ok; ++n) {
            auto m = chain::mat_A<BigInt>();
            for (int i = 0; i < n; ++i) m = m * chain::mat_B<BigInt>();
            m = m * chain::mat_A<BigInt>();
            ok = m == chain::mat_N<BigInt>(n);
        }
        r.flag("pinned-block seed equals A B^n A", ok);
    }

    {
        const int k = 10;
        const auto t = chain::trace_table(k);
        bool ok = true;
        for (chain::Index idx = 0; idx < t.size() && ok; ++idx)
            for (auto s : {chain::Symmetry::shift, chain::Symmetry::mirror,
                           chain::Symmetry::flip})
                ok = ok && t[chain::symmetry_action(idx, k, s)] == t[idx];
        r.flag("traces invariant under shift/mirror/flip, k=10", ok);
    }

    {
        const int k = 5, n = 2;
        const auto tn = chain::constrained_trace_table(k, n);
        const auto tg = chain::trace_table(k + n + 2);
        bool ok = true;
        for (chain::Index idx = 0; idx < tn.size() && ok; ++idx)
            ok = tn[idx] == tg[chain::concat_index(n, idx)];
        r.flag("pinned-block traces match the concatenated chain", ok);
    }

    {
        std::int64_t fib2 = 1, fib1 = 1; // fib(1), fib(2)
        for (int i = 3; i <= 14; ++i) {
            const std::int64_t f = fib1 + fib2;
            fib2 = fib1;
            fib1 = f;
        }
        const auto h = chain::height_table(12);
        std::int64_t mx = 0;
        for (auto v : h) mx = std::max(mx, v);
        r.flag("max height at k=12 is fib(14)", mx == fib1,
               "max " + std::to_string(mx) + ", fib " + std::to_string(fib1));
    }
}

inline void transform_suite(std::vector<Check>& out) {
    detail::Recorder r{"transform", out};

    r.flag("trace transform k=2 frozen",
           walsh::trace_transform(2) ==
               std::vector<Rational>{Rational(5, 2), 0, 0, Rational(-1, 2)});
    r.flag("pinned-block trace transform k=2 n=1 frozen",
           walsh::trace_transform(2, 1) == std::vector<Rational>{9, -1, -1, -1});

    {
        bool ok = true;
        for (int k = 2; k <= 12 && ok; ++k) {
            const Rational want(integer_pow(3, k) + 1, BigInt(1) << k);
            ok = walsh::trace_transform(k)[0] == want;
        }
        r.flag("zero-mode trace transform is (3^k+1)/2^k, k<=12", ok);
    }

    {
        // F(F(v)) = v / 2^k on exact rationals
        const int k = 6;
        std::vector<Rational> v(std::size_t{1} << k);
        for (std::size_t i = 0; i < v.size(); ++i)
            v[i] = Rational(static_cast<long>(3 * i * i % 101) - 50,
                            static_cast<long>(1 + i % 7));
        auto w = walsh::forward_transform_exact(walsh::forward_transform_exact(v));
        bool ok = true;
        for (std::size_t i = 0; i < v.size(); ++i)
            ok = ok && w[i] * (BigInt(1) << k) == v[i];
        r.flag("transform is an exact scaled involution", ok);
    }

    {
        // Parseval in exact integers on the unnormalized transform
        const int k = 8;
        auto f = chain::trace_table(k);
        auto h = f;
        walsh::wht_unnormalized(h);
        BigInt lhs = 0, rhs = 0;
        for (auto x : h) lhs += BigInt(x) * x;
        for (auto x : f) rhs += BigInt(x) * x;
        r.flag("unnormalized transform satisfies Parseval, k=8",
               lhs == rhs * (BigInt(1) << k));
    }

    {
        const int k = 6;
        const auto fl = walsh::interaction_coefficients(k, walsh::Ensemble::farey);
        const auto ex = walsh::interaction_coefficients_exact(chain::energy_table(k));
        double worst = 0.0;
        for (std::size_t i = 0; i < fl.size(); ++i)
            worst = std::max(worst, std::abs(fl[i] - ex[i].convert_to<double>()));
        r.flag("float and exact-rational interactions agree, k=6", worst < 1e-12,
               "max gap " + io::fmt_g12(worst));
    }

    {
        // flip invariance of the energies kills every odd-parity coefficient
        const int k = 8;
        const auto ex = walsh::interaction_coefficients_exact(chain::energy_table(k));
        bool ok = true;
        for (chain::Index t = 0; t < ex.size(); ++t)
            if (std::popcount(t) % 2 == 1) ok = ok && ex[t] == 0;
        r.flag("odd-parity interactions vanish exactly, k=8", ok);
    }
}

inline void polymer_suite(std::vector<Check>& out) {
    detail::Recorder r{"polymer", out};
    using namespace polymer;

    {
        const auto m = enumerate_polymers(ModelKind::farey, 5);
        r.flag("farey model has 1+k(k-1) polymers, k=5", m.polymers.size() == 21);
        r.flag("farey model has 2^k compatible subsets, k=5",
               independent_sets(m).size() == 32);
    }

    {
        bool ok = true;
        for (int k = 2; k <= 5 && ok; ++k) {
            const auto jt = walsh::trace_transform(k);
            for (chain::Index t = 0; t < jt.size() && ok; ++t)
                ok = cover_sum(k, t) == jt[t];
        }
        r.flag("disjoint-cover sum equals the trace transform, k<=5", ok);
    }

    {
        const auto m = enumerate_polymers(ModelKind::farey, 6);
        bool ok = true;
        for (chain::Index t = 0; t < 64 && ok; ++t) {
            const auto covers = disjoint_covers(m, t);
            ok = covers.size() == (std::popcount(t) % 2 == 0 ? 2u : 0u);
        }
        r.flag("every even t has exactly two disjoint covers, k=6", ok);
    }

    {
        bool ok = true;
        for (int k = 3; k <= 4 && ok; ++k)
            for (int n = 1; n <= 3 && ok; ++n) {
                const auto jt = walsh::trace_transform(k, n);
                for (chain::Index t = 0; t < jt.size() && ok; ++t)
                    ok = jkn_closed_form(k, n, t) == jt[t];
            }
        r.flag("pinned-block closed form matches the trace transform", ok);
    }

    {
        bool ok = true;
        std::int64_t want = 1; // (l-1)!
        for (int l = 2; l <= 6; ++l) {
            want *= -(l - 1);
            std::vector<std::pair<int, int>> edges;
            for (int i = 0; i < l; ++i)
                for (int j = i + 1; j < l; ++j) edges.emplace_back(i, j);
            ok = ok && ursell_graph_factor(l, edges) == want &&
                 ursell_brute(l, edges) == want;
        }
        r.flag("complete-graph Ursell factors are (-1)^(l-1)(l-1)!", ok);
    }

    {
        const auto model = enumerate_polymers(ModelKind::farey, 3);
        const auto exact = cluster_orders_exact(model, 4);
        bool ok = true;
        double worst = 0.0;
        for (chain::Index t = 0; t < 8; ++t) {
            const auto series = cluster_series(model, t, 4);
            for (int m = 1; m <= 4; ++m) {
                double want = 0.0;
                if (auto it = exact[static_cast<std::size_t>(m)].find(t);
                    it != exact[static_cast<std::size_t>(m)].end())
                    want = it->second.convert_to<double>();
                const double err =
                    std::abs(series.contributions[static_cast<std::size_t>(m)] - want);
                worst = std::max(worst, err);
                ok = ok && err < 1e-12;
            }
        }
        r.flag("series orders match tuple enumeration, farey k=3", ok,
               "max gap " + io::fmt_g12(worst));
    }

    {
        const auto model = enumerate_polymers(ModelKind::grand, 4);
        const auto j = walsh::interaction_coefficients(4, walsh::Ensemble::grand);
        const auto s = cluster_series(model, 5, 24);
        r.close("series converges to the grand interaction, k=4 t=5", s.value, j[5],
                1e-10);
    }
}

inline void thermo_suite(std::vector<Check>& out) {
    detail::Recorder r{"thermo", out};
    using namespace thermo;

    r.close("Z_2(1) = 5/3", partition_function(2, 1.0), 5.0 / 3.0, 1e-15);

    {
        bool ok = true;
        double slack = 1.0;
        for (double beta : {0.5, 2.0, 4.0}) {
            const auto b = free_energy_bounds(8, beta);
            slack = std::min({slack, b.farey - b.lower, b.grand - b.farey,
                              b.grand - b.canonical, b.grand_cap - b.grand});
            ok = ok && slack >= -1e-12;
        }
        r.flag("free-energy sandwich holds at k=8", ok, "min slack " + io::fmt_g12(slack));
    }

    r.flag("mean magnetization is exactly zero, k=10",
           mean_magnetization(10, 1.7) == 0.0);

    {
        const double lhs = pair_correlation(9, 1.3, 1, 3);
        const double rhs = pair_correlation(9, 1.3, 2, 4);
        r.close("pair correlation is translation invariant, k=9", lhs, rhs, 1e-12);
    }

    {
        bool ok = true;
        double worst = 1.0;
        for (chain::Index lambda : {1u, 2u, 3u, 5u}) {
            const double v = conditional_expectation(6, 2, lambda, 1.0);
            worst = std::min(worst, v);
            ok = ok && v >= -1e-12;
        }
        r.flag("conditional expectations are nonnegative, k=6 n=2", ok,
               "min " + io::fmt_g12(worst));
    }

    {
        const auto p = event_profile(12, 1.0);
        bool ok = p.total <= 0.5 + 1e-12;
        for (double q : p.prob) ok = ok && q >= 0.0;
        ok = ok && cyclic_run_at_origin(0, 12) == 0 &&
             cyclic_run_at_origin(chain::config_mask(12), 12) == 12 &&
             cyclic_run_at_origin((1u << 11) | 1u, 12) == 2;
        r.flag("run-length events are a sub-probability family, g=12", ok,
               "total " + io::fmt_g12(p.total));
    }
}

inline void numtheory_suite(std::vector<Check>& out) {
    detail::Recorder r{"numtheory", out};
    using namespace numtheory;

    r.flag("totient sieve frozen through 20",
           totient_sieve(20) == std::vector<std::int64_t>{0, 1, 1, 2, 2, 4, 2, 6, 4, 6,
                                                          4, 10, 4, 12, 6, 8, 8, 16, 6,
                                                          18, 8});

    {
        const int k = 12;
        const auto c = height_census(k);
        const auto phi = totient_sieve(c.max_height);
        bool low = true, cap = true;
        for (std::int64_t n = 1; n <= k + 1; ++n)
            low = low && c.counts[static_cast<std::size_t>(n)] == phi[static_cast<std::size_t>(n)];
        std::int64_t total = 0;
        for (std::int64_t n = 1; n <= c.max_height; ++n) {
            cap = cap && c.counts[static_cast<std::size_t>(n)] <= phi[static_cast<std::size_t>(n)];
            total += c.counts[static_cast<std::size_t>(n)];
        }
        r.flag("height multiplicities equal the totient up to k+1", low);
        r.flag("height multiplicities never exceed the totient", cap);
        r.flag("height census covers all configurations", total == (std::int64_t{1} << k));
    }

    {
        const auto c = height_census(3);
        r.flag("aggregated multiplicities merge the low bucket",
               c.aggregated(3) == 0 && c.aggregated(4) == 6 && c.aggregated(5) == 2 &&
                   c.aggregated(6) == 0);
    }

    {
        const auto c = height_census(10);
        r.close("census partition function matches the direct sum",
                canonical_partition_from_census(c, 2.5),
                thermo::partition_function(10, 2.5, walsh::Ensemble::canonical), 1e-12);
    }

    {
        const double pi = 3.14159265358979323846;
        r.close("zeta(2)", zeta(2.0), pi * pi / 6.0, 1e-14);
        r.close("zeta(4)", zeta(4.0), pi * pi * pi * pi / 90.0, 1e-14);
    }

    {
        bool ok = true;
        for (double s : {1.5, 2.0, 3.0, 4.0, 6.0, 8.0}) ok = ok && zeta_tail_band(s).inside;
        r.flag("zeta tail sits inside its enclosure", ok);
    }

    r.close("canonical limit at beta=3", canonical_limit(3.0), 1.3684327776, 1e-9);
}

// ---------------------------------------------------------------------------

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"transfer", "transform", "polymer",
                                                "thermo", "numtheory"};
    return names;
}

inline std::vector<Check> run_suite(const std::string& name) {
    std::vector<Check> out;
    if (name == "transfer") transfer_suite(out);
    else if (name == "transform") transform_suite(out);
    else if (name == "polymer") polymer_suite(out);
    else if (name == "thermo") thermo_suite(out);
    else if (name == "numtheory") numtheory_suite(out);
    else throw std::invalid_argument("unknown suite: " + name);
    return out;
}

inline std::vector<Check> run_all() {
    std::vector<Check> out;
    for (const auto& n : suite_names()) {
        auto part = run_suite(n);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

} // namespace farey::verify
