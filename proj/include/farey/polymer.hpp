#pragma once
// ============================================================================
// Abstract polymer models and cluster expansions.
//
// Three models share one machinery:
//
//   farey(k)         the full loop p (support Z/kZ, activity 3^-k, hat 0)
//                    plus arcs p_{l,r} for l != r in Z/kZ with support
//                    {l,...,r} walked cyclically, activity -3^-|supp| and
//                    hat d_l + d_r;
//   grand(k)         only the arcs with 1 <= l < r <= k;
//   constrained(k,n) rods pL_m (support {1..m}) and pR_m (support {m..k})
//                    with activity -3^-|supp| / (2(n+1)) and hat d_m, plus
//                    the arcs with l < r.  All rods are mutually
//                    incompatible.
//
// Two polymers are incompatible when their supports intersect.  Pairwise
// compatible ("disjoint") collections reproduce the trace transforms:
//
//     j_k(t)  = (3/2)^k        sum_{disjoint X, hat X = t} z(X)
//     jG_k(t) = 2 (3/2)^k      sum over the grand model
//     jn_k(t) = 2(n+1) (3/2)^k sum over the constrained model
//
// and the interaction coefficients are minus the formal logarithm: grading
// the polymer partition function by polymer count, the order-m part of the
// log is the sum over connected multipolymers X with |X| = m of
// n(X)/|X|! z^X, where n(X) is the signed connecting-subgraph count of the
// incompatibility graph.  The series routine computes the log coefficients
// per twisted configuration (equivalent to tuple enumeration order by
// order; tests prove the equality on exact rationals), so order 30+ costs
// nothing.  n(X) itself is evaluated by deletion-contraction.
// ============================================================================

#include "farey/config.hpp"
#include "farey/exact.hpp"
#include "farey/transfer.hpp"
#include "farey/walsh.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace farey::polymer {

using chain::Index;

// ---------------------------------------------------------------------------
// polymers and models
// ---------------------------------------------------------------------------

struct Polymer {
    enum class Kind { full_loop, arc, left_rod, right_rod };
    Kind kind;
    Index support; // bit i-1  <=>  site i in the support
    Index hat;     // group element contributed to hat X
    int l = 0, r = 0; // arc endpoints or rod anchor, sites in {1..k}
    Rational activity;

    bool rod() const { return kind == Kind::left_rod || kind == Kind::right_rod; }
};

enum class ModelKind { farey, grand, constrained };

struct PolymerModel {
    ModelKind kind;
    int k = 0;
    int n = 0; // length of the pinned 1-block (constrained model only)
    std::vector<Polymer> polymers;
    Rational prefactor; // (3/2)^k, 2(3/2)^k or 2(n+1)(3/2)^k
};

inline bool incompatible(const Polymer& p, const Polymer& q) {
    if (p.support & q.support) return true;
    return p.rod() && q.rod();
}

namespace detail {

inline Index cyclic_support(int k, int l, int r) {
    Index s = 0;
    int i = l;
    for (;;) {
        s |= Index{1} << (i - 1);
        if (i == r) break;
        i = i % k + 1;
    }
    return s;
}

inline Rational support_activity(Index support) {
    return -rational_pow(Rational(1, 3), std::popcount(support));
}

} // namespace detail

inline PolymerModel enumerate_polymers(ModelKind kind, int k, int n = 0) {
    require_k(k, 1);
    PolymerModel m;
    m.kind = kind;
    m.k = k;
    m.n = n;
    const Rational loop_gain = rational_pow(Rational(3, 2), k);
    const Index full = chain::config_mask(k);

    auto add_arc = [&](int l, int r) {
        const Index s = detail::cyclic_support(k, l, r);
        m.polymers.push_back({Polymer::Kind::arc, s,
                              (Index{1} << (l - 1)) | (Index{1} << (r - 1)),
                              l, r, detail::support_activity(s)});
    };

    switch (kind) {
    case ModelKind::farey:
        if (k < 2) throw std::invalid_argument("farey polymer set needs k >= 2");
        m.prefactor = loop_gain;
        m.polymers.push_back({Polymer::Kind::full_loop, full, 0, 0, 0,
                              rational_pow(Rational(1, 3), k)});
        for (int l = 1; l <= k; ++l)
            for (int r = 1; r <= k; ++r)
                if (l != r) add_arc(l, r);
        break;
    case ModelKind::grand:
        m.prefactor = 2 * loop_gain;
        for (int l = 1; l <= k; ++l)
            for (int r = l + 1; r <= k; ++r)
                add_arc(l, r);
        break;
    case ModelKind::constrained: {
        if (n < 1) throw std::invalid_argument("constrained model needs n >= 1");
        m.prefactor = 2 * (n + 1) * loop_gain;
        const Rational rod_scale = Rational(1, 2 * (n + 1));
        for (int p = 1; p <= k; ++p) {
            const Index sL = chain::config_mask(p);
            m.polymers.push_back({Polymer::Kind::left_rod, sL, Index{1} << (p - 1),
                                  p, p, detail::support_activity(sL) * rod_scale});
        }
        for (int p = 1; p <= k; ++p) {
            const Index sR = full ^ chain::config_mask(p - 1);
            m.polymers.push_back({Polymer::Kind::right_rod, sR, Index{1} << (p - 1),
                                  p, p, detail::support_activity(sR) * rod_scale});
        }
        for (int l = 1; l <= k; ++l)
            for (int r = l + 1; r <= k; ++r)
                add_arc(l, r);
        break;
    }
    }
    return m;
}

// ln of the model prefactor; the t = 0 constant term of the series
inline double series_constant(const PolymerModel& m) {
    return std::log(m.prefactor.convert_to<double>());
}

// ---------------------------------------------------------------------------
// disjoint collections
// ---------------------------------------------------------------------------

struct IndependentSet {
    std::vector<int> members; // polymer indices, increasing
    Index hat = 0;
};

// All pairwise-compatible subsets (the empty one included), by extension
// recursion.  Model sizes in use keep this small; the farey set has exactly
// 2^k compatible subsets.
inline std::vector<IndependentSet> independent_sets(const PolymerModel& m) {
    std::vector<IndependentSet> out;
    std::vector<int> cur;
    auto extend = [&](auto&& self, std::size_t start, Index hat) -> void {
        out.push_back({cur, hat});
        for (std::size_t i = start; i < m.polymers.size(); ++i) {
            bool ok = true;
            for (int j : cur)
                if (incompatible(m.polymers[i], m.polymers[static_cast<std::size_t>(j)])) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            cur.push_back(static_cast<int>(i));
            self(self, i + 1, hat ^ m.polymers[i].hat);
            cur.pop_back();
        }
    };
    extend(extend, 0, 0);
    return out;
}

inline Rational set_activity(const PolymerModel& m, const std::vector<int>& members) {
    Rational z = 1;
    for (int i : members)
        z *= m.polymers[static_cast<std::size_t>(i)].activity;
    return z;
}

// Disjoint collections with hat X = t, order quotiented out.  For the farey
// model and even-weight t there are exactly two; odd-weight t has none.
inline std::vector<std::vector<int>> disjoint_covers(const PolymerModel& m, Index t) {
    std::vector<std::vector<int>> out;
    for (const IndependentSet& s : independent_sets(m))
        if (s.hat == t) out.push_back(s.members);
    return out;
}

// (3/2)^k sum_{disjoint X, hat X = t} z(X); equals j_k(t) exactly.
inline Rational cover_sum(int k, Index t) {
    const PolymerModel m = enumerate_polymers(ModelKind::farey, k);
    Rational sum = 0;
    for (const IndependentSet& s : independent_sets(m))
        if (s.hat == t) sum += set_activity(m, s.members);
    return m.prefactor * sum;
}

// ---------------------------------------------------------------------------
// Ursell factors n(X)
// ---------------------------------------------------------------------------

inline constexpr int max_ursell_order = 9;

namespace detail {

// triangular bit position of the (i,j) edge, 0 <= i < j < 9
inline int edge_bit(int i, int j) { return i * (17 - i) / 2 + (j - i - 1); }

inline bool graph_connected(int l, std::uint64_t edges) {
    if (l <= 1) return true;
    std::uint32_t seen = 1, frontier = 1;
    while (frontier) {
        std::uint32_t next = 0;
        for (int i = 0; i < l; ++i) {
            if (!((frontier >> i) & 1u)) continue;
            for (int j = 0; j < l; ++j) {
                if (j == i) continue;
                const int bit = i < j ? edge_bit(i, j) : edge_bit(j, i);
                if ((edges >> bit) & 1u) next |= std::uint32_t{1} << j;
            }
        }
        frontier = next & ~seen;
        seen |= next;
    }
    return seen == (std::uint32_t{1} << l) - 1;
}

// n(G) = n(G - e) - n(G / e); single vertex gives 1, disconnected gives 0.
// Graphs are simple bitmask graphs: parallel edges arising from contraction
// are collapsed, which is exact because a bundle of j parallel edges
// contributes (1-1)^j - 1 = -1 to the connecting-subgraph sum, the same as
// one edge.
inline std::int64_t ursell_graph(int l, std::uint64_t edges,
                                 std::unordered_map<std::uint64_t, std::int64_t>& memo) {
    if (l == 1) return 1;
    if (!graph_connected(l, edges)) return 0;
    const std::uint64_t key = (static_cast<std::uint64_t>(l) << 40) | edges;
    if (auto it = memo.find(key); it != memo.end()) return it->second;

    int ei = -1, ej = -1;
    for (int i = 0; i < l && ei < 0; ++i)
        for (int j = i + 1; j < l; ++j)
            if ((edges >> edge_bit(i, j)) & 1u) {
                ei = i;
                ej = j;
                break;
            }

    const std::uint64_t deleted = edges & ~(std::uint64_t{1} << edge_bit(ei, ej));

    std::uint64_t contracted = 0;
    auto relabel = [&](int v) {
        if (v == ej) v = ei;
        return v > ej ? v - 1 : v;
    };
    for (int i = 0; i < l; ++i)
        for (int j = i + 1; j < l; ++j) {
            if (!((deleted >> edge_bit(i, j)) & 1u)) continue;
            int u = relabel(i), v = relabel(j);
            if (u == v) continue;
            if (u > v) std::swap(u, v);
            contracted |= std::uint64_t{1} << edge_bit(u, v);
        }

    const std::int64_t val =
        ursell_graph(l, deleted, memo) - ursell_graph(l - 1, contracted, memo);
    memo.emplace(key, val);
    return val;
}

inline std::unordered_map<std::uint64_t, std::int64_t>& ursell_memo() {
    thread_local std::unordered_map<std::uint64_t, std::int64_t> memo;
    return memo;
}

} // namespace detail

// n(G) for an explicit graph given as vertex count and edge list (duplicates
// in the edge list are collapsed).
inline std::int64_t ursell_graph_factor(int l, const std::vector<std::pair<int, int>>& edges) {
    if (l < 1 || l > max_ursell_order)
        throw std::invalid_argument("ursell order must be in [1,9]");
    std::uint64_t mask = 0;
    for (auto [i, j] : edges) {
        if (i == j) continue;
        if (i > j) std::swap(i, j);
        mask |= std::uint64_t{1} << detail::edge_bit(i, j);
    }
    return detail::ursell_graph(l, mask, detail::ursell_memo());
}

// Brute-force n(G) = (number of even spanning connected edge subsets) minus
// (odd ones); exponential, used as the independent cross-check.
inline std::int64_t ursell_brute(int l, const std::vector<std::pair<int, int>>& edges) {
    if (l < 1) throw std::invalid_argument("need at least one vertex");
    const std::size_t ne = edges.size();
    if (ne > 24) throw std::invalid_argument("brute-force edge count cap exceeded");
    std::int64_t n = 0;
    for (std::uint32_t sub = 0; sub < (std::uint32_t{1} << ne); ++sub) {
        // union-find over at most 9 vertices
        int parent[max_ursell_order];
        for (int v = 0; v < l; ++v) parent[v] = v;
        auto find = [&](int x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        int components = l;
        for (std::size_t e = 0; e < ne; ++e)
            if ((sub >> e) & 1u) {
                const int ra = find(edges[e].first), rb = find(edges[e].second);
                if (ra != rb) {
                    parent[ra] = rb;
                    --components;
                }
            }
        if (components == 1)
            n += (std::popcount(sub) % 2 == 0) ? 1 : -1;
    }
    return n;
}

// n(X) of a multipolymer given as a multiset of model polymer indices;
// repeated polymers are incompatible with themselves.
inline std::int64_t ursell_factor(const PolymerModel& m, const std::vector<int>& members) {
    const int l = static_cast<int>(members.size());
    if (l < 1 || l > max_ursell_order)
        throw std::invalid_argument("multipolymer order must be in [1,9]");
    std::uint64_t mask = 0;
    for (int i = 0; i < l; ++i)
        for (int j = i + 1; j < l; ++j) {
            const auto& p = m.polymers[static_cast<std::size_t>(members[static_cast<std::size_t>(i)])];
            const auto& q = m.polymers[static_cast<std::size_t>(members[static_cast<std::size_t>(j)])];
            if (members[static_cast<std::size_t>(i)] == members[static_cast<std::size_t>(j)] ||
                incompatible(p, q))
                mask |= std::uint64_t{1} << detail::edge_bit(i, j);
        }
    return detail::ursell_graph(l, mask, detail::ursell_memo());
}

// ---------------------------------------------------------------------------
// connected-cluster series
// ---------------------------------------------------------------------------

// Exact per-order sums over connected multipolymers, by direct multiset
// enumeration with Ursell factors: order l collects n(X) z^X / prod mult_i!
// into hat-indexed buckets.  Exponential in the order; this is the low-order
// oracle the fast series is tested against.
inline std::vector<std::map<Index, Rational>>
cluster_orders_exact(const PolymerModel& m, int max_order) {
    if (max_order > 6)
        throw std::invalid_argument("exact tuple enumeration is capped at order 6");
    std::vector<std::map<Index, Rational>> orders(static_cast<std::size_t>(max_order) + 1);
    std::vector<int> cur;

    auto emit = [&]() {
        const int l = static_cast<int>(cur.size());
        const std::int64_t n = ursell_factor(m, cur);
        if (n == 0) return;
        Rational z = 1;
        Index hat = 0;
        BigInt mult_fact = 1;
        int run = 1;
        for (std::size_t i = 0; i < cur.size(); ++i) {
            const auto& p = m.polymers[static_cast<std::size_t>(cur[i])];
            z *= p.activity;
            hat ^= p.hat;
            if (i > 0 && cur[i] == cur[i - 1]) {
                ++run;
                mult_fact *= run;
            } else {
                run = 1;
            }
        }
        orders[static_cast<std::size_t>(l)][hat] += Rational(n) * z / Rational(mult_fact);
    };

    auto extend = [&](auto&& self, int start) -> void {
        if (!cur.empty()) emit();
        if (static_cast<int>(cur.size()) == max_order) return;
        for (int i = start; i < static_cast<int>(m.polymers.size()); ++i) {
            cur.push_back(i);
            self(self, i); // repetition allowed
            cur.pop_back();
        }
    };
    extend(extend, 0);
    return orders;
}

struct ClusterSeries {
    int k = 0;
    Index t = 0;
    int order = 0;
    double constant = 0.0;             // ln prefactor, enters only at t = 0
    std::vector<double> contributions; // order  m -> transform of the log coefficient
    std::vector<double> partials;      // running interaction value after each order
    double value = 0.0;                // partials.back()
    double tail_bound = 0.0;           // geometric estimate from the last two orders
    bool converged = false;            // contributions still decaying at the cutoff
    bool sign_definite = true;         // all contributions <= 0 (grand/constrained claim)
};

// Truncated interaction coefficient at t: the order-m log coefficients
// c_m(sigma) of the twisted partition functions are obtained from the
// degree-graded power sums
//     a_l(sigma) = sum_{|S| = l disjoint} z(S) (-1)^{sigma . hat S}
// via  c_m = a_m - (1/m) sum_{j<m} j c_j a_{m-j},  then transformed in t.
// The value approximates -F(energy)(t) for the matching ensemble.
inline ClusterSeries cluster_series(const PolymerModel& m, Index t, int max_order) {
    if (max_order < 1 || max_order > 40)
        throw std::invalid_argument("cluster order must be in [1,40]");
    if (m.k > 10)
        throw SizeCapError("cluster series is enumerated, k <= 10 required");

    const std::size_t n2 = std::size_t{1} << m.k;
    const int L = max_order;

    // degree-graded disjoint sums, bucketed by hat
    int deg_max = 0;
    for (const IndependentSet& s : independent_sets(m))
        deg_max = std::max(deg_max, static_cast<int>(s.members.size()));
    deg_max = std::min(deg_max, L);
    std::vector<std::vector<double>> w(static_cast<std::size_t>(deg_max) + 1,
                                       std::vector<double>(n2, 0.0));
    for (const IndependentSet& s : independent_sets(m)) {
        const int l = static_cast<int>(s.members.size());
        if (l > deg_max) continue;
        w[static_cast<std::size_t>(l)][s.hat] +=
            set_activity(m, s.members).convert_to<double>();
    }

    // a_l per configuration: unnormalized transform turns hat buckets into
    // (-1)^{sigma.hat}-weighted sums
    for (auto& level : w)
        walsh::wht_unnormalized(level);

    // per-configuration formal log, then transform each order in t
    std::vector<std::vector<double>> c(static_cast<std::size_t>(L) + 1,
                                       std::vector<double>(n2, 0.0));
    std::vector<double> a(static_cast<std::size_t>(L) + 1);
    for (std::size_t s = 0; s < n2; ++s) {
        for (int l = 0; l <= L; ++l)
            a[static_cast<std::size_t>(l)] =
                (l <= deg_max) ? w[static_cast<std::size_t>(l)][s] : 0.0;
        for (int mm = 1; mm <= L; ++mm) {
            double acc = a[static_cast<std::size_t>(mm)];
            for (int j = 1; j < mm; ++j)
                acc -= (static_cast<double>(j) / mm) * c[static_cast<std::size_t>(j)][s] *
                       a[static_cast<std::size_t>(mm - j)];
            c[static_cast<std::size_t>(mm)][s] = acc;
        }
    }

    ClusterSeries out;
    out.k = m.k;
    out.t = t;
    out.order = L;
    out.constant = series_constant(m);
    out.contributions.resize(static_cast<std::size_t>(L) + 1, 0.0);
    out.partials.resize(static_cast<std::size_t>(L) + 1, 0.0);

    const double scale = std::ldexp(1.0, -m.k);
    double running = (t == 0) ? -out.constant : 0.0;
    out.partials[0] = running;
    for (int mm = 1; mm <= L; ++mm) {
        walsh::wht_unnormalized(c[static_cast<std::size_t>(mm)]);
        const double contrib = c[static_cast<std::size_t>(mm)][t] * scale;
        out.contributions[static_cast<std::size_t>(mm)] = contrib;
        running -= contrib;
        out.partials[static_cast<std::size_t>(mm)] = running;
        if (contrib > 1e-15) out.sign_definite = false;
    }
    out.value = running;

    // geometric tail heuristic from the last two nonzero order sums
    double last = 0.0, prev = 0.0;
    for (int mm = L; mm >= 1 && last == 0.0; --mm)
        last = std::abs(out.contributions[static_cast<std::size_t>(mm)]);
    for (int mm = L - 1; mm >= 1 && prev == 0.0; --mm)
        prev = std::abs(out.contributions[static_cast<std::size_t>(mm)]);
    if (last == 0.0) {
        out.tail_bound = 0.0;
        out.converged = true;
    } else if (prev > 0.0 && last < prev) {
        const double r = last / prev;
        out.tail_bound = last * r / (1.0 - r);
        out.converged = true;
    } else {
        out.tail_bound = std::numeric_limits<double>::infinity();
        out.converged = false;
    }
    return out;
}

// ---------------------------------------------------------------------------
// closed form for the constrained transform
// ---------------------------------------------------------------------------

// j^n_k(t) from the block decomposition t = (0_{m1}, 1, 0_{m2}, ..., 0_{mu}):
// with prefactor 2(n+1)(3/2)^k,
//   u odd:  product over even-position gaps of (-3^{-m_{2i}-2});
//   u even: two rod terms (-3^{-m_u-1}/(2(n+1))) and (-3^{-m_1-1}/(2(n+1)))
//           times the complementary gap products.
inline Rational jkn_closed_form(int k, int n, Index t) {
    require_k(k, 1);
    if (n < 1) throw std::invalid_argument("constrained closed form needs n >= 1");

    std::vector<int> gaps; // m_1 .. m_u
    {
        int zeros = 0;
        for (int i = 0; i < k; ++i) {
            if ((t >> i) & 1u) {
                gaps.push_back(zeros);
                zeros = 0;
            } else {
                ++zeros;
            }
        }
        gaps.push_back(zeros);
    }
    const int u = static_cast<int>(gaps.size());
    const Rational pref = 2 * (n + 1) * rational_pow(Rational(3, 2), k);
    const Rational third(1, 3);
    auto gap_factor = [&](int mgap) { return -rational_pow(third, mgap + 2); };

    if (u % 2 == 1) {
        Rational prod = 1;
        for (int i = 1; i <= (u - 1) / 2; ++i)
            prod *= gap_factor(gaps[static_cast<std::size_t>(2 * i - 1)]); // m_{2i}
        return pref * prod;
    }
    const Rational rod(1, 2 * (n + 1));
    Rational first = -rational_pow(third, gaps.back() + 1) * rod;   // m_u rod
    Rational second = -rational_pow(third, gaps.front() + 1) * rod; // m_1 rod
    for (int i = 1; i <= u / 2 - 1; ++i) {
        first *= gap_factor(gaps[static_cast<std::size_t>(2 * i - 1)]); // m_{2i}
        second *= gap_factor(gaps[static_cast<std::size_t>(2 * i)]);    // m_{2i+1}
    }
    return pref * (first + second);
}

} // namespace farey::polymer
