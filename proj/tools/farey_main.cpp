// ============================================================================
// farey: command-line front end for the spin-chain library.
//
// Subcommands
//   verify        run the built-in consistency suites
//   interactions  integer weights and interaction coefficients as CSV
//   cluster       cluster-series convergence trace for one coefficient
//   sweep         thermodynamic observables over a (k, beta) grid
//   correlate     pair correlations <s_1 s_j>
//   gks           conditional expectations over small site sets
//   events        run-length event probabilities
//
// Exit codes: 0 success, 1 failed verification, 2 bad usage or a size cap.
// ============================================================================

#include "farey/farey.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

namespace {

using farey::BigInt;
using farey::Rational;
using farey::chain::Index;
using farey::io::bits_string;
using farey::io::fmt_g12;

// Streams rows to stdout or to --out.
struct Sink {
    std::ofstream file;
    bool to_file = false;

    void open(const std::string& path) {
        if (path.empty()) return;
        file.open(path);
        if (!file) throw std::runtime_error("cannot open output file: " + path);
        to_file = true;
    }
    std::ostream& out() { return to_file ? static_cast<std::ostream&>(file) : std::cout; }
};

std::vector<double> parse_betas(const std::string& text) {
    std::vector<double> betas;
    if (text.empty()) {
        for (int i = 1; i <= 16; ++i) betas.push_back(0.25 * i);
        return betas;
    }
    if (text.find(':') != std::string::npos) {
        double a = 0, b = 0, step = 0;
        char c1 = 0, c2 = 0;
        std::istringstream in(text);
        if (!(in >> a >> c1 >> b >> c2 >> step) || c1 != ':' || c2 != ':' ||
            step <= 0 || b < a)
            throw std::invalid_argument("beta range must be min:max:step");
        for (double x = a; x <= b + step * 0.5; x += step) betas.push_back(x);
        return betas;
    }
    std::istringstream in(text);
    std::string tok;
    while (std::getline(in, tok, ','))
        if (!tok.empty()) betas.push_back(std::stod(tok));
    if (betas.empty()) throw std::invalid_argument("no betas given");
    return betas;
}

std::vector<int> sweep_schedule(int kmax) {
    std::vector<int> ks;
    for (int k = 4; k <= kmax; k += 4) ks.push_back(k);
    if (ks.empty() || ks.back() != kmax) ks.push_back(kmax);
    return ks;
}

int run_verify(const std::string& suite) {
    const auto checks = suite.empty() ? farey::verify::run_all()
                                      : farey::verify::run_suite(suite);
    int failed = 0;
    for (const auto& c : checks) {
        if (c.pass) {
            std::cout << "[ ok ] " << c.suite << ": " << c.name << "\n";
        } else {
            ++failed;
            std::cout << "[FAIL] " << c.suite << ": " << c.name;
            if (!c.detail.empty()) std::cout << " -- " << c.detail;
            std::cout << "\n";
        }
    }
    std::cout << "verify: " << (checks.size() - failed) << "/" << checks.size()
              << " checks passed\n";
    return failed == 0 ? 0 : 1;
}

struct EnsembleChoice {
    std::string name = "farey";
    int n = 0;

    bool constrained() const { return name == "constrained"; }
    farey::walsh::Ensemble plain() const {
        if (name == "canonical") return farey::walsh::Ensemble::canonical;
        if (name == "grand") return farey::walsh::Ensemble::grand;
        return farey::walsh::Ensemble::farey;
    }
    void check() const {
        if (constrained() && n < 1)
            throw std::invalid_argument("--ensemble constrained needs --n >= 1");
    }
};

void run_interactions(int k, const EnsembleChoice& e, Sink& sink) {
    e.check();
    const std::vector<std::int64_t> weights =
        e.constrained() ? farey::chain::constrained_trace_table(k, e.n)
                        : farey::walsh::weight_table(k, e.plain());
    const std::vector<double> coeff =
        e.constrained() ? farey::walsh::interaction_coefficients_constrained(k, e.n)
                        : farey::walsh::interaction_coefficients(k, e.plain());

    auto& os = sink.out();
    os << "index,bits,weight,coefficient\n";
    double min_nonzero_t = std::numeric_limits<double>::infinity();
    for (Index t = 0; t < coeff.size(); ++t) {
        os << t << "," << bits_string(t, k) << "," << weights[t] << ","
           << fmt_g12(coeff[t]) << "\n";
        if (t != 0) min_nonzero_t = std::min(min_nonzero_t, coeff[t]);
    }
    os << "# min coefficient over t != 0: " << fmt_g12(min_nonzero_t) << "\n";
}

void run_cluster(int k, const std::string& t_text, int order, const EnsembleChoice& e,
                 Sink& sink) {
    e.check();
    const Index t = farey::io::parse_configuration(t_text, k);

    farey::polymer::ModelKind kind = farey::polymer::ModelKind::farey;
    if (e.name == "grand") kind = farey::polymer::ModelKind::grand;
    else if (e.name == "constrained") kind = farey::polymer::ModelKind::constrained;
    else if (e.name != "farey")
        throw std::invalid_argument("cluster models: farey, grand, constrained");

    const auto model = farey::polymer::enumerate_polymers(kind, k, e.n);
    const auto series = farey::polymer::cluster_series(model, t, order);
    const std::vector<double> reference_table =
        e.constrained() ? farey::walsh::interaction_coefficients_constrained(k, e.n)
                        : farey::walsh::interaction_coefficients(k, e.plain());
    const double reference = reference_table[t];

    auto& os = sink.out();
    os << "order,contribution,partial_sum,reference,abs_error,tail_estimate\n";
    double prev_nonzero = 0.0;
    for (int m = 1; m <= series.order; ++m) {
        const double c = series.contributions[static_cast<std::size_t>(m)];
        const double partial = series.partials[static_cast<std::size_t>(m)];
        double tail = 0.0;
        if (c != 0.0) {
            if (prev_nonzero != 0.0 && std::abs(c) < std::abs(prev_nonzero)) {
                const double r = std::abs(c) / std::abs(prev_nonzero);
                tail = std::abs(c) * r / (1.0 - r);
            } else {
                tail = std::numeric_limits<double>::infinity();
            }
            prev_nonzero = c;
        }
        os << m << "," << fmt_g12(c) << "," << fmt_g12(partial) << ","
           << fmt_g12(reference) << "," << fmt_g12(std::abs(partial - reference)) << ","
           << fmt_g12(tail) << "\n";
    }
    os << "# value: " << fmt_g12(series.value) << "\n";
    os << "# tail_bound: " << fmt_g12(series.tail_bound) << "\n";
    os << "# converged: " << (series.converged ? "yes" : "no") << "\n";
}

void run_sweep(int kmax, const std::string& beta_text, Sink& sink) {
    const std::vector<double> betas = parse_betas(beta_text);
    auto& os = sink.out();
    os << "k,beta,z,f,u,msq\n";
    for (int k : sweep_schedule(kmax))
        for (double beta : betas) {
            const auto p = farey::thermo::observables(k, beta);
            os << k << "," << fmt_g12(beta) << "," << fmt_g12(p.z) << ","
               << fmt_g12(p.f) << "," << fmt_g12(p.u) << "," << fmt_g12(p.msq) << "\n";
        }
}

void run_correlate(int k, double beta, Sink& sink) {
    auto& os = sink.out();
    os << "j,correlation\n";
    std::vector<double> corr(static_cast<std::size_t>(k) + 1, 0.0);
    for (int j = 2; j <= k; ++j) {
        corr[static_cast<std::size_t>(j)] = farey::thermo::pair_correlation(k, beta, 1, j);
        os << j << "," << fmt_g12(corr[static_cast<std::size_t>(j)]) << "\n";
    }
    double gap = 0.0;
    for (int j = 2; j < k; ++j)
        gap = std::max(gap, std::abs(corr[static_cast<std::size_t>(j)] -
                                     farey::thermo::pair_correlation(k, beta, 2, j + 1)));
    os << "# translation invariance max gap: " << fmt_g12(gap) << "\n";
}

void run_gks(int k, int n, double beta, int max_size, Sink& sink) {
    if (k > 14) throw farey::SizeCapError("gks enumerates site sets, k <= 14 required");
    if (max_size < 1) throw std::invalid_argument("--maxsize must be >= 1");
    auto& os = sink.out();
    os << "lambda_mask,lambda_sites,value\n";
    double worst = std::numeric_limits<double>::infinity();
    for (Index mask = 1; mask < (Index{1} << k); ++mask) {
        if (std::popcount(mask) > max_size) continue;
        const double v = farey::thermo::conditional_expectation(k, n, mask, beta);
        worst = std::min(worst, v);
        std::string sites;
        for (int i = 1; i <= k; ++i)
            if ((mask >> (i - 1)) & 1u) {
                if (!sites.empty()) sites += '+';
                sites += std::to_string(i);
            }
        os << mask << "," << sites << "," << fmt_g12(v) << "\n";
    }
    os << "# min value: " << fmt_g12(worst) << "\n";
}

void run_events(int g, double beta, int nmax, double eps, bool has_eps, Sink& sink) {
    const auto p = farey::thermo::event_profile(g, beta, nmax);
    auto& os = sink.out();
    os << "n,probability,cumulative\n";
    double cum = 0.0;
    int eps_nmax = -1;
    for (int n = 1; n <= p.nmax; ++n) {
        cum += p.prob[static_cast<std::size_t>(n - 1)];
        os << n << "," << fmt_g12(p.prob[static_cast<std::size_t>(n - 1)]) << ","
           << fmt_g12(cum) << "\n";
        if (has_eps && eps_nmax < 0 && cum >= (1.0 - eps) * 0.5) eps_nmax = n;
    }
    os << "# total: " << fmt_g12(p.total) << "\n";
    if (has_eps) os << "# nmax_for_eps: " << eps_nmax << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact spin-chain computations on Farey transfer matrices"};
    app.require_subcommand(1);

    int threads = 1;
    app.add_option("--threads", threads, "worker thread count")
        ->capture_default_str()
        ->check(CLI::Range(1, 256));

    // verify
    auto* verify = app.add_subcommand("verify", "run built-in consistency suites");
    std::string suite;
    verify->add_option("--suite", suite, "restrict to one suite")
        ->check(CLI::IsMember(farey::verify::suite_names()));

    // shared options
    auto add_ensemble = [](CLI::App* cmd, EnsembleChoice& e,
                           const std::vector<std::string>& allowed) {
        cmd->add_option("--ensemble", e.name, "weight ensemble")
            ->capture_default_str()
            ->check(CLI::IsMember(allowed));
        cmd->add_option("--n", e.n, "pinned 1-block length (constrained ensemble)");
    };

    // interactions
    auto* interactions =
        app.add_subcommand("interactions", "weights and interaction coefficients");
    int ik = 0;
    EnsembleChoice ie;
    std::string iout;
    interactions->add_option("--k", ik, "chain length")->required();
    add_ensemble(interactions, ie, {"farey", "canonical", "grand", "constrained"});
    interactions->add_option("--out", iout, "write CSV here instead of stdout");

    // cluster
    auto* cluster = app.add_subcommand("cluster", "cluster-series convergence trace");
    int ck = 0, corder = 12;
    EnsembleChoice ce;
    std::string ct, cout_path;
    cluster->add_option("--k", ck, "chain length")->required();
    cluster->add_option("--t", ct, "target index or 0/1 string")->required();
    cluster->add_option("--order", corder, "series truncation order")
        ->capture_default_str()
        ->check(CLI::Range(1, 40));
    add_ensemble(cluster, ce, {"farey", "grand", "constrained"});
    cluster->add_option("--out", cout_path, "write CSV here instead of stdout");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "observables over a (k, beta) grid");
    int skmax = 0;
    std::string sbetas, sout;
    sweep->add_option("--kmax", skmax, "largest chain length")->required();
    sweep->add_option("--betas", sbetas, "comma list or min:max:step (default 0.25..4)");
    sweep->add_option("--out", sout, "write CSV here instead of stdout");

    // correlate
    auto* correlate = app.add_subcommand("correlate", "pair correlations <s_1 s_j>");
    int xk = 0;
    double xbeta = 1.0;
    std::string xout;
    correlate->add_option("--k", xk, "chain length")->required();
    correlate->add_option("--beta", xbeta, "inverse temperature")->required();
    correlate->add_option("--out", xout, "write CSV here instead of stdout");

    // gks
    auto* gks = app.add_subcommand("gks", "conditional expectations over site sets");
    int gk = 0, gn = 1, gsize = 3;
    double gbeta = 1.0;
    std::string gout;
    gks->add_option("--k", gk, "free chain length")->required();
    gks->add_option("--n", gn, "pinned 1-block length")->required();
    gks->add_option("--beta", gbeta, "inverse temperature")->required();
    gks->add_option("--maxsize", gsize, "largest site-set size")->capture_default_str();
    gks->add_option("--out", gout, "write CSV here instead of stdout");

    // events
    auto* events = app.add_subcommand("events", "run-length event probabilities");
    int eg = 0, enmax = -1;
    double ebeta = 1.0, eeps = 0.0;
    std::string eout;
    events->add_option("--g", eg, "chain length")->required();
    events->add_option("--beta", ebeta, "inverse temperature")->required();
    events->add_option("--nmax", enmax, "largest run length (default g-3)");
    auto* eps_opt = events->add_option("--eps", eeps, "report the cutoff reaching (1-eps)/2");
    events->add_option("--out", eout, "write CSV here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    farey::parallel::set_thread_count(threads);

    try {
        if (verify->parsed()) return run_verify(suite);
        Sink sink;
        if (interactions->parsed()) {
            sink.open(iout);
            run_interactions(ik, ie, sink);
        } else if (cluster->parsed()) {
            sink.open(cout_path);
            run_cluster(ck, ct, corder, ce, sink);
        } else if (sweep->parsed()) {
            sink.open(sout);
            run_sweep(skmax, sbetas, sink);
        } else if (correlate->parsed()) {
            sink.open(xout);
            run_correlate(xk, xbeta, sink);
        } else if (gks->parsed()) {
            sink.open(gout);
            run_gks(gk, gn, gbeta, gsize, sink);
        } else if (events->parsed()) {
            sink.open(eout);
            run_events(eg, ebeta, enmax, eeps, eps_opt->count() > 0, sink);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
