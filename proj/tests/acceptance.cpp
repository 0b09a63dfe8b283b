// Acceptance checks. `acceptance` runs every criterion; `acceptance 3 7` runs
// the listed ones. Prints one PASS/FAIL line per criterion and exits nonzero
// when any of them fails.

#include "rc/augment.hpp"
#include "rc/bench/config.hpp"
#include "rc/bench/experiments.hpp"
#include "rc/cbm.hpp"
#include "rc/core.hpp"
#include "rc/metrics.hpp"
#include "rc/pipeline.hpp"
#include "rc/random.hpp"
#include "rc/tasks.hpp"

#include <Eigen/Eigenvalues>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

using namespace rc;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ReservoirConfig esn_row(double alpha_in, double alpha_rec, double beta, std::uint64_t seed) {
    ReservoirConfig c;
    c.n_rec = 200;
    c.alpha_in = alpha_in;
    c.alpha_rec = alpha_rec;
    c.beta_rec = beta;
    c.seed = seed;
    return c;
}

// 1. Spectral radius and density of the optimized ESN draw.
Outcome weights() {
    const double beta = 0.3139, alpha = 1.104;
    const auto expect_nnz = static_cast<Eigen::Index>(std::llround(beta * 200 * 200));
    double worst = 0.0;
    bool density_ok = true;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const Matrix w = init_reservoir_weights(200, beta, alpha, seed);
        Eigen::EigenSolver<Matrix> es(w, false);
        worst = std::max(worst, std::abs(es.eigenvalues().cwiseAbs().maxCoeff() - alpha));
        density_ok = density_ok && (w.array() != 0.0).count() == expect_nnz;
    }
    return {worst <= 1e-6 && density_ok,
            "max |rho - 1.104| = " + fmt("%.3g", worst) + ", nnz = " + std::to_string(expect_nnz) +
                (density_ok ? " on every seed" : " violated")};
}

// 2. Input scaling with one input and ten delay nodes.
Outcome input_scaling() {
    ReservoirConfig c = esn_row(0.8668, 0.8261, 0.2126, 5);
    AugmentConfig a;
    a.d = 10;
    const Pipeline p(ModelKind::esn, c, a);
    const Matrix raw = init_input_weights(200, 10, c.alpha_in, derive_seed(c.seed, "w_in"));
    const bool exact = p.weights().w_in == raw * 0.1;
    return {exact, exact ? "W_in == 0.1 * draw bit for bit" : "W_in differs from 0.1 * draw"};
}

// 3. Delay chain against a shift register.
Outcome delay_chain() {
    Rng rng(2024);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t d = 1 + rng.below(16);
        const double a = std::vector<double>{0.25, 0.5, 1.0}[rng.below(3)];
        const std::size_t n = 20 + rng.below(100);
        std::vector<double> u(n);
        for (double& v : u) v = rng.uniform(-1.0, 1.0);
        const AugmentedInput chain = build_delay_chain(TimeSeries::from_vector(u), d, a);
        std::vector<double> reg(d, 0.0);
        for (std::size_t t = 0; t < n; ++t) {
            for (std::size_t k = d - 1; k > 0; --k) reg[k] = a * reg[k - 1];
            reg[0] = u[t];
            for (std::size_t k = 0; k < d; ++k) worst = std::max(worst, std::abs(chain.nodes(t, k) - reg[k]));
        }
    }
    return {worst <= 1e-12, "max deviation over 1000 series = " + fmt("%.3g", worst)};
}

// 4. Memory capacity of a shift register and of a plain ESN at N = 4000.
Outcome memory() {
    McOptions o;
    o.n_train = 1900;
    o.n_test = 1900;
    AugmentConfig a;
    a.d = 16;
    const double shift = memory_capacity(Pipeline(ModelKind::linear, {}, a, 200), o, 1).mc;
    ReservoirConfig c = esn_row(1.0, 0.9, 0.1, 1);
    const double esn = memory_capacity(Pipeline(ModelKind::esn, c, {}, 200), o, 1).mc;
    const bool pass = shift >= 15.5 && shift <= 16.0 && esn >= 10.0 && esn <= 200.0;
    return {pass, "shift register MC = " + fmt("%.4f", shift) + ", ESN MC = " + fmt("%.3f", esn)};
}

// 5. NARMA ordering with the optimized parameters.
Outcome narma() {
    using namespace rc::bench;
    bench::Overrides esn_o;
    esn_o.n_train = 1900; // 200 washout + 1900 + 1900 = 4000 steps
    esn_o.n_test = 1900;
    const ExperimentSpec esn = load_spec(std::string(RC_CONFIG_DIR) + "/narma_esn.json", ExperimentKind::narma, esn_o);
    bench::Overrides cbm_o;
    cbm_o.n_train = 1975; // 50 burn-in periods + 1975 + 1975 = 4000
    cbm_o.n_test = 1975;
    const ExperimentSpec cbm = load_spec(std::string(RC_CONFIG_DIR) + "/narma_cbm.json", ExperimentKind::narma, cbm_o);

    std::string detail;
    bool t0_ok = true;
    auto run = [&](const ExperimentSpec& s) {
        const CurveResult r = run_narma(s);
        for (const auto& name : r.variant_order) {
            const double t0 = r.summary.at(name)[0].mean;
            t0_ok = t0_ok && t0 > 0.9;
            std::fprintf(stderr, "  %-36s T=0 %.4f  sum %.4f\n", name.c_str(), t0, r.capacity.at(name));
        }
        if (r.failed) t0_ok = false;
        return r;
    };
    const CurveResult er = run(esn);
    const CurveResult cr = run(cbm);
    const double esn_sum = er.capacity.at("ESN"), desn_sum = er.capacity.at("Delay-ESN");
    const double cbm_sum = cr.capacity.at("CBM-RC"), dcbm_sum = cr.capacity.at("Delay-CBM");
    const bool b = desn_sum > esn_sum, c = dcbm_sum > cbm_sum;
    detail = std::string("(a) T=0 > 0.9 for every variant: ") + (t0_ok ? "yes" : "no") + "; (b) Delay-ESN " +
             fmt("%.3f", desn_sum) + " vs ESN " + fmt("%.3f", esn_sum) + "; (c) Delay-CBM " + fmt("%.3f", dcbm_sum) +
             " vs CBM-RC " + fmt("%.3f", cbm_sum);
    return {t0_ok && b && c, detail};
}

CapacityTable esn_ipc(std::size_t d) {
    AugmentConfig a;
    a.d = d;
    const Pipeline p(ModelKind::esn, esn_row(1.0, 1.0, 0.1, 1), a);
    return ipc_table(p, ipc_grid(), ipc_default_lengths(), 1);
}

// 6. Total IPC within [0.5 F, 1.05 F].
Outcome ipc_budget() {
    const CapacityTable t = esn_ipc(1);
    const double f = double(t.feature_dim);
    const bool upper = t.total <= 1.05 * f, lower = t.total >= 0.5 * f;
    return {upper && lower, "total = " + fmt("%.3f", t.total) + ", F = " + std::to_string(t.feature_dim) +
                                " (upper bound " + (upper ? "met" : "missed") + ", lower bound " +
                                (lower ? "met" : "missed") + ")"};
}

// 7. Even degrees carry little capacity.
Outcome even_orders() {
    const CapacityTable t = esn_ipc(1);
    const double k2 = t.degree_sum(2) / t.total, k4 = t.degree_sum(4) / t.total;
    return {k2 < 0.05 && k4 < 0.05, "share of total: k=2 " + fmt("%.4f", k2) + ", k=4 " + fmt("%.4f", k4)};
}

// 8. Deeper delay chains move capacity to degree one.
Outcome ipc_trend() {
    const CapacityTable lo = esn_ipc(5), hi = esn_ipc(15);
    const double l5 = lo.degree_sum(1), l15 = hi.degree_sum(1);
    const double h5 = lo.degree_sum_from(3), h15 = hi.degree_sum_from(3);
    return {l15 > l5 && h15 < h5, "k=1: d=5 " + fmt("%.3f", l5) + " -> d=15 " + fmt("%.3f", l15) + "; k>=3: d=5 " +
                                      fmt("%.3f", h5) + " -> d=15 " + fmt("%.3f", h15)};
}

// 9. CBM oscillation, locking and grid refinement.
Outcome cbm_mechanics() {
    const std::size_t spc = kStepsPerCycle;
    const double dt = 1.0 / double(spc);
    auto lone = [&](double x0, double alpha_i, std::size_t cycles) {
        ReservoirConfig c;
        c.n_rec = 1;
        c.alpha_i = alpha_i;
        WeightSet w{Matrix::Zero(1, 1), Matrix::Zero(1, 1), {}};
        CbmOptions o;
        o.initial_x = Vector::Constant(1, x0);
        return cbm_integrate(c, w, encode_input(TimeSeries(Matrix::Zero(Eigen::Index(cycles), 1)), spc), cycles, o);
    };

    double worst_period = 0.0;
    for (double x0 : {0.1, 0.4, 0.7}) {
        const CbmRecord r = lone(x0, 0.0, 12);
        std::vector<std::size_t> rises;
        for (std::uint32_t k : r.flips(0)) {
            if (r.state_at(0, k) == 1) rises.push_back(k);
        }
        for (std::size_t i = 1; i < rises.size(); ++i) {
            worst_period = std::max(worst_period, std::abs(double(rises[i] - rises[i - 1]) * dt - 1.0));
        }
        if (rises.size() < 10) worst_period = 1.0;
    }
    const bool a = worst_period <= 2 * dt;

    double worst_lock = 1.0;
    for (double x0 : {0.05, 0.3, 0.5, 0.8, 0.99}) {
        const CbmRecord r = lone(x0, 5.0, 30);
        std::size_t agree = 0, total = 0;
        for (std::size_t k = 5 * spc; k < r.total_steps(); ++k, ++total) agree += r.state_at(0, k) == clock_at(k, spc);
        worst_lock = std::min(worst_lock, double(agree) / double(total));
    }
    const bool b = worst_lock >= 0.99;

    double worst_rms = 0.0;
    for (std::uint64_t seed : {1, 2, 3}) {
        ReservoirConfig c;
        c.n_rec = 10;
        c.alpha_in = 0.4321;
        c.alpha_rec = 0.5476;
        c.beta_rec = 0.7687;
        c.alpha_i = 0.5954;
        c.seed = seed;
        const WeightSet w = build_clustered_weights(c, {});
        const TimeSeries u = uniform_input(80, 0.0, 0.5, seed);
        auto decoded = [&](std::size_t steps) {
            return decode_states(cbm_integrate(c, w, encode_input(u, steps), 80), 80, kCbmWarmupCycles).features;
        };
        const Matrix diff = decoded(spc) - decoded(2 * spc);
        worst_rms = std::max(worst_rms, std::sqrt(diff.squaredNorm() / double(diff.size())));
    }
    const bool c = worst_rms < 1e-2;
    return {a && b && c, "(a) max period error " + fmt("%.2g", worst_period) + " (limit " + fmt("%.2g", 2 * dt) +
                             "); (b) min lock " + fmt("%.4f", worst_lock) + "; (c) max RMS 1/512 vs 1/1024 " +
                             fmt("%.4f", worst_rms)};
}

// 10. Two identical NARMA runs write identical files.
Outcome determinism() {
    using namespace rc::bench;
    bench::Overrides o;
    o.n_train = 1900;
    o.n_test = 1900;
    ExperimentSpec s = load_spec(std::string(RC_CONFIG_DIR) + "/narma_esn.json", ExperimentKind::narma, o);
    s.variants.resize(2); // ESN and Delay-ESN
    const fs::path root = fs::temp_directory_path() / "rc_acceptance_determinism";
    fs::remove_all(root);
    for (const char* run : {"a", "b"}) {
        s.out_dir = (root / run).string();
        run_narma(s);
    }
    std::string detail;
    bool same = true;
    for (const char* f : {"narma_cells.csv", "narma_summary.csv", "narma_capacity.csv", "narma.svg"}) {
        const std::string a = slurp(root / "a" / f), b = slurp(root / "b" / f);
        const bool eq = !a.empty() && a == b;
        same = same && eq;
        detail += std::string(detail.empty() ? "" : ", ") + f + (eq ? " identical" : " DIFFERS");
    }
    return {same, detail};
}

} // namespace

int main(int argc, char** argv) {
    const std::map<int, std::pair<const char*, std::function<Outcome()>>> criteria{
        {1, {"weight construction", weights}},
        {2, {"input scaling", input_scaling}},
        {3, {"delay chain", delay_chain}},
        {4, {"memory capacity", memory}},
        {5, {"NARMA ordering", narma}},
        {6, {"IPC budget", ipc_budget}},
        {7, {"even-order suppression", even_orders}},
        {8, {"IPC redistribution", ipc_trend}},
        {9, {"CBM mechanics", cbm_mechanics}},
        {10, {"determinism", determinism}},
    };
    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
    if (selected.empty()) {
        for (const auto& [n, c] : criteria) selected.push_back(n);
    }
    bool all = true;
    for (int n : selected) {
        const auto it = criteria.find(n);
        if (it == criteria.end()) {
            std::fprintf(stderr, "unknown criterion %d\n", n);
            return 2;
        }
        const auto start = std::chrono::steady_clock::now();
        Outcome o{false, ""};
        try {
            o = it->second.second();
        } catch (const std::exception& e) {
            o = {false, std::string("error: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s criterion %d (%s): %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", n, it->second.first,
                    o.detail.c_str(), secs);
        std::fflush(stdout);
        all = all && o.pass;
    }
    return all ? 0 : 1;
}
