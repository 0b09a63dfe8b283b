#include "rc/bench/config.hpp"
#include "rc/bench/csv.hpp"
#include "rc/bench/experiments.hpp"
#include "rc/cbm.hpp"
#include "rc/error.hpp"
#include "rc/random.hpp"
#include "rc/tasks.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace rc;
using namespace rc::bench;

namespace {

struct BenchFlags {
    std::string config;
    std::string model;
    std::size_t delay = 0;
    double decay = 0.0;
    bool pass_through = false;
    std::size_t clusters = 0;
    std::string seeds;
    std::string out;
    double lambda = -1.0;
    std::size_t train = 0;
    std::size_t test = 0;
    std::size_t threads = 0;
};

void add_bench_flags(CLI::App* app, BenchFlags& f) {
    app->add_option("--config", f.config, "experiment config (JSON)")->required()->check(CLI::ExistingFile);
    app->add_option("--model", f.model, "override the model of every variant")->check(CLI::IsMember({"esn", "cbm", "linear"}));
    app->add_option("--delay", f.delay, "delay steps d");
    app->add_option("--decay", f.decay, "per-hop decay a");
    app->add_flag("--pass-through", f.pass_through, "route input-layer nodes to the readout");
    app->add_option("--clusters", f.clusters, "cluster count m");
    app->add_option("--seed", f.seeds, "comma-separated seed list");
    app->add_option("--out", f.out, "output directory");
    app->add_option("--lambda", f.lambda, "ridge parameter");
    app->add_option("--train", f.train, "training steps");
    app->add_option("--test", f.test, "test steps");
    app->add_option("--threads", f.threads, "worker threads");
}

Overrides to_overrides(const BenchFlags& f, CLI::App* app) {
    Overrides o;
    if (app->count("--model")) o.model = f.model;
    if (app->count("--delay")) o.delay = f.delay;
    if (app->count("--decay")) o.decay = f.decay;
    o.pass_through = f.pass_through;
    if (app->count("--clusters")) o.clusters = f.clusters;
    if (app->count("--seed")) o.seeds = parse_seed_list(f.seeds);
    if (app->count("--out")) o.out_dir = f.out;
    if (app->count("--lambda")) o.lambda = f.lambda;
    if (app->count("--train")) o.n_train = f.train;
    if (app->count("--test")) o.n_test = f.test;
    if (app->count("--threads")) o.threads = f.threads;
    return o;
}

void report_cells(const CurveResult& r, const char* label) {
    for (const auto& c : r.cells) {
        if (!c.ok) std::cerr << "cell failed: variant=" << c.variant << " T=" << c.t << " seed=" << c.seed << ": " << c.status << '\n';
    }
    for (const auto& name : r.variant_order) {
        std::cout << name << '\t' << label << '=' << format_double(r.capacity.at(name)) << '\n';
    }
}

int run_bench(ExperimentKind kind, const BenchFlags& flags, CLI::App* app) {
    const ExperimentSpec spec = load_spec(flags.config, kind, to_overrides(flags, app));
    std::size_t failed = 0;
    switch (kind) {
    case ExperimentKind::narma: {
        const auto r = run_narma(spec);
        report_cells(r, "capacity");
        failed = r.failed;
        break;
    }
    case ExperimentKind::mc: {
        const auto r = run_mc(spec);
        report_cells(r, "mc");
        failed = r.failed;
        break;
    }
    case ExperimentKind::ipc: {
        const auto r = run_ipc(spec);
        for (const auto& run : r.runs) {
            if (!run.ok) std::cerr << "run failed: variant=" << run.variant << " d=" << run.d << " seed=" << run.seed << ": " << run.status << '\n';
        }
        for (const auto& s : r.summary) {
            std::cout << s.variant << "\td=" << s.d << "\tF=" << s.feature_dim << "\ttotal=" << format_double(s.total) << '\n';
        }
        for (const auto& c : r.checks) {
            std::cout << c.variant << "\tdelay trend d=" << c.d_low << "->" << c.d_high << ": " << (c.pass ? "pass" : "fail") << '\n';
        }
        failed = r.failed;
        break;
    }
    case ExperimentKind::grid: {
        const auto r = grid_search(spec);
        if (!r.ranked.empty()) {
            const auto& best = r.ranked.front();
            std::cout << "best: " << best.variant;
            for (const auto& [key, value] : best.params) std::cout << ' ' << key << '=' << format_double(value);
            std::cout << " mean_cor2=" << format_double(best.score.mean) << '\n';
        }
        failed = r.failed;
        break;
    }
    }
    if (failed) {
        std::cerr << failed << " cell(s) failed\n";
        return 2;
    }
    return 0;
}

int run_trace(const std::string& config, std::size_t cycles, std::uint64_t seed, const std::string& out) {
    const ExperimentSpec spec = load_spec(config, ExperimentKind::narma);
    const VariantSpec& v = spec.variants.front();
    if (v.model != ModelKind::cbm) throw ConfigError("trace needs a CBM variant");
    const Pipeline p = v.pipeline(seed, spec.steps_per_cycle);
    const TimeSeries u =
        uniform_input(cycles, kNarmaInputLow, kNarmaInputHigh, derive_seed(seed, "trace-u"), p.config().n_in);
    const AugmentedInput nodes = build_delay_chain(u, p.augment().d, p.augment().a);
    const PulseTrain pulses = encode_input(nodes.nodes, spec.steps_per_cycle);
    std::ofstream file;
    std::ostream* sink = &std::cout;
    if (!out.empty()) {
        file.open(out);
        if (!file) throw Error("cannot write '" + out + "'");
        sink = &file;
    }
    CbmOptions options;
    options.trace = sink;
    cbm_integrate(p.config(), p.weights(), pulses, cycles, options);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Reservoir computing benchmarks"};
    app.require_subcommand(1);

    BenchFlags bench_flags;
    CLI::App* bench = app.add_subcommand("bench", "run a NARMA, MC or IPC experiment");
    bench->require_subcommand(1);
    std::vector<std::pair<ExperimentKind, CLI::App*>> kinds;
    for (ExperimentKind k : {ExperimentKind::narma, ExperimentKind::mc, ExperimentKind::ipc}) {
        CLI::App* sub = bench->add_subcommand(to_string(k));
        add_bench_flags(sub, bench_flags);
        kinds.emplace_back(k, sub);
    }

    BenchFlags grid_flags;
    CLI::App* grid = app.add_subcommand("grid", "grid search over NARMA cor2");
    add_bench_flags(grid, grid_flags);

    std::string trace_config, trace_out;
    std::size_t trace_cycles = 4;
    std::uint64_t trace_seed = 1;
    CLI::App* trace = app.add_subcommand("trace", "dump a CBM trace (t,neuron,x,s) as CSV");
    trace->add_option("--config", trace_config, "config whose first variant is a CBM")->required()->check(CLI::ExistingFile);
    trace->add_option("--cycles", trace_cycles, "clock periods to integrate");
    trace->add_option("--seed", trace_seed, "weight and input seed");
    trace->add_option("--out", trace_out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        for (const auto& [kind, sub] : kinds) {
            if (sub->parsed()) return run_bench(kind, bench_flags, sub);
        }
        if (grid->parsed()) return run_bench(ExperimentKind::grid, grid_flags, grid);
        if (trace->parsed()) return run_trace(trace_config, trace_cycles, trace_seed, trace_out);
    } catch (const ConfigError& e) {
        std::cerr << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << e.what() << '\n';
        return 2;
    }
    return 0;
}
