#include "rc/bench/experiments.hpp"

#include "rc/bench/csv.hpp"
#include "rc/bench/pool.hpp"
#include "rc/bench/svg.hpp"
#include "rc/error.hpp"
#include "rc/tasks.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <optional>

namespace rc::bench {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string path_in(const ExperimentSpec& spec, const std::string& file) {
    return (std::filesystem::path(spec.out_dir) / file).string();
}

void ensure_out_dir(const ExperimentSpec& spec) {
    std::error_code ec;
    std::filesystem::create_directories(spec.out_dir, ec);
    if (ec) throw Error("cannot create output directory '" + spec.out_dir + "': " + ec.message());
}

std::vector<std::size_t> t_range(std::size_t t_max) {
    std::vector<std::size_t> ts(t_max + 1);
    for (std::size_t t = 0; t <= t_max; ++t) ts[t] = t;
    return ts;
}

CellResult make_cell(const std::string& variant, std::size_t t, std::uint64_t seed) {
    CellResult c;
    c.variant = variant;
    c.t = t;
    c.seed = seed;
    return c;
}

std::string value_field(const CellResult& c) { return c.ok ? format_double(c.value) : ""; }

struct Timing {
    std::string variant;
    std::string key;
    std::uint64_t seed = 0;
    double seconds = 0.0;
};

void write_timings(const ExperimentSpec& spec, const std::string& file, const std::vector<Timing>& timings) {
    CsvWriter csv(path_in(spec, file), {"variant", "key", "seed", "seconds"});
    for (const auto& t : timings) csv.row({t.variant, t.key, std::to_string(t.seed), format_double(t.seconds)});
}

void summarize(CurveResult& result, const std::vector<VariantSpec>& variants, std::size_t t_max) {
    for (const auto& v : variants) result.variant_order.push_back(v.name);
    std::map<std::string, std::vector<std::vector<double>>> values;
    for (const auto& v : variants) values[v.name].assign(t_max + 1, {});
    for (const auto& c : result.cells) {
        if (c.ok) {
            values[c.variant][c.t].push_back(c.value);
        } else {
            ++result.failed;
        }
    }
    for (const auto& v : variants) {
        auto& per_t = result.summary[v.name];
        double capacity = 0.0;
        for (std::size_t t = 0; t <= t_max; ++t) {
            per_t.push_back(stats_of(values[v.name][t]));
            if (per_t.back().n > 0) capacity += per_t.back().mean;
        }
        result.capacity[v.name] = capacity;
    }
}

void write_curve(const ExperimentSpec& spec, const CurveResult& result, const std::string& stem,
                 const std::string& metric, const std::string& title, const std::string& y_label) {
    const bool narma = stem == "narma";
    std::vector<std::string> header{"variant", "T", "seed"};
    if (narma) {
        header.push_back("input_seed");
        header.push_back("form");
    }
    header.push_back(metric);
    header.push_back("status");
    CsvWriter cells(path_in(spec, stem + "_cells.csv"), header);
    for (const auto& c : result.cells) {
        std::vector<std::string> row{c.variant, std::to_string(c.t), std::to_string(c.seed)};
        if (narma) {
            row.push_back(c.ok ? std::to_string(c.input_seed) : "");
            row.push_back(c.form);
        }
        row.push_back(value_field(c));
        row.push_back(c.status);
        cells.row(row);
    }

    CsvWriter summary(path_in(spec, stem + "_summary.csv"), {"variant", "T", "mean", "std", "n"});
    std::vector<LineSeries> series;
    for (const auto& name : result.variant_order) {
        LineSeries line{name, {}, {}};
        const auto& per_t = result.summary.at(name);
        for (std::size_t t = 0; t < per_t.size(); ++t) {
            const auto& s = per_t[t];
            summary.row({name, std::to_string(t), s.n ? format_double(s.mean) : "", s.n ? format_double(s.stddev) : "",
                         std::to_string(s.n)});
            line.x.push_back(double(t));
            line.y.push_back(s.n ? s.mean : NAN);
        }
        series.push_back(std::move(line));
    }

    CsvWriter capacity(path_in(spec, stem + "_capacity.csv"), {"variant", "capacity", "failed_cells"});
    for (const auto& name : result.variant_order) {
        std::size_t failed = 0;
        for (const auto& c : result.cells) failed += (c.variant == name && !c.ok);
        capacity.row({name, format_double(result.capacity.at(name)), std::to_string(failed)});
    }

    write_text_file(path_in(spec, stem + ".svg"), line_chart(title, "T", y_label, series, 0.0, 1.0));
}

} // namespace

SeriesStats stats_of(const std::vector<double>& values) {
    SeriesStats s;
    s.n = values.size();
    if (s.n == 0) return s;
    for (double v : values) s.mean += v;
    s.mean /= double(s.n);
    if (s.n > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - s.mean) * (v - s.mean);
        s.stddev = std::sqrt(ss / double(s.n - 1));
    }
    return s;
}

std::vector<CellResult> narma_cells(const VariantSpec& variant, std::uint64_t seed, const std::vector<std::size_t>& ts,
                                    const ExperimentSpec& spec) {
    std::vector<CellResult> out;
    std::optional<Pipeline> pipeline;
    std::string build_error;
    try {
        pipeline.emplace(variant.pipeline(seed, spec.steps_per_cycle));
    } catch (const std::exception& e) {
        build_error = e.what();
    }
    // Features depend only on the input draw, so cells sharing one reuse them.
    std::map<std::pair<std::uint64_t, std::size_t>, StateTrajectory> cache;
    for (std::size_t t : ts) {
        CellResult cell = make_cell(variant.name, t, seed);
        try {
            if (!pipeline) throw Error(build_error);
            NarmaParams params;
            params.t_delay = t;
            const std::size_t skip = std::max(pipeline->washout(), params.burn_in());
            const NarmaData data = generate_narma(skip + spec.n_train + spec.n_test, params, seed);
            const auto key = std::make_pair(data.seed, data.u.length());
            auto it = cache.find(key);
            if (it == cache.end()) it = cache.emplace(key, pipeline->features(data.u)).first;
            const Evaluation e =
                evaluate_target(it->second, data.y, {spec.n_train, spec.n_test, params.burn_in()}, spec.lambda);
            cell.value = e.cor2;
            cell.form = data.saturated ? "saturated" : "literal";
            cell.input_seed = data.seed;
            if (e.zero_variance) cell.status = "zero_variance";
        } catch (const std::exception& e) {
            cell.ok = false;
            cell.status = std::string("failed: ") + e.what();
        }
        out.push_back(std::move(cell));
    }
    return out;
}

CurveResult run_narma(const ExperimentSpec& spec) {
    const auto ts = t_range(spec.t_max);
    const std::size_t n_seeds = spec.seeds.size();
    std::vector<std::vector<CellResult>> jobs(spec.variants.size() * n_seeds);
    std::vector<Timing> timings(jobs.size());
    parallel_for(jobs.size(), spec.threads, [&](std::size_t i) {
        const auto& v = spec.variants[i / n_seeds];
        const std::uint64_t seed = spec.seeds[i % n_seeds];
        const auto t0 = Clock::now();
        jobs[i] = narma_cells(v, seed, ts, spec);
        timings[i] = {v.name, "all", seed, seconds_since(t0)};
    });

    CurveResult result;
    for (std::size_t vi = 0; vi < spec.variants.size(); ++vi) {
        for (std::size_t t = 0; t < ts.size(); ++t) {
            for (std::size_t si = 0; si < n_seeds; ++si) result.cells.push_back(jobs[vi * n_seeds + si][t]);
        }
    }
    summarize(result, spec.variants, spec.t_max);
    if (!spec.out_dir.empty()) {
        ensure_out_dir(spec);
        write_curve(spec, result, "narma", "cor2", "NARMA coefficient of determination", "cor2");
        write_timings(spec, "narma_timings.csv", timings);
    }
    return result;
}

CurveResult run_mc(const ExperimentSpec& spec) {
    const std::size_t n_seeds = spec.seeds.size();
    std::vector<std::vector<CellResult>> jobs(spec.variants.size() * n_seeds);
    std::vector<Timing> timings(jobs.size());
    parallel_for(jobs.size(), spec.threads, [&](std::size_t i) {
        const auto& v = spec.variants[i / n_seeds];
        const std::uint64_t seed = spec.seeds[i % n_seeds];
        const auto t0 = Clock::now();
        std::vector<CellResult> cells(spec.t_max + 1);
        for (std::size_t t = 0; t <= spec.t_max; ++t) cells[t] = make_cell(v.name, t, seed);
        try {
            const Pipeline p = v.pipeline(seed, spec.steps_per_cycle);
            McOptions options;
            options.t_max = spec.t_max;
            options.n_train = spec.n_train;
            options.n_test = spec.n_test;
            options.lambda = spec.lambda;
            const McResult mc = memory_capacity(p, options, seed);
            for (std::size_t t = 0; t <= spec.t_max; ++t) cells[t].value = mc.cor2[t];
        } catch (const std::exception& e) {
            for (auto& c : cells) {
                c.ok = false;
                c.status = std::string("failed: ") + e.what();
            }
        }
        jobs[i] = std::move(cells);
        timings[i] = {v.name, "all", seed, seconds_since(t0)};
    });

    CurveResult result;
    for (std::size_t vi = 0; vi < spec.variants.size(); ++vi) {
        for (std::size_t t = 0; t <= spec.t_max; ++t) {
            for (std::size_t si = 0; si < n_seeds; ++si) result.cells.push_back(jobs[vi * n_seeds + si][t]);
        }
    }
    summarize(result, spec.variants, spec.t_max);
    if (!spec.out_dir.empty()) {
        ensure_out_dir(spec);
        write_curve(spec, result, "mc", "cor2", "Memory capacity by delay", "cor2");
        CsvWriter totals(path_in(spec, "mc_totals.csv"), {"variant", "seed", "mc", "status"});
        for (std::size_t vi = 0; vi < spec.variants.size(); ++vi) {
            for (std::size_t si = 0; si < n_seeds; ++si) {
                const auto& cells = jobs[vi * n_seeds + si];
                double mc = 0.0;
                for (const auto& c : cells) mc += c.value;
                const bool ok = cells.front().ok;
                totals.row({spec.variants[vi].name, std::to_string(spec.seeds[si]), ok ? format_double(mc) : "",
                            cells.front().status});
            }
        }
        write_timings(spec, "mc_timings.csv", timings);
    }
    return result;
}

std::pair<double, double> ipc_input_support(const IpcSettings& ipc, ModelKind model) {
    const double lo = ipc.input_low.value_or(model == ModelKind::cbm ? 0.0 : -1.0);
    const double hi = ipc.input_high.value_or(1.0);
    return {lo, hi};
}

double IpcDegreeSummary::sum_from(int k) const {
    double s = 0.0;
    for (std::size_t i = std::size_t(k - 1); i < degree_sum.size(); ++i) s += degree_sum[i];
    return s;
}

IpcResult run_ipc(const ExperimentSpec& spec) {
    const std::size_t n_seeds = spec.seeds.size();
    const std::size_t n_delays = spec.ipc.delays.size();
    const auto specs = ipc_grid(spec.ipc.max_degree, spec.ipc.max_tau);
    IpcResult result;
    result.runs.resize(spec.variants.size() * n_delays * n_seeds);
    std::vector<Timing> timings(result.runs.size());
    parallel_for(result.runs.size(), spec.threads, [&](std::size_t i) {
        const auto& base = spec.variants[i / (n_delays * n_seeds)];
        const std::size_t d = spec.ipc.delays[(i / n_seeds) % n_delays];
        const std::uint64_t seed = spec.seeds[i % n_seeds];
        IpcRun& run = result.runs[i];
        run.variant = base.name;
        run.d = d;
        run.seed = seed;
        const auto t0 = Clock::now();
        try {
            VariantSpec v = base;
            v.augment.d = d;
            const Pipeline p = v.pipeline(seed, spec.steps_per_cycle);
            const auto [lo, hi] = ipc_input_support(spec.ipc, v.model);
            IpcOptions options;
            options.lambda = spec.lambda;
            options.input_lo = lo;
            options.input_hi = hi;
            run.table = ipc_table(p, specs, spec.ipc.lengths, seed, options);
        } catch (const std::exception& e) {
            run.ok = false;
            run.status = std::string("failed: ") + e.what();
        }
        timings[i] = {base.name, "d=" + std::to_string(d), seed, seconds_since(t0)};
    });

    for (std::size_t vi = 0; vi < spec.variants.size(); ++vi) {
        for (std::size_t di = 0; di < n_delays; ++di) {
            IpcDegreeSummary s;
            s.variant = spec.variants[vi].name;
            s.d = spec.ipc.delays[di];
            s.degree_sum.assign(std::size_t(spec.ipc.max_degree), 0.0);
            std::size_t ok = 0;
            for (std::size_t si = 0; si < n_seeds; ++si) {
                const IpcRun& run = result.runs[(vi * n_delays + di) * n_seeds + si];
                if (!run.ok) {
                    ++result.failed;
                    continue;
                }
                ++ok;
                s.feature_dim = run.table.feature_dim;
                for (int k = 1; k <= spec.ipc.max_degree; ++k) s.degree_sum[std::size_t(k - 1)] += run.table.degree_sum(k);
                s.total += run.table.total;
            }
            if (ok) {
                for (double& v : s.degree_sum) v /= double(ok);
                s.total /= double(ok);
            }
            result.summary.push_back(std::move(s));
        }
        if (n_delays >= 2) {
            const auto [lo_it, hi_it] = std::minmax_element(spec.ipc.delays.begin(), spec.ipc.delays.end());
            const auto& low = result.summary[vi * n_delays + std::size_t(lo_it - spec.ipc.delays.begin())];
            const auto& high = result.summary[vi * n_delays + std::size_t(hi_it - spec.ipc.delays.begin())];
            IpcTrendCheck c;
            c.variant = spec.variants[vi].name;
            c.d_low = low.d;
            c.d_high = high.d;
            c.linear_low = low.degree_sum.empty() ? 0.0 : low.degree_sum[0];
            c.linear_high = high.degree_sum.empty() ? 0.0 : high.degree_sum[0];
            c.higher_low = low.sum_from(3);
            c.higher_high = high.sum_from(3);
            c.pass = c.linear_high > c.linear_low && c.higher_high < c.higher_low;
            result.checks.push_back(c);
        }
    }

    if (!spec.out_dir.empty()) {
        ensure_out_dir(spec);
        CsvWriter raw(path_in(spec, "ipc_raw.csv"), {"variant", "d", "seed", "k", "tau", "N", "capacity"});
        CsvWriter fit(path_in(spec, "ipc_capacity.csv"),
                      {"variant", "d", "seed", "k", "tau", "capacity", "intercept", "slope"});
        CsvWriter runs(path_in(spec, "ipc_runs.csv"), {"variant", "d", "seed", "F", "total", "zero_variance_cells", "status"});
        for (const auto& run : result.runs) {
            const std::string d = std::to_string(run.d), seed = std::to_string(run.seed);
            runs.row({run.variant, d, seed, run.ok ? std::to_string(run.table.feature_dim) : "",
                      run.ok ? format_double(run.table.total) : "",
                      run.ok ? std::to_string(run.table.zero_variance_cells) : "", run.status});
            if (!run.ok) continue;
            for (const auto& [key, entry] : run.table.entries) {
                const std::string k = std::to_string(key.first), tau = std::to_string(key.second);
                for (const auto& [n, c] : entry.raw) raw.row({run.variant, d, seed, k, tau, std::to_string(n), format_double(c)});
                fit.row({run.variant, d, seed, k, tau, format_double(entry.fit.c_inf), format_double(entry.fit.intercept),
                         format_double(entry.fit.slope)});
            }
        }
        CsvWriter degrees(path_in(spec, "ipc_degrees.csv"), {"variant", "d", "k", "capacity"});
        CsvWriter summary(path_in(spec, "ipc_summary.csv"),
                          {"variant", "d", "F", "total", "budget", "within_budget", "half_budget_reached"});
        std::vector<StackedBar> bars;
        for (const auto& s : result.summary) {
            for (std::size_t k = 0; k < s.degree_sum.size(); ++k) {
                degrees.row({s.variant, std::to_string(s.d), std::to_string(k + 1), format_double(s.degree_sum[k])});
            }
            const double budget = 1.05 * double(s.feature_dim);
            summary.row({s.variant, std::to_string(s.d), std::to_string(s.feature_dim), format_double(s.total),
                         format_double(budget), s.total <= budget ? "pass" : "fail",
                         s.total >= 0.5 * double(s.feature_dim) ? "pass" : "fail"});
            bars.push_back({s.variant + " d=" + std::to_string(s.d), s.degree_sum});
        }
        CsvWriter checks(path_in(spec, "ipc_checks.csv"), {"variant", "d_low", "d_high", "linear_low", "linear_high",
                                                           "higher_low", "higher_high", "result"});
        for (const auto& c : result.checks) {
            checks.row({c.variant, std::to_string(c.d_low), std::to_string(c.d_high), format_double(c.linear_low),
                        format_double(c.linear_high), format_double(c.higher_low), format_double(c.higher_high),
                        c.pass ? "pass" : "fail"});
        }
        std::vector<std::string> names;
        for (int k = 1; k <= spec.ipc.max_degree; ++k) names.push_back("k=" + std::to_string(k));
        write_text_file(path_in(spec, "ipc.svg"), stacked_bar_chart("Information processing capacity", "capacity", names, bars));
        write_timings(spec, "ipc_timings.csv", timings);
    }
    return result;
}

void apply_param(VariantSpec& v, const std::string& key, double value) {
    auto count = [&]() {
        if (!(value >= 1.0) || value != std::floor(value)) {
            throw ConfigError("grid parameter '" + key + "' needs a positive integer, got " + format_double(value));
        }
        return static_cast<std::size_t>(value);
    };
    if (key == "alpha_in") v.reservoir.alpha_in = value;
    else if (key == "alpha_rec") v.reservoir.alpha_rec = value;
    else if (key == "beta_rec") v.reservoir.beta_rec = value;
    else if (key == "alpha_i") v.reservoir.alpha_i = value;
    else if (key == "t_c") v.reservoir.t_c = value;
    else if (key == "delay") v.augment.d = count();
    else if (key == "decay") v.augment.a = value;
    else if (key == "clusters") v.augment.m = count();
    else throw ConfigError("parameter '" + key + "' cannot be gridded");
}

GridResult grid_search(const ExperimentSpec& spec) {
    // Cartesian product in key order, last key varying fastest.
    std::vector<std::map<std::string, double>> points{{}};
    for (const auto& [key, values] : spec.grid.params) {
        std::vector<std::map<std::string, double>> next;
        for (const auto& p : points) {
            for (double value : values) {
                auto q = p;
                q[key] = value;
                next.push_back(std::move(q));
            }
        }
        points = std::move(next);
    }

    struct Job {
        std::size_t point;
        std::size_t variant;
    };
    std::vector<GridPoint> all;
    std::vector<VariantSpec> configured;
    std::vector<std::string> errors;
    for (std::size_t vi = 0; vi < spec.variants.size(); ++vi) {
        for (const auto& params : points) {
            GridPoint gp;
            gp.index = all.size();
            gp.variant = spec.variants[vi].name;
            gp.params = params;
            VariantSpec v = spec.variants[vi];
            std::string error;
            try {
                for (const auto& [key, value] : params) apply_param(v, key, value);
            } catch (const std::exception& e) {
                error = e.what();
            }
            all.push_back(std::move(gp));
            configured.push_back(std::move(v));
            errors.push_back(std::move(error));
        }
    }

    const std::size_t n_seeds = spec.seeds.size();
    std::vector<CellResult> cells(all.size() * n_seeds);
    parallel_for(cells.size(), spec.threads, [&](std::size_t i) {
        const std::size_t p = i / n_seeds;
        const std::uint64_t seed = spec.seeds[i % n_seeds];
        if (!errors[p].empty()) {
            cells[i] = make_cell(configured[p].name, spec.grid.t, seed);
            cells[i].ok = false;
            cells[i].status = "failed: " + errors[p];
            return;
        }
        cells[i] = narma_cells(configured[p], seed, {spec.grid.t}, spec).front();
    });

    GridResult result;
    for (std::size_t p = 0; p < all.size(); ++p) {
        std::vector<double> values;
        for (std::size_t si = 0; si < n_seeds; ++si) {
            const auto& c = cells[p * n_seeds + si];
            if (c.ok) {
                values.push_back(c.value);
            } else {
                ++all[p].failed;
                ++result.failed;
            }
        }
        all[p].score = stats_of(values);
    }
    result.ranked = all;
    std::stable_sort(result.ranked.begin(), result.ranked.end(), [](const GridPoint& a, const GridPoint& b) {
        if ((a.score.n > 0) != (b.score.n > 0)) return a.score.n > 0;
        return a.score.mean > b.score.mean;
    });

    if (!spec.out_dir.empty()) {
        ensure_out_dir(spec);
        std::vector<std::string> header{"rank", "variant"};
        for (const auto& [key, values] : spec.grid.params) header.push_back(key);
        for (const char* h : {"T", "mean_cor2", "std", "n", "failed"}) header.push_back(h);
        CsvWriter ranked(path_in(spec, "grid_ranked.csv"), header);
        for (std::size_t r = 0; r < result.ranked.size(); ++r) {
            const auto& gp = result.ranked[r];
            std::vector<std::string> row{std::to_string(r + 1), gp.variant};
            for (const auto& [key, value] : gp.params) row.push_back(format_double(value));
            row.push_back(std::to_string(spec.grid.t));
            row.push_back(gp.score.n ? format_double(gp.score.mean) : "");
            row.push_back(gp.score.n ? format_double(gp.score.stddev) : "");
            row.push_back(std::to_string(gp.score.n));
            row.push_back(std::to_string(gp.failed));
            ranked.row(row);
        }
        CsvWriter failures(path_in(spec, "grid_failures.csv"), {"variant", "point", "seed", "status"});
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (!cells[i].ok) failures.row({cells[i].variant, std::to_string(i / n_seeds), std::to_string(cells[i].seed), cells[i].status});
        }
    }
    return result;
}

} // namespace rc::bench
