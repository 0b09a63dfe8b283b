#pragma once

#include "rc/bench/config.hpp"
#include "rc/metrics.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace rc::bench {

/// Outcome of one (variant, abscissa, seed) cell. A failed cell keeps its
/// key and carries the diagnostic in `status`.
struct CellResult {
    std::string variant;
    std::size_t t = 0;
    std::uint64_t seed = 0;
    double value = 0.0;
    bool ok = true;
    std::string status = "ok";
    std::string form;             // NARMA only: "literal" or "saturated"
    std::uint64_t input_seed = 0; // NARMA only: seed of the accepted input draw
};

struct SeriesStats {
    double mean = 0.0;
    double stddev = 0.0; // sample standard deviation, 0 for fewer than two values
    std::size_t n = 0;
};

SeriesStats stats_of(const std::vector<double>& values);

struct CurveResult {
    std::vector<CellResult> cells; // sorted by (variant order, T, seed order)
    std::map<std::string, std::vector<SeriesStats>> summary; // variant -> per-T stats
    std::map<std::string, double> capacity;                  // variant -> sum over T of mean
    std::vector<std::string> variant_order;
    std::size_t failed = 0;
};

/// NARMA(T) test cor² of one variant and seed. Shared by run_narma and grid_search.
std::vector<CellResult> narma_cells(const VariantSpec& variant, std::uint64_t seed, const std::vector<std::size_t>& ts,
                                    const ExperimentSpec& spec);

/// NARMA(T) test cor² for T = 0..t_max, every variant and seed.
CurveResult run_narma(const ExperimentSpec& spec);

/// Delay-reconstruction cor² for T = 0..t_max; capacity is MC.
CurveResult run_mc(const ExperimentSpec& spec);

/// Input support of the IPC drive: the configured one, else [-1,1] for the
/// ESN and linear models and [0,1] for the CBM (its encoder range).
std::pair<double, double> ipc_input_support(const IpcSettings& ipc, ModelKind model);

struct IpcRun {
    std::string variant;
    std::size_t d = 1;
    std::uint64_t seed = 0;
    bool ok = true;
    std::string status = "ok";
    CapacityTable table;
};

struct IpcDegreeSummary {
    std::string variant;
    std::size_t d = 1;
    std::size_t feature_dim = 0;
    std::vector<double> degree_sum; // index k-1, mean over seeds
    double total = 0.0;
    double even_fraction(int k) const { return total > 0 ? degree_sum[std::size_t(k - 1)] / total : 0.0; }
    double sum_from(int k) const;
};

struct IpcTrendCheck {
    std::string variant;
    std::size_t d_low = 0, d_high = 0;
    double linear_low = 0, linear_high = 0;
    double higher_low = 0, higher_high = 0;
    bool pass = false;
};

struct IpcResult {
    std::vector<IpcRun> runs; // by (variant order, d order, seed order)
    std::vector<IpcDegreeSummary> summary;
    std::vector<IpcTrendCheck> checks;
    std::size_t failed = 0;
};

/// Legendre capacity grid for every variant, delay depth in ipc.delays and seed.
IpcResult run_ipc(const ExperimentSpec& spec);

struct GridPoint {
    std::size_t index = 0; // position in the Cartesian enumeration
    std::string variant;
    std::map<std::string, double> params;
    SeriesStats score;
    std::size_t failed = 0;
};

struct GridResult {
    std::vector<GridPoint> ranked; // descending score, ties by enumeration order
    std::size_t failed = 0;
};

/// Mean NARMA cor² at T = grid.t over every point of the parameter grid.
GridResult grid_search(const ExperimentSpec& spec);

/// Applies one gridable parameter to a variant.
void apply_param(VariantSpec& v, const std::string& key, double value);

} // namespace rc::bench
