#pragma once

#include "rc/pipeline.hpp"
#include "rc/readout.hpp"
#include "rc/tasks.hpp"

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace rc {

/// Squared Pearson correlation with 1/N moments, clamped to [0, 1].
/// Throws ZeroVariance when either series is constant.
double cor2(const Eigen::Ref<const Vector>& y_out, const Eigen::Ref<const Vector>& y_target);
double cor2(const TimeSeries& y_out, const TimeSeries& y_target);

/// cor2, or 0 when a series is constant.
double capacity_or_zero(const Eigen::Ref<const Vector>& y_out, const Eigen::Ref<const Vector>& y_target);

/// Contiguous train and test windows over feature rows. Rows before
/// `valid_from` input steps are skipped; zero sizes split the rest 50/50.
struct SplitSpec {
    std::size_t n_train = 0;
    std::size_t n_test = 0;
    std::size_t valid_from = 0;
};

struct Evaluation {
    double cor2 = 0.0;       // on the test window
    double train_mse = 0.0;
    bool zero_variance = false;
};

/// Trains a ridge readout on the train window and scores the test window.
Evaluation evaluate_target(const StateTrajectory& features, const TimeSeries& target, const SplitSpec& split,
                           double lambda = kDefaultLambda);

struct McOptions {
    std::size_t t_max = 15;
    std::size_t n_train = 2000;
    std::size_t n_test = 2000;
    double lambda = kDefaultLambda;
    double input_lo = kNarmaInputLow;
    double input_hi = kNarmaInputHigh;
};

struct McResult {
    std::vector<double> cor2; // index T
    double mc = 0.0;
};

/// MC = sum over T = 0..t_max of test cor2 for reproducing u(n - T).
McResult memory_capacity(const Pipeline& pipeline, const McOptions& options, std::uint64_t seed);

/// Same, over an explicit list of delays.
McResult memory_capacity(const Pipeline& pipeline, const std::vector<std::size_t>& delays, const McOptions& options,
                         std::uint64_t seed);

/// The drive is i.i.d. Uniform[input_lo, input_hi]. The symmetric default
/// keeps the odd symmetry of a tanh reservoir; the CBM encoder needs [0, 1].
struct IpcOptions {
    double lambda = kDefaultLambda;
    double input_lo = -1.0;
    double input_hi = 1.0;
};

/// Test cor2 of the readout against P_k(u~(n - tau)) on n post-washout
/// samples split 50/50.
double ipc_component(const Pipeline& pipeline, const IpcTargetSpec& spec, std::size_t n, std::uint64_t seed,
                     const IpcOptions& options = {});

/// Values below this are reported as zero by ipc_extrapolate.
inline double ipc_noise_floor(std::size_t feature_dim, std::size_t n_max) {
    return 1.5 * double(feature_dim) / double(n_max);
}

struct Extrapolation {
    double c_inf = 0.0;     // clipped and floored limit
    double intercept = 0.0; // raw least-squares intercept
    double slope = 0.0;     // coefficient of 1/N
};

/// Least-squares fit of C(N) = C_inf + b / N. Needs three distinct lengths.
Extrapolation ipc_extrapolate(const std::map<std::size_t, double>& raw, std::size_t feature_dim);

struct CapacityEntry {
    std::map<std::size_t, double> raw; // N -> capacity
    Extrapolation fit;
};

struct CapacityTable {
    std::map<std::pair<int, std::size_t>, CapacityEntry> entries; // (k, tau)
    std::size_t feature_dim = 0;
    double total = 0.0;
    std::size_t zero_variance_cells = 0;

    double at(int k, std::size_t tau) const { return entries.at({k, tau}).fit.c_inf; }
    /// Sum over tau of the extrapolated capacities of degree k.
    double degree_sum(int k) const;
    /// Sum over degrees >= k.
    double degree_sum_from(int k) const;
};

/// All (k, tau) cells over every length; features are computed once per length.
CapacityTable ipc_table(const Pipeline& pipeline, const std::vector<IpcTargetSpec>& specs,
                        const std::vector<std::size_t>& lengths, std::uint64_t seed, const IpcOptions& options = {});

/// k in 1..max_degree, tau in 0..max_tau.
std::vector<IpcTargetSpec> ipc_grid(int max_degree = kMaxLegendreDegree, std::size_t max_tau = 15);

/// 200, 1000, 2500, 5000, 7500, 10000, 20000.
std::vector<std::size_t> ipc_default_lengths();

} // namespace rc
