#include "rc/metrics.hpp"

#include "rc/error.hpp"
#include "rc/random.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace rc {

double cor2(const Eigen::Ref<const Vector>& y_out, const Eigen::Ref<const Vector>& y_target) {
    if (y_out.size() != y_target.size()) throw LengthMismatch("cor2 needs equal lengths");
    if (y_out.size() < 2) throw InvalidArgument("cor2 needs at least two samples");
    const double n = double(y_out.size());
    const Vector a = y_out.array() - y_out.mean();
    const Vector b = y_target.array() - y_target.mean();
    const double var_a = a.squaredNorm() / n;
    const double var_b = b.squaredNorm() / n;
    // Relative test so that rounding residue of a constant series counts as constant.
    const double scale_a = std::max(1.0, y_out.cwiseAbs().maxCoeff());
    const double scale_b = std::max(1.0, y_target.cwiseAbs().maxCoeff());
    if (var_a <= 1e-28 * scale_a * scale_a || var_b <= 1e-28 * scale_b * scale_b) {
        throw ZeroVariance("series has zero variance");
    }
    const double cov = a.dot(b) / n;
    return std::clamp(cov * cov / (var_a * var_b), 0.0, 1.0);
}

double cor2(const TimeSeries& y_out, const TimeSeries& y_target) {
    if (y_out.channels() != 1 || y_target.channels() != 1) throw DimensionMismatch("cor2 takes single-channel series");
    return cor2(y_out.data().col(0), y_target.data().col(0));
}

double capacity_or_zero(const Eigen::Ref<const Vector>& y_out, const Eigen::Ref<const Vector>& y_target) {
    try {
        return cor2(y_out, y_target);
    } catch (const ZeroVariance&) {
        return 0.0;
    }
}

namespace {

struct Window {
    Eigen::Index train_begin, n_train, test_begin, n_test;
};

Window make_window(const StateTrajectory& features, const SplitSpec& split) {
    const std::size_t skip = split.valid_from > features.first_step ? split.valid_from - features.first_step : 0;
    if (skip >= features.length()) throw LengthMismatch("no feature rows after the padded region");
    const std::size_t avail = features.length() - skip;
    std::size_t n_train = split.n_train, n_test = split.n_test;
    if (n_train == 0 && n_test == 0) {
        n_train = avail / 2;
        n_test = avail - n_train;
    }
    if (n_train + n_test > avail) {
        throw LengthMismatch("train+test = " + std::to_string(n_train + n_test) + " rows, only " +
                             std::to_string(avail) + " available");
    }
    if (n_train < 2 || n_test < 2) throw LengthMismatch("train and test windows need at least two rows");
    return {Eigen::Index(skip), Eigen::Index(n_train), Eigen::Index(skip + n_train), Eigen::Index(n_test)};
}

// Target rows aligned with feature rows.
Vector aligned_target(const StateTrajectory& features, const TimeSeries& target) {
    if (target.length() < features.first_step + features.length()) {
        throw LengthMismatch("target shorter than the feature span");
    }
    return target.data().col(0).segment(Eigen::Index(features.first_step), Eigen::Index(features.length()));
}

Evaluation score(const RidgeSolver& solver, const Matrix& test_x, const Vector& train_y, const Vector& test_y) {
    const Readout r = solver.fit(train_y);
    const Vector out = predict(r, test_x).col(0);
    Evaluation e;
    e.train_mse = r.train_mse;
    try {
        e.cor2 = cor2(out, test_y);
    } catch (const ZeroVariance&) {
        e.cor2 = 0.0;
        e.zero_variance = true;
    }
    return e;
}

} // namespace

Evaluation evaluate_target(const StateTrajectory& features, const TimeSeries& target, const SplitSpec& split,
                           double lambda) {
    const Window w = make_window(features, split);
    const Vector y = aligned_target(features, target);
    const Matrix train_x = features.features.middleRows(w.train_begin, w.n_train);
    const RidgeSolver solver(train_x, lambda);
    return score(solver, features.features.middleRows(w.test_begin, w.n_test), y.segment(w.train_begin, w.n_train),
                 y.segment(w.test_begin, w.n_test));
}

McResult memory_capacity(const Pipeline& pipeline, const std::vector<std::size_t>& delays, const McOptions& options,
                         std::uint64_t seed) {
    const std::size_t length = pipeline.washout() + options.n_train + options.n_test;
    const TimeSeries u = uniform_input(length, options.input_lo, options.input_hi, derive_seed(seed, "mc-u"),
                                       pipeline.config().n_in);
    const StateTrajectory features = pipeline.features(u);
    // With several input channels the first one is reproduced.
    const TimeSeries source = u.channels() == 1 ? u : TimeSeries(u.data().leftCols(1));
    McResult out;
    for (std::size_t t : delays) {
        const Target target = gen_delay_target(source, t);
        const SplitSpec split{options.n_train, options.n_test, target.valid_from};
        double c = 0.0;
        if (target.valid_from <= features.first_step) {
            c = evaluate_target(features, target.series, split, options.lambda).cor2;
        } else {
            // Padding reaches past the washout: shrink the training window.
            const std::size_t lost = target.valid_from - features.first_step;
            if (lost + 2 >= options.n_train) throw LengthMismatch("delay exceeds the training window");
            c = evaluate_target(features, target.series, {options.n_train - lost, options.n_test, target.valid_from},
                                options.lambda)
                    .cor2;
        }
        out.cor2.push_back(c);
        out.mc += c;
    }
    return out;
}

McResult memory_capacity(const Pipeline& pipeline, const McOptions& options, std::uint64_t seed) {
    std::vector<std::size_t> delays(options.t_max + 1);
    for (std::size_t t = 0; t <= options.t_max; ++t) delays[t] = t;
    return memory_capacity(pipeline, delays, options, seed);
}

std::vector<std::size_t> ipc_default_lengths() {
    return {200, 1000, 2500, 5000, 7500, 10000, 20000};
}

std::vector<IpcTargetSpec> ipc_grid(int max_degree, std::size_t max_tau) {
    std::vector<IpcTargetSpec> specs;
    for (int k = 1; k <= max_degree; ++k) {
        for (std::size_t tau = 0; tau <= max_tau; ++tau) specs.push_back({k, tau});
    }
    return specs;
}

namespace {

// Input series and features for one data length of an IPC run.
struct IpcSample {
    TimeSeries u;
    StateTrajectory features;
};

IpcSample ipc_sample(const Pipeline& pipeline, std::size_t n, std::uint64_t seed, const IpcOptions& options) {
    if (n < 4) throw InvalidArgument("IPC data length must be >= 4");
    TimeSeries u = uniform_input(pipeline.washout() + n, options.input_lo, options.input_hi,
                                 derive_seed(seed, "ipc-u", n), pipeline.config().n_in);
    StateTrajectory f = pipeline.features(u);
    return {std::move(u), std::move(f)};
}

// Scores every spec against one sample, sharing the factorization.
std::vector<Evaluation> ipc_scores(const IpcSample& sample, const std::vector<IpcTargetSpec>& specs,
                                   const IpcOptions& options) {
    const StateTrajectory& f = sample.features;
    std::size_t max_tau = 0;
    for (const auto& s : specs) max_tau = std::max(max_tau, s.tau);
    if (max_tau > f.first_step) throw LengthMismatch("IPC delay exceeds the washout");
    const Window w = make_window(f, {});
    const Matrix train_x = f.features.middleRows(w.train_begin, w.n_train);
    const Matrix test_x = f.features.middleRows(w.test_begin, w.n_test);
    const RidgeSolver solver(train_x, options.lambda);
    std::vector<Evaluation> out;
    out.reserve(specs.size());
    for (const auto& spec : specs) {
        const Target t = gen_legendre_target(sample.u, spec, options.input_lo, options.input_hi);
        const Vector y = aligned_target(f, t.series);
        out.push_back(score(solver, test_x, y.segment(w.train_begin, w.n_train), y.segment(w.test_begin, w.n_test)));
    }
    return out;
}

} // namespace

double ipc_component(const Pipeline& pipeline, const IpcTargetSpec& spec, std::size_t n, std::uint64_t seed,
                     const IpcOptions& options) {
    const IpcSample sample = ipc_sample(pipeline, n, seed, options);
    return ipc_scores(sample, {spec}, options).front().cor2;
}

Extrapolation ipc_extrapolate(const std::map<std::size_t, double>& raw, std::size_t feature_dim) {
    if (raw.size() < 3) throw InsufficientLengths("extrapolation needs at least 3 distinct data lengths, got " +
                                                  std::to_string(raw.size()));
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double m = double(raw.size());
    std::size_t n_max = 0;
    for (const auto& [n, c] : raw) {
        if (n == 0) throw InvalidArgument("data length 0");
        const double x = 1.0 / double(n);
        sx += x;
        sy += c;
        sxx += x * x;
        sxy += x * c;
        n_max = std::max(n_max, n);
    }
    const double det = m * sxx - sx * sx;
    Extrapolation e;
    e.slope = (m * sxy - sx * sy) / det;
    e.intercept = (sy - e.slope * sx) / m;
    e.c_inf = std::clamp(e.intercept, 0.0, 1.0);
    if (e.c_inf < ipc_noise_floor(feature_dim, n_max)) e.c_inf = 0.0;
    return e;
}

double CapacityTable::degree_sum(int k) const {
    double s = 0.0;
    for (const auto& [key, entry] : entries) {
        if (key.first == k) s += entry.fit.c_inf;
    }
    return s;
}

double CapacityTable::degree_sum_from(int k) const {
    double s = 0.0;
    for (const auto& [key, entry] : entries) {
        if (key.first >= k) s += entry.fit.c_inf;
    }
    return s;
}

CapacityTable ipc_table(const Pipeline& pipeline, const std::vector<IpcTargetSpec>& specs,
                        const std::vector<std::size_t>& lengths, std::uint64_t seed, const IpcOptions& options) {
    if (specs.empty()) throw InvalidArgument("ipc_table needs at least one target");
    CapacityTable table;
    table.feature_dim = pipeline.feature_dim();
    for (std::size_t n : lengths) {
        const IpcSample sample = ipc_sample(pipeline, n, seed, options);
        const std::vector<Evaluation> scores = ipc_scores(sample, specs, options);
        for (std::size_t i = 0; i < specs.size(); ++i) {
            table.entries[{specs[i].k, specs[i].tau}].raw[n] = scores[i].cor2;
            if (scores[i].zero_variance) ++table.zero_variance_cells;
        }
    }
    for (auto& [key, entry] : table.entries) {
        entry.fit = ipc_extrapolate(entry.raw, table.feature_dim);
        table.total += entry.fit.c_inf;
    }
    return table;
}

} // namespace rc
