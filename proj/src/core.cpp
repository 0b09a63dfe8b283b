#include "rc/core.hpp"

#include "rc/error.hpp"
#include "rc/random.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace rc {

TimeSeries::TimeSeries(Matrix data, std::vector<std::string> labels)
    : data_(std::move(data)), labels_(std::move(labels)) {
    if (data_.rows() < 1 || data_.cols() < 1) {
        throw InvalidArgument("time series needs at least one sample and one channel");
    }
    if (!data_.allFinite()) {
        throw InvalidArgument("time series contains non-finite values");
    }
    if (labels_.empty()) {
        for (Eigen::Index d = 0; d < data_.cols(); ++d) labels_.push_back("ch" + std::to_string(d));
    }
    if (labels_.size() != static_cast<std::size_t>(data_.cols())) {
        throw DimensionMismatch("label count does not match channel count");
    }
}

TimeSeries TimeSeries::from_vector(const std::vector<double>& values, std::string label) {
    Matrix m(static_cast<Eigen::Index>(values.size()), 1);
    for (std::size_t i = 0; i < values.size(); ++i) m(Eigen::Index(i), 0) = values[i];
    return TimeSeries(std::move(m), {std::move(label)});
}

TimeSeries TimeSeries::slice(std::size_t begin, std::size_t count) const {
    if (begin + count > length()) throw LengthMismatch("slice exceeds series length");
    return TimeSeries(data_.middleRows(Eigen::Index(begin), Eigen::Index(count)), labels_);
}

void ReservoirConfig::validate() const {
    if (n_in < 1 || n_rec < 1 || n_out < 1) throw InvalidArgument("n_in, n_rec and n_out must be >= 1");
    if (!(beta_rec > 0.0 && beta_rec <= 1.0)) throw InvalidArgument("beta_rec must lie in (0, 1]");
    if (!(alpha_rec > 0.0)) throw InvalidArgument("alpha_rec must be positive");
    if (!(t_c > 0.0)) throw InvalidArgument("t_c must be positive");
    if (!std::isfinite(alpha_in) || !std::isfinite(alpha_i)) throw InvalidArgument("non-finite intensity");
}

Matrix init_input_weights(std::size_t n_rows, std::size_t n_cols, double alpha_in, std::uint64_t seed) {
    if (n_rows < 1 || n_cols < 1) throw InvalidArgument("input weight matrix must be non-empty");
    Rng rng(seed);
    Matrix w(static_cast<Eigen::Index>(n_rows), static_cast<Eigen::Index>(n_cols));
    // Row-major fill order so the draw does not depend on Eigen's storage.
    for (Eigen::Index i = 0; i < w.rows(); ++i) {
        for (Eigen::Index j = 0; j < w.cols(); ++j) w(i, j) = rng.uniform(-1.0, 1.0) * alpha_in;
    }
    return w;
}

Matrix draw_ternary(std::size_t n, std::size_t nonzeros, std::uint64_t seed) {
    const std::size_t cells = n * n;
    if (nonzeros > cells) throw InvalidArgument("more nonzeros than matrix entries");
    Rng rng(seed);
    std::vector<std::size_t> idx(cells);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    // Partial Fisher-Yates: the first `nonzeros` slots are a uniform sample
    // without replacement.
    for (std::size_t k = 0; k < nonzeros; ++k) {
        const std::size_t pick = k + static_cast<std::size_t>(rng.below(cells - k));
        std::swap(idx[k], idx[pick]);
    }
    Matrix w = Matrix::Zero(Eigen::Index(n), Eigen::Index(n));
    for (std::size_t k = 0; k < nonzeros; ++k) {
        w(Eigen::Index(idx[k] / n), Eigen::Index(idx[k] % n)) = rng.coin() ? 1.0 : -1.0;
    }
    return w;
}

Matrix init_reservoir_weights(std::size_t n_rec, double beta_rec, double alpha_rec, std::uint64_t seed) {
    if (n_rec < 1) throw InvalidArgument("n_rec must be >= 1");
    if (!(beta_rec > 0.0 && beta_rec <= 1.0)) throw InvalidArgument("beta_rec must lie in (0, 1]");
    const auto nonzeros = static_cast<std::size_t>(std::llround(beta_rec * double(n_rec * n_rec)));
    constexpr int kMaxAttempts = 16;
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        Matrix w = draw_ternary(n_rec, nonzeros, seed + std::uint64_t(attempt));
        const double radius = spectral_radius(w);
        if (radius >= 1e-12) return w * (alpha_rec / radius);
    }
    throw DegenerateMatrix("spectral radius below 1e-12 after " + std::to_string(kMaxAttempts) +
                           " draws (n_rec=" + std::to_string(n_rec) + ", nonzeros=" + std::to_string(nonzeros) + ")");
}

namespace {

// Largest modulus among the eigenvalues of a small dense matrix.
double max_modulus(const Matrix& h) {
    if (h.rows() == 1) return std::abs(h(0, 0));
    Eigen::EigenSolver<Matrix> es(h, false);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

} // namespace

PowerIterationResult power_iteration(const Matrix& m, double rel_tol, std::size_t max_iter) {
    if (m.rows() != m.cols()) throw DimensionMismatch("spectral radius needs a square matrix");
    const Eigen::Index n = m.rows();
    if (n == 0) return {0.0, 0};
    // Subspace iteration with a Rayleigh-Ritz projection. A block of four
    // captures complex pairs and +-lambda pairs on the spectral circle.
    const Eigen::Index block = std::min<Eigen::Index>(n, 4);
    Matrix v(n, block);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < block; ++j) {
            // Deterministic, generic start block.
            v(i, j) = std::cos(double((i + 1) * (j + 1)) * 0.7548776662466927) + (j == 0 ? 1.0 : 0.0);
        }
    }
    Eigen::HouseholderQR<Matrix> qr(v);
    v = qr.householderQ() * Matrix::Identity(n, block);

    double prev = -1.0;
    int settled = 0;
    for (std::size_t it = 1; it <= max_iter; ++it) {
        Matrix w = m * v;
        const double scale = w.norm();
        if (scale == 0.0 || !std::isfinite(scale)) return {0.0, it};
        const Matrix h = v.transpose() * w;
        const double est = max_modulus(h);
        if (est < 1e-300) {
            // Iterates collapsing to zero: nilpotent on the start block.
            if (scale < 1e-200) return {0.0, it};
        }
        if (prev >= 0.0 && std::abs(est - prev) <= rel_tol * std::max(est, 1e-300)) {
            if (++settled >= 3) return {est, it};
        } else {
            settled = 0;
        }
        prev = est;
        qr.compute(w);
        v = qr.householderQ() * Matrix::Identity(n, block);
    }
    throw NoConvergence("power iteration did not reach relative tolerance " + std::to_string(rel_tol));
}

double dense_spectral_radius(const Matrix& m) {
    if (m.rows() != m.cols()) throw DimensionMismatch("spectral radius needs a square matrix");
    if (m.rows() == 0) return 0.0;
    return max_modulus(m);
}

double spectral_radius(const Matrix& m) {
    try {
        return power_iteration(m).radius;
    } catch (const NoConvergence&) {
        return dense_spectral_radius(m);
    }
}

double density(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    return double((m.array() != 0.0).count()) / double(m.size());
}

} // namespace rc
