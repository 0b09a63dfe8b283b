#include "rc/tasks.hpp"

#include "rc/error.hpp"
#include "rc/random.hpp"

#include <cmath>
#include <string>

namespace rc {

TimeSeries uniform_input(std::size_t length, double lo, double hi, std::uint64_t seed, std::size_t channels) {
    if (length < 1 || channels < 1) throw InvalidArgument("uniform_input needs a non-empty shape");
    Rng rng(seed);
    Matrix u(static_cast<Eigen::Index>(length), static_cast<Eigen::Index>(channels));
    for (Eigen::Index n = 0; n < u.rows(); ++n) {
        for (Eigen::Index c = 0; c < u.cols(); ++c) u(n, c) = rng.uniform(lo, hi);
    }
    return TimeSeries(std::move(u));
}

TimeSeries gen_narma(const TimeSeries& u, const NarmaParams& p) {
    const std::size_t len = u.length();
    const auto t = static_cast<std::ptrdiff_t>(p.t_delay);
    if (len < p.t_delay + 2) throw InvalidArgument("NARMA input shorter than T + 2");
    std::vector<double> y(len, 0.0);
    auto y_at = [&](std::ptrdiff_t n) { return n < 0 ? 0.0 : y[std::size_t(n)]; };
    for (std::ptrdiff_t n = 0; n + 1 < std::ptrdiff_t(len); ++n) {
        double window = 0.0;
        for (std::ptrdiff_t m = 0; m <= t; ++m) window += y_at(n - m);
        double next = p.alpha * y_at(n) + p.beta * y_at(n) * window + p.gamma * u.at(n - t + 1) * u.at(n) + p.delta;
        if (p.saturate) next = std::tanh(next);
        if (!(std::abs(next) <= kDivergenceBound)) {
            throw Diverged("|y| exceeded " + std::to_string(kDivergenceBound) + " at step " + std::to_string(n + 1));
        }
        y[std::size_t(n + 1)] = next;
    }
    return TimeSeries::from_vector(y, "y");
}

NarmaData generate_narma(std::size_t length, const NarmaParams& params, std::uint64_t seed) {
    for (int attempt = 0; attempt < kNarmaMaxAttempts; ++attempt) {
        const std::uint64_t s = seed + std::uint64_t(attempt);
        TimeSeries u = uniform_input(length, kNarmaInputLow, kNarmaInputHigh, derive_seed(s, "narma-u"));
        try {
            TimeSeries y = gen_narma(u, params);
            return NarmaData{std::move(u), std::move(y), s};
        } catch (const Diverged&) {
        }
    }
    NarmaParams saturated = params;
    saturated.saturate = true;
    TimeSeries u = uniform_input(length, kNarmaInputLow, kNarmaInputHigh, derive_seed(seed, "narma-u"));
    TimeSeries y = gen_narma(u, saturated);
    return NarmaData{std::move(u), std::move(y), seed, true};
}

Target gen_delay_target(const TimeSeries& u, std::size_t t) {
    Matrix y = Matrix::Zero(u.data().rows(), u.data().cols());
    const auto shift = Eigen::Index(t);
    if (shift < y.rows()) y.bottomRows(y.rows() - shift) = u.data().topRows(y.rows() - shift);
    return Target{TimeSeries(std::move(y)), t};
}

double legendre(int k, double x) {
    if (k < 0) throw UnsupportedDegree("negative degree");
    if (k == 0) return 1.0;
    double prev = 1.0, cur = x;
    for (int n = 1; n < k; ++n) {
        const double next = ((2.0 * n + 1.0) * x * cur - double(n) * prev) / (n + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

Target gen_legendre_target(const TimeSeries& u, const IpcTargetSpec& spec, double lo, double hi) {
    if (spec.k < 1 || spec.k > kMaxLegendreDegree) {
        throw UnsupportedDegree("degree " + std::to_string(spec.k) + " outside 1.." + std::to_string(kMaxLegendreDegree));
    }
    if (!(hi > lo)) throw InvalidArgument("input support must satisfy lo < hi");
    Matrix y = Matrix::Zero(u.data().rows(), u.data().cols());
    for (Eigen::Index n = Eigen::Index(spec.tau); n < y.rows(); ++n) {
        for (Eigen::Index c = 0; c < y.cols(); ++c) {
            const double scaled = 2.0 * (u.data()(n - Eigen::Index(spec.tau), c) - lo) / (hi - lo) - 1.0;
            y(n, c) = legendre(spec.k, scaled);
        }
    }
    return Target{TimeSeries(std::move(y)), spec.tau};
}

} // namespace rc
