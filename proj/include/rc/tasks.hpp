#pragma once

#include "rc/types.hpp"

#include <cstdint>

namespace rc {

/// y(n+1) = alpha y(n) + beta y(n) sum_{m=0..T} y(n-m) + gamma u(n-T+1) u(n) + delta
struct NarmaParams {
    double alpha = 0.3;
    double beta = 0.05;
    double gamma = 1.5;
    double delta = 0.1;
    std::size_t t_delay = 10;
    /// y(n+1) = tanh(right-hand side). Keeps long delays bounded.
    bool saturate = false;

    /// Leading outputs excluded from training and evaluation.
    std::size_t burn_in() const { return t_delay + 1 > 50 ? t_delay + 1 : 50; }
};

inline constexpr double kNarmaInputLow = 0.0;
inline constexpr double kNarmaInputHigh = 0.5;
inline constexpr double kDivergenceBound = 1e3;
inline constexpr int kNarmaMaxAttempts = 32;

/// i.i.d. Uniform[lo, hi] samples, `channels` wide.
TimeSeries uniform_input(std::size_t length, double lo, double hi, std::uint64_t seed, std::size_t channels = 1);

/// Iterates the recurrence from y = 0, with u(n) = 0 for n < 0. Throws
/// Diverged when |y| exceeds 1e3.
///
/// With these coefficients and u ~ Uniform(0, 0.5) the unsaturated
/// recurrence has no bounded regime for T >= 11: the mean-field map
/// y = 0.3 y + 0.05 (T + 1) y^2 + 0.194 loses its fixed point near T = 11.
TimeSeries gen_narma(const TimeSeries& u, const NarmaParams& params);

struct NarmaData {
    TimeSeries u;
    TimeSeries y;
    std::uint64_t seed = 0; // seed that produced u
    bool saturated = false; // tanh fallback was used
};

/// Draws u ~ Uniform(0, 0.5) and runs gen_narma, retrying with seed + 1 on
/// divergence (32 attempts). When every attempt diverges, the saturated
/// recurrence is run on the original seed instead.
NarmaData generate_narma(std::size_t length, const NarmaParams& params, std::uint64_t seed);

/// A target series whose leading `valid_from` samples are padding.
struct Target {
    TimeSeries series;
    std::size_t valid_from = 0;
};

/// y(n) = u(n - t), zero before t.
Target gen_delay_target(const TimeSeries& u, std::size_t t);

struct IpcTargetSpec {
    int k = 1;           // Legendre degree
    std::size_t tau = 0; // delay
};

inline constexpr int kMaxLegendreDegree = 6;

/// Degree-k Legendre polynomial by the three-term recurrence.
double legendre(int k, double x);

/// y(n) = P_k(u~(n - tau)) with u~ the affine image of [lo, hi] on [-1, 1].
/// Throws UnsupportedDegree outside 1..6.
Target gen_legendre_target(const TimeSeries& u, const IpcTargetSpec& spec, double lo, double hi);

} // namespace rc
