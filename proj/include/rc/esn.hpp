#pragma once

#include "rc/types.hpp"

namespace rc {

/// Internal ESN state; every component lies in (-1, 1) after one update.
struct EsnState {
    Vector x;
};

/// x(n+1) = tanh(W_in u(n) + W_rec x(n)). No bias, no leak.
EsnState esn_step(const EsnState& state, const Eigen::Ref<const Vector>& u, const WeightSet& weights);

inline constexpr std::size_t kDefaultWashout = 200;

/// Runs from the zero state over all N inputs. Row r of the result is the
/// state produced by input step washout + r, i.e. x(washout + r + 1).
StateTrajectory esn_run(const TimeSeries& inputs, const WeightSet& weights, std::size_t washout = kDefaultWashout);

/// Same as esn_run but from a given initial state.
StateTrajectory esn_run_from(const TimeSeries& inputs, const WeightSet& weights, std::size_t washout,
                             const Vector& initial);

} // namespace rc
