#pragma once

#include "rc/types.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

namespace rc {

// Chaotic Boltzmann machine reservoir driven by phase-encoded pulse inputs
// and referenced to a square-wave clock Phi(t) = Theta(sin 2 pi t).
//
// Time is measured in clock periods and sampled on a grid of
// steps_per_cycle points per period; grid point k sits at t = k / steps_per_cycle.
// On the grid Phi is 1 on the first half of each period ([n, n + 1/2)) and 0
// on the second half, i.e. Theta(0) = 1 at the rising edge.

inline constexpr std::size_t kStepsPerCycle = 512;
inline constexpr std::size_t kCbmWarmupCycles = 20;

/// Sign in front of the clock coupling J_i. See cbm_coupling.
inline constexpr double kCouplingSign = 1.0;

/// Exponent clamp in the derivative.
inline constexpr double kExponentClamp = 500.0;

struct CbmNeuron {
    double x = 0.0;  // internal state in [0, 1]
    int s = 0;       // binary output
};

struct CbmDrive {
    double z = 0.0;  // synaptic input
    double j = 0.0;  // clock coupling
    int s_ref = 0;   // reference clock
};

/// dx/dt = (1 - 2s) (1 + exp((1 - 2s)(z + j) / t_c)).
double cbm_derivative(const CbmNeuron& neuron, const CbmDrive& drive, double t_c);

/// J = kCouplingSign * alpha_i * (s - s_ref) * (2 s_at_last_clock - 1),
/// where s_at_last_clock is the neuron output at the last integer clock time.
double cbm_coupling(const CbmNeuron& neuron, int s_ref, int s_at_last_clock, double alpha_i);

/// Reference clock on the grid.
inline int clock_at(std::size_t step, std::size_t steps_per_cycle = kStepsPerCycle) {
    return (step % steps_per_cycle) < steps_per_cycle / 2 ? 1 : 0;
}

/// Phase-encoded binary inputs. Channel c during period n equals
/// Phi(t - u_c(n) / 2), with the shift rounded to the nearest grid point.
class PulseTrain {
public:
    PulseTrain(std::size_t channels, std::size_t n_cycles, std::size_t steps_per_cycle);

    std::size_t channels() const { return channels_; }
    std::size_t cycles() const { return n_cycles_; }
    std::size_t steps_per_cycle() const { return steps_per_cycle_; }
    std::size_t total_steps() const { return n_cycles_ * steps_per_cycle_; }

    /// Phase shift of channel c in period n, in grid steps.
    long shift(std::size_t channel, std::size_t cycle) const { return shift_[cycle * channels_ + channel]; }
    void set_shift(std::size_t channel, std::size_t cycle, long steps) { shift_[cycle * channels_ + channel] = steps; }

    int value(std::size_t channel, std::size_t step) const;

private:
    std::size_t channels_;
    std::size_t n_cycles_;
    std::size_t steps_per_cycle_;
    std::vector<long> shift_;
};

/// Throws InputOutOfRange when |u| > 1 anywhere.
PulseTrain encode_input(const TimeSeries& u, std::size_t steps_per_cycle = kStepsPerCycle);

/// Output of cbm_integrate: the binary outputs S_i(t_k) at every grid point,
/// stored as per-neuron flip positions.
class CbmRecord {
public:
    CbmRecord(std::size_t neurons, std::size_t n_cycles, std::size_t steps_per_cycle);

    std::size_t neurons() const { return initial_s_.size(); }
    std::size_t cycles() const { return n_cycles_; }
    std::size_t steps_per_cycle() const { return steps_per_cycle_; }
    std::size_t total_steps() const { return n_cycles_ * steps_per_cycle_; }

    void set_initial(std::size_t neuron, int s) { initial_s_[neuron] = static_cast<std::uint8_t>(s); }
    /// S of `neuron` changes between grid points step - 1 and step.
    void add_flip(std::size_t neuron, std::uint32_t step) { flips_[neuron].push_back(step); }

    int initial(std::size_t neuron) const { return initial_s_[neuron]; }
    const std::vector<std::uint32_t>& flips(std::size_t neuron) const { return flips_[neuron]; }

    /// S_i at grid point `step`.
    int state_at(std::size_t neuron, std::size_t step) const;

    /// Dense 0/1 waveform for one neuron.
    std::vector<std::uint8_t> waveform(std::size_t neuron) const;

private:
    std::size_t n_cycles_;
    std::size_t steps_per_cycle_;
    std::vector<std::uint8_t> initial_s_;
    std::vector<std::vector<std::uint32_t>> flips_;
};

struct CbmOptions {
    /// Initial x; drawn uniform [0, 1] from config.seed when absent.
    std::optional<Vector> initial_x;
    /// When set, one CSV line "t,neuron,x,s" per neuron per grid point.
    std::ostream* trace = nullptr;
};

/// Explicit Euler with step 1 / steps_per_cycle over n_cycles periods.
/// Z is built from the previous step's outputs, x is clamped to [0, 1] and S
/// flips to 1 at x = 1 and to 0 at x = 0.
CbmRecord cbm_integrate(const ReservoirConfig& config, const WeightSet& weights, const PulseTrain& pulses,
                        std::size_t n_cycles, const CbmOptions& options = {});

/// Per period, x_hat = 2 * (fraction of grid points with S_i != S_ref) - 1.
/// A clock-locked neuron decodes to -1, an antiphase one to +1. Rows start
/// at period `warmup`.
StateTrajectory decode_states(const CbmRecord& record, std::size_t n_cycles, std::size_t warmup = 0);

} // namespace rc
