#include "rc/cbm.hpp"

#include "rc/error.hpp"
#include "rc/random.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

namespace rc {

double cbm_derivative(const CbmNeuron& neuron, const CbmDrive& drive, double t_c) {
    if (!(t_c > 0.0)) throw InvalidArgument("t_c must be positive");
    const double sign = 1.0 - 2.0 * neuron.s;
    const double arg = std::clamp(sign * (drive.z + drive.j) / t_c, -kExponentClamp, kExponentClamp);
    return sign * (1.0 + std::exp(arg));
}

double cbm_coupling(const CbmNeuron& neuron, int s_ref, int s_at_last_clock, double alpha_i) {
    return kCouplingSign * alpha_i * double(neuron.s - s_ref) * double(2 * s_at_last_clock - 1);
}

PulseTrain::PulseTrain(std::size_t channels, std::size_t n_cycles, std::size_t steps_per_cycle)
    : channels_(channels), n_cycles_(n_cycles), steps_per_cycle_(steps_per_cycle), shift_(channels * n_cycles, 0) {
    if (steps_per_cycle < 2 || steps_per_cycle % 2 != 0) throw InvalidArgument("steps_per_cycle must be even");
}

int PulseTrain::value(std::size_t channel, std::size_t step) const {
    const std::size_t cycle = step / steps_per_cycle_;
    const long k = long(step % steps_per_cycle_);
    const long period = long(steps_per_cycle_);
    long phase = (k - shift(channel, cycle)) % period;
    if (phase < 0) phase += period;
    return phase < period / 2 ? 1 : 0;
}

PulseTrain encode_input(const TimeSeries& u, std::size_t steps_per_cycle) {
    PulseTrain pulses(u.channels(), u.length(), steps_per_cycle);
    for (std::size_t n = 0; n < u.length(); ++n) {
        for (std::size_t c = 0; c < u.channels(); ++c) {
            const double v = u(n, c);
            if (std::abs(v) > 1.0) {
                throw InputOutOfRange("u=" + std::to_string(v) + " at step " + std::to_string(n) +
                                      " exceeds half a clock period of phase shift");
            }
            pulses.set_shift(c, n, std::lround(0.5 * v * double(steps_per_cycle)));
        }
    }
    return pulses;
}

CbmRecord::CbmRecord(std::size_t neurons, std::size_t n_cycles, std::size_t steps_per_cycle)
    : n_cycles_(n_cycles), steps_per_cycle_(steps_per_cycle), initial_s_(neurons, 0), flips_(neurons) {}

int CbmRecord::state_at(std::size_t neuron, std::size_t step) const {
    const auto& f = flips_[neuron];
    const auto count = std::upper_bound(f.begin(), f.end(), std::uint32_t(step)) - f.begin();
    return (initial_s_[neuron] + int(count % 2)) % 2;
}

std::vector<std::uint8_t> CbmRecord::waveform(std::size_t neuron) const {
    std::vector<std::uint8_t> w(total_steps());
    int s = initial_s_[neuron];
    std::size_t next = 0;
    const auto& f = flips_[neuron];
    for (std::size_t k = 0; k < w.size(); ++k) {
        while (next < f.size() && f[next] == k) {
            s ^= 1;
            ++next;
        }
        w[k] = static_cast<std::uint8_t>(s);
    }
    return w;
}

CbmRecord cbm_integrate(const ReservoirConfig& config, const WeightSet& weights, const PulseTrain& pulses,
                        std::size_t n_cycles, const CbmOptions& options) {
    const Eigen::Index n = weights.w_rec.rows();
    if (weights.w_in.rows() != n) throw DimensionMismatch("W_in rows do not match W_rec");
    if (std::size_t(weights.w_in.cols()) != pulses.channels()) throw DimensionMismatch("pulse channels do not match W_in");
    if (pulses.cycles() < n_cycles) throw LengthMismatch("pulse train shorter than the requested cycles");
    if (!(config.t_c > 0.0)) throw InvalidArgument("t_c must be positive");

    const std::size_t spc = pulses.steps_per_cycle();
    const double dt = 1.0 / double(spc);
    const std::size_t channels = pulses.channels();

    Vector x(n);
    if (options.initial_x) {
        if (options.initial_x->size() != n) throw DimensionMismatch("initial_x size");
        x = options.initial_x->cwiseMax(0.0).cwiseMin(1.0);
    } else {
        Rng rng(derive_seed(config.seed, "cbm-initial-x"));
        for (Eigen::Index i = 0; i < n; ++i) x(i) = rng.uniform01();
    }
    std::vector<int> s(std::size_t(n), 0);
    CbmRecord record(std::size_t(n), n_cycles, spc);
    for (Eigen::Index i = 0; i < n; ++i) {
        s[std::size_t(i)] = x(i) < 0.5 ? 0 : 1;
        record.set_initial(std::size_t(i), s[std::size_t(i)]);
    }

    Vector spm(n);       // 2 S - 1
    Vector upm(static_cast<Eigen::Index>(channels));  // 2 u^(s) - 1
    Vector z_in(n), z_rec(n);
    std::vector<int> s_last_clock(std::size_t(n), 0);
    std::vector<int> u_prev(channels, 0);
    std::vector<Eigen::Index> flipped;
    flipped.reserve(std::size_t(n));

    const double inv_tc = 1.0 / config.t_c;
    const std::size_t total = n_cycles * spc;
    for (std::size_t step = 0; step < total; ++step) {
        const int s_ref = clock_at(step, spc);
        if (step % spc == 0) {
            // Full recomputation once per period keeps incremental updates exact.
            for (Eigen::Index i = 0; i < n; ++i) spm(i) = 2.0 * s[std::size_t(i)] - 1.0;
            for (std::size_t c = 0; c < channels; ++c) {
                u_prev[c] = pulses.value(c, step);
                upm(Eigen::Index(c)) = 2.0 * u_prev[c] - 1.0;
            }
            z_in.noalias() = weights.w_in * upm;
            z_rec.noalias() = weights.w_rec * spm;
            s_last_clock = s;
        } else {
            for (std::size_t c = 0; c < channels; ++c) {
                const int v = pulses.value(c, step);
                if (v != u_prev[c]) {
                    z_in += (v ? 2.0 : -2.0) * weights.w_in.col(Eigen::Index(c));
                    u_prev[c] = v;
                }
            }
        }

        flipped.clear();
        for (Eigen::Index i = 0; i < n; ++i) {
            const std::size_t si = std::size_t(i);
            const CbmNeuron neuron{x(i), s[si]};
            const double j = cbm_coupling(neuron, s_ref, s_last_clock[si], config.alpha_i);
            const double sign = 1.0 - 2.0 * s[si];
            const double arg = std::clamp(sign * (z_in(i) + z_rec(i) + j) * inv_tc, -kExponentClamp, kExponentClamp);
            double xi = x(i) + dt * sign * (1.0 + std::exp(arg));
            if (options.trace) {
                *options.trace << double(step) * dt << ',' << i << ',' << x(i) << ',' << s[si] << '\n';
            }
            if (xi >= 1.0) {
                xi = 1.0;
                if (s[si] == 0) flipped.push_back(i);
            } else if (xi <= 0.0) {
                xi = 0.0;
                if (s[si] == 1) flipped.push_back(i);
            }
            x(i) = xi;
        }
        for (Eigen::Index i : flipped) {
            const std::size_t si = std::size_t(i);
            s[si] ^= 1;
            record.add_flip(si, std::uint32_t(step + 1));
            z_rec += (s[si] ? 2.0 : -2.0) * weights.w_rec.col(i);
        }
    }
    return record;
}

StateTrajectory decode_states(const CbmRecord& record, std::size_t n_cycles, std::size_t warmup) {
    if (n_cycles > record.cycles()) throw LengthMismatch("record covers fewer cycles than requested");
    if (warmup >= n_cycles) throw InvalidArgument("warmup must be shorter than the decoded span");
    const std::size_t spc = record.steps_per_cycle();
    StateTrajectory out;
    out.first_step = warmup;
    out.features.resize(Eigen::Index(n_cycles - warmup), Eigen::Index(record.neurons()));
    std::vector<std::uint32_t> mismatch(n_cycles);
    for (std::size_t i = 0; i < record.neurons(); ++i) {
        std::fill(mismatch.begin(), mismatch.end(), 0u);
        int s = record.initial(i);
        const auto& f = record.flips(i);
        std::size_t next = 0;
        for (std::size_t step = 0; step < n_cycles * spc; ++step) {
            while (next < f.size() && f[next] == step) {
                s ^= 1;
                ++next;
            }
            if (s != clock_at(step, spc)) ++mismatch[step / spc];
        }
        for (std::size_t c = warmup; c < n_cycles; ++c) {
            out.features(Eigen::Index(c - warmup), Eigen::Index(i)) = 2.0 * double(mismatch[c]) / double(spc) - 1.0;
        }
    }
    return out;
}

} // namespace rc
