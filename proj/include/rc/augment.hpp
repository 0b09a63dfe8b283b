#pragma once

#include "rc/types.hpp"

#include <string>

namespace rc {

/// How input-layer nodes connect to reservoir clusters.
enum class Wiring {
    full,            ///< every cluster sees every input node
    tap_partitioned, ///< cluster c sees only the c-th contiguous range of delay taps
};

std::string to_string(Wiring w);
Wiring wiring_from_string(const std::string& s);

struct AugmentConfig {
    std::size_t d = 1;        // delay steps; 1 disables the Delay method
    double a = 1.0;           // per-hop decay, 0 < a <= 1
    bool pass_through = false;
    std::size_t m = 1;        // clusters
    Wiring wiring = Wiring::full;

    bool delay_active() const { return d > 1; }
    bool clustered() const { return m > 1; }

    /// Throws InvalidArgument or IndivisibleClusters.
    void validate(std::size_t n_in, std::size_t n_rec) const;
};

/// Input-layer node values. Column (k - 1) * n_in + i holds node (i, k),
/// i.e. a^(k-1) u_i(n - k + 1); columns are ordered by delay depth.
struct AugmentedInput {
    TimeSeries nodes;
    std::size_t n_in = 1;
    std::size_t d = 1;

    std::size_t length() const { return nodes.length(); }
    std::size_t width() const { return nodes.channels(); }
};

/// Shift register with per-hop decay: each hop multiplies by a once, so the
/// decay compounds along the chain. u(n) = 0 for n < 0.
AugmentedInput build_delay_chain(const TimeSeries& u, std::size_t d, double a);

/// Input weight scale 1 / (n_in d) applied when the Delay method is active.
double input_scale(std::size_t n_in, std::size_t d);

/// Draws W_in over all n_in * d input nodes and W_rec, honoring clusters.
///
/// With m > 1, W_rec is block diagonal with m blocks of n_rec / m nodes, each
/// drawn independently and normalized to spectral radius alpha_rec. With
/// tap-partitioned wiring, cluster c only receives input columns of the c-th
/// of m contiguous ranges. W_in is multiplied by input_scale when Delay is
/// active. Throws IndivisibleClusters when m does not divide the partitioned
/// dimension.
WeightSet build_clustered_weights(const ReservoirConfig& config, const AugmentConfig& augment);

/// [states | input-layer nodes] when pass_through, else states unchanged.
/// Input rows are taken at the same input steps as the state rows.
StateTrajectory assemble_features(const StateTrajectory& states, const AugmentedInput& input, bool pass_through);

} // namespace rc
