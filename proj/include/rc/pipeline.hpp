#pragma once

#include "rc/augment.hpp"
#include "rc/cbm.hpp"
#include "rc/types.hpp"

#include <string>

namespace rc {

enum class ModelKind {
    esn,
    cbm,
    linear, ///< no reservoir; features are the input-layer nodes only
};

std::string to_string(ModelKind k);
ModelKind model_from_string(const std::string& s);

/// A reservoir model with its network augmentations and drawn weights,
/// mapping an input series to readout features.
class Pipeline {
public:
    /// washout defaults to 200 steps for the ESN and 20 periods for the CBM.
    Pipeline(ModelKind kind, ReservoirConfig config, AugmentConfig augment, std::size_t washout = npos);

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    ModelKind kind() const { return kind_; }
    const ReservoirConfig& config() const { return config_; }
    const AugmentConfig& augment() const { return augment_; }
    const WeightSet& weights() const { return weights_; }
    std::size_t washout() const { return washout_; }

    /// Number of readout features F.
    std::size_t feature_dim() const;

    /// Rows for input steps washout .. N-1.
    StateTrajectory features(const TimeSeries& u) const;

    /// CBM integration grid; ignored by the other models.
    std::size_t steps_per_cycle = kStepsPerCycle;

private:
    ModelKind kind_;
    ReservoirConfig config_;
    AugmentConfig augment_;
    WeightSet weights_;
    std::size_t washout_;
};

} // namespace rc
