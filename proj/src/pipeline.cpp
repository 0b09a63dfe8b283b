#include "rc/pipeline.hpp"

#include "rc/error.hpp"
#include "rc/esn.hpp"

namespace rc {

std::string to_string(ModelKind k) {
    switch (k) {
    case ModelKind::esn: return "esn";
    case ModelKind::cbm: return "cbm";
    case ModelKind::linear: return "linear";
    }
    return "?";
}

ModelKind model_from_string(const std::string& s) {
    if (s == "esn") return ModelKind::esn;
    if (s == "cbm") return ModelKind::cbm;
    if (s == "linear") return ModelKind::linear;
    throw InvalidArgument("unknown model '" + s + "' (expected esn, cbm or linear)");
}

Pipeline::Pipeline(ModelKind kind, ReservoirConfig config, AugmentConfig augment, std::size_t washout)
    : kind_(kind), config_(config), augment_(augment) {
    config_.validate();
    augment_.validate(config_.n_in, config_.n_rec);
    if (kind_ == ModelKind::linear) augment_.pass_through = true;
    else weights_ = build_clustered_weights(config_, augment_);
    if (washout == npos) washout = kind_ == ModelKind::cbm ? kCbmWarmupCycles : kDefaultWashout;
    washout_ = washout;
}

std::size_t Pipeline::feature_dim() const {
    const std::size_t inputs = augment_.pass_through ? config_.n_in * augment_.d : 0;
    return (kind_ == ModelKind::linear ? 0 : config_.n_rec) + inputs;
}

StateTrajectory Pipeline::features(const TimeSeries& u) const {
    if (u.channels() != config_.n_in) throw DimensionMismatch("input channels do not match n_in");
    if (washout_ >= u.length()) throw InvalidArgument("input shorter than the washout");
    const AugmentedInput nodes = build_delay_chain(u, augment_.d, augment_.a);

    StateTrajectory states;
    switch (kind_) {
    case ModelKind::esn:
        states = esn_run(nodes.nodes, weights_, washout_);
        break;
    case ModelKind::cbm: {
        const PulseTrain pulses = encode_input(nodes.nodes, steps_per_cycle);
        const CbmRecord record = cbm_integrate(config_, weights_, pulses, u.length());
        states = decode_states(record, u.length(), washout_);
        break;
    }
    case ModelKind::linear:
        states.first_step = washout_;
        states.features.resize(Eigen::Index(u.length() - washout_), 0);
        break;
    }
    return assemble_features(states, nodes, augment_.pass_through);
}

} // namespace rc
