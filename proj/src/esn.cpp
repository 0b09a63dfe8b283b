#include "rc/esn.hpp"

#include "rc/error.hpp"

#include <string>

namespace rc {

EsnState esn_step(const EsnState& state, const Eigen::Ref<const Vector>& u, const WeightSet& weights) {
    if (u.size() != weights.w_in.cols()) {
        throw DimensionMismatch("input has " + std::to_string(u.size()) + " channels, W_in expects " +
                                std::to_string(weights.w_in.cols()));
    }
    if (state.x.size() != weights.w_rec.rows() || weights.w_in.rows() != weights.w_rec.rows()) {
        throw DimensionMismatch("state size does not match the reservoir");
    }
    EsnState next;
    next.x = (weights.w_in * u + weights.w_rec * state.x).array().tanh().matrix();
    return next;
}

StateTrajectory esn_run_from(const TimeSeries& inputs, const WeightSet& weights, std::size_t washout,
                             const Vector& initial) {
    const std::size_t n = inputs.length();
    if (washout >= n) throw InvalidArgument("washout must be shorter than the input series");
    if (inputs.channels() != weights.n_in()) throw DimensionMismatch("input channels do not match W_in");
    if (initial.size() != weights.w_rec.rows()) throw DimensionMismatch("initial state size");

    StateTrajectory out;
    out.first_step = washout;
    out.features.resize(Eigen::Index(n - washout), weights.w_rec.rows());

    // Row-major input access without copying each row.
    const Matrix& u = inputs.data();
    Vector x = initial;
    Vector pre(weights.w_rec.rows());
    for (std::size_t step = 0; step < n; ++step) {
        pre.noalias() = weights.w_in * u.row(Eigen::Index(step)).transpose();
        pre.noalias() += weights.w_rec * x;
        x = pre.array().tanh().matrix();
        if (step >= washout) out.features.row(Eigen::Index(step - washout)) = x.transpose();
    }
    return out;
}

StateTrajectory esn_run(const TimeSeries& inputs, const WeightSet& weights, std::size_t washout) {
    return esn_run_from(inputs, weights, washout, Vector::Zero(weights.w_rec.rows()));
}

} // namespace rc
