#include "rc/readout.hpp"

#include "rc/error.hpp"

#include <string>

namespace rc {

RidgeSolver::RidgeSolver(const Matrix& features, double lambda) : x_(features), lambda_(lambda) {
    if (features.rows() < 2) throw InvalidArgument("ridge regression needs at least two samples");
    if (!(lambda >= 0.0)) throw InvalidArgument("lambda must be >= 0");
    mean_ = features.colwise().mean().transpose();
    const Eigen::Index f = features.cols();
    Matrix gram(f, f);
    if (f > 0) {
        const Matrix centered = features.rowwise() - mean_.transpose();
        gram.setZero();
        gram.selfadjointView<Eigen::Lower>().rankUpdate(centered.transpose());
        gram = gram.selfadjointView<Eigen::Lower>();
        gram.diagonal().array() += lambda;
    }
    ldlt_.compute(gram);
    if (f > 0) {
        const double scale = gram.diagonal().cwiseAbs().maxCoeff();
        const Vector pivots = ldlt_.vectorD();
        const bool broken = ldlt_.info() != Eigen::Success || pivots.minCoeff() <= 1e-13 * scale;
        if (broken && (lambda == 0.0 || ldlt_.info() != Eigen::Success)) {
            throw SingularSystem("Gram matrix of " + std::to_string(f) +
                                 " features is rank-deficient; raise lambda");
        }
    }
}

Readout RidgeSolver::fit(const Matrix& targets) const {
    if (targets.rows() != x_.rows()) {
        throw LengthMismatch("targets have " + std::to_string(targets.rows()) + " rows, features " +
                             std::to_string(x_.rows()));
    }
    const Eigen::Index f = x_.cols();
    const Vector y_mean = targets.colwise().mean().transpose();
    Readout r;
    r.lambda = lambda_;
    r.feature_dim = std::size_t(f);
    r.w_out.resize(targets.cols(), f + 1);
    if (f > 0) {
        // X_c^T Y_c = X^T Y - N mean_x mean_y^T
        Matrix rhs = x_.transpose() * targets;
        rhs.noalias() -= double(x_.rows()) * mean_ * y_mean.transpose();
        const Matrix w = ldlt_.solve(rhs); // F x n_out
        r.w_out.leftCols(f) = w.transpose();
        r.w_out.col(f) = y_mean - w.transpose() * mean_;
    } else {
        r.w_out.col(0) = y_mean;
    }
    const Matrix residual = predict(r, x_) - targets;
    r.train_mse = residual.squaredNorm() / double(residual.size());
    return r;
}

Readout train(const Matrix& features, const Matrix& targets, double lambda) {
    return RidgeSolver(features, lambda).fit(targets);
}

Readout train(const StateTrajectory& features, const TimeSeries& targets, double lambda) {
    const auto rows = Eigen::Index(features.length());
    if (targets.data().rows() == rows) return train(features.features, targets.data(), lambda);
    // A target indexed by input step: take the rows the trajectory covers.
    if (targets.length() < features.first_step + features.length()) {
        throw LengthMismatch("target has " + std::to_string(targets.length()) + " steps, trajectory ends at step " +
                             std::to_string(features.first_step + features.length()));
    }
    return train(features.features, targets.data().middleRows(Eigen::Index(features.first_step), rows), lambda);
}

Matrix predict(const Readout& readout, const Matrix& features) {
    const auto f = Eigen::Index(readout.feature_dim);
    if (features.cols() != f) {
        throw DimensionMismatch("readout expects " + std::to_string(f) + " features, got " +
                                std::to_string(features.cols()));
    }
    Matrix y = features * readout.w_out.leftCols(f).transpose();
    y.rowwise() += readout.w_out.col(f).transpose();
    return y;
}

TimeSeries predict(const Readout& readout, const StateTrajectory& features) {
    return TimeSeries(predict(readout, features.features));
}

} // namespace rc
