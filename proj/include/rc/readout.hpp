#pragma once

#include "rc/types.hpp"

#include <Eigen/Cholesky>

namespace rc {

inline constexpr double kDefaultLambda = 1e-6;

/// Linear output layer y = W [x; 1]. The last column of w_out is the bias.
struct Readout {
    Matrix w_out;
    double lambda = 0.0;
    std::size_t feature_dim = 0;
    double train_mse = 0.0; // mean over samples and outputs

    Vector weights(std::size_t output = 0) const { return w_out.row(Eigen::Index(output)).head(Eigen::Index(feature_dim)); }
    double bias(std::size_t output = 0) const { return w_out(Eigen::Index(output), Eigen::Index(feature_dim)); }
};

/// Factorizes the ridge normal equations once so many targets can be fit
/// against the same features.
///
/// Features are centered, which leaves the bias unpenalized:
///   W = (Xc^T Xc + lambda I)^-1 Xc^T Yc,  b = mean(y) - W mean(x).
class RidgeSolver {
public:
    /// `features` must outlive the solver. Throws SingularSystem when
    /// lambda = 0 and the Gram matrix is numerically rank-deficient.
    RidgeSolver(const Matrix& features, double lambda);

    Readout fit(const Matrix& targets) const;

    std::size_t samples() const { return std::size_t(x_.rows()); }
    std::size_t feature_dim() const { return std::size_t(x_.cols()); }

private:
    const Matrix& x_;
    Vector mean_;
    double lambda_;
    Eigen::LDLT<Matrix> ldlt_;
};

Readout train(const Matrix& features, const Matrix& targets, double lambda = kDefaultLambda);
/// `targets` has one row per trajectory row, or one per input step (rows
/// first_step .. first_step + length - 1 are used).
Readout train(const StateTrajectory& features, const TimeSeries& targets, double lambda = kDefaultLambda);

Matrix predict(const Readout& readout, const Matrix& features);
TimeSeries predict(const Readout& readout, const StateTrajectory& features);

} // namespace rc
