#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace rc {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// N samples x D channels of finite reals. Rows are time steps.
class TimeSeries {
public:
    TimeSeries() = default;
    explicit TimeSeries(Matrix data, std::vector<std::string> labels = {});

    /// Single-channel convenience constructor.
    static TimeSeries from_vector(const std::vector<double>& values, std::string label = "u");

    std::size_t length() const { return static_cast<std::size_t>(data_.rows()); }
    std::size_t channels() const { return static_cast<std::size_t>(data_.cols()); }
    bool empty() const { return data_.size() == 0; }

    double operator()(std::size_t n, std::size_t d) const { return data_(Eigen::Index(n), Eigen::Index(d)); }
    /// Value at step n, zero for n < 0.
    double at(std::ptrdiff_t n, std::size_t d = 0) const {
        return n < 0 ? 0.0 : data_(Eigen::Index(n), Eigen::Index(d));
    }

    const Matrix& data() const { return data_; }
    const std::vector<std::string>& labels() const { return labels_; }

    /// Contiguous rows [begin, begin + count).
    TimeSeries slice(std::size_t begin, std::size_t count) const;

private:
    Matrix data_;
    std::vector<std::string> labels_;
};

/// Feature rows presented to the readout. Row r corresponds to input step
/// first_step + r and holds the features after that input was consumed.
struct StateTrajectory {
    Matrix features;
    std::size_t first_step = 0;

    std::size_t length() const { return static_cast<std::size_t>(features.rows()); }
    std::size_t dim() const { return static_cast<std::size_t>(features.cols()); }
};

struct ReservoirConfig {
    std::size_t n_in = 1;
    std::size_t n_rec = 200;
    std::size_t n_out = 1;
    double alpha_in = 1.0;
    double alpha_rec = 1.0;
    double beta_rec = 0.1;
    double alpha_i = 0.0; // CBM clock coupling
    double t_c = 1.0;     // CBM temperature
    std::uint64_t seed = 0;

    /// Throws InvalidArgument when an invariant is violated.
    void validate() const;
};

struct WeightMeta {
    std::uint64_t seed = 0;
    double spectral_radius = 0.0;
    double density = 0.0;
};

struct WeightSet {
    Matrix w_in;  // n_rec x n_in_effective
    Matrix w_rec; // n_rec x n_rec
    WeightMeta meta;

    std::size_t n_rec() const { return static_cast<std::size_t>(w_rec.rows()); }
    std::size_t n_in() const { return static_cast<std::size_t>(w_in.cols()); }
};

} // namespace rc
