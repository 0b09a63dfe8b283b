#include "rc/augment.hpp"

#include "rc/core.hpp"
#include "rc/error.hpp"
#include "rc/random.hpp"

#include <string>

namespace rc {

std::string to_string(Wiring w) {
    return w == Wiring::full ? "full" : "tap-partitioned";
}

Wiring wiring_from_string(const std::string& s) {
    if (s == "full") return Wiring::full;
    if (s == "tap-partitioned" || s == "tap") return Wiring::tap_partitioned;
    throw InvalidArgument("unknown wiring '" + s + "' (expected full or tap-partitioned)");
}

void AugmentConfig::validate(std::size_t n_in, std::size_t n_rec) const {
    if (d < 1) throw InvalidArgument("delay steps d must be >= 1");
    if (!(a > 0.0 && a <= 1.0)) throw InvalidArgument("decay a must lie in (0, 1]");
    if (m < 1) throw InvalidArgument("cluster count m must be >= 1");
    if (m > 1 && n_rec % m != 0) {
        throw IndivisibleClusters(std::to_string(m) + " clusters do not divide n_rec=" + std::to_string(n_rec));
    }
    if (m > 1 && wiring == Wiring::tap_partitioned && (n_in * d) % m != 0) {
        throw IndivisibleClusters(std::to_string(m) + " clusters do not divide " + std::to_string(n_in * d) +
                                  " input nodes");
    }
}

AugmentedInput build_delay_chain(const TimeSeries& u, std::size_t d, double a) {
    if (d < 1) throw InvalidArgument("delay steps d must be >= 1");
    if (!(a > 0.0 && a <= 1.0)) throw InvalidArgument("decay a must lie in (0, 1]");
    const std::size_t n_in = u.channels();
    const auto rows = Eigen::Index(u.length());
    Matrix nodes = Matrix::Zero(rows, Eigen::Index(n_in * d));
    std::vector<std::string> labels;
    labels.reserve(n_in * d);
    for (std::size_t k = 1; k <= d; ++k) {
        for (std::size_t i = 0; i < n_in; ++i) labels.push_back(u.labels()[i] + "[-" + std::to_string(k - 1) + "]");
    }
    for (Eigen::Index n = 0; n < rows; ++n) {
        for (std::size_t i = 0; i < n_in; ++i) {
            nodes(n, Eigen::Index(i)) = u(std::size_t(n), i);
            // Node k receives node k-1's previous value times a.
            for (std::size_t k = 1; k < d; ++k) {
                const auto col = Eigen::Index(k * n_in + i);
                nodes(n, col) = n == 0 ? 0.0 : a * nodes(n - 1, col - Eigen::Index(n_in));
            }
        }
    }
    return AugmentedInput{TimeSeries(std::move(nodes), std::move(labels)), n_in, d};
}

double input_scale(std::size_t n_in, std::size_t d) {
    if (n_in < 1 || d < 1) throw InvalidArgument("input_scale needs n_in >= 1 and d >= 1");
    return 1.0 / double(n_in * d);
}

WeightSet build_clustered_weights(const ReservoirConfig& config, const AugmentConfig& augment) {
    config.validate();
    augment.validate(config.n_in, config.n_rec);
    const std::size_t width = config.n_in * augment.d;

    WeightSet w;
    w.meta.seed = config.seed;
    w.w_in = init_input_weights(config.n_rec, width, config.alpha_in, derive_seed(config.seed, "w_in"));
    if (augment.delay_active()) w.w_in *= input_scale(config.n_in, augment.d);

    const std::uint64_t rec_seed = derive_seed(config.seed, "w_rec");
    if (!augment.clustered()) {
        w.w_rec = init_reservoir_weights(config.n_rec, config.beta_rec, config.alpha_rec, rec_seed);
    } else {
        const std::size_t block = config.n_rec / augment.m;
        w.w_rec = Matrix::Zero(Eigen::Index(config.n_rec), Eigen::Index(config.n_rec));
        for (std::size_t c = 0; c < augment.m; ++c) {
            const auto at = Eigen::Index(c * block);
            w.w_rec.block(at, at, Eigen::Index(block), Eigen::Index(block)) =
                init_reservoir_weights(block, config.beta_rec, config.alpha_rec, derive_seed(rec_seed, "cluster", c));
        }
        if (augment.wiring == Wiring::tap_partitioned) {
            const std::size_t taps = width / augment.m;
            for (std::size_t c = 0; c < augment.m; ++c) {
                const auto rows = Eigen::Index(c * block);
                for (std::size_t col = 0; col < width; ++col) {
                    if (col / taps != c) w.w_in.block(rows, Eigen::Index(col), Eigen::Index(block), 1).setZero();
                }
            }
        }
    }
    w.meta.spectral_radius = config.alpha_rec;
    w.meta.density = density(w.w_rec);
    return w;
}

StateTrajectory assemble_features(const StateTrajectory& states, const AugmentedInput& input, bool pass_through) {
    if (input.length() < states.first_step + states.length()) {
        throw LengthMismatch("input nodes cover " + std::to_string(input.length()) + " steps, states need " +
                             std::to_string(states.first_step + states.length()));
    }
    if (!pass_through) return states;
    StateTrajectory out;
    out.first_step = states.first_step;
    out.features.resize(states.features.rows(), states.features.cols() + Eigen::Index(input.width()));
    out.features.leftCols(states.features.cols()) = states.features;
    out.features.rightCols(Eigen::Index(input.width())) =
        input.nodes.data().middleRows(Eigen::Index(states.first_step), states.features.rows());
    return out;
}

} // namespace rc
