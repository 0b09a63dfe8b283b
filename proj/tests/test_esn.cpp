#include "oracles.hpp"

#include "rc/core.hpp"
#include "rc/error.hpp"
#include "rc/esn.hpp"
#include "rc/tasks.hpp"

#include <doctest.h>

#include <cmath>

using namespace rc;

namespace {

WeightSet random_net(std::size_t n, std::size_t n_in, double alpha_in, double alpha_rec, double beta, std::uint64_t seed) {
    WeightSet w;
    w.w_in = init_input_weights(n, n_in, alpha_in, seed);
    w.w_rec = init_reservoir_weights(n, beta, alpha_rec, seed + 100);
    return w;
}

} // namespace

TEST_SUITE("esn") {

TEST_CASE("single step") {
    SUBCASE("zero weights") {
        WeightSet w{Matrix::Zero(4, 2), Matrix::Zero(4, 4), {}};
        const EsnState s = esn_step({Vector::Constant(4, 0.3)}, Vector::Constant(2, 5.0), w);
        CHECK(s.x.isZero(0.0));
    }
    SUBCASE("one input, no recurrence") {
        WeightSet w{Matrix::Ones(1, 1), Matrix::Zero(1, 1), {}};
        const EsnState s = esn_step({Vector::Zero(1)}, Vector::Ones(1), w);
        CHECK(s.x(0) == doctest::Approx(0.761594155955765).epsilon(1e-14));
    }
    SUBCASE("dimension checks") {
        WeightSet w{Matrix::Zero(3, 2), Matrix::Zero(3, 3), {}};
        CHECK_THROWS_AS(esn_step({Vector::Zero(3)}, Vector::Zero(1), w), DimensionMismatch);
        CHECK_THROWS_AS(esn_step({Vector::Zero(2)}, Vector::Zero(2), w), DimensionMismatch);
    }
}

TEST_CASE("matches an extended-precision loop") {
    const WeightSet w = random_net(3, 2, 0.8, 0.9, 1.0, 4);
    const TimeSeries u = uniform_input(5, -1.0, 1.0, 8, 2);
    const auto ref = oracle::esn_states(w.w_in, w.w_rec, u.data(), std::vector<long double>(3, 0.0L));
    const StateTrajectory traj = esn_run(u, w, 0);
    REQUIRE(traj.length() == 5);
    for (std::size_t n = 0; n < 5; ++n) {
        for (std::size_t i = 0; i < 3; ++i) {
            CHECK(std::abs(traj.features(Eigen::Index(n), Eigen::Index(i)) - double(ref[n][i])) < 1e-14);
        }
    }
}

TEST_CASE("trajectory alignment") {
    const WeightSet w = random_net(20, 1, 1.0, 0.9, 0.2, 3);
    const TimeSeries u = uniform_input(300, 0.0, 0.5, 5);
    const StateTrajectory all = esn_run(u, w, 0);
    const StateTrajectory tail = esn_run(u, w, 250);
    CHECK(tail.first_step == 250);
    CHECK(tail.length() == 50);
    CHECK(tail.features == all.features.bottomRows(50));

    SUBCASE("row r follows input first_step + r") {
        WeightSet feed{w.w_in, Matrix::Zero(20, 20), {}};
        const StateTrajectory t = esn_run(u, feed, 10);
        const Vector expect = (w.w_in * u(10, 0)).array().tanh();
        CHECK(Vector(t.features.row(0).transpose()) == expect);
    }
    SUBCASE("washout N - 1 leaves one row") {
        CHECK(esn_run(u, w, 299).length() == 1);
        CHECK_THROWS_AS(esn_run(u, w, 300), InvalidArgument);
    }
    SUBCASE("shifting the input shifts the trajectory") {
        const TimeSeries shifted = u.slice(1, 299);
        const StateTrajectory a = esn_run(u, w, 200);
        const StateTrajectory b = esn_run(shifted, w, 199);
        // same inputs after the washout, different transients: echo state makes them agree
        CHECK((a.features.bottomRows(50) - b.features.bottomRows(50)).cwiseAbs().maxCoeff() < 1e-8);
    }
}

TEST_CASE("constant input reaches the fixed point") {
    const WeightSet w = random_net(30, 1, 0.7, 0.8, 0.3, 9);
    const TimeSeries u(Matrix::Constant(400, 1, 0.4));
    const StateTrajectory t = esn_run(u, w, 0);
    const Vector last = t.features.row(399).transpose();
    CHECK((last - Vector(t.features.row(398).transpose())).cwiseAbs().maxCoeff() < 1e-10);

    // independent fixed-point iteration of the update map
    Vector x = Vector::Zero(30);
    for (int i = 0; i < 2000; ++i) x = (w.w_in.col(0) * 0.4 + w.w_rec * x).array().tanh();
    CHECK((last - x).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("zero input scaling equals zero input") {
    WeightSet scaled = random_net(15, 1, 0.0, 0.9, 0.3, 2);
    const TimeSeries u = uniform_input(100, 0.0, 0.5, 1);
    const TimeSeries zeros(Matrix::Zero(100, 1));
    CHECK(esn_run(u, scaled, 10).features == esn_run(zeros, scaled, 10).features);
}

TEST_CASE("bounded states") {
    const WeightSet w = random_net(50, 1, 5.0, 1.5, 0.5, 6);
    const TimeSeries u = uniform_input(500, -1.0, 1.0, 2);
    const StateTrajectory t = esn_run(u, w, 0);
    CHECK(t.features.cwiseAbs().maxCoeff() < 1.0);
    CHECK(t.features.allFinite());
}

TEST_CASE("fading memory") {
    for (std::uint64_t seed : {1, 2, 3}) {
        const WeightSet w = random_net(100, 1, 1.0, 0.95, 0.1, seed);
        const TimeSeries u = uniform_input(500, 0.0, 0.5, seed);
        const StateTrajectory a = esn_run_from(u, w, 0, Vector::Constant(100, 0.9));
        const StateTrajectory b = esn_run_from(u, w, 0, Vector::Constant(100, -0.9));
        CHECK((a.features.row(499) - b.features.row(499)).cwiseAbs().maxCoeff() < 1e-8);
    }
}

} // TEST_SUITE
