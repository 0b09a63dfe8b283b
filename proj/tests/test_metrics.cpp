#include "oracles.hpp"

#include "rc/error.hpp"
#include "rc/metrics.hpp"
#include "rc/pipeline.hpp"
#include "rc/tasks.hpp"

#include <doctest.h>

#include <cmath>

using namespace rc;

namespace {

Pipeline linear_pipeline(std::size_t d) {
    AugmentConfig a;
    a.d = d;
    return Pipeline(ModelKind::linear, ReservoirConfig{}, a);
}

Vector column(const TimeSeries& s) { return s.data().col(0); }

} // namespace

TEST_SUITE("metrics") {

TEST_CASE("squared correlation") {
    const Vector y = column(uniform_input(500, -1, 1, 1));
    CHECK(cor2(y, y) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(cor2(Vector(-2.0 * y.array() + 3.0), y) == doctest::Approx(1.0).epsilon(1e-12));
    const Vector a = column(uniform_input(10000, 0, 1, 2));
    const Vector b = column(uniform_input(10000, 0, 1, 3));
    CHECK(cor2(a, b) < 0.002);
    const Vector noisy = y + 0.5 * column(uniform_input(500, -1, 1, 4));
    CHECK(cor2(noisy, y) == doctest::Approx(oracle::r2(noisy, y)).epsilon(1e-12));
    CHECK(cor2(noisy, y) == doctest::Approx(cor2(y, noisy)).epsilon(1e-14));

    CHECK_THROWS_AS(cor2(Vector::Constant(10, 2.0), y.head(10)), ZeroVariance);
    CHECK_THROWS_AS(cor2(y.head(10), Vector::Constant(10, 2.0)), ZeroVariance);
    CHECK(capacity_or_zero(Vector::Constant(10, 2.0), y.head(10)) == 0.0);
    CHECK_THROWS_AS(cor2(y.head(10), y.head(9)), LengthMismatch);
}

TEST_CASE("evaluation of a linear target") {
    const TimeSeries u = uniform_input(600, -1, 1, 5);
    StateTrajectory f;
    f.features = u.data().bottomRows(500);
    f.first_step = 100;
    const TimeSeries target(Matrix(3.0 * u.data().array() - 1.0));
    const Evaluation e = evaluate_target(f, target, {200, 200, 0}, 0.0);
    CHECK(e.cor2 >= 1.0 - 1e-12);
    CHECK(e.train_mse < 1e-20);
    CHECK_FALSE(e.zero_variance);
    CHECK_THROWS_AS(evaluate_target(f, target, {400, 200, 0}), LengthMismatch);
}

TEST_CASE("memory capacity") {
    McOptions opt;
    opt.n_train = 1000;
    opt.n_test = 1000;
    SUBCASE("shift-register features recover every delay") {
        const McResult r = memory_capacity(linear_pipeline(16), opt, 1);
        REQUIRE(r.cor2.size() == 16);
        CHECK(r.mc == doctest::Approx(16.0).epsilon(1e-3 / 16));
        for (double c : r.cor2) CHECK(c > 0.9999);
    }
    SUBCASE("current input is always recoverable") {
        opt.t_max = 0;
        const McResult r = memory_capacity(linear_pipeline(1), opt, 2);
        CHECK(r.cor2.size() == 1);
        CHECK(r.mc >= 0.99);
    }
    SUBCASE("delays beyond the register are lost") {
        const McResult r = memory_capacity(linear_pipeline(4), opt, 3);
        CHECK(r.mc == doctest::Approx(4.0).epsilon(0.01));
        for (std::size_t t = 4; t < 16; ++t) CHECK(r.cor2[t] < 0.01);
    }
    SUBCASE("the total is the sum of separately computed delays") {
        ReservoirConfig c;
        c.n_rec = 30;
        c.alpha_rec = 0.9;
        c.beta_rec = 0.2;
        const Pipeline p(ModelKind::esn, c, {});
        const McResult all = memory_capacity(p, opt, 4);
        double sum = 0.0;
        for (std::size_t t = 0; t <= 15; ++t) {
            const McResult one = memory_capacity(p, std::vector<std::size_t>{t}, opt, 4);
            CHECK(one.mc == all.cor2[t]);
            sum += one.mc;
        }
        CHECK(all.mc == doctest::Approx(sum).epsilon(1e-14));
        CHECK(all.mc <= 16.0);
        CHECK(all.mc >= 0.0);
    }
}

TEST_CASE("IPC components") {
    SUBCASE("identity is linearly realizable") {
        CHECK(ipc_component(linear_pipeline(1), {1, 0}, 2000, 1) > 0.999);
        CHECK(ipc_component(linear_pipeline(4), {1, 3}, 2000, 1) > 0.999);
    }
    SUBCASE("no quadratic feature in a linear model") {
        CHECK(ipc_component(linear_pipeline(1), {2, 0}, 2000, 1) < 0.05);
    }
    SUBCASE("tanh reservoir has near-zero even components") {
        ReservoirConfig c;
        c.n_rec = 50;
        c.alpha_in = 1.0;
        c.alpha_rec = 1.0;
        c.beta_rec = 0.1;
        const Pipeline p(ModelKind::esn, c, {});
        CHECK(ipc_component(p, {2, 0}, 2000, 3) < 0.05);
        CHECK(ipc_component(p, {1, 0}, 2000, 3) > 0.9);
    }
    SUBCASE("shifted support") {
        IpcOptions o;
        o.input_lo = 0.0;
        o.input_hi = 1.0;
        CHECK(ipc_component(linear_pipeline(1), {1, 0}, 2000, 1, o) > 0.999);
    }
}

TEST_CASE("extrapolation") {
    SUBCASE("constant capacities") {
        const Extrapolation e = ipc_extrapolate({{1000, 0.4}, {2000, 0.4}, {5000, 0.4}}, 10);
        CHECK(e.c_inf == doctest::Approx(0.4).epsilon(1e-12));
        CHECK(std::abs(e.slope) < 1e-9);
    }
    SUBCASE("closed-form two-parameter fit") {
        const std::map<std::size_t, double> raw{{1000, 0.3}, {5000, 0.14}, {10000, 0.12}};
        const auto [c_inf, b] = oracle::fit_inverse_n(raw);
        const Extrapolation e = ipc_extrapolate(raw, 1);
        CHECK(e.intercept == doctest::Approx(c_inf).epsilon(1e-12));
        CHECK(e.slope == doctest::Approx(b).epsilon(1e-12));
        CHECK(e.c_inf == doctest::Approx(c_inf).epsilon(1e-12));
    }
    SUBCASE("pure noise floors to zero") {
        std::map<std::size_t, double> raw;
        for (std::size_t n : ipc_default_lengths()) raw[n] = 10.0 / double(n);
        CHECK(ipc_extrapolate(raw, 10).c_inf == 0.0);
    }
    SUBCASE("clipped to the unit interval") {
        CHECK(ipc_extrapolate({{100, 1.0}, {200, 1.2}, {400, 1.4}}, 1).c_inf == 1.0);
        CHECK(ipc_extrapolate({{100, 0.5}, {200, 0.2}, {400, 0.05}}, 1).c_inf == 0.0);
    }
    SUBCASE("noise floor") {
        CHECK(ipc_noise_floor(200, 20000) == doctest::Approx(0.015));
        const Extrapolation e = ipc_extrapolate({{1000, 0.01}, {5000, 0.01}, {20000, 0.01}}, 200);
        CHECK(e.c_inf == 0.0);
        CHECK(e.intercept == doctest::Approx(0.01));
    }
    SUBCASE("needs three lengths") {
        CHECK_THROWS_AS(ipc_extrapolate({{1000, 0.1}, {2000, 0.1}}, 1), InsufficientLengths);
    }
}

TEST_CASE("capacity table") {
    const std::vector<std::size_t> lengths{1000, 2500, 5000};
    SUBCASE("grid layout") {
        const auto g = ipc_grid();
        CHECK(g.size() == 96);
        CHECK(g.front().k == 1);
        CHECK(g.front().tau == 0);
        CHECK(g.back().k == 6);
        CHECK(g.back().tau == 15);
        CHECK(ipc_default_lengths().size() == 7);
    }
    SUBCASE("one linear tap concentrates at degree one") {
        const CapacityTable t = ipc_table(linear_pipeline(1), ipc_grid(), lengths, 1);
        CHECK(t.feature_dim == 1);
        CHECK(t.degree_sum(1) == doctest::Approx(1.0).epsilon(0.01));
        CHECK(t.degree_sum_from(2) < 0.05); // 80 noise cells near the floor
        CHECK(t.total <= 1.05);
        double sum = 0.0;
        for (const auto& [key, e] : t.entries) {
            CHECK(e.fit.c_inf >= 0.0);
            CHECK(e.fit.c_inf <= 1.0);
            CHECK(e.raw.size() == 3);
            sum += e.fit.c_inf;
        }
        CHECK(t.total == doctest::Approx(sum).epsilon(1e-14));
        CHECK(t.at(1, 0) > 0.999);
    }
    SUBCASE("silent reservoir reports zero") {
        ReservoirConfig c;
        c.n_rec = 10;
        c.alpha_in = 0.0;
        const CapacityTable t = ipc_table(Pipeline(ModelKind::esn, c, {}), ipc_grid(2, 3), lengths, 1);
        CHECK(t.total == 0.0);
        CHECK(t.zero_variance_cells == 8 * 3);
    }
    SUBCASE("budget") {
        ReservoirConfig c;
        c.n_rec = 20;
        c.alpha_rec = 0.9;
        c.beta_rec = 0.2;
        const CapacityTable t = ipc_table(Pipeline(ModelKind::esn, c, {}), ipc_grid(), lengths, 2);
        CHECK(t.total <= 1.05 * double(t.feature_dim));
        CHECK(t.total > 0.0);
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(ipc_table(linear_pipeline(1), {}, lengths, 1), InvalidArgument);
        CHECK_THROWS_AS(ipc_table(linear_pipeline(1), ipc_grid(), {1000, 2000}, 1), InsufficientLengths);
    }
}

} // TEST_SUITE
