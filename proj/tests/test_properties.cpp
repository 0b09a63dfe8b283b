// Stated properties of the models that are checked as written. Some of them do
// not hold for this implementation; see README "Known failures".

#include "rc/augment.hpp"
#include "rc/cbm.hpp"
#include "rc/error.hpp"
#include "rc/tasks.hpp"

#include <doctest.h>

#include <cmath>

using namespace rc;

namespace {

ReservoirConfig cbm_rc(std::size_t n_rec, std::uint64_t seed) {
    ReservoirConfig c;
    c.n_rec = n_rec;
    c.alpha_in = 0.4321;
    c.alpha_rec = 0.5476;
    c.beta_rec = 0.7687;
    c.alpha_i = 0.5954;
    c.seed = seed;
    return c;
}

double rms(const Matrix& a, const Matrix& b) { return std::sqrt((a - b).squaredNorm() / double(a.size())); }

Matrix decoded(const ReservoirConfig& c, const WeightSet& w, const TimeSeries& u, std::size_t spc) {
    const std::size_t cycles = u.length();
    return decode_states(cbm_integrate(c, w, encode_input(u, spc), cycles), cycles, kCbmWarmupCycles).features;
}

} // namespace

TEST_SUITE("spec_properties") {

TEST_CASE("cbm echo state at the table parameters") {
    const std::size_t cycles = 60;
    for (std::uint64_t seed : {1, 2, 3}) {
        const ReservoirConfig c = cbm_rc(200, seed);
        const WeightSet w = build_clustered_weights(c, {});
        const PulseTrain pulses = encode_input(uniform_input(cycles, 0.0, 0.5, seed), kStepsPerCycle);
        CbmOptions low, high;
        low.initial_x = Vector::Constant(200, 0.1);
        high.initial_x = Vector::Constant(200, 0.9);
        const Matrix a = decode_states(cbm_integrate(c, w, pulses, cycles, low), cycles, kCbmWarmupCycles).features;
        const Matrix b = decode_states(cbm_integrate(c, w, pulses, cycles, high), cycles, kCbmWarmupCycles).features;
        CAPTURE(seed);
        CHECK(rms(a, b) < 1e-3);
    }
}

TEST_CASE("cbm coarse grid") {
    // doubling dt from 1/512 to 1/256 on a 10-neuron net
    for (std::uint64_t seed : {1, 2, 3}) {
        const ReservoirConfig c = cbm_rc(10, seed);
        const WeightSet w = build_clustered_weights(c, {});
        const TimeSeries u = uniform_input(80, 0.0, 0.5, seed);
        CAPTURE(seed);
        CHECK(rms(decoded(c, w, u, 256), decoded(c, w, u, 512)) < 1e-2);
    }
}

TEST_CASE("cbm first-order convergence") {
    // halving dt roughly halves the change
    for (std::uint64_t seed : {1, 2, 3}) {
        const ReservoirConfig c = cbm_rc(10, seed);
        const WeightSet w = build_clustered_weights(c, {});
        const TimeSeries u = uniform_input(80, 0.0, 0.5, seed);
        const Matrix d256 = decoded(c, w, u, 256), d512 = decoded(c, w, u, 512), d1024 = decoded(c, w, u, 1024);
        const double ratio = rms(d256, d512) / rms(d512, d1024);
        CAPTURE(seed);
        CHECK(ratio > 1.3);
        CHECK(ratio < 3.0);
    }
}

TEST_CASE("narma stays bounded for most seeds") {
    for (std::size_t t = 0; t <= 15; ++t) {
        NarmaParams p;
        p.t_delay = t;
        int bounded = 0;
        for (std::uint64_t seed = 1; seed <= 100; ++seed) {
            try {
                gen_narma(uniform_input(4000, kNarmaInputLow, kNarmaInputHigh, seed), p);
                ++bounded;
            } catch (const Diverged&) {
            }
        }
        CAPTURE(t);
        CHECK(bounded >= 95);
    }
}

} // TEST_SUITE
