#pragma once

#include "rc/types.hpp"

#include <cstdint>

namespace rc {

/// Uniform [-1, 1] entries scaled by alpha_in. Same seed, same matrix.
Matrix init_input_weights(std::size_t n_rows, std::size_t n_cols, double alpha_in, std::uint64_t seed);

/// Places exactly round(beta_rec * n_rec^2) entries of +-1 at uniformly chosen
/// positions, then rescales to spectral radius alpha_rec. A draw whose
/// spectral radius is below 1e-12 is redrawn with seed + 1 (at most 16
/// attempts) before DegenerateMatrix is thrown.
Matrix init_reservoir_weights(std::size_t n_rec, double beta_rec, double alpha_rec, std::uint64_t seed);

/// The unnormalized ternary draw used by init_reservoir_weights.
Matrix draw_ternary(std::size_t n, std::size_t nonzeros, std::uint64_t seed);

struct PowerIterationResult {
    double radius = 0.0;
    std::size_t iterations = 0;
};

/// Power iteration for the dominant eigenvalue modulus.
///
/// Iterates a block of four vectors with a Rayleigh-Ritz step, so a dominant
/// complex pair or a +-lambda pair converges as well as a single real
/// eigenvalue does. The start block is deterministic. Throws NoConvergence
/// when the relative change of the estimate stays above rel_tol for
/// max_iter steps.
PowerIterationResult power_iteration(const Matrix& m, double rel_tol = 1e-10, std::size_t max_iter = 100000);

/// Dominant eigenvalue modulus by a dense eigensolve.
double dense_spectral_radius(const Matrix& m);

/// Power iteration, falling back to the dense eigensolve on NoConvergence.
double spectral_radius(const Matrix& m);

/// Fraction of nonzero entries.
double density(const Matrix& m);

} // namespace rc
