#pragma once

// Seeded random matrices for generic elements and randomized checks.

#include <random>

#include "qmaxent/states.hpp"

namespace qmaxent {

using Rng = std::mt19937_64;

/// Entries i.i.d. standard complex Gaussian.
CMatrix random_complex(Eigen::Index rows, Eigen::Index cols, Rng& rng);

/// (G + G*) / 2 for a complex Gaussian G.
CMatrix random_hermitian(Eigen::Index d, Rng& rng);

/// Haar unitary via QR of a complex Gaussian matrix with phase correction.
CMatrix random_unitary(Eigen::Index d, Rng& rng);

CVector random_unit_vector(Eigen::Index d, Rng& rng);

/// G G* / tr(G G*), full rank almost surely.
DensityMatrix random_state(Eigen::Index d, Rng& rng);

/// Unit vector in R^n.
RVector random_direction(Eigen::Index n, Rng& rng);

}  // namespace qmaxent
