#pragma once

// Random objects built on RandomStream: Gaussian matrices, uniform points in
// ellipsoids, Haar-distributed linear and affine subspaces, Gamma and Beta
// variates. Every sampler is a pure function of (stream state, arguments).

#include <span>

#include "simplexgeo/geometry.hpp"
#include "simplexgeo/random_stream.hpp"

namespace simplexgeo {

// Probability-zero degeneracies hit in floating point are redrawn at most this often.
inline constexpr int kMaxRedraws = 100;

struct BetaSpec {
    double alpha1 = 1.0;
    double alpha2 = 1.0;

    // Throws DomainError unless both parameters are finite and positive.
    void validate() const;
    double mean() const { return alpha1 / (alpha1 + alpha2); }
};

// A k-flat together with the constant importance weight that turns a plain
// mean over such draws into an integral against the affine Haar measure.
struct WeightedAffineSample {
    AffineSubspace subspace;
    double weight = 0.0;
};

Matrix gaussian_matrix(RandomStream& stream, int rows, int cols);

/// Point uniform in the unit d-ball: Gaussian direction, radius U^(1/d).
Vector uniform_in_ball(RandomStream& stream, int d);

/// sym_root(E) applied to a uniform point of the unit ball.
Vector uniform_in_ellipsoid(RandomStream& stream, const Ellipsoid& ellipsoid);

/// Haar-uniform k-subspace of R^d: thin QR of a d x k Gaussian matrix with R_ii > 0.
LinearSubspace haar_subspace(RandomStream& stream, int d, int k);

/// Haar-uniform orthogonal d x d matrix.
Matrix haar_orthogonal(RandomStream& stream, int d);

/// Direction L ~ Haar, offset uniform in the radius-r ball of L-perp with r the
/// largest semi-axis of E, weight kappa_{d-k} r^{d-k}. Requires 0 <= k <= d-1.
WeightedAffineSample haar_affine_sample(RandomStream& stream, const Ellipsoid& ellipsoid, int k);

/// Gamma(shape, 1). Marsaglia-Tsang for shape >= 1; shape < 1 via Gamma(shape+1) U^(1/shape).
double gamma_sample(RandomStream& stream, double shape);

/// Beta(alpha1, alpha2) as X/(X+Y) with independent Gamma variates; result in (0, 1).
double beta_sample(RandomStream& stream, const BetaSpec& spec);

/// sqrt(det(G_l^T G_l) / det(G^T G)) where G is d x k standard Gaussian and
/// G_l = diag(semi_axes) G is built from the same entries.
double coupled_gram_ratio(RandomStream& stream, std::span<const double> semi_axes, int k);

}  // namespace simplexgeo
