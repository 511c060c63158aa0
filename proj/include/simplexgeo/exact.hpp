#pragma once

// Closed-form constants and moments for random simplices in balls and
// ellipsoids. Every ratio of Gamma functions is evaluated in log space and
// exponentiated once, so arguments like (k+1)(d+p) stay in range.

#include <string_view>

namespace simplexgeo {

struct Dims {
    int d = 1;
    int k = 1;

    // Throws DomainError unless d >= 1 and 0 <= k <= d.
    void validate() const;
};

// Scalar constants of the integral-geometry identities, as functions of (d, k, p).
enum class IdentityConstant {
    FtLinear,           // linear sections vs. volume, kappa_k^d / kappa_d^k
    FtAffine,           // affine sections vs. volume^(k+1)
    SectionProjection,  // affine section moments vs. projection moments
    AffineBpMoment,     // point-tuple integral vs. affine section integral
    LinearBpMoment,     // origin-anchored integral vs. linear section integral
};

std::string_view to_string(IdentityConstant id);

/// Volume of the unit ball in dimension p, pi^(p/2) / Gamma(p/2 + 1), for real p >= 0.
double ball_volume(double p);

/// log of ball_volume(p). Defined for p > -2 where Gamma(p/2 + 1) is finite and positive.
double log_ball_volume(double p);

/// Surface area p * ball_volume(p) of the unit sphere in R^p, for real p > 0.
double sphere_area(double p);
double log_sphere_area(double p);

/// prod_{j=1..k} sphere_area(q-k+j) / prod_{j=1..k} sphere_area(j), for real q > k-1.
/// Equals 1 for k = 0.
double subspace_coeff(double q, int k);
double log_subspace_coeff(double q, int k);

/// E|conv(X_0..X_k)|^p for X_i i.i.d. uniform in the unit d-ball, real p > -1.
double ball_simplex_moment(int d, int k, double p);

/// Integral of |conv(0, y_1..y_k)|^m over (B^k)^k. This is an integral over
/// the product of balls, not an expectation; divide by ball_volume(k)^k for the mean.
double origin_ball_integral(int k, double m);

/// alpha_{d,k} with E|conv(X_0..X_k)| = alpha_{d,k} V_k(E) for uniform points in an ellipsoid E.
double mean_volume_coeff(int d, int k);

/// Constant of the named identity. p is ignored for FtLinear and FtAffine.
/// Throws DomainError when (d, k, p) is outside the identity's validity range.
double identity_constant(IdentityConstant id, int d, int k, double p);

/// log of the binomial coefficient C(n, r) via lgamma.
double log_binomial(int n, int r);

}  // namespace simplexgeo
