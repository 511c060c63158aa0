#pragma once

// Monte Carlo estimators for both sides of the moment and integral
// identities, and paired samplers for the distributional ones. Every
// estimator is deterministic in (stream identity, arguments) and independent
// of the worker count.

#include <cstdint>
#include <string>
#include <vector>

#include "simplexgeo/geometry.hpp"
#include "simplexgeo/random_stream.hpp"
#include "simplexgeo/sampling.hpp"
#include "simplexgeo/stats.hpp"

namespace simplexgeo {

// Exponents below this have no variance guarantee near the lower end of
// their validity range; reports carry a flag instead of a certificate.
inline constexpr double kHeavyTailExponent = -0.5;

struct EstimateReport {
    double value = 0.0;
    double std_error = 0.0;
    std::int64_t count = 0;
    std::uint64_t seed = 0;
    std::string label;
    bool heavy_tail = false;
    // True when the value came from a closed form rather than sampling.
    bool exact = false;

    Measurement measurement() const { return {value, std_error}; }
};

enum class PointFamily { UniformBall, Gaussian };

std::string_view to_string(PointFamily family);

struct SamplePair {
    std::vector<double> lhs;
    std::vector<double> rhs;
};

/// E|conv(X_0..X_k)|^p, X_i i.i.d. uniform in E.
EstimateReport estimate_simplex_moment(const RandomStream& stream, const Ellipsoid& ellipsoid, int k, double p,
                                       std::int64_t n, int workers = 1);

/// E|conv(A X_0..A X_k)|^p with A = sym_root(E) and X_i i.i.d. from `family`.
/// For the unit ball this is the plain moment of the family.
EstimateReport estimate_family_volume_moment(const RandomStream& stream, const Ellipsoid& ellipsoid, int k,
                                             double p, PointFamily family, std::int64_t n, int workers = 1);

/// E|conv(0, X_1..X_k)|^p, X_i i.i.d. uniform in E. Requires p > -d + k.
EstimateReport estimate_origin_moment(const RandomStream& stream, const Ellipsoid& ellipsoid, int k, double p,
                                      std::int64_t n, int workers = 1);

/// Mean of |P_L E|^p over Haar L. Exact for balls and for k = d.
EstimateReport estimate_projection_moment(const RandomStream& stream, const Ellipsoid& ellipsoid, int k,
                                          double p, std::int64_t n, int workers = 1);

/// Integral of |E cap L|^q over the linear Grassmannian (a probability
/// measure, so the mean is the integral). Exact for balls and for k = d.
EstimateReport estimate_linear_section_integral(const RandomStream& stream, const Ellipsoid& ellipsoid, int k,
                                                double q, std::int64_t n, int workers = 1);

/// Integral of |E cap S|^q over the affine Grassmannian. Flats that miss E
/// contribute 0 for every q, so q = 0 integrates the hitting indicator.
EstimateReport estimate_affine_section_integral(const RandomStream& stream, const Ellipsoid& ellipsoid, int k,
                                                double q, std::int64_t n, int workers = 1);

/// V_k(E) from the mean projection volume. Exact for balls, k = 0 and k = d.
EstimateReport estimate_intrinsic_volume(const RandomStream& stream, const Ellipsoid& ellipsoid, int k,
                                         std::int64_t n, int workers = 1);

/// lhs: |conv(A X_0..A X_k)| with A = sym_root(E) and X_i from `family`.
/// rhs: |P_xi E| / kappa_k * |conv(X'_0..X'_k)| with independent Haar xi.
/// The two sides use independent substreams.
SamplePair sample_affine_volume_pair(const RandomStream& stream, const Ellipsoid& ellipsoid, int k,
                                     std::int64_t n, PointFamily family, int workers = 1);

/// lhs: (k!)^2 eta (1-eta)^k |conv(X_0..X_k)|^2, X_i uniform in E.
/// rhs: (1-eta')^k eta_1..eta_k * coupled_gram_ratio(semi-axes, k)^2.
SamplePair sample_beta_factorization_pair(const RandomStream& stream, const Ellipsoid& ellipsoid, int k,
                                          std::int64_t n, int workers = 1);

struct GramRatioSamples {
    SamplePair samples;
    // max over lhs draws of |gram_factor - projection_volume/kappa_k| / gram_factor
    double max_relative_residual = 0.0;
};

/// lhs: gram_factor(sym_root(E), G) for Gaussian G (checked per draw against the
/// projection volume of span G). rhs: coupled_gram_ratio(semi-axes(E), k).
GramRatioSamples sample_gram_ratio_pair(const RandomStream& stream, const Ellipsoid& ellipsoid, int k,
                                        std::int64_t n, int workers = 1);

/// Beta parameters of the factorization: eta and eta' ~ B(d/2+1, kd/2),
/// eta_i ~ B((d-k+i)/2, (k-i)/2 + 1) for i = 1..k.
struct BetaFactorSpecs {
    BetaSpec eta;
    std::vector<BetaSpec> factors;
};
BetaFactorSpecs beta_factor_specs(int d, int k);

}  // namespace simplexgeo
