#pragma once

// Catalog of verifiable identities and the driver that checks one of them
// by Monte Carlo, producing a self-describing report.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "simplexgeo/geometry.hpp"
#include "simplexgeo/montecarlo.hpp"

namespace simplexgeo {

enum class Identity {
    AffineVolumeLaw,       // thm-1.1: |conv(AX)| =d |P_xi E|/kappa_k |conv(X)|
    MeanVolumeRatio,       // cor-1.2: E|conv(AX)| = V_k(E)/V_k(B) E|conv(X)|
    GramRepresentation,    // cor-1.4: |P_xi E|/kappa_k =d Gram ratios
    EllipsoidMoment,       // thm-2.1: moments of simplices in E
    MeanVolumeCoefficient, // cor-1.9: E|conv| = alpha_{d,k} V_k(E)
    BetaFactorization,     // thm-1.10
    AffinePointIntegral,   // thm-1.11
    SectionProjection,     // thm-1.12
    AffineFt,              // eq-4.3
    LinearFt,              // ft-linear
    OriginPointIntegral,   // thm-1.14
};

enum class IdentityKind { Moment, Distribution };

struct IdentityInfo {
    Identity id;
    std::string_view label;
    std::string_view description;
    IdentityKind kind;
    bool uses_p;
};

const std::vector<IdentityInfo>& identity_catalog();
const IdentityInfo& identity_info(Identity id);
/// Accepts catalog labels case-insensitively with '_' for '-' ("THM_2.1", "ft-linear").
/// Throws ValidationError for unknown labels.
Identity parse_identity(std::string_view label);

struct IdentityParams {
    int d = 2;
    int k = 1;
    double p = 0.0;
    std::vector<double> semi_axes;
    // Orthogonal frame applied to the semi-axes; identity when empty.
    std::optional<Matrix> rotation;
    // Label of the rotation preset, recorded in reports ("identity", "random(7)", "file").
    std::string rotation_label = "identity";
    PointFamily family = PointFamily::UniformBall;
    // Multiplies the closed-form constant (or the rhs samples). 1 in normal use;
    // other values let a suite check that the harness can fail.
    double constant_scale = 1.0;

    Ellipsoid ellipsoid() const;
};

struct Policy {
    double z_threshold = 4.0;
    double alpha = 0.01;
    // Cap for the deterministic per-draw residual of the Gram representation.
    double residual_tolerance = 1e-10;
};

struct SideReport {
    double value = 0.0;
    double std_error = 0.0;
    std::int64_t count = 0;
    bool exact = false;
};

struct IdentityReport {
    std::string identity;
    std::string description;
    IdentityKind kind = IdentityKind::Moment;
    IdentityParams params;
    std::int64_t n = 0;
    std::uint64_t seed = 0;
    int workers = 1;
    Policy policy;
    SideReport lhs;
    SideReport rhs;
    std::optional<double> z_score;
    std::optional<double> ks_statistic;
    std::optional<double> ks_p_value;
    std::optional<double> residual;
    bool heavy_tail = false;
    bool pass = false;
};

/// Default sample count: 10^6 for moment identities, 10^5 per side for distributional ones.
std::int64_t default_sample_count(Identity id);

/// Runs the estimators or samplers of `id` on substreams of RandomStream(seed)
/// and judges the result: |z| <= z_threshold for moments, KS p >= alpha for
/// distributions. Throws DomainError / ValidationError for invalid parameters.
IdentityReport verify_identity(Identity id, const IdentityParams& params, std::int64_t n, std::uint64_t seed,
                               const Policy& policy = {}, int workers = 1);

}  // namespace simplexgeo
