#include "simplexgeo/identity.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "simplexgeo/errors.hpp"
#include "simplexgeo/exact.hpp"
#include "simplexgeo/running_moments.hpp"
#include "simplexgeo/stats.hpp"

namespace simplexgeo {
namespace {

SideReport side(const EstimateReport& estimate, double scale = 1.0) {
    return {scale * estimate.value, std::abs(scale) * estimate.std_error, estimate.count, estimate.exact};
}

SideReport exact_side(double value, std::int64_t n) { return {value, 0.0, n, true}; }

Measurement as_measurement(const SideReport& s) { return {s.value, s.std_error}; }

void judge_moment(IdentityReport& report) {
    report.z_score = z_compare(as_measurement(report.lhs), as_measurement(report.rhs));
    report.pass = std::abs(*report.z_score) <= report.policy.z_threshold;
}

void judge_distribution(IdentityReport& report, SamplePair& pair, double scale) {
    if (scale != 1.0) {
        for (double& v : pair.rhs) v *= scale;
    }
    auto summary = [](const std::vector<double>& values) {
        RunningMoments moments;
        for (double v : values) moments.push(v);
        return SideReport{moments.mean(), moments.std_error(), moments.count(), false};
    };
    report.lhs = summary(pair.lhs);
    report.rhs = summary(pair.rhs);
    const KsResult ks = ks_two_sample(pair.lhs, pair.rhs);
    report.ks_statistic = ks.statistic;
    report.ks_p_value = ks.p_value;
    report.pass = ks.p_value >= report.policy.alpha;
}

void require_k_range(const IdentityParams& params, int min_k) {
    if (!(params.k >= min_k && params.k <= params.d))
        throw DomainError("k must satisfy " + std::to_string(min_k) + " <= k <= d, got k=" + std::to_string(params.k) +
                          ", d=" + std::to_string(params.d));
}

std::string normalize(std::string_view label) {
    std::string out;
    out.reserve(label.size());
    for (char c : label) {
        out.push_back(c == '_' ? '-' : static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    return out;
}

}  // namespace

const std::vector<IdentityInfo>& identity_catalog() {
    static const std::vector<IdentityInfo> catalog = {
        {Identity::AffineVolumeLaw, "thm-1.1",
         "simplex volume under a linear map equals in law the projection factor times the original volume",
         IdentityKind::Distribution, false},
        {Identity::MeanVolumeRatio, "cor-1.2",
         "mean transformed volume equals V_k(E)/V_k(B) times the mean original volume", IdentityKind::Moment, false},
        {Identity::GramRepresentation, "cor-1.4",
         "projection factor equals in law the coupled Gaussian Gram-determinant ratio", IdentityKind::Distribution,
         false},
        {Identity::EllipsoidMoment, "thm-2.1",
         "p-th simplex moment in an ellipsoid equals the ball moment times the projection moment ratio",
         IdentityKind::Moment, true},
        {Identity::MeanVolumeCoefficient, "cor-1.9",
         "mean simplex volume in an ellipsoid equals alpha_{d,k} times V_k(E)", IdentityKind::Moment, false},
        {Identity::BetaFactorization, "thm-1.10",
         "Beta-weighted squared simplex volume equals in law a product of Beta variables and the Gram ratio",
         IdentityKind::Distribution, false},
        {Identity::AffinePointIntegral, "thm-1.11",
         "integral of |conv|^p over E^(k+1) equals a constant times the affine section integral of order p+d+1",
         IdentityKind::Moment, true},
        {Identity::SectionProjection, "thm-1.12",
         "affine section integral of order p+d+1 is proportional to |E|^(k+1) times the projection moment",
         IdentityKind::Moment, true},
        {Identity::AffineFt, "eq-4.3", "affine section integral of order d+1 is a constant times |E|^(k+1)",
         IdentityKind::Moment, false},
        {Identity::LinearFt, "ft-linear", "linear section integral of order d is kappa_k^d/kappa_d^k times |E|^k",
         IdentityKind::Moment, false},
        {Identity::OriginPointIntegral, "thm-1.14",
         "origin-anchored simplex integral equals a constant times the linear section integral of order p+d",
         IdentityKind::Moment, true},
    };
    return catalog;
}

const IdentityInfo& identity_info(Identity id) {
    for (const auto& info : identity_catalog()) {
        if (info.id == id) return info;
    }
    throw ValidationError("identity missing from catalog");
}

Identity parse_identity(std::string_view label) {
    const std::string wanted = normalize(label);
    for (const auto& info : identity_catalog()) {
        if (info.label == wanted) return info.id;
    }
    throw ValidationError("unknown identity '" + std::string(label) + "'");
}

Ellipsoid IdentityParams::ellipsoid() const {
    if (!(d >= 1)) throw DomainError("dimension d must be >= 1, got " + std::to_string(d));
    if (static_cast<int>(semi_axes.size()) != d) {
        throw ValidationError("expected " + std::to_string(d) + " semi-axes, got " + std::to_string(semi_axes.size()));
    }
    return Ellipsoid::from_semiaxes(semi_axes, rotation);
}

std::int64_t default_sample_count(Identity id) {
    return identity_info(id).kind == IdentityKind::Moment ? 1'000'000 : 100'000;
}

IdentityReport verify_identity(Identity id, const IdentityParams& params, std::int64_t n, std::uint64_t seed,
                               const Policy& policy, int workers) {
    const IdentityInfo& info = identity_info(id);
    if (!(n >= 2)) throw DomainError("sample count must be >= 2, got " + std::to_string(n));
    if (!(workers >= 1)) throw DomainError("workers must be >= 1");
    const Ellipsoid ellipsoid = params.ellipsoid();
    const int d = params.d;
    const int k = params.k;
    const double p = params.p;
    const double scale = params.constant_scale;

    IdentityReport report;
    report.identity = std::string(info.label);
    report.description = std::string(info.description);
    report.kind = info.kind;
    report.params = params;
    report.n = n;
    report.seed = seed;
    report.workers = workers;
    report.policy = policy;
    report.heavy_tail = info.uses_p && p < kHeavyTailExponent;

    const RandomStream root(seed);
    const RandomStream lhs_stream = root.split(0);
    const RandomStream rhs_stream = root.split(1);

    switch (id) {
        case Identity::AffineVolumeLaw: {
            require_k_range(params, 1);
            auto pair = sample_affine_volume_pair(root, ellipsoid, k, n, params.family, workers);
            judge_distribution(report, pair, scale);
            break;
        }
        case Identity::MeanVolumeRatio: {
            require_k_range(params, 1);
            report.lhs = side(estimate_family_volume_moment(lhs_stream, ellipsoid, k, 1.0, params.family, n, workers));
            const auto vk = estimate_intrinsic_volume(rhs_stream, ellipsoid, k, n, workers);
            const double ratio = vk.value / ball_intrinsic_volume(d, k);
            const double ratio_se = vk.std_error / ball_intrinsic_volume(d, k);
            if (params.family == PointFamily::UniformBall) {
                const double base = ball_simplex_moment(d, k, 1.0);
                report.rhs = {scale * ratio * base, scale * ratio_se * base, n, vk.exact};
            } else {
                const auto base = estimate_family_volume_moment(root.split(2), Ellipsoid::unit_ball(d), k, 1.0,
                                                                params.family, n, workers);
                // Delta method for a product of independent estimates.
                const double se = std::hypot(ratio_se * base.value, ratio * base.std_error);
                report.rhs = {scale * ratio * base.value, scale * se, n, false};
            }
            judge_moment(report);
            break;
        }
        case Identity::GramRepresentation: {
            require_k_range(params, 1);
            auto samples = sample_gram_ratio_pair(root, ellipsoid, k, n, workers);
            judge_distribution(report, samples.samples, scale);
            report.residual = samples.max_relative_residual;
            report.pass = report.pass && samples.max_relative_residual <= policy.residual_tolerance;
            break;
        }
        case Identity::EllipsoidMoment: {
            require_k_range(params, 1);
            report.lhs = side(estimate_simplex_moment(lhs_stream, ellipsoid, k, p, n, workers));
            const double constant = ball_simplex_moment(d, k, p) / std::pow(ball_volume(k), p);
            report.rhs = side(estimate_projection_moment(rhs_stream, ellipsoid, k, p, n, workers), scale * constant);
            judge_moment(report);
            break;
        }
        case Identity::MeanVolumeCoefficient: {
            require_k_range(params, 1);
            report.lhs = side(estimate_simplex_moment(lhs_stream, ellipsoid, k, 1.0, n, workers));
            report.rhs =
                side(estimate_intrinsic_volume(rhs_stream, ellipsoid, k, n, workers), scale * mean_volume_coeff(d, k));
            judge_moment(report);
            break;
        }
        case Identity::BetaFactorization: {
            require_k_range(params, 1);
            auto pair = sample_beta_factorization_pair(root, ellipsoid, k, n, workers);
            judge_distribution(report, pair, scale);
            break;
        }
        case Identity::AffinePointIntegral: {
            require_k_range(params, 1);
            const double constant = identity_constant(IdentityConstant::AffineBpMoment, d, k, p);
            report.lhs = side(estimate_simplex_moment(lhs_stream, ellipsoid, k, p, n, workers),
                              std::pow(ellipsoid.volume(), k + 1));
            const double q = p + d + 1;
            if (k == d) {
                report.rhs = exact_side(scale * constant * std::pow(ellipsoid.volume(), q), n);
            } else {
                report.rhs =
                    side(estimate_affine_section_integral(rhs_stream, ellipsoid, k, q, n, workers), scale * constant);
            }
            judge_moment(report);
            break;
        }
        case Identity::SectionProjection: {
            require_k_range(params, 1);
            const double constant = identity_constant(IdentityConstant::SectionProjection, d, k, p);
            const double q = p + d + 1;
            if (k == d) {
                report.lhs = exact_side(constant * std::pow(ellipsoid.volume(), q), n);
            } else {
                report.lhs = side(estimate_affine_section_integral(lhs_stream, ellipsoid, k, q, n, workers), constant);
            }
            report.rhs = side(estimate_projection_moment(rhs_stream, ellipsoid, k, p, n, workers),
                              scale * std::pow(ellipsoid.volume(), k + 1));
            judge_moment(report);
            break;
        }
        case Identity::AffineFt: {
            require_k_range(params, 0);
            if (!(k <= d - 1)) throw DomainError("affine section identity needs k <= d-1");
            report.lhs = side(estimate_affine_section_integral(lhs_stream, ellipsoid, k, d + 1.0, n, workers));
            report.rhs = exact_side(
                scale * identity_constant(IdentityConstant::FtAffine, d, k, 0.0) * std::pow(ellipsoid.volume(), k + 1),
                n);
            judge_moment(report);
            break;
        }
        case Identity::LinearFt: {
            require_k_range(params, 1);
            report.lhs = side(estimate_linear_section_integral(lhs_stream, ellipsoid, k, d, n, workers));
            report.rhs = exact_side(
                scale * identity_constant(IdentityConstant::FtLinear, d, k, 0.0) * std::pow(ellipsoid.volume(), k), n);
            judge_moment(report);
            break;
        }
        case Identity::OriginPointIntegral: {
            require_k_range(params, 1);
            const double constant = identity_constant(IdentityConstant::LinearBpMoment, d, k, p);
            report.lhs =
                side(estimate_origin_moment(lhs_stream, ellipsoid, k, p, n, workers), std::pow(ellipsoid.volume(), k));
            report.rhs =
                side(estimate_linear_section_integral(rhs_stream, ellipsoid, k, p + d, n, workers), scale * constant);
            judge_moment(report);
            break;
        }
    }
    return report;
}

}  // namespace simplexgeo
