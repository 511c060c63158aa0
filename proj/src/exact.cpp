#include "simplexgeo/exact.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "simplexgeo/errors.hpp"

namespace simplexgeo {
namespace {

const double kLogPi = std::log(std::numbers::pi);

// Exponentiate once at the end; the log value is finite on every valid domain.
double finish(double log_value) { return std::exp(log_value); }

}  // namespace

void Dims::validate() const {
    if (!(d >= 1)) throw DomainError("dimension d must be >= 1, got " + std::to_string(d));
    if (!(k >= 0 && k <= d))
        throw DomainError("k must satisfy 0 <= k <= d, got k=" + std::to_string(k) + ", d=" + std::to_string(d));
}

std::string_view to_string(IdentityConstant id) {
    switch (id) {
        case IdentityConstant::FtLinear: return "FT_LINEAR";
        case IdentityConstant::FtAffine: return "FT_AFFINE";
        case IdentityConstant::SectionProjection: return "SECTION_PROJECTION";
        case IdentityConstant::AffineBpMoment: return "AFFINE_BP_MOMENT";
        case IdentityConstant::LinearBpMoment: return "LINEAR_BP_MOMENT";
    }
    return "UNKNOWN";
}

double log_ball_volume(double p) {
    if (!(std::isfinite(p) && p > -2.0)) throw DomainError("ball volume needs p > -2, got " + std::to_string(p));
    return 0.5 * p * kLogPi - std::lgamma(0.5 * p + 1.0);
}

double ball_volume(double p) {
    if (!(std::isfinite(p) && p >= 0.0)) throw DomainError("ball volume needs p >= 0, got " + std::to_string(p));
    return finish(log_ball_volume(p));
}

double log_sphere_area(double p) {
    if (!(std::isfinite(p) && p > 0.0)) throw DomainError("sphere area needs p > 0, got " + std::to_string(p));
    return std::log(p) + log_ball_volume(p);
}

double sphere_area(double p) { return finish(log_sphere_area(p)); }

double log_subspace_coeff(double q, int k) {
    if (!(k >= 0)) throw DomainError("subspace coefficient needs k >= 0");
    if (!(std::isfinite(q) && q > k - 1.0))
        throw DomainError("subspace coefficient needs q > k - 1, got q=" + std::to_string(q) +
                          ", k=" + std::to_string(k));
    double acc = 0.0;
    for (int j = 1; j <= k; ++j) acc += log_sphere_area(q - k + j) - log_sphere_area(j);
    return acc;
}

double subspace_coeff(double q, int k) { return finish(log_subspace_coeff(q, k)); }

double log_binomial(int n, int r) {
    if (!(r >= 0 && r <= n)) throw DomainError("binomial needs 0 <= r <= n");
    return std::lgamma(n + 1.0) - std::lgamma(r + 1.0) - std::lgamma(n - r + 1.0);
}

double ball_simplex_moment(int d, int k, double p) {
    if (!(d >= 1 && k >= 1 && k <= d))
        throw DomainError("ball simplex moment needs 1 <= k <= d, got d=" + std::to_string(d) +
                          ", k=" + std::to_string(k));
    if (!(std::isfinite(p) && p > -1.0))
        throw DomainError("ball simplex moment needs p > -1, got " + std::to_string(p));
    const double dp = d + p;
    const double log_value = -p * std::lgamma(k + 1.0) + (k + 1) * (log_ball_volume(dp) - log_ball_volume(d)) +
                             log_ball_volume(k * dp + d) - log_ball_volume((k + 1) * dp) + log_subspace_coeff(d, k) -
                             log_subspace_coeff(dp, k);
    return finish(log_value);
}

double origin_ball_integral(int k, double m) {
    if (!(k >= 1)) throw DomainError("origin ball integral needs k >= 1, got " + std::to_string(k));
    // The closed form is only established for non-negative exponents.
    if (!(std::isfinite(m) && m >= 0.0))
        throw DomainError("origin ball integral needs m >= 0, got " + std::to_string(m));
    const double log_value = -m * std::lgamma(k + 1.0) + k * log_ball_volume(k + m) + log_subspace_coeff(k, k) -
                             log_subspace_coeff(k + m, k);
    return finish(log_value);
}

double mean_volume_coeff(int d, int k) {
    if (!(d >= 1 && k >= 1 && k <= d))
        throw DomainError("mean volume coefficient needs 1 <= k <= d, got d=" + std::to_string(d) +
                          ", k=" + std::to_string(k));
    const int d1 = d + 1;
    const double log_value = -k * std::numbers::ln2 + (k + 1) * std::lgamma(d1 + 1.0) -
                             std::lgamma(static_cast<double>(d1) * (k + 1) + 1.0) +
                             2.0 * ((k + 1) * log_ball_volume(d1) - log_ball_volume(d1 * (k + 1)));
    return finish(log_value);
}

double identity_constant(IdentityConstant id, int d, int k, double p) {
    Dims{d, k}.validate();
    const double lk = log_ball_volume(k);
    const double ld = log_ball_volume(d);
    switch (id) {
        case IdentityConstant::FtLinear: return finish(d * lk - k * ld);
        case IdentityConstant::FtAffine:
            return finish((d + 1) * lk - (k + 1) * ld + log_ball_volume(d * (k + 1.0)) -
                          log_ball_volume(k * (d + 1.0)));
        case IdentityConstant::SectionProjection: {
            if (!(std::isfinite(p) && p > -d + k - 1.0))
                throw DomainError("section/projection identity needs p > -d + k - 1, got " + std::to_string(p));
            const double kdp = k * (d + p);
            return finish((k + 1) * ld - (d + 1) * lk + log_ball_volume(kdp + k) - log_ball_volume(kdp + d));
        }
        case IdentityConstant::AffineBpMoment: {
            if (!(std::isfinite(p) && p > -d + k - 1.0))
                throw DomainError("affine moment identity needs p > -d + k - 1, got " + std::to_string(p));
            const double dp = d + p;
            return finish(-p * std::lgamma(k + 1.0) + (k + 1) * log_ball_volume(dp) - (p + d + 1) * lk +
                          log_ball_volume(k * dp + k) - log_ball_volume((k + 1) * dp) + log_subspace_coeff(d, k) -
                          log_subspace_coeff(dp, k));
        }
        case IdentityConstant::LinearBpMoment: {
            if (!(std::isfinite(p) && p > -d + k))
                throw DomainError("linear moment identity needs p > -d + k, got " + std::to_string(p));
            const double dp = d + p;
            return finish(-p * std::lgamma(k + 1.0) + k * log_ball_volume(dp) - (p + d) * lk +
                          log_subspace_coeff(d, k) - log_subspace_coeff(dp, k));
        }
    }
    throw DomainError("unknown identity constant");
}

}  // namespace simplexgeo
