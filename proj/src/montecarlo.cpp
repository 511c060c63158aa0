#include "simplexgeo/montecarlo.hpp"

#include <cmath>
#include <string>

#include "simplexgeo/errors.hpp"
#include "simplexgeo/exact.hpp"
#include "simplexgeo/parallel.hpp"
#include "simplexgeo/sampling.hpp"
#include "small_matrix.hpp"

namespace simplexgeo {
namespace {

using detail::SmallMatrix;
using detail::SmallVector;

void require_k(const Ellipsoid& ellipsoid, int k) {
    if (!(k >= 1 && k <= ellipsoid.dim()))
        throw DomainError("need 1 <= k <= d, got k=" + std::to_string(k) + ", d=" + std::to_string(ellipsoid.dim()));
}

void require_n(std::int64_t n) {
    if (n < 2) throw DomainError("sample count must be >= 2, got " + std::to_string(n));
}

void require_small(int d) {
    if (!(detail::fits_small(d, d)))
        throw DomainError("Monte Carlo estimators support d <= " + std::to_string(detail::kSmallCapacity));
}

EstimateReport from_moments(const RunningMoments& moments, const RandomStream& stream, std::string label) {
    EstimateReport report;
    report.value = moments.mean();
    report.std_error = moments.std_error();
    report.count = moments.count();
    report.seed = stream.seed();
    report.label = std::move(label);
    return report;
}

EstimateReport exact_report(double value, std::int64_t n, const RandomStream& stream, std::string label) {
    EstimateReport report;
    report.value = value;
    report.count = n;
    report.seed = stream.seed();
    report.label = std::move(label);
    report.exact = true;
    return report;
}

// Writes a uniform point of the unit ball into `out`.
template <typename Out>
void fill_uniform_ball(RandomStream& stream, Out&& out) {
    const auto d = out.size();
    double norm2 = 0.0;
    do {
        for (Eigen::Index i = 0; i < d; ++i) out[i] = stream.normal();
        norm2 = out.squaredNorm();
    } while (norm2 == 0.0);
    out *= std::pow(stream.uniform(), 1.0 / static_cast<double>(d)) / std::sqrt(norm2);
}

template <typename Out>
void fill_gaussian(RandomStream& stream, Out&& out) {
    for (Eigen::Index i = 0; i < out.size(); ++i) out[i] = stream.normal();
}

// Columns first..cols-1 of `points` filled with uniform points of E.
void fill_uniform_ellipsoid(RandomStream& stream, const Ellipsoid& ellipsoid, SmallMatrix& points, Eigen::Index first) {
    SmallVector z(ellipsoid.dim());
    for (Eigen::Index j = first; j < points.cols(); ++j) {
        fill_uniform_ball(stream, z);
        points.col(j).noalias() = ellipsoid.sym_root() * z;
    }
}

double factorial(int k) { return std::exp(std::lgamma(k + 1.0)); }

}  // namespace

std::string_view to_string(PointFamily family) { return family == PointFamily::UniformBall ? "uniform" : "gaussian"; }

BetaFactorSpecs beta_factor_specs(int d, int k) {
    Dims{d, k}.validate();
    BetaFactorSpecs specs{{d / 2.0 + 1.0, k * d / 2.0}, {}};
    for (int i = 1; i <= k; ++i) specs.factors.push_back({(d - k + i) / 2.0, (k - i) / 2.0 + 1.0});
    return specs;
}

EstimateReport estimate_simplex_moment(const RandomStream& stream, const Ellipsoid& ellipsoid, int k, double p,
                                       std::int64_t n, int workers) {
    require_k(ellipsoid, k);
    require_n(n);
    if (!(std::isfinite(p) && p > -1.0)) throw DomainError("simplex moment needs p > -1, got " + std::to_string(p));
    require_small(ellipsoid.dim());
    const int d = ellipsoid.dim();
    auto moments = parallel_moments(stream, n, workers, [&](RandomStream& rng) {
        SmallMatrix points(d, k + 1);
        fill_uniform_ellipsoid(rng, ellipsoid, points, 0);
        return std::pow(simplex_volume(points), p);
    });
    auto report = from_moments(moments, stream, "simplex_moment");
    report.heavy_tail = p < kHeavyTailExponent;
    return report;
}

EstimateReport estimate_family_volume_moment(const RandomStream& stream, const Ellipsoid& ellipsoid, int k, double p,
                                             PointFamily family, std::int64_t n, int workers) {
    require_k(ellipsoid, k);
    require_n(n);
    if (!(std::isfinite(p) && p > -1.0)) throw DomainError("volume moment needs p > -1, got " + std::to_string(p));
    const int d = ellipsoid.dim();
    require_small(d);
    auto moments = parallel_moments(stream, n, workers, [&](RandomStream& rng) {
        SmallMatrix points(d, k + 1);
        SmallVector x(d);
        for (Eigen::Index j = 0; j <= k; ++j) {
            if (family == PointFamily::UniformBall)
                fill_uniform_ball(rng, x);
            else
                fill_gaussian(rng, x);
            points.col(j).noalias() = ellipsoid.sym_root() * x;
        }
        return std::pow(simplex_volume(points), p);
    });
    auto report = from_moments(moments, stream, "family_volume_moment");
    report.heavy_tail = p < kHeavyTailExponent;
    return report;
}

EstimateReport estimate_origin_moment(const RandomStream& stream, const Ellipsoid& ellipsoid, int k, double p,
                                      std::int64_t n, int workers) {
    require_k(ellipsoid, k);
    require_n(n);
    const int d = ellipsoid.dim();
    if (!(std::isfinite(p) && p > -d + k))
        throw DomainError("origin moment needs p > -d + k, got " + std::to_string(p));
    require_small(d);
    auto moments = parallel_moments(stream, n, workers, [&](RandomStream& rng) {
        SmallMatrix points(d, k + 1);
        points.col(0).setZero();
        fill_uniform_ellipsoid(rng, ellipsoid, points, 1);
        return std::pow(simplex_volume(points), p);
    });
    auto report = from_moments(moments, stream, "origin_moment");
    report.heavy_tail = p < kHeavyTailExponent;
    return report;
}

EstimateReport estimate_projection_moment(const RandomStream& stream, const Ellipsoid& ellipsoid, int k, double p,
                                          std::int64_t n, int workers) {
    require_k(ellipsoid, k);
    require_n(n);
    if (!(std::isfinite(p))) throw DomainError("projection moment needs finite p");
    const int d = ellipsoid.dim();
    if (k == d) return exact_report(std::pow(ellipsoid.volume(), p), n, stream, "projection_moment");
    if (ellipsoid.is_ball()) {
        const double shadow = ball_volume(k) * std::pow(ellipsoid.largest_semi_axis(), k);
        return exact_report(std::pow(shadow, p), n, stream, "projection_moment");
    }
    auto moments = parallel_moments(stream, n, workers, [&](RandomStream& rng) {
        return std::pow(projection_volume(ellipsoid, haar_subspace(rng, d, k)), p);
    });
    auto report = from_moments(moments, stream, "projection_moment");
    report.heavy_tail = p < kHeavyTailExponent;
    return report;
}

EstimateReport estimate_linear_section_integral(const RandomStream& stream, const Ellipsoid& ellipsoid, int k, double q,
                                                std::int64_t n, int workers) {
    require_k(ellipsoid, k);
    require_n(n);
    if (!(std::isfinite(q))) throw DomainError("section integral needs finite exponent");
    const int d = ellipsoid.dim();
    if (k == d) return exact_report(std::pow(ellipsoid.volume(), q), n, stream, "linear_section_integral");
    if (ellipsoid.is_ball()) {
        const double section = ball_volume(k) * std::pow(ellipsoid.largest_semi_axis(), k);
        return exact_report(std::pow(section, q), n, stream, "linear_section_integral");
    }
    const Vector origin = Vector::Zero(d);
    auto moments = parallel_moments(stream, n, workers, [&](RandomStream& rng) {
        return std::pow(section_volume(ellipsoid, AffineSubspace(haar_subspace(rng, d, k), origin)), q);
    });
    auto report = from_moments(moments, stream, "linear_section_integral");
    report.heavy_tail = q < 0.0;
    return report;
}

EstimateReport estimate_affine_section_integral(const RandomStream& stream, const Ellipsoid& ellipsoid, int k, double q,
                                                std::int64_t n, int workers) {
    const int d = ellipsoid.dim();
    if (!(k >= 0 && k <= d - 1))
        throw DomainError("affine section integral needs 0 <= k <= d-1, got k=" + std::to_string(k));
    require_n(n);
    if (!(std::isfinite(q))) throw DomainError("section integral needs finite exponent");
    auto moments = parallel_moments(stream, n, workers, [&](RandomStream& rng) {
        const auto sample = haar_affine_sample(rng, ellipsoid, k);
        const double section = section_volume(ellipsoid, sample.subspace);
        return section > 0.0 ? sample.weight * std::pow(section, q) : 0.0;
    });
    auto report = from_moments(moments, stream, "affine_section_integral");
    report.heavy_tail = q < 0.0;
    return report;
}

EstimateReport estimate_intrinsic_volume(const RandomStream& stream, const Ellipsoid& ellipsoid, int k, std::int64_t n,
                                         int workers) {
    const int d = ellipsoid.dim();
    Dims{d, k}.validate();
    require_n(n);
    if (k == 0) return exact_report(1.0, n, stream, "intrinsic_volume");
    if (k == d) return exact_report(ellipsoid.volume(), n, stream, "intrinsic_volume");
    if (ellipsoid.is_ball()) {
        const double r = ellipsoid.largest_semi_axis();
        return exact_report(ball_intrinsic_volume(d, k) * std::pow(r, k), n, stream, "intrinsic_volume");
    }
    const double factor =
        std::exp(log_binomial(d, k) + log_ball_volume(d) - log_ball_volume(k) - log_ball_volume(d - k));
    auto report = estimate_projection_moment(stream, ellipsoid, k, 1.0, n, workers);
    report.value *= factor;
    report.std_error *= factor;
    report.label = "intrinsic_volume";
    return report;
}

SamplePair sample_affine_volume_pair(const RandomStream& stream, const Ellipsoid& ellipsoid, int k, std::int64_t n,
                                     PointFamily family, int workers) {
    require_k(ellipsoid, k);
    require_n(n);
    const int d = ellipsoid.dim();
    require_small(d);
    const double kappa_k = ball_volume(k);
    auto draw_points = [&](RandomStream& rng, SmallMatrix& points) {
        for (Eigen::Index j = 0; j < points.cols(); ++j) {
            if (family == PointFamily::UniformBall) {
                fill_uniform_ball(rng, points.col(j));
            } else {
                fill_gaussian(rng, points.col(j));
            }
        }
    };
    SamplePair out;
    out.lhs = parallel_samples(stream.split(0), n, workers, [&](RandomStream& rng) {
        SmallMatrix points(d, k + 1);
        draw_points(rng, points);
        SmallMatrix image = ellipsoid.sym_root() * points;
        return simplex_volume(image);
    });
    out.rhs = parallel_samples(stream.split(1), n, workers, [&](RandomStream& rng) {
        SmallMatrix points(d, k + 1);
        draw_points(rng, points);
        const double shadow = projection_volume(ellipsoid, haar_subspace(rng, d, k));
        return shadow / kappa_k * simplex_volume(points);
    });
    return out;
}

SamplePair sample_beta_factorization_pair(const RandomStream& stream, const Ellipsoid& ellipsoid, int k, std::int64_t n,
                                          int workers) {
    require_k(ellipsoid, k);
    require_n(n);
    const int d = ellipsoid.dim();
    require_small(d);
    const auto specs = beta_factor_specs(d, k);
    const double k_factorial_sq = factorial(k) * factorial(k);
    const std::vector<double> axes(ellipsoid.semi_axes().data(), ellipsoid.semi_axes().data() + d);
    SamplePair out;
    out.lhs = parallel_samples(stream.split(0), n, workers, [&](RandomStream& rng) {
        SmallMatrix points(d, k + 1);
        fill_uniform_ellipsoid(rng, ellipsoid, points, 0);
        const double volume = simplex_volume(points);
        const double eta = beta_sample(rng, specs.eta);
        return k_factorial_sq * eta * std::pow(1.0 - eta, k) * volume * volume;
    });
    out.rhs = parallel_samples(stream.split(1), n, workers, [&](RandomStream& rng) {
        const double eta_prime = beta_sample(rng, specs.eta);
        double value = std::pow(1.0 - eta_prime, k);
        for (const auto& spec : specs.factors) value *= beta_sample(rng, spec);
        const double ratio = coupled_gram_ratio(rng, axes, k);
        return value * ratio * ratio;
    });
    return out;
}

GramRatioSamples sample_gram_ratio_pair(const RandomStream& stream, const Ellipsoid& ellipsoid, int k, std::int64_t n,
                                        int workers) {
    require_k(ellipsoid, k);
    require_n(n);
    const int d = ellipsoid.dim();
    const double kappa_k = ball_volume(k);
    const std::vector<double> axes(ellipsoid.semi_axes().data(), ellipsoid.semi_axes().data() + d);
    GramRatioSamples out;
    // Residuals are recorded alongside the lhs draws, chunk by chunk.
    const RandomStream lhs_stream = stream.split(0);
    std::vector<std::vector<double>> lhs_parts(kChunkCount), res_parts(kChunkCount);
    for_each_chunk(workers, [&](int c) {
        RandomStream rng = lhs_stream.split(static_cast<std::uint64_t>(c));
        const auto count = chunk_size(n, c);
        auto& values = lhs_parts[static_cast<std::size_t>(c)];
        double worst = 0.0;
        for (std::int64_t i = 0; i < count; ++i) {
            for (int attempt = 0;; ++attempt) {
                Matrix g = gaussian_matrix(rng, d, k);
                if (!detail::gram_root_checked(g)) {
                    if (attempt + 1 >= kMaxRedraws) throw DegenerateInputError("Gaussian matrix rank-deficient");
                    continue;
                }
                const double factor = gram_factor(ellipsoid.sym_root(), g);
                const double shadow = projection_volume(ellipsoid, LinearSubspace::from_spanning(g)) / kappa_k;
                worst = std::max(worst, std::abs(factor - shadow) / factor);
                values.push_back(factor);
                break;
            }
        }
        res_parts[static_cast<std::size_t>(c)].push_back(worst);
    });
    for (int c = 0; c < kChunkCount; ++c) {
        const auto& part = lhs_parts[static_cast<std::size_t>(c)];
        out.samples.lhs.insert(out.samples.lhs.end(), part.begin(), part.end());
        out.max_relative_residual = std::max(out.max_relative_residual, res_parts[static_cast<std::size_t>(c)][0]);
    }
    out.samples.rhs = parallel_samples(stream.split(1), n, workers,
                                       [&](RandomStream& rng) { return coupled_gram_ratio(rng, axes, k); });
    return out;
}

}  // namespace simplexgeo
