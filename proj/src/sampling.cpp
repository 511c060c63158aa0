#include "simplexgeo/sampling.hpp"

#include <cmath>
#include <string>

#include "simplexgeo/errors.hpp"
#include "simplexgeo/exact.hpp"
#include "small_matrix.hpp"

namespace simplexgeo {
namespace {

// Orthonormal frame of the first `cols` columns of a Gaussian draw, with the
// sign convention R_ii > 0. Returns false on numerical rank deficiency.
bool orthonormalize(const Matrix& g, Eigen::Index cols, Matrix& frame) {
    Eigen::HouseholderQR<Matrix> qr(g);
    const auto& r = qr.matrixQR();
    const double scale = g.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < cols; ++i) {
        if (!(std::abs(r(i, i)) > 1e-12 * scale)) return false;
    }
    frame = qr.householderQ() * Matrix::Identity(g.rows(), g.cols());
    for (Eigen::Index i = 0; i < cols; ++i) {
        if (r(i, i) < 0.0) frame.col(i) *= -1.0;
    }
    return true;
}

Matrix haar_frame(RandomStream& stream, int d, int k) {
    for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
        Matrix frame;
        if (orthonormalize(gaussian_matrix(stream, d, k), k, frame)) return frame;
    }
    throw DegenerateInputError("Gaussian matrix stayed rank-deficient after redraws");
}

}  // namespace

void BetaSpec::validate() const {
    if (!(std::isfinite(alpha1) && alpha1 > 0.0 && std::isfinite(alpha2) && alpha2 > 0.0))
        throw DomainError("Beta parameters must be positive, got (" + std::to_string(alpha1) + ", " +
                          std::to_string(alpha2) + ")");
}

Matrix gaussian_matrix(RandomStream& stream, int rows, int cols) {
    if (!(rows >= 1 && cols >= 1)) throw DomainError("Gaussian matrix needs positive dimensions");
    Matrix g(rows, cols);
    for (Eigen::Index j = 0; j < g.cols(); ++j) {
        for (Eigen::Index i = 0; i < g.rows(); ++i) g(i, j) = stream.normal();
    }
    return g;
}

Vector uniform_in_ball(RandomStream& stream, int d) {
    if (!(d >= 1)) throw DomainError("dimension must be >= 1");
    Vector z(d);
    double norm2 = 0.0;
    do {
        for (int i = 0; i < d; ++i) z[i] = stream.normal();
        norm2 = z.squaredNorm();
    } while (norm2 == 0.0);
    const double radius = std::pow(stream.uniform(), 1.0 / d);
    z *= radius / std::sqrt(norm2);
    return z;
}

Vector uniform_in_ellipsoid(RandomStream& stream, const Ellipsoid& ellipsoid) {
    return ellipsoid.sym_root() * uniform_in_ball(stream, ellipsoid.dim());
}

LinearSubspace haar_subspace(RandomStream& stream, int d, int k) {
    if (!(d >= 1 && k >= 1 && k <= d)) throw DomainError("Haar subspace needs 1 <= k <= d");
    return LinearSubspace(haar_frame(stream, d, k));
}

Matrix haar_orthogonal(RandomStream& stream, int d) {
    if (!(d >= 1)) throw DomainError("dimension must be >= 1");
    return haar_frame(stream, d, d);
}

WeightedAffineSample haar_affine_sample(RandomStream& stream, const Ellipsoid& ellipsoid, int k) {
    const int d = ellipsoid.dim();
    if (!(k >= 0 && k <= d - 1))
        throw DomainError("affine Haar sample needs 0 <= k <= d-1, got k=" + std::to_string(k));
    const double radius = ellipsoid.largest_semi_axis();
    const int codim = d - k;
    // Columns [0, k) span L, columns [k, d) span L-perp.
    Matrix rotation = haar_frame(stream, d, d);
    Vector offset = rotation.rightCols(codim) * (radius * uniform_in_ball(stream, codim));
    LinearSubspace direction = k == 0 ? LinearSubspace::zero(d) : LinearSubspace(rotation.leftCols(k));
    const double weight = ball_volume(codim) * std::pow(radius, codim);
    return {AffineSubspace(std::move(direction), offset), weight};
}

double gamma_sample(RandomStream& stream, double shape) {
    if (!(std::isfinite(shape) && shape > 0.0)) throw DomainError("Gamma shape must be positive");
    if (shape < 1.0) {
        const double boost = std::pow(stream.uniform_open(), 1.0 / shape);
        return gamma_sample(stream, shape + 1.0) * boost;
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = stream.normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = stream.uniform_open();
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
    }
}

double beta_sample(RandomStream& stream, const BetaSpec& spec) {
    spec.validate();
    for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
        const double x = gamma_sample(stream, spec.alpha1);
        const double y = gamma_sample(stream, spec.alpha2);
        const double value = x / (x + y);
        if (value > 0.0 && value < 1.0) return value;
    }
    throw DegenerateInputError("Beta variate stayed on the boundary after redraws");
}

double coupled_gram_ratio(RandomStream& stream, std::span<const double> semi_axes, int k) {
    const int d = static_cast<int>(semi_axes.size());
    if (!(d >= 1 && k >= 1 && k <= d)) throw DomainError("coupled Gram ratio needs 1 <= k <= d");
    for (double axis : semi_axes) {
        if (!(std::isfinite(axis) && axis > 0.0)) throw DomainError("semi-axes must be positive");
    }
    const bool small = detail::fits_small(d, k);
    for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
        detail::SmallMatrix g_small;
        Matrix g_large;
        if (small)
            g_small.resize(d, k);
        else
            g_large.resize(d, k);
        for (int j = 0; j < k; ++j) {
            for (int i = 0; i < d; ++i) {
                const double value = stream.normal();
                if (small)
                    g_small(i, j) = value;
                else
                    g_large(i, j) = value;
            }
        }
        std::optional<double> base, scaled;
        const Eigen::Map<const Eigen::VectorXd> axes(semi_axes.data(), d);
        if (small) {
            base = detail::gram_root_checked(g_small);
            detail::SmallMatrix g_lambda = axes.asDiagonal() * g_small;
            scaled = detail::gram_root_checked(g_lambda);
        } else {
            base = detail::gram_root_checked(g_large);
            scaled = detail::gram_root_checked(axes.asDiagonal() * g_large);
        }
        if (base && scaled) return *scaled / *base;
    }
    throw DegenerateInputError("Gaussian matrix stayed rank-deficient after redraws");
}

}  // namespace simplexgeo
