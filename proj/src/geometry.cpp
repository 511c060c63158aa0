#include "simplexgeo/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

#include "simplexgeo/errors.hpp"
#include "simplexgeo/exact.hpp"
#include "small_matrix.hpp"

namespace simplexgeo {
namespace {

constexpr double kSymmetryTol = 1e-12;
constexpr double kFrameTol = 1e-10;
constexpr double kOrthonormalTol = 1e-12;
constexpr double kBallTol = 1e-14;
constexpr double kDegeneracy = 1e-13;

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

template <typename MatrixType>
std::optional<double> gram_root_impl(const Eigen::Ref<const Matrix>& edges) {
    const Eigen::Index k = edges.cols();
    if (k == 0) return 1.0;
    const double scale = edges.colwise().norm().maxCoeff();
    if (!(scale > 0.0)) return std::nullopt;
    MatrixType scaled = edges / scale;
    Eigen::ColPivHouseholderQR<MatrixType> qr(scaled);
    const auto r = qr.matrixQR().diagonal();
    // det(E^T E) / scale^(2k) = prod r_ii^2.
    double ratio = 1.0;
    for (Eigen::Index i = 0; i < k; ++i) ratio *= r[i] * r[i];
    if (!(ratio > kDegeneracy)) return std::nullopt;
    return std::pow(scale, static_cast<double>(k)) * std::sqrt(ratio);
}

}  // namespace

// ---------------------------------------------------------------------------
// Ellipsoid

Ellipsoid::Ellipsoid(Matrix shape, Vector semi_axes, Matrix frame)
    : shape_(std::move(shape)), semi_axes_(std::move(semi_axes)), frame_(std::move(frame)) {
    const int d = dim();
    sym_root_ = frame_ * semi_axes_.asDiagonal() * frame_.transpose();
    sym_root_ = 0.5 * (sym_root_ + sym_root_.transpose()).eval();
    inverse_shape_ = frame_ * semi_axes_.array().square().matrix().asDiagonal() * frame_.transpose();
    inverse_shape_ = 0.5 * (inverse_shape_ + inverse_shape_.transpose()).eval();
    volume_ = ball_volume(d) * semi_axes_.prod();
    is_ball_ = semi_axes_[0] - semi_axes_[d - 1] <= kBallTol * semi_axes_[0];
}

Ellipsoid Ellipsoid::from_semiaxes(std::span<const double> semi_axes, const std::optional<Matrix>& frame) {
    const auto d = static_cast<Eigen::Index>(semi_axes.size());
    if (!(d >= 1)) throw DomainError("ellipsoid needs at least one semi-axis");
    for (std::size_t i = 0; i < semi_axes.size(); ++i) {
        if (!(std::isfinite(semi_axes[i]) && semi_axes[i] > 0.0)) {
            throw DomainError("semi-axis " + std::to_string(i) + " must be positive, got " +
                              std::to_string(semi_axes[i]));
        }
    }
    Matrix basis = Matrix::Identity(d, d);
    if (frame) {
        if (frame->rows() != d || frame->cols() != d) {
            throw ValidationError("frame must be " + std::to_string(d) + "x" + std::to_string(d));
        }
        const double residual = max_abs(frame->transpose() * *frame - Matrix::Identity(d, d));
        if (!(residual <= kFrameTol)) {
            throw ValidationError("frame is not orthogonal (residual " + std::to_string(residual) + ")");
        }
        basis = *frame;
    }
    std::vector<Eigen::Index> order(static_cast<std::size_t>(d));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index a, Eigen::Index b) { return semi_axes[a] > semi_axes[b]; });
    Vector axes(d);
    Matrix sorted_frame(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        axes[i] = semi_axes[order[i]];
        sorted_frame.col(i) = basis.col(order[i]);
    }
    Matrix shape = sorted_frame * axes.array().square().inverse().matrix().asDiagonal() * sorted_frame.transpose();
    shape = 0.5 * (shape + shape.transpose()).eval();
    return Ellipsoid(std::move(shape), std::move(axes), std::move(sorted_frame));
}

Ellipsoid Ellipsoid::from_shape(const Matrix& shape) {
    const Eigen::Index d = shape.rows();
    if (d < 1 || shape.cols() != d) throw ValidationError("shape matrix must be square and non-empty");
    if (!shape.allFinite()) throw ValidationError("shape matrix has non-finite entries");
    const double asym = max_abs(shape - shape.transpose());
    if (asym > kSymmetryTol * max_abs(shape)) {
        throw ValidationError("shape matrix is not symmetric (max asymmetry " + std::to_string(asym) + ")");
    }
    Matrix sym = 0.5 * (shape + shape.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> eig(sym);
    if (eig.info() != Eigen::Success) throw ValidationError("eigen-decomposition of shape matrix failed");
    const Vector& values = eig.eigenvalues();  // ascending
    for (Eigen::Index i = 0; i < d; ++i) {
        if (!(values[i] > 0.0)) {
            std::ostringstream msg;
            msg << "shape matrix is not positive definite: eigenvalue " << values[i];
            throw ValidationError(msg.str());
        }
    }
    // Ascending eigenvalues give descending semi-axes.
    Vector axes = values.array().rsqrt();
    return Ellipsoid(std::move(sym), std::move(axes), eig.eigenvectors());
}

Ellipsoid Ellipsoid::unit_ball(int d) {
    if (!(d >= 1)) throw DomainError("dimension must be >= 1");
    std::vector<double> ones(static_cast<std::size_t>(d), 1.0);
    return from_semiaxes(ones);
}

bool Ellipsoid::contains(const Vector& x, double slack) const { return x.dot(shape_ * x) <= 1.0 + slack; }

Ellipsoid Ellipsoid::rotated(const Matrix& rotation) const {
    const int d = dim();
    if (rotation.rows() != d || rotation.cols() != d) throw ValidationError("rotation has wrong size");
    Matrix frame = rotation * frame_;
    std::vector<double> axes(semi_axes_.data(), semi_axes_.data() + d);
    return from_semiaxes(axes, frame);
}

// ---------------------------------------------------------------------------
// Subspaces

LinearSubspace::LinearSubspace(Matrix frame) : frame_(std::move(frame)) {
    if (frame_.cols() > frame_.rows()) throw DomainError("subspace dimension exceeds ambient dimension");
    if (frame_.rows() < 1) throw DomainError("ambient dimension must be >= 1");
    const double residual = max_abs(frame_.transpose() * frame_ - Matrix::Identity(frame_.cols(), frame_.cols()));
    if (!(residual <= kOrthonormalTol)) {
        throw ValidationError("subspace frame is not orthonormal (residual " + std::to_string(residual) + ")");
    }
}

LinearSubspace LinearSubspace::from_spanning(const Matrix& vectors) {
    if (!detail::gram_root_checked(vectors)) throw DegenerateInputError("spanning vectors are rank-deficient");
    Eigen::HouseholderQR<Matrix> qr(vectors);
    Matrix q = qr.householderQ() * Matrix::Identity(vectors.rows(), vectors.cols());
    return LinearSubspace(std::move(q));
}

LinearSubspace LinearSubspace::zero(int ambient_dim) { return LinearSubspace(Matrix(ambient_dim, 0)); }

AffineSubspace::AffineSubspace(LinearSubspace direction, const Vector& offset) : direction_(std::move(direction)) {
    if (offset.size() != direction_.ambient_dim()) throw DomainError("offset has wrong dimension");
    const Matrix& o = direction_.frame();
    offset_ = offset - o * (o.transpose() * offset);
}

// ---------------------------------------------------------------------------
// Volumes

namespace detail {

std::optional<double> gram_root_checked(const Eigen::Ref<const Matrix>& edges) {
    if (fits_small(edges.rows(), edges.cols())) return gram_root_impl<SmallMatrix>(edges);
    return gram_root_impl<Matrix>(edges);
}

double gram_root(const Eigen::Ref<const Matrix>& edges) { return gram_root_checked(edges).value_or(0.0); }

}  // namespace detail

double simplex_volume(const Eigen::Ref<const Matrix>& points) {
    const Eigen::Index count = points.cols();
    const Eigen::Index d = points.rows();
    if (!(count >= 1)) throw DomainError("simplex needs at least one point");
    const Eigen::Index m = count - 1;
    if (!(m <= d))
        throw DomainError("simplex with " + std::to_string(count) + " points does not fit in dimension " +
                          std::to_string(d));
    if (m == 0) return 1.0;
    const double factorial = std::exp(std::lgamma(static_cast<double>(m) + 1.0));
    if (detail::fits_small(d, m)) {
        detail::SmallMatrix edges = points.rightCols(m).colwise() - points.col(0);
        return detail::gram_root(edges) / factorial;
    }
    Matrix edges = points.rightCols(m).colwise() - points.col(0);
    return detail::gram_root(edges) / factorial;
}

namespace {

template <typename MatrixType>
double projection_root_det(const Ellipsoid& ellipsoid, const Matrix& o) {
    MatrixType m = o.transpose() * ellipsoid.inverse_shape() * o;
    Eigen::LLT<MatrixType> llt(m);
    return llt.matrixLLT().diagonal().prod();
}

template <typename MatrixType, typename VectorType>
double section_general(const Ellipsoid& ellipsoid, const Matrix& o, const Vector& u, int k) {
    const Matrix& q = ellipsoid.shape();
    // x = u + O y  gives  y^T M y + 2 b^T y + c <= 1.
    MatrixType qo = q * o;
    MatrixType m = o.transpose() * qo;
    VectorType b = qo.transpose() * u;
    const double c = u.dot(q * u);
    Eigen::LLT<MatrixType> llt(m);
    VectorType solved = llt.solve(b);
    const double rho2 = 1.0 - c + b.dot(solved);
    if (!(rho2 > 0.0)) return 0.0;
    const double root_det = llt.matrixLLT().diagonal().prod();
    return ball_volume(k) * std::pow(rho2, 0.5 * k) / root_det;
}

}  // namespace

double projection_volume(const Ellipsoid& ellipsoid, const LinearSubspace& subspace) {
    if (!(subspace.ambient_dim() == ellipsoid.dim())) throw DomainError("subspace and ellipsoid dimensions differ");
    const int k = subspace.dim();
    if (k == 0) return 1.0;
    if (ellipsoid.is_ball()) return ball_volume(k) * std::pow(ellipsoid.largest_semi_axis(), k);
    const Matrix& o = subspace.frame();
    const double root_det = detail::fits_small(o.rows(), o.cols())
                                ? projection_root_det<detail::SmallMatrix>(ellipsoid, o)
                                : projection_root_det<Matrix>(ellipsoid, o);
    return ball_volume(k) * root_det;
}

double section_volume(const Ellipsoid& ellipsoid, const AffineSubspace& subspace) {
    if (!(subspace.ambient_dim() == ellipsoid.dim())) throw DomainError("subspace and ellipsoid dimensions differ");
    const int k = subspace.dim();
    const Vector& u = subspace.offset();
    if (ellipsoid.is_ball()) {
        const double r = ellipsoid.largest_semi_axis();
        const double rho2 = r * r - u.squaredNorm();
        if (!(rho2 > 0.0)) return 0.0;
        return ball_volume(k) * std::pow(rho2, 0.5 * k);
    }
    if (k == 0) return u.dot(ellipsoid.shape() * u) < 1.0 ? 1.0 : 0.0;
    const Matrix& o = subspace.direction().frame();
    if (detail::fits_small(o.rows(), o.cols())) {
        return section_general<detail::SmallMatrix, detail::SmallVector>(ellipsoid, o, u, k);
    }
    return section_general<Matrix, Vector>(ellipsoid, o, u, k);
}

double gram_factor(const Eigen::Ref<const Matrix>& transform, const Eigen::Ref<const Matrix>& vectors) {
    if (!(transform.rows() == transform.cols())) throw DomainError("transform must be square");
    if (!(transform.cols() == vectors.rows())) throw DomainError("transform and vectors dimensions differ");
    const auto base = detail::gram_root_checked(vectors);
    if (!base) throw DegenerateInputError("spanning vectors are rank-deficient");
    const auto image = detail::gram_root_checked(transform * vectors);
    if (!image) throw DegenerateInputError("transformed vectors are rank-deficient; transform is singular");
    return *image / *base;
}

double ball_intrinsic_volume(int d, int k) {
    Dims{d, k}.validate();
    return std::exp(log_binomial(d, k) + log_ball_volume(d) - log_ball_volume(d - k));
}

}  // namespace simplexgeo
