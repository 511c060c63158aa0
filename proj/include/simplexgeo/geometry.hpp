#pragma once

// Deterministic Euclidean geometry: ellipsoids, linear and affine subspaces,
// simplex volumes, projection and section volumes.

#include <Eigen/Dense>
#include <optional>
#include <span>

namespace simplexgeo {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Ellipsoid {x : x^T Q x <= 1} centred at the origin. Stored by its shape
// matrix Q together with the spectral data derived from it; the symmetric
// root Q^{-1/2} is the canonical linear map taking the unit ball onto it.
class Ellipsoid {
public:
    // Q = U diag(axes^-2) U^T. The frame columns pair with the axes in input order;
    // U defaults to the identity.
    static Ellipsoid from_semiaxes(std::span<const double> semi_axes,
                                   const std::optional<Matrix>& frame = std::nullopt);
    static Ellipsoid from_shape(const Matrix& shape);
    static Ellipsoid unit_ball(int d);

    int dim() const { return static_cast<int>(semi_axes_.size()); }
    const Matrix& shape() const { return shape_; }
    // Semi-axes in descending order.
    const Vector& semi_axes() const { return semi_axes_; }
    // Column i is the principal direction of semi_axes()[i].
    const Matrix& principal_frame() const { return frame_; }
    // Q^{-1/2}; maps the unit ball onto the ellipsoid.
    const Matrix& sym_root() const { return sym_root_; }
    // Q^{-1} = sym_root()^2.
    const Matrix& inverse_shape() const { return inverse_shape_; }
    double volume() const { return volume_; }
    double largest_semi_axis() const { return semi_axes_[0]; }
    // All semi-axes equal to working precision; projection and section
    // volumes then have exact closed forms.
    bool is_ball() const { return is_ball_; }

    bool contains(const Vector& x, double slack = 0.0) const;

    // Image under an orthogonal map R: shape R Q R^T.
    Ellipsoid rotated(const Matrix& rotation) const;

private:
    Ellipsoid(Matrix shape, Vector semi_axes, Matrix frame);

    Matrix shape_;
    Vector semi_axes_;
    Matrix frame_;
    Matrix sym_root_;
    Matrix inverse_shape_;
    double volume_ = 0.0;
    bool is_ball_ = false;
};

// k-dimensional linear subspace of R^d given by an orthonormal d x k frame.
class LinearSubspace {
public:
    // Checks orthonormality to 1e-12.
    explicit LinearSubspace(Matrix frame);
    // Orthonormal frame of the column span of a full-rank d x k matrix.
    static LinearSubspace from_spanning(const Matrix& vectors);
    // The zero subspace of R^d.
    static LinearSubspace zero(int ambient_dim);

    int ambient_dim() const { return static_cast<int>(frame_.rows()); }
    int dim() const { return static_cast<int>(frame_.cols()); }
    const Matrix& frame() const { return frame_; }
    Matrix projector() const { return frame_ * frame_.transpose(); }

private:
    Matrix frame_;
};

// Affine subspace direction + offset; the offset is kept in the orthogonal
// complement of the direction so each flat has a single representation.
class AffineSubspace {
public:
    AffineSubspace(LinearSubspace direction, const Vector& offset);

    const LinearSubspace& direction() const { return direction_; }
    const Vector& offset() const { return offset_; }
    int ambient_dim() const { return direction_.ambient_dim(); }
    int dim() const { return direction_.dim(); }

private:
    LinearSubspace direction_;
    Vector offset_;
};

/// k-volume of conv(x_0..x_m); the points are the columns of `points`.
/// Returns 0 when the Gram determinant is below the degeneracy threshold.
double simplex_volume(const Eigen::Ref<const Matrix>& points);

/// k-volume of the projection of E onto L.
double projection_volume(const Ellipsoid& ellipsoid, const LinearSubspace& subspace);

/// k-volume of E intersected with the affine subspace S; 0 for empty or tangent intersections.
double section_volume(const Ellipsoid& ellipsoid, const AffineSubspace& subspace);

/// sqrt(det(X^T A^T A X) / det(X^T X)) for a nonsingular A and full-rank X.
double gram_factor(const Eigen::Ref<const Matrix>& transform, const Eigen::Ref<const Matrix>& vectors);

/// V_k of the unit d-ball, C(d,k) kappa_d / kappa_{d-k}.
double ball_intrinsic_volume(int d, int k);

namespace detail {

// sqrt(det(E^T E)) for the columns of `edges`, or 0 below the relative
// threshold 1e-13 * (max column norm)^(2k).
double gram_root(const Eigen::Ref<const Matrix>& edges);

// Same, returning nullopt on degeneracy instead of 0.
std::optional<double> gram_root_checked(const Eigen::Ref<const Matrix>& edges);

}  // namespace detail

}  // namespace simplexgeo
