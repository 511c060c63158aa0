#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "simplexgeo/errors.hpp"
#include "simplexgeo/exact.hpp"
#include "simplexgeo/geometry.hpp"
#include "simplexgeo/montecarlo.hpp"
#include "simplexgeo/random_stream.hpp"
#include "simplexgeo/running_moments.hpp"
#include "simplexgeo/sampling.hpp"
#include "simplexgeo/stats.hpp"

using namespace simplexgeo;
using std::numbers::pi;

namespace {

// Deterministic quantile grid of a distribution given its inverse cdf.
template <class InverseCdf>
std::vector<double> quantile_grid(int n, InverseCdf inverse) {
    std::vector<double> grid(n);
    for (int i = 0; i < n; ++i) grid[i] = inverse((i + 0.5) / n);
    return grid;
}

}  // namespace

TEST_CASE("streams replay and split deterministically") {
    RandomStream a(42), b(42);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
    const RandomStream root(42);
    auto c1 = root.split(3), c2 = root.split(3), other = root.split(4);
    bool differs = false;
    for (int i = 0; i < 10; ++i) {
        const auto x = c1.next_u64();
        CHECK(x == c2.next_u64());
        differs = differs || x != other.next_u64();
    }
    CHECK(differs);
    CHECK(root.split(1).split(2).path() == std::vector<std::uint64_t>{1, 2});
    auto s1 = root.split(7), s2 = root.split(7);
    const Matrix m1 = gaussian_matrix(s1, 3, 2);
    const Matrix m2 = gaussian_matrix(s2, 3, 2);
    CHECK(m1 == m2);
}

TEST_CASE("uniform draws stay in range") {
    RandomStream s(1);
    for (int i = 0; i < 100000; ++i) {
        const double u = s.uniform();
        const double v = s.uniform_open();
        CHECK((u >= 0.0 && u < 1.0));
        CHECK((v > 0.0 && v < 1.0));
    }
}

TEST_CASE("standard normal mean and variance") {
    RandomStream s(2024);
    RunningMoments m;
    const int n = 1000000;
    const Matrix g = gaussian_matrix(s, 1000, 1000);
    for (int i = 0; i < n; ++i) m.push(g.data()[i]);
    CHECK(std::abs(m.mean()) <= 4.0 / std::sqrt(n));
    CHECK(std::abs(m.variance() - 1.0) <= 4.0 * std::sqrt(2.0 / n));
}

TEST_CASE("uniform_in_ellipsoid containment and moments") {
    RandomStream s(9);
    const std::vector<double> axes{3.0, 1.0, 0.5};
    Matrix frame = Matrix::Identity(3, 3);
    frame.topLeftCorner(2, 2) << std::cos(0.4), -std::sin(0.4), std::sin(0.4), std::cos(0.4);
    const auto e = Ellipsoid::from_semiaxes(axes, frame);
    for (int i = 0; i < 20000; ++i) {
        const Vector x = uniform_in_ellipsoid(s, e);
        CHECK(x.dot(e.shape() * x) <= 1.0 + 1e-12);
    }

    const auto segment = Ellipsoid::unit_ball(1);
    RunningMoments sq;
    for (int i = 0; i < 1000000; ++i) {
        const double x = uniform_in_ellipsoid(s, segment)[0];
        sq.push(x * x);
    }
    CHECK(std::abs(sq.mean() - 1.0 / 3.0) <= 4.0 * sq.std_error());

    // Uniform ball in 3-D has covariance I/5.
    RunningMoments cov[3][3];
    const auto b3 = Ellipsoid::unit_ball(3);
    for (int i = 0; i < 200000; ++i) {
        const Vector x = uniform_in_ellipsoid(s, b3);
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) cov[r][c].push(x[r] * x[c]);
    }
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) {
            const double expected = r == c ? 0.2 : 0.0;
            CHECK(std::abs(cov[r][c].mean() - expected) <= 4.0 * cov[r][c].std_error());
        }
    }
}

TEST_CASE("ellipsoid samples pulled back to the ball have uniform radius^d") {
    RandomStream s(77);
    const std::vector<double> axes{2.0, 1.0, 0.5};
    const auto e = Ellipsoid::from_semiaxes(axes);
    const Matrix back = e.sym_root().inverse();
    const int n = 100000;
    std::vector<double> powered(n);
    for (int i = 0; i < n; ++i) powered[i] = std::pow((back * uniform_in_ellipsoid(s, e)).norm(), 3);
    const auto ks = ks_two_sample(powered, quantile_grid(n, [](double u) { return u; }));
    CHECK(ks.p_value >= 0.01);
}

TEST_CASE("haar_subspace frames are orthonormal") {
    RandomStream s(5);
    for (int d = 1; d <= 8; ++d) {
        for (int k = 1; k <= d; ++k) {
            for (int t = 0; t < 20; ++t) {
                const auto l = haar_subspace(s, d, k);
                CHECK((l.frame().transpose() * l.frame() - Matrix::Identity(k, k)).cwiseAbs().maxCoeff() <= 1e-12);
            }
        }
    }
    CHECK_THROWS_AS(haar_subspace(s, 2, 3), DomainError);
    CHECK_THROWS_AS(haar_subspace(s, 2, 0), DomainError);
}

TEST_CASE("planar Haar lines have uniform angle") {
    RandomStream s(314);
    const int n = 100000;
    std::vector<double> angles(n);
    for (int i = 0; i < n; ++i) {
        const auto f = haar_subspace(s, 2, 1).frame();
        double angle = std::atan2(f(1, 0), f(0, 0));
        angle = std::fmod(angle + 2.0 * pi, pi);
        angles[i] = angle;
    }
    const auto ks = ks_two_sample(angles, quantile_grid(n, [](double u) { return u * pi; }));
    CHECK(ks.p_value >= 0.01);
}

TEST_CASE("Haar projections do not depend on the fixed direction") {
    RandomStream s(8);
    const int n = 100000;
    Vector e1 = Vector::Zero(4);
    e1(0) = 1.0;
    Vector v(4);
    v << 0.5, -0.5, 0.5, 0.5;
    std::vector<double> a(n), b(n);
    for (int i = 0; i < n; ++i) {
        const auto l1 = haar_subspace(s, 4, 2);
        a[i] = (l1.frame().transpose() * e1).norm();
        const auto l2 = haar_subspace(s, 4, 2);
        b[i] = (l2.frame().transpose() * v).norm();
    }
    CHECK(ks_two_sample(a, b).p_value >= 0.01);
}

TEST_CASE("haar_orthogonal is orthogonal") {
    RandomStream s(12);
    for (int d = 1; d <= 8; ++d) {
        const Matrix r = haar_orthogonal(s, d);
        CHECK((r.transpose() * r - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() <= 1e-12);
    }
}

TEST_CASE("affine samples are calibrated") {
    RandomStream s(99);
    for (auto [d, k] : {std::pair{2, 1}, std::pair{3, 1}, std::pair{3, 2}}) {
        // Sample around a radius-2 ball so that many flats miss the unit ball.
        const auto ball = Ellipsoid::unit_ball(d);
        const auto body = Ellipsoid::from_semiaxes(std::vector<double>(d, 2.0));
        RunningMoments hits;
        for (int i = 0; i < 200000; ++i) {
            const auto sample = haar_affine_sample(s, body, k);
            const double distance = sample.subspace.offset().norm();
            const bool meets = distance <= 1.0;
            hits.push(meets ? sample.weight : 0.0);
            CHECK(sample.weight == doctest::Approx(ball_volume(d - k) * std::pow(2.0, d - k)).epsilon(1e-14));
            CHECK(distance <= 2.0 + 1e-12);
            if (distance < 1.0 - 1e-9) CHECK(section_volume(ball, sample.subspace) > 0.0);
            if (!meets) CHECK(section_volume(ball, sample.subspace) == 0.0);
        }
        CAPTURE(d);
        CAPTURE(k);
        CHECK(std::abs(hits.mean() - ball_volume(d - k)) <= 4.0 * hits.std_error());
    }

    const auto disk = Ellipsoid::unit_ball(2);
    RunningMoments chord3;
    for (int i = 0; i < 400000; ++i) {
        const auto sample = haar_affine_sample(s, disk, 1);
        chord3.push(sample.weight * std::pow(section_volume(disk, sample.subspace), 3));
    }
    CHECK(std::abs(chord3.mean() - 3.0 * pi) <= 4.0 * chord3.std_error());

    const std::vector<double> axes{2.0, 1.0};
    const auto e = Ellipsoid::from_semiaxes(axes);
    const auto sample = haar_affine_sample(s, e, 0);
    CHECK(sample.weight == doctest::Approx(ball_volume(2) * 4.0).epsilon(1e-14));
    CHECK_THROWS_AS(haar_affine_sample(s, e, 2), DomainError);
}

TEST_CASE("beta samples") {
    RandomStream s(4);
    const int n = 100000;
    std::vector<double> uniform(n), arcsine(n);
    for (int i = 0; i < n; ++i) uniform[i] = beta_sample(s, {1.0, 1.0});
    CHECK(ks_two_sample(uniform, quantile_grid(n, [](double u) { return u; })).p_value >= 0.01);

    for (int i = 0; i < n; ++i) arcsine[i] = beta_sample(s, {0.5, 0.5});
    // Inverse of (2/pi) asin(sqrt(t)).
    const auto grid = quantile_grid(n, [](double u) { return std::pow(std::sin(u * pi / 2.0), 2); });
    CHECK(ks_two_sample(arcsine, grid).p_value >= 0.01);

    for (BetaSpec spec : {BetaSpec{2.5, 3.0}, BetaSpec{0.3, 1.5}, BetaSpec{4.0, 0.5}}) {
        RunningMoments m;
        for (int i = 0; i < n; ++i) {
            const double x = beta_sample(s, spec);
            CHECK((x > 0.0 && x < 1.0));
            m.push(x);
        }
        CHECK(std::abs(m.mean() - spec.mean()) <= 4.0 * m.std_error());
    }
    CHECK_THROWS_AS(beta_sample(s, {0.0, 1.0}), DomainError);
    CHECK_THROWS_AS(beta_sample(s, {1.0, -2.0}), DomainError);
}

TEST_CASE("gamma samples have the right mean") {
    RandomStream s(6);
    for (double shape : {0.25, 0.5, 1.0, 3.7}) {
        RunningMoments m;
        for (int i = 0; i < 200000; ++i) m.push(gamma_sample(s, shape));
        CHECK(std::abs(m.mean() - shape) <= 4.0 * m.std_error());
    }
}

TEST_CASE("coupled_gram_ratio special cases") {
    RandomStream s(10);
    const std::vector<double> ones(4, 1.0);
    for (int i = 0; i < 100; ++i) CHECK(coupled_gram_ratio(s, ones, 2) == doctest::Approx(1.0).epsilon(1e-12));
    const std::vector<double> axes{2.0, 1.0, 0.5};
    for (int i = 0; i < 100; ++i) CHECK(coupled_gram_ratio(s, axes, 3) == doctest::Approx(1.0).epsilon(1e-12));
    const std::vector<double> axes2{3.0, 0.5};
    for (int i = 0; i < 100; ++i) CHECK(coupled_gram_ratio(s, axes2, 2) == doctest::Approx(1.5).epsilon(1e-12));

    // The k = 1 value uses the same normals as a plain Gaussian draw from an identical stream.
    RandomStream replay(123), probe(123);
    for (int i = 0; i < 100; ++i) {
        const Matrix g = gaussian_matrix(probe, 2, 1);
        const double expected = std::sqrt((9.0 * g(0, 0) * g(0, 0) + 0.25 * g(1, 0) * g(1, 0)) / g.squaredNorm());
        CHECK(coupled_gram_ratio(replay, axes2, 1) == doctest::Approx(expected).epsilon(1e-13));
    }
}

TEST_CASE("Gram representation: per-draw residual and distribution") {
    const struct {
        int k;
        std::vector<double> axes;
    } cases[] = {{1, {2.0, 1.0, 0.5}}, {2, {2.0, 1.0, 0.5}}, {2, {2.0, 1.0, 0.5, 0.25}}};
    std::uint64_t seed = 500;
    for (const auto& c : cases) {
        const auto e = Ellipsoid::from_semiaxes(c.axes);
        const auto result = sample_gram_ratio_pair(RandomStream(seed++), e, c.k, 100000);
        CHECK(result.max_relative_residual <= 1e-10);
        CHECK(ks_two_sample(result.samples.lhs, result.samples.rhs).p_value >= 0.01);
    }
}
