#pragma once

// Independent reference computations for the tests. Nothing here calls the
// library: quadrature is composite Simpson/trapezoid, random points come from
// std::mt19937_64 by rejection from the cube.

#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

inline constexpr double kPi = std::numbers::pi;

// Composite Simpson on [a, b] with `intervals` (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int intervals = 20000) {
    if (intervals % 2) ++intervals;
    const double h = (b - a) / intervals;
    double sum = f(a) + f(b);
    for (int i = 1; i < intervals; ++i) sum += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return sum * h / 3.0;
}

// Unit ball volume by the slice recursion kappa_k = kappa_{k-1} * int_{-pi/2}^{pi/2} cos^k(t) dt.
inline double ball_volume_by_slices(int k) {
    double kappa = 1.0;
    for (int j = 1; j <= k; ++j) {
        kappa *= simpson([j](double t) { return std::pow(std::cos(t), j); }, -kPi / 2, kPi / 2, 2000);
    }
    return kappa;
}

struct Sampler {
    std::mt19937_64 engine;
    std::uniform_real_distribution<double> unit{-1.0, 1.0};

    explicit Sampler(std::uint64_t seed) : engine(seed) {}

    std::vector<double> in_ball(int d) {
        std::vector<double> x(static_cast<std::size_t>(d));
        for (;;) {
            double r2 = 0.0;
            for (auto& v : x) {
                v = unit(engine);
                r2 += v * v;
            }
            if (r2 <= 1.0) return x;
        }
    }
};

// Mean and standard error of a sample.
struct MeanSe {
    double mean = 0.0;
    double se = 0.0;
};

inline MeanSe mean_se(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m += x;
    m /= static_cast<double>(v.size());
    double ss = 0.0;
    for (double x : v) ss += (x - m) * (x - m);
    return {m, std::sqrt(ss / (static_cast<double>(v.size()) * (v.size() - 1.0)))};
}

// Euclidean distance.
inline double distance(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
}

// Area of the planar triangle (a, b, c).
inline double triangle_area(const std::vector<double>& a, const std::vector<double>& b, const std::vector<double>& c) {
    return 0.5 * std::abs((b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]));
}

// Integral over the affine k-flats of R^d of |B^d cap E|^q, by the radial
// offset integral kappa_k^q * omega_{d-k} * int_0^1 (1-r^2)^{kq/2} r^{d-k-1} dr.
inline double ball_affine_section_integral(int d, int k, double q) {
    const int codim = d - k;
    const double kappa_k = std::pow(kPi, k / 2.0) / std::tgamma(k / 2.0 + 1.0);
    const double omega = codim * std::pow(kPi, codim / 2.0) / std::tgamma(codim / 2.0 + 1.0);
    // r = sin(t) removes the endpoint singularity.
    const double radial = simpson(
        [&](double t) {
            const double c = std::cos(t);
            return std::pow(c, k * q + 1.0) * std::pow(std::sin(t), codim - 1.0);
        },
        0.0, kPi / 2, 20000);
    return std::pow(kappa_k, q) * omega * radial;
}

// Chord length of the ellipse x^2/a^2 + y^2/b^2 = 1 through the origin at angle t.
inline double ellipse_central_chord(double a, double b, double t) {
    const double c = std::cos(t), s = std::sin(t);
    return 2.0 / std::sqrt(c * c / (a * a) + s * s / (b * b));
}

// Projection length of that ellipse onto the line at angle t.
inline double ellipse_shadow(double a, double b, double t) {
    const double c = std::cos(t), s = std::sin(t);
    return 2.0 * std::sqrt(a * a * c * c + b * b * s * s);
}

// Mean over a uniform direction of f(t), t in [0, pi).
inline double angular_mean(const std::function<double(double)>& f) { return simpson(f, 0.0, kPi, 20000) / kPi; }

// Integral over all lines of |ellipse cap line|^q: for each direction t the
// chords at offset s along the normal have length chord(t) * sqrt(1 - (s/h(t))^2)
// with h(t) the support half-width, giving chord^q * h * int_{-1}^{1} (1-u^2)^{q/2} du.
inline double ellipse_affine_section_integral(double a, double b, double q) {
    const double unit = simpson([q](double s) { return std::pow(std::cos(s), q + 1.0); }, -kPi / 2, kPi / 2, 4000);
    return angular_mean([&](double t) {
        const double chord = ellipse_central_chord(a, b, t);
        const double half_width = 0.5 * ellipse_shadow(a, b, t + kPi / 2);
        return std::pow(chord, q) * half_width * unit;
    });
}

}  // namespace oracle
