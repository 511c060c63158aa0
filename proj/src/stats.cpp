#include "simplexgeo/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "simplexgeo/errors.hpp"

namespace simplexgeo {
namespace {

constexpr double kSeriesCutoff = 1e-12;

std::vector<double> sorted_copy(std::span<const double> values, const char* side) {
    if (values.size() < 5) {
        throw DomainError(std::string("KS sample ") + side + " needs at least 5 values");
    }
    std::vector<double> out(values.begin(), values.end());
    for (double v : out) {
        if (std::isnan(v)) throw DomainError(std::string("KS sample ") + side + " contains NaN");
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

double kolmogorov_survival(double lambda) {
    if (!(lambda > 0.0)) return 1.0;
    if (lambda < 1.18) {
        // Theta-function form converges fast for small lambda.
        const double pi2 = std::numbers::pi * std::numbers::pi;
        const double w = -pi2 / (8.0 * lambda * lambda);
        double sum = 0.0;
        for (int j = 1; j < 100; ++j) {
            const double odd = 2.0 * j - 1.0;
            const double term = std::exp(odd * odd * w);
            sum += term;
            if (term < kSeriesCutoff * sum) break;
        }
        const double cdf = std::sqrt(2.0 * std::numbers::pi) / lambda * sum;
        return std::clamp(1.0 - cdf, 0.0, 1.0);
    }
    double sum = 0.0;
    double sign = 1.0;
    for (int j = 1; j < 100; ++j) {
        const double term = std::exp(-2.0 * j * j * lambda * lambda);
        sum += sign * term;
        if (term < kSeriesCutoff) break;
        sign = -sign;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
    const std::vector<double> x = sorted_copy(a, "a");
    const std::vector<double> y = sorted_copy(b, "b");
    const double n1 = static_cast<double>(x.size());
    const double n2 = static_cast<double>(y.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < x.size() && j < y.size()) {
        const double v = std::min(x[i], y[j]);
        while (i < x.size() && x[i] == v) ++i;
        while (j < y.size() && y[j] == v) ++j;
        d = std::max(d, std::abs(i / n1 - j / n2));
    }
    const double ne = n1 * n2 / (n1 + n2);
    const double root = std::sqrt(ne);
    KsResult result;
    result.statistic = d;
    result.p_value = kolmogorov_survival((root + 0.12 + 0.11 / root) * d);
    result.n1 = x.size();
    result.n2 = y.size();
    return result;
}

double z_compare(const Measurement& lhs, const Measurement& rhs) {
    const double var = lhs.std_error * lhs.std_error + rhs.std_error * rhs.std_error;
    const double diff = lhs.value - rhs.value;
    if (var > 0.0) return diff / std::sqrt(var);
    const double scale = std::max(std::abs(lhs.value), std::abs(rhs.value));
    if (std::abs(diff) <= 1e-12 * scale) return 0.0;
    return std::copysign(std::numeric_limits<double>::infinity(), diff);
}

}  // namespace simplexgeo
