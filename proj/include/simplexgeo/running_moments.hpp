#pragma once

#include <cmath>
#include <cstdint>

namespace simplexgeo {

// Welford accumulator with the pairwise (Chan et al.) merge.
class RunningMoments {
public:
    void push(double x) {
        ++count_;
        const double delta = x - mean_;
        mean_ += delta / static_cast<double>(count_);
        m2_ += delta * (x - mean_);
    }

    void merge(const RunningMoments& other) {
        if (other.count_ == 0) return;
        if (count_ == 0) {
            *this = other;
            return;
        }
        const double n1 = static_cast<double>(count_);
        const double n2 = static_cast<double>(other.count_);
        const double n = n1 + n2;
        const double delta = other.mean_ - mean_;
        mean_ += delta * n2 / n;
        m2_ += other.m2_ + delta * delta * n1 * n2 / n;
        count_ += other.count_;
    }

    std::int64_t count() const { return count_; }
    double mean() const { return mean_; }
    double m2() const { return m2_; }
    double variance() const { return count_ >= 2 ? m2_ / static_cast<double>(count_ - 1) : 0.0; }
    double std_error() const {
        return count_ >= 2 ? std::sqrt(m2_ / (static_cast<double>(count_) * static_cast<double>(count_ - 1)))
                           : 0.0;
    }

private:
    std::int64_t count_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

}  // namespace simplexgeo
