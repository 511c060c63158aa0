#pragma once

// Seeded, splittable random source. A stream is identified by (seed, path);
// the generator state is a hash of that identity, so any child can be
// rebuilt independently of how much of its parent was consumed.

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

namespace simplexgeo {

class RandomStream {
public:
    using result_type = std::uint64_t;

    explicit RandomStream(std::uint64_t seed);

    // Child stream with path() + {index}. Does not advance *this.
    RandomStream split(std::uint64_t index) const;

    std::uint64_t seed() const { return seed_; }
    const std::vector<std::uint64_t>& path() const { return path_; }

    // xoshiro256++
    std::uint64_t next_u64();
    result_type operator()() { return next_u64(); }
    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    // Uniform on [0, 1) with 53 random bits.
    double uniform();
    // Uniform on (0, 1).
    double uniform_open();
    // Standard normal via the Marsaglia polar method; the spare value is cached.
    double normal();

private:
    RandomStream(std::uint64_t seed, std::vector<std::uint64_t> path);
    void reseed();

    std::uint64_t seed_;
    std::vector<std::uint64_t> path_;
    std::array<std::uint64_t, 4> state_{};
    std::optional<double> spare_normal_;
};

}  // namespace simplexgeo
