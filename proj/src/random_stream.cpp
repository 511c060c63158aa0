#include "simplexgeo/random_stream.hpp"

#include <bit>
#include <cmath>

namespace simplexgeo {
namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t mix(std::uint64_t x) { return splitmix64(x); }

}  // namespace

RandomStream::RandomStream(std::uint64_t seed) : seed_(seed) { reseed(); }

RandomStream::RandomStream(std::uint64_t seed, std::vector<std::uint64_t> path)
    : seed_(seed), path_(std::move(path)) {
    reseed();
}

void RandomStream::reseed() {
    // Fold the path into the key one level at a time; the depth is mixed in
    // so that {} and {0} are distinct identities.
    std::uint64_t key = mix(seed_);
    for (std::uint64_t index : path_) key = mix(key ^ mix(index + 0x632be59bd9b4e019ULL));
    key ^= mix(path_.size() * 0xd1b54a32d192ed03ULL);
    for (auto& word : state_) word = splitmix64(key);
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
    spare_normal_.reset();
}

RandomStream RandomStream::split(std::uint64_t index) const {
    auto child_path = path_;
    child_path.push_back(index);
    return RandomStream(seed_, std::move(child_path));
}

std::uint64_t RandomStream::next_u64() {
    const std::uint64_t result = std::rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = std::rotl(state_[3], 45);
    return result;
}

double RandomStream::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double RandomStream::uniform_open() {
    return (static_cast<double>(next_u64() >> 12) + 0.5) * 0x1.0p-52;
}

double RandomStream::normal() {
    if (spare_normal_) {
        const double value = *spare_normal_;
        spare_normal_.reset();
        return value;
    }
    double u, v, s;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double factor = std::sqrt(-2.0 * std::log(s) / s);
    spare_normal_ = v * factor;
    return u * factor;
}

}  // namespace simplexgeo
