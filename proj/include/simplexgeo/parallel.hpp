#pragma once

// Deterministic data-parallel driver. Work is cut into a fixed number of
// chunks; chunk c always draws from stream.split(c) and results are merged
// in chunk order, so the output does not depend on the worker count.

#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "simplexgeo/random_stream.hpp"
#include "simplexgeo/running_moments.hpp"

namespace simplexgeo {

inline constexpr int kChunkCount = 64;

/// Number of samples assigned to `chunk` when n are split over kChunkCount chunks.
inline std::int64_t chunk_size(std::int64_t n, int chunk) {
    return n / kChunkCount + (chunk < n % kChunkCount ? 1 : 0);
}

/// Runs body(chunk) for every chunk on up to `workers` threads.
template <typename Body>
void for_each_chunk(int workers, Body&& body) {
    if (workers <= 1) {
        for (int c = 0; c < kChunkCount; ++c) body(c);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto run = [&] {
        for (int c = next++; c < kChunkCount; c = next++) {
            try {
                body(c);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        }
    };
    std::vector<std::jthread> pool;
    const int count = workers < kChunkCount ? workers : kChunkCount;
    pool.reserve(static_cast<std::size_t>(count));
    for (int w = 0; w < count; ++w) pool.emplace_back(run);
    pool.clear();
    if (error) std::rethrow_exception(error);
}

/// Streaming moments of draw(stream) over n samples.
template <typename Draw>
RunningMoments parallel_moments(const RandomStream& stream, std::int64_t n, int workers, Draw&& draw) {
    std::vector<RunningMoments> partial(kChunkCount);
    for_each_chunk(workers, [&](int c) {
        RandomStream local = stream.split(static_cast<std::uint64_t>(c));
        RunningMoments acc;
        for (std::int64_t i = chunk_size(n, c); i > 0; --i) acc.push(draw(local));
        partial[static_cast<std::size_t>(c)] = acc;
    });
    RunningMoments total;
    for (const auto& part : partial) total.merge(part);
    return total;
}

/// n samples of draw(stream), concatenated in chunk order.
template <typename Draw>
std::vector<double> parallel_samples(const RandomStream& stream, std::int64_t n, int workers, Draw&& draw) {
    std::vector<std::vector<double>> partial(kChunkCount);
    for_each_chunk(workers, [&](int c) {
        RandomStream local = stream.split(static_cast<std::uint64_t>(c));
        auto& out = partial[static_cast<std::size_t>(c)];
        out.reserve(static_cast<std::size_t>(chunk_size(n, c)));
        for (std::int64_t i = chunk_size(n, c); i > 0; --i) out.push_back(draw(local));
    });
    std::vector<double> all;
    all.reserve(static_cast<std::size_t>(n));
    for (const auto& part : partial) all.insert(all.end(), part.begin(), part.end());
    return all;
}

}  // namespace simplexgeo
