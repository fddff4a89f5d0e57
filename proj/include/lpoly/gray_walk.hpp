#pragma once

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <thread>
#include <vector>

#include "lpoly/family.hpp"

namespace lpoly::detail {

/// Reflected binary Gray code of t.
constexpr std::uint64_t gray(std::uint64_t t) noexcept { return t ^ (t >> 1); }

/// Walks the Gray-code points t in [begin, end), calling
/// visit(t, bits, value) at each, where bit i of `bits` set means x_i = -1 and
/// value = h(x). The first point is evaluated from scratch; every later step
/// flips one variable i and updates h by -2 * (sum of current products of the
/// monomials containing i), which costs O(u_i).
template <class Visit>
void walk_gray_range(const LittlewoodPoly& poly, std::uint64_t begin, std::uint64_t end, Visit&& visit) {
    if (begin >= end) return;
    const auto& family = poly.family();
    const auto& masks = family.masks();
    const auto& incidence = family.incidence();
    const std::size_t u = poly.size();

    std::vector<std::int8_t> current(u);
    std::uint64_t bits = gray(begin);
    std::int64_t value = 0;
    for (std::size_t m = 0; m < u; ++m) {
        const int parity = std::popcount(masks[m] & bits) & 1;
        current[m] = static_cast<std::int8_t>(parity ? -poly.sign(m) : poly.sign(m));
        value += current[m];
    }
    visit(begin, bits, value);
    for (std::uint64_t t = begin + 1; t < end; ++t) {
        const auto i = static_cast<std::size_t>(std::countr_zero(t));
        bits ^= std::uint64_t{1} << i;
        std::int64_t delta = 0;
        for (auto m : incidence[i]) {
            delta += current[m];
            current[m] = static_cast<std::int8_t>(-current[m]);
        }
        value -= 2 * delta;
        visit(t, bits, value);
    }
}

/// Number of contiguous chunks a range of `total` points is cut into. Fixed
/// independently of the worker count so per-chunk partial results, merged in
/// chunk order, are identical for any number of workers.
inline std::size_t chunk_count(std::uint64_t total) {
    constexpr std::uint64_t kMinChunk = 1 << 12;
    constexpr std::uint64_t kMaxChunks = 256;
    return static_cast<std::size_t>(std::clamp<std::uint64_t>(total / kMinChunk, 1, kMaxChunks));
}

/// Runs `work(chunk_index, begin, end)` over the chunks of [0, total) on up
/// to `workers` threads and returns the per-chunk results in chunk order.
template <class Result, class Work>
std::vector<Result> run_chunks(std::uint64_t total, unsigned workers, Work&& work) {
    const std::size_t chunks = chunk_count(total);
    std::vector<Result> results(chunks);
    auto bounds = [&](std::size_t c) { return total / chunks * c + std::min<std::uint64_t>(c, total % chunks); };
    std::atomic<std::size_t> next{0};
    auto loop = [&] {
        for (std::size_t c = next++; c < chunks; c = next++) results[c] = work(c, bounds(c), bounds(c + 1));
    };
    const unsigned threads = std::max(1U, std::min<unsigned>(workers, static_cast<unsigned>(chunks)));
    if (threads == 1) {
        loop();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned w = 0; w < threads; ++w) pool.emplace_back(loop);
    }
    return results;
}

}  // namespace lpoly::detail
