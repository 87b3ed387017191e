#pragma once

// Minimal fork-join helpers. Work is split into index ranges fixed by the
// caller, never by the worker count, so reductions are reproducible.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "hlq/double_double.hpp"

namespace hlq {

// Process-wide default used when a caller passes workers == 0.
unsigned default_workers();
void set_default_workers(unsigned workers);

inline unsigned resolve_workers(unsigned requested) {
  return requested == 0 ? default_workers() : requested;
}

// Calls fn(i) for every i in [0, count), spread over `workers` threads.
// The first exception thrown by any call is rethrown on the caller.
template <class Fn>
void parallel_for(std::size_t count, unsigned workers, Fn&& fn) {
  workers = std::max(1u, resolve_workers(workers));
  if (workers == 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) {
      fn(i);
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto body = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= count) {
        return;
      }
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) {
          error = std::current_exception();
        }
        next.store(count, std::memory_order_relaxed);
      }
    }
  };
  std::size_t n_threads = std::min<std::size_t>(workers, count);
  std::vector<std::jthread> pool;
  pool.reserve(n_threads - 1);
  for (std::size_t t = 1; t < n_threads; ++t) {
    pool.emplace_back(body);
  }
  body();
  pool.clear();
  if (error) {
    std::rethrow_exception(error);
  }
}

// Index-ordered pairwise merge of partial sums over [lo, hi).
inline CompensatedSum pairwise_merge(const std::vector<CompensatedSum>& parts, std::size_t lo,
                                     std::size_t hi) {
  if (hi - lo == 1) {
    return parts[lo];
  }
  std::size_t mid = lo + (hi - lo) / 2;
  CompensatedSum left = pairwise_merge(parts, lo, mid);
  left.merge(pairwise_merge(parts, mid, hi));
  return left;
}

inline constexpr std::uint64_t kSumChunk = std::uint64_t{1} << 16;
inline constexpr std::size_t kChunksPerWave = 4096;

// Deterministic sum over the integer range [first, last]. chunk_fn(a, b)
// returns the compensated sum over [a, b]; chunks are 2^16 indices wide and
// anchored at `first`, and partials are merged pairwise in index order
// (two levels: within waves of 4096 chunks, then across waves).
template <class ChunkFn>
DoubleDouble deterministic_range_sum(std::uint64_t first, std::uint64_t last, unsigned workers,
                                     ChunkFn&& chunk_fn) {
  if (last < first) {
    return {};
  }
  std::uint64_t n_chunks = (last - first) / kSumChunk + 1;
  std::vector<CompensatedSum> wave_totals;
  std::vector<CompensatedSum> parts;
  for (std::uint64_t wave_start = 0; wave_start < n_chunks; wave_start += kChunksPerWave) {
    std::size_t in_wave =
        static_cast<std::size_t>(std::min<std::uint64_t>(kChunksPerWave, n_chunks - wave_start));
    parts.assign(in_wave, CompensatedSum{});
    parallel_for(in_wave, workers, [&](std::size_t c) {
      std::uint64_t a = first + (wave_start + c) * kSumChunk;
      std::uint64_t b = (last - a < kSumChunk - 1) ? last : a + kSumChunk - 1;
      parts[c] = chunk_fn(a, b);
    });
    wave_totals.push_back(pairwise_merge(parts, 0, in_wave));
  }
  return pairwise_merge(wave_totals, 0, wave_totals.size()).value_dd();
}

}  // namespace hlq
