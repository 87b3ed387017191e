#include "hlq/parallel.hpp"

namespace hlq {
namespace {

unsigned hardware_default() {
  unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : n;
}

std::atomic<unsigned>& default_worker_slot() {
  static std::atomic<unsigned> slot{hardware_default()};
  return slot;
}

}  // namespace

unsigned default_workers() { return default_worker_slot().load(std::memory_order_relaxed); }

void set_default_workers(unsigned workers) {
  default_worker_slot().store(workers == 0 ? hardware_default() : workers,
                              std::memory_order_relaxed);
}

}  // namespace hlq
