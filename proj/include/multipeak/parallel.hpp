#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace multipeak {

/// Worker count used by the chunked sweeps; at least 1.
inline unsigned default_worker_count() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

/// Splits [0, n) into `chunks` contiguous subranges and runs
/// fn(chunk_index, begin, end) for each, distributing chunks over a small
/// thread pool. Chunk boundaries depend only on (n, chunks), so callers can
/// merge per-chunk results in chunk order and stay deterministic regardless
/// of the number of workers. The first exception thrown by fn is rethrown.
template <typename Fn>
void run_chunked(std::uint64_t n, unsigned chunks, Fn&& fn,
                 unsigned workers = 0) {
  if (n == 0) return;
  if (chunks == 0) chunks = 1;
  if (static_cast<std::uint64_t>(chunks) > n) {
    chunks = static_cast<unsigned>(n);
  }
  if (workers == 0) workers = default_worker_count();
  if (workers > chunks) workers = chunks;

  std::atomic<unsigned> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;

  auto drain = [&]() {
    for (;;) {
      const unsigned c = next.fetch_add(1);
      if (c >= chunks) return;
      const std::uint64_t begin = n / chunks * c + std::min<std::uint64_t>(c, n % chunks);
      const std::uint64_t size = n / chunks + (c < n % chunks ? 1 : 0);
      try {
        fn(c, begin, begin + size);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };

  if (workers <= 1) {
    drain();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(drain);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace multipeak
