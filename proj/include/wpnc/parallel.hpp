#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

#include "rng.hpp"

namespace wpnc {

inline constexpr long long kChunkItems = 1LL << 16;

// Deterministic chunked Monte Carlo driver.  Work splits into fixed-size
// chunks; the chunk index keys both the random stream and the result slot,
// so the collected results do not depend on scheduling or worker count.
// body(rng, first_item, item_count) -> Result.
template <class Result, class Body>
std::vector<Result> map_chunks(long long total_items, std::uint64_t seed,
                               std::uint64_t stream_tag, int workers, Body body) {
  if (total_items <= 0) return {};
  long long n_chunks = (total_items + kChunkItems - 1) / kChunkItems;
  std::vector<Result> out(static_cast<size_t>(n_chunks));
  std::atomic<long long> next{0};
  auto run = [&] {
    for (;;) {
      long long c = next.fetch_add(1);
      if (c >= n_chunks) break;
      long long first = c * kChunkItems;
      long long count = std::min(kChunkItems, total_items - first);
      CounterRng rng(seed, (stream_tag << 40) + static_cast<std::uint64_t>(c));
      out[static_cast<size_t>(c)] = body(rng, first, count);
    }
  };
  int nw = static_cast<int>(std::max(1LL, std::min<long long>(workers, n_chunks)));
  if (nw == 1) {
    run();
    return out;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(nw));
  for (int w = 0; w < nw; ++w) pool.emplace_back(run);
  for (auto& t : pool) t.join();
  return out;
}

}  // namespace wpnc
