#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "wgc/graph.hpp"

namespace wgc {

// Compression-ratio vs query-latency sweep over a parameter grid. Nodes
// are sampled uniformly with replacement from a seeded generator, the
// whole sample is replayed `runs` times per parameter point, and the
// mean per-query latency is reported next to the representation's
// bits/link.
struct BenchConfig {
  std::string method;                 // "lm" or "2d"
  std::string mode = "succ";          // "succ" or "pred"
  std::vector<uint32_t> h_grid;       // lm chunk heights
  std::vector<uint32_t> tile_grid;    // 2d tile sizes
  std::vector<uint32_t> stripe_grid;  // 2d stripe counts
  uint64_t samples = 100000;
  uint32_t runs = 0;  // 0 picks the default: 10 for lm, 4 for 2d
  uint64_t seed = 1;
};

struct BenchRecord {
  std::string method;
  uint32_t param1 = 0;  // h or B
  uint32_t param2 = 0;  // 0 for lm, K for 2d
  double bits_per_link = 0.0;
  double mean_us = 0.0;               // mean per-query latency over runs
  std::vector<double> run_seconds;    // wall time of each full sample pass
  uint64_t decoded_tile_bodies = 0;   // per sample pass, 0 for lm
  uint32_t runs = 0;
  uint64_t samples = 0;
  uint64_t seed = 0;
};

// `count` ids uniform over [0, n), duplicates permitted.
std::vector<NodeId> sample_nodes(uint64_t n, uint64_t count, uint64_t seed);

// Runs the sweep; `log` (optional) receives one human-readable line per
// parameter point. Predecessor mode on "lm" compresses the transposed
// graph and queries its successors.
std::vector<BenchRecord> run_bench(const AdjacencyGraph& g,
                                   const BenchConfig& cfg,
                                   std::ostream* log = nullptr);

// Fixed column set; mean_us is the only field that varies between runs
// with identical configuration.
inline constexpr char kBenchCsvHeader[] =
    "method,param1,param2,bits_per_link,mean_us,runs,samples,seed";

void write_bench_csv(std::span<const BenchRecord> records, std::ostream& out);

}  // namespace wgc
