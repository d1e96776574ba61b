#include "wgc/bench.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <cstdio>
#include <ostream>

#include "wgc/lm_graph.hpp"
#include "wgc/rng.hpp"
#include "wgc/stripe_graph.hpp"

namespace wgc {

std::vector<NodeId> sample_nodes(uint64_t n, uint64_t count, uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<NodeId> ids(count);
  for (auto& id : ids) id = static_cast<NodeId>(rng.next_below(n));
  return ids;
}

namespace {

struct TimingResult {
  std::vector<double> run_seconds;
  double mean_us = 0.0;
  uint64_t decoded_tile_bodies = 0;
};

// One untimed warm-up pass grows every cursor buffer to its maximum, so
// the timed passes stay allocation-free (checked via capacities in debug
// builds) and the decode-counter delta of a single pass can be taken.
template <typename Query>
TimingResult time_queries(std::span<const NodeId> sample, uint32_t runs,
                          QueryCursor& cursor, Query&& query) {
  TimingResult res;
  const uint64_t decoded_before = cursor.decoded_tile_bodies;
  for (NodeId u : sample) query(u);
  res.decoded_tile_bodies = cursor.decoded_tile_bodies - decoded_before;
#ifndef NDEBUG
  const size_t cap_scratch = cursor.scratch.capacity();
  const size_t cap_values = cursor.values.capacity();
  const size_t cap_out = cursor.out.capacity();
#endif
  double total = 0.0;
  res.run_seconds.reserve(runs);
  for (uint32_t r = 0; r < runs; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    for (NodeId u : sample) query(u);
    const auto t1 = std::chrono::steady_clock::now();
    res.run_seconds.push_back(std::chrono::duration<double>(t1 - t0).count());
    total += res.run_seconds.back();
  }
#ifndef NDEBUG
  assert(cursor.scratch.capacity() == cap_scratch &&
         cursor.values.capacity() == cap_values &&
         cursor.out.capacity() == cap_out &&
         "timed loop must not allocate after warm-up");
#endif
  if (runs > 0 && !sample.empty())
    res.mean_us = (total / runs) * 1e6 / static_cast<double>(sample.size());
  return res;
}

void log_record(std::ostream* log, const BenchRecord& rec) {
  if (!log) return;
  *log << rec.method << " ";
  if (rec.method == "lm")
    *log << "h=" << rec.param1;
  else
    *log << "B=" << rec.param1 << " K=" << rec.param2;
  char buf[64];
  std::snprintf(buf, sizeof buf, ": %.4f bits/link, %.3f us/query",
                rec.bits_per_link, rec.mean_us);
  *log << buf << " (runs:";
  for (double s : rec.run_seconds) {
    std::snprintf(buf, sizeof buf, " %.4fs", s);
    *log << buf;
  }
  double mn = rec.run_seconds.empty()
                  ? 0.0
                  : *std::min_element(rec.run_seconds.begin(),
                                      rec.run_seconds.end());
  std::snprintf(buf, sizeof buf, ", min %.4fs)", mn);
  *log << buf << "\n";
}

}  // namespace

std::vector<BenchRecord> run_bench(const AdjacencyGraph& g,
                                   const BenchConfig& cfg, std::ostream* log) {
  if (cfg.method != "lm" && cfg.method != "2d")
    throw std::invalid_argument("method must be lm or 2d");
  if (cfg.mode != "succ" && cfg.mode != "pred")
    throw std::invalid_argument("mode must be succ or pred");
  if (g.node_count() == 0)
    throw std::invalid_argument("cannot benchmark an empty graph");
  const uint64_t links = g.edge_count();
  if (links == 0)
    throw std::domain_error("bits per link undefined for a graph without links");

  const std::vector<NodeId> sample =
      sample_nodes(g.node_count(), cfg.samples, cfg.seed);
  const uint32_t runs = cfg.runs != 0 ? cfg.runs
                        : cfg.method == "lm" ? 10
                                             : 4;
  std::vector<BenchRecord> records;
  QueryCursor cursor;

  auto base_record = [&](uint32_t p1, uint32_t p2) {
    BenchRecord rec;
    rec.method = cfg.method;
    rec.param1 = p1;
    rec.param2 = p2;
    rec.runs = runs;
    rec.samples = cfg.samples;
    rec.seed = cfg.seed;
    return rec;
  };

  if (cfg.method == "lm") {
    if (cfg.h_grid.empty())
      throw std::invalid_argument("lm benchmark needs at least one h");
    // Predecessor latency of a 1D representation is measured as successor
    // latency on the compressed transpose.
    const AdjacencyGraph* base = &g;
    AdjacencyGraph transposed;
    if (cfg.mode == "pred") {
      transposed = transpose(g);
      base = &transposed;
    }
    for (uint32_t h : cfg.h_grid) {
      const LmGraph lm = lm_compress(*base, h);
      auto rec = base_record(h, 0);
      rec.bits_per_link =
          8.0 * static_cast<double>(lm_file_bytes(lm)) / static_cast<double>(links);
      auto timing = time_queries(sample, runs, cursor, [&](NodeId u) {
        lm_successors(lm, u, cursor);
      });
      rec.run_seconds = std::move(timing.run_seconds);
      rec.mean_us = timing.mean_us;
      log_record(log, rec);
      records.push_back(std::move(rec));
    }
  } else {
    if (cfg.tile_grid.empty())
      throw std::invalid_argument("2d benchmark needs at least one tile size");
    const std::vector<uint32_t> stripes =
        cfg.stripe_grid.empty() ? std::vector<uint32_t>{0} : cfg.stripe_grid;
    for (uint32_t B : cfg.tile_grid) {
      for (uint32_t K : stripes) {
        const StripeGraph sg = sg_compress(g, B, K);
        auto rec = base_record(B, K);
        rec.bits_per_link = sg_stats(sg).bits_per_link;
        const bool pred = cfg.mode == "pred";
        auto timing = time_queries(sample, runs, cursor, [&](NodeId u) {
          if (pred)
            sg_predecessors(sg, u, cursor);
          else
            sg_successors(sg, u, cursor);
        });
        rec.run_seconds = std::move(timing.run_seconds);
        rec.mean_us = timing.mean_us;
        rec.decoded_tile_bodies = timing.decoded_tile_bodies;
        log_record(log, rec);
        records.push_back(std::move(rec));
      }
    }
  }
  return records;
}

void write_bench_csv(std::span<const BenchRecord> records, std::ostream& out) {
  out << kBenchCsvHeader << "\n";
  char buf[256];
  for (const auto& rec : records) {
    std::snprintf(buf, sizeof buf, "%s,%u,%u,%.4f,%.3f,%u,%llu,%llu\n",
                  rec.method.c_str(), rec.param1, rec.param2,
                  rec.bits_per_link, rec.mean_us, rec.runs,
                  static_cast<unsigned long long>(rec.samples),
                  static_cast<unsigned long long>(rec.seed));
    out << buf;
  }
}

}  // namespace wgc
