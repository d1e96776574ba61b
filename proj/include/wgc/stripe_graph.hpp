#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "wgc/graph.hpp"
#include "wgc/query_cursor.hpp"
#include "wgc/tile.hpp"

namespace wgc {

// 2D representation: the adjacency matrix is cut into B x B tiles,
// non-empty tiles are stored row-band by row-band (left to right) as
// tile blobs, and two index tables make both directions random access:
//
//   xOffsets  M+1 entries; entry i carries the blob's 2-bit encoding tag
//             in the top bits and its payload byte offset below. The
//             final entry is a sentinel with tag 0 and offset payloadLen.
//   xFirst    T+1 indices into xOffsets; band r owns entries
//             xFirst[r]..xFirst[r+1]. xFirst[T] == M.
//   yOffsets  M indices into xOffsets, ordered by tile column then band,
//             giving each tile column its blobs for predecessor queries.
//   yFirst    T+1 indices into yOffsets; yFirst[T] == M.
//
// Serialized layout (.s2d, little endian):
//   "S2D1" | u32 B | u32 K | u64 n | u64 links | u64 T | u64 M |
//   (M+1) x u64 xOffsets | (T+1) x u64 xFirst | M x u64 yOffsets |
//   (T+1) x u64 yFirst | u64 payloadLen | payload
struct StripeGraph {
  uint32_t B = 0;
  uint32_t K = 0;
  uint64_t n = 0;
  uint64_t links = 0;
  uint64_t tiles_per_side = 0;  // T = ceil(n/B)
  std::vector<uint64_t> x_offsets;
  std::vector<uint64_t> x_first;
  std::vector<uint64_t> y_offsets;
  std::vector<uint64_t> y_first;
  std::vector<uint8_t> payload;

  static constexpr uint64_t kOffsetMask = (uint64_t{1} << 62) - 1;
  static uint8_t tag_of(uint64_t entry) {
    return static_cast<uint8_t>(entry >> 62);
  }
  static uint64_t offset_of(uint64_t entry) { return entry & kOffsetMask; }

  uint64_t non_empty_tiles() const { return x_offsets.size() - 1; }
};

// B a power of two <= 2048, K zero or a power of two <= B,
// ceil(n/B) < 2^24. The input is consumed one tile row-band at a time.
StripeGraph sg_compress(const AdjacencyGraph& g, uint32_t B, uint32_t K);

// Successors of u / predecessors of v, written into cursor.out (returned
// by reference). Results are strictly increasing.
const std::vector<NodeId>& sg_successors(const StripeGraph& sg, NodeId u,
                                         QueryCursor& cursor);
const std::vector<NodeId>& sg_predecessors(const StripeGraph& sg, NodeId v,
                                           QueryCursor& cursor);

// Expands all tiles back into adjacency lists (one body decode per tile).
AdjacencyGraph sg_decompress(const StripeGraph& sg);

void sg_save(const StripeGraph& sg, std::ostream& out);
StripeGraph sg_load(std::istream& in);
void sg_save_file(const StripeGraph& sg, const std::string& path);
StripeGraph sg_load_file(const std::string& path);

// Exact size of the serialized form.
uint64_t sg_file_bytes(const StripeGraph& sg);

struct SgStats {
  double bits_per_link;               // 8 * file bytes / links
  std::array<uint64_t, 4> tag_histogram;
  uint64_t non_empty_tiles;
  uint64_t stripe_overhead_bytes;     // 2 * ceil(K/8) * M
};

// Throws std::domain_error when the graph has no links.
SgStats sg_stats(const StripeGraph& sg);

}  // namespace wgc
