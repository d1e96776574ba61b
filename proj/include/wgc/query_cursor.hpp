#pragma once

#include <cstdint>
#include <vector>

#include "wgc/codec.hpp"
#include "wgc/graph.hpp"

namespace wgc {

// Per-query scratch state. Queries never touch the compressed graph
// mutably, so one immutable graph can serve any number of concurrent
// cursors; a single cursor supports one in-flight query at a time.
// Buffers only grow, which lets benchmark loops run allocation-free
// after a warm-up pass.
struct QueryCursor {
  std::vector<uint8_t> scratch;    // inflate target for zipped bodies
  std::vector<uint32_t> values;    // decoded residues (list-merge path)
  std::vector<NodeId> out;         // result ids of the current query
  codec::Inflater inflater;

  // Tile bodies actually decoded; bodies skipped by stripe gating are not
  // counted.
  uint64_t decoded_tile_bodies = 0;

  void ensure_scratch(size_t bytes) {
    if (scratch.size() < bytes) scratch.resize(bytes);
  }
};

}  // namespace wgc
