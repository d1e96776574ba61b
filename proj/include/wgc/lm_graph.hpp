#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "wgc/graph.hpp"
#include "wgc/query_cursor.hpp"

namespace wgc {

// List-merge representation: chunks of h consecutive adjacency lists
// share one delta-coded residue sequence (the sorted union of the
// lists) followed by one h-bit membership bitmap per residue, and each
// chunk is DEFLATE-compressed independently.
//
// Plain chunk layout:
//   delta_encode(residues) || |residues| * ceil(h/8) flag bytes
// where flag bit k of residue j says list chunkBase+k contains residue
// j (LSB first, rows past n in the final chunk stay 0).
//
// Serialized layout (.lmg, little endian):
//   "LMG1" | u32 h | u64 n | u64 numChunks | u64 maxPlainChunkBytes |
//   (numChunks+1) x u64 offsets | u64 payloadLen | payload
// offsets[c]..offsets[c+1] delimit chunk c inside the payload;
// offsets[numChunks] equals payloadLen.
struct LmGraph {
  uint32_t h = 0;
  uint64_t n = 0;
  uint64_t max_plain_chunk_bytes = 0;
  std::vector<uint64_t> offsets;
  std::vector<uint8_t> payload;

  uint64_t num_chunks() const { return offsets.empty() ? 0 : offsets.size() - 1; }
};

// h must be a power of two >= 1 (the benchmark grid uses 8..128). Throws
// CapacityError if a residue gap cannot be varbyte-coded.
LmGraph lm_compress(const AdjacencyGraph& g, uint32_t h);

// Successor list of u, written into cursor.out (returned by reference).
const std::vector<NodeId>& lm_successors(const LmGraph& lm, NodeId u,
                                         QueryCursor& cursor);

// Expands every chunk back into adjacency lists.
AdjacencyGraph lm_decompress(const LmGraph& lm);

void lm_save(const LmGraph& lm, std::ostream& out);
LmGraph lm_load(std::istream& in);
void lm_save_file(const LmGraph& lm, const std::string& path);
LmGraph lm_load_file(const std::string& path);

// Exact size of the serialized form.
uint64_t lm_file_bytes(const LmGraph& lm);

}  // namespace wgc
