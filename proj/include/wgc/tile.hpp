#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

#include "wgc/codec.hpp"
#include "wgc/query_cursor.hpp"

namespace wgc {

// One B x B adjacency-matrix tile is stored under the encoding that
// comes out smallest of four candidates:
//   tag 0: delta-coded row-major cell indices (y*B + x)
//   tag 1: tag 0 bytes, DEFLATEd
//   tag 2: delta-coded column-major cell indices (x*B + y)
//   tag 3: tag 2 bytes, DEFLATEd
// so tag bit 1 means transposed and bit 0 means zipped. The stored blob
// is body || xStrip || yStrip || xTile || yTile, with ceil(K/8) bytes
// per stripe bitmap (absent when K == 0) and 3 little-endian bytes per
// tile coordinate. xStrip bit (x*K)>>log2(B) is set when the tile has an
// edge in column x, yStrip likewise for rows; a query whose stripe bit
// is clear skips the body entirely.

inline constexpr uint8_t kTileZippedBit = 1;
inline constexpr uint8_t kTileTransposedBit = 2;

// Build-side tile. add_link must be called in strictly increasing
// row-major order (duplicates rejected: a zero delta would collide with
// the stream terminator).
class UncompressedTile {
 public:
  // tile_size B and stripe_count K are powers of two, K == 0 disables
  // stripes, K <= B. B <= 2048 keeps every delta below 2^22.
  void configure(uint32_t tile_size, uint32_t stripe_count);
  void clear();

  void add_link(uint32_t x, uint32_t y);

  bool empty() const { return h_deltas_.empty(); }
  size_t edge_count() const { return h_deltas_.size(); }
  const BitSet& x_strip() const { return x_strip_; }
  const BitSet& y_strip() const { return y_strip_; }

  struct CompressResult {
    uint8_t tag;
    size_t bytes_written;  // body plus trailer
  };

  // Appends the winning blob to `out`. Ties resolve plain before zipped
  // and horizontal before vertical. Tile coordinates must fit 3 bytes.
  CompressResult compress(uint32_t x_tile, uint32_t y_tile,
                          struct TileCompressScratch& scratch,
                          std::vector<uint8_t>& out);

 private:
  uint32_t b_ = 0;
  uint32_t k_ = 0;
  uint32_t log_b_ = 0;
  int64_t last_h_ = -1;
  std::vector<uint32_t> h_deltas_;   // row-major gaps, -1 origin
  std::vector<uint32_t> v_indices_;  // column-major indices, sorted on use
  BitSet x_strip_, y_strip_;
};

// Candidate buffers and the DEFLATE state reused across tiles of one
// compression run.
struct TileCompressScratch {
  std::vector<uint8_t> horiz, horiz_zip, vert, vert_zip;
  codec::Deflater deflater;
};

// Read-side view of one stored blob.
struct TileBlobView {
  std::span<const uint8_t> blob;
  uint32_t tile_size = 0;
  uint32_t stripe_count = 0;

  size_t strip_bytes() const { return (size_t{stripe_count} + 7) / 8; }
  size_t trailer_bytes() const { return 2 * strip_bytes() + 6; }
  std::span<const uint8_t> body() const {
    return blob.first(blob.size() - trailer_bytes());
  }
  uint32_t x_tile() const {
    const size_t e = blob.size();
    return static_cast<uint32_t>(blob[e - 6]) |
           (static_cast<uint32_t>(blob[e - 5]) << 8) |
           (static_cast<uint32_t>(blob[e - 4]) << 16);
  }
  uint32_t y_tile() const {
    const size_t e = blob.size();
    return static_cast<uint32_t>(blob[e - 3]) |
           (static_cast<uint32_t>(blob[e - 2]) << 8) |
           (static_cast<uint32_t>(blob[e - 1]) << 16);
  }
  bool x_strip_bit(uint32_t col) const {
    const size_t base = blob.size() - 6 - 2 * strip_bytes();
    const uint32_t s = stripe_index(col);
    return (blob[base + (s >> 3)] >> (s & 7)) & 1u;
  }
  bool y_strip_bit(uint32_t row) const {
    const size_t base = blob.size() - 6 - strip_bytes();
    const uint32_t s = stripe_index(row);
    return (blob[base + (s >> 3)] >> (s & 7)) & 1u;
  }
  uint32_t stripe_index(uint32_t coord) const {
    return (coord * stripe_count) >>
           std::countr_zero(tile_size);
  }
};

namespace detail {

// Hands each delta-decoded cell index to `visit`; returns false from
// `visit` to stop early. Inflates zipped bodies into the cursor scratch
// first.
template <typename Visit>
void scan_tile_body(const TileBlobView& t, uint8_t tag, QueryCursor& cur,
                    Visit&& visit) {
  std::span<const uint8_t> body = t.body();
  if (tag & kTileZippedBit) {
    const size_t bound =
        3 * size_t{t.tile_size} * t.tile_size + 1;
    cur.ensure_scratch(bound);
    const size_t len = cur.inflater.inflate(
        body, std::span<uint8_t>(cur.scratch.data(), bound));
    body = std::span<const uint8_t>(cur.scratch.data(), len);
  }
  ++cur.decoded_tile_bodies;
  size_t pos = 0;
  int64_t last = -1;
  for (;;) {
    const uint32_t gap = codec::varbyte_decode(body, pos);
    if (gap == 0) return;
    last += gap;
    if (!visit(static_cast<uint32_t>(last))) return;
  }
}

}  // namespace detail

// Emits the columns of `row` (ascending) to emit(col). When stripes are
// present a cleared row stripe bit returns without touching the body.
// Horizontal bodies are scanned with early exit past the row's cell
// range; vertical bodies are scanned in full and filtered.
template <typename Emit>
void tile_decode_row(const TileBlobView& t, uint8_t tag, uint32_t row,
                     QueryCursor& cur, Emit&& emit) {
  if (t.stripe_count > 0 && !t.y_strip_bit(row)) return;
  const uint32_t log_b = static_cast<uint32_t>(std::countr_zero(t.tile_size));
  if ((tag & kTileTransposedBit) == 0) {
    const uint32_t lower = row << log_b;
    const uint32_t upper = lower + t.tile_size;
    detail::scan_tile_body(t, tag, cur, [&](uint32_t v) {
      if (v >= upper) return false;
      if (v >= lower) emit(v - lower);
      return true;
    });
  } else {
    const uint32_t mask = t.tile_size - 1;
    detail::scan_tile_body(t, tag, cur, [&](uint32_t v) {
      if ((v & mask) == row) emit(v >> log_b);
      return true;
    });
  }
}

// Mirror of tile_decode_row: emits the rows of `col` to emit(row).
template <typename Emit>
void tile_decode_col(const TileBlobView& t, uint8_t tag, uint32_t col,
                     QueryCursor& cur, Emit&& emit) {
  if (t.stripe_count > 0 && !t.x_strip_bit(col)) return;
  const uint32_t log_b = static_cast<uint32_t>(std::countr_zero(t.tile_size));
  if (tag & kTileTransposedBit) {
    const uint32_t lower = col << log_b;
    const uint32_t upper = lower + t.tile_size;
    detail::scan_tile_body(t, tag, cur, [&](uint32_t v) {
      if (v >= upper) return false;
      if (v >= lower) emit(v - lower);
      return true;
    });
  } else {
    const uint32_t mask = t.tile_size - 1;
    detail::scan_tile_body(t, tag, cur, [&](uint32_t v) {
      if ((v & mask) == col) emit(v >> log_b);
      return true;
    });
  }
}

// Full decode, ignoring stripes: emits every stored cell index as-is.
template <typename Emit>
void tile_decode_all(const TileBlobView& t, uint8_t tag, QueryCursor& cur,
                     Emit&& emit) {
  detail::scan_tile_body(t, tag, cur, [&](uint32_t v) {
    emit(v);
    return true;
  });
}

}  // namespace wgc
