#include "wgc/tile.hpp"

#include <algorithm>
#include <string>

namespace wgc {

void UncompressedTile::configure(uint32_t tile_size, uint32_t stripe_count) {
  if (tile_size == 0 || !std::has_single_bit(tile_size))
    throw std::invalid_argument("tile size must be a power of two");
  if (tile_size > 2048)
    throw CapacityError("tile size above 2048 breaks the 22-bit delta bound");
  if (stripe_count != 0 &&
      (!std::has_single_bit(stripe_count) || stripe_count > tile_size))
    throw std::invalid_argument(
        "stripe count must be 0 or a power of two <= tile size");
  b_ = tile_size;
  k_ = stripe_count;
  log_b_ = static_cast<uint32_t>(std::countr_zero(tile_size));
  x_strip_.resize(k_);
  y_strip_.resize(k_);
  clear();
}

void UncompressedTile::clear() {
  last_h_ = -1;
  h_deltas_.clear();
  v_indices_.clear();
  x_strip_.clear();
  y_strip_.clear();
}

void UncompressedTile::add_link(uint32_t x, uint32_t y) {
  if (x >= b_ || y >= b_)
    throw std::out_of_range("tile coordinates out of range");
  const int64_t q = (int64_t{y} << log_b_) | x;
  if (q <= last_h_)
    throw std::invalid_argument(
        "links must arrive in strictly increasing row-major order");
  h_deltas_.push_back(static_cast<uint32_t>(q - last_h_));
  last_h_ = q;
  v_indices_.push_back((x << log_b_) | y);
  if (k_ != 0) {
    x_strip_.set((x * k_) >> log_b_);
    y_strip_.set((y * k_) >> log_b_);
  }
}

UncompressedTile::CompressResult UncompressedTile::compress(
    uint32_t x_tile, uint32_t y_tile, TileCompressScratch& s,
    std::vector<uint8_t>& out) {
  if (h_deltas_.empty())
    throw std::logic_error("empty tiles are never stored");
  if (x_tile >= (1u << 24) || y_tile >= (1u << 24))
    throw CapacityError("tile coordinates exceed 3 bytes");

  s.horiz.clear();
  s.horiz_zip.clear();
  s.vert.clear();
  s.vert_zip.clear();
  try {
    for (uint32_t gap : h_deltas_) codec::varbyte_encode(gap, s.horiz);
    s.horiz.push_back(0);
    std::sort(v_indices_.begin(), v_indices_.end());
    codec::delta_encode(v_indices_, s.vert);
  } catch (const std::out_of_range&) {
    throw CapacityError("tile (" + std::to_string(x_tile) + ", " +
                        std::to_string(y_tile) +
                        "): delta exceeds 22-bit varbyte range");
  }
  s.deflater.compress(s.horiz, s.horiz_zip);
  s.deflater.compress(s.vert, s.vert_zip);

  // Fixed comparison chain; <= keeps plain ahead of zipped and horizontal
  // ahead of vertical on equal sizes.
  const size_t s1 = s.horiz.size(), s2 = s.horiz_zip.size();
  const size_t s3 = s.vert.size(), s4 = s.vert_zip.size();
  uint8_t tag;
  if (s1 <= s2) {
    if (s3 <= s4)
      tag = s1 <= s3 ? 0 : 2;
    else
      tag = s1 <= s4 ? 0 : 3;
  } else {
    if (s3 <= s4)
      tag = s2 <= s3 ? 1 : 2;
    else
      tag = s2 <= s4 ? 1 : 3;
  }
  const std::vector<uint8_t>* chosen[4] = {&s.horiz, &s.horiz_zip, &s.vert,
                                           &s.vert_zip};
  const std::vector<uint8_t>& body = *chosen[tag];

  const size_t start = out.size();
  out.insert(out.end(), body.begin(), body.end());
  if (k_ != 0) {
    out.insert(out.end(), x_strip_.bytes().begin(), x_strip_.bytes().end());
    out.insert(out.end(), y_strip_.bytes().begin(), y_strip_.bytes().end());
  }
  out.push_back(static_cast<uint8_t>(x_tile));
  out.push_back(static_cast<uint8_t>(x_tile >> 8));
  out.push_back(static_cast<uint8_t>(x_tile >> 16));
  out.push_back(static_cast<uint8_t>(y_tile));
  out.push_back(static_cast<uint8_t>(y_tile >> 8));
  out.push_back(static_cast<uint8_t>(y_tile >> 16));
  return {tag, out.size() - start};
}

}  // namespace wgc
