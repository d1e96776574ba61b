#include <doctest.h>

#include <algorithm>

#include "wgc/rng.hpp"
#include "wgc/tile.hpp"

using namespace wgc;

namespace {

using Edge = std::pair<uint32_t, uint32_t>;  // (x, y)

// Reference tile example: B=4 with edges (1,0) (2,0) (2,1) (0,3) (3,3),
// row-major cells {1,2,6,12,15}, column-major cells {3,4,8,9,15}.
const std::vector<Edge> kEdges{{1, 0}, {2, 0}, {2, 1}, {0, 3}, {3, 3}};
const std::vector<uint8_t> kHorizBody{0x02, 0x01, 0x04, 0x06, 0x03, 0x00};
const std::vector<uint8_t> kVertBody{0x04, 0x01, 0x04, 0x01, 0x06, 0x00};

UncompressedTile make_tile(uint32_t B, uint32_t K,
                           const std::vector<Edge>& edges) {
  UncompressedTile t;
  t.configure(B, K);
  std::vector<Edge> sorted = edges;
  std::sort(sorted.begin(), sorted.end(), [&](const Edge& a, const Edge& b) {
    return uint64_t{a.second} * B + a.first < uint64_t{b.second} * B + b.first;
  });
  for (const auto& [x, y] : sorted) t.add_link(x, y);
  return t;
}

struct Compressed {
  std::vector<uint8_t> blob;
  uint8_t tag;
  TileCompressScratch scratch;
};

Compressed compress_tile(uint32_t B, uint32_t K, const std::vector<Edge>& edges,
                         uint32_t x_tile = 0, uint32_t y_tile = 0) {
  Compressed c;
  auto t = make_tile(B, K, edges);
  c.tag = t.compress(x_tile, y_tile, c.scratch, c.blob).tag;
  return c;
}

TileBlobView view_of(const Compressed& c, uint32_t B, uint32_t K) {
  return TileBlobView{std::span<const uint8_t>(c.blob), B, K};
}

std::vector<uint32_t> decode_row(const TileBlobView& v, uint8_t tag,
                                 uint32_t row, QueryCursor& cur) {
  std::vector<uint32_t> cols;
  tile_decode_row(v, tag, row, cur, [&](uint32_t c) { cols.push_back(c); });
  return cols;
}

std::vector<uint32_t> decode_col(const TileBlobView& v, uint8_t tag,
                                 uint32_t col, QueryCursor& cur) {
  std::vector<uint32_t> rows;
  tile_decode_col(v, tag, col, cur, [&](uint32_t r) { rows.push_back(r); });
  return rows;
}

// The four candidate bodies, computed independently of UncompressedTile.
std::array<std::vector<uint8_t>, 4> candidate_bodies(
    uint32_t B, const std::vector<Edge>& edges) {
  std::vector<uint32_t> row_major, col_major;
  for (const auto& [x, y] : edges) {
    row_major.push_back(y * B + x);
    col_major.push_back(x * B + y);
  }
  std::sort(row_major.begin(), row_major.end());
  std::sort(col_major.begin(), col_major.end());
  std::array<std::vector<uint8_t>, 4> cand;
  codec::delta_encode(row_major, cand[0]);
  cand[1] = codec::deflate_block(cand[0]);
  codec::delta_encode(col_major, cand[2]);
  cand[3] = codec::deflate_block(cand[2]);
  return cand;
}

// The selection chain under test, stated independently.
uint8_t expected_tag(size_t s1, size_t s2, size_t s3, size_t s4) {
  if (s1 <= s2) {
    if (s3 <= s4) return s1 <= s3 ? 0 : 2;
    return s1 <= s4 ? 0 : 3;
  }
  if (s3 <= s4) return s2 <= s3 ? 1 : 2;
  return s2 <= s4 ? 1 : 3;
}

std::vector<Edge> random_edges(SplitMix64& rng, uint32_t B, size_t count) {
  std::vector<uint64_t> cells;
  while (cells.size() < count)
    cells.push_back(rng.next_below(uint64_t{B} * B));
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  std::vector<Edge> edges;
  for (uint64_t q : cells)
    edges.push_back({static_cast<uint32_t>(q % B),
                     static_cast<uint32_t>(q / B)});
  return edges;
}

}  // namespace

TEST_SUITE_BEGIN("tile");

TEST_CASE("add_link builds both orders and the stripe bitmaps") {
  auto t = make_tile(4, 4, kEdges);
  CHECK(t.edge_count() == 5);
  CHECK_FALSE(t.empty());
  // stripes with K == B map row/column directly to a bit
  CHECK(t.y_strip().bytes() == std::vector<uint8_t>{0x0B});
  CHECK(t.x_strip().bytes() == std::vector<uint8_t>{0x0F});
}

TEST_CASE("stripe index formula") {
  UncompressedTile t;
  t.configure(2048, 8);
  t.add_link(0, 300);
  // (300*8)>>11 == 1
  CHECK(t.y_strip().bytes() == std::vector<uint8_t>{0x02});
  // (0*8)>>11 == 0
  CHECK(t.x_strip().bytes() == std::vector<uint8_t>{0x01});
}

TEST_CASE("add_link rejects duplicates and regressions") {
  UncompressedTile t;
  t.configure(4, 0);
  t.add_link(1, 0);
  CHECK_THROWS_AS(t.add_link(1, 0), std::invalid_argument);
  CHECK_THROWS_AS(t.add_link(0, 0), std::invalid_argument);
  CHECK_THROWS_AS(t.add_link(4, 0), std::out_of_range);
  t.add_link(2, 0);
  t.add_link(0, 1);
}

TEST_CASE("compress picks the horizontal plain body for the example") {
  auto c = compress_tile(4, 4, kEdges, 5, 7);
  CHECK(c.tag == 0);
  // blob = body || xStrip || yStrip || xTile || yTile
  std::vector<uint8_t> expect = kHorizBody;
  expect.push_back(0x0F);
  expect.push_back(0x0B);
  expect.insert(expect.end(), {0x05, 0x00, 0x00});
  expect.insert(expect.end(), {0x07, 0x00, 0x00});
  CHECK(c.blob == expect);

  // without stripes the trailer is just the coordinates
  auto c0 = compress_tile(4, 0, kEdges, 5, 7);
  CHECK(c0.tag == 0);
  std::vector<uint8_t> expect0 = kHorizBody;
  expect0.insert(expect0.end(), {0x05, 0x00, 0x00, 0x07, 0x00, 0x00});
  CHECK(c0.blob == expect0);
}

TEST_CASE("blob view reads the trailer back") {
  auto c = compress_tile(4, 4, kEdges, 5, 7);
  auto v = view_of(c, 4, 4);
  CHECK(v.x_tile() == 5);
  CHECK(v.y_tile() == 7);
  CHECK(v.body().size() == kHorizBody.size());
  CHECK(v.y_strip_bit(0));
  CHECK(v.y_strip_bit(1));
  CHECK_FALSE(v.y_strip_bit(2));
  CHECK(v.y_strip_bit(3));
  for (uint32_t col = 0; col < 4; ++col) CHECK(v.x_strip_bit(col));
}

TEST_CASE("row decode with early exit and stripe gating") {
  auto c = compress_tile(4, 4, kEdges);
  auto v = view_of(c, 4, 4);
  QueryCursor cur;
  CHECK(decode_row(v, c.tag, 0, cur) == std::vector<uint32_t>{1, 2});
  CHECK(decode_row(v, c.tag, 1, cur) == std::vector<uint32_t>{2});
  CHECK(decode_row(v, c.tag, 3, cur) == std::vector<uint32_t>{0, 3});
  CHECK(cur.decoded_tile_bodies == 3);
  // row 2 is stripe-gated: no body decode happens at all
  CHECK(decode_row(v, c.tag, 2, cur).empty());
  CHECK(cur.decoded_tile_bodies == 3);
}

TEST_CASE("column decode mirrors row decode") {
  auto c = compress_tile(4, 4, kEdges);
  auto v = view_of(c, 4, 4);
  QueryCursor cur;
  CHECK(decode_col(v, c.tag, 0, cur) == std::vector<uint32_t>{3});
  CHECK(decode_col(v, c.tag, 1, cur) == std::vector<uint32_t>{0});
  CHECK(decode_col(v, c.tag, 2, cur) == std::vector<uint32_t>{0, 1});
  CHECK(decode_col(v, c.tag, 3, cur) == std::vector<uint32_t>{3});
}

TEST_CASE("all four encodings decode identically") {
  SplitMix64 rng(42);
  QueryCursor cur;
  for (int iter = 0; iter < 60; ++iter) {
    const uint32_t B = 1u << (2 + rng.next_below(5));  // 4..64
    const auto edges = random_edges(rng, B, 1 + rng.next_below(40));
    const auto bodies = candidate_bodies(B, edges);

    // assemble one blob per tag by hand (no stripes, coords 1/2)
    std::array<std::vector<uint8_t>, 4> blobs;
    for (int tag = 0; tag < 4; ++tag) {
      blobs[tag] = bodies[tag];
      const std::vector<uint8_t> trailer{0x01, 0x00, 0x00, 0x02, 0x00, 0x00};
      blobs[tag].insert(blobs[tag].end(), trailer.begin(), trailer.end());
    }
    for (uint32_t row = 0; row < B; ++row) {
      const TileBlobView v0{std::span<const uint8_t>(blobs[0]), B, 0};
      const auto expect = decode_row(v0, 0, row, cur);
      for (uint8_t tag = 1; tag < 4; ++tag) {
        const TileBlobView v{std::span<const uint8_t>(blobs[tag]), B, 0};
        REQUIRE(decode_row(v, tag, row, cur) == expect);
      }
    }
    for (uint32_t col = 0; col < B; ++col) {
      const TileBlobView v0{std::span<const uint8_t>(blobs[0]), B, 0};
      const auto expect = decode_col(v0, 0, col, cur);
      for (uint8_t tag = 1; tag < 4; ++tag) {
        const TileBlobView v{std::span<const uint8_t>(blobs[tag]), B, 0};
        REQUIRE(decode_col(v, tag, col, cur) == expect);
      }
    }
  }
}

TEST_CASE("zipped tags inflate exactly once, plain tags never") {
  const auto bodies = candidate_bodies(4, kEdges);
  QueryCursor cur;
  for (uint8_t tag = 0; tag < 4; ++tag) {
    std::vector<uint8_t> blob = bodies[tag];
    blob.insert(blob.end(), {0x00, 0x00, 0x00, 0x00, 0x00, 0x00});
    const TileBlobView v{std::span<const uint8_t>(blob), 4, 0};
    const uint64_t before = cur.inflater.calls();
    decode_row(v, tag, 3, cur);
    CHECK(cur.inflater.calls() - before == (tag & 1 ? 1 : 0));
  }
}

TEST_CASE("decode_all matches the raw cell list") {
  auto c = compress_tile(4, 0, kEdges);
  auto v = view_of(c, 4, 0);
  QueryCursor cur;
  std::vector<uint32_t> cells;
  tile_decode_all(v, c.tag, cur, [&](uint32_t q) { cells.push_back(q); });
  CHECK(cells == std::vector<uint32_t>{1, 2, 6, 12, 15});
}

TEST_CASE("selection follows the fixed comparison chain") {
  SplitMix64 rng(77);
  int zipped_seen = 0, vertical_seen = 0;
  for (int iter = 0; iter < 250; ++iter) {
    const uint32_t B = 1u << (2 + rng.next_below(6));  // 4..128
    size_t count = 1 + rng.next_below(rng.next_below(2) ? 20 : 400);
    const auto edges = random_edges(rng, B, count);
    const auto bodies = candidate_bodies(B, edges);
    const uint8_t expect = expected_tag(bodies[0].size(), bodies[1].size(),
                                        bodies[2].size(), bodies[3].size());
    auto c = compress_tile(B, 0, edges);
    REQUIRE(c.tag == expect);
    // the winner is never larger than any candidate
    const size_t body_len = c.blob.size() - 6;
    for (const auto& b : bodies) CHECK(body_len <= b.size());
    if (c.tag & 1) ++zipped_seen;
    if (c.tag & 2) ++vertical_seen;
  }
  CHECK(zipped_seen > 0);
  CHECK(vertical_seen > 0);
}

TEST_CASE("ties prefer plain over zipped and horizontal over vertical") {
  // single edge: horizontal and vertical plain bodies have equal length
  for (auto [x, y] : std::vector<Edge>{{0, 0}, {3, 1}, {2, 2}}) {
    auto c = compress_tile(4, 0, {{x, y}});
    CHECK(c.tag == 0);
  }
  // diagonal-symmetric edge set: both plain bodies identical byte-for-byte
  auto c = compress_tile(8, 0, {{1, 0}, {0, 1}, {5, 2}, {2, 5}, {7, 7}});
  CHECK(c.tag == 0);
}

TEST_CASE("a corner-only edge in the largest tile exceeds the format") {
  UncompressedTile t;
  t.configure(2048, 0);
  t.add_link(2047, 2047);  // delta 2048*2048 does not fit 22 bits
  TileCompressScratch scratch;
  std::vector<uint8_t> out;
  CHECK_THROWS_AS(t.compress(0, 0, scratch, out), CapacityError);
}

TEST_CASE("tile coordinates are limited to three bytes") {
  auto t = make_tile(4, 0, kEdges);
  TileCompressScratch scratch;
  std::vector<uint8_t> out;
  CHECK_THROWS_AS(t.compress(1u << 24, 0, scratch, out), CapacityError);
  CHECK_THROWS_AS(t.compress(0, 1u << 24, scratch, out), CapacityError);
  out.clear();
  auto res = t.compress((1u << 24) - 1, 123, scratch, out);
  const TileBlobView v{std::span<const uint8_t>(out), 4, 0};
  CHECK(v.x_tile() == (1u << 24) - 1);
  CHECK(v.y_tile() == 123);
  CHECK(res.bytes_written == out.size());
}

TEST_CASE("configure validates parameters") {
  UncompressedTile t;
  CHECK_THROWS_AS(t.configure(0, 0), std::invalid_argument);
  CHECK_THROWS_AS(t.configure(24, 0), std::invalid_argument);
  CHECK_THROWS_AS(t.configure(4096, 0), CapacityError);
  CHECK_THROWS_AS(t.configure(16, 3), std::invalid_argument);
  CHECK_THROWS_AS(t.configure(16, 32), std::invalid_argument);
  t.configure(16, 16);
}

TEST_CASE("clear resets a tile for reuse") {
  auto t = make_tile(4, 4, kEdges);
  t.clear();
  CHECK(t.empty());
  CHECK(t.y_strip().bytes() == std::vector<uint8_t>{0x00});
  t.add_link(0, 0);  // delta origin restarts at -1
  TileCompressScratch scratch;
  std::vector<uint8_t> out;
  CHECK(t.compress(0, 0, scratch, out).tag == 0);
  CHECK(std::vector<uint8_t>(out.begin(), out.begin() + 2) ==
        std::vector<uint8_t>{0x01, 0x00});
}

TEST_CASE("stripe gating is transparent for row and column queries") {
  SplitMix64 rng(11);
  for (int iter = 0; iter < 30; ++iter) {
    const uint32_t B = 128;
    const auto edges = random_edges(rng, B, 1 + rng.next_below(60));
    auto plain = compress_tile(B, 0, edges);
    auto striped = compress_tile(B, 32, edges);
    auto vp = view_of(plain, B, 0);
    auto vs = view_of(striped, B, 32);
    QueryCursor cur_plain, cur_striped;
    for (uint32_t row = 0; row < B; ++row)
      REQUIRE(decode_row(vs, striped.tag, row, cur_striped) ==
              decode_row(vp, plain.tag, row, cur_plain));
    for (uint32_t col = 0; col < B; ++col)
      REQUIRE(decode_col(vs, striped.tag, col, cur_striped) ==
              decode_col(vp, plain.tag, col, cur_plain));
    CHECK(cur_striped.decoded_tile_bodies <= cur_plain.decoded_tile_bodies);
  }
}

TEST_SUITE_END();
