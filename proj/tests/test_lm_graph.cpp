#include <doctest.h>

#include <sstream>

#include "wgc/lm_graph.hpp"
#include "wgc/rng.hpp"

using namespace wgc;

namespace {

const AdjacencyGraph kG4{{{1, 2}, {2}, {}, {0, 3}}};

std::vector<uint8_t> chunk_plain(const LmGraph& lm, uint64_t c) {
  const std::span<const uint8_t> packed(lm.payload.data() + lm.offsets[c],
                                        lm.offsets[c + 1] - lm.offsets[c]);
  return codec::inflate_block(packed, lm.max_plain_chunk_bytes);
}

std::string serialized(const LmGraph& lm) {
  std::ostringstream ss;
  lm_save(lm, ss);
  return ss.str();
}

}  // namespace

TEST_SUITE_BEGIN("lm_graph");

TEST_CASE("chunk layout for the reference graph, h=2") {
  const LmGraph lm = lm_compress(kG4, 2);
  REQUIRE(lm.num_chunks() == 2);
  // residues {1,2}; flags: 1 in list 0 only, 2 in lists 0 and 1
  CHECK(chunk_plain(lm, 0) ==
        std::vector<uint8_t>{0x02, 0x01, 0x00, 0x01, 0x03});
  // residues {0,3}; both appear only in the chunk's second list (node 3)
  CHECK(chunk_plain(lm, 1) ==
        std::vector<uint8_t>{0x01, 0x03, 0x00, 0x02, 0x02});
  CHECK(lm.max_plain_chunk_bytes == 5);
}

TEST_CASE("chunk layout for the reference graph, h=16") {
  const LmGraph lm = lm_compress(kG4, 16);
  REQUIRE(lm.num_chunks() == 1);
  // one partial chunk: residues {0,1,2,3}, two flag bytes per residue,
  // rows past n stay zero
  CHECK(chunk_plain(lm, 0) ==
        std::vector<uint8_t>{0x01, 0x01, 0x01, 0x01, 0x00, 0x08, 0x00, 0x01,
                             0x00, 0x03, 0x00, 0x08, 0x00});
}

TEST_CASE("queries on the reference graph") {
  QueryCursor cur;
  for (uint32_t h : {2u, 4u, 8u, 16u}) {
    const LmGraph lm = lm_compress(kG4, h);
    CHECK(lm_successors(lm, 0, cur) == std::vector<NodeId>{1, 2});
    CHECK(lm_successors(lm, 1, cur) == std::vector<NodeId>{2});
    CHECK(lm_successors(lm, 2, cur).empty());
    CHECK(lm_successors(lm, 3, cur) == std::vector<NodeId>{0, 3});
    CHECK_THROWS_AS(lm_successors(lm, 4, cur), std::out_of_range);
  }
}

TEST_CASE("h must be a power of two") {
  CHECK_THROWS_AS(lm_compress(kG4, 0), std::invalid_argument);
  CHECK_THROWS_AS(lm_compress(kG4, 3), std::invalid_argument);
  CHECK_THROWS_AS(lm_compress(kG4, 48), std::invalid_argument);
}

TEST_CASE("empty graph and empty lists") {
  const LmGraph empty = lm_compress(AdjacencyGraph{}, 8);
  CHECK(empty.n == 0);
  CHECK(empty.num_chunks() == 0);
  CHECK(empty.payload.empty());

  AdjacencyGraph hollow;
  hollow.lists.resize(20);
  const LmGraph lm = lm_compress(hollow, 8);
  QueryCursor cur;
  for (NodeId u = 0; u < 20; ++u) CHECK(lm_successors(lm, u, cur).empty());
  for (uint64_t c = 0; c < lm.num_chunks(); ++c)
    CHECK(chunk_plain(lm, c) == std::vector<uint8_t>{0x00});
}

TEST_CASE("matches the oracle on random graphs") {
  SplitMix64 rng(2024);
  QueryCursor cur;
  for (int iter = 0; iter < 12; ++iter) {
    const size_t n = 1 + rng.next_below(4000);
    const auto g = generate_graph(n, 1.0 + 14.0 * rng.next_double(),
                                  rng.next_double() * 0.8, rng.next());
    for (uint32_t h : {2u, 8u, 32u, 128u}) {
      const LmGraph lm = lm_compress(g, h);
      for (NodeId u = 0; u < n; ++u)
        REQUIRE(lm_successors(lm, u, cur) == g.lists[u]);
    }
  }
}

TEST_CASE("compression is deterministic") {
  const auto g = generate_graph(1000, 10.0, 0.5, 3);
  CHECK(serialized(lm_compress(g, 16)) == serialized(lm_compress(g, 16)));
}

TEST_CASE("decompress inverts compress") {
  const auto g = generate_graph(777, 9.0, 0.6, 13);
  for (uint32_t h : {8u, 64u}) CHECK(lm_decompress(lm_compress(g, h)) == g);
  CHECK(lm_decompress(lm_compress(kG4, 16)) == kG4);
}

TEST_CASE("max plain chunk bytes is exact") {
  const auto g = generate_graph(2000, 12.0, 0.4, 17);
  const LmGraph lm = lm_compress(g, 32);
  uint64_t maxp = 0;
  for (uint64_t c = 0; c < lm.num_chunks(); ++c)
    maxp = std::max<uint64_t>(maxp, chunk_plain(lm, c).size());
  CHECK(maxp == lm.max_plain_chunk_bytes);
}

TEST_CASE("save and load round trip bit-exactly") {
  const auto g = generate_graph(1234, 8.0, 0.5, 29);
  const LmGraph lm = lm_compress(g, 16);
  const std::string bytes = serialized(lm);
  CHECK(bytes.size() == lm_file_bytes(lm));
  std::istringstream in(bytes);
  const LmGraph loaded = lm_load(in);
  CHECK(serialized(loaded) == bytes);
  QueryCursor cur;
  for (NodeId u = 0; u < 100; ++u)
    CHECK(lm_successors(loaded, u, cur) == g.lists[u]);
}

TEST_CASE("load rejects malformed files") {
  const LmGraph lm = lm_compress(kG4, 2);
  std::string bytes = serialized(lm);
  {
    std::string bad = bytes;
    bad[0] = 'X';
    std::istringstream in(bad);
    CHECK_THROWS_AS(lm_load(in), FormatError);
  }
  {
    std::string bad = bytes;
    bad[4] = 3;  // h not a power of two
    std::istringstream in(bad);
    CHECK_THROWS_AS(lm_load(in), FormatError);
  }
  {
    std::string bad = bytes.substr(0, bytes.size() - 1);  // truncated payload
    std::istringstream in(bad);
    CHECK_THROWS_AS(lm_load(in), FormatError);
  }
  {
    std::string bad = bytes;
    bad[8] = 9;  // n no longer matches the chunk count
    std::istringstream in(bad);
    CHECK_THROWS_AS(lm_load(in), FormatError);
  }
}

TEST_SUITE_END();
