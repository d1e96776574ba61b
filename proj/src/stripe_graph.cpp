#include "wgc/stripe_graph.hpp"

#include <algorithm>
#include <bit>
#include <fstream>

#include "serial.hpp"

namespace wgc {

namespace {

constexpr char kMagic[5] = "S2D1";

void check_params(uint32_t B, uint32_t K) {
  if (B == 0 || !std::has_single_bit(B))
    throw std::invalid_argument("tile size must be a power of two");
  if (B > 2048)
    throw CapacityError("tile size above 2048 breaks the 22-bit delta bound");
  if (K != 0 && (!std::has_single_bit(K) || K > B))
    throw std::invalid_argument(
        "stripe count must be 0 or a power of two <= tile size");
}

TileBlobView blob_view(const StripeGraph& sg, uint64_t idx) {
  const uint64_t off = StripeGraph::offset_of(sg.x_offsets[idx]);
  const uint64_t end = StripeGraph::offset_of(sg.x_offsets[idx + 1]);
  return TileBlobView{
      std::span<const uint8_t>(sg.payload.data() + off, end - off), sg.B,
      sg.K};
}

}  // namespace

StripeGraph sg_compress(const AdjacencyGraph& g, uint32_t B, uint32_t K) {
  check_params(B, K);
  StripeGraph sg;
  sg.B = B;
  sg.K = K;
  sg.n = g.node_count();
  sg.links = g.edge_count();
  const uint64_t T = sg.n == 0 ? 0 : (sg.n + B - 1) / B;
  if (T >= (uint64_t{1} << 24))
    throw CapacityError("tile coordinates exceed 3 bytes");
  sg.tiles_per_side = T;

  const uint32_t log_b = static_cast<uint32_t>(std::countr_zero(B));
  const uint32_t col_mask = B - 1;
  std::vector<UncompressedTile> tiles(T);
  for (auto& t : tiles) t.configure(B, K);
  std::vector<std::vector<uint64_t>> per_col(T);
  TileCompressScratch scratch;
  sg.x_first.assign(T + 1, 0);

  for (uint64_t r = 0; r < T; ++r) {
    sg.x_first[r] = sg.x_offsets.size();
    const uint64_t band_base = r * B;
    const uint64_t band_end = std::min<uint64_t>(band_base + B, sg.n);
    for (uint64_t u = band_base; u < band_end; ++u) {
      const uint32_t y = static_cast<uint32_t>(u - band_base);
      for (NodeId v : g.lists[u])
        tiles[v >> log_b].add_link(v & col_mask, y);
    }
    for (uint64_t c = 0; c < T; ++c) {
      if (tiles[c].empty()) continue;
      const uint64_t off = sg.payload.size();
      const auto res = tiles[c].compress(static_cast<uint32_t>(c),
                                         static_cast<uint32_t>(r), scratch,
                                         sg.payload);
      (void)res.bytes_written;
      per_col[c].push_back(sg.x_offsets.size());
      sg.x_offsets.push_back((uint64_t{res.tag} << 62) | off);
      tiles[c].clear();
    }
  }
  sg.x_first[T] = sg.x_offsets.size();
  if (sg.payload.size() > StripeGraph::kOffsetMask)
    throw CapacityError("payload exceeds 62-bit offsets");
  sg.x_offsets.push_back(sg.payload.size());  // sentinel, tag 0

  sg.y_first.assign(T + 1, 0);
  sg.y_offsets.reserve(sg.x_offsets.size() - 1);
  for (uint64_t c = 0; c < T; ++c) {
    sg.y_first[c] = sg.y_offsets.size();
    sg.y_offsets.insert(sg.y_offsets.end(), per_col[c].begin(),
                        per_col[c].end());
  }
  sg.y_first[T] = sg.y_offsets.size();
  return sg;
}

const std::vector<NodeId>& sg_successors(const StripeGraph& sg, NodeId u,
                                         QueryCursor& cursor) {
  if (u >= sg.n)
    throw std::out_of_range("node " + std::to_string(u) + " out of range");
  const uint32_t log_b = static_cast<uint32_t>(std::countr_zero(sg.B));
  const uint64_t r = u >> log_b;
  const uint32_t row = u & (sg.B - 1);
  cursor.out.clear();
  for (uint64_t i = sg.x_first[r]; i < sg.x_first[r + 1]; ++i) {
    const TileBlobView view = blob_view(sg, i);
    const NodeId base = view.x_tile() << log_b;
    tile_decode_row(view, StripeGraph::tag_of(sg.x_offsets[i]), row, cursor,
                    [&](uint32_t col) { cursor.out.push_back(base + col); });
  }
  return cursor.out;
}

const std::vector<NodeId>& sg_predecessors(const StripeGraph& sg, NodeId v,
                                           QueryCursor& cursor) {
  if (v >= sg.n)
    throw std::out_of_range("node " + std::to_string(v) + " out of range");
  const uint32_t log_b = static_cast<uint32_t>(std::countr_zero(sg.B));
  const uint64_t c = v >> log_b;
  const uint32_t col = v & (sg.B - 1);
  cursor.out.clear();
  for (uint64_t j = sg.y_first[c]; j < sg.y_first[c + 1]; ++j) {
    const uint64_t i = sg.y_offsets[j];
    const TileBlobView view = blob_view(sg, i);
    const NodeId base = view.y_tile() << log_b;
    tile_decode_col(view, StripeGraph::tag_of(sg.x_offsets[i]), col, cursor,
                    [&](uint32_t row) { cursor.out.push_back(base + row); });
  }
  return cursor.out;
}

AdjacencyGraph sg_decompress(const StripeGraph& sg) {
  AdjacencyGraph g;
  g.lists.resize(sg.n);
  QueryCursor cur;
  const uint32_t log_b = static_cast<uint32_t>(std::countr_zero(sg.B));
  const uint32_t mask = sg.B - 1;
  for (uint64_t r = 0; r < sg.tiles_per_side; ++r) {
    const uint64_t band_base = r << log_b;
    for (uint64_t i = sg.x_first[r]; i < sg.x_first[r + 1]; ++i) {
      const TileBlobView view = blob_view(sg, i);
      const uint8_t tag = StripeGraph::tag_of(sg.x_offsets[i]);
      const NodeId col_base = view.x_tile() << log_b;
      if ((tag & kTileTransposedBit) == 0) {
        tile_decode_all(view, tag, cur, [&](uint32_t q) {
          g.lists[band_base + (q >> log_b)].push_back(col_base + (q & mask));
        });
      } else {
        tile_decode_all(view, tag, cur, [&](uint32_t q) {
          g.lists[band_base + (q & mask)].push_back(col_base + (q >> log_b));
        });
      }
    }
  }
  return g;
}

uint64_t sg_file_bytes(const StripeGraph& sg) {
  const uint64_t M = sg.non_empty_tiles();
  const uint64_t T = sg.tiles_per_side;
  return 4 + 4 + 4 + 8 + 8 + 8 + 8 + (M + 1) * 8 + (T + 1) * 8 + M * 8 +
         (T + 1) * 8 + 8 + sg.payload.size();
}

SgStats sg_stats(const StripeGraph& sg) {
  if (sg.links == 0)
    throw std::domain_error("bits per link undefined for a graph without links");
  SgStats st{};
  st.bits_per_link =
      8.0 * static_cast<double>(sg_file_bytes(sg)) / static_cast<double>(sg.links);
  st.tag_histogram = {0, 0, 0, 0};
  const uint64_t M = sg.non_empty_tiles();
  for (uint64_t i = 0; i < M; ++i)
    ++st.tag_histogram[StripeGraph::tag_of(sg.x_offsets[i])];
  st.non_empty_tiles = M;
  st.stripe_overhead_bytes = 2 * ((uint64_t{sg.K} + 7) / 8) * M;
  return st;
}

void sg_save(const StripeGraph& sg, std::ostream& out) {
  serial::write_magic(out, kMagic);
  serial::write_u32(out, sg.B);
  serial::write_u32(out, sg.K);
  serial::write_u64(out, sg.n);
  serial::write_u64(out, sg.links);
  serial::write_u64(out, sg.tiles_per_side);
  serial::write_u64(out, sg.non_empty_tiles());
  for (uint64_t e : sg.x_offsets) serial::write_u64(out, e);
  for (uint64_t e : sg.x_first) serial::write_u64(out, e);
  for (uint64_t e : sg.y_offsets) serial::write_u64(out, e);
  for (uint64_t e : sg.y_first) serial::write_u64(out, e);
  serial::write_u64(out, sg.payload.size());
  serial::write_bytes(out, sg.payload);
  if (!out) throw std::runtime_error("write failed");
}

StripeGraph sg_load(std::istream& in) {
  serial::expect_magic(in, kMagic);
  StripeGraph sg;
  sg.B = serial::read_u32(in);
  sg.K = serial::read_u32(in);
  try {
    check_params(sg.B, sg.K);
  } catch (const std::exception& e) {
    throw FormatError(e.what());
  }
  sg.n = serial::read_u64(in);
  sg.links = serial::read_u64(in);
  sg.tiles_per_side = serial::read_u64(in);
  const uint64_t T = sg.n == 0 ? 0 : (sg.n + sg.B - 1) / sg.B;
  if (sg.tiles_per_side != T)
    throw FormatError("tile count does not match n and B");
  const uint64_t M = serial::read_u64(in);

  sg.x_offsets.resize(M + 1);
  for (auto& e : sg.x_offsets) e = serial::read_u64(in);
  sg.x_first.resize(T + 1);
  for (auto& e : sg.x_first) e = serial::read_u64(in);
  sg.y_offsets.resize(M);
  for (auto& e : sg.y_offsets) e = serial::read_u64(in);
  sg.y_first.resize(T + 1);
  for (auto& e : sg.y_first) e = serial::read_u64(in);
  const uint64_t payload_len = serial::read_u64(in);

  if (StripeGraph::tag_of(sg.x_offsets[M]) != 0 ||
      StripeGraph::offset_of(sg.x_offsets[M]) != payload_len)
    throw FormatError("offset sentinel does not match payload length");
  const uint64_t min_blob = 2 * ((uint64_t{sg.K} + 7) / 8) + 6 + 1;
  for (uint64_t i = 0; i < M; ++i) {
    const uint64_t a = StripeGraph::offset_of(sg.x_offsets[i]);
    const uint64_t b = StripeGraph::offset_of(sg.x_offsets[i + 1]);
    if (a >= b || b - a < min_blob)
      throw FormatError("tile blob offsets out of order or too small");
  }
  if (sg.x_first[0] != 0 || sg.x_first[T] != M)
    throw FormatError("band index does not cover the offset table");
  for (uint64_t r = 0; r < T; ++r)
    if (sg.x_first[r] > sg.x_first[r + 1])
      throw FormatError("band index must be non-decreasing");
  if (sg.y_first[0] != 0 || sg.y_first[T] != M)
    throw FormatError("column index does not cover the offset table");
  for (uint64_t c = 0; c < T; ++c)
    if (sg.y_first[c] > sg.y_first[c + 1])
      throw FormatError("column index must be non-decreasing");
  for (uint64_t e : sg.y_offsets)
    if (e >= M) throw FormatError("column entry points past the offset table");

  sg.payload.resize(payload_len);
  serial::read_bytes(in, sg.payload);
  return sg;
}

void sg_save_file(const StripeGraph& sg, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path);
  sg_save(sg, out);
}

StripeGraph sg_load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return sg_load(in);
}

}  // namespace wgc
