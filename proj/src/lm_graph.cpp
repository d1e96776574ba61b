#include "wgc/lm_graph.hpp"

#include <algorithm>
#include <bit>
#include <fstream>

#include "serial.hpp"

namespace wgc {

namespace {

constexpr char kMagic[5] = "LMG1";

size_t flag_stride(uint32_t h) { return (size_t{h} + 7) / 8; }

void check_h(uint32_t h) {
  if (h == 0 || !std::has_single_bit(h))
    throw std::invalid_argument("chunk height must be a power of two");
}

}  // namespace

LmGraph lm_compress(const AdjacencyGraph& g, uint32_t h) {
  check_h(h);
  LmGraph lm;
  lm.h = h;
  lm.n = g.node_count();
  const uint64_t num_chunks = (lm.n + h - 1) / h;
  lm.offsets.reserve(num_chunks + 1);
  lm.offsets.push_back(0);

  const size_t stride = flag_stride(h);
  codec::Deflater deflater;
  std::vector<uint32_t> residues;
  std::vector<uint8_t> plain;
  for (uint64_t c = 0; c < num_chunks; ++c) {
    const uint64_t base = c * h;
    const uint32_t rows = static_cast<uint32_t>(std::min<uint64_t>(h, lm.n - base));
    residues.clear();
    for (uint32_t k = 0; k < rows; ++k) {
      const auto& l = g.lists[base + k];
      residues.insert(residues.end(), l.begin(), l.end());
    }
    std::sort(residues.begin(), residues.end());
    residues.erase(std::unique(residues.begin(), residues.end()),
                   residues.end());

    plain.clear();
    try {
      codec::delta_encode(residues, plain);
    } catch (const std::out_of_range&) {
      throw CapacityError("residue gap exceeds 22-bit varbyte range in chunk "
                          "covering nodes [" +
                          std::to_string(base) + ", " +
                          std::to_string(base + rows) + ")");
    }
    const size_t flags_off = plain.size();
    plain.resize(flags_off + residues.size() * stride, 0);
    for (uint32_t k = 0; k < rows; ++k) {
      for (NodeId v : g.lists[base + k]) {
        const size_t j = static_cast<size_t>(
            std::lower_bound(residues.begin(), residues.end(), v) -
            residues.begin());
        plain[flags_off + j * stride + (k >> 3)] |=
            static_cast<uint8_t>(1u << (k & 7));
      }
    }

    lm.max_plain_chunk_bytes =
        std::max<uint64_t>(lm.max_plain_chunk_bytes, plain.size());
    deflater.compress(plain, lm.payload);
    lm.offsets.push_back(lm.payload.size());
  }
  return lm;
}

const std::vector<NodeId>& lm_successors(const LmGraph& lm, NodeId u,
                                         QueryCursor& cursor) {
  if (u >= lm.n)
    throw std::out_of_range("node " + std::to_string(u) + " out of range");
  const uint32_t h = lm.h;
  const uint64_t chunk = u / h;
  const uint32_t row = static_cast<uint32_t>(u % h);

  cursor.ensure_scratch(lm.max_plain_chunk_bytes);
  const uint64_t off = lm.offsets[chunk];
  const uint64_t end = lm.offsets[chunk + 1];
  const size_t len = cursor.inflater.inflate(
      std::span<const uint8_t>(lm.payload.data() + off, end - off),
      std::span<uint8_t>(cursor.scratch.data(), lm.max_plain_chunk_bytes));

  const std::span<const uint8_t> plain(cursor.scratch.data(), len);
  size_t pos = 0;
  cursor.values.clear();
  codec::delta_decode(plain, pos, cursor.values);
  const size_t stride = flag_stride(h);
  if (pos + cursor.values.size() * stride != len)
    throw CorruptStreamError("chunk flag area has wrong size");

  const uint8_t* flags = plain.data() + pos;
  const size_t byte_idx = row >> 3;
  const uint8_t mask = static_cast<uint8_t>(1u << (row & 7));
  cursor.out.clear();
  for (size_t j = 0; j < cursor.values.size(); ++j)
    if (flags[j * stride + byte_idx] & mask)
      cursor.out.push_back(cursor.values[j]);
  return cursor.out;
}

AdjacencyGraph lm_decompress(const LmGraph& lm) {
  AdjacencyGraph g;
  g.lists.resize(lm.n);
  QueryCursor cur;
  cur.ensure_scratch(lm.max_plain_chunk_bytes);
  const size_t stride = flag_stride(lm.h);
  for (uint64_t c = 0; c < lm.num_chunks(); ++c) {
    const uint64_t base = c * lm.h;
    const uint32_t rows =
        static_cast<uint32_t>(std::min<uint64_t>(lm.h, lm.n - base));
    const uint64_t off = lm.offsets[c];
    const uint64_t end = lm.offsets[c + 1];
    const size_t len = cur.inflater.inflate(
        std::span<const uint8_t>(lm.payload.data() + off, end - off),
        std::span<uint8_t>(cur.scratch.data(), lm.max_plain_chunk_bytes));
    const std::span<const uint8_t> plain(cur.scratch.data(), len);
    size_t pos = 0;
    cur.values.clear();
    codec::delta_decode(plain, pos, cur.values);
    if (pos + cur.values.size() * stride != len)
      throw CorruptStreamError("chunk flag area has wrong size");
    const uint8_t* flags = plain.data() + pos;
    for (uint32_t k = 0; k < rows; ++k) {
      const size_t byte_idx = k >> 3;
      const uint8_t mask = static_cast<uint8_t>(1u << (k & 7));
      auto& list = g.lists[base + k];
      for (size_t j = 0; j < cur.values.size(); ++j)
        if (flags[j * stride + byte_idx] & mask)
          list.push_back(cur.values[j]);
    }
  }
  return g;
}

uint64_t lm_file_bytes(const LmGraph& lm) {
  return 4 + 4 + 8 + 8 + 8 + (lm.num_chunks() + 1) * 8 + 8 +
         lm.payload.size();
}

void lm_save(const LmGraph& lm, std::ostream& out) {
  serial::write_magic(out, kMagic);
  serial::write_u32(out, lm.h);
  serial::write_u64(out, lm.n);
  serial::write_u64(out, lm.num_chunks());
  serial::write_u64(out, lm.max_plain_chunk_bytes);
  for (uint64_t o : lm.offsets) serial::write_u64(out, o);
  serial::write_u64(out, lm.payload.size());
  serial::write_bytes(out, lm.payload);
  if (!out) throw std::runtime_error("write failed");
}

LmGraph lm_load(std::istream& in) {
  serial::expect_magic(in, kMagic);
  LmGraph lm;
  lm.h = serial::read_u32(in);
  try {
    check_h(lm.h);
  } catch (const std::exception& e) {
    throw FormatError(e.what());
  }
  lm.n = serial::read_u64(in);
  const uint64_t num_chunks = serial::read_u64(in);
  if (num_chunks != (lm.n + lm.h - 1) / lm.h)
    throw FormatError("chunk count does not match n and h");
  lm.max_plain_chunk_bytes = serial::read_u64(in);
  lm.offsets.resize(num_chunks + 1);
  for (auto& o : lm.offsets) o = serial::read_u64(in);
  if (lm.offsets[0] != 0) throw FormatError("offsets must start at 0");
  for (uint64_t c = 0; c < num_chunks; ++c)
    if (lm.offsets[c] > lm.offsets[c + 1])
      throw FormatError("offsets must be non-decreasing");
  const uint64_t payload_len = serial::read_u64(in);
  if (payload_len != lm.offsets[num_chunks])
    throw FormatError("payload length does not match final offset");
  lm.payload.resize(payload_len);
  serial::read_bytes(in, lm.payload);
  return lm;
}

void lm_save_file(const LmGraph& lm, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path);
  lm_save(lm, out);
}

LmGraph lm_load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return lm_load(in);
}

}  // namespace wgc
