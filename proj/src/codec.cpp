#include "wgc/codec.hpp"

#define ZLIB_CONST
#include <zlib.h>

#include <cstring>

namespace wgc::codec {

void delta_encode(std::span<const uint32_t> values, std::vector<uint8_t>& out) {
  if (!values.empty()) {
    uint64_t first = uint64_t{values[0]} + 1;
    if (first > kVarByteMax)
      throw std::out_of_range("delta: first value exceeds 22-bit range");
    varbyte_encode(static_cast<uint32_t>(first), out);
    for (size_t i = 1; i < values.size(); ++i) {
      if (values[i] <= values[i - 1])
        throw std::invalid_argument("delta: values not strictly increasing");
      varbyte_encode(values[i] - values[i - 1], out);
    }
  }
  out.push_back(0);
}

void delta_decode(std::span<const uint8_t> stream, size_t& pos,
                  std::vector<uint32_t>& out) {
  int64_t last = -1;
  for (;;) {
    uint32_t gap = varbyte_decode(stream, pos);
    if (gap == 0) return;
    last += gap;
    out.push_back(static_cast<uint32_t>(last));
  }
}

namespace {

[[noreturn]] void throw_zlib(const char* what, int ret, const z_stream& strm) {
  std::string msg = std::string(what) + " (zlib ret " + std::to_string(ret);
  if (strm.msg) msg += std::string(": ") + strm.msg;
  msg += ")";
  throw CorruptStreamError(msg);
}

}  // namespace

struct Deflater::Impl {
  z_stream strm{};
  Impl() {
    if (deflateInit2(&strm, Z_BEST_COMPRESSION, Z_DEFLATED, -15, 8,
                     Z_DEFAULT_STRATEGY) != Z_OK)
      throw std::runtime_error("deflateInit2 failed");
  }
  ~Impl() { deflateEnd(&strm); }
};

Deflater::Deflater() : impl_(std::make_unique<Impl>()) {}
Deflater::~Deflater() = default;
Deflater::Deflater(Deflater&&) noexcept = default;
Deflater& Deflater::operator=(Deflater&&) noexcept = default;

void Deflater::compress(std::span<const uint8_t> input,
                        std::vector<uint8_t>& out) {
  z_stream& strm = impl_->strm;
  deflateReset(&strm);
  const size_t bound = deflateBound(&strm, static_cast<uLong>(input.size()));
  const size_t old_size = out.size();
  out.resize(old_size + bound);
  strm.next_in = input.data();
  strm.avail_in = static_cast<uInt>(input.size());
  strm.next_out = out.data() + old_size;
  strm.avail_out = static_cast<uInt>(bound);
  int ret = deflate(&strm, Z_FINISH);
  if (ret != Z_STREAM_END) throw_zlib("deflate failed", ret, strm);
  out.resize(old_size + (bound - strm.avail_out));
}

std::vector<uint8_t> deflate_block(std::span<const uint8_t> input) {
  Deflater d;
  std::vector<uint8_t> out;
  d.compress(input, out);
  return out;
}

struct Inflater::Impl {
  z_stream strm{};
  Impl() {
    if (inflateInit2(&strm, -15) != Z_OK)
      throw std::runtime_error("inflateInit2 failed");
  }
  ~Impl() { inflateEnd(&strm); }
};

Inflater::Inflater() : impl_(std::make_unique<Impl>()) {}
Inflater::~Inflater() = default;
Inflater::Inflater(Inflater&&) noexcept = default;
Inflater& Inflater::operator=(Inflater&&) noexcept = default;

size_t Inflater::inflate(std::span<const uint8_t> input,
                         std::span<uint8_t> out) {
  ++calls_;
  z_stream& strm = impl_->strm;
  inflateReset(&strm);
  uint8_t dummy = 0;
  strm.next_in = input.data();
  strm.avail_in = static_cast<uInt>(input.size());
  strm.next_out = out.empty() ? &dummy : out.data();
  strm.avail_out = static_cast<uInt>(out.size());
  int ret = ::inflate(&strm, Z_FINISH);
  if (ret == Z_STREAM_END) return out.size() - strm.avail_out;
  if (ret == Z_OK || ret == Z_BUF_ERROR) {
    if (strm.avail_out == 0) {
      // The output span is full; the stream is only valid if it ends right
      // here without producing another byte.
      strm.next_out = &dummy;
      strm.avail_out = 1;
      ret = ::inflate(&strm, Z_FINISH);
      if (ret == Z_STREAM_END && strm.avail_out == 1) return out.size();
      throw CorruptStreamError("inflate: decoded data exceeds output bound");
    }
    throw CorruptStreamError("inflate: truncated stream");
  }
  throw_zlib("inflate: corrupt stream", ret, strm);
}

size_t inflate_block(std::span<const uint8_t> input, std::span<uint8_t> out) {
  Inflater inf;
  return inf.inflate(input, out);
}

std::vector<uint8_t> inflate_block(std::span<const uint8_t> input,
                                   size_t max_out) {
  std::vector<uint8_t> out(max_out);
  out.resize(inflate_block(input, std::span<uint8_t>(out)));
  return out;
}

}  // namespace wgc::codec
