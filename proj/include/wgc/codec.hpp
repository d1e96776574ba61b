#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace wgc {

// Decoding failed because the byte stream is malformed or truncated.
class CorruptStreamError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A value cannot be represented by the on-disk format.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A serialized file failed header or table validation.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace codec {

// Variable-byte integers cover [0, 2^22). The top two bits of the first
// byte select the width: 00 -> 1 byte (6-bit payload), 01 -> 2 bytes
// (14 bits), 10 -> 3 bytes (22 bits). Tag 11 is reserved and rejected.
// Payload bits are stored most significant group first, so one-byte
// values equal their numeric value. Encoders always emit the shortest
// form.
inline constexpr uint32_t kVarByteMax = (1u << 22) - 1;

constexpr size_t varbyte_length(uint32_t v) {
  return v < (1u << 6) ? 1 : v < (1u << 14) ? 2 : 3;
}

inline void varbyte_encode(uint32_t v, std::vector<uint8_t>& out) {
  if (v > kVarByteMax)
    throw std::out_of_range("varbyte: value " + std::to_string(v) +
                            " exceeds 22-bit range");
  if (v < (1u << 6)) {
    out.push_back(static_cast<uint8_t>(v));
  } else if (v < (1u << 14)) {
    out.push_back(static_cast<uint8_t>(0x40u | (v >> 8)));
    out.push_back(static_cast<uint8_t>(v & 0xFFu));
  } else {
    out.push_back(static_cast<uint8_t>(0x80u | (v >> 16)));
    out.push_back(static_cast<uint8_t>((v >> 8) & 0xFFu));
    out.push_back(static_cast<uint8_t>(v & 0xFFu));
  }
}

inline uint32_t varbyte_decode(std::span<const uint8_t> bytes, size_t& pos) {
  if (pos >= bytes.size()) throw CorruptStreamError("varbyte: truncated stream");
  const uint8_t first = bytes[pos];
  const unsigned tag = first >> 6;
  if (tag == 3) throw CorruptStreamError("varbyte: reserved tag 11");
  const size_t len = tag + 1;
  if (pos + len > bytes.size())
    throw CorruptStreamError("varbyte: truncated value");
  uint32_t v = first & 0x3Fu;
  for (size_t i = 1; i < len; ++i) v = (v << 8) | bytes[pos + i];
  pos += len;
  return v;
}

// Delta coding for strictly increasing sequences: the first value is
// stored as value+1, every further value as the gap to its predecessor,
// and a 0 byte terminates the stream (gaps are always >= 1, so 0 is
// unambiguous).
void delta_encode(std::span<const uint32_t> values, std::vector<uint8_t>& out);

// Appends the decoded values to `out` and advances `pos` past the
// terminator.
void delta_decode(std::span<const uint8_t> stream, size_t& pos,
                  std::vector<uint32_t>& out);

// Raw DEFLATE (RFC 1951, no zlib header or checksum) at maximum
// compression.
std::vector<uint8_t> deflate_block(std::span<const uint8_t> input);

// Decodes a raw DEFLATE stream into `out`; returns the decoded size.
// Throws CorruptStreamError if the stream is malformed, truncated, or
// decodes to more than out.size() bytes. A stream that decodes to
// exactly out.size() bytes succeeds.
size_t inflate_block(std::span<const uint8_t> input, std::span<uint8_t> out);
std::vector<uint8_t> inflate_block(std::span<const uint8_t> input,
                                   size_t max_out);

// Reusable raw-DEFLATE compressor; one underlying zlib state, reset per
// block. Avoids the per-call setup cost of deflate_block when
// compressing many small blocks.
class Deflater {
 public:
  Deflater();
  ~Deflater();
  Deflater(Deflater&&) noexcept;
  Deflater& operator=(Deflater&&) noexcept;
  Deflater(const Deflater&) = delete;
  Deflater& operator=(const Deflater&) = delete;

  // Appends the compressed block to `out`.
  void compress(std::span<const uint8_t> input, std::vector<uint8_t>& out);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Reusable raw-DEFLATE decompressor with the same error contract as
// inflate_block.
class Inflater {
 public:
  Inflater();
  ~Inflater();
  Inflater(Inflater&&) noexcept;
  Inflater& operator=(Inflater&&) noexcept;
  Inflater(const Inflater&) = delete;
  Inflater& operator=(const Inflater&) = delete;

  size_t inflate(std::span<const uint8_t> input, std::span<uint8_t> out);

  // Number of inflate() invocations so far; decode paths are expected to
  // inflate exactly once per zipped body and never for plain ones.
  uint64_t calls() const { return calls_; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  uint64_t calls_ = 0;
};

}  // namespace codec

// Fixed-size bit array, LSB first: bit i lives in byte i>>3 under mask
// 1<<(i&7). Backing storage is ceil(bits/8) bytes; padding bits stay 0.
class BitSet {
 public:
  BitSet() = default;
  explicit BitSet(size_t bits) { resize(bits); }

  void resize(size_t bits) {
    bits_ = bits;
    bytes_.assign((bits + 7) / 8, 0);
  }
  void clear() { std::fill(bytes_.begin(), bytes_.end(), uint8_t{0}); }

  void set(size_t i) {
    if (i >= bits_) throw std::out_of_range("BitSet::set");
    bytes_[i >> 3] |= static_cast<uint8_t>(1u << (i & 7));
  }
  bool get(size_t i) const {
    if (i >= bits_) throw std::out_of_range("BitSet::get");
    return (bytes_[i >> 3] >> (i & 7)) & 1u;
  }

  size_t bit_count() const { return bits_; }
  const std::vector<uint8_t>& bytes() const { return bytes_; }

 private:
  size_t bits_ = 0;
  std::vector<uint8_t> bytes_;
};

}  // namespace wgc
