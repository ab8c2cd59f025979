#pragma once

#include <span>
#include <vector>

#include "ansx/common.hpp"

namespace ansx {

// Little-endian byte-vector writer.
class ByteWriter {
public:
  void put_u8(u8 v) { bytes_.push_back(v); }
  void put_u16(u16 v) {
    put_u8(static_cast<u8>(v));
    put_u8(static_cast<u8>(v >> 8));
  }
  void put_u32(u32 v) {
    put_u16(static_cast<u16>(v));
    put_u16(static_cast<u16>(v >> 16));
  }
  void put_u64(u64 v) {
    put_u32(static_cast<u32>(v));
    put_u32(static_cast<u32>(v >> 32));
  }
  void put_bytes(std::span<const u8> b) { bytes_.insert(bytes_.end(), b.begin(), b.end()); }

  const std::vector<u8>& bytes() const { return bytes_; }
  std::vector<u8> take() { return std::move(bytes_); }
  size_t size() const { return bytes_.size(); }

private:
  std::vector<u8> bytes_;
};

// Little-endian reader over a byte span.
class ByteReader {
public:
  explicit ByteReader(std::span<const u8> bytes) : bytes_(bytes) {}

  u8 get_u8() {
    require(pos_ < bytes_.size(), Err::BadMagic, "truncated header");
    return bytes_[pos_++];
  }
  u16 get_u16() {
    const u16 lo = get_u8();
    return static_cast<u16>(lo | (static_cast<u16>(get_u8()) << 8));
  }
  u32 get_u32() {
    const u32 lo = get_u16();
    return lo | (static_cast<u32>(get_u16()) << 16);
  }
  u64 get_u64() {
    const u64 lo = get_u32();
    return lo | (static_cast<u64>(get_u32()) << 32);
  }
  std::span<const u8> get_bytes(size_t n) {
    require(pos_ + n <= bytes_.size(), Err::BadMagic, "truncated payload");
    std::span<const u8> out = bytes_.subspan(pos_, n);
    pos_ += n;
    return out;
  }

  size_t pos() const { return pos_; }
  size_t remaining() const { return bytes_.size() - pos_; }

private:
  std::span<const u8> bytes_;
  size_t pos_ = 0;
};

}  // namespace ansx
