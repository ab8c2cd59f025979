#pragma once

#include <span>
#include <vector>

#include "ansx/common.hpp"

namespace ansx {

// Sequence of base-b digits (b = 2^radix_bits), packed radix_bits per digit,
// least-significant-bit first within bytes. Digit i occupies stream bits
// [i*r, (i+1)*r); stream bit j lives in byte j/8 at bit j%8.
class DigitBuffer {
public:
  DigitBuffer() = default;
  explicit DigitBuffer(u32 radix_bits);

  static DigitBuffer from_bytes(u32 radix_bits, std::span<const u8> bytes, u64 digit_count);

  u32 radix_bits() const { return radix_bits_; }
  u64 size() const { return size_; }
  u64 bit_size() const { return size_ * radix_bits_; }
  bool empty() const { return size_ == 0; }

  void push(u32 digit);
  u32 get(u64 index) const;
  void clear() {
    size_ = 0;
    bytes_.clear();
  }

  // Digit-order reversal; an involution.
  DigitBuffer reversed() const;

  std::span<const u8> bytes() const { return {bytes_.data(), bytes_.size()}; }
  std::vector<u8>& raw_bytes() { return bytes_; }

  bool get_bit(u64 bit_index) const {
    return (bytes_[bit_index >> 3] >> (bit_index & 7)) & 1;
  }
  void flip_bit(u64 bit_index) { bytes_[bit_index >> 3] ^= static_cast<u8>(1u << (bit_index & 7)); }

  bool operator==(const DigitBuffer&) const = default;

private:
  u32 radix_bits_ = 1;
  u64 size_ = 0;
  std::vector<u8> bytes_;
};

// Forward reader over a DigitBuffer.
class DigitReader {
public:
  explicit DigitReader(const DigitBuffer& buf, u64 pos = 0) : buf_(&buf), pos_(pos) {}

  u32 pull() {
    require(pos_ < buf_->size(), Err::OutOfDigits, "digit stream exhausted");
    return buf_->get(pos_++);
  }

  u64 pos() const { return pos_; }
  u64 remaining() const { return buf_->size() - pos_; }

private:
  const DigitBuffer* buf_;
  u64 pos_;
};

}  // namespace ansx
