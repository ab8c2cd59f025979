#include "ansx/digits.hpp"

namespace ansx {

DigitBuffer::DigitBuffer(u32 radix_bits) : radix_bits_(radix_bits) {
  require(radix_bits >= 1 && radix_bits <= 16, Err::BadParameter,
          "digit width must be 1..16 bits");
}

DigitBuffer DigitBuffer::from_bytes(u32 radix_bits, std::span<const u8> bytes, u64 digit_count) {
  DigitBuffer buf(radix_bits);
  const u64 bits = digit_count * radix_bits;
  require(bytes.size() * 8 >= bits, Err::BadParameter, "byte span shorter than digit count");
  buf.size_ = digit_count;
  buf.bytes_.assign(bytes.begin(), bytes.begin() + static_cast<size_t>((bits + 7) / 8));
  // mask stray bits past the end so equality means digit equality
  if (bits % 8 != 0 && !buf.bytes_.empty())
    buf.bytes_.back() &= static_cast<u8>((1u << (bits % 8)) - 1);
  return buf;
}

void DigitBuffer::push(u32 digit) {
  u64 bit = size_ * radix_bits_;
  const u64 end = bit + radix_bits_;
  if (bytes_.size() * 8 < end) bytes_.resize(static_cast<size_t>((end + 7) / 8), 0);
  for (u32 j = 0; j < radix_bits_; ++j, ++bit)
    bytes_[static_cast<size_t>(bit >> 3)] |= static_cast<u8>(((digit >> j) & 1u) << (bit & 7));
  ++size_;
}

u32 DigitBuffer::get(u64 index) const {
  u64 bit = index * radix_bits_;
  u32 digit = 0;
  for (u32 j = 0; j < radix_bits_; ++j, ++bit)
    digit |= static_cast<u32>((bytes_[static_cast<size_t>(bit >> 3)] >> (bit & 7)) & 1u) << j;
  return digit;
}

DigitBuffer DigitBuffer::reversed() const {
  DigitBuffer out(radix_bits_);
  out.bytes_.reserve(bytes_.size());
  for (u64 i = size_; i > 0; --i) out.push(get(i - 1));
  return out;
}

}  // namespace ansx
