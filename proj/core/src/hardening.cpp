#include "ansx/hardening.hpp"

#include "ansx/prng.hpp"

namespace ansx {

MaskList MaskList::from_seed(u64 seed, u32 count) {
  require(count >= 1, Err::BadParameter, "mask list needs at least one entry");
  MaskList list;
  list.masks.reserve(count);
  Splitmix rng(seed);
  for (u32 i = 0; i < count; ++i) list.masks.push_back(static_cast<u32>(rng.next()));
  return list;
}

BitTable::BitTable(u32 length) : length_(length), words_((length + 63) / 64, 0) {
  require(length >= 1, Err::BadParameter, "bit table needs at least one entry");
}

BitTable::BitTable(u32 length, std::span<const u8> packed) : BitTable(length) {
  require(packed.size() >= (length + 7) / 8, Err::BadParameter,
          "packed bit table shorter than its length");
  for (u32 i = 0; i < length; ++i)
    set(i, (packed[i >> 3] >> (i & 7)) & 1);
}

bool BitTable::all_zero() const {
  for (u64 w : words_)
    if (w) return false;
  return true;
}

BitTable BitTable::rotated(u32 first) const {
  BitTable out(length_);
  for (u32 i = 0; i < length_; ++i) out.set(i, get((i + first) % length_));
  return out;
}

std::vector<u8> BitTable::packed() const {
  std::vector<u8> bytes((length_ + 7) / 8, 0);
  for (u32 i = 0; i < length_; ++i)
    if (get(i)) bytes[i >> 3] |= static_cast<u8>(1u << (i & 7));
  return bytes;
}

}  // namespace ansx
