#pragma once

#include <span>
#include <vector>

#include "ansx/stream.hpp"
#include "ansx/tables.hpp"

namespace ansx {

// "ANS1", little-endian:
//   magic 'A','N','S','1' | u8 version=1 | u8 flags | u8 r (base=2^r) |
//   u32 l | u16 n | n x u32 counts | u64 seed (0 if precise) |
//   u64 symbol_count | u32 final_state |
//   [flags bit1: u32 mask_count, mask_count x u32 masks] |
//   [flags bit2: u16 table_len, ceil(len/8) bytes, rotated] |
//   u64 payload_bit_length | payload bytes.
// flags: bit0 = shuffled (ScD) tables, bit1 = mask list, bit2 = bit table.
//
// "ANSF" replaces the trailing plain fields with a 5x-repetition protected
// block so the decoder can trust them on a noisy channel:
//   magic 'A','N','S','F' | u8 version | u8 flags | u8 r | u32 l | u16 n |
//   n x u32 counts (allowed symbols; the forbidden symbol is appended as
//   index n with count l_f) | u64 seed | u64 symbol_count | u32 l_f |
//   u16 table_len | [masks as above] |
//   5 x { u32 final_state | u64 payload_bit_length | table bytes } |
//   payload bytes.

inline constexpr u8 kContainerVersion = 1;
inline constexpr u8 kFlagScd = 1u << 0;
inline constexpr u8 kFlagMasks = 1u << 1;
inline constexpr u8 kFlagBitTable = 1u << 2;
inline constexpr u32 kHeaderRepetition = 5;

struct Ans1Container {
  bool scd = false;
  u32 radix_bits = 1;
  u32 total = 0;
  std::vector<u32> counts;
  u64 seed = 0;
  u64 symbol_count = 0;
  u32 final_state = 0;
  MaskList masks;
  BitTable bit_table;  // encoder's final table, rotated
  DigitBuffer payload;

  SymbolModel model() const;
  CodecTables build_tables() const;
};

std::vector<u8> write_ans1(const Ans1Container& c);
Ans1Container read_ans1(std::span<const u8> bytes);

// Throws ModelMismatch when the container was produced with different tables.
void verify_tables_match(const Ans1Container& c, const CodecTables& t);

struct AnsfContainer {
  bool scd = true;
  u32 radix_bits = 1;
  u32 total = 0;
  std::vector<u32> allowed_counts;
  u32 forbidden_count = 0;  // l_f; probability of detection per step = l_f/l
  u64 seed = 0;
  u64 symbol_count = 0;
  u32 final_state = 0;
  u16 bit_table_len = 0;
  MaskList masks;
  BitTable bit_table;
  DigitBuffer payload;

  double pd() const { return static_cast<double>(forbidden_count) / total; }
  SymbolModel coded_model() const;  // allowed counts plus the forbidden symbol
  u32 forbidden_symbol() const { return static_cast<u32>(allowed_counts.size()); }
  CodecTables build_tables() const;
};

std::vector<u8> write_ansf(const AnsfContainer& c);
AnsfContainer read_ansf(std::span<const u8> bytes);  // majority-decodes the protected block

// Byte ranges of the channel-exposed portion (protected block + payload),
// for channel simulation on a serialized container.
struct ChannelRegion {
  size_t begin = 0;  // first exposed byte
  size_t end = 0;    // one past the last
};
ChannelRegion ansf_channel_region(std::span<const u8> bytes);

}  // namespace ansx
