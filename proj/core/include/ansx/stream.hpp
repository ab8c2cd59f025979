#pragma once

#include <optional>
#include <span>
#include <vector>

#include "ansx/digits.hpp"
#include "ansx/hardening.hpp"
#include "ansx/tables.hpp"

namespace ansx {

// Stream coding conventions:
//  - Encoding consumes the message in reverse symbol order, starting from the
//    fixed state x = l, and emits renormalization digits least-significant
//    first. finish() reverses the whole digit sequence once.
//  - Decoding therefore starts at the encoder's final state, reads digits
//    front to back (most significant of each step's block first, matching
//    x_s <- x_s*b + d), and yields the message in forward order.
//  - A step transfers digits_per_step(s) digits, one fewer when the state is
//    below renorm_boundary(s).
// Masks XOR the transferred digit block once per step; the bit-table
// extension swaps the youngest state bit with a cyclic table entry between
// renormalization and the table lookup.

// Raw single steps without hardening.
void encode_symbol(u32& x, u32 s, const CodecTables& t, DigitBuffer& out);
u32 decode_symbol(u32& x, const CodecTables& t, DigitReader& in);

struct EncodedMessage {
  u32 final_state = 0;
  u64 symbol_count = 0;
  DigitBuffer payload;       // already reversed: decoder reads front to back
  BitTable final_bit_table;  // rotated so decoding starts at position 0; empty if unused
};

class StreamEncoder {
public:
  explicit StreamEncoder(const CodecTables& t, HardeningConfig h = {});

  void put(u32 symbol);  // one coding step
  u32 state() const { return x_; }

  EncodedMessage finish();

private:
  const CodecTables* tables_;
  HardeningConfig hardening_;
  DigitBuffer out_;
  u32 x_;
  u32 mask_idx_ = 0;
  BitTable bt_;
  u32 bt_pos_ = 0;
  u64 steps_ = 0;
};

class StreamDecoder {
public:
  StreamDecoder(const CodecTables& t, u32 final_state, u64 symbol_count,
                const DigitBuffer& payload, const MaskList* masks = nullptr,
                const BitTable* final_table = nullptr);

  u32 get();  // next symbol in forward order
  u32 state() const { return x_; }
  u64 decoded() const { return done_; }
  u64 symbol_count() const { return count_; }

  // After all symbols: the terminal state must equal l, every digit must be
  // consumed, and (with the extension) the reconstructed initial bit table
  // must match `expected_initial` (all zeros when null).
  void verify_end(const BitTable* expected_initial = nullptr) const;

private:
  const CodecTables* tables_;
  const MaskList* masks_;
  DigitReader in_;
  u32 x_;
  u64 count_;
  u64 done_ = 0;
  u32 mask_idx_ = 0;
  BitTable bt_;
  u32 bt_pos_ = 0;
};

// Whole-message helpers. encode_message consumes `symbols` in reverse order;
// decode_message returns them forward and runs verify_end.
EncodedMessage encode_message(std::span<const u16> symbols, const CodecTables& t,
                              const HardeningConfig& h = {});
std::vector<u16> decode_message(const EncodedMessage& msg, const CodecTables& t,
                                const MaskList* masks = nullptr,
                                const BitTable* expected_initial = nullptr);

}  // namespace ansx
