#include "ansx/stream.hpp"

namespace ansx {

namespace {

inline u32 low_bits_mask(u32 bits) {
  return bits >= 32 ? 0xFFFFFFFFu : ((1u << bits) - 1);
}

// digits to pull so that xs*b^t reaches I
inline u32 renorm_pull_count(u32 xs, u32 l, u32 radix_bits) {
  u32 t = 0;
  u64 v = xs;
  while (v < l) {
    v <<= radix_bits;
    ++t;
  }
  return t;
}

}  // namespace

void encode_symbol(u32& x, u32 s, const CodecTables& t, DigitBuffer& out) {
  const u32 r = t.model().radix_bits();
  const u32 digits = t.digits_per_step(s) - (x < t.renorm_boundary(s) ? 1u : 0u);
  for (u32 i = 0; i < digits; ++i) {
    out.push(x & (t.model().base() - 1));
    x >>= r;
  }
  x = t.encode_entry(s, x);
}

u32 decode_symbol(u32& x, const CodecTables& t, DigitReader& in) {
  const DecodeEntry e = t.decode_entry(x);
  const u32 r = t.model().radix_bits();
  u64 xs = e.next;
  while (xs < t.state_begin()) xs = (xs << r) | in.pull();
  x = static_cast<u32>(xs);
  return e.symbol;
}

StreamEncoder::StreamEncoder(const CodecTables& t, HardeningConfig h)
    : tables_(&t),
      hardening_(std::move(h)),
      out_(t.model().radix_bits()),
      x_(t.state_begin()),
      bt_(hardening_.initial_table) {
  if (!bt_.empty()) {
    for (u32 c : t.model().counts())
      require(c % 2 == 0, Err::OddCounts,
              "bit-table extension requires every symbol count to be even");
  }
}

void StreamEncoder::put(u32 symbol) {
  const CodecTables& t = *tables_;
  require(symbol < t.model().alphabet_size(), Err::BadParameter, "symbol outside the alphabet");
  const u32 r = t.model().radix_bits();
  const u32 digits = t.digits_per_step(symbol) - (x_ < t.renorm_boundary(symbol) ? 1u : 0u);
  if (digits > 0) {
    const u32 width = digits * r;
    u32 block = x_ & low_bits_mask(width);
    if (!hardening_.masks.empty())
      block ^= hardening_.masks.masks[mask_idx_] & low_bits_mask(width);
    for (u32 i = 0; i < digits; ++i) {
      out_.push(block & (t.model().base() - 1));
      block >>= r;
    }
    x_ = width >= 32 ? 0 : (x_ >> width);
  }
  if (!hardening_.masks.empty()) mask_idx_ = (mask_idx_ + 1) % hardening_.masks.size();
  if (!bt_.empty()) {
    const bool state_bit = x_ & 1;
    const bool table_bit = bt_.get(bt_pos_);
    bt_.set(bt_pos_, state_bit);
    x_ = (x_ & ~1u) | (table_bit ? 1u : 0u);
    bt_pos_ = (bt_pos_ + 1) % bt_.length();
  }
  x_ = t.encode_entry(symbol, x_);
  ++steps_;
}

EncodedMessage StreamEncoder::finish() {
  EncodedMessage msg;
  msg.final_state = x_;
  msg.symbol_count = steps_;
  msg.payload = out_.reversed();
  if (!bt_.empty()) msg.final_bit_table = bt_.rotated(bt_pos_ % bt_.length());
  return msg;
}

StreamDecoder::StreamDecoder(const CodecTables& t, u32 final_state, u64 symbol_count,
                             const DigitBuffer& payload, const MaskList* masks,
                             const BitTable* final_table)
    : tables_(&t),
      masks_(masks && !masks->empty() ? masks : nullptr),
      in_(payload),
      x_(final_state),
      count_(symbol_count) {
  require(payload.radix_bits() == t.model().radix_bits(), Err::BadParameter,
          "payload digit width does not match the model base");
  require(final_state >= t.state_begin() && final_state < t.state_end(),
          Err::TerminalStateMismatch, "stored final state outside the working interval");
  if (masks_) mask_idx_ = static_cast<u32>((symbol_count + masks_->size() - 1) % masks_->size());
  if (final_table && !final_table->empty()) {
    bt_ = *final_table;
    for (u32 c : t.model().counts())
      require(c % 2 == 0, Err::OddCounts,
              "bit-table extension requires every symbol count to be even");
  }
}

u32 StreamDecoder::get() {
  require(done_ < count_, Err::BadParameter, "message already fully decoded");
  const CodecTables& t = *tables_;
  const u32 r = t.model().radix_bits();

  const DecodeEntry e = t.decode_entry(x_);
  u32 xs = e.next;
  if (!bt_.empty()) {
    bt_pos_ = (bt_pos_ + bt_.length() - 1) % bt_.length();
    const bool state_bit = xs & 1;
    const bool table_bit = bt_.get(bt_pos_);
    bt_.set(bt_pos_, state_bit);
    xs = (xs & ~1u) | (table_bit ? 1u : 0u);
  }
  const u32 digits = renorm_pull_count(xs, t.state_begin(), r);
  if (digits > 0) {
    u32 block = 0;
    for (u32 i = 0; i < digits; ++i) block = (block << r) | in_.pull();
    if (masks_) block ^= (*masks_).masks[mask_idx_] & low_bits_mask(digits * r);
    x_ = static_cast<u32>((static_cast<u64>(xs) << (digits * r)) | block);
  } else {
    x_ = xs;
  }
  if (masks_) mask_idx_ = (mask_idx_ + masks_->size() - 1) % masks_->size();
  ++done_;
  return e.symbol;
}

void StreamDecoder::verify_end(const BitTable* expected_initial) const {
  require(done_ == count_, Err::BadParameter, "message not fully decoded yet");
  require(in_.remaining() == 0, Err::TerminalStateMismatch,
          "payload digits left over after the last symbol");
  require(x_ == tables_->state_begin(), Err::TerminalStateMismatch,
          "terminal state does not match the encoder's initial state");
  if (!bt_.empty()) {
    // The table arrived rotated by the encoder's final position; undoing the
    // decoder's walk leaves the initial content rotated by count_ entries.
    const u32 T = bt_.length();
    const u32 shift = static_cast<u32>(count_ % T);
    for (u32 i = 0; i < T; ++i) {
      const bool expect = expected_initial && !expected_initial->empty()
                              ? expected_initial->get(i)
                              : false;
      require(bt_.get((i + T - shift) % T) == expect, Err::TerminalStateMismatch,
              "reconstructed bit table does not match the encoder's initial table");
    }
  }
}

EncodedMessage encode_message(std::span<const u16> symbols, const CodecTables& t,
                              const HardeningConfig& h) {
  StreamEncoder enc(t, h);
  for (size_t i = symbols.size(); i > 0; --i) enc.put(symbols[i - 1]);
  return enc.finish();
}

std::vector<u16> decode_message(const EncodedMessage& msg, const CodecTables& t,
                                const MaskList* masks, const BitTable* expected_initial) {
  StreamDecoder dec(t, msg.final_state, msg.symbol_count, msg.payload, masks,
                    msg.final_bit_table.empty() ? nullptr : &msg.final_bit_table);
  std::vector<u16> symbols;
  symbols.reserve(static_cast<size_t>(msg.symbol_count));
  for (u64 i = 0; i < msg.symbol_count; ++i) symbols.push_back(static_cast<u16>(dec.get()));
  dec.verify_end(expected_initial);
  return symbols;
}

}  // namespace ansx
