#include "ansx/tables.hpp"

#include <algorithm>
#include <ostream>
#include <queue>

#include "ansx/prng.hpp"

namespace ansx {

CodecTables::CodecTables(const SymbolModel& m, TableInit init, u64 seed)
    : model_(m), init_(init), seed_(seed) {
  const u32 n = m.alphabet_size();
  const u32 b = m.base();
  const u32 l = m.total();
  const size_t slots = static_cast<size_t>(b - 1) * l;

  decode_.resize(slots);
  encode_.resize(slots);
  encode_start_.resize(n);
  k_.resize(n);
  boundary_.resize(n);

  i64 prefix = 0;
  for (u32 s = 0; s < n; ++s) {
    encode_start_[s] = static_cast<i64>(b - 1) * prefix - static_cast<i64>(m.count(s));
    prefix += m.count(s);

    // smallest k with count(s)*b^k >= l; X_s = count(s)*b^k then lies in [l, b*l)
    u32 k = 0;
    u64 x = m.count(s);
    while (x < l) {
      x *= b;
      ++k;
    }
    k_[s] = k;
    boundary_[s] = static_cast<u32>(x);
  }
}

void CodecTables::assign(u32 x, u32 s, std::vector<u32>& fill_counter) {
  const u32 xs = fill_counter[s]++;
  decode_[x - state_begin()] = {static_cast<u16>(s), xs};
  encode_[static_cast<size_t>(encode_start_[s] + xs)] = x;
}

CodecTables CodecTables::build_precise(const SymbolModel& m) {
  CodecTables t(m, TableInit::Precise, 0);
  const u32 n = m.alphabet_size();

  // Entry step/q_s = step*l/count(s); cross-multiplied comparison keeps the
  // order exact (step <= b*l and counts < 2^31 keep products in 64 bits).
  struct Entry {
    u64 step;
    u32 symbol;
  };
  const std::vector<u32>& counts = m.counts();
  auto later = [&counts](const Entry& a, const Entry& b) {
    const u64 ka = a.step * counts[b.symbol];
    const u64 kb = b.step * counts[a.symbol];
    if (ka != kb) return ka > kb;
    return a.symbol > b.symbol;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(later)> queue(later);
  for (u32 s = 0; s < n; ++s) queue.push({1, s});

  std::vector<u32> fill(counts.begin(), counts.end());
  const u64 end = t.state_end();
  for (u64 x = t.state_begin(); x < end; ++x) {
    Entry e = queue.top();
    queue.pop();
    queue.push({e.step + 1, e.symbol});
    t.assign(static_cast<u32>(x), e.symbol, fill);
  }
  return t;
}

CodecTables CodecTables::build_scd(const SymbolModel& m, u64 seed) {
  CodecTables t(m, TableInit::Scd, seed);
  const u32 n = m.alphabet_size();
  const u32 b = m.base();

  std::vector<u16> symbols;
  symbols.reserve(static_cast<size_t>(b - 1) * m.total());
  for (u32 s = 0; s < n; ++s)
    symbols.insert(symbols.end(), static_cast<size_t>(b - 1) * m.count(s),
                   static_cast<u16>(s));

  Splitmix rng(seed);
  std::vector<u32> fill(m.counts().begin(), m.counts().end());
  u64 remaining = symbols.size();
  const u64 end = t.state_end();
  for (u64 x = t.state_begin(); x < end; ++x) {
    const u64 idx = rng.next_index(remaining) - 1;
    const u16 s = symbols[idx];
    symbols[idx] = symbols[remaining - 1];
    --remaining;
    t.assign(static_cast<u32>(x), s, fill);
  }
  return t;
}

void CodecTables::dump(std::ostream& os) const {
  auto put16 = [&os](u16 v) {
    const u8 raw[2] = {static_cast<u8>(v), static_cast<u8>(v >> 8)};
    os.write(reinterpret_cast<const char*>(raw), 2);
  };
  auto put32 = [&os](u32 v) {
    const u8 raw[4] = {static_cast<u8>(v), static_cast<u8>(v >> 8), static_cast<u8>(v >> 16),
                       static_cast<u8>(v >> 24)};
    os.write(reinterpret_cast<const char*>(raw), 4);
  };
  put32(model_.base());
  put32(model_.total());
  put16(static_cast<u16>(model_.alphabet_size()));
  for (u32 c : model_.counts()) put32(c);
  for (const DecodeEntry& e : decode_) {
    put16(e.symbol);
    put32(e.next);
  }
}

}  // namespace ansx
