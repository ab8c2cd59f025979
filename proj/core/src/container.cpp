#include "ansx/container.hpp"

#include <algorithm>

#include "ansx/binary_io.hpp"

namespace ansx {

namespace {

constexpr u8 kMagic1[4] = {'A', 'N', 'S', '1'};
constexpr u8 kMagicF[4] = {'A', 'N', 'S', 'F'};

void write_magic(ByteWriter& w, const u8 (&magic)[4]) {
  w.put_bytes(std::span<const u8>(magic, 4));
}

void read_magic(ByteReader& r, const u8 (&magic)[4], const char* what) {
  const std::span<const u8> got = r.get_bytes(4);
  require(std::equal(got.begin(), got.end(), magic), Err::BadMagic, what);
}

void write_model_fields(ByteWriter& w, u8 flags, u32 radix_bits, u32 total,
                        std::span<const u32> counts, u64 seed, u64 symbol_count) {
  w.put_u8(kContainerVersion);
  w.put_u8(flags);
  w.put_u8(static_cast<u8>(radix_bits));
  w.put_u32(total);
  w.put_u16(static_cast<u16>(counts.size()));
  for (u32 c : counts) w.put_u32(c);
  w.put_u64(seed);
  w.put_u64(symbol_count);
}

void write_masks(ByteWriter& w, const MaskList& masks) {
  w.put_u32(masks.size());
  for (u32 m : masks.masks) w.put_u32(m);
}

MaskList read_masks(ByteReader& r) {
  MaskList masks;
  const u32 count = r.get_u32();
  require(count >= 1 && count <= (1u << 24), Err::BadMagic, "implausible mask count");
  masks.masks.reserve(count);
  for (u32 i = 0; i < count; ++i) masks.masks.push_back(r.get_u32());
  return masks;
}

DigitBuffer read_payload(ByteReader& r, u32 radix_bits, u64 payload_bits) {
  require(payload_bits % radix_bits == 0, Err::BadMagic,
          "payload bit length is not a whole number of digits");
  const size_t nbytes = static_cast<size_t>((payload_bits + 7) / 8);
  return DigitBuffer::from_bytes(radix_bits, r.get_bytes(nbytes), payload_bits / radix_bits);
}

}  // namespace

SymbolModel Ans1Container::model() const {
  return SymbolModel(1u << radix_bits, total, counts);
}

CodecTables Ans1Container::build_tables() const {
  const SymbolModel m = model();
  return scd ? CodecTables::build_scd(m, seed) : CodecTables::build_precise(m);
}

std::vector<u8> write_ans1(const Ans1Container& c) {
  ByteWriter w;
  write_magic(w, kMagic1);
  u8 flags = 0;
  if (c.scd) flags |= kFlagScd;
  if (!c.masks.empty()) flags |= kFlagMasks;
  if (!c.bit_table.empty()) flags |= kFlagBitTable;
  write_model_fields(w, flags, c.radix_bits, c.total, c.counts, c.seed, c.symbol_count);
  w.put_u32(c.final_state);
  if (!c.masks.empty()) write_masks(w, c.masks);
  if (!c.bit_table.empty()) {
    w.put_u16(static_cast<u16>(c.bit_table.length()));
    const std::vector<u8> packed = c.bit_table.packed();
    w.put_bytes(packed);
  }
  w.put_u64(c.payload.bit_size());
  w.put_bytes(c.payload.bytes());
  return w.take();
}

Ans1Container read_ans1(std::span<const u8> bytes) {
  ByteReader r(bytes);
  read_magic(r, kMagic1, "not an ANS1 container");
  Ans1Container c;
  require(r.get_u8() == kContainerVersion, Err::BadMagic, "unsupported container version");
  const u8 flags = r.get_u8();
  c.scd = flags & kFlagScd;
  c.radix_bits = r.get_u8();
  require(c.radix_bits >= 1 && c.radix_bits <= 16, Err::BadMagic, "implausible digit width");
  c.total = r.get_u32();
  const u16 n = r.get_u16();
  require(n >= 1, Err::BadMagic, "empty alphabet");
  c.counts.reserve(n);
  for (u16 s = 0; s < n; ++s) c.counts.push_back(r.get_u32());
  c.seed = r.get_u64();
  c.symbol_count = r.get_u64();
  c.final_state = r.get_u32();
  if (flags & kFlagMasks) c.masks = read_masks(r);
  if (flags & kFlagBitTable) {
    const u16 len = r.get_u16();
    require(len >= 1, Err::BadMagic, "empty bit table");
    c.bit_table = BitTable(len, r.get_bytes((len + 7) / 8));
  }
  const u64 payload_bits = r.get_u64();
  c.payload = read_payload(r, c.radix_bits, payload_bits);
  return c;
}

void verify_tables_match(const Ans1Container& c, const CodecTables& t) {
  const SymbolModel& m = t.model();
  const bool same_model = m.radix_bits() == c.radix_bits && m.total() == c.total &&
                          m.counts() == c.counts;
  const bool same_init = c.scd == (t.init() == TableInit::Scd) &&
                         (!c.scd || c.seed == t.seed());
  require(same_model && same_init, Err::ModelMismatch,
          "container was produced with different coding tables");
}

SymbolModel AnsfContainer::coded_model() const {
  std::vector<u32> counts = allowed_counts;
  if (forbidden_count > 0) counts.push_back(forbidden_count);
  return SymbolModel(1u << radix_bits, total, counts);
}

CodecTables AnsfContainer::build_tables() const {
  const SymbolModel m = coded_model();
  return scd ? CodecTables::build_scd(m, seed) : CodecTables::build_precise(m);
}

std::vector<u8> write_ansf(const AnsfContainer& c) {
  ByteWriter w;
  write_magic(w, kMagicF);
  u8 flags = 0;
  if (c.scd) flags |= kFlagScd;
  if (!c.masks.empty()) flags |= kFlagMasks;
  if (c.bit_table_len > 0) flags |= kFlagBitTable;
  write_model_fields(w, flags, c.radix_bits, c.total, c.allowed_counts, c.seed, c.symbol_count);
  w.put_u32(c.forbidden_count);
  w.put_u16(c.bit_table_len);
  if (!c.masks.empty()) write_masks(w, c.masks);

  ByteWriter prot;
  prot.put_u32(c.final_state);
  prot.put_u64(c.payload.bit_size());
  if (c.bit_table_len > 0) {
    require(c.bit_table.length() == c.bit_table_len, Err::BadParameter,
            "bit table length is inconsistent");
    prot.put_bytes(c.bit_table.packed());
  }
  for (u32 i = 0; i < kHeaderRepetition; ++i) w.put_bytes(prot.bytes());

  w.put_bytes(c.payload.bytes());
  return w.take();
}

namespace {

// Cleartext prefix length (everything before the protected block).
size_t ansf_prefix_and_fields(std::span<const u8> bytes, AnsfContainer& c, size_t& prot_len) {
  ByteReader r(bytes);
  read_magic(r, kMagicF, "not an ANSF container");
  require(r.get_u8() == kContainerVersion, Err::BadMagic, "unsupported container version");
  const u8 flags = r.get_u8();
  c.scd = flags & kFlagScd;
  c.radix_bits = r.get_u8();
  require(c.radix_bits >= 1 && c.radix_bits <= 16, Err::BadMagic, "implausible digit width");
  c.total = r.get_u32();
  const u16 n = r.get_u16();
  require(n >= 1, Err::BadMagic, "empty alphabet");
  c.allowed_counts.clear();
  c.allowed_counts.reserve(n);
  for (u16 s = 0; s < n; ++s) c.allowed_counts.push_back(r.get_u32());
  c.seed = r.get_u64();
  c.symbol_count = r.get_u64();
  c.forbidden_count = r.get_u32();
  c.bit_table_len = r.get_u16();
  if (flags & kFlagMasks) c.masks = read_masks(r);
  prot_len = 4 + 8 + (c.bit_table_len > 0 ? (c.bit_table_len + 7) / 8 : 0);
  return r.pos();
}

}  // namespace

AnsfContainer read_ansf(std::span<const u8> bytes) {
  AnsfContainer c;
  size_t prot_len = 0;
  const size_t prefix = ansf_prefix_and_fields(bytes, c, prot_len);

  require(bytes.size() >= prefix + kHeaderRepetition * prot_len, Err::HeaderCorrupt,
          "protected header block truncated");
  std::vector<u8> prot(prot_len, 0);
  for (size_t i = 0; i < prot_len; ++i) {
    // bitwise majority over the repetition copies
    u8 out = 0;
    for (u32 bit = 0; bit < 8; ++bit) {
      u32 votes = 0;
      for (u32 rep = 0; rep < kHeaderRepetition; ++rep)
        votes += (bytes[prefix + rep * prot_len + i] >> bit) & 1;
      if (votes * 2 > kHeaderRepetition) out |= static_cast<u8>(1u << bit);
    }
    prot[i] = out;
  }
  ByteReader pr(prot);
  c.final_state = pr.get_u32();
  const u64 payload_bits = pr.get_u64();
  if (c.bit_table_len > 0)
    c.bit_table = BitTable(c.bit_table_len, pr.get_bytes((c.bit_table_len + 7) / 8));

  ByteReader rest(bytes.subspan(prefix + kHeaderRepetition * prot_len));
  require(payload_bits % c.radix_bits == 0 &&
              rest.remaining() >= static_cast<size_t>((payload_bits + 7) / 8),
          Err::HeaderCorrupt, "payload length inconsistent with the container size");
  c.payload = read_payload(rest, c.radix_bits, payload_bits);
  return c;
}

ChannelRegion ansf_channel_region(std::span<const u8> bytes) {
  AnsfContainer c;
  size_t prot_len = 0;
  const size_t prefix = ansf_prefix_and_fields(bytes, c, prot_len);
  return {prefix, bytes.size()};
}

}  // namespace ansx
