#include "ansx/fec.hpp"
#include "ansx/prng.hpp"
#include "ansx/stream.hpp"

namespace ansx {

u64 bsc_corrupt_bits(std::span<u8> bytes, u64 bit_count, double pb, u64 seed) {
  require(pb >= 0.0 && pb < 0.5, Err::BadParameter,
          "bit-flip probability must lie in [0, 0.5)");
  require(bytes.size() * 8 >= bit_count, Err::BadParameter, "bit count exceeds the buffer");
  if (pb == 0.0) return 0;
  Splitmix rng(seed);
  u64 flips = 0;
  for (u64 i = 0; i < bit_count; ++i) {
    if (rng.next_bernoulli(pb)) {
      bytes[static_cast<size_t>(i >> 3)] ^= static_cast<u8>(1u << (i & 7));
      ++flips;
    }
  }
  return flips;
}

u64 corrupt_ansf(std::vector<u8>& container_bytes, double pb, u64 seed) {
  const ChannelRegion region = ansf_channel_region(container_bytes);
  std::span<u8> exposed(container_bytes.data() + region.begin, region.end - region.begin);
  return bsc_corrupt_bits(exposed, exposed.size() * 8, pb, seed);
}

AnsfContainer fec_encode(std::span<const u16> message, const SymbolModel& base, double pd,
                         const FecEncodeConfig& cfg) {
  require(pd > 0.0 && pd < 1.0, Err::BadParameter,
          "forbidden probability must lie in (0,1) for coding with detection");
  const FecModel fec = rescale_with_forbidden(base, pd, cfg.bit_table_len > 0);
  const CodecTables tables = cfg.init == TableInit::Scd
                                 ? CodecTables::build_scd(fec.coded, cfg.table_seed)
                                 : CodecTables::build_precise(fec.coded);

  for (u16 s : message)
    require(s < fec.allowed_n, Err::BadParameter, "message symbol outside the base alphabet");

  HardeningConfig h;
  h.masks = cfg.masks;
  if (cfg.bit_table_len > 0) h.initial_table = BitTable(cfg.bit_table_len);  // zeros by contract
  const EncodedMessage enc = encode_message(message, tables, h);

  AnsfContainer c;
  c.scd = cfg.init == TableInit::Scd;
  c.radix_bits = base.radix_bits();
  c.total = base.total();
  c.allowed_counts.assign(fec.coded.counts().begin(),
                          fec.coded.counts().begin() + fec.allowed_n);
  c.forbidden_count = fec.forbidden_count;
  c.seed = cfg.init == TableInit::Scd ? cfg.table_seed : 0;
  c.symbol_count = enc.symbol_count;
  c.final_state = enc.final_state;
  c.bit_table_len = static_cast<u16>(cfg.bit_table_len);
  c.masks = cfg.masks;
  c.bit_table = enc.final_bit_table;
  c.payload = enc.payload;
  return c;
}

}  // namespace ansx
