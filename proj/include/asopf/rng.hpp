#pragma once

#include <cstdint>
#include <string_view>

namespace asopf {

/// Counter-based deterministic random stream (SplitMix64 core).
///
/// A stream is identified by (root seed, substream name, index). Streams with
/// distinct identities are statistically independent, and a stream's output
/// depends only on its identity and the number of values drawn, never on other
/// streams or on thread scheduling. Dataset generation keys one stream per
/// sample index, which makes parallel generation bitwise reproducible.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::string_view substream, std::uint64_t index = 0);

  std::uint64_t next_u64();

  /// Uniform draw in (0, 1] (never returns 0, safe for log()).
  double next_unit();

  /// Standard normal draw (Box-Muller; pairs are cached per stream).
  double next_normal();

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// FNV-1a 64-bit hash, used for substream naming and dictionary binding.
std::uint64_t fnv1a(std::string_view bytes);
std::uint64_t fnv1a_u64(std::uint64_t value, std::uint64_t basis);

}  // namespace asopf
