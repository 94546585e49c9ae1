#include "asopf/rng.hpp"

#include <cmath>
#include <numbers>

namespace asopf {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += kGolden);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t fnv1a_u64(std::uint64_t value, std::uint64_t basis) {
  std::uint64_t h = basis;
  for (int i = 0; i < 8; ++i) {
    h ^= (value >> (8 * i)) & 0xffULL;
    h *= 0x100000001b3ULL;
  }
  return h;
}

RngStream::RngStream(std::uint64_t seed, std::string_view substream, std::uint64_t index) {
  // Mix the three identity components so that nearby seeds/indices yield
  // unrelated streams.
  std::uint64_t s = seed;
  std::uint64_t a = splitmix64(s);
  std::uint64_t key = a ^ fnv1a(substream);
  key = fnv1a_u64(index, key);
  state_ = key;
  // Warm up once so the first output is already well mixed.
  (void)splitmix64(state_);
}

std::uint64_t RngStream::next_u64() { return splitmix64(state_); }

double RngStream::next_unit() {
  // 53 random bits; shifted into (0, 1] by adding one ulp step.
  const std::uint64_t bits = next_u64() >> 11;
  return (static_cast<double>(bits) + 1.0) * 0x1.0p-53;
}

double RngStream::next_normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = next_unit();
  const double u2 = next_unit();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

}  // namespace asopf
