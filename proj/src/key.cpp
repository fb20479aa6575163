#include "semiarray/key.hpp"

#include <cstring>

namespace semiarray {

std::string key_to_string(const Key& k) {
  if (std::holds_alternative<std::int64_t>(k)) {
    return std::to_string(std::get<std::int64_t>(k));
  }
  return std::get<std::string>(k);
}

Key parse_key(const std::string& token) {
  if (token.empty() || token.size() > 18) return Key{token};
  if (token.size() > 1 && token[0] == '0') return Key{token};
  for (char c : token) {
    if (c < '0' || c > '9') return Key{token};
  }
  return Key{static_cast<std::int64_t>(std::stoll(token))};
}

namespace {

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

void fnv_bytes(std::uint64_t& h, const void* data, std::size_t n) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= kFnvPrime;
  }
}

void fnv_u64(std::uint64_t& h, std::uint64_t v) {
  unsigned char buf[8];
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<unsigned char>(v >> (8 * i));
  fnv_bytes(h, buf, 8);
}

void fnv_key(std::uint64_t& h, const Key& k) {
  if (std::holds_alternative<std::int64_t>(k)) {
    fnv_bytes(h, "i", 1);
    fnv_u64(h, static_cast<std::uint64_t>(std::get<std::int64_t>(k)));
  } else {
    const std::string& s = std::get<std::string>(k);
    fnv_bytes(h, "s", 1);
    fnv_u64(h, s.size());
    fnv_bytes(h, s.data(), s.size());
  }
}

}  // namespace

std::uint64_t stable_hash(std::uint64_t seed, const Key& k1, const Key& k2) {
  std::uint64_t h = kFnvOffset;
  fnv_u64(h, seed);
  fnv_key(h, k1);
  fnv_key(h, k2);
  return h;
}

}  // namespace semiarray
