#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>

namespace semiarray {

// Row/column keys are opaque totally ordered tokens: either an integer or a
// string. Integers order before strings; integers order numerically. The
// ordering fixes iteration order everywhere, which is what makes partitioned
// and replayed runs byte-identical.
using Key = std::variant<std::int64_t, std::string>;
using KeyPair = std::pair<Key, Key>;

std::string key_to_string(const Key& k);

// A token parses as an integer key iff it is a canonical nonnegative decimal
// ("0" or no leading zero), so key_to_string(parse_key(t)) == t always holds.
Key parse_key(const std::string& token);

std::uint64_t stable_hash(std::uint64_t seed, const Key& k1, const Key& k2);

}  // namespace semiarray
