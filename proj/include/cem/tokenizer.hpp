#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "cem/names.hpp"
#include "cem/utf8.hpp"

namespace cem {

// Character n-grams with n in [1,3] over the name key: for each character
// position the 1-, 2- and 3-gram starting there, when they fit. Position-
// major, n ascending; "abc" -> a, ab, abc, b, bc, c. Characters are code
// points, so multi-byte names tokenize by character rather than by byte.
inline std::vector<std::string> tokenize(const NormalizedName& name) {
  if (name.key.empty()) {
    throw std::invalid_argument("tokenize: empty name key");
  }
  const auto cps = detail::decode_utf8(name.key);
  std::vector<std::string> tokens;
  const size_t len = cps.size();
  tokens.reserve(3 * len);
  for (size_t i = 0; i < len; ++i) {
    std::string gram;
    for (size_t n = 1; n <= 3 && i + n <= len; ++n) {
      detail::append_utf8(gram, cps[i + n - 1]);
      tokens.push_back(gram);
    }
  }
  return tokens;
}

// 64-bit FNV-1a over the token's UTF-8 bytes, reduced mod the bucket count.
// Stable across runs and platforms; collisions are accepted (hashing-trick
// semantics).
inline uint32_t hash_token(const std::string& token, uint32_t bucket_count) {
  if (bucket_count == 0) {
    throw std::invalid_argument("hash_token: bucket count must be >= 1");
  }
  uint64_t h = 14695981039346656037ull;
  for (char c : token) {
    h ^= static_cast<uint8_t>(c);
    h *= 1099511628211ull;
  }
  return static_cast<uint32_t>(h % bucket_count);
}

inline std::vector<uint32_t> token_buckets(const NormalizedName& name,
                                           uint32_t bucket_count) {
  const auto tokens = tokenize(name);
  std::vector<uint32_t> buckets;
  buckets.reserve(tokens.size());
  for (const auto& t : tokens) buckets.push_back(hash_token(t, bucket_count));
  return buckets;
}

}  // namespace cem
