#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cem/md5.hpp"
#include "cem/utf8.hpp"

namespace cem {

// Rolling-hash and window parameters for job-description fingerprinting.
// The defaults are the production values; smaller moduli give weak 3-digit
// hashes but larger ones are available for users needing fewer collisions.
struct WinnowParams {
  uint32_t kgram_len = 4;
  uint32_t window_len = 5;
  uint64_t base = 10;
  uint64_t modulo = 1000;

  void validate() const {
    if (kgram_len == 0 || window_len == 0 || base == 0 || modulo < 2) {
      throw std::invalid_argument(
          "WinnowParams: kgram_len, window_len, base must be positive and "
          "modulo >= 2");
    }
  }
};

// 128-bit content digest of one job ad, as 32 lowercase hex characters.
struct JobFingerprint {
  std::string digest_hex;

  friend bool operator==(const JobFingerprint&, const JobFingerprint&) = default;
  friend auto operator<=>(const JobFingerprint&, const JobFingerprint&) = default;
};

struct SelectedHash {
  size_t position = 0;
  uint64_t hash = 0;

  friend bool operator==(const SelectedHash&, const SelectedHash&) = default;
};

// Lowercases and strips everything that is not a letter or digit, preserving
// order. Operates on code points: ASCII alphanumerics are kept (letters
// lowercased), ASCII punctuation and whitespace dropped, and code points
// >= U+0080 pass through unchanged.
inline std::string clean_text(std::string_view description) {
  const auto cps = detail::decode_utf8(description);
  std::string out;
  out.reserve(description.size());
  for (uint32_t cp : cps) {
    if (cp >= 'A' && cp <= 'Z') {
      out.push_back(static_cast<char>(cp - 'A' + 'a'));
    } else if ((cp >= 'a' && cp <= 'z') || (cp >= '0' && cp <= '9')) {
      out.push_back(static_cast<char>(cp));
    } else if (cp >= 0x80) {
      detail::append_utf8(out, cp);
    }
  }
  return out;
}

namespace detail {

inline uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>(
      static_cast<unsigned __int128>(a) * b % m);
}

// a must already be < m; safe for m up to 2^64-1
inline uint64_t addmod(uint64_t a, uint64_t b, uint64_t m) {
  b %= m;
  const uint64_t space = m - a;
  return b >= space ? b - space : a + b;
}

inline uint64_t powmod(uint64_t base, uint64_t exp, uint64_t m) {
  uint64_t result = 1 % m;
  base %= m;
  while (exp != 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

}  // namespace detail

// Polynomial k-gram hashes over the cleaned text's code points:
//   hash_i = (sum_j cp[i+j] * base^(k-1-j)) mod modulo
// computed with a rolling update, linear in the text length. Texts shorter
// than kgram_len yield an empty sequence.
inline std::vector<uint64_t> kgram_hashes(std::string_view cleaned,
                                          const WinnowParams& p) {
  p.validate();
  const auto cps = detail::decode_utf8(cleaned);
  const size_t k = p.kgram_len;
  std::vector<uint64_t> hashes;
  if (cps.size() < k) return hashes;
  hashes.reserve(cps.size() - k + 1);

  const uint64_t m = p.modulo;
  const uint64_t top = detail::powmod(p.base, k - 1, m);
  uint64_t h = 0;
  for (size_t j = 0; j < k; ++j) {
    h = detail::addmod(detail::mulmod(h, p.base, m), cps[j], m);
  }
  hashes.push_back(h);
  for (size_t i = k; i < cps.size(); ++i) {
    const uint64_t out_term = detail::mulmod(cps[i - k] % m, top, m);
    h = h >= out_term ? h - out_term : h + (m - out_term);  // submod
    h = detail::addmod(detail::mulmod(h, p.base, m), cps[i], m);
    hashes.push_back(h);
  }
  return hashes;
}

// Window-minimum selection: each window of window_len consecutive hashes
// contributes its minimum, ties broken by rightmost position, a position
// recorded once even when it is the minimum of several windows. A non-empty
// sequence shorter than the window selects its single global minimum.
inline std::vector<SelectedHash> winnow(const std::vector<uint64_t>& seq,
                                        size_t window_len) {
  if (window_len == 0) {
    throw std::invalid_argument("winnow: window_len must be >= 1");
  }
  std::vector<SelectedHash> out;
  if (seq.empty()) return out;
  if (seq.size() < window_len) {
    size_t best = 0;
    for (size_t i = 1; i < seq.size(); ++i) {
      if (seq[i] <= seq[best]) best = i;
    }
    out.push_back({best, seq[best]});
    return out;
  }
  size_t last = static_cast<size_t>(-1);
  for (size_t start = 0; start + window_len <= seq.size(); ++start) {
    size_t best = start;
    for (size_t i = start + 1; i < start + window_len; ++i) {
      if (seq[i] <= seq[best]) best = i;
    }
    if (best != last) {
      out.push_back({best, seq[best]});
      last = best;
    }
  }
  return out;
}

// Selected hash values (positions dropped) rendered as decimal, joined by
// commas and MD5-hashed. An empty selection digests the empty byte string.
inline JobFingerprint digest(const std::vector<SelectedHash>& selected) {
  std::string joined;
  joined.reserve(selected.size() * 4);
  for (size_t i = 0; i < selected.size(); ++i) {
    if (i != 0) joined.push_back(',');
    joined += std::to_string(selected[i].hash);
  }
  return JobFingerprint{md5_hex(joined)};
}

inline JobFingerprint fingerprint_job(std::string_view description,
                                      const WinnowParams& p = {}) {
  return digest(winnow(kgram_hashes(clean_text(description), p), p.window_len));
}

}  // namespace cem
