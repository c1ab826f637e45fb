#pragma once

// Straightforward non-rolling reference for the fingerprint pipeline, kept
// independent of the rolling-hash implementation it checks: per-window
// polynomial evaluation, brute-force window minima, comma-joined digest.

#include <algorithm>
#include <string>
#include <vector>

#include "cem/fingerprint.hpp"
#include "cem/md5.hpp"
#include "cem/rng.hpp"
#include "cem/utf8.hpp"

namespace cem_test {

inline std::vector<uint64_t> direct_kgram_hashes(const std::string& cleaned,
                                                 const cem::WinnowParams& p) {
  const auto cps = cem::detail::decode_utf8(cleaned);
  std::vector<uint64_t> hashes;
  if (cps.size() < p.kgram_len) return hashes;
  for (size_t i = 0; i + p.kgram_len <= cps.size(); ++i) {
    unsigned __int128 h = 0;
    for (size_t j = 0; j < p.kgram_len; ++j) {
      h = (h * p.base + cps[i + j]) % p.modulo;
    }
    hashes.push_back(static_cast<uint64_t>(h));
  }
  return hashes;
}

inline std::vector<cem::SelectedHash> direct_winnow(
    const std::vector<uint64_t>& seq, size_t w) {
  std::vector<cem::SelectedHash> out;
  if (seq.empty()) return out;
  const size_t windows = seq.size() < w ? 1 : seq.size() - w + 1;
  const size_t span = std::min(w, seq.size());
  size_t last = static_cast<size_t>(-1);
  for (size_t s = 0; s < windows; ++s) {
    size_t best = s;
    for (size_t i = s; i < s + span; ++i) {
      if (seq[i] <= seq[best]) best = i;
    }
    if (best != last) {
      out.push_back({best, seq[best]});
      last = best;
    }
  }
  return out;
}

inline cem::JobFingerprint direct_fingerprint(const std::string& description,
                                              const cem::WinnowParams& p) {
  const auto selected = direct_winnow(
      direct_kgram_hashes(cem::clean_text(description), p), p.window_len);
  std::string joined;
  for (size_t i = 0; i < selected.size(); ++i) {
    if (i != 0) joined += ",";
    joined += std::to_string(selected[i].hash);
  }
  return cem::JobFingerprint{cem::md5_hex(joined)};
}

inline std::string random_fingerprint_text(cem::Rng& rng, size_t length) {
  static const std::string alphabet =
      "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789 \t.,-!?";
  std::string out;
  for (size_t i = 0; i < length; ++i) {
    if (rng.next_below(20) == 0) {
      cem::detail::append_utf8(
          out, 0x80 + static_cast<uint32_t>(rng.next_below(0x2000)));
    } else {
      out += alphabet[rng.next_below(alphabet.size())];
    }
  }
  return out;
}

}  // namespace cem_test
