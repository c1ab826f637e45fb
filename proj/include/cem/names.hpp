#pragma once

#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cem {

// A company name in its two working forms. `display` preserves the original
// spelling with outer whitespace trimmed and inner whitespace runs collapsed;
// `key` is the canonical comparison form used wherever names are grouped,
// paired, deduplicated or scored.
struct NormalizedName {
  std::string display;
  std::string key;

  friend bool operator==(const NormalizedName&, const NormalizedName&) = default;
  friend auto operator<=>(const NormalizedName&, const NormalizedName&) = default;
};

namespace detail {

inline bool is_ascii_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

}  // namespace detail

// display: trimmed, whitespace runs collapsed to single spaces.
// key: display with ASCII letters lowercased. Punctuation is preserved on
// purpose -- suffixes such as "Inc." vs "LLC" carry meaning downstream.
// Non-ASCII bytes pass through unchanged; full Unicode case folding and
// composition is an extension point.
inline NormalizedName normalize_name(std::string_view raw) {
  std::string display;
  display.reserve(raw.size());
  bool pending_space = false;
  for (char c : raw) {
    if (detail::is_ascii_space(c)) {
      pending_space = !display.empty();
    } else {
      if (pending_space) display.push_back(' ');
      pending_space = false;
      display.push_back(c);
    }
  }
  if (display.empty()) {
    throw std::invalid_argument("normalize_name: empty or whitespace-only name");
  }
  std::string key = display;
  for (char& c : key) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return NormalizedName{std::move(display), std::move(key)};
}

}  // namespace cem
