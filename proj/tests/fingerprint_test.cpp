#include "cem/fingerprint.hpp"

#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "cem/md5.hpp"
#include "cem/rng.hpp"
#include "support/reference_fingerprint.hpp"

namespace {

using cem::SelectedHash;
using cem::WinnowParams;
using cem_test::direct_fingerprint;
using cem_test::direct_kgram_hashes;
using cem_test::direct_winnow;
using cem_test::random_fingerprint_text;

std::string random_text(cem::Rng& rng, size_t length) {
  return random_fingerprint_text(rng, length);
}

TEST(CleanText, StripsEverythingButLettersAndDigits) {
  EXPECT_EQ(cem::clean_text("A do run!"), "adorun");
  EXPECT_EQ(cem::clean_text(""), "");
  EXPECT_EQ(cem::clean_text("Tesla, Inc. 2020"), "teslainc2020");
}

TEST(KgramHashes, MatchesDirectPolynomial) {
  const WinnowParams p;
  EXPECT_EQ(cem::kgram_hashes("aaaa", p), (std::vector<uint64_t>{767}));
  EXPECT_EQ(cem::kgram_hashes("aaaaa", p), (std::vector<uint64_t>{767, 767}));
  EXPECT_TRUE(cem::kgram_hashes("abc", p).empty());
}

TEST(KgramHashes, RollingEqualsDirectOnRandomTexts) {
  cem::Rng rng(20240117);
  for (int trial = 0; trial < 200; ++trial) {
    WinnowParams p;
    p.kgram_len = 1 + static_cast<uint32_t>(rng.next_below(8));
    p.base = 2 + rng.next_below(400);
    // every fourth trial stresses moduli near 2^64
    p.modulo = trial % 4 == 0 ? ~uint64_t{0} - rng.next_below(1u << 16)
                              : 2 + rng.next_below(1u << 20);
    const auto text = cem::clean_text(random_text(rng, rng.next_below(120)));
    EXPECT_EQ(cem::kgram_hashes(text, p), direct_kgram_hashes(text, p));
  }
}

TEST(Winnow, AllEqualTakesRightmost) {
  const std::vector<uint64_t> seq{5, 5, 5, 5, 5};
  EXPECT_EQ(cem::winnow(seq, 5), (std::vector<SelectedHash>{{4, 5}}));
}

TEST(Winnow, WindowMinimaWithRecordOnce) {
  const std::vector<uint64_t> seq{3, 1, 4, 1, 5, 9, 2, 6};
  // Window 5: every window of [3 1 4 1 5 9 2 6] contains the 1 at position
  // 3, which wins all rightmost-minimum contests.
  EXPECT_EQ(cem::winnow(seq, 5), (std::vector<SelectedHash>{{3, 1}}));
  // Window 4: the final window [5 9 2 6] no longer sees position 3.
  EXPECT_EQ(cem::winnow(seq, 4),
            (std::vector<SelectedHash>{{3, 1}, {6, 2}}));
}

TEST(Winnow, ShortSequenceSelectsGlobalMinimum) {
  EXPECT_EQ(cem::winnow({7}, 5), (std::vector<SelectedHash>{{0, 7}}));
  EXPECT_TRUE(cem::winnow({}, 5).empty());
}

TEST(Winnow, PropertiesOnRandomSequences) {
  cem::Rng rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    const size_t len = rng.next_below(40);
    const size_t w = 1 + rng.next_below(8);
    std::vector<uint64_t> seq(len);
    for (auto& v : seq) v = rng.next_below(50);
    const auto selected = cem::winnow(seq, w);
    ASSERT_EQ(selected, direct_winnow(seq, w));

    // positions strictly increase, every hash is the minimum of some window
    for (size_t i = 0; i < selected.size(); ++i) {
      if (i > 0) {
        EXPECT_LT(selected[i - 1].position, selected[i].position);
      }
      EXPECT_EQ(seq[selected[i].position], selected[i].hash);
      const size_t pos = selected[i].position;
      bool is_min_of_some_window = false;
      const size_t span = std::min(w, len);
      for (size_t s = (pos + 1 >= span ? pos + 1 - span : 0);
           s <= pos && s + span <= len; ++s) {
        uint64_t m = ~uint64_t{0};
        for (size_t j = s; j < s + span; ++j) m = std::min(m, seq[j]);
        if (m == selected[i].hash) is_min_of_some_window = true;
      }
      EXPECT_TRUE(is_min_of_some_window);
    }

    // coverage: for |seq| >= w every window has a selection
    if (len >= w) {
      size_t cursor = 0;
      for (size_t s = 0; s + w <= len; ++s) {
        bool covered = false;
        for (size_t i = cursor; i < selected.size(); ++i) {
          if (selected[i].position >= s && selected[i].position < s + w) {
            covered = true;
            break;
          }
          if (selected[i].position >= s + w) break;
        }
        EXPECT_TRUE(covered) << "window at " << s << " has no selection";
      }
    }
  }
}

TEST(Digest, Md5OfJoinedDecimalHashes) {
  EXPECT_EQ(cem::md5_hex("abc"), "900150983cd24fb0d6963f7d28e17f72");
  EXPECT_EQ(cem::digest({}).digest_hex, "d41d8cd98f00b204e9800998ecf8427e");
  EXPECT_EQ(cem::digest({{3, 1}, {6, 2}}).digest_hex, cem::md5_hex("1,2"));
}

TEST(FingerprintJob, DeterministicAndFormatInsensitive) {
  const std::string description =
      "Senior Widget Engineer needed. Must love widgets; 5+ years required.";
  const auto fp1 = cem::fingerprint_job(description);
  const auto fp2 = cem::fingerprint_job(description);
  EXPECT_EQ(fp1, fp2);
  EXPECT_EQ(fp1.digest_hex.size(), 32u);
  for (char c : fp1.digest_hex) {
    EXPECT_TRUE((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'));
  }

  const auto fp3 = cem::fingerprint_job(
      "senior widget engineer NEEDED!!! (must love widgets): 5 + years, "
      "required...");
  EXPECT_EQ(fp1, fp3);
}

TEST(FingerprintJob, MatchesNonRollingReference) {
  cem::Rng rng(4242);
  const WinnowParams p;
  for (int trial = 0; trial < 100; ++trial) {
    const auto text = random_text(rng, rng.next_below(500));
    EXPECT_EQ(cem::fingerprint_job(text, p), direct_fingerprint(text, p));
  }
}

TEST(WinnowParams, RejectsDegenerateValues) {
  WinnowParams p;
  p.modulo = 1;
  EXPECT_THROW(cem::kgram_hashes("abcdef", p), std::invalid_argument);
  EXPECT_THROW(cem::winnow({1, 2, 3}, 0), std::invalid_argument);
}

}  // namespace
