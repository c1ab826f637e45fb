#pragma once

#include <array>
#include <cstdint>
#include <cstring>
#include <string>
#include <string_view>

namespace cem {

// RFC 1321 message digest. Self-contained incremental implementation; the
// test suite pins all seven reference vectors from the RFC's appendix.
class Md5 {
 public:
  Md5() { reset(); }

  void reset() {
    a_ = 0x67452301u;
    b_ = 0xefcdab89u;
    c_ = 0x98badcfeu;
    d_ = 0x10325476u;
    length_ = 0;
    buffered_ = 0;
  }

  void update(const void* data, size_t size) {
    const auto* p = static_cast<const uint8_t*>(data);
    length_ += size;
    if (buffered_ != 0) {
      size_t take = 64 - buffered_;
      if (take > size) take = size;
      std::memcpy(buffer_.data() + buffered_, p, take);
      buffered_ += take;
      p += take;
      size -= take;
      if (buffered_ == 64) {
        process_block(buffer_.data());
        buffered_ = 0;
      }
    }
    while (size >= 64) {
      process_block(p);
      p += 64;
      size -= 64;
    }
    if (size != 0) {
      std::memcpy(buffer_.data(), p, size);
      buffered_ = size;
    }
  }

  void update(std::string_view s) { update(s.data(), s.size()); }

  std::array<uint8_t, 16> finish() {
    const uint64_t bit_length = length_ * 8;
    static constexpr uint8_t kPad[64] = {0x80};
    size_t pad = (buffered_ < 56) ? 56 - buffered_ : 120 - buffered_;
    update(kPad, pad);
    uint8_t len_bytes[8];
    for (int i = 0; i < 8; ++i) {
      len_bytes[i] = static_cast<uint8_t>(bit_length >> (8 * i));
    }
    update(len_bytes, 8);
    std::array<uint8_t, 16> out{};
    const uint32_t words[4] = {a_, b_, c_, d_};
    for (int w = 0; w < 4; ++w) {
      for (int i = 0; i < 4; ++i) {
        out[static_cast<size_t>(w * 4 + i)] =
            static_cast<uint8_t>(words[w] >> (8 * i));
      }
    }
    return out;
  }

  std::string finish_hex() {
    const auto digest = finish();
    static constexpr char kHex[] = "0123456789abcdef";
    std::string hex(32, '0');
    for (size_t i = 0; i < 16; ++i) {
      hex[2 * i] = kHex[digest[i] >> 4];
      hex[2 * i + 1] = kHex[digest[i] & 0x0f];
    }
    return hex;
  }

 private:
  static uint32_t rotl(uint32_t x, int s) {
    return (x << s) | (x >> (32 - s));
  }

  void process_block(const uint8_t* block) {
    static constexpr uint32_t kSine[64] = {
        0xd76aa478u, 0xe8c7b756u, 0x242070dbu, 0xc1bdceeeu, 0xf57c0fafu,
        0x4787c62au, 0xa8304613u, 0xfd469501u, 0x698098d8u, 0x8b44f7afu,
        0xffff5bb1u, 0x895cd7beu, 0x6b901122u, 0xfd987193u, 0xa679438eu,
        0x49b40821u, 0xf61e2562u, 0xc040b340u, 0x265e5a51u, 0xe9b6c7aau,
        0xd62f105du, 0x02441453u, 0xd8a1e681u, 0xe7d3fbc8u, 0x21e1cde6u,
        0xc33707d6u, 0xf4d50d87u, 0x455a14edu, 0xa9e3e905u, 0xfcefa3f8u,
        0x676f02d9u, 0x8d2a4c8au, 0xfffa3942u, 0x8771f681u, 0x6d9d6122u,
        0xfde5380cu, 0xa4beea44u, 0x4bdecfa9u, 0xf6bb4b60u, 0xbebfbc70u,
        0x289b7ec6u, 0xeaa127fau, 0xd4ef3085u, 0x04881d05u, 0xd9d4d039u,
        0xe6db99e5u, 0x1fa27cf8u, 0xc4ac5665u, 0xf4292244u, 0x432aff97u,
        0xab9423a7u, 0xfc93a039u, 0x655b59c3u, 0x8f0ccc92u, 0xffeff47du,
        0x85845dd1u, 0x6fa87e4fu, 0xfe2ce6e0u, 0xa3014314u, 0x4e0811a1u,
        0xf7537e82u, 0xbd3af235u, 0x2ad7d2bbu, 0xeb86d391u};
    static constexpr int kShift[64] = {
        7, 12, 17, 22, 7, 12, 17, 22, 7, 12, 17, 22, 7, 12, 17, 22,
        5, 9,  14, 20, 5, 9,  14, 20, 5, 9,  14, 20, 5, 9,  14, 20,
        4, 11, 16, 23, 4, 11, 16, 23, 4, 11, 16, 23, 4, 11, 16, 23,
        6, 10, 15, 21, 6, 10, 15, 21, 6, 10, 15, 21, 6, 10, 15, 21};

    uint32_t m[16];
    for (int i = 0; i < 16; ++i) {
      m[i] = static_cast<uint32_t>(block[4 * i]) |
             static_cast<uint32_t>(block[4 * i + 1]) << 8 |
             static_cast<uint32_t>(block[4 * i + 2]) << 16 |
             static_cast<uint32_t>(block[4 * i + 3]) << 24;
    }

    uint32_t a = a_, b = b_, c = c_, d = d_;
    for (int i = 0; i < 64; ++i) {
      uint32_t f;
      int g;
      if (i < 16) {
        f = (b & c) | (~b & d);
        g = i;
      } else if (i < 32) {
        f = (d & b) | (~d & c);
        g = (5 * i + 1) & 15;
      } else if (i < 48) {
        f = b ^ c ^ d;
        g = (3 * i + 5) & 15;
      } else {
        f = c ^ (b | ~d);
        g = (7 * i) & 15;
      }
      const uint32_t tmp = d;
      d = c;
      c = b;
      b += rotl(a + f + kSine[i] + m[g], kShift[i]);
      a = tmp;
    }
    a_ += a;
    b_ += b;
    c_ += c;
    d_ += d;
  }

  uint32_t a_, b_, c_, d_;
  uint64_t length_ = 0;
  size_t buffered_ = 0;
  std::array<uint8_t, 64> buffer_{};
};

inline std::string md5_hex(std::string_view data) {
  Md5 h;
  h.update(data);
  return h.finish_hex();
}

}  // namespace cem
