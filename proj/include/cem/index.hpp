#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "cem/errors.hpp"
#include "cem/model.hpp"
#include "cem/names.hpp"

namespace cem {

struct IndexEntry {
  NormalizedName canonical;
  NameVector vector;
};

// Canonical-name vectors for exhaustive nearest-neighbour queries. The
// evaluation sets are ~1000 entries, so an exact scan keeps ranking simple
// and testable; approximate structures are an extension point.
struct VectorIndex {
  uint32_t dims = 0;
  std::vector<IndexEntry> entries;
};

struct RankedMatch {
  NormalizedName canonical;
  double distance = 0.0;
};

struct MatchResult {
  std::vector<RankedMatch> ranked;  // distance ascending, ties by key
};

inline VectorIndex build_index(const ModelParams& params,
                               const std::vector<NormalizedName>& canonicals) {
  if (canonicals.empty()) {
    throw std::invalid_argument("build_index: canonical list is empty");
  }
  std::set<std::string> seen;
  VectorIndex index;
  index.dims = params.dims.out_dim;
  index.entries.reserve(canonicals.size());
  for (const auto& name : canonicals) {
    if (!seen.insert(name.key).second) {
      throw DataError("build_index: duplicate canonical key: " + name.key);
    }
    try {
      index.entries.push_back({name, encode(params, name)});
    } catch (const std::exception& e) {
      throw DataError("build_index: cannot encode '" + name.display +
                      "': " + e.what());
    }
  }
  return index;
}

// Exact top-min(k,N) by ascending cosine distance 1 - dot.
inline MatchResult query(const VectorIndex& index, const NameVector& v,
                         size_t k) {
  if (k == 0) throw std::invalid_argument("query: k must be >= 1");
  if (v.size() != index.dims) {
    throw std::invalid_argument("query: vector dimension mismatch");
  }
  MatchResult result;
  result.ranked.reserve(index.entries.size());
  for (const auto& entry : index.entries) {
    result.ranked.push_back({entry.canonical, cosine_distance(v, entry.vector)});
  }
  std::sort(result.ranked.begin(), result.ranked.end(),
            [](const RankedMatch& a, const RankedMatch& b) {
              if (a.distance != b.distance) return a.distance < b.distance;
              return a.canonical.key < b.canonical.key;
            });
  if (result.ranked.size() > k) result.ranked.resize(k);
  return result;
}

// Full N x M cosine-distance matrix: rows are index canonicals, columns the
// given synonym vectors.
struct DistanceMatrix {
  size_t rows = 0;  // canonicals
  size_t cols = 0;  // synonyms
  std::vector<double> values;

  double at(size_t i, size_t j) const { return values[i * cols + j]; }
};

inline DistanceMatrix build_matrix(const VectorIndex& index,
                                   const std::vector<NameVector>& synonyms) {
  DistanceMatrix m;
  m.rows = index.entries.size();
  m.cols = synonyms.size();
  m.values.resize(m.rows * m.cols);
  for (size_t j = 0; j < synonyms.size(); ++j) {
    if (synonyms[j].size() != index.dims) {
      throw std::invalid_argument("build_matrix: vector dimension mismatch");
    }
  }
  for (size_t i = 0; i < m.rows; ++i) {
    for (size_t j = 0; j < m.cols; ++j) {
      m.values[i * m.cols + j] =
          cosine_distance(index.entries[i].vector, synonyms[j]);
    }
  }
  return m;
}

// ---------------------------------------------------------------------------
// Index file, little-endian:
//   u64 count | u32 dims | per entry: u32 key length, key bytes, u32 display
//   length, display bytes, dims f64 vector values.
// ---------------------------------------------------------------------------

namespace detail {

inline void write_u64(std::ostream& out, uint64_t v) {
  char bytes[8];
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>(v >> (8 * i));
  out.write(bytes, 8);
}

inline uint64_t read_u64(std::istream& in) {
  unsigned char bytes[8];
  in.read(reinterpret_cast<char*>(bytes), 8);
  uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(bytes[i]) << (8 * i);
  return v;
}

inline void write_lp_string(std::ostream& out, const std::string& s) {
  write_u32(out, static_cast<uint32_t>(s.size()));
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

inline std::string read_lp_string(std::istream& in) {
  const uint32_t len = read_u32(in);
  std::string s(len, '\0');
  in.read(s.data(), static_cast<std::streamsize>(len));
  return s;
}

}  // namespace detail

inline void save_index(const VectorIndex& index, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write index file: " + path);
  detail::write_u64(out, index.entries.size());
  detail::write_u32(out, index.dims);
  for (const auto& entry : index.entries) {
    detail::write_lp_string(out, entry.canonical.key);
    detail::write_lp_string(out, entry.canonical.display);
    detail::write_f64_block(out, entry.vector);
  }
  if (!out) throw DataError("failed writing index file: " + path);
}

inline VectorIndex load_index(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open index file: " + path);
  VectorIndex index;
  const uint64_t count = detail::read_u64(in);
  index.dims = detail::read_u32(in);
  if (!in || index.dims == 0) throw DataError("not an index file: " + path);
  index.entries.resize(count);
  for (auto& entry : index.entries) {
    entry.canonical.key = detail::read_lp_string(in);
    entry.canonical.display = detail::read_lp_string(in);
    entry.vector.assign(index.dims, 0.0);
    detail::read_f64_block(in, entry.vector);
  }
  if (!in) throw DataError("index file truncated: " + path);
  return index;
}

}  // namespace cem
