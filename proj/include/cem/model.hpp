#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cem/errors.hpp"
#include "cem/names.hpp"
#include "cem/rng.hpp"
#include "cem/tokenizer.hpp"

namespace cem {

// Row-major dense matrix of doubles. The model is small enough that plain
// loops (vectorized by the compiler) beat pulling in a linear-algebra
// dependency.
struct Matrix {
  size_t rows = 0;
  size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(size_t r, size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  double& at(size_t r, size_t c) { return data[r * cols + c]; }
  double at(size_t r, size_t c) const { return data[r * cols + c]; }
  double* row(size_t r) { return data.data() + r * cols; }
  const double* row(size_t r) const { return data.data() + r * cols; }
};

using Vector = std::vector<double>;
using NameVector = Vector;

struct ModelDims {
  uint32_t buckets = 4096;
  uint32_t embed_dim = 400;
  uint32_t encoder_dim = 400;
  uint32_t out_dim = 400;

  void validate() const {
    if (buckets == 0 || embed_dim == 0 || encoder_dim == 0 || out_dim == 0) {
      throw std::invalid_argument("ModelDims: all dimensions must be positive");
    }
  }

  friend bool operator==(const ModelDims&, const ModelDims&) = default;
};

// Small test/desk profile; the full-size defaults above take minutes to
// train at corpus scale.
inline ModelDims desk_dims(uint32_t buckets = 4096, uint32_t width = 64) {
  return ModelDims{buckets, width, width, width};
}

enum Gate : size_t { kInput = 0, kForget = 1, kOutput = 2, kCand = 3 };

// One direction of the recurrent encoder: four gates, each with input
// weights (encoder_dim x embed_dim), recurrent weights
// (encoder_dim x encoder_dim) and a bias.
struct LstmCell {
  std::array<Matrix, 4> w;
  std::array<Matrix, 4> u;
  std::array<Vector, 4> b;

  LstmCell() = default;
  LstmCell(size_t enc, size_t emb) {
    for (size_t g = 0; g < 4; ++g) {
      w[g] = Matrix(enc, emb);
      u[g] = Matrix(enc, enc);
      b[g] = Vector(enc, 0.0);
    }
  }
};

struct ModelParams {
  ModelDims dims;
  Matrix embedding;   // buckets x embed_dim
  LstmCell fwd;
  LstmCell bwd;
  Matrix proj;        // out_dim x 2*encoder_dim
  Vector proj_bias;   // out_dim
};

// Named references to every parameter tensor, in the fixed order used by
// the optimizer, the gradient check and the model file.
struct ParamBlock {
  const char* name;
  Vector* values;
};

inline std::vector<ParamBlock> param_blocks(ModelParams& p) {
  std::vector<ParamBlock> blocks;
  blocks.push_back({"embedding", &p.embedding.data});
  static constexpr const char* kFwdW[] = {"fwd.w_input", "fwd.w_forget",
                                          "fwd.w_output", "fwd.w_cand"};
  static constexpr const char* kFwdU[] = {"fwd.u_input", "fwd.u_forget",
                                          "fwd.u_output", "fwd.u_cand"};
  static constexpr const char* kFwdB[] = {"fwd.b_input", "fwd.b_forget",
                                          "fwd.b_output", "fwd.b_cand"};
  static constexpr const char* kBwdW[] = {"bwd.w_input", "bwd.w_forget",
                                          "bwd.w_output", "bwd.w_cand"};
  static constexpr const char* kBwdU[] = {"bwd.u_input", "bwd.u_forget",
                                          "bwd.u_output", "bwd.u_cand"};
  static constexpr const char* kBwdB[] = {"bwd.b_input", "bwd.b_forget",
                                          "bwd.b_output", "bwd.b_cand"};
  for (size_t g = 0; g < 4; ++g) blocks.push_back({kFwdW[g], &p.fwd.w[g].data});
  for (size_t g = 0; g < 4; ++g) blocks.push_back({kFwdU[g], &p.fwd.u[g].data});
  for (size_t g = 0; g < 4; ++g) blocks.push_back({kFwdB[g], &p.fwd.b[g]});
  for (size_t g = 0; g < 4; ++g) blocks.push_back({kBwdW[g], &p.bwd.w[g].data});
  for (size_t g = 0; g < 4; ++g) blocks.push_back({kBwdU[g], &p.bwd.u[g].data});
  for (size_t g = 0; g < 4; ++g) blocks.push_back({kBwdB[g], &p.bwd.b[g]});
  blocks.push_back({"proj", &p.proj.data});
  blocks.push_back({"proj_bias", &p.proj_bias});
  return blocks;
}

inline ModelParams zero_like(const ModelParams& p) {
  ModelParams z;
  z.dims = p.dims;
  z.embedding = Matrix(p.embedding.rows, p.embedding.cols);
  z.fwd = LstmCell(p.dims.encoder_dim, p.dims.embed_dim);
  z.bwd = LstmCell(p.dims.encoder_dim, p.dims.embed_dim);
  z.proj = Matrix(p.proj.rows, p.proj.cols);
  z.proj_bias = Vector(p.proj_bias.size(), 0.0);
  return z;
}

// Seed-deterministic initialization: uniform +-1/sqrt(fan_in) weights, zero
// biases except the forget gate, which starts open at 1.
inline ModelParams init_model(const ModelDims& dims, uint64_t seed) {
  dims.validate();
  ModelParams p;
  p.dims = dims;
  p.embedding = Matrix(dims.buckets, dims.embed_dim);
  p.fwd = LstmCell(dims.encoder_dim, dims.embed_dim);
  p.bwd = LstmCell(dims.encoder_dim, dims.embed_dim);
  p.proj = Matrix(dims.out_dim, 2 * static_cast<size_t>(dims.encoder_dim));
  p.proj_bias = Vector(dims.out_dim, 0.0);

  Rng rng(derive_seed(seed, 0x1417));
  const auto fill = [&](Vector& v, double scale) {
    for (double& x : v) x = rng.next_symmetric(scale);
  };
  fill(p.embedding.data, 1.0 / std::sqrt(static_cast<double>(dims.embed_dim)));
  for (LstmCell* cell : {&p.fwd, &p.bwd}) {
    for (size_t g = 0; g < 4; ++g) {
      fill(cell->w[g].data, 1.0 / std::sqrt(static_cast<double>(dims.embed_dim)));
      fill(cell->u[g].data, 1.0 / std::sqrt(static_cast<double>(dims.encoder_dim)));
    }
    for (double& x : cell->b[kForget]) x = 1.0;
  }
  fill(p.proj.data, 1.0 / std::sqrt(2.0 * static_cast<double>(dims.encoder_dim)));
  return p;
}

namespace detail {

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

inline void matvec_add(const Matrix& m, const double* x, double* out) {
  for (size_t r = 0; r < m.rows; ++r) {
    const double* row = m.row(r);
    double acc = 0.0;
    for (size_t c = 0; c < m.cols; ++c) acc += row[c] * x[c];
    out[r] += acc;
  }
}

// Per-timestep activations kept for backpropagation through time.
struct LstmTrace {
  std::vector<std::array<Vector, 4>> gates;  // post-activation i,f,o,g
  std::vector<Vector> cell;
  std::vector<Vector> cell_tanh;
  std::vector<Vector> hidden;
};

// Runs one direction over the bucket sequence (already in processing
// order). Returns the final hidden state; fills the trace when given.
inline Vector lstm_run(const LstmCell& cell, const Matrix& embedding,
                       const std::vector<uint32_t>& order, size_t enc,
                       LstmTrace* trace) {
  Vector h(enc, 0.0);
  Vector c(enc, 0.0);
  if (trace) {
    trace->gates.resize(order.size());
    trace->cell.resize(order.size());
    trace->cell_tanh.resize(order.size());
    trace->hidden.resize(order.size());
  }
  std::array<Vector, 4> acts;
  for (size_t t = 0; t < order.size(); ++t) {
    const double* x = embedding.row(order[t]);
    for (size_t g = 0; g < 4; ++g) {
      acts[g] = cell.b[g];
      matvec_add(cell.w[g], x, acts[g].data());
      matvec_add(cell.u[g], h.data(), acts[g].data());
    }
    for (size_t r = 0; r < enc; ++r) {
      acts[kInput][r] = sigmoid(acts[kInput][r]);
      acts[kForget][r] = sigmoid(acts[kForget][r]);
      acts[kOutput][r] = sigmoid(acts[kOutput][r]);
      acts[kCand][r] = std::tanh(acts[kCand][r]);
      c[r] = acts[kForget][r] * c[r] + acts[kInput][r] * acts[kCand][r];
    }
    Vector ct(enc);
    for (size_t r = 0; r < enc; ++r) {
      ct[r] = std::tanh(c[r]);
      h[r] = acts[kOutput][r] * ct[r];
    }
    if (trace) {
      trace->gates[t] = acts;
      trace->cell[t] = c;
      trace->cell_tanh[t] = std::move(ct);
      trace->hidden[t] = h;
    }
  }
  return h;
}

struct EncodeTrace {
  std::vector<uint32_t> buckets;    // forward order
  std::vector<uint32_t> reversed;   // backward order
  LstmTrace fwd;
  LstmTrace bwd;
  Vector concat;     // [h_fwd_final ; h_bwd_final]
  Vector pre_relu;   // projection output
  Vector post_relu;
  double norm = 0.0;
  NameVector out;
};

constexpr double kNormFloor = 1e-12;

inline NameVector encode_buckets(const ModelParams& p,
                                 const std::vector<uint32_t>& buckets,
                                 EncodeTrace* trace) {
  const size_t enc = p.dims.encoder_dim;
  std::vector<uint32_t> reversed(buckets.rbegin(), buckets.rend());
  Vector h_fwd = lstm_run(p.fwd, p.embedding, buckets, enc,
                          trace ? &trace->fwd : nullptr);
  Vector h_bwd = lstm_run(p.bwd, p.embedding, reversed, enc,
                          trace ? &trace->bwd : nullptr);

  Vector concat(2 * enc);
  std::copy(h_fwd.begin(), h_fwd.end(), concat.begin());
  std::copy(h_bwd.begin(), h_bwd.end(), concat.begin() + static_cast<long>(enc));

  Vector z = p.proj_bias;
  matvec_add(p.proj, concat.data(), z.data());
  Vector y(z.size());
  double sq = 0.0;
  for (size_t r = 0; r < z.size(); ++r) {
    y[r] = z[r] > 0.0 ? z[r] : 0.0;
    sq += y[r] * y[r];
  }
  const double norm = std::sqrt(sq);
  NameVector v(y.size(), 0.0);
  if (norm < kNormFloor) {
    // ReLU zeroed every coordinate; fall back to a fixed unit vector so the
    // unit-norm contract holds.
    v[0] = 1.0;
  } else {
    for (size_t r = 0; r < y.size(); ++r) v[r] = y[r] / norm;
  }
  if (trace) {
    trace->buckets = buckets;
    trace->reversed = std::move(reversed);
    trace->concat = std::move(concat);
    trace->pre_relu = std::move(z);
    trace->post_relu = std::move(y);
    trace->norm = norm;
    trace->out = v;
  }
  return v;
}

}  // namespace detail

// Fixed-length unit-norm embedding of a name: per-token hashed embedding
// lookup, forward and backward recurrent passes, final hidden states
// concatenated, projected, ReLU, L2-normalized. Deterministic given params.
inline NameVector encode(const ModelParams& params, const NormalizedName& name) {
  const auto buckets = token_buckets(name, params.dims.buckets);
  return detail::encode_buckets(params, buckets, nullptr);
}

inline double dot(const NameVector& a, const NameVector& b) {
  double acc = 0.0;
  for (size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

// 1 - dot for unit vectors; in [0,2].
inline double cosine_distance(const NameVector& a, const NameVector& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("cosine_distance: dimension mismatch");
  }
  return 1.0 - dot(a, b);
}

// ---------------------------------------------------------------------------
// Model container: little-endian binary, bit-exact round trip.
//   magic "CEM1" | u32 version=1 | u32 buckets, embed_dim, encoder_dim,
//   out_dim | parameter blocks as raw f64 in param_blocks() order.
// ---------------------------------------------------------------------------

namespace detail {

inline void write_u32(std::ostream& out, uint32_t v) {
  char bytes[4];
  for (int i = 0; i < 4; ++i) bytes[i] = static_cast<char>(v >> (8 * i));
  out.write(bytes, 4);
}

inline uint32_t read_u32(std::istream& in) {
  unsigned char bytes[4];
  in.read(reinterpret_cast<char*>(bytes), 4);
  uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(bytes[i]) << (8 * i);
  return v;
}

inline void write_f64_block(std::ostream& out, const Vector& v) {
  out.write(reinterpret_cast<const char*>(v.data()),
            static_cast<std::streamsize>(v.size() * sizeof(double)));
}

inline void read_f64_block(std::istream& in, Vector& v) {
  in.read(reinterpret_cast<char*>(v.data()),
          static_cast<std::streamsize>(v.size() * sizeof(double)));
}

constexpr char kModelMagic[4] = {'C', 'E', 'M', '1'};

}  // namespace detail

inline void save_model(const ModelParams& params, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write model file: " + path);
  out.write(detail::kModelMagic, 4);
  detail::write_u32(out, 1);
  detail::write_u32(out, params.dims.buckets);
  detail::write_u32(out, params.dims.embed_dim);
  detail::write_u32(out, params.dims.encoder_dim);
  detail::write_u32(out, params.dims.out_dim);
  auto& mutable_params = const_cast<ModelParams&>(params);
  for (const auto& block : param_blocks(mutable_params)) {
    detail::write_f64_block(out, *block.values);
  }
  if (!out) throw DataError("failed writing model file: " + path);
}

inline ModelParams load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open model file: " + path);
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, detail::kModelMagic, 4) != 0) {
    throw DataError("not a model file: " + path);
  }
  const uint32_t version = detail::read_u32(in);
  if (version != 1) {
    throw DataError("unsupported model version " + std::to_string(version) +
                    ": " + path);
  }
  ModelDims dims;
  dims.buckets = detail::read_u32(in);
  dims.embed_dim = detail::read_u32(in);
  dims.encoder_dim = detail::read_u32(in);
  dims.out_dim = detail::read_u32(in);
  dims.validate();
  ModelParams p;
  p.dims = dims;
  p.embedding = Matrix(dims.buckets, dims.embed_dim);
  p.fwd = LstmCell(dims.encoder_dim, dims.embed_dim);
  p.bwd = LstmCell(dims.encoder_dim, dims.embed_dim);
  p.proj = Matrix(dims.out_dim, 2 * static_cast<size_t>(dims.encoder_dim));
  p.proj_bias = Vector(dims.out_dim, 0.0);
  for (const auto& block : param_blocks(p)) {
    detail::read_f64_block(in, *block.values);
  }
  if (!in) throw DataError("model file truncated: " + path);
  for (const auto& block : param_blocks(p)) {
    for (double x : *block.values) {
      if (!std::isfinite(x)) {
        throw DataError(std::string("model file has non-finite values in ") +
                        block.name + ": " + path);
      }
    }
  }
  return p;
}

}  // namespace cem
