#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "cem/errors.hpp"
#include "cem/miner.hpp"
#include "cem/model.hpp"
#include "cem/rng.hpp"

namespace cem {

struct TrainConfig {
  double learning_rate = 1e-3;
  uint32_t batch_size = 64;
  uint32_t epochs = 5;
  double margin = 0.4;
  uint32_t negatives = 4;  // per anchor, drawn from other names in the batch
  uint64_t seed = 0;

  void validate() const {
    if (learning_rate <= 0.0 || batch_size == 0 || epochs == 0 ||
        negatives == 0 || margin <= 0.0 || margin >= 2.0) {
      throw std::invalid_argument(
          "TrainConfig: rate/batch/epochs/negatives must be positive, margin "
          "in (0,2)");
    }
  }
};

// Hinge over cosine: sum over negatives of
// max(0, margin - cos(anchor,positive) + cos(anchor,negative)).
// All vectors are unit-norm, so cosine is the dot product.
inline double pair_loss(const NameVector& anchor, const NameVector& positive,
                        const std::vector<NameVector>& negatives,
                        double margin) {
  if (negatives.empty()) {
    throw std::invalid_argument("pair_loss: at least one negative required");
  }
  const double pos = dot(anchor, positive);
  double loss = 0.0;
  for (const auto& n : negatives) {
    loss += std::max(0.0, margin - pos + dot(anchor, n));
  }
  return loss;
}

namespace detail {

// A minibatch: unique names plus (anchor, positive, negatives) triples as
// indices into them. Negatives are drawn uniformly from names belonging to
// other pairs of the same batch.
struct Batch {
  std::vector<std::vector<uint32_t>> buckets;  // per unique name
  struct Anchor {
    size_t a = 0;
    size_t p = 0;
    std::vector<size_t> negs;
  };
  std::vector<Anchor> anchors;

  size_t hinge_terms() const {
    size_t n = 0;
    for (const auto& a : anchors) n += a.negs.size();
    return n;
  }
};

inline Batch build_batch(const std::vector<SynonymPair>& pairs,
                         const std::vector<size_t>& pair_indices,
                         uint32_t bucket_count, uint32_t negatives, Rng& rng) {
  Batch batch;
  std::map<std::string, size_t> name_index;
  std::vector<std::pair<size_t, size_t>> members;  // (a_idx, p_idx) per pair
  const auto intern = [&](const NormalizedName& name) {
    auto [it, inserted] = name_index.emplace(name.key, batch.buckets.size());
    if (inserted) batch.buckets.push_back(token_buckets(name, bucket_count));
    return it->second;
  };
  for (size_t pi : pair_indices) {
    members.emplace_back(intern(pairs[pi].a), intern(pairs[pi].b));
  }
  if (batch.buckets.size() <= 2) return batch;  // no negatives available

  // Names directly paired with a given name within this batch are likely
  // synonyms of the same company; drawing them as negatives would push true
  // synonyms apart, so they are excluded from the candidate pool.
  std::vector<std::set<size_t>> adjacent(batch.buckets.size());
  for (const auto& [a, p] : members) {
    adjacent[a].insert(p);
    adjacent[p].insert(a);
  }
  const auto add_anchor = [&](size_t a, size_t p) {
    std::vector<size_t> allowed;
    allowed.reserve(batch.buckets.size());
    for (size_t n = 0; n < batch.buckets.size(); ++n) {
      if (n == a || n == p) continue;
      if (adjacent[a].count(n) != 0 || adjacent[p].count(n) != 0) continue;
      allowed.push_back(n);
    }
    if (allowed.empty()) return;
    Batch::Anchor anchor;
    anchor.a = a;
    anchor.p = p;
    for (uint32_t k = 0; k < negatives; ++k) {
      anchor.negs.push_back(allowed[rng.next_below(allowed.size())]);
    }
    batch.anchors.push_back(std::move(anchor));
  };
  // both directions of each pair anchor once
  for (const auto& [a, p] : members) {
    add_anchor(a, p);
    add_anchor(p, a);
  }
  return batch;
}

// One direction of backpropagation through time. `order` is the bucket
// sequence in the direction's own processing order; `d_final` is the loss
// gradient at the final hidden state.
inline void lstm_backward(const LstmCell& cell, const Matrix& embedding,
                          const std::vector<uint32_t>& order,
                          const LstmTrace& trace, const Vector& d_final,
                          LstmCell& cell_grad, Matrix& embedding_grad) {
  const size_t enc = d_final.size();
  Vector dh = d_final;
  Vector dc(enc, 0.0);
  std::array<Vector, 4> da;
  for (auto& v : da) v.assign(enc, 0.0);

  for (size_t t = order.size(); t-- > 0;) {
    const auto& g = trace.gates[t];
    const Vector& ct = trace.cell_tanh[t];
    const Vector* c_prev = t > 0 ? &trace.cell[t - 1] : nullptr;
    const Vector* h_prev = t > 0 ? &trace.hidden[t - 1] : nullptr;
    for (size_t r = 0; r < enc; ++r) {
      const double i = g[kInput][r], f = g[kForget][r], o = g[kOutput][r],
                   cand = g[kCand][r];
      da[kOutput][r] = dh[r] * ct[r] * o * (1.0 - o);
      dc[r] += dh[r] * o * (1.0 - ct[r] * ct[r]);
      const double cp = c_prev ? (*c_prev)[r] : 0.0;
      da[kForget][r] = dc[r] * cp * f * (1.0 - f);
      da[kInput][r] = dc[r] * cand * i * (1.0 - i);
      da[kCand][r] = dc[r] * i * (1.0 - cand * cand);
    }
    const double* x = embedding.row(order[t]);
    double* dx = embedding_grad.row(order[t]);
    for (size_t gate = 0; gate < 4; ++gate) {
      Matrix& dw = cell_grad.w[gate];
      Matrix& du = cell_grad.u[gate];
      Vector& db = cell_grad.b[gate];
      const Matrix& w = cell.w[gate];
      for (size_t r = 0; r < enc; ++r) {
        const double d = da[gate][r];
        if (d == 0.0) continue;
        db[r] += d;
        double* dw_row = dw.row(r);
        for (size_t c = 0; c < w.cols; ++c) dw_row[c] += d * x[c];
        if (h_prev) {
          double* du_row = du.row(r);
          const double* hp = h_prev->data();
          for (size_t c = 0; c < enc; ++c) du_row[c] += d * hp[c];
        }
        const double* w_row = w.row(r);
        for (size_t c = 0; c < w.cols; ++c) dx[c] += d * w_row[c];
      }
    }
    // gradient flowing to h_{t-1} and c_{t-1}
    Vector dh_prev(enc, 0.0);
    for (size_t gate = 0; gate < 4; ++gate) {
      const Matrix& u = cell.u[gate];
      for (size_t r = 0; r < enc; ++r) {
        const double d = da[gate][r];
        if (d == 0.0) continue;
        const double* u_row = u.row(r);
        for (size_t c = 0; c < enc; ++c) dh_prev[c] += d * u_row[c];
      }
    }
    for (size_t r = 0; r < enc; ++r) dc[r] *= g[kForget][r];
    dh = std::move(dh_prev);
  }
}

// Backpropagates d_out (gradient at the unit-norm output vector) through
// normalization, ReLU, projection and both recurrent directions.
inline void encode_backward(const ModelParams& p, const EncodeTrace& trace,
                            const Vector& d_out, ModelParams& grads) {
  const size_t enc = p.dims.encoder_dim;
  const size_t out_dim = p.dims.out_dim;
  if (trace.norm < kNormFloor) return;  // fallback vector, constant output

  // v = y/||y||  =>  dL/dy = (d_out - (d_out . v) v) / ||y||
  Vector dy(out_dim);
  const double proj_on_v = dot(d_out, trace.out);
  for (size_t r = 0; r < out_dim; ++r) {
    dy[r] = (d_out[r] - proj_on_v * trace.out[r]) / trace.norm;
  }
  // ReLU
  Vector dz(out_dim);
  for (size_t r = 0; r < out_dim; ++r) {
    dz[r] = trace.pre_relu[r] > 0.0 ? dy[r] : 0.0;
  }
  // projection: z = proj . concat + bias
  Vector d_concat(2 * enc, 0.0);
  for (size_t r = 0; r < out_dim; ++r) {
    const double d = dz[r];
    grads.proj_bias[r] += d;
    if (d == 0.0) continue;
    double* dp_row = grads.proj.row(r);
    const double* p_row = p.proj.row(r);
    for (size_t c = 0; c < 2 * enc; ++c) {
      dp_row[c] += d * trace.concat[c];
      d_concat[c] += d * p_row[c];
    }
  }
  Vector d_fwd(d_concat.begin(), d_concat.begin() + static_cast<long>(enc));
  Vector d_bwd(d_concat.begin() + static_cast<long>(enc), d_concat.end());
  lstm_backward(p.fwd, p.embedding, trace.buckets, trace.fwd, d_fwd, grads.fwd,
                grads.embedding);
  lstm_backward(p.bwd, p.embedding, trace.reversed, trace.bwd, d_bwd,
                grads.bwd, grads.embedding);
}

// Mean hinge loss of the batch (per anchor-negative term) and, when `grads`
// is given, its gradient w.r.t. every parameter.
inline double batch_loss(const ModelParams& p, const Batch& batch,
                         double margin, ModelParams* grads) {
  const size_t terms = batch.hinge_terms();
  if (terms == 0) return 0.0;
  const size_t n = batch.buckets.size();
  std::vector<EncodeTrace> traces(grads ? n : 0);
  std::vector<NameVector> vecs(n);
  for (size_t i = 0; i < n; ++i) {
    vecs[i] = encode_buckets(p, batch.buckets[i], grads ? &traces[i] : nullptr);
  }
  std::vector<Vector> d_vec;
  if (grads) d_vec.assign(n, Vector(p.dims.out_dim, 0.0));

  const double scale = 1.0 / static_cast<double>(terms);
  double total = 0.0;
  for (const auto& anchor : batch.anchors) {
    const auto& va = vecs[anchor.a];
    const auto& vp = vecs[anchor.p];
    const double pos = dot(va, vp);
    for (size_t ni : anchor.negs) {
      const auto& vn = vecs[ni];
      const double term = margin - pos + dot(va, vn);
      if (term <= 0.0) continue;
      total += term;
      if (grads) {
        for (size_t r = 0; r < va.size(); ++r) {
          d_vec[anchor.a][r] += scale * (vn[r] - vp[r]);
          d_vec[anchor.p][r] -= scale * va[r];
          d_vec[ni][r] += scale * va[r];
        }
      }
    }
  }
  if (grads) {
    for (size_t i = 0; i < n; ++i) {
      encode_backward(p, traces[i], d_vec[i], *grads);
    }
  }
  return total * scale;
}

// Adam with bias correction; per-parameter adaptive steps. State is laid out
// against the fixed param_blocks() order.
class AdamOptimizer {
 public:
  AdamOptimizer(ModelParams& params, double learning_rate)
      : lr_(learning_rate) {
    for (const auto& block : param_blocks(params)) {
      m_.emplace_back(block.values->size(), 0.0);
      v_.emplace_back(block.values->size(), 0.0);
    }
  }

  void step(ModelParams& params, ModelParams& grads) {
    ++t_;
    const double c1 = 1.0 - std::pow(kBeta1, static_cast<double>(t_));
    const double c2 = 1.0 - std::pow(kBeta2, static_cast<double>(t_));
    auto pb = param_blocks(params);
    auto gb = param_blocks(grads);
    for (size_t i = 0; i < pb.size(); ++i) {
      Vector& theta = *pb[i].values;
      Vector& g = *gb[i].values;
      Vector& m = m_[i];
      Vector& v = v_[i];
      for (size_t j = 0; j < theta.size(); ++j) {
        m[j] = kBeta1 * m[j] + (1.0 - kBeta1) * g[j];
        v[j] = kBeta2 * v[j] + (1.0 - kBeta2) * g[j] * g[j];
        theta[j] -= lr_ * (m[j] / c1) / (std::sqrt(v[j] / c2) + kEps);
      }
    }
  }

 private:
  static constexpr double kBeta1 = 0.9;
  static constexpr double kBeta2 = 0.999;
  static constexpr double kEps = 1e-8;
  double lr_;
  uint64_t t_ = 0;
  std::vector<Vector> m_;
  std::vector<Vector> v_;
};

inline void zero_params(ModelParams& p) {
  for (const auto& block : param_blocks(p)) {
    std::fill(block.values->begin(), block.values->end(), 0.0);
  }
}

}  // namespace detail

struct TrainResult {
  ModelParams params;
  // Mean hinge loss per anchor-negative term, one entry per epoch.
  std::vector<double> epoch_losses;
};

// Single-threaded minibatch training with in-batch negatives. Fully
// deterministic given (seed, data, config, dims): initialization, epoch
// shuffles and negative draws all come from sub-streams of the seed.
inline TrainResult train(const std::vector<SynonymPair>& pairs,
                         const TrainConfig& config, const ModelDims& dims) {
  config.validate();
  dims.validate();
  if (pairs.size() < config.batch_size) {
    throw DataError("train: need at least batch_size (" +
                    std::to_string(config.batch_size) + ") pairs, have " +
                    std::to_string(pairs.size()));
  }

  TrainResult result;
  result.params = init_model(dims, derive_seed(config.seed, 1));
  ModelParams grads = zero_like(result.params);
  detail::AdamOptimizer adam(result.params, config.learning_rate);

  std::vector<size_t> order(pairs.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;

  for (uint32_t epoch = 0; epoch < config.epochs; ++epoch) {
    Rng shuffle_rng(derive_seed(config.seed, 100 + epoch));
    Rng negative_rng(derive_seed(config.seed, 10000 + epoch));
    deterministic_shuffle(order, shuffle_rng);

    double epoch_total = 0.0;
    size_t epoch_terms = 0;
    for (size_t start = 0; start < order.size();
         start += config.batch_size) {
      const size_t end = std::min(order.size(), start + config.batch_size);
      std::vector<size_t> batch_indices(order.begin() + static_cast<long>(start),
                                        order.begin() + static_cast<long>(end));
      if (batch_indices.size() < 2) continue;  // no in-batch negatives
      auto batch = detail::build_batch(pairs, batch_indices, dims.buckets,
                                       config.negatives, negative_rng);
      const size_t terms = batch.hinge_terms();
      if (terms == 0) continue;
      detail::zero_params(grads);
      const double loss =
          detail::batch_loss(result.params, batch, config.margin, &grads);
      if (!std::isfinite(loss)) {
        throw std::runtime_error(
            "train: non-finite loss at epoch " + std::to_string(epoch) +
            ", batch starting at " + std::to_string(start));
      }
      epoch_total += loss * static_cast<double>(terms);
      epoch_terms += terms;
      adam.step(result.params, grads);
    }
    result.epoch_losses.push_back(
        epoch_terms == 0 ? 0.0
                         : epoch_total / static_cast<double>(epoch_terms));
  }
  return result;
}

// Compares analytic gradients of the batch loss against central finite
// differences over every parameter. Returns the maximum relative error;
// elements where both gradients are below 1e-7 are treated as matching.
inline double gradient_check(const ModelParams& params,
                             const std::vector<SynonymPair>& pairs,
                             double epsilon, uint64_t seed = 7) {
  if (epsilon < 1e-7 || epsilon > 1e-3) {
    throw std::invalid_argument("gradient_check: epsilon out of [1e-7, 1e-3]");
  }
  std::vector<size_t> indices(pairs.size());
  for (size_t i = 0; i < indices.size(); ++i) indices[i] = i;
  Rng rng(derive_seed(seed, 0xfd));
  auto batch = detail::build_batch(pairs, indices, params.dims.buckets, 2, rng);
  if (batch.hinge_terms() == 0) {
    throw std::invalid_argument("gradient_check: batch produced no loss terms");
  }

  ModelParams work = params;
  ModelParams analytic = zero_like(params);
  detail::batch_loss(work, batch, /*margin=*/0.4, &analytic);

  double max_rel = 0.0;
  auto wb = param_blocks(work);
  auto ab = param_blocks(analytic);
  for (size_t i = 0; i < wb.size(); ++i) {
    Vector& theta = *wb[i].values;
    const Vector& g = *ab[i].values;
    for (size_t j = 0; j < theta.size(); ++j) {
      const double saved = theta[j];
      theta[j] = saved + epsilon;
      const double up = detail::batch_loss(work, batch, 0.4, nullptr);
      theta[j] = saved - epsilon;
      const double down = detail::batch_loss(work, batch, 0.4, nullptr);
      theta[j] = saved;
      const double numeric = (up - down) / (2.0 * epsilon);
      const double denom = std::max(std::abs(g[j]), std::abs(numeric));
      if (denom < 1e-7) continue;
      max_rel = std::max(max_rel, std::abs(g[j] - numeric) / denom);
    }
  }
  return max_rel;
}

}  // namespace cem
