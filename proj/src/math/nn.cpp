/*
 * Copyright 2026 the clicksim authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "math/nn.hpp"

#include <cmath>

#include "common/error.hpp"

namespace clicksim::math {

Tensor& ParamStore::add(const std::string& name, Tensor t) {
  auto [it, inserted] = params_.emplace(name, std::move(t));
  if (!inserted) throw Error("parameter already registered: " + name);
  return it->second;
}

Tensor& ParamStore::get(const std::string& name) {
  auto it = params_.find(name);
  if (it == params_.end()) throw Error("unknown parameter: " + name);
  return it->second;
}

const Tensor& ParamStore::get(const std::string& name) const {
  auto it = params_.find(name);
  if (it == params_.end()) throw Error("unknown parameter: " + name);
  return it->second;
}

std::size_t ParamStore::total_values() const {
  std::size_t n = 0;
  for (const auto& [name, t] : params_) n += t.size();
  return n;
}

void ParamStore::zero_grads() {
  for (auto& [name, t] : params_) t.zero_grad();
}

Tensor glorot_param(std::uint64_t seed, const std::string& name,
                    std::size_t rows, std::size_t cols) {
  Rng rng = Rng(seed).fork("init/" + name);
  const double limit =
      std::sqrt(6.0 / static_cast<double>(rows + cols));
  std::vector<double> v(rows * cols);
  for (auto& x : v) x = (rng.uniform() * 2.0 - 1.0) * limit;
  return Tensor::param(rows, cols, std::move(v));
}

Tensor uniform_param(std::uint64_t seed, const std::string& name,
                     std::size_t rows, std::size_t cols, double lo, double hi) {
  Rng rng = Rng(seed).fork("init/" + name);
  std::vector<double> v(rows * cols);
  for (auto& x : v) x = lo + rng.uniform() * (hi - lo);
  return Tensor::param(rows, cols, std::move(v));
}

Tensor zeros_param(std::size_t rows, std::size_t cols) {
  return Tensor::param(rows, cols, std::vector<double>(rows * cols, 0.0));
}

Tensor const_param(std::size_t rows, std::size_t cols, double value) {
  return Tensor::param(rows, cols, std::vector<double>(rows * cols, value));
}

GruParams GruParams::create(std::uint64_t seed, const std::string& prefix,
                            std::size_t d_in, std::size_t d_hidden,
                            ParamStore& store) {
  GruParams p;
  p.wxz = store.add(prefix + ".wxz", glorot_param(seed, prefix + ".wxz", d_in, d_hidden));
  p.whz = store.add(prefix + ".whz", glorot_param(seed, prefix + ".whz", d_hidden, d_hidden));
  p.bz = store.add(prefix + ".bz", zeros_param(1, d_hidden));
  p.wxr = store.add(prefix + ".wxr", glorot_param(seed, prefix + ".wxr", d_in, d_hidden));
  p.whr = store.add(prefix + ".whr", glorot_param(seed, prefix + ".whr", d_hidden, d_hidden));
  p.br = store.add(prefix + ".br", zeros_param(1, d_hidden));
  p.wxn = store.add(prefix + ".wxn", glorot_param(seed, prefix + ".wxn", d_in, d_hidden));
  p.whn = store.add(prefix + ".whn", glorot_param(seed, prefix + ".whn", d_hidden, d_hidden));
  p.bn = store.add(prefix + ".bn", zeros_param(1, d_hidden));
  return p;
}

GruParams GruParams::from_store(const std::string& prefix, ParamStore& store) {
  GruParams p;
  p.wxz = store.get(prefix + ".wxz");
  p.whz = store.get(prefix + ".whz");
  p.bz = store.get(prefix + ".bz");
  p.wxr = store.get(prefix + ".wxr");
  p.whr = store.get(prefix + ".whr");
  p.br = store.get(prefix + ".br");
  p.wxn = store.get(prefix + ".wxn");
  p.whn = store.get(prefix + ".whn");
  p.bn = store.get(prefix + ".bn");
  return p;
}

Tensor gru_cell(const Tensor& x, const Tensor& h, const GruParams& p) {
  if (x.rows() != h.rows())
    throw DimensionError("gru_cell: batch axis mismatch, x has " +
                         std::to_string(x.rows()) + " rows, h has " +
                         std::to_string(h.rows()));
  if (x.cols() != p.input_dim())
    throw DimensionError("gru_cell: input axis mismatch, x has " +
                         std::to_string(x.cols()) + " cols, params expect " +
                         std::to_string(p.input_dim()));
  if (h.cols() != p.hidden_dim())
    throw DimensionError("gru_cell: hidden axis mismatch, h has " +
                         std::to_string(h.cols()) + " cols, params expect " +
                         std::to_string(p.hidden_dim()));
  Tensor z = sigmoid(add_rowvec(add(matmul(x, p.wxz), matmul(h, p.whz)), p.bz));
  Tensor r = sigmoid(add_rowvec(add(matmul(x, p.wxr), matmul(h, p.whr)), p.br));
  Tensor n = tanh_of(add_rowvec(add(matmul(x, p.wxn), mul(r, matmul(h, p.whn))), p.bn));
  Tensor ones = Tensor::full(z.rows(), z.cols(), 1.0);
  return add(mul(sub(ones, z), n), mul(z, h));
}

AttentionParams AttentionParams::create(std::uint64_t seed,
                                        const std::string& prefix,
                                        std::size_t d, ParamStore& store) {
  AttentionParams p;
  p.wq = store.add(prefix + ".wq", glorot_param(seed, prefix + ".wq", d, d));
  p.bq = store.add(prefix + ".bq", zeros_param(1, d));
  p.wk = store.add(prefix + ".wk", glorot_param(seed, prefix + ".wk", d, d));
  p.bk = store.add(prefix + ".bk", zeros_param(1, d));
  p.wv = store.add(prefix + ".wv", glorot_param(seed, prefix + ".wv", d, d));
  p.bv = store.add(prefix + ".bv", zeros_param(1, d));
  p.wo = store.add(prefix + ".wo", glorot_param(seed, prefix + ".wo", d, d));
  p.bo = store.add(prefix + ".bo", zeros_param(1, d));
  return p;
}

AttentionParams AttentionParams::from_store(const std::string& prefix,
                                            ParamStore& store) {
  AttentionParams p;
  p.wq = store.get(prefix + ".wq");
  p.bq = store.get(prefix + ".bq");
  p.wk = store.get(prefix + ".wk");
  p.bk = store.get(prefix + ".bk");
  p.wv = store.get(prefix + ".wv");
  p.bv = store.get(prefix + ".bv");
  p.wo = store.get(prefix + ".wo");
  p.bo = store.get(prefix + ".bo");
  return p;
}

Tensor multi_head_attention(const Tensor& q, const Tensor& k, const Tensor& v,
                            std::size_t batch, std::size_t len,
                            const std::vector<std::uint8_t>& mask,
                            std::size_t heads, const AttentionParams& params) {
  const std::size_t d = q.cols();
  if (heads == 0 || d % heads != 0)
    throw ConfigError("attention: model dim " + std::to_string(d) +
                      " not divisible by " + std::to_string(heads) + " heads");
  if (q.rows() != batch * len || k.rows() != batch * len ||
      v.rows() != batch * len)
    throw DimensionError("attention: token axis mismatch, expected " +
                         std::to_string(batch * len) + " rows");
  if (k.cols() != d || v.cols() != d)
    throw DimensionError("attention: feature axis mismatch across q/k/v");
  if (mask.size() != len * len)
    throw DimensionError("attention: mask must be len x len = " +
                         std::to_string(len * len));

  const std::size_t dh = d / heads;
  const double scale = 1.0 / std::sqrt(static_cast<double>(dh));

  Tensor qp = linear(q, params.wq, params.bq);
  Tensor kp = linear(k, params.wk, params.bk);
  Tensor vp = linear(v, params.wv, params.bv);

  std::vector<Tensor> per_batch;
  per_batch.reserve(batch);
  for (std::size_t b = 0; b < batch; ++b) {
    std::vector<std::size_t> rows(len);
    for (std::size_t i = 0; i < len; ++i) rows[i] = b * len + i;
    Tensor qb = select_rows(qp, rows);
    Tensor kb = select_rows(kp, rows);
    Tensor vb = select_rows(vp, rows);
    std::vector<Tensor> head_outs;
    head_outs.reserve(heads);
    for (std::size_t h = 0; h < heads; ++h) {
      Tensor qh = slice_cols(qb, h * dh, (h + 1) * dh);
      Tensor kh = slice_cols(kb, h * dh, (h + 1) * dh);
      Tensor vh = slice_cols(vb, h * dh, (h + 1) * dh);
      Tensor scores = affine(matmul_nt(qh, kh), scale);
      Tensor attn = softmax_rows(scores, mask);
      head_outs.push_back(matmul(attn, vh));
    }
    per_batch.push_back(concat_cols(head_outs));
  }
  Tensor merged = concat_rows(per_batch);
  Tensor out = linear(merged, params.wo, params.bo);

  // Fully masked-out query positions must return zeros, not the output bias.
  bool any_dead = false;
  std::vector<double> alive(batch * len, 1.0);
  for (std::size_t i = 0; i < len; ++i) {
    bool row_alive = false;
    for (std::size_t j = 0; j < len; ++j)
      if (mask[i * len + j]) {
        row_alive = true;
        break;
      }
    if (!row_alive) {
      any_dead = true;
      for (std::size_t b = 0; b < batch; ++b) alive[b * len + i] = 0.0;
    }
  }
  if (any_dead)
    out = mul_colvec(out, Tensor::constant(batch * len, 1, std::move(alive)));
  return out;
}

EncoderLayerParams EncoderLayerParams::create(std::uint64_t seed,
                                              const std::string& prefix,
                                              std::size_t d, std::size_t d_ff,
                                              ParamStore& store) {
  EncoderLayerParams p;
  p.attn = AttentionParams::create(seed, prefix + ".attn", d, store);
  p.ln1_g = store.add(prefix + ".ln1_g", const_param(1, d, 1.0));
  p.ln1_b = store.add(prefix + ".ln1_b", zeros_param(1, d));
  p.ff_w1 = store.add(prefix + ".ff_w1", glorot_param(seed, prefix + ".ff_w1", d, d_ff));
  p.ff_b1 = store.add(prefix + ".ff_b1", zeros_param(1, d_ff));
  p.ff_w2 = store.add(prefix + ".ff_w2", glorot_param(seed, prefix + ".ff_w2", d_ff, d));
  p.ff_b2 = store.add(prefix + ".ff_b2", zeros_param(1, d));
  p.ln2_g = store.add(prefix + ".ln2_g", const_param(1, d, 1.0));
  p.ln2_b = store.add(prefix + ".ln2_b", zeros_param(1, d));
  return p;
}

EncoderLayerParams EncoderLayerParams::from_store(const std::string& prefix,
                                                  ParamStore& store) {
  EncoderLayerParams p;
  p.attn = AttentionParams::from_store(prefix + ".attn", store);
  p.ln1_g = store.get(prefix + ".ln1_g");
  p.ln1_b = store.get(prefix + ".ln1_b");
  p.ff_w1 = store.get(prefix + ".ff_w1");
  p.ff_b1 = store.get(prefix + ".ff_b1");
  p.ff_w2 = store.get(prefix + ".ff_w2");
  p.ff_b2 = store.get(prefix + ".ff_b2");
  p.ln2_g = store.get(prefix + ".ln2_g");
  p.ln2_b = store.get(prefix + ".ln2_b");
  return p;
}

EncoderParams EncoderParams::create(std::uint64_t seed,
                                    const std::string& prefix,
                                    std::size_t n_layers, std::size_t d,
                                    std::size_t d_ff, ParamStore& store) {
  EncoderParams p;
  for (std::size_t l = 0; l < n_layers; ++l)
    p.layers.push_back(EncoderLayerParams::create(
        seed, prefix + ".layer" + std::to_string(l), d, d_ff, store));
  p.ln_final_g = store.add(prefix + ".lnf_g", const_param(1, d, 1.0));
  p.ln_final_b = store.add(prefix + ".lnf_b", zeros_param(1, d));
  return p;
}

EncoderParams EncoderParams::from_store(const std::string& prefix,
                                        std::size_t n_layers,
                                        ParamStore& store) {
  EncoderParams p;
  for (std::size_t l = 0; l < n_layers; ++l)
    p.layers.push_back(EncoderLayerParams::from_store(
        prefix + ".layer" + std::to_string(l), store));
  p.ln_final_g = store.get(prefix + ".lnf_g");
  p.ln_final_b = store.get(prefix + ".lnf_b");
  return p;
}

Tensor encoder_forward(const Tensor& tokens, std::size_t batch,
                       std::size_t len, const std::vector<std::uint8_t>& mask,
                       std::size_t heads, const EncoderParams& params,
                       double rate, Rng* drop_rng, bool training) {
  Tensor x = tokens;
  for (const auto& layer : params.layers) {
    Tensor normed = layer_norm(x, layer.ln1_g, layer.ln1_b);
    Tensor attn = multi_head_attention(normed, normed, normed, batch, len,
                                       mask, heads, layer.attn);
    x = add(x, dropout(attn, rate, drop_rng, training));
    Tensor normed2 = layer_norm(x, layer.ln2_g, layer.ln2_b);
    Tensor ff = linear(gelu(linear(normed2, layer.ff_w1, layer.ff_b1)),
                       layer.ff_w2, layer.ff_b2);
    x = add(x, dropout(ff, rate, drop_rng, training));
  }
  return layer_norm(x, params.ln_final_g, params.ln_final_b);
}

Tensor dropout(const Tensor& x, double rate, Rng* rng, bool training) {
  if (!training || rate <= 0.0 || rng == nullptr) return x;
  if (rate >= 1.0) throw ConfigError("dropout rate must be < 1");
  const double keep = 1.0 - rate;
  std::vector<double> m(x.size());
  for (auto& v : m) v = rng->bernoulli(keep) ? 1.0 / keep : 0.0;
  return mul(x, Tensor::constant(x.rows(), x.cols(), std::move(m)));
}

std::pair<Tensor, Tensor> gumbel_sigmoid(const Tensor& logit, double tau,
                                         Rng& rng) {
  if (!(tau > 0.0))
    throw ConfigError("gumbel_sigmoid: temperature must be positive, got " +
                      std::to_string(tau));
  std::vector<double> noise(logit.size());
  for (auto& v : noise) {
    const double g1 = rng.gumbel();
    const double g2 = rng.gumbel();
    v = g1 - g2;
  }
  Tensor noisy =
      add(logit, Tensor::constant(logit.rows(), logit.cols(), std::move(noise)));
  Tensor soft = sigmoid(affine(noisy, 1.0 / tau));
  Tensor hard = straight_through_hard(soft);
  return {soft, hard};
}

}  // namespace clicksim::math
