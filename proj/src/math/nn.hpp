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
#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "common/rng.hpp"
#include "math/ops.hpp"
#include "math/tensor.hpp"

namespace clicksim::math {

// Named collection of trainable tensors. Ordered by name so that iteration
// (and therefore optimization and checkpointing) is deterministic.
class ParamStore {
 public:
  Tensor& add(const std::string& name, Tensor t);
  Tensor& get(const std::string& name);
  const Tensor& get(const std::string& name) const;
  bool has(const std::string& name) const { return params_.count(name) > 0; }

  std::size_t total_values() const;
  void zero_grads();

  auto begin() { return params_.begin(); }
  auto end() { return params_.end(); }
  auto begin() const { return params_.begin(); }
  auto end() const { return params_.end(); }
  std::size_t size() const { return params_.size(); }

 private:
  std::map<std::string, Tensor> params_;
};

// Every parameter draws from a stream derived from (seed, name), so adding
// or removing one parameter never shifts another's initialization.
Tensor glorot_param(std::uint64_t seed, const std::string& name,
                    std::size_t rows, std::size_t cols);
Tensor uniform_param(std::uint64_t seed, const std::string& name,
                     std::size_t rows, std::size_t cols, double lo, double hi);
Tensor zeros_param(std::size_t rows, std::size_t cols);
Tensor const_param(std::size_t rows, std::size_t cols, double value);

// The six weight matrices and three biases of a gated recurrent unit.
struct GruParams {
  Tensor wxz, whz, bz;
  Tensor wxr, whr, br;
  Tensor wxn, whn, bn;

  static GruParams create(std::uint64_t seed, const std::string& prefix,
                          std::size_t d_in, std::size_t d_hidden,
                          ParamStore& store);
  static GruParams from_store(const std::string& prefix, ParamStore& store);
  std::size_t input_dim() const { return wxz.rows(); }
  std::size_t hidden_dim() const { return whz.rows(); }
};

// h' = (1 - z) * n + z * h with update gate z, reset gate r and candidate
// n = tanh(x Wxn + r * (h Whn) + bn).
Tensor gru_cell(const Tensor& x, const Tensor& h, const GruParams& p);

struct AttentionParams {
  Tensor wq, bq, wk, bk, wv, bv, wo, bo;

  static AttentionParams create(std::uint64_t seed, const std::string& prefix,
                                std::size_t d, ParamStore& store);
  static AttentionParams from_store(const std::string& prefix,
                                    ParamStore& store);
};

// Scaled dot-product attention over `heads` heads. q, k, v hold a batch of
// `batch` sequences of length `len` flattened to [batch * len, d]. The mask
// is [len, len] row-major, shared across the batch; mask[i * len + j] == 0
// forbids query position i from attending to key position j. Query positions
// whose mask row is entirely zero yield zero output rows.
Tensor multi_head_attention(const Tensor& q, const Tensor& k, const Tensor& v,
                            std::size_t batch, std::size_t len,
                            const std::vector<std::uint8_t>& mask,
                            std::size_t heads, const AttentionParams& params);

struct EncoderLayerParams {
  AttentionParams attn;
  Tensor ln1_g, ln1_b;
  Tensor ff_w1, ff_b1, ff_w2, ff_b2;
  Tensor ln2_g, ln2_b;

  static EncoderLayerParams create(std::uint64_t seed,
                                   const std::string& prefix, std::size_t d,
                                   std::size_t d_ff, ParamStore& store);
  static EncoderLayerParams from_store(const std::string& prefix,
                                       ParamStore& store);
};

struct EncoderParams {
  std::vector<EncoderLayerParams> layers;
  Tensor ln_final_g, ln_final_b;

  static EncoderParams create(std::uint64_t seed, const std::string& prefix,
                              std::size_t n_layers, std::size_t d,
                              std::size_t d_ff, ParamStore& store);
  static EncoderParams from_store(const std::string& prefix,
                                  std::size_t n_layers, ParamStore& store);
};

// Pre-norm Transformer encoder stack with GELU feed-forward blocks.
// `drop_rng` may be null; dropout applies only when training is true.
Tensor encoder_forward(const Tensor& tokens, std::size_t batch,
                       std::size_t len, const std::vector<std::uint8_t>& mask,
                       std::size_t heads, const EncoderParams& params,
                       double dropout, Rng* drop_rng, bool training);

// Inverted-dropout as multiplication by a constant {0, 1/keep} mask.
Tensor dropout(const Tensor& x, double rate, Rng* rng, bool training);

// Tempered binary reparametrization: soft = sigmoid((logit + g1 - g2) / tau)
// with g ~ Gumbel(0, 1); the difference of two Gumbel draws is logistic
// noise, so E[hard] = sigmoid(logit). hard = indicator(soft > 0.5) with the
// straight-through gradient.
std::pair<Tensor, Tensor> gumbel_sigmoid(const Tensor& logit, double tau,
                                         Rng& rng);

}  // namespace clicksim::math
