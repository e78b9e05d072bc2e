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

#include <cstdint>
#include <vector>

#include "math/tensor.hpp"

namespace clicksim::math {

// Elementwise; shapes must match exactly.
Tensor add(const Tensor& a, const Tensor& b);
Tensor sub(const Tensor& a, const Tensor& b);
Tensor mul(const Tensor& a, const Tensor& b);

// a[m, n] + v[1, n], broadcast down rows (bias add).
Tensor add_rowvec(const Tensor& a, const Tensor& v);
// a[m, n] * c[m, 1], broadcast across columns (per-row scaling).
Tensor mul_colvec(const Tensor& a, const Tensor& c);

// k * a + b with scalar constants.
Tensor affine(const Tensor& a, double k, double b = 0.0);

Tensor matmul(const Tensor& a, const Tensor& b);
// a[m, k] @ b[n, k]^T -> [m, n].
Tensor matmul_nt(const Tensor& a, const Tensor& b);

Tensor sigmoid(const Tensor& x);
Tensor tanh_of(const Tensor& x);
// Smooth tanh-approximation GELU.
Tensor gelu(const Tensor& x);
Tensor log_of(const Tensor& x);

// Row-wise softmax over positions where mask != 0. Rows whose mask is
// entirely zero produce all-zero outputs (and propagate no gradient).
Tensor softmax_rows(const Tensor& x, const std::vector<std::uint8_t>& mask);

// Per-row normalization followed by the learned affine (gain, bias), both
// [1, n]. A constant row normalizes to zeros before the affine.
Tensor layer_norm(const Tensor& x, const Tensor& gain, const Tensor& bias);

// Gathers rows of `table` [vocab, d] at `ids`; gradient scatter-adds back.
Tensor embedding_rows(const Tensor& table, const std::vector<std::size_t>& ids);

// Gathers rows of x at `idx` (repeats allowed; gradient accumulates).
Tensor select_rows(const Tensor& x, const std::vector<std::size_t>& idx);

// Columns [c0, c1) of x.
Tensor slice_cols(const Tensor& x, std::size_t c0, std::size_t c1);

Tensor concat_rows(const std::vector<Tensor>& parts);
Tensor concat_cols(const std::vector<Tensor>& parts);

// Mean over rows: [m, n] -> [1, n].
Tensor mean_rows(const Tensor& x);
Tensor sum_all(const Tensor& x);
Tensor mean_all(const Tensor& x);

// Single element as a [1, 1] tensor.
Tensor pick(const Tensor& x, std::size_t i, std::size_t j);

// Mean binary cross-entropy over unmasked positions; probabilities are
// clamped to [1e-7, 1 - 1e-7] before the logs. Throws DataError when the
// mask is entirely false.
Tensor bce_masked(const Tensor& p, const std::vector<double>& targets,
                  const std::vector<std::uint8_t>& mask);

// Indicator(soft > 0.5) in {0, 1} with the straight-through gradient: the
// hard sample's gradient is defined as the soft sample's.
Tensor straight_through_hard(const Tensor& soft);

// matmul(x, w) + b.
inline Tensor linear(const Tensor& x, const Tensor& w, const Tensor& b) {
  return add_rowvec(matmul(x, w), b);
}

}  // namespace clicksim::math
