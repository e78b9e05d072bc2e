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
#include "math/ops.hpp"

#include <cmath>
#include <string>

#include "common/error.hpp"

namespace clicksim::math {

namespace {

constexpr double kBceEps = 1e-7;
constexpr double kLayerNormEps = 1e-5;

void require_same_shape(const Tensor& a, const Tensor& b, const char* op) {
  if (a.rows() != b.rows())
    throw DimensionError(std::string(op) + ": rows mismatch, " +
                         std::to_string(a.rows()) + " vs " +
                         std::to_string(b.rows()));
  if (a.cols() != b.cols())
    throw DimensionError(std::string(op) + ": cols mismatch, " +
                         std::to_string(a.cols()) + " vs " +
                         std::to_string(b.cols()));
}

// C[m, n] += A[m, k] @ B[k, n]
void gemm_nn_acc(const double* a, const double* b, double* c, std::size_t m,
                 std::size_t k, std::size_t n) {
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t l = 0; l < k; ++l) {
      const double av = a[i * k + l];
      if (av == 0.0) continue;
      const double* brow = b + l * n;
      double* crow = c + i * n;
      for (std::size_t j = 0; j < n; ++j) crow[j] += av * brow[j];
    }
  }
}

// C[m, n] += A[m, k] @ B[n, k]^T
void gemm_nt_acc(const double* a, const double* b, double* c, std::size_t m,
                 std::size_t k, std::size_t n) {
  for (std::size_t i = 0; i < m; ++i) {
    const double* arow = a + i * k;
    for (std::size_t j = 0; j < n; ++j) {
      const double* brow = b + j * k;
      double s = 0.0;
      for (std::size_t l = 0; l < k; ++l) s += arow[l] * brow[l];
      c[i * n + j] += s;
    }
  }
}

// C[m, n] += A[k, m]^T @ B[k, n]
void gemm_tn_acc(const double* a, const double* b, double* c, std::size_t m,
                 std::size_t k, std::size_t n) {
  for (std::size_t l = 0; l < k; ++l) {
    const double* arow = a + l * m;
    const double* brow = b + l * n;
    for (std::size_t i = 0; i < m; ++i) {
      const double av = arow[i];
      if (av == 0.0) continue;
      double* crow = c + i * n;
      for (std::size_t j = 0; j < n; ++j) crow[j] += av * brow[j];
    }
  }
}

}  // namespace

Tensor add(const Tensor& a, const Tensor& b) {
  require_same_shape(a, b, "add");
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = a.values()[i] + b.values()[i];
  auto pa = a.node();
  auto pb = b.node();
  return make_op_node("add", a.rows(), a.cols(), std::move(out), {pa, pb},
                      [pa, pb](Node& self) {
                        for (std::size_t i = 0; i < self.grad.size(); ++i) {
                          accumulate_grad(*pa, i, self.grad[i]);
                          accumulate_grad(*pb, i, self.grad[i]);
                        }
                      });
}

Tensor sub(const Tensor& a, const Tensor& b) {
  require_same_shape(a, b, "sub");
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = a.values()[i] - b.values()[i];
  auto pa = a.node();
  auto pb = b.node();
  return make_op_node("sub", a.rows(), a.cols(), std::move(out), {pa, pb},
                      [pa, pb](Node& self) {
                        for (std::size_t i = 0; i < self.grad.size(); ++i) {
                          accumulate_grad(*pa, i, self.grad[i]);
                          accumulate_grad(*pb, i, -self.grad[i]);
                        }
                      });
}

Tensor mul(const Tensor& a, const Tensor& b) {
  require_same_shape(a, b, "mul");
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = a.values()[i] * b.values()[i];
  auto pa = a.node();
  auto pb = b.node();
  return make_op_node("mul", a.rows(), a.cols(), std::move(out), {pa, pb},
                      [pa, pb](Node& self) {
                        for (std::size_t i = 0; i < self.grad.size(); ++i) {
                          accumulate_grad(*pa, i, self.grad[i] * pb->values[i]);
                          accumulate_grad(*pb, i, self.grad[i] * pa->values[i]);
                        }
                      });
}

Tensor add_rowvec(const Tensor& a, const Tensor& v) {
  if (v.rows() != 1 || v.cols() != a.cols())
    throw DimensionError("add_rowvec: vector is [" + std::to_string(v.rows()) +
                         ", " + std::to_string(v.cols()) + "], expected [1, " +
                         std::to_string(a.cols()) + "]");
  const std::size_t m = a.rows(), n = a.cols();
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      out[i * n + j] = a.values()[i * n + j] + v.values()[j];
  auto pa = a.node();
  auto pv = v.node();
  return make_op_node("add_rowvec", m, n, std::move(out), {pa, pv},
                      [pa, pv, m, n](Node& self) {
                        for (std::size_t i = 0; i < m; ++i)
                          for (std::size_t j = 0; j < n; ++j) {
                            const double g = self.grad[i * n + j];
                            accumulate_grad(*pa, i * n + j, g);
                            accumulate_grad(*pv, j, g);
                          }
                      });
}

Tensor mul_colvec(const Tensor& a, const Tensor& c) {
  if (c.cols() != 1 || c.rows() != a.rows())
    throw DimensionError("mul_colvec: vector is [" + std::to_string(c.rows()) +
                         ", " + std::to_string(c.cols()) + "], expected [" +
                         std::to_string(a.rows()) + ", 1]");
  const std::size_t m = a.rows(), n = a.cols();
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      out[i * n + j] = a.values()[i * n + j] * c.values()[i];
  auto pa = a.node();
  auto pc = c.node();
  return make_op_node(
      "mul_colvec", m, n, std::move(out), {pa, pc}, [pa, pc, m, n](Node& self) {
        for (std::size_t i = 0; i < m; ++i) {
          double row_dot = 0.0;
          for (std::size_t j = 0; j < n; ++j) {
            const double g = self.grad[i * n + j];
            accumulate_grad(*pa, i * n + j, g * pc->values[i]);
            row_dot += g * pa->values[i * n + j];
          }
          accumulate_grad(*pc, i, row_dot);
        }
      });
}

Tensor affine(const Tensor& a, double k, double b) {
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = k * a.values()[i] + b;
  auto pa = a.node();
  return make_op_node("affine", a.rows(), a.cols(), std::move(out), {pa},
                      [pa, k](Node& self) {
                        for (std::size_t i = 0; i < self.grad.size(); ++i)
                          accumulate_grad(*pa, i, k * self.grad[i]);
                      });
}

Tensor matmul(const Tensor& a, const Tensor& b) {
  if (a.cols() != b.rows())
    throw DimensionError("matmul: inner dimensions " +
                         std::to_string(a.cols()) + " vs " +
                         std::to_string(b.rows()));
  const std::size_t m = a.rows(), k = a.cols(), n = b.cols();
  std::vector<double> out(m * n, 0.0);
  gemm_nn_acc(a.values().data(), b.values().data(), out.data(), m, k, n);
  auto pa = a.node();
  auto pb = b.node();
  return make_op_node(
      "matmul", m, n, std::move(out), {pa, pb}, [pa, pb, m, k, n](Node& self) {
        if (pa->requires_grad)
          gemm_nt_acc(self.grad.data(), pb->values.data(),
                      pa->grad_buffer().data(), m, n, k);
        if (pb->requires_grad)
          gemm_tn_acc(pa->values.data(), self.grad.data(),
                      pb->grad_buffer().data(), k, m, n);
      });
}

Tensor matmul_nt(const Tensor& a, const Tensor& b) {
  if (a.cols() != b.cols())
    throw DimensionError("matmul_nt: inner dimensions " +
                         std::to_string(a.cols()) + " vs " +
                         std::to_string(b.cols()));
  const std::size_t m = a.rows(), k = a.cols(), n = b.rows();
  std::vector<double> out(m * n, 0.0);
  gemm_nt_acc(a.values().data(), b.values().data(), out.data(), m, k, n);
  auto pa = a.node();
  auto pb = b.node();
  return make_op_node(
      "matmul_nt", m, n, std::move(out), {pa, pb},
      [pa, pb, m, k, n](Node& self) {
        // c = a b^T: da += dc @ b; db += dc^T @ a
        if (pa->requires_grad)
          gemm_nn_acc(self.grad.data(), pb->values.data(),
                      pa->grad_buffer().data(), m, n, k);
        if (pb->requires_grad)
          gemm_tn_acc(self.grad.data(), pa->values.data(),
                      pb->grad_buffer().data(), n, m, k);
      });
}

Tensor sigmoid(const Tensor& x) {
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double v = x.values()[i];
    out[i] = v >= 0.0 ? 1.0 / (1.0 + std::exp(-v))
                      : std::exp(v) / (1.0 + std::exp(v));
  }
  auto px = x.node();
  auto vals = out;  // saved activations for the backward pass
  return make_op_node("sigmoid", x.rows(), x.cols(), std::move(out), {px},
                      [px, vals = std::move(vals)](Node& self) {
                        for (std::size_t i = 0; i < self.grad.size(); ++i)
                          accumulate_grad(
                              *px, i, self.grad[i] * vals[i] * (1.0 - vals[i]));
                      });
}

Tensor tanh_of(const Tensor& x) {
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::tanh(x.values()[i]);
  auto px = x.node();
  auto vals = out;
  return make_op_node("tanh", x.rows(), x.cols(), std::move(out), {px},
                      [px, vals = std::move(vals)](Node& self) {
                        for (std::size_t i = 0; i < self.grad.size(); ++i)
                          accumulate_grad(*px, i,
                                          self.grad[i] * (1.0 - vals[i] * vals[i]));
                      });
}

Tensor gelu(const Tensor& x) {
  constexpr double kC = 0.7978845608028654;  // sqrt(2 / pi)
  constexpr double kA = 0.044715;
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double v = x.values()[i];
    out[i] = 0.5 * v * (1.0 + std::tanh(kC * (v + kA * v * v * v)));
  }
  auto px = x.node();
  return make_op_node(
      "gelu", x.rows(), x.cols(), std::move(out), {px}, [px](Node& self) {
        for (std::size_t i = 0; i < self.grad.size(); ++i) {
          const double v = px->values[i];
          const double u = kC * (v + kA * v * v * v);
          const double t = std::tanh(u);
          const double du = kC * (1.0 + 3.0 * kA * v * v);
          const double d = 0.5 * (1.0 + t) + 0.5 * v * (1.0 - t * t) * du;
          accumulate_grad(*px, i, self.grad[i] * d);
        }
      });
}

Tensor log_of(const Tensor& x) {
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::log(x.values()[i]);
  auto px = x.node();
  return make_op_node("log", x.rows(), x.cols(), std::move(out), {px},
                      [px](Node& self) {
                        for (std::size_t i = 0; i < self.grad.size(); ++i)
                          accumulate_grad(*px, i, self.grad[i] / px->values[i]);
                      });
}

Tensor softmax_rows(const Tensor& x, const std::vector<std::uint8_t>& mask) {
  if (mask.size() != x.size())
    throw DimensionError("softmax_rows: mask size " +
                         std::to_string(mask.size()) + " vs tensor size " +
                         std::to_string(x.size()));
  const std::size_t m = x.rows(), n = x.cols();
  std::vector<double> out(x.size(), 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    double mx = -HUGE_VAL;
    bool any = false;
    for (std::size_t j = 0; j < n; ++j)
      if (mask[i * n + j]) {
        any = true;
        mx = std::max(mx, x.values()[i * n + j]);
      }
    if (!any) continue;
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      if (mask[i * n + j]) {
        out[i * n + j] = std::exp(x.values()[i * n + j] - mx);
        sum += out[i * n + j];
      }
    for (std::size_t j = 0; j < n; ++j)
      if (mask[i * n + j]) out[i * n + j] /= sum;
  }
  auto px = x.node();
  auto vals = out;
  return make_op_node(
      "softmax_rows", m, n, std::move(out), {px},
      [px, vals = std::move(vals), mask, m, n](Node& self) {
        for (std::size_t i = 0; i < m; ++i) {
          double dot = 0.0;
          for (std::size_t j = 0; j < n; ++j)
            if (mask[i * n + j]) dot += self.grad[i * n + j] * vals[i * n + j];
          for (std::size_t j = 0; j < n; ++j)
            if (mask[i * n + j])
              accumulate_grad(*px, i * n + j,
                              vals[i * n + j] * (self.grad[i * n + j] - dot));
        }
      });
}

Tensor layer_norm(const Tensor& x, const Tensor& gain, const Tensor& bias) {
  if (gain.rows() != 1 || gain.cols() != x.cols() || bias.rows() != 1 ||
      bias.cols() != x.cols())
    throw DimensionError("layer_norm: gain/bias must be [1, " +
                         std::to_string(x.cols()) + "]");
  const std::size_t m = x.rows(), n = x.cols();
  std::vector<double> out(x.size());
  std::vector<double> xhat(x.size());
  std::vector<double> inv_std(m);
  for (std::size_t i = 0; i < m; ++i) {
    double mean = 0.0;
    for (std::size_t j = 0; j < n; ++j) mean += x.values()[i * n + j];
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double d = x.values()[i * n + j] - mean;
      var += d * d;
    }
    var /= static_cast<double>(n);
    inv_std[i] = 1.0 / std::sqrt(var + kLayerNormEps);
    for (std::size_t j = 0; j < n; ++j) {
      xhat[i * n + j] = (x.values()[i * n + j] - mean) * inv_std[i];
      out[i * n + j] = gain.values()[j] * xhat[i * n + j] + bias.values()[j];
    }
  }
  auto px = x.node();
  auto pg = gain.node();
  auto pb = bias.node();
  return make_op_node(
      "layer_norm", m, n, std::move(out), {px, pg, pb},
      [px, pg, pb, xhat = std::move(xhat), inv_std = std::move(inv_std), m,
       n](Node& self) {
        for (std::size_t i = 0; i < m; ++i) {
          double mean_dxhat = 0.0, mean_dxhat_xhat = 0.0;
          for (std::size_t j = 0; j < n; ++j) {
            const double dy = self.grad[i * n + j];
            const double dxh = dy * pg->values[j];
            mean_dxhat += dxh;
            mean_dxhat_xhat += dxh * xhat[i * n + j];
            accumulate_grad(*pg, j, dy * xhat[i * n + j]);
            accumulate_grad(*pb, j, dy);
          }
          mean_dxhat /= static_cast<double>(n);
          mean_dxhat_xhat /= static_cast<double>(n);
          for (std::size_t j = 0; j < n; ++j) {
            const double dxh = self.grad[i * n + j] * pg->values[j];
            accumulate_grad(*px, i * n + j,
                            inv_std[i] * (dxh - mean_dxhat -
                                          xhat[i * n + j] * mean_dxhat_xhat));
          }
        }
      });
}

Tensor embedding_rows(const Tensor& table, const std::vector<std::size_t>& ids) {
  const std::size_t d = table.cols();
  std::vector<double> out(ids.size() * d);
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (ids[i] >= table.rows())
      throw DataError("embedding_lookup: id " + std::to_string(ids[i]) +
                      " out of range for table with " +
                      std::to_string(table.rows()) + " rows");
    for (std::size_t j = 0; j < d; ++j)
      out[i * d + j] = table.values()[ids[i] * d + j];
  }
  auto pt = table.node();
  return make_op_node("embedding_lookup", ids.size(), d, std::move(out), {pt},
                      [pt, ids, d](Node& self) {
                        for (std::size_t i = 0; i < ids.size(); ++i)
                          for (std::size_t j = 0; j < d; ++j)
                            accumulate_grad(*pt, ids[i] * d + j,
                                            self.grad[i * d + j]);
                      });
}

Tensor select_rows(const Tensor& x, const std::vector<std::size_t>& idx) {
  const std::size_t n = x.cols();
  std::vector<double> out(idx.size() * n);
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (idx[i] >= x.rows())
      throw DimensionError("select_rows: index " + std::to_string(idx[i]) +
                           " out of range for " + std::to_string(x.rows()) +
                           " rows");
    for (std::size_t j = 0; j < n; ++j)
      out[i * n + j] = x.values()[idx[i] * n + j];
  }
  auto px = x.node();
  return make_op_node("select_rows", idx.size(), n, std::move(out), {px},
                      [px, idx, n](Node& self) {
                        for (std::size_t i = 0; i < idx.size(); ++i)
                          for (std::size_t j = 0; j < n; ++j)
                            accumulate_grad(*px, idx[i] * n + j,
                                            self.grad[i * n + j]);
                      });
}

Tensor slice_cols(const Tensor& x, std::size_t c0, std::size_t c1) {
  if (c0 >= c1 || c1 > x.cols())
    throw DimensionError("slice_cols: invalid range [" + std::to_string(c0) +
                         ", " + std::to_string(c1) + ") for " +
                         std::to_string(x.cols()) + " cols");
  const std::size_t m = x.rows(), n = x.cols(), w = c1 - c0;
  std::vector<double> out(m * w);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < w; ++j)
      out[i * w + j] = x.values()[i * n + c0 + j];
  auto px = x.node();
  return make_op_node("slice_cols", m, w, std::move(out), {px},
                      [px, m, n, w, c0](Node& self) {
                        for (std::size_t i = 0; i < m; ++i)
                          for (std::size_t j = 0; j < w; ++j)
                            accumulate_grad(*px, i * n + c0 + j,
                                            self.grad[i * w + j]);
                      });
}

Tensor concat_rows(const std::vector<Tensor>& parts) {
  if (parts.empty()) throw DimensionError("concat_rows: no parts");
  const std::size_t n = parts[0].cols();
  std::size_t m = 0;
  for (const auto& p : parts) {
    if (p.cols() != n)
      throw DimensionError("concat_rows: cols mismatch, " +
                           std::to_string(p.cols()) + " vs " +
                           std::to_string(n));
    m += p.rows();
  }
  std::vector<double> out;
  out.reserve(m * n);
  std::vector<std::shared_ptr<Node>> nodes;
  std::vector<std::size_t> offsets;
  std::size_t off = 0;
  for (const auto& p : parts) {
    out.insert(out.end(), p.values().begin(), p.values().end());
    nodes.push_back(p.node());
    offsets.push_back(off);
    off += p.size();
  }
  auto parents = nodes;
  return make_op_node("concat_rows", m, n, std::move(out), std::move(parents),
                      [nodes, offsets](Node& self) {
                        for (std::size_t p = 0; p < nodes.size(); ++p)
                          for (std::size_t i = 0; i < nodes[p]->size(); ++i)
                            accumulate_grad(*nodes[p], i,
                                            self.grad[offsets[p] + i]);
                      });
}

Tensor concat_cols(const std::vector<Tensor>& parts) {
  if (parts.empty()) throw DimensionError("concat_cols: no parts");
  const std::size_t m = parts[0].rows();
  std::size_t n = 0;
  for (const auto& p : parts) {
    if (p.rows() != m)
      throw DimensionError("concat_cols: rows mismatch, " +
                           std::to_string(p.rows()) + " vs " +
                           std::to_string(m));
    n += p.cols();
  }
  std::vector<double> out(m * n);
  std::vector<std::shared_ptr<Node>> nodes;
  std::vector<std::size_t> col_offsets;
  std::size_t coff = 0;
  for (const auto& p : parts) {
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < p.cols(); ++j)
        out[i * n + coff + j] = p.values()[i * p.cols() + j];
    nodes.push_back(p.node());
    col_offsets.push_back(coff);
    coff += p.cols();
  }
  auto parents = nodes;
  return make_op_node(
      "concat_cols", m, n, std::move(out), std::move(parents),
      [nodes, col_offsets, m, n](Node& self) {
        for (std::size_t p = 0; p < nodes.size(); ++p) {
          const std::size_t pc = nodes[p]->cols;
          for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < pc; ++j)
              accumulate_grad(*nodes[p], i * pc + j,
                              self.grad[i * n + col_offsets[p] + j]);
        }
      });
}

Tensor mean_rows(const Tensor& x) {
  const std::size_t m = x.rows(), n = x.cols();
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) out[j] += x.values()[i * n + j];
  for (std::size_t j = 0; j < n; ++j) out[j] /= static_cast<double>(m);
  auto px = x.node();
  return make_op_node("mean_rows", 1, n, std::move(out), {px},
                      [px, m, n](Node& self) {
                        const double inv = 1.0 / static_cast<double>(m);
                        for (std::size_t i = 0; i < m; ++i)
                          for (std::size_t j = 0; j < n; ++j)
                            accumulate_grad(*px, i * n + j, self.grad[j] * inv);
                      });
}

Tensor sum_all(const Tensor& x) {
  double s = 0.0;
  for (double v : x.values()) s += v;
  auto px = x.node();
  return make_op_node("sum_all", 1, 1, {s}, {px}, [px](Node& self) {
    for (std::size_t i = 0; i < px->size(); ++i)
      accumulate_grad(*px, i, self.grad[0]);
  });
}

Tensor mean_all(const Tensor& x) {
  return affine(sum_all(x), 1.0 / static_cast<double>(x.size()));
}

Tensor pick(const Tensor& x, std::size_t i, std::size_t j) {
  if (i >= x.rows() || j >= x.cols())
    throw DimensionError("pick: index (" + std::to_string(i) + ", " +
                         std::to_string(j) + ") out of range");
  auto px = x.node();
  const std::size_t flat = i * x.cols() + j;
  return make_op_node("pick", 1, 1, {x.values()[flat]}, {px},
                      [px, flat](Node& self) {
                        accumulate_grad(*px, flat, self.grad[0]);
                      });
}

Tensor bce_masked(const Tensor& p, const std::vector<double>& targets,
                  const std::vector<std::uint8_t>& mask) {
  if (targets.size() != p.size() || mask.size() != p.size())
    throw DimensionError("bce: targets/mask size must match tensor size " +
                         std::to_string(p.size()));
  std::size_t count = 0;
  double loss = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!mask[i]) continue;
    ++count;
    const double ph = std::min(std::max(p.values()[i], kBceEps), 1.0 - kBceEps);
    loss -= targets[i] * std::log(ph) + (1.0 - targets[i]) * std::log(1.0 - ph);
  }
  if (count == 0) throw DataError("bce: all positions masked (empty batch)");
  loss /= static_cast<double>(count);
  auto pp = p.node();
  return make_op_node(
      "bce", 1, 1, {loss}, {pp}, [pp, targets, mask, count](Node& self) {
        const double scale = self.grad[0] / static_cast<double>(count);
        for (std::size_t i = 0; i < pp->size(); ++i) {
          if (!mask[i]) continue;
          const double raw = pp->values[i];
          if (raw <= kBceEps || raw >= 1.0 - kBceEps) continue;  // clamp is flat
          accumulate_grad(*pp, i, scale * (raw - targets[i]) / (raw * (1.0 - raw)));
        }
      });
}

Tensor straight_through_hard(const Tensor& soft) {
  std::vector<double> out(soft.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = soft.values()[i] > 0.5 ? 1.0 : 0.0;
  auto ps = soft.node();
  return make_op_node("straight_through", soft.rows(), soft.cols(),
                      std::move(out), {ps}, [ps](Node& self) {
                        for (std::size_t i = 0; i < self.grad.size(); ++i)
                          accumulate_grad(*ps, i, self.grad[i]);
                      });
}

}  // namespace clicksim::math
