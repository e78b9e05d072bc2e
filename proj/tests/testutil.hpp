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

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "math/tensor.hpp"

namespace clicksim::testing {

inline double rel_err(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1.0});
}

// Central finite-difference gradient check. `build_loss` must construct a
// fresh graph from the current leaf values and return the scalar loss. The
// check is independent of the reverse-mode path: it only reruns the forward
// computation at perturbed leaf values.
struct GradCheckResult {
  double max_rel_err = 0.0;
  std::string worst;  // "<leaf_index>[i]" of the worst entry
};

inline GradCheckResult grad_check(
    const std::function<clicksim::math::Tensor()>& build_loss,
    std::vector<clicksim::math::Tensor> leaves, double step = 1e-5) {
  using clicksim::math::Tensor;
  for (auto& leaf : leaves) leaf.zero_grad();
  Tensor loss = build_loss();
  loss.backward();

  GradCheckResult result;
  for (std::size_t li = 0; li < leaves.size(); ++li) {
    auto& leaf = leaves[li];
    std::vector<double> analytic(leaf.size(), 0.0);
    if (leaf.has_grad()) analytic = leaf.grad();
    for (std::size_t i = 0; i < leaf.size(); ++i) {
      const double saved = leaf.values()[i];
      leaf.mutable_values()[i] = saved + step;
      const double up = build_loss().scalar_value();
      leaf.mutable_values()[i] = saved - step;
      const double down = build_loss().scalar_value();
      leaf.mutable_values()[i] = saved;
      const double fd = (up - down) / (2.0 * step);
      const double err = rel_err(analytic[i], fd);
      if (err > result.max_rel_err) {
        result.max_rel_err = err;
        result.worst =
            "leaf " + std::to_string(li) + "[" + std::to_string(i) + "]";
      }
    }
  }
  return result;
}

}  // namespace clicksim::testing
