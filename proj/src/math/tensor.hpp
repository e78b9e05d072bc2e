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
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace clicksim::math {

// One node of a dynamically built computation graph. Values are 64-bit floats
// in row-major order; every tensor is a [rows, cols] matrix (scalars are
// [1, 1], vectors [1, n] or [n, 1]).
struct Node {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;
  bool requires_grad = false;
  // Gradient accumulator. Empty means "absent"; repeated backward passes
  // without a reset accumulate additively.
  std::vector<double> grad;
  std::vector<std::shared_ptr<Node>> parents;
  // Reads this node's grad and accumulates into the parents' grads.
  std::function<void(Node&)> backward;
  const char* op = "leaf";

  std::size_t size() const { return rows * cols; }
  // Returns the grad buffer, allocating zeros on first touch.
  std::vector<double>& grad_buffer();
};

// Value-semantic handle to a graph node. Copies share the node.
class Tensor {
 public:
  Tensor() = default;

  static Tensor zeros(std::size_t rows, std::size_t cols,
                      bool requires_grad = false);
  static Tensor full(std::size_t rows, std::size_t cols, double value);
  static Tensor constant(std::size_t rows, std::size_t cols,
                         std::vector<double> values);
  static Tensor param(std::size_t rows, std::size_t cols,
                      std::vector<double> values);
  static Tensor scalar(double value);

  bool defined() const { return node_ != nullptr; }
  std::size_t rows() const { return node_->rows; }
  std::size_t cols() const { return node_->cols; }
  std::size_t size() const { return node_->size(); }

  double at(std::size_t i, std::size_t j) const {
    return node_->values[i * node_->cols + j];
  }
  // Value of a [1, 1] tensor.
  double scalar_value() const;

  const std::vector<double>& values() const { return node_->values; }
  // Direct access for leaf mutation (optimizer steps, table updates). Any
  // previously built graph referring to this tensor is stale afterwards.
  std::vector<double>& mutable_values() { return node_->values; }

  bool requires_grad() const { return node_->requires_grad; }
  bool has_grad() const { return !node_->grad.empty(); }
  const std::vector<double>& grad() const { return node_->grad; }
  // Drops the accumulator entirely; grad is "absent" again.
  void zero_grad() { node_->grad.clear(); }

  // Reverse-mode pass from this scalar. Gradients accumulate into every
  // requires_grad tensor on the path.
  void backward() const;

  const std::shared_ptr<Node>& node() const { return node_; }
  explicit Tensor(std::shared_ptr<Node> node) : node_(std::move(node)) {}

 private:
  std::shared_ptr<Node> node_;
};

// Creates a result node wired to its parents; used by every op.
Tensor make_op_node(const char* op, std::size_t rows, std::size_t cols,
                    std::vector<double> values,
                    std::vector<std::shared_ptr<Node>> parents,
                    std::function<void(Node&)> backward);

// Throws NumericError naming `op` if any value is NaN or infinite.
void check_finite(const std::vector<double>& values, const char* op);

// Accumulates `delta` into `parent`'s grad if it participates in the pass.
inline void accumulate_grad(Node& parent, std::size_t index, double delta) {
  if (!parent.requires_grad) return;
  parent.grad_buffer()[index] += delta;
}

}  // namespace clicksim::math
