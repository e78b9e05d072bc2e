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
#include "math/tensor.hpp"

#include <cmath>
#include <unordered_set>

#include "common/error.hpp"

namespace clicksim::math {

std::vector<double>& Node::grad_buffer() {
  if (grad.empty()) grad.assign(size(), 0.0);
  return grad;
}

Tensor Tensor::zeros(std::size_t rows, std::size_t cols, bool requires_grad) {
  auto node = std::make_shared<Node>();
  node->rows = rows;
  node->cols = cols;
  node->values.assign(rows * cols, 0.0);
  node->requires_grad = requires_grad;
  return Tensor(std::move(node));
}

Tensor Tensor::full(std::size_t rows, std::size_t cols, double value) {
  auto node = std::make_shared<Node>();
  node->rows = rows;
  node->cols = cols;
  node->values.assign(rows * cols, value);
  return Tensor(std::move(node));
}

Tensor Tensor::constant(std::size_t rows, std::size_t cols,
                        std::vector<double> values) {
  if (values.size() != rows * cols)
    throw DimensionError("constant: value count " +
                         std::to_string(values.size()) +
                         " does not match shape [" + std::to_string(rows) +
                         ", " + std::to_string(cols) + "]");
  auto node = std::make_shared<Node>();
  node->rows = rows;
  node->cols = cols;
  node->values = std::move(values);
  return Tensor(std::move(node));
}

Tensor Tensor::param(std::size_t rows, std::size_t cols,
                     std::vector<double> values) {
  Tensor t = constant(rows, cols, std::move(values));
  t.node()->requires_grad = true;
  return t;
}

Tensor Tensor::scalar(double value) { return constant(1, 1, {value}); }

double Tensor::scalar_value() const {
  if (size() != 1)
    throw DimensionError("scalar_value: tensor is [" + std::to_string(rows()) +
                         ", " + std::to_string(cols()) + "], expected [1, 1]");
  return node_->values[0];
}

void Tensor::backward() const {
  if (!defined()) throw Error("backward: undefined tensor");
  if (size() != 1)
    throw DimensionError("backward: root must be a scalar, got [" +
                         std::to_string(rows()) + ", " +
                         std::to_string(cols()) + "]");
  if (!node_->requires_grad) return;

  // Iterative post-order DFS; `order` ends up parents-before-children, so the
  // reversed order visits each node after all of its consumers.
  std::vector<Node*> order;
  std::unordered_set<Node*> visited;
  struct Frame {
    Node* node;
    std::size_t next_parent;
  };
  std::vector<Frame> stack;
  stack.push_back({node_.get(), 0});
  visited.insert(node_.get());
  while (!stack.empty()) {
    Frame& top = stack.back();
    if (top.next_parent < top.node->parents.size()) {
      Node* parent = top.node->parents[top.next_parent++].get();
      if (parent->requires_grad && !visited.count(parent)) {
        visited.insert(parent);
        stack.push_back({parent, 0});
      }
    } else {
      order.push_back(top.node);
      stack.pop_back();
    }
  }

  // Interior grads are per-pass scratch; only leaves accumulate across
  // repeated backward calls.
  for (Node* n : order)
    if (n->backward) n->grad.clear();
  node_->grad_buffer()[0] += 1.0;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    Node* n = *it;
    if (!n->backward) continue;
    n->backward(*n);
    for (const auto& parent : n->parents) {
      if (parent->requires_grad && !parent->grad.empty()) {
        for (double g : parent->grad) {
          if (!std::isfinite(g))
            throw NumericError(std::string("non-finite gradient in backward of ") +
                               n->op);
        }
      }
    }
  }
}

Tensor make_op_node(const char* op, std::size_t rows, std::size_t cols,
                    std::vector<double> values,
                    std::vector<std::shared_ptr<Node>> parents,
                    std::function<void(Node&)> backward) {
  check_finite(values, op);
  auto node = std::make_shared<Node>();
  node->rows = rows;
  node->cols = cols;
  node->values = std::move(values);
  node->op = op;
  for (const auto& p : parents)
    if (p->requires_grad) node->requires_grad = true;
  if (node->requires_grad) {
    node->parents = std::move(parents);
    node->backward = std::move(backward);
  }
  return Tensor(std::move(node));
}

void check_finite(const std::vector<double>& values, const char* op) {
  for (double v : values) {
    if (!std::isfinite(v))
      throw NumericError(std::string("non-finite value produced by ") + op);
  }
}

}  // namespace clicksim::math
