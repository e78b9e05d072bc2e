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
#include "emb/embeddings.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "common/error.hpp"
#include "common/rng.hpp"
#include "math/nn.hpp"
#include "math/ops.hpp"

namespace clicksim::emb {

std::string to_string(EmbeddingKind kind) {
  switch (kind) {
    case EmbeddingKind::Svd: return "svd";
    case EmbeddingKind::Learnable: return "learnable";
    case EmbeddingKind::External: return "external";
  }
  throw Error("unreachable embedding kind");
}

EmbeddingKind embedding_kind_from_string(const std::string& s) {
  if (s == "svd") return EmbeddingKind::Svd;
  if (s == "learnable" || s == "nn") return EmbeddingKind::Learnable;
  if (s == "external" || s == "ext") return EmbeddingKind::External;
  throw ConfigError("unknown embedding kind: " + s);
}

namespace {

// Solves A x = b for symmetric positive-definite A (in-place Cholesky).
// Throws NumericError when A is not positive definite.
std::vector<double> solve_spd(std::vector<double> a, std::vector<double> b,
                              std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    double diag = a[j * n + j];
    for (std::size_t k = 0; k < j; ++k) diag -= a[j * n + k] * a[j * n + k];
    if (diag <= 0.0)
      throw NumericError("singular normal equations in least-squares solve");
    const double ljj = std::sqrt(diag);
    a[j * n + j] = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double v = a[i * n + j];
      for (std::size_t k = 0; k < j; ++k) v -= a[i * n + k] * a[j * n + k];
      a[i * n + j] = v / ljj;
    }
  }
  // Forward substitution L y = b.
  for (std::size_t i = 0; i < n; ++i) {
    double v = b[i];
    for (std::size_t k = 0; k < i; ++k) v -= a[i * n + k] * b[k];
    b[i] = v / a[i * n + i];
  }
  // Back substitution L^T x = y.
  for (std::size_t ii = n; ii-- > 0;) {
    double v = b[ii];
    for (std::size_t k = ii + 1; k < n; ++k) v -= a[k * n + ii] * b[k];
    b[ii] = v / a[ii * n + ii];
  }
  return b;
}

// One ALS half-step: solve every row of `target` given fixed `fixed`
// factors. positives_by_row[r] lists the fixed-side indices with r_ri = 1.
void als_half_step(std::vector<double>& target, const std::vector<double>& fixed,
                   const std::vector<std::vector<std::size_t>>& positives_by_row,
                   std::size_t n_rows, std::size_t n_fixed, std::size_t rank,
                   double lambda) {
  // Gram matrix over ALL fixed rows: every cell of the 0/1 matrix
  // participates in the objective.
  std::vector<double> gram(rank * rank, 0.0);
  for (std::size_t i = 0; i < n_fixed; ++i)
    for (std::size_t a = 0; a < rank; ++a)
      for (std::size_t b = 0; b < rank; ++b)
        gram[a * rank + b] += fixed[i * rank + a] * fixed[i * rank + b];
  for (std::size_t a = 0; a < rank; ++a) gram[a * rank + a] += lambda;

  for (std::size_t r = 0; r < n_rows; ++r) {
    std::vector<double> rhs(rank, 0.0);
    for (std::size_t i : positives_by_row[r])
      for (std::size_t a = 0; a < rank; ++a) rhs[a] += fixed[i * rank + a];
    auto solution = solve_spd(gram, std::move(rhs), rank);
    for (std::size_t a = 0; a < rank; ++a) target[r * rank + a] = solution[a];
  }
}

}  // namespace

double als_objective(const Interactions& interactions,
                     const std::vector<double>& user_factors,
                     const std::vector<double>& item_factors, std::size_t rank,
                     double lambda) {
  // sum_{u,i} (r - <p, q>)^2 = sum (p q)^2 - 2 sum_{positives} <p, q> + |S|
  // with sum (p q)^2 = sum_u p_u^T (Q^T Q) p_u.
  std::vector<double> gram(rank * rank, 0.0);
  for (std::size_t i = 0; i < interactions.n_items; ++i)
    for (std::size_t a = 0; a < rank; ++a)
      for (std::size_t b = 0; b < rank; ++b)
        gram[a * rank + b] += item_factors[i * rank + a] * item_factors[i * rank + b];
  double quad = 0.0;
  for (std::size_t u = 0; u < interactions.n_users; ++u)
    for (std::size_t a = 0; a < rank; ++a)
      for (std::size_t b = 0; b < rank; ++b)
        quad += user_factors[u * rank + a] * gram[a * rank + b] *
                user_factors[u * rank + b];
  double cross = 0.0;
  for (const auto& [u, i] : interactions.positives)
    for (std::size_t a = 0; a < rank; ++a)
      cross += user_factors[u * rank + a] * item_factors[i * rank + a];
  double reg = 0.0;
  for (double v : user_factors) reg += v * v;
  for (double v : item_factors) reg += v * v;
  return quad - 2.0 * cross +
         static_cast<double>(interactions.positives.size()) + lambda * reg;
}

AlsResult train_als(const Interactions& interactions, std::size_t rank,
                    std::size_t iterations, double lambda, std::uint64_t seed) {
  if (rank == 0 || rank > std::min(interactions.n_users, interactions.n_items))
    throw ConfigError("als: rank " + std::to_string(rank) +
                      " must be in [1, min(n_users, n_items)]");
  if (lambda < 0.0) throw ConfigError("als: lambda must be >= 0");

  std::vector<std::vector<std::size_t>> items_of_user(interactions.n_users);
  std::vector<std::vector<std::size_t>> users_of_item(interactions.n_items);
  for (const auto& [u, i] : interactions.positives) {
    if (u >= interactions.n_users || i >= interactions.n_items)
      throw DataError("als: interaction (" + std::to_string(u) + ", " +
                      std::to_string(i) + ") outside matrix");
    items_of_user[u].push_back(i);
    users_of_item[i].push_back(u);
  }

  AlsResult result;
  result.user_factors.assign(interactions.n_users * rank, 0.0);
  Rng rng = Rng(seed).fork("als/init");
  result.item_factors.resize(interactions.n_items * rank);
  for (auto& v : result.item_factors) v = (rng.uniform() * 2.0 - 1.0) * 0.1;

  for (std::size_t it = 0; it < iterations; ++it) {
    als_half_step(result.user_factors, result.item_factors, items_of_user,
                  interactions.n_users, interactions.n_items, rank, lambda);
    result.objective_per_half_step.push_back(als_objective(
        interactions, result.user_factors, result.item_factors, rank, lambda));
    als_half_step(result.item_factors, result.user_factors, users_of_item,
                  interactions.n_items, interactions.n_users, rank, lambda);
    result.objective_per_half_step.push_back(als_objective(
        interactions, result.user_factors, result.item_factors, rank, lambda));
  }
  return result;
}

std::vector<double> init_user_from_history(
    const std::vector<std::int64_t>& clicked_items,
    const math::Tensor& item_table) {
  std::vector<double> mean(item_table.cols(), 0.0);
  if (clicked_items.empty()) return mean;
  for (auto item : clicked_items) {
    if (item < 0 || static_cast<std::size_t>(item) >= item_table.rows())
      throw DataError("init_user_from_history: item " + std::to_string(item) +
                      " not in catalog");
    for (std::size_t j = 0; j < item_table.cols(); ++j)
      mean[j] += item_table.at(static_cast<std::size_t>(item), j);
  }
  for (auto& v : mean) v /= static_cast<double>(clicked_items.size());
  return mean;
}

double score_mf(const EmbeddingSource& source, std::size_t user_row,
                std::size_t item) {
  if (user_row >= source.user_table.rows())
    throw DataError("score_mf: user row " + std::to_string(user_row) +
                    " out of range");
  if (item >= source.item_table.rows())
    throw DataError("score_mf: item " + std::to_string(item) +
                    " not in catalog");
  double dot = 0.0;
  for (std::size_t j = 0; j < source.dim; ++j)
    dot += source.user_table.at(user_row, j) * source.item_table.at(item, j);
  return dot;
}

std::shared_ptr<EmbeddingSource> build_embedding_source(
    const EmbeddingConfig& config, const data::Dataset& dataset,
    const std::vector<data::Session>& train_sessions, std::uint64_t seed) {
  auto source = std::make_shared<EmbeddingSource>();
  source->kind = config.kind;

  // Users known at training time, in deterministic (sorted) order.
  std::set<std::string> train_users;
  for (const auto& s : train_sessions) train_users.insert(s.user_id);
  std::size_t row = 0;
  for (const auto& u : train_users) source->user_rows[u] = row++;
  const std::size_t n_users = source->user_rows.size();
  const auto n_items = static_cast<std::size_t>(dataset.n_items);

  switch (config.kind) {
    case EmbeddingKind::Svd: {
      Interactions inter;
      inter.n_users = n_users;
      inter.n_items = n_items;
      std::set<std::pair<std::size_t, std::size_t>> seen;
      for (const auto& s : train_sessions) {
        const std::size_t u = source->user_rows.at(s.user_id);
        for (const auto& slate : s.slates)
          for (const auto& imp : slate.impressions)
            if (imp.clicked)
              seen.insert({u, static_cast<std::size_t>(imp.item_id)});
      }
      inter.positives.assign(seen.begin(), seen.end());
      AlsResult als = train_als(inter, config.dim, config.als_iterations,
                                config.als_lambda, seed);
      source->dim = config.dim;
      source->item_table =
          math::Tensor::constant(n_items, config.dim, std::move(als.item_factors));
      source->user_table =
          math::Tensor::constant(n_users, config.dim, std::move(als.user_factors));
      source->trainable = false;
      break;
    }
    case EmbeddingKind::Learnable: {
      source->dim = config.dim;
      const double r = config.learnable_init_range;
      source->item_table = math::uniform_param(seed, "emb.item_table", n_items,
                                               config.dim, -r, r);
      source->user_table = math::uniform_param(seed, "emb.user_table", n_users,
                                               config.dim, -r, r);
      source->trainable = true;
      break;
    }
    case EmbeddingKind::External: {
      if (!dataset.item_embeddings)
        throw ConfigError(
            "external embedding source requires an item embedding table");
      const auto& ext = *dataset.item_embeddings;
      source->dim = ext.dim;
      std::map<std::string, const std::vector<double>*> by_id;
      for (const auto& [id, vec] : ext.rows) by_id[id] = &vec;
      std::vector<double> items(n_items * ext.dim, 0.0);
      std::size_t missing = 0;
      for (std::size_t i = 0; i < n_items; ++i) {
        const std::string& key = i < dataset.item_vocab.size()
                                     ? dataset.item_vocab[i]
                                     : std::to_string(i);
        auto it = by_id.find(key);
        if (it == by_id.end()) {
          ++missing;
          continue;
        }
        std::copy(it->second->begin(), it->second->end(),
                  items.begin() + static_cast<std::ptrdiff_t>(i * ext.dim));
      }
      if (missing == n_items)
        throw ConfigError("external item embeddings match no catalog item");
      source->item_table =
          math::Tensor::constant(n_items, ext.dim, std::move(items));

      if (dataset.user_embeddings) {
        const auto& uext = *dataset.user_embeddings;
        std::map<std::string, const std::vector<double>*> users_by_id;
        for (const auto& [id, vec] : uext.rows) users_by_id[id] = &vec;
        // External user vectors may live in their own space; the models
        // project them, so the dim may differ from the item dim.
        std::vector<double> users(n_users * uext.dim, 0.0);
        for (const auto& [uid, urow] : source->user_rows) {
          auto it = users_by_id.find(uid);
          if (it != users_by_id.end())
            std::copy(it->second->begin(), it->second->end(),
                      users.begin() + static_cast<std::ptrdiff_t>(urow * uext.dim));
        }
        source->user_table =
            math::Tensor::constant(n_users, uext.dim, std::move(users));
      } else {
        // Fall back to history means so every known user still has a vector.
        std::vector<double> users(n_users * ext.dim, 0.0);
        for (const auto& s : train_sessions) {
          std::vector<std::int64_t> clicked;
          for (const auto& slate : s.slates)
            for (const auto& imp : slate.impressions)
              if (imp.clicked) clicked.push_back(imp.item_id);
          const auto urow = source->user_rows.at(s.user_id);
          auto mean = init_user_from_history(clicked, source->item_table);
          for (std::size_t j = 0; j < ext.dim; ++j)
            users[urow * ext.dim + j] = mean[j];
        }
        source->user_table =
            math::Tensor::constant(n_users, ext.dim, std::move(users));
      }
      source->trainable = false;
      break;
    }
  }
  return source;
}

math::Tensor user_vectors_for(const EmbeddingSource& source,
                              const std::vector<std::string>& user_ids) {
  const std::size_t d = source.user_table.cols();
  // Fast path: all users known -> a single differentiable gather.
  bool all_known = true;
  for (const auto& uid : user_ids)
    if (!source.knows_user(uid)) {
      all_known = false;
      break;
    }
  if (all_known) {
    std::vector<std::size_t> rows;
    rows.reserve(user_ids.size());
    for (const auto& uid : user_ids) rows.push_back(source.user_rows.at(uid));
    return math::embedding_rows(source.user_table, rows);
  }
  std::vector<math::Tensor> parts;
  parts.reserve(user_ids.size());
  for (const auto& uid : user_ids) {
    auto it = source.user_rows.find(uid);
    if (it != source.user_rows.end())
      parts.push_back(math::embedding_rows(source.user_table, {it->second}));
    else
      parts.push_back(math::Tensor::zeros(1, d));
  }
  return math::concat_rows(parts);
}

}  // namespace clicksim::emb
