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
#include <memory>
#include <string>
#include <vector>

#include "data/session.hpp"
#include "math/tensor.hpp"

namespace clicksim::emb {

enum class EmbeddingKind { Svd, Learnable, External };

std::string to_string(EmbeddingKind kind);
EmbeddingKind embedding_kind_from_string(const std::string& s);

// One of the three item/user representation providers: ALS-factorized
// ("SVD"), a learnable table ("NN") or read-only external tables ("Ext.").
// Only the learnable tables carry gradients.
struct EmbeddingSource {
  EmbeddingKind kind = EmbeddingKind::Learnable;
  std::size_t dim = 0;
  math::Tensor item_table;  // [n_items, dim]
  math::Tensor user_table;  // [n_known_users, dim]
  bool trainable = false;
  // user id -> user_table row; users absent here fall back to the mean of
  // their previously clicked items' embeddings (zero vector without any).
  std::map<std::string, std::size_t> user_rows;

  std::size_t n_items() const { return item_table.rows(); }
  bool knows_user(const std::string& user_id) const {
    return user_rows.count(user_id) > 0;
  }
};

// 0/1 interaction matrix in sparse form.
struct Interactions {
  std::size_t n_users = 0;
  std::size_t n_items = 0;
  std::vector<std::pair<std::size_t, std::size_t>> positives;
};

struct AlsResult {
  std::vector<double> user_factors;  // [n_users, rank]
  std::vector<double> item_factors;  // [n_items, rank]
  std::vector<double> objective_per_half_step;
};

// Alternating least squares on the full 0/1 matrix (every cell contributes,
// no confidence reweighing): minimizes
//   sum_{u,i} (r_ui - <p_u, q_i>)^2 + lambda (||P||^2 + ||Q||^2).
// Each half-step solves its ridge problem exactly, so the objective is
// non-increasing per half-step.
AlsResult train_als(const Interactions& interactions, std::size_t rank,
                    std::size_t iterations, double lambda, std::uint64_t seed);

// Recomputes the ALS objective from scratch (used for monotonicity checks).
double als_objective(const Interactions& interactions,
                     const std::vector<double>& user_factors,
                     const std::vector<double>& item_factors, std::size_t rank,
                     double lambda);

// Mean of the clicked items' embedding rows; the zero vector for an empty
// history.
std::vector<double> init_user_from_history(
    const std::vector<std::int64_t>& clicked_items,
    const math::Tensor& item_table);

// <p_u, q_i>; the MF baseline's ranking score.
double score_mf(const EmbeddingSource& source, std::size_t user_row,
                std::size_t item);

struct EmbeddingConfig {
  EmbeddingKind kind = EmbeddingKind::Learnable;
  std::size_t dim = 32;
  std::size_t als_iterations = 15;
  double als_lambda = 0.1;
  double learnable_init_range = 0.1;  // uniform in [-range, range]
};

// Builds the source from training sessions: SVD runs ALS over the train
// interactions; Learnable initializes trainable tables for the train users;
// External aligns the dataset's embedding tables with the item vocabulary.
std::shared_ptr<EmbeddingSource> build_embedding_source(
    const EmbeddingConfig& config, const data::Dataset& dataset,
    const std::vector<data::Session>& train_sessions, std::uint64_t seed);

// Per-session user vectors as a [batch, dim] tensor: known users are table
// rows (differentiable for learnable tables); unknown users fall back to the
// zero vector, since no pre-session history is available at batch time.
math::Tensor user_vectors_for(
    const EmbeddingSource& source,
    const std::vector<std::string>& user_ids);

}  // namespace clicksim::emb
