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
#include "ingest/adapters.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "common/error.hpp"
#include "ingest/tables.hpp"

namespace clicksim::ingest {

using data::Dataset;
using data::Impression;
using data::Session;
using data::Slate;

namespace {

std::int64_t parse_ts(const std::string& s, const std::string& context) {
  try {
    return std::stoll(s);
  } catch (const std::exception&) {
    throw DataError(context + ": bad timestamp '" + s + "'");
  }
}

class ItemVocab {
 public:
  std::int64_t intern(const std::string& id) {
    auto [it, inserted] = index_.emplace(id, static_cast<std::int64_t>(vocab_.size()));
    if (inserted) vocab_.push_back(id);
    return it->second;
  }
  std::vector<std::string> take() { return std::move(vocab_); }
  std::size_t size() const { return vocab_.size(); }

 private:
  std::map<std::string, std::int64_t> index_;
  std::vector<std::string> vocab_;
};

}  // namespace

Dataset load_contentwise(const std::filesystem::path& dir,
                         const ContentWiseConfig& config) {
  CsvTable impressions = read_csv(dir / config.impressions_file);
  CsvTable interactions = read_csv(dir / config.interactions_file);
  require_columns(impressions,
                  {config.user_col, config.timestamp_col, config.series_list_col},
                  config.impressions_file);
  require_columns(interactions,
                  {config.interaction_user_col, config.interaction_timestamp_col,
                   config.interaction_series_col},
                  config.interactions_file);

  const auto u_col = impressions.column(config.user_col);
  const auto ts_col = impressions.column(config.timestamp_col);
  const auto list_col = impressions.column(config.series_list_col);
  const auto iu_col = interactions.column(config.interaction_user_col);
  const auto its_col = interactions.column(config.interaction_timestamp_col);
  const auto is_col = interactions.column(config.interaction_series_col);

  // (user, series) -> sorted positive-interaction timestamps.
  std::map<std::pair<std::string, std::string>, std::vector<std::int64_t>> pos;
  for (const auto& row : interactions.rows)
    pos[{row[iu_col], row[is_col]}].push_back(
        parse_ts(row[its_col], config.interactions_file));
  for (auto& [key, times] : pos) std::sort(times.begin(), times.end());

  struct ImpRow {
    std::int64_t ts;
    std::size_t order;  // original file order, for stable ties
    const std::vector<std::string>* row;
  };
  std::map<std::string, std::vector<ImpRow>> by_user;
  for (std::size_t i = 0; i < impressions.rows.size(); ++i) {
    const auto& row = impressions.rows[i];
    by_user[row[u_col]].push_back(
        {parse_ts(row[ts_col], config.impressions_file), i, &row});
  }

  Dataset dataset;
  dataset.name = "contentwise";
  ItemVocab vocab;
  for (auto& [user, rows] : by_user) {
    std::sort(rows.begin(), rows.end(), [](const ImpRow& a, const ImpRow& b) {
      return a.ts != b.ts ? a.ts < b.ts : a.order < b.order;
    });
    Session current;
    std::int64_t prev_ts = 0;
    std::size_t session_ordinal = 0;
    auto flush = [&]() {
      if (!current.slates.empty()) {
        current.user_id = user;
        current.session_id = user + "#" + std::to_string(session_ordinal++);
        dataset.sessions.push_back(std::move(current));
        current = Session{};
      }
    };
    for (const auto& imp_row : rows) {
      if (!current.slates.empty() && imp_row.ts - prev_ts > config.window_ms)
        flush();
      if (current.slates.empty()) current.timestamp_ms = imp_row.ts;
      prev_ts = imp_row.ts;

      Slate slate;
      const auto series = split_list((*imp_row.row)[list_col],
                                     config.list_separator);
      // Click time per position: the earliest positive interaction with that
      // series inside the attribution window.
      std::vector<std::pair<std::int64_t, std::size_t>> clicks;
      for (std::size_t p = 0; p < series.size(); ++p) {
        const std::int64_t item = vocab.intern(series[p]);
        int clicked = 0;
        auto it = pos.find({user, series[p]});
        if (it != pos.end()) {
          auto lo = std::lower_bound(it->second.begin(), it->second.end(),
                                     imp_row.ts);
          if (lo != it->second.end() && *lo <= imp_row.ts + config.window_ms) {
            clicked = 1;
            clicks.emplace_back(*lo, p);
          }
        }
        slate.impressions.push_back({item, p, clicked});
      }
      std::sort(clicks.begin(), clicks.end());
      std::vector<std::size_t> order;
      for (const auto& [t, p] : clicks) order.push_back(p);
      slate.click_order = std::move(order);
      current.slates.push_back(std::move(slate));
    }
    flush();
  }
  dataset.item_vocab = vocab.take();
  dataset.n_items = static_cast<std::int64_t>(dataset.item_vocab.size());
  for (const auto& s : dataset.sessions)
    data::validate_session(s, dataset.n_items);
  return dataset;
}

Dataset load_rl4rs(const std::filesystem::path& dir, const Rl4rsConfig& config) {
  CsvTable slates = read_csv(dir / config.slates_file);
  require_columns(slates,
                  {config.user_col, config.timestamp_col, config.items_col,
                   config.labels_col},
                  config.slates_file);
  const auto u_col = slates.column(config.user_col);
  const auto ts_col = slates.column(config.timestamp_col);
  const auto items_col = slates.column(config.items_col);
  const auto labels_col = slates.column(config.labels_col);

  struct SlateRow {
    std::int64_t ts;
    std::size_t order;
    const std::vector<std::string>* row;
  };
  std::map<std::string, std::vector<SlateRow>> by_user;
  for (std::size_t i = 0; i < slates.rows.size(); ++i) {
    const auto& row = slates.rows[i];
    by_user[row[u_col]].push_back(
        {parse_ts(row[ts_col], config.slates_file), i, &row});
  }

  Dataset dataset;
  dataset.name = "rl4rs";
  ItemVocab vocab;
  for (auto& [user, rows] : by_user) {
    std::sort(rows.begin(), rows.end(), [](const SlateRow& a, const SlateRow& b) {
      return a.ts != b.ts ? a.ts < b.ts : a.order < b.order;
    });
    Session session;
    session.user_id = user;
    session.session_id = user;
    session.timestamp_ms = rows.front().ts;
    for (const auto& sr : rows) {
      const auto items = split_list((*sr.row)[items_col], config.list_separator);
      const auto labels = split_list((*sr.row)[labels_col], config.list_separator);
      if (items.size() != labels.size())
        throw DataError(config.slates_file + ": items and labels length differ (" +
                        std::to_string(items.size()) + " vs " +
                        std::to_string(labels.size()) + ")");
      Slate slate;
      for (std::size_t p = 0; p < items.size(); ++p) {
        int clicked;
        if (labels[p] == "0")
          clicked = 0;
        else if (labels[p] == "1")
          clicked = 1;
        else
          throw DataError(config.slates_file + ": label must be 0 or 1, got '" +
                          labels[p] + "'");
        slate.impressions.push_back({vocab.intern(items[p]), p, clicked});
      }
      // RL4RS logs purchases without ordering information, so click_order
      // stays absent and order-trained models must reject this data.
      session.slates.push_back(std::move(slate));
    }
    dataset.sessions.push_back(std::move(session));
  }
  dataset.item_vocab = vocab.take();
  dataset.n_items = static_cast<std::int64_t>(dataset.item_vocab.size());

  if (!config.item_embeddings_file.empty())
    dataset.item_embeddings = load_embeddings_file(dir / config.item_embeddings_file);
  if (!config.user_embeddings_file.empty())
    dataset.user_embeddings = load_embeddings_file(dir / config.user_embeddings_file);

  for (const auto& s : dataset.sessions)
    data::validate_session(s, dataset.n_items);
  return dataset;
}

}  // namespace clicksim::ingest
