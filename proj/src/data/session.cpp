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
#include "data/session.hpp"

#include <algorithm>
#include <set>

#include "common/error.hpp"

namespace clicksim::data {

std::size_t Slate::click_count() const {
  std::size_t n = 0;
  for (const auto& imp : impressions) n += imp.clicked ? 1 : 0;
  return n;
}

std::size_t Session::total_impressions() const {
  std::size_t n = 0;
  for (const auto& slate : slates) n += slate.size();
  return n;
}

bool operator==(const Impression& a, const Impression& b) {
  return a.item_id == b.item_id && a.position == b.position &&
         a.clicked == b.clicked;
}

bool operator==(const Slate& a, const Slate& b) {
  return a.impressions == b.impressions && a.click_order == b.click_order;
}

bool operator==(const Session& a, const Session& b) {
  return a.user_id == b.user_id && a.session_id == b.session_id &&
         a.slates == b.slates && a.timestamp_ms == b.timestamp_ms;
}

void validate_slate(const Slate& slate, std::int64_t n_items) {
  if (slate.impressions.empty())
    throw DataError("slate must contain at least one impression");
  std::set<std::size_t> positions;
  std::set<std::size_t> clicked_positions;
  for (const auto& imp : slate.impressions) {
    if (!positions.insert(imp.position).second)
      throw DataError("duplicate position " + std::to_string(imp.position) +
                      " within slate");
    if (imp.position >= slate.impressions.size())
      throw DataError("position " + std::to_string(imp.position) +
                      " out of range for slate of size " +
                      std::to_string(slate.impressions.size()));
    if (imp.clicked != 0 && imp.clicked != 1)
      throw DataError("click label must be 0 or 1, got " +
                      std::to_string(imp.clicked));
    if (imp.item_id < 0 || (n_items > 0 && imp.item_id >= n_items))
      throw DataError("item id " + std::to_string(imp.item_id) +
                      " not in catalog of size " + std::to_string(n_items));
    if (imp.clicked) clicked_positions.insert(imp.position);
  }
  if (slate.click_order) {
    std::set<std::size_t> order_set(slate.click_order->begin(),
                                    slate.click_order->end());
    if (order_set.size() != slate.click_order->size())
      throw DataError("click_order contains duplicate positions");
    if (order_set != clicked_positions)
      throw DataError(
          "click_order must be a permutation of exactly the clicked "
          "positions");
  }
}

void validate_session(const Session& session, std::int64_t n_items) {
  if (session.slates.empty())
    throw DataError("session " + session.session_id +
                    " must contain at least one slate");
  for (const auto& slate : session.slates) validate_slate(slate, n_items);
}

bool Dataset::has_click_order() const {
  for (const auto& s : sessions)
    for (const auto& sl : s.slates)
      if (!sl.click_order) return false;
  return !sessions.empty();
}

std::size_t Dataset::total_impressions() const {
  std::size_t n = 0;
  for (const auto& s : sessions) n += s.total_impressions();
  return n;
}

}  // namespace clicksim::data
