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
#include "ingest/canonical.hpp"

#include <fstream>
#include <sstream>

#include "common/error.hpp"
#include "common/jsonio.hpp"

namespace clicksim::ingest {

using data::Impression;
using data::Session;
using data::Slate;

std::string session_to_json_line(const Session& session) {
  Json j;
  j["user_id"] = session.user_id;
  j["session_id"] = session.session_id;
  Json slates = Json::array();
  for (const auto& slate : session.slates) {
    Json js;
    Json items = Json::array();
    Json clicks = Json::array();
    for (const auto& imp : slate.impressions) {
      items.push_back(imp.item_id);
      clicks.push_back(imp.clicked);
    }
    js["items"] = std::move(items);
    js["clicks"] = std::move(clicks);
    if (slate.click_order) {
      Json order = Json::array();
      for (auto p : *slate.click_order) order.push_back(p);
      js["click_order"] = std::move(order);
    }
    slates.push_back(std::move(js));
  }
  j["slates"] = std::move(slates);
  if (session.timestamp_ms) j["timestamp_ms"] = *session.timestamp_ms;
  return j.dump();
}

Session session_from_json_line(const std::string& line) {
  Json j = Json::parse(line, nullptr, false);
  if (j.is_discarded()) throw DataError("invalid JSON");
  if (!j.is_object() || !j.contains("user_id") || !j.contains("session_id") ||
      !j.contains("slates") || !j["slates"].is_array())
    throw DataError("record must have user_id, session_id and slates");

  Session session;
  session.user_id = j["user_id"].get<std::string>();
  session.session_id = j["session_id"].get<std::string>();
  if (j.contains("timestamp_ms"))
    session.timestamp_ms = j["timestamp_ms"].get<std::int64_t>();

  for (const auto& js : j["slates"]) {
    if (!js.contains("items") || !js.contains("clicks"))
      throw DataError("slate must have items and clicks");
    const auto& items = js["items"];
    const auto& clicks = js["clicks"];
    if (!items.is_array() || !clicks.is_array() ||
        items.size() != clicks.size())
      throw DataError("items and clicks must be equal-length arrays");
    Slate slate;
    for (std::size_t p = 0; p < items.size(); ++p) {
      Impression imp;
      imp.item_id = items[p].get<std::int64_t>();
      imp.position = p;
      imp.clicked = clicks[p].get<int>();
      slate.impressions.push_back(imp);
    }
    if (js.contains("click_order")) {
      std::vector<std::size_t> order;
      for (const auto& v : js["click_order"])
        order.push_back(v.get<std::size_t>());
      slate.click_order = std::move(order);
    }
    session.slates.push_back(std::move(slate));
  }
  return session;
}

std::vector<Session> load_canonical(const std::filesystem::path& path,
                                    std::int64_t n_items) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open dataset file: " + path.string());
  std::vector<Session> sessions;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      Session s = session_from_json_line(line);
      data::validate_session(s, n_items);
      sessions.push_back(std::move(s));
    } catch (const Error& e) {
      throw DataError(path.string() + " line " + std::to_string(line_no) +
                      ": " + e.what());
    }
  }
  return sessions;
}

void save_canonical(const std::filesystem::path& path,
                    const std::vector<data::Session>& sessions) {
  if (path.has_parent_path())
    std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write dataset file: " + path.string());
  for (const auto& s : sessions) out << session_to_json_line(s) << "\n";
}

}  // namespace clicksim::ingest
