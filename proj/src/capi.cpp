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
#include "clicksim/capi.h"

#include <cstring>
#include <string>

#include "common/error.hpp"

namespace {

thread_local std::string g_last_error = "";

char* alloc_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

clicksim_status status_from_exception() {
  try {
    throw;
  } catch (const clicksim::ConfigError& e) {
    g_last_error = e.what();
    return CLICKSIM_ERR_CONFIG;
  } catch (const clicksim::DataError& e) {
    g_last_error = e.what();
    return CLICKSIM_ERR_DATA;
  } catch (const clicksim::NumericError& e) {
    g_last_error = e.what();
    return CLICKSIM_ERR_NUMERIC;
  } catch (const clicksim::DimensionError& e) {
    g_last_error = e.what();
    return CLICKSIM_ERR_NUMERIC;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return CLICKSIM_ERR_USAGE;
  } catch (...) {
    g_last_error = "unknown error";
    return CLICKSIM_ERR_USAGE;
  }
}

}  // namespace

extern "C" {

const char* clicksim_version(void) { return "0.1.0"; }

const char* clicksim_last_error(void) { return g_last_error.c_str(); }

void clicksim_string_free(char* s) { delete[] s; }

}  // extern "C"
