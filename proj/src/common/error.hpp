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

#include <stdexcept>
#include <string>

namespace clicksim {

// Base class for all clicksim errors. The `code` mirrors the CLI exit code
// contract: 2 config, 3 data, 4 numeric.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg, int code = 1)
      : std::runtime_error(msg), code_(code) {}
  int code() const noexcept { return code_; }

 private:
  int code_;
};

// Invalid configuration: bad option values, missing columns, unsupported
// model/dataset combinations.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& msg) : Error(msg, 2) {}
};

// Malformed or inconsistent input data (parse failures, catalog violations,
// empty batches).
class DataError : public Error {
 public:
  explicit DataError(const std::string& msg) : Error(msg, 3) {}
};

// Numeric failure: non-finite values in forward/backward, singular solves.
class NumericError : public Error {
 public:
  explicit NumericError(const std::string& msg) : Error(msg, 4) {}
};

// Tensor shape mismatch; the message names the offending axis.
class DimensionError : public Error {
 public:
  explicit DimensionError(const std::string& msg) : Error(msg, 4) {}
};

}  // namespace clicksim
