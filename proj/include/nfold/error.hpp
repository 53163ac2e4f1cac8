// Copyright 2026 The nfold Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NFOLD_ERROR_HPP
#define NFOLD_ERROR_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace nfold {

enum class Errc {
  invalid_argument,  // malformed input, mismatched parents, bad arity
  precondition,      // operation called outside its domain (e.g. not vacant)
  limit_exceeded,    // desk-scale bound hit
  parse,             // JSON ingestion failure
  not_found,         // search that must succeed came back empty
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

// One failed axiom instance. Witnesses are the ids involved, in the order
// the axiom names them.
struct Violation {
  std::string axiom;
  std::string detail;
  std::vector<std::int64_t> witnesses;
};

struct ValidationReport {
  std::vector<Violation> violations;
  std::size_t total = 0;  // may exceed violations.size() when truncated

  bool ok() const { return total == 0; }
  void add(std::string axiom, std::string detail, std::vector<std::int64_t> witnesses);

  static constexpr std::size_t kMaxRecorded = 64;
};

}  // namespace nfold

#endif  // NFOLD_ERROR_HPP
