// Copyright 2026 The ldpkit Authors
//
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

#ifndef LDPKIT_ERRORS_H_
#define LDPKIT_ERRORS_H_

#include <stdexcept>
#include <string>

namespace ldpkit {

// Invalid arguments or violated invariants. The message starts with the
// module name, e.g. "measure_net: total mass 1.2 exceeds 1".
class Error : public std::runtime_error {
 public:
  Error(const std::string& module, const std::string& what)
      : std::runtime_error(module + ": " + what), module_(module) {}

  const std::string& module() const { return module_; }

 private:
  std::string module_;
};

// Text input that failed to parse, with its 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, int line, const std::string& what)
      : std::runtime_error(source + ":" + std::to_string(line) + ": " + what),
        source_(source),
        line_(line) {}

  const std::string& source() const { return source_; }
  int line() const { return line_; }

 private:
  std::string source_;
  int line_;
};

}  // namespace ldpkit

#endif  // LDPKIT_ERRORS_H_
