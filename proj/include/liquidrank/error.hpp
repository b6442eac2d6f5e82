/*
 * Copyright 2026 The liquidrank Authors.
 *
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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace liquidrank {

// Base for every error raised by the library. The CLI maps the subclasses
// onto exit codes: IoError -> 1, FormatError/ValidationError -> 2,
// DomainError -> 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Malformed input. `line` is 1-based; 0 means "not tied to a line".
class FormatError : public Error {
 public:
  FormatError(std::size_t line, const std::string& reason,
              const std::string& source = {})
      : Error(compose(line, reason, source)),
        line_(line),
        reason_(reason),
        source_(source) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& reason() const noexcept { return reason_; }
  const std::string& source() const noexcept { return source_; }

 private:
  static std::string compose(std::size_t line, const std::string& reason,
                             const std::string& source) {
    std::string out = source.empty() ? std::string("input") : source;
    if (line > 0) out += ":" + std::to_string(line);
    return out + ": " + reason;
  }

  std::size_t line_;
  std::string reason_;
  std::string source_;
};

// Argument or parameter outside its documented domain.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class EmptyGraph : public DomainError {
 public:
  EmptyGraph() : DomainError("graph is empty") {}
  explicit EmptyGraph(const std::string& what) : DomainError(what) {}
};

class DegenerateUpdate : public DomainError {
 public:
  using DomainError::DomainError;
};

class UnknownNode : public ValidationError {
 public:
  explicit UnknownNode(const std::string& node)
      : ValidationError("unknown node: " + node), node_(node) {}
  const std::string& node() const noexcept { return node_; }

 private:
  std::string node_;
};

class NodeSetMismatch : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class EmptyRanking : public ValidationError {
 public:
  EmptyRanking() : ValidationError("ranking has no entries") {}
};

class EmptyInput : public ValidationError {
 public:
  EmptyInput() : ValidationError("no rankings given") {}
};

}  // namespace liquidrank
