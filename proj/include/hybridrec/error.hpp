// Copyright 2026 The hybridrec Authors.
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

#pragma once

#include <stdexcept>
#include <string>

namespace hybridrec {

/// Broad failure classes. The CLI maps these onto process exit codes.
enum class ErrorKind {
  kConfig,     // bad configuration or usage
  kData,       // malformed or invalid input data
  kNumerical,  // NaN/Inf or other numeric breakdown
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what)
      : Error(ErrorKind::kConfig, what) {}
};

/// Parse failures in delimited or OBO input. Carries the offending line.
class IngestError : public Error {
 public:
  IngestError(std::size_t line, const std::string& what);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Well-formed input that violates a domain invariant (rating < 1, empty set).
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what)
      : Error(ErrorKind::kData, what) {}
};

/// Ontology structure problems: cycles, dangling is_a targets, duplicates.
class StructuralError : public Error {
 public:
  explicit StructuralError(const std::string& what)
      : Error(ErrorKind::kData, what) {}
};

/// Unknown id or out-of-range index.
class LookupError : public Error {
 public:
  explicit LookupError(const std::string& what)
      : Error(ErrorKind::kData, what) {}
};

/// Item accessions that do not resolve to ontology terms or cache rows.
class MappingError : public Error {
 public:
  explicit MappingError(const std::string& what)
      : Error(ErrorKind::kData, what) {}
};

/// A persisted artifact was produced under a different configuration.
class ProvenanceError : public Error {
 public:
  explicit ProvenanceError(const std::string& what)
      : Error(ErrorKind::kData, what) {}
};

/// Caller broke an operation's precondition.
class ContractError : public Error {
 public:
  explicit ContractError(const std::string& what)
      : Error(ErrorKind::kData, what) {}
};

class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what)
      : Error(ErrorKind::kNumerical, what) {}
};

}  // namespace hybridrec
