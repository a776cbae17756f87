// Copyright 2026 the twistcc authors
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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace twistcc {

// Bad arguments: dimension/modulus mismatch, malformed descriptors, bad indices.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotInvertible : public std::domain_error {
 public:
  NotInvertible(std::string det, const std::string& what)
      : std::domain_error(what), det_(std::move(det)) {}
  // Decimal rendering of the offending determinant.
  const std::string& det() const noexcept { return det_; }

 private:
  std::string det_;
};

class ResourceLimit : public std::runtime_error {
 public:
  ResourceLimit(std::size_t reached, const std::string& what)
      : std::runtime_error(what), reached_(reached) {}
  std::size_t reached() const noexcept { return reached_; }

 private:
  std::size_t reached_;
};

class LookupError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// A character twist without a residue-level factorization cannot descend.
class NonDescending : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Structural failures in extension building carry the offending pair.
class StructureError : public std::runtime_error {
 public:
  StructureError(std::string kind, std::string witness, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)), witness_(std::move(witness)) {}
  const std::string& kind() const noexcept { return kind_; }
  const std::string& witness() const noexcept { return witness_; }

 private:
  std::string kind_;
  std::string witness_;
};

class NotASubgroup : public StructureError {
 public:
  NotASubgroup(std::string witness, const std::string& what)
      : StructureError("NotASubgroup", std::move(witness), what) {}
};

class NotNormal : public StructureError {
 public:
  NotNormal(std::string witness, const std::string& what)
      : StructureError("NotNormal", std::move(witness), what) {}
};

class NotInvariant : public StructureError {
 public:
  NotInvariant(std::string witness, const std::string& what)
      : StructureError("NotInvariant", std::move(witness), what) {}
};

}  // namespace twistcc
