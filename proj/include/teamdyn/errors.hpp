// Copyright 2026 The teamdyn Authors.
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

#ifndef TEAMDYN_ERRORS_HPP_
#define TEAMDYN_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace teamdyn {

// Malformed arguments: dimension mismatches, bad indices, invalid kernels,
// unparsable files.
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

// A query outside the region where a reconstructed quantity is defined.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// Enumeration would exceed the supported profile count.
class CapacityError : public std::length_error {
 public:
  explicit CapacityError(const std::string& what) : std::length_error(what) {}
};

}  // namespace teamdyn

#endif  // TEAMDYN_ERRORS_HPP_
