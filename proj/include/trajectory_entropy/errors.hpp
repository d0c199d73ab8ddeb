// Copyright 2026 The trajectory_entropy Authors
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

#ifndef TRAJECTORY_ENTROPY__ERRORS_HPP_
#define TRAJECTORY_ENTROPY__ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace trajectory_entropy
{

// A caller broke a documented precondition (bad MtpResult, mismatched sizes, ...).
class ContractViolation : public std::logic_error
{
public:
  using std::logic_error::logic_error;
};

// Invalid user-supplied configuration (policy params, gate schedule, generator args).
class ConfigError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

// Malformed scene / MTP file: missing field, wrong type.
class ParseError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

// Well-formed file whose content violates a domain invariant.
class SemanticError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

// File could not be opened, read or written.
class IoError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

}  // namespace trajectory_entropy

#endif  // TRAJECTORY_ENTROPY__ERRORS_HPP_
