// Copyright 2026 The lmimd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LMIMD_ERRORS_H_
#define LMIMD_ERRORS_H_

#include <stdexcept>
#include <string>

namespace lmimd {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Scenario document could not be read (malformed JSON, wrong field type).
class ParseError : public Error {
 public:
  using Error::Error;
};

// Scenario parsed but violates a model invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// The rate-update rule was driven out of sequence, or fed impossible feedback.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

// Internal accounting breach in the simulation kernel.
class ConservationError : public Error {
 public:
  using Error::Error;
};

// The static optimum is unbounded (a valued path crosses no finite capacity).
class UnboundedError : public Error {
 public:
  using Error::Error;
};

}  // namespace lmimd

#endif  // LMIMD_ERRORS_H_
