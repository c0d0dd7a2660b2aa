// Copyright 2026 The riskknap Authors
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

#ifndef RISKKNAP_ERRORS_HPP_
#define RISKKNAP_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace riskknap {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input document (bad JSON, wrong types, missing keys).
class ParseError : public Error {
 public:
  using Error::Error;
};

// Well-formed input that breaks an Instance invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class InvalidSelection : public Error {
 public:
  using Error::Error;
};

class CostExceedsInvestment : public Error {
 public:
  using Error::Error;
};

// A solver refused the input because of a hard size limit.
class SizeGuardError : public Error {
 public:
  using Error::Error;
};

class ParamError : public Error {
 public:
  using Error::Error;
};

// Utility evaluated outside its domain.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what, double wealth)
      : Error(what), wealth_(wealth) {}
  double wealth() const { return wealth_; }

 private:
  double wealth_;
};

class Timeout : public Error {
 public:
  using Error::Error;
};

// Internal inconsistency; always a bug in this library.
class SolverBug : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace riskknap

#endif  // RISKKNAP_ERRORS_HPP_
