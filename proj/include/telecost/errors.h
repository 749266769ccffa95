// Copyright 2026 The telecost Authors
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

#ifndef TELECOST_ERRORS_H
#define TELECOST_ERRORS_H

#include <stdexcept>
#include <string>

namespace telecost {

/// Input violates a numeric or structural precondition (normalization,
/// Hermiticity, parameter range).
class ValidationError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// State lies outside the family an operation is defined on.
class DomainError : public std::domain_error {
   public:
    using std::domain_error::domain_error;
};

/// Protocol steps taken out of order, e.g. reuse of a consumed EPR pair.
class ProtocolError : public std::logic_error {
   public:
    using std::logic_error::logic_error;
};

}  // namespace telecost

#endif
