// Copyright 2026 The parahsp Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace parahsp {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

#define PARAHSP_DEFINE_ERROR(Name)                                            \
    class Name : public Error {                                                \
      public:                                                                  \
        explicit Name(const std::string &what) : Error(#Name ": " + what) {}   \
    }

PARAHSP_DEFINE_ERROR(DivisionByZero);
PARAHSP_DEFINE_ERROR(CtxMismatch);
PARAHSP_DEFINE_ERROR(Singular);
PARAHSP_DEFINE_ERROR(ShapeMismatch);
PARAHSP_DEFINE_ERROR(AmbientMismatch);
PARAHSP_DEFINE_ERROR(BudgetExceeded);
PARAHSP_DEFINE_ERROR(UnsupportedFamily);
PARAHSP_DEFINE_ERROR(EmptySet);
PARAHSP_DEFINE_ERROR(ZeroMass);
PARAHSP_DEFINE_ERROR(RepetitionBudgetExceeded);
PARAHSP_DEFINE_ERROR(InvalidConfig);
PARAHSP_DEFINE_ERROR(ParseError);

#undef PARAHSP_DEFINE_ERROR

} // namespace parahsp
