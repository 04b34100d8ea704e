/*
   Copyright 2026 The rops authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef ROPS_ERRORS_HPP
#define ROPS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace rops {

/// All library errors carry a stable machine-readable code; the CLI maps
/// codes to exit diagnostics.
class Error : public std::runtime_error {
   public:
    Error(std::string code, const std::string& what) : std::runtime_error(what), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

   private:
    std::string code_;
};

#define ROPS_DEFINE_ERROR(Name, code_str)                                 \
    class Name : public Error {                                           \
       public:                                                            \
        explicit Name(const std::string& what) : Error(code_str, what) {} \
    }

ROPS_DEFINE_ERROR(FieldMismatchError, "field_mismatch");
ROPS_DEFINE_ERROR(DivisionByZeroError, "division_by_zero");
ROPS_DEFINE_ERROR(NotMultilinearError, "not_multilinear");
ROPS_DEFINE_ERROR(NotReadOnceError, "not_read_once");
ROPS_DEFINE_ERROR(NotMultiplicativeError, "not_multiplicative");
ROPS_DEFINE_ERROR(DegenerateLeafError, "degenerate_leaf");
ROPS_DEFINE_ERROR(WrongArityError, "wrong_arity");
ROPS_DEFINE_ERROR(TooManyVariablesError, "too_many_variables");
ROPS_DEFINE_ERROR(ResourceGuardError, "resource_guard");
ROPS_DEFINE_ERROR(RootNotRepresentableError, "root_not_representable");
ROPS_DEFINE_ERROR(InternalInvariantError, "internal_invariant");
ROPS_DEFINE_ERROR(SyntaxError, "syntax_error");
ROPS_DEFINE_ERROR(UnknownVariableError, "unknown_variable");
ROPS_DEFINE_ERROR(InvalidArgumentError, "invalid_argument");
ROPS_DEFINE_ERROR(IoError, "io_error");

#undef ROPS_DEFINE_ERROR

}  // namespace rops

#endif
