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

#ifndef ROPS_TEXTIO_HPP
#define ROPS_TEXTIO_HPP

#include <json.hpp>
#include <string>

#include "rops/decompose.hpp"
#include "rops/refute.hpp"

namespace rops {

/// Canonical polynomial text: terms in graded-lex order joined by +/-,
/// each term `coef*x<k>[^e]*...`; parse(print(p)) == p.
std::string poly_to_text(const Poly& p);

/// Parses the polynomial grammar. nvars = 0 infers the ambient size from
/// the largest variable index (constants get 0 variables).
Poly poly_from_text(const std::string& text, const FieldCtx& ctx, int nvars = 0);

/// Accepts either polynomial text or a generator shorthand:
/// gen:S:n,k | gen:M:n,A,B | gen:f:a,b,c.
Poly parse_poly_or_gen(const std::string& text, const FieldCtx& ctx, int nvars = 0);

nlohmann::json rof_to_json(const Rof& t);
Rof rof_from_json(const nlohmann::json& j, const FieldCtx& ctx);

nlohmann::json decomposition_to_json(const Decomposition& d);
Decomposition decomposition_from_json(const nlohmann::json& j);

nlohmann::json condition_report_to_json(const ConditionReport& r);

}  // namespace rops

#endif
