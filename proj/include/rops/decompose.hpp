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

#ifndef ROPS_DECOMPOSE_HPP
#define ROPS_DECOMPOSE_HPP

#include "rops/analyze.hpp"
#include "rops/rof.hpp"

namespace rops {

enum class Construction { generic, symmetric_m, sym4_table, f_family };

std::string construction_name(Construction c);
Construction construction_from_name(const std::string& s);

/// A sum-of-ROFs certificate: verified means the summand expansions add up
/// to the target exactly and every summand is read-once.
struct Decomposition {
    Poly target;
    Construction construction;
    std::vector<Rof> summands;
    bool verified = false;
};

/// Re-checks a decomposition from scratch and records the result in
/// d.verified.
bool verify_decomposition(Decomposition& d);

/// Generic sum-of-ROPs expression for any multilinear polynomial:
/// peel p = xn * dp/dxn + p|_{xn=0} down to four effective variables, then
/// apply the explicit three-summand base construction. At most
/// 3*2^(n-4) summands for n >= 4, 2 for n = 3, 1 for n <= 2.
Decomposition decompose_generic(const Poly& p);

/// ceil(n/2) summands for A*S_n^n + B*S_n^(n-1), built from the pair
/// summands (x_{2i-1} + x_{2i}) * (product of the other variables).
Decomposition decompose_top_symmetric(const FieldCtx& ctx, int n, const FieldElem& A, const FieldElem& B);

/// Two-summand expression for a0 + a1*S4^1 + ... + a4*S4^4, selected from a
/// four-case table on (a2 = 0, a3 = 0, a2*a4 = a3^2); the table's residual
/// constant is solved by coefficient matching and folded into the first
/// summand.
Decomposition decompose_sym4(const std::array<FieldElem, 5>& a);

/// Outcome of the f-family decision: either a verified two-summand
/// decomposition, a refutation certificate (all of C1, C2, C3 hold), or --
/// under reals semantics -- an "expressible but not representable" verdict
/// when the needed square root is irrational.
struct FFamilyOutcome {
    enum class Status { decomposed, not_expressible, root_not_representable };
    Status status;
    std::optional<Decomposition> decomposition;
    ConditionReport report;
};

FFamilyOutcome decompose_f_family(const FieldElem& alpha, const FieldElem& beta, const FieldElem& gamma);

/// Shape matchers used for construction auto-selection.
std::optional<std::array<FieldElem, 3>> match_f_family(const Poly& g);
std::optional<std::array<FieldElem, 5>> match_sym4(const Poly& g);
/// Matches A*S_n^n + B*S_n^(n-1) on the full ambient variable set.
struct TopSymmetricShape {
    int n;
    FieldElem A, B;
};
std::optional<TopSymmetricShape> match_top_symmetric(const Poly& g);

}  // namespace rops

#endif
