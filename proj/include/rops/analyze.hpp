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

#ifndef ROPS_ANALYZE_HPP
#define ROPS_ANALYZE_HPP

#include <array>
#include <optional>

#include "rops/poly.hpp"

namespace rops {

/// Witness that g|_{xi=A, xj=B} is linear.
struct C1PrimeWitness {
    int i, j;
    FieldElem A, B;
};

/// Witness that {xi, xj, d/dxi g, d/dxj g} are affinely dependent: the
/// coefficients of a vanishing combination of those four polynomials and
/// the constant 1, in that order.
struct C2PrimeWitness {
    int i, j;
    std::vector<FieldElem> coeffs;
};

/// Witness that g = l1*l2 + l3*l4 with (l1,l2) and (l3,l4) variable-disjoint
/// affine forms. l2 and l4 are normalized to leading coefficient 1; the
/// pair scalars ride on l1 and l3.
struct C3PrimeWitness {
    Poly l1, l2, l3, l4;
};

struct C3PrimeResult {
    std::optional<C3PrimeWitness> witness;
    /// Set under reals semantics when a factoring step needed a root that
    /// exists over the reals but is not rational; "no witness" is then not
    /// a sound conclusion.
    bool blocked_irrational = false;
};

/// Truth values of the weighted-S42 conditions C1-C3 and of the structural
/// conditions C1'-C3', with witnesses.
struct ConditionReport {
    std::optional<bool> c1, c2, c3;
    std::vector<FieldElem> d_values;   // D1, D2, D3
    std::optional<FieldElem> c3_root;  // canonical root when one of the Di is a square
    bool c3_root_irrational = false;   // reals semantics: a real root exists, none is rational

    bool cprime_evaluated = false;
    std::optional<C1PrimeWitness> c1p;
    std::optional<C2PrimeWitness> c2p;
    std::optional<C3PrimeWitness> c3p;
    bool c3p_blocked_irrational = false;
};

/// Evaluates, for f = a*(x1x2+x3x4) + b*(x1x3+x2x4) + c*(x1x4+x2x3):
///   C1: abc != 0
///   C2: (a^2-b^2)(b^2-c^2)(c^2-a^2) != 0
///   C3: no X^2 = Di is solvable, with
///       D1 = (+a^2-b^2-c^2)^2 - (2bc)^2
///       D2 = (-a^2+b^2-c^2)^2 - (2ac)^2
///       D3 = (-a^2-b^2+c^2)^2 - (2ab)^2
/// All three conditions holding refutes expressibility as a sum of two
/// read-once polynomials; see decompose_f_family for the constructive
/// converse.
ConditionReport f_family_conditions(const FieldElem& a, const FieldElem& b, const FieldElem& c);

/// Searches for (i, j, A, B) such that g|_{xi=A, xj=B} has degree <= 1.
/// g must be multilinear on the 4-variable ambient set.
std::optional<C1PrimeWitness> c1prime_check(const Poly& g);

/// Searches variable pairs i < j for an affine dependence among
/// {xi, xj, d/dxi g, d/dxj g}. Dependence is taken over the polynomials
/// together with the constant 1.
std::optional<C2PrimeWitness> c2prime_check(const Poly& g);

/// Attempts to reconstruct g = l1*l2 + l3*l4 over variable-disjoint affine
/// forms with distinct two-by-two partitions, driving the search with the
/// commutator: for the pair partition carrying (l1,l2), the commutator at
/// l1's block is divisible by l2, so its quadratic part yields candidate
/// factors. Every candidate is validated by exact re-expansion.
C3PrimeResult c3prime_reconstruct(const Poly& g);

enum class TrivariateVerdict { not_rop, inconclusive };

/// Three-variate non-ROP refuter: a trivariate ROP always admits a single
/// substitution xi = A making it linear, so if no variable admits one the
/// polynomial is not a ROP.
TrivariateVerdict refute_trivariate_rop(const Poly& g);

/// True iff the affine polynomial l (nonzero, degree <= 1) divides q.
bool divides_affine(const Poly& q, const Poly& l);

}  // namespace rops

#endif
