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

#ifndef ROPS_POLY_HPP
#define ROPS_POLY_HPP

#include <cstdint>
#include <map>
#include <vector>

#include "rops/field.hpp"

namespace rops {

/// Subset of the ambient variables x1..xn as a bitmask (bit i-1 = xi).
using VarMask = std::uint32_t;

inline int popcount_mask(VarMask m) { return __builtin_popcount(m); }
inline bool mask_contains(VarMask m, int var) { return (m >> (var - 1)) & 1u; }
inline VarMask mask_of_var(int var) { return VarMask{1} << (var - 1); }

/// Sparse polynomial with exact coefficients over named variables x1..xn.
///
/// Terms are keyed by exponent vectors, so squares (as produced by the
/// commutator) are first-class; multilinearity is a checkable predicate,
/// not a representation assumption. No zero coefficients are stored and
/// term order is fixed (graded lexicographic, descending), so equality is
/// structural and printing is deterministic.
class Poly {
   public:
    using Mono = std::vector<std::uint32_t>;

    struct GradedLexDesc {
        bool operator()(const Mono& a, const Mono& b) const;
    };
    using TermMap = std::map<Mono, FieldElem, GradedLexDesc>;

    Poly(const FieldCtx& ctx, int nvars);  // the zero polynomial

    static Poly constant(const FieldCtx& ctx, int nvars, const FieldElem& c);
    static Poly variable(const FieldCtx& ctx, int nvars, int var);

    const FieldCtx& ctx() const noexcept { return ctx_; }
    int nvars() const noexcept { return nvars_; }
    const TermMap& terms() const noexcept { return terms_; }

    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_multilinear() const;
    int total_degree() const;  // -1 for the zero polynomial

    /// Coefficient of a monomial (zero if absent).
    FieldElem coeff(const Mono& m) const;
    /// Coefficient of the multilinear monomial given by a variable mask.
    FieldElem coeff_mask(VarMask m) const;
    FieldElem constant_term() const { return coeff_mask(0); }

    /// Variables the polynomial actually depends on.
    VarMask effective_vars() const;

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator-() const;
    bool operator==(const Poly& o) const;
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly scaled(const FieldElem& c) const;

    /// Substitutes xi = a.
    Poly restricted(int var, const FieldElem& a) const;
    /// Substitutes a polynomial (which must not mention xi) for xi.
    Poly substituted(int var, const Poly& value) const;
    /// Formal partial derivative with respect to xi.
    Poly derivative(int var) const;
    /// Applies a permutation of the variables: result uses perm[i-1] where
    /// the input used xi. perm must be a permutation of 1..nvars.
    Poly renamed(const std::vector<int>& perm) const;
    /// Re-embeds into a wider ambient variable set.
    Poly extended(int new_nvars) const;

    /// The 2x2 determinant-like combination of the four {0,1}-restrictions
    /// at xi, xj. Requires a multilinear input; the output may contain
    /// squares.
    Poly commutator(int i, int j) const;

    FieldElem eval(const std::vector<FieldElem>& point) const;

    /// Adds c * monomial in place; drops the term if the sum cancels.
    void add_term(const Mono& m, const FieldElem& c);
    void add_term_mask(VarMask m, const FieldElem& c);

   private:
    void check_var(int var) const;
    void check_compatible(const Poly& o) const;

    FieldCtx ctx_;
    int nvars_;
    TermMap terms_;
};

/// Elementary symmetric polynomial S_n^k on x1..xn.
Poly gen_symmetric(const FieldCtx& ctx, int n, int k);

/// The M family: A*S_n^n + B*S_n^(n-1).
Poly gen_top_symmetric(const FieldCtx& ctx, int n, const FieldElem& A, const FieldElem& B);

/// The f family on four variables:
/// a*(x1x2 + x3x4) + b*(x1x3 + x2x4) + c*(x1x4 + x2x3).
Poly gen_f_family(const FieldElem& a, const FieldElem& b, const FieldElem& c);

}  // namespace rops

#endif
