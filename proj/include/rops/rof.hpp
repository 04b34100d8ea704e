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

#ifndef ROPS_ROF_HPP
#define ROPS_ROF_HPP

#include <memory>
#include <vector>

#include "rops/poly.hpp"

namespace rops {

struct KillWitness {
    int j;
    FieldElem gamma;
};

/// A read-once formula in normal form: a binary tree whose leaves compute
/// a*x_v + b and whose internal nodes compute a*(left op right) + b. The
/// read-once constraint (each variable labels at most one leaf) is a
/// checkable property, not enforced by construction.
///
/// Trees are immutable and share structure; copying an Rof is cheap.
class Rof {
   public:
    enum class Op : std::uint8_t { leaf, add, mul };

    struct Node;
    using NodePtr = std::shared_ptr<const Node>;
    struct Node {
        Op op;
        int var = 0;  // leaf only
        FieldElem a, b;
        NodePtr left, right;
    };

    static Rof leaf(int var, const FieldElem& a, const FieldElem& b);
    static Rof node(Op op, const FieldElem& a, const FieldElem& b, const Rof& left, const Rof& right);

    const FieldCtx& ctx() const noexcept { return ctx_; }
    const Node& root() const noexcept { return *root_; }

    struct ReadOnceCheck {
        bool ok = true;
        int offender = 0;  // a variable labelling two leaves, when !ok
    };
    ReadOnceCheck check_read_once() const;
    bool is_read_once() const { return check_read_once().ok; }

    /// True iff the tree contains no addition gates.
    bool is_multiplicative() const;

    int max_var() const;
    int leaf_count() const;

    /// Exact expansion into a Poly on an ambient variable set (defaults to
    /// the largest leaf index). Requires the read-once property.
    Poly expand(int nvars = 0) const;

    /// Variables the expanded polynomial actually depends on; a leaf with
    /// a = 0 contributes no dependence.
    VarMask effective_vars(int nvars = 0) const;

    /// c * this, folded into the root's affine labels.
    Rof scaled(const FieldElem& c) const;
    /// this + c, folded into the root's affine labels.
    Rof plus_const(const FieldElem& c) const;
    /// Relabels every leaf variable v as perm[v-1].
    Rof renamed(const std::vector<int>& perm) const;

   private:
    Rof(FieldCtx ctx, NodePtr root) : ctx_(ctx), root_(std::move(root)) {}
    friend KillWitness derivative_kill_witness(const Rof& t, int i, int nvars);

    FieldCtx ctx_;
    NodePtr root_;
};

/// ROF for a multilinear polynomial on at most two effective variables.
/// expand(result) == p.
Rof rof_from_bivariate(const Poly& p);

/// ROF for a polynomial of total degree <= 1, as a left-leaning chain of
/// addition nodes. expand(result) == p.
Rof rof_linear(const Poly& p);

/// Product chain x_{v1} * x_{v2} * ... as a left-leaning tree of
/// multiplication nodes.
Rof rof_monomial(const FieldCtx& ctx, const std::vector<int>& vars);

/// For a multiplicative ROF t and an effective variable xi, returns (j,
/// gamma) with j != i such that d/dxj(expand(t)) vanishes identically at
/// xi = gamma. gamma is the root of the affine chain hanging off xi's
/// leaf; j is the smallest-index effective variable of the nearest sibling
/// subtree that has one.
KillWitness derivative_kill_witness(const Rof& t, int i, int nvars = 0);

}  // namespace rops

#endif
