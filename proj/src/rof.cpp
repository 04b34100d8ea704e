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

#include "rops/rof.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace rops {

Rof Rof::leaf(int var, const FieldElem& a, const FieldElem& b) {
    if (var < 1) throw UnknownVariableError("leaf variable index must be >= 1");
    if (!(a.ctx() == b.ctx())) throw FieldMismatchError("leaf labels from different fields");
    auto n = std::make_shared<Node>(Node{Op::leaf, var, a, b, nullptr, nullptr});
    return Rof(a.ctx(), std::move(n));
}

Rof Rof::node(Op op, const FieldElem& a, const FieldElem& b, const Rof& left, const Rof& right) {
    if (op == Op::leaf) throw InvalidArgumentError("internal node must be add or mul");
    if (!(a.ctx() == b.ctx()) || !(a.ctx() == left.ctx_) || !(a.ctx() == right.ctx_))
        throw FieldMismatchError("node labels and children from different fields");
    auto n = std::make_shared<Node>(Node{op, 0, a, b, left.root_, right.root_});
    return Rof(a.ctx(), std::move(n));
}

Rof::ReadOnceCheck Rof::check_read_once() const {
    std::set<int> seen;
    ReadOnceCheck out;
    std::function<bool(const Node&)> walk = [&](const Node& n) {
        if (n.op == Op::leaf) {
            if (!seen.insert(n.var).second) {
                out.ok = false;
                out.offender = n.var;
                return false;
            }
            return true;
        }
        return walk(*n.left) && walk(*n.right);
    };
    walk(*root_);
    return out;
}

bool Rof::is_multiplicative() const {
    std::function<bool(const Node&)> walk = [&](const Node& n) {
        if (n.op == Op::leaf) return true;
        if (n.op == Op::add) return false;
        return walk(*n.left) && walk(*n.right);
    };
    return walk(*root_);
}

int Rof::max_var() const {
    std::function<int(const Node&)> walk = [&](const Node& n) -> int {
        if (n.op == Op::leaf) return n.var;
        return std::max(walk(*n.left), walk(*n.right));
    };
    return walk(*root_);
}

int Rof::leaf_count() const {
    std::function<int(const Node&)> walk = [&](const Node& n) -> int {
        if (n.op == Op::leaf) return 1;
        return walk(*n.left) + walk(*n.right);
    };
    return walk(*root_);
}

Poly Rof::expand(int nvars) const {
    if (nvars == 0) nvars = std::max(max_var(), 1);
    auto check = check_read_once();
    if (!check.ok)
        throw NotReadOnceError("variable x" + std::to_string(check.offender) + " labels more than one leaf");
    if (max_var() > nvars)
        throw UnknownVariableError("leaf variable exceeds the ambient variable count");
    std::function<Poly(const Node&)> walk = [&](const Node& n) -> Poly {
        if (n.op == Op::leaf)
            return Poly::variable(ctx_, nvars, n.var).scaled(n.a) + Poly::constant(ctx_, nvars, n.b);
        Poly l = walk(*n.left), r = walk(*n.right);
        Poly inner = n.op == Op::add ? l + r : l * r;
        return inner.scaled(n.a) + Poly::constant(ctx_, nvars, n.b);
    };
    return walk(*root_);
}

VarMask Rof::effective_vars(int nvars) const { return expand(nvars).effective_vars(); }

Rof Rof::scaled(const FieldElem& c) const {
    Node n = *root_;
    n.a = n.a * c;
    n.b = n.b * c;
    return Rof(ctx_, std::make_shared<Node>(std::move(n)));
}

Rof Rof::plus_const(const FieldElem& c) const {
    Node n = *root_;
    n.b = n.b + c;
    return Rof(ctx_, std::make_shared<Node>(std::move(n)));
}

Rof Rof::renamed(const std::vector<int>& perm) const {
    std::function<NodePtr(const Node&)> walk = [&](const Node& n) -> NodePtr {
        if (n.op == Op::leaf) {
            if (n.var > static_cast<int>(perm.size())) throw WrongArityError("permutation too short for leaf label");
            Node out = n;
            out.var = perm[n.var - 1];
            if (out.var < 1) throw InvalidArgumentError("bad permutation entry");
            return std::make_shared<Node>(std::move(out));
        }
        Node out = n;
        out.left = walk(*n.left);
        out.right = walk(*n.right);
        return std::make_shared<Node>(std::move(out));
    };
    return Rof(ctx_, walk(*root_));
}

Rof rof_from_bivariate(const Poly& p) {
    if (!p.is_multilinear()) throw NotMultilinearError("bivariate ROF construction needs a multilinear input");
    const FieldCtx& ctx = p.ctx();
    VarMask eff = p.effective_vars();
    int count = popcount_mask(eff);
    if (count > 2) throw TooManyVariablesError("polynomial depends on more than two variables");

    if (count == 0) return Rof::leaf(1, ctx.zero(), p.constant_term());

    std::vector<int> vars;
    for (int v = 1; v <= p.nvars(); ++v)
        if (mask_contains(eff, v)) vars.push_back(v);

    if (count == 1) {
        int i = vars[0];
        return Rof::leaf(i, p.coeff_mask(mask_of_var(i)), p.constant_term());
    }

    int i = vars[0], j = vars[1];
    FieldElem a = p.coeff_mask(mask_of_var(i) | mask_of_var(j));
    FieldElem b = p.coeff_mask(mask_of_var(i));
    FieldElem c = p.coeff_mask(mask_of_var(j));
    FieldElem d = p.constant_term();
    if (!a.is_zero()) {
        // a*(xi + c/a)(xj + b/a) + (d - bc/a)
        Rof li = Rof::leaf(i, ctx.one(), c / a);
        Rof lj = Rof::leaf(j, ctx.one(), b / a);
        return Rof::node(Rof::Op::mul, a, d - b * c / a, li, lj);
    }
    return Rof::node(Rof::Op::add, ctx.one(), d, Rof::leaf(i, b, ctx.zero()), Rof::leaf(j, c, ctx.zero()));
}

Rof rof_linear(const Poly& p) {
    if (p.total_degree() > 1) throw InvalidArgumentError("linear ROF construction needs total degree <= 1");
    const FieldCtx& ctx = p.ctx();
    VarMask eff = p.effective_vars();
    if (eff == 0) return Rof::leaf(1, ctx.zero(), p.constant_term());

    std::vector<int> vars;
    for (int v = 1; v <= p.nvars(); ++v)
        if (mask_contains(eff, v)) vars.push_back(v);

    // The constant rides on the first leaf; the chain leans left.
    Rof acc = Rof::leaf(vars[0], p.coeff_mask(mask_of_var(vars[0])), p.constant_term());
    for (std::size_t k = 1; k < vars.size(); ++k) {
        Rof next = Rof::leaf(vars[k], p.coeff_mask(mask_of_var(vars[k])), ctx.zero());
        acc = Rof::node(Rof::Op::add, ctx.one(), ctx.zero(), acc, next);
    }
    return acc;
}

Rof rof_monomial(const FieldCtx& ctx, const std::vector<int>& vars) {
    if (vars.empty()) throw InvalidArgumentError("empty monomial");
    Rof acc = Rof::leaf(vars[0], ctx.one(), ctx.zero());
    for (std::size_t k = 1; k < vars.size(); ++k)
        acc = Rof::node(Rof::Op::mul, ctx.one(), ctx.zero(), acc, Rof::leaf(vars[k], ctx.one(), ctx.zero()));
    return acc;
}

KillWitness derivative_kill_witness(const Rof& t, int i, int nvars) {
    if (nvars == 0) nvars = std::max(t.max_var(), 1);
    if (!t.is_multiplicative()) throw NotMultiplicativeError("witness requires a multiplicative ROF");

    VarMask eff = t.effective_vars(nvars);
    if (popcount_mask(eff) < 2) throw InvalidArgumentError("witness needs at least two effective variables");
    if (!mask_contains(eff, i)) {
        // Distinguish a dead a=0 leaf from a variable that is not read at all.
        std::function<const Rof::Node*(const Rof::Node&)> find = [&](const Rof::Node& n) -> const Rof::Node* {
            if (n.op == Rof::Op::leaf) return n.var == i ? &n : nullptr;
            if (const Rof::Node* l = find(*n.left)) return l;
            return find(*n.right);
        };
        const Rof::Node* leaf = find(t.root());
        if (leaf != nullptr && leaf->a.is_zero())
            throw DegenerateLeafError("x" + std::to_string(i) + " is read with scale 0");
        throw InvalidArgumentError("x" + std::to_string(i) + " is not an effective variable");
    }

    // Walk down to xi's leaf, then reconstruct the affine chain A*xi + B
    // upward until a sibling subtree with effective variables appears.
    struct Found {
        FieldElem a, b;  // chain value = a*xi + b
        int j = 0;       // witness variable, once a live sibling is seen
    };
    std::function<std::optional<Found>(const Rof::Node&)> walk = [&](const Rof::Node& n) -> std::optional<Found> {
        if (n.op == Rof::Op::leaf) {
            if (n.var != i) return std::nullopt;
            if (n.a.is_zero()) throw DegenerateLeafError("x" + std::to_string(i) + " is read with scale 0");
            return Found{n.a, n.b, 0};
        }
        for (bool left_side : {true, false}) {
            const Rof::Node& child = left_side ? *n.left : *n.right;
            const Rof::Node& sibling = left_side ? *n.right : *n.left;
            auto found = walk(child);
            if (!found) continue;
            if (found->j != 0) return found;  // witness already fixed below
            Rof sib(t.ctx(), std::make_shared<Rof::Node>(sibling));
            Poly sib_poly = sib.expand(nvars);
            VarMask sib_eff = sib_poly.effective_vars();
            if (sib_eff != 0) {
                for (int v = 1; v <= nvars; ++v) {
                    if (mask_contains(sib_eff, v)) {
                        found->j = v;
                        break;
                    }
                }
                return found;
            }
            // Constant sibling: fold it and this node's labels into the chain.
            FieldElem s = sib_poly.constant_term();
            found->a = n.a * found->a * s;
            found->b = n.a * found->b * s + n.b;
            return found;
        }
        return std::nullopt;
    };

    auto found = walk(t.root());
    if (!found || found->j == 0 || found->a.is_zero())
        throw InternalInvariantError("witness chain collapsed for an effective variable");
    return KillWitness{found->j, -(found->b) / found->a};
}

}  // namespace rops
