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

#include "rops/decompose.hpp"

#include <algorithm>

namespace rops {

namespace {

Rof mul_node(const FieldCtx& ctx, const Rof& l, const Rof& r) {
    return Rof::node(Rof::Op::mul, ctx.one(), ctx.zero(), l, r);
}

Rof add_node(const FieldCtx& ctx, const Rof& l, const Rof& r) {
    return Rof::node(Rof::Op::add, ctx.one(), ctx.zero(), l, r);
}

Poly expand_sum(const std::vector<Rof>& summands, const FieldCtx& ctx, int nvars) {
    Poly acc(ctx, nvars);
    for (const Rof& s : summands) acc = acc + s.expand(nvars);
    return acc;
}

Decomposition finalize(Poly target, Construction c, std::vector<Rof> summands) {
    Decomposition d{std::move(target), c, std::move(summands), false};
    if (!verify_decomposition(d)) throw InternalInvariantError("construction failed its own verification");
    return d;
}

/// Base construction on exactly four effective variables.
void base_four(const Poly& q, const std::vector<int>& vars, std::vector<Rof>& out) {
    const FieldCtx& ctx = q.ctx();
    const int nvars = q.nvars();

    // Coefficient accessor over subsets of the four active variables.
    auto cf = [&](std::initializer_list<int> roles) {
        VarMask m = 0;
        for (int r : roles) m |= mask_of_var(vars[r - 1]);
        return q.coeff_mask(m);
    };

    // Lexicographically smallest active pair with a nonzero degree-2
    // coefficient, if any.
    int pi = 0, pj = 0;
    for (int a = 1; a <= 4 && pi == 0; ++a)
        for (int b = a + 1; b <= 4 && pi == 0; ++b)
            if (!cf({a, b}).is_zero()) {
                pi = a;
                pj = b;
            }

    auto var_poly = [&](int role) { return Poly::variable(ctx, nvars, vars[role - 1]); };
    auto var_leaf = [&](int role) { return Rof::leaf(vars[role - 1], ctx.one(), ctx.zero()); };

    if (pi == 0) {
        // No degree-2 terms: linear part, x1x2*(..), x3x4*(..).
        Poly lin = Poly::constant(ctx, nvars, cf({}));
        for (int r = 1; r <= 4; ++r) lin = lin + var_poly(r).scaled(cf({r}));
        if (!lin.is_zero()) out.push_back(rof_linear(lin));

        Poly bracket2 = var_poly(3).scaled(cf({1, 2, 3})) + var_poly(4).scaled(cf({1, 2, 4}));
        if (!bracket2.is_zero())
            out.push_back(mul_node(ctx, mul_node(ctx, var_leaf(1), var_leaf(2)), rof_from_bivariate(bracket2)));

        Poly bracket3 = var_poly(1).scaled(cf({1, 3, 4})) + var_poly(2).scaled(cf({2, 3, 4})) +
                        (var_poly(1) * var_poly(2)).scaled(cf({1, 2, 3, 4}));
        if (!bracket3.is_zero())
            out.push_back(mul_node(ctx, mul_node(ctx, var_leaf(3), var_leaf(4)), rof_from_bivariate(bracket3)));
        return;
    }

    // Map the pivot pair to role positions (1,3); the remaining two
    // variables, in increasing order, become roles 2 and 4.
    std::vector<int> roles(4);
    roles[0] = vars[pi - 1];
    roles[2] = vars[pj - 1];
    {
        std::vector<int> rest;
        for (int v : vars)
            if (v != roles[0] && v != roles[2]) rest.push_back(v);
        roles[1] = rest[0];
        roles[3] = rest[1];
    }
    auto rcf = [&](std::initializer_list<int> positions) {
        VarMask m = 0;
        for (int r : positions) m |= mask_of_var(roles[r - 1]);
        return q.coeff_mask(m);
    };
    auto rvar = [&](int position) { return Poly::variable(ctx, nvars, roles[position - 1]); };

    FieldElem a13 = rcf({1, 3});

    // Summand 1: everything supported inside {1,2} plus the nonconstant
    // part supported inside {3,4}.
    Poly part12 = Poly::constant(ctx, nvars, rcf({})) + rvar(1).scaled(rcf({1})) + rvar(2).scaled(rcf({2})) +
                  (rvar(1) * rvar(2)).scaled(rcf({1, 2}));
    Poly part34 = rvar(3).scaled(rcf({3})) + rvar(4).scaled(rcf({4})) + (rvar(3) * rvar(4)).scaled(rcf({3, 4}));
    if (!part12.is_zero() && !part34.is_zero())
        out.push_back(add_node(ctx, rof_from_bivariate(part12), rof_from_bivariate(part34)));
    else if (!part12.is_zero())
        out.push_back(rof_from_bivariate(part12));
    else if (!part34.is_zero())
        out.push_back(rof_from_bivariate(part34));

    // Summand 2: (A13 x1 + A23 x2 + A123 x1x2) * (x3 + (A14/A13) x4 + (A134/A13) x3x4).
    Poly u = rvar(1).scaled(a13) + rvar(2).scaled(rcf({2, 3})) + (rvar(1) * rvar(2)).scaled(rcf({1, 2, 3}));
    Poly v = rvar(3) + rvar(4).scaled(rcf({1, 4}) / a13) + (rvar(3) * rvar(4)).scaled(rcf({1, 3, 4}) / a13);
    out.push_back(mul_node(ctx, rof_from_bivariate(u), rof_from_bivariate(v)));

    // Summand 3: x2 x4 * (corrections on {1,3}).
    Poly bracket = Poly::constant(ctx, nvars, rcf({2, 4}) - rcf({1, 4}) * rcf({2, 3}) / a13) +
                   rvar(1).scaled(rcf({1, 2, 4}) - rcf({1, 4}) * rcf({1, 2, 3}) / a13) +
                   rvar(3).scaled(rcf({2, 3, 4}) - rcf({1, 3, 4}) * rcf({2, 3}) / a13) +
                   (rvar(1) * rvar(3)).scaled(rcf({1, 2, 3, 4}) - rcf({1, 3, 4}) * rcf({1, 2, 3}) / a13);
    if (!bracket.is_zero()) {
        Rof pair = mul_node(ctx, Rof::leaf(roles[1], ctx.one(), ctx.zero()), Rof::leaf(roles[3], ctx.one(), ctx.zero()));
        out.push_back(mul_node(ctx, pair, rof_from_bivariate(bracket)));
    }
}

void decompose_rec(const Poly& q, std::vector<Rof>& out) {
    if (q.is_zero()) return;
    const FieldCtx& ctx = q.ctx();
    VarMask eff = q.effective_vars();
    int cnt = popcount_mask(eff);

    if (cnt <= 2) {
        out.push_back(rof_from_bivariate(q));
        return;
    }
    if (cnt == 4) {
        std::vector<int> vars;
        for (int v = 1; v <= q.nvars(); ++v)
            if (mask_contains(eff, v)) vars.push_back(v);
        base_four(q, vars, out);
        return;
    }

    // Peel the highest effective variable: q = xm * dq/dxm + q|_{xm=0}.
    int m = 0;
    for (int v = q.nvars(); v >= 1; --v)
        if (mask_contains(eff, v)) {
            m = v;
            break;
        }
    Poly dq = q.derivative(m);
    std::vector<Rof> parts;
    decompose_rec(dq, parts);
    for (const Rof& s : parts) out.push_back(mul_node(ctx, Rof::leaf(m, ctx.one(), ctx.zero()), s));
    decompose_rec(q.restricted(m, ctx.zero()), out);
}

}  // namespace

std::string construction_name(Construction c) {
    switch (c) {
        case Construction::generic: return "Generic";
        case Construction::symmetric_m: return "SymmetricM";
        case Construction::sym4_table: return "Sym4Table";
        case Construction::f_family: return "FFamily";
    }
    throw InternalInvariantError("unknown construction");
}

Construction construction_from_name(const std::string& s) {
    if (s == "Generic") return Construction::generic;
    if (s == "SymmetricM") return Construction::symmetric_m;
    if (s == "Sym4Table") return Construction::sym4_table;
    if (s == "FFamily") return Construction::f_family;
    throw SyntaxError("unknown construction name '" + s + "'");
}

bool verify_decomposition(Decomposition& d) {
    d.verified = false;
    for (const Rof& s : d.summands) {
        if (!s.is_read_once()) return false;
        if (s.max_var() > d.target.nvars()) return false;
    }
    Poly sum = expand_sum(d.summands, d.target.ctx(), d.target.nvars());
    d.verified = sum == d.target;
    return d.verified;
}

Decomposition decompose_generic(const Poly& p) {
    if (!p.is_multilinear()) throw NotMultilinearError("decompose_generic expects a multilinear polynomial");
    std::vector<Rof> out;
    decompose_rec(p, out);
    return finalize(p, Construction::generic, std::move(out));
}

Decomposition decompose_top_symmetric(const FieldCtx& ctx, int n, const FieldElem& A, const FieldElem& B) {
    if (n < 1) throw InvalidArgumentError("decompose_top_symmetric needs n >= 1");
    Poly target = gen_top_symmetric(ctx, n, A, B);
    std::vector<Rof> out;
    const int k = n / 2;

    auto tail_vars = [&](int skip1, int skip2) {
        std::vector<int> vs;
        for (int v = 1; v <= n; ++v)
            if (v != skip1 && v != skip2) vs.push_back(v);
        return vs;
    };
    auto pair_poly = [&](int v1, int v2) {
        return Poly::variable(ctx, n, v1) + Poly::variable(ctx, n, v2);
    };

    int plain_pairs = n % 2 == 0 ? k - 1 : k;
    for (int i = 1; i <= plain_pairs; ++i) {
        if (B.is_zero()) break;
        Rof pair = rof_from_bivariate(pair_poly(2 * i - 1, 2 * i));
        Rof tail = rof_monomial(ctx, tail_vars(2 * i - 1, 2 * i));
        out.push_back(mul_node(ctx, pair, tail).scaled(B));
    }

    if (n % 2 == 0) {
        // (B x_{n-1} + B x_n + A x_{n-1} x_n) * (x_1 ... x_{n-2})
        Poly head = Poly::variable(ctx, n, n - 1).scaled(B) + Poly::variable(ctx, n, n).scaled(B) +
                    (Poly::variable(ctx, n, n - 1) * Poly::variable(ctx, n, n)).scaled(A);
        if (!head.is_zero()) {
            Rof head_rof = rof_from_bivariate(head);
            std::vector<int> tail = tail_vars(n - 1, n);
            out.push_back(tail.empty() ? head_rof : mul_node(ctx, head_rof, rof_monomial(ctx, tail)));
        }
    } else {
        // (x_1 ... x_{n-1}) * (A x_n + B)
        if (!(A.is_zero() && B.is_zero())) {
            Rof last = Rof::leaf(n, A, B);
            std::vector<int> tail;
            for (int v = 1; v < n; ++v) tail.push_back(v);
            out.push_back(tail.empty() ? last : mul_node(ctx, rof_monomial(ctx, tail), last));
        }
    }
    return finalize(std::move(target), Construction::symmetric_m, std::move(out));
}

Decomposition decompose_sym4(const std::array<FieldElem, 5>& a) {
    const FieldCtx& ctx = a[0].ctx();
    for (const FieldElem& ai : a)
        if (!(ai.ctx() == ctx)) throw FieldMismatchError("sym4 weights from different fields");

    Poly target(ctx, 4);
    for (int d = 0; d <= 4; ++d) target = target + gen_symmetric(ctx, 4, d).scaled(a[d]);

    auto x = [&](int v) { return Poly::variable(ctx, 4, v); };
    std::vector<Rof> out;

    if (a[2].is_zero() && a[3].is_zero()) {
        Poly lin = Poly::constant(ctx, 4, a[0]) + (x(1) + x(2) + x(3) + x(4)).scaled(a[1]);
        if (!lin.is_zero()) out.push_back(rof_linear(lin));
        if (!a[4].is_zero()) out.push_back(rof_monomial(ctx, {1, 2, 3, 4}).scaled(a[4]));
    } else if (a[2].is_zero()) {
        // a3 != 0: (a1 + a3 x1x2)(x3 + x4 + (a4/a3) x3x4)
        //        + (a1 + a3 x3x4)(x1 + x2 - a1 a4 / a3^2) + c
        Poly u = Poly::constant(ctx, 4, a[1]) + (x(1) * x(2)).scaled(a[3]);
        Poly v = x(3) + x(4) + (x(3) * x(4)).scaled(a[4] / a[3]);
        Poly w1 = Poly::constant(ctx, 4, a[1]) + (x(3) * x(4)).scaled(a[3]);
        Poly w2 = x(1) + x(2) - Poly::constant(ctx, 4, a[1] * a[4] / (a[3] * a[3]));
        Rof first = mul_node(ctx, rof_from_bivariate(u), rof_from_bivariate(v));
        Rof second = mul_node(ctx, rof_from_bivariate(w1), rof_from_bivariate(w2));
        FieldElem c = (target - (u * v + w1 * w2)).constant_term();
        out.push_back(first.plus_const(c));
        out.push_back(second);
    } else {
        // a2 != 0: both rows share (a1 + a2(x1+x2) + a3 x1x2) * (mirror).
        FieldElem inv_a2 = a[2].inverse();
        Poly u = Poly::constant(ctx, 4, a[1]) + (x(1) + x(2)).scaled(a[2]) + (x(1) * x(2)).scaled(a[3]);
        Poly v = Poly::constant(ctx, 4, a[1]) + (x(3) + x(4)).scaled(a[2]) + (x(3) * x(4)).scaled(a[3]);
        FieldElem s = a[2] * a[2] - a[1] * a[3];
        Poly second(ctx, 4);
        if (a[2] * a[4] == a[3] * a[3]) {
            second = ((x(1) * x(2)) + (x(3) * x(4))).scaled(s);
        } else {
            FieldElem t = a[2] * a[4] - a[3] * a[3];
            second = ((x(1) * x(2)) + Poly::constant(ctx, 4, s / t)) * ((x(3) * x(4)).scaled(t) + Poly::constant(ctx, 4, s));
        }
        FieldElem c = (target.scaled(a[2]) - (u * v + second)).constant_term();

        Rof first = mul_node(ctx, rof_from_bivariate(u), rof_from_bivariate(v)).scaled(inv_a2).plus_const(c * inv_a2);
        out.push_back(first);
        if (!second.is_zero()) {
            if (a[2] * a[4] == a[3] * a[3]) {
                out.push_back(add_node(ctx, rof_monomial(ctx, {1, 2}), rof_monomial(ctx, {3, 4})).scaled(s * inv_a2));
            } else {
                FieldElem t = a[2] * a[4] - a[3] * a[3];
                Poly left = (x(1) * x(2)) + Poly::constant(ctx, 4, s / t);
                Poly right = (x(3) * x(4)).scaled(t) + Poly::constant(ctx, 4, s);
                out.push_back(mul_node(ctx, rof_from_bivariate(left), rof_from_bivariate(right)).scaled(inv_a2));
            }
        }
    }
    return finalize(std::move(target), Construction::sym4_table, std::move(out));
}

namespace {

/// Two-summand ROF pair for f with the first two weights of equal square
/// (alpha = +/- beta): alpha*(x1 +- x4)(x2 +- x3) + gamma*(x1x4 + x2x3).
std::vector<Rof> equal_square_summands(const FieldCtx& ctx, const FieldElem& alpha, const FieldElem& beta,
                                       const FieldElem& gamma) {
    const FieldElem one = ctx.one();
    FieldElem sign = alpha == beta ? one : -one;
    std::vector<Rof> out;
    if (!alpha.is_zero()) {
        Rof f1 = add_node(ctx, Rof::leaf(1, one, ctx.zero()), Rof::leaf(4, sign, ctx.zero()));
        Rof f2 = add_node(ctx, Rof::leaf(2, one, ctx.zero()), Rof::leaf(3, sign, ctx.zero()));
        out.push_back(mul_node(ctx, f1, f2).scaled(alpha));
    }
    if (!gamma.is_zero()) out.push_back(add_node(ctx, rof_monomial(ctx, {1, 4}), rof_monomial(ctx, {2, 3})).scaled(gamma));
    return out;
}

}  // namespace

FFamilyOutcome decompose_f_family(const FieldElem& alpha, const FieldElem& beta, const FieldElem& gamma) {
    const FieldCtx& ctx = alpha.ctx();
    ConditionReport rep = f_family_conditions(alpha, beta, gamma);
    Poly target = gen_f_family(alpha, beta, gamma);
    const FieldElem one = ctx.one(), zero = ctx.zero();

    if (!*rep.c1) {
        // Some weight vanishes; the surviving monomial pairs are ROPs on
        // their own.
        std::vector<Rof> out;
        struct Group {
            FieldElem w;
            int a, b, c, d;
        };
        for (const Group& g : {Group{alpha, 1, 2, 3, 4}, Group{beta, 1, 3, 2, 4}, Group{gamma, 1, 4, 2, 3}}) {
            if (g.w.is_zero()) continue;
            out.push_back(add_node(ctx, rof_monomial(ctx, {g.a, g.b}), rof_monomial(ctx, {g.c, g.d})).scaled(g.w));
        }
        return {FFamilyOutcome::Status::decomposed, finalize(std::move(target), Construction::f_family, std::move(out)),
                std::move(rep)};
    }

    if (!*rep.c2) {
        // Move the equal-square pair into the first two weight slots by a
        // variable relabelling, build there, and relabel back.
        FieldElem a2 = alpha * alpha, b2 = beta * beta, c2 = gamma * gamma;
        std::vector<int> perm;                      // renaming applied to canonical summands
        FieldElem ca = alpha, cb = beta, cc = gamma;  // canonical triple
        if (a2 == b2) {
            perm = {1, 2, 3, 4};
        } else if (b2 == c2) {
            // triple (beta, gamma, alpha) is f after renaming x2->x4, x4->x3, x3->x2;
            // the inverse renaming is 2->3, 3->4, 4->2.
            perm = {1, 3, 4, 2};
            ca = beta;
            cb = gamma;
            cc = alpha;
        } else {
            // a2 == c2: triple (alpha, gamma, beta) via x3 <-> x4.
            perm = {1, 2, 4, 3};
            ca = alpha;
            cb = gamma;
            cc = beta;
        }
        std::vector<Rof> canonical = equal_square_summands(ctx, ca, cb, cc);
        std::vector<Rof> out;
        for (const Rof& s : canonical) out.push_back(s.renamed(perm));
        return {FFamilyOutcome::Status::decomposed, finalize(std::move(target), Construction::f_family, std::move(out)),
                std::move(rep)};
    }

    if (!*rep.c3) {
        if (!rep.c3_root) {
            // reals semantics with an irrational root: expressible, but the
            // coefficients are not representable in exact arithmetic.
            return {FFamilyOutcome::Status::root_not_representable, std::nullopt, std::move(rep)};
        }
        FieldElem tau = *rep.c3_root;
        FieldElem two_bg = ctx.from_int(2) * beta * gamma;
        if (two_bg.is_zero()) throw InternalInvariantError("degenerate denominator in the root branch");
        FieldElem delta = (alpha * alpha - beta * beta - gamma * gamma + tau) / two_bg;
        if (delta.is_zero()) throw InternalInvariantError("delta vanished in the root branch");
        FieldElem mu = -(gamma + beta * delta) / alpha;
        if (mu.is_zero()) throw InternalInvariantError("mu vanished in the root branch");

        // alpha (x1 - mu x3)(x2 - 1/mu x4) + beta (x1 - delta x2)(x3 - 1/delta x4)
        Rof s1 = mul_node(ctx,
                          add_node(ctx, Rof::leaf(1, one, zero), Rof::leaf(3, -mu, zero)),
                          add_node(ctx, Rof::leaf(2, one, zero), Rof::leaf(4, -(mu.inverse()), zero)))
                     .scaled(alpha);
        Rof s2 = mul_node(ctx,
                          add_node(ctx, Rof::leaf(1, one, zero), Rof::leaf(2, -delta, zero)),
                          add_node(ctx, Rof::leaf(3, one, zero), Rof::leaf(4, -(delta.inverse()), zero)))
                     .scaled(beta);
        std::vector<Rof> out{s1, s2};
        return {FFamilyOutcome::Status::decomposed, finalize(std::move(target), Construction::f_family, std::move(out)),
                std::move(rep)};
    }

    return {FFamilyOutcome::Status::not_expressible, std::nullopt, std::move(rep)};
}

std::optional<std::array<FieldElem, 3>> match_f_family(const Poly& g) {
    if (g.nvars() != 4 || !g.is_multilinear()) return std::nullopt;
    FieldElem a = g.coeff_mask(mask_of_var(1) | mask_of_var(2));
    FieldElem b = g.coeff_mask(mask_of_var(1) | mask_of_var(3));
    FieldElem c = g.coeff_mask(mask_of_var(1) | mask_of_var(4));
    if (gen_f_family(a, b, c) != g) return std::nullopt;
    return std::array<FieldElem, 3>{a, b, c};
}

std::optional<std::array<FieldElem, 5>> match_sym4(const Poly& g) {
    if (g.nvars() != 4 || !g.is_multilinear()) return std::nullopt;
    std::array<FieldElem, 5> a{g.constant_term(), g.coeff_mask(mask_of_var(1)),
                               g.coeff_mask(mask_of_var(1) | mask_of_var(2)),
                               g.coeff_mask(mask_of_var(1) | mask_of_var(2) | mask_of_var(3)),
                               g.coeff_mask(VarMask{0b1111})};
    Poly probe(g.ctx(), 4);
    for (int d = 0; d <= 4; ++d) probe = probe + gen_symmetric(g.ctx(), 4, d).scaled(a[d]);
    if (probe != g) return std::nullopt;
    return a;
}

std::optional<TopSymmetricShape> match_top_symmetric(const Poly& g) {
    int n = g.nvars();
    if (n < 1 || !g.is_multilinear()) return std::nullopt;
    VarMask full = n >= 31 ? 0 : (VarMask{1} << n) - 1;
    FieldElem A = g.coeff_mask(full);
    FieldElem B = g.coeff_mask(full & ~mask_of_var(n));
    if (gen_top_symmetric(g.ctx(), n, A, B) != g) return std::nullopt;
    return TopSymmetricShape{n, A, B};
}

}  // namespace rops
