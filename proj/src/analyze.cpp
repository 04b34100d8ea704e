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

#include "rops/analyze.hpp"

#include <algorithm>

namespace rops {

namespace {

constexpr std::int64_t kMaxBruteModulus = 10'000;

FieldElem cf2(const Poly& g, int a, int b) { return g.coeff_mask(mask_of_var(a) | mask_of_var(b)); }
FieldElem cf1(const Poly& g, int a) { return g.coeff_mask(mask_of_var(a)); }

void require_multilinear_4var(const Poly& g, const char* op) {
    if (g.nvars() != 4) throw WrongArityError(std::string(op) + " expects a 4-variable polynomial");
    if (!g.is_multilinear()) throw NotMultilinearError(std::string(op) + " expects a multilinear polynomial");
}

/// Nontrivial vanishing combination of the given rows (as vectors over the
/// monomial union), or nullopt if they are linearly independent.
std::optional<std::vector<FieldElem>> linear_dependence(const FieldCtx& ctx, const std::vector<Poly>& polys) {
    std::map<Poly::Mono, int, Poly::GradedLexDesc> columns;
    for (const Poly& p : polys)
        for (const auto& [m, c] : p.terms()) columns.emplace(m, 0);
    int ncols = 0;
    for (auto& [m, idx] : columns) idx = ncols++;

    std::size_t n = polys.size();
    // Row-reduce [values | identity]; a row whose value part cancels gives
    // the dependence coefficients in its identity part.
    std::vector<std::vector<FieldElem>> reduced;  // rows with pivots
    std::vector<int> pivot_col;
    for (std::size_t r = 0; r < n; ++r) {
        std::vector<FieldElem> row;
        row.reserve(ncols + n);
        for (int c = 0; c < ncols; ++c) row.push_back(ctx.zero());
        for (const auto& [m, c] : polys[r].terms()) row[columns[m]] = c;
        for (std::size_t k = 0; k < n; ++k) row.push_back(k == r ? ctx.one() : ctx.zero());

        for (std::size_t t = 0; t < reduced.size(); ++t) {
            int pc = pivot_col[t];
            if (row[pc].is_zero()) continue;
            FieldElem factor = row[pc] / reduced[t][pc];
            for (std::size_t c = 0; c < row.size(); ++c) row[c] -= factor * reduced[t][c];
        }
        int pc = -1;
        for (int c = 0; c < ncols; ++c) {
            if (!row[c].is_zero()) {
                pc = c;
                break;
            }
        }
        if (pc < 0) return std::vector<FieldElem>(row.begin() + ncols, row.end());
        reduced.push_back(std::move(row));
        pivot_col.push_back(pc);
    }
    return std::nullopt;
}

/// Affine polynomial p*xk + q*xl + r on a fixed variable pair.
struct Affine2 {
    FieldElem p, q, r;

    bool operator==(const Affine2& o) const { return p == o.p && q == o.q && r == o.r; }
};

Poly affine2_poly(const Affine2& f, int k, int l, const FieldCtx& ctx) {
    Poly out = Poly::constant(ctx, 4, f.r);
    out = out + Poly::variable(ctx, 4, k).scaled(f.p) + Poly::variable(ctx, 4, l).scaled(f.q);
    return out;
}

struct QuadRoots {
    std::vector<FieldElem> roots;
    bool blocked_irrational = false;
};

/// Exact roots of a2*x^2 + a1*x + a0 = 0 in the coefficient field. Over a
/// prime field the search is exhaustive; over the rationals the
/// discriminant decides, and reals semantics may report a blocked
/// (irrational-root) outcome.
QuadRoots solve_quadratic(const FieldElem& a2, const FieldElem& a1, const FieldElem& a0) {
    const FieldCtx& ctx = a2.ctx();
    QuadRoots out;
    if (ctx.is_prime()) {
        std::int64_t p = ctx.modulus();
        if (p > kMaxBruteModulus)
            throw ResourceGuardError("quadratic root search limited to p <= " + std::to_string(kMaxBruteModulus));
        for (std::int64_t v = 0; v < p; ++v) {
            FieldElem x = ctx.from_int(v);
            if ((a2 * x * x + a1 * x + a0).is_zero()) out.roots.push_back(x);
        }
        return out;
    }
    if (a2.is_zero()) {
        if (!a1.is_zero()) out.roots.push_back(-a0 / a1);
        // a2 = a1 = 0: either no root or identically zero; both give no
        // useful finite root set here.
        return out;
    }
    FieldElem disc = a1 * a1 - ctx.from_int(4) * a2 * a0;
    SqrtResult s = sqrt_in_field(disc);
    if (s.kind == SqrtResult::Kind::exists_irrational) {
        out.blocked_irrational = true;
        return out;
    }
    if (s.kind == SqrtResult::Kind::none) return out;
    FieldElem two_a2 = ctx.from_int(2) * a2;
    FieldElem r1 = (-a1 + *s.root) / two_a2;
    FieldElem r2 = (-a1 - *s.root) / two_a2;
    out.roots.push_back(r1);
    if (r2 != r1) out.roots.push_back(r2);
    return out;
}

struct DivisorCandidates {
    std::vector<Affine2> forms;
    bool blocked_irrational = false;
};

/// All affine forms on (xk, xl), normalized to leading coefficient 1, that
/// divide the bivariate polynomial dd (total degree <= 2, dd != 0).
DivisorCandidates affine_divisor_candidates(const Poly& dd, int k, int l) {
    const FieldCtx& ctx = dd.ctx();
    DivisorCandidates out;
    const FieldElem zero = ctx.zero(), one = ctx.one();

    Poly::Mono mono(dd.nvars(), 0);
    auto coeff_deg = [&](int ek, int el) {
        Poly::Mono m(dd.nvars(), 0);
        m[k - 1] = ek;
        m[l - 1] = el;
        return dd.coeff(m);
    };
    FieldElem c00 = coeff_deg(0, 0), c10 = coeff_deg(1, 0), c01 = coeff_deg(0, 1);
    FieldElem c20 = coeff_deg(2, 0), c11 = coeff_deg(1, 1), c02 = coeff_deg(0, 2);

    auto push = [&](const Affine2& f) {
        if (std::find(out.forms.begin(), out.forms.end(), f) == out.forms.end()) out.forms.push_back(f);
    };

    if (c20.is_zero() && c11.is_zero() && c02.is_zero()) {
        // dd itself is affine; it is its own only direction.
        if (!c10.is_zero())
            push({one, c01 / c10, c00 / c10});
        else if (!c01.is_zero())
            push({zero, one, c00 / c01});
        return out;
    }

    // Directions (pu, pv) with pu*xk + pv*xl dividing the quadratic form.
    std::vector<std::pair<FieldElem, FieldElem>> dirs;
    if (!c20.is_zero()) {
        if (ctx.characteristic() == 2) {
            for (std::int64_t t = 0; t < 2; ++t) {
                FieldElem tv = ctx.from_int(t);
                // root (1 : tv) of the form <=> direction (xk - tv*xl)... over
                // F2 test all projective points directly.
                if ((c20 + c11 * tv + c02 * tv * tv).is_zero()) dirs.emplace_back(one, -tv);
            }
            // point (0 : 1)
            if (c02.is_zero()) dirs.emplace_back(zero, one);
        } else {
            QuadRoots qr = solve_quadratic(c20, c11, c02);
            out.blocked_irrational |= qr.blocked_irrational;
            for (const FieldElem& t : qr.roots) dirs.emplace_back(one, -t);
        }
    } else {
        dirs.emplace_back(zero, one);  // the factor xl
        if (!c11.is_zero()) dirs.emplace_back(one, c02 / c11);
    }

    for (const auto& [pu, pv] : dirs) {
        if (!pu.is_zero()) {
            // L = xk + pv*xl + r; substitute xk = -(pv*xl + r) and require
            // the result to vanish coefficient-wise in xl.
            FieldElem K2 = c20 * pv * pv - c11 * pv + c02;
            if (!K2.is_zero()) continue;
            FieldElem K1 = c01 - c10 * pv;
            FieldElem K1r = ctx.from_int(2) * c20 * pv - c11;
            auto accept = [&](const FieldElem& r) {
                if (!(K1 + r * K1r).is_zero()) return;
                if (!(c20 * r * r - c10 * r + c00).is_zero()) return;
                push({one, pv, r});
            };
            if (!K1r.is_zero()) {
                accept(-K1 / K1r);
            } else if (K1.is_zero()) {
                QuadRoots qr = solve_quadratic(c20, -c10, c00);
                out.blocked_irrational |= qr.blocked_irrational;
                for (const FieldElem& r : qr.roots) accept(r);
            }
        } else {
            // L = xl + r; substitute xl = -r.
            if (!c20.is_zero()) continue;
            auto accept = [&](const FieldElem& r) {
                if (!(c10 - c11 * r).is_zero()) return;
                if (!(c02 * r * r - c01 * r + c00).is_zero()) return;
                push({zero, one, r});
            };
            if (!c11.is_zero()) {
                accept(c10 / c11);
            } else if (c10.is_zero()) {
                QuadRoots qr = solve_quadratic(c02, -c01, c00);
                out.blocked_irrational |= qr.blocked_irrational;
                for (const FieldElem& r : qr.roots) accept(r);
            }
        }
    }
    return out;
}

/// Role assignment for the structure
///   g = l1(xi,xj) * l2(xk,xl) + l3(xi,xk) * l4(xj,xl).
/// The alternative tail pairing (l3 with xl, l4 with xk) is the same
/// structure with the k and l roles exchanged, so enumerating ordered
/// (k,l) tuples covers both.
struct Roles {
    int i, j, k, l;
};

/// Given l2, solves for l1, l3, l4 by coefficient matching and validates by
/// exact re-expansion. Handles the generic shape (all forms genuinely
/// bivariate); degenerate shapes are reachable through other role choices
/// or fall under the linearizing-restriction condition.
std::optional<C3PrimeWitness> solve_given_l2(const Poly& g, const Roles& ro, const Affine2& l2) {
    const FieldCtx& ctx = g.ctx();
    const FieldElem zero = ctx.zero();
    const int i = ro.i, j = ro.j, k = ro.k, l = ro.l;
    const FieldElem &p = l2.p, &q = l2.q, &r = l2.r;

    if (p.is_zero() || q.is_zero()) return std::nullopt;

    // Cells of g untouched by l3*l4 pin l1's variable coefficients.
    FieldElem a1 = cf2(g, i, k) / p;
    FieldElem b1 = cf2(g, j, l) / q;

    // The quadratic part of g - l1*l2 is the rank-one matrix
    // (a3, b3)^T (a4, b4); its top-left cell is a3*a4, which is nonzero in
    // the genuinely-bivariate shape.
    FieldElem m11 = cf2(g, i, j);
    FieldElem m12 = cf2(g, i, l) - a1 * q;
    FieldElem m21 = cf2(g, j, k) - b1 * p;
    FieldElem m22 = cf2(g, k, l);
    if (m11.is_zero() || !(m11 * m22 == m12 * m21)) return std::nullopt;
    FieldElem a3 = m11, b3 = m21;
    FieldElem a4 = ctx.one(), b4 = m12 / m11;

    // With the directions fixed, the constants follow from the linear
    // coefficients of g.
    FieldElem c4 = (cf1(g, i) - a1 * r) / a3;
    FieldElem c3 = cf1(g, j) - b1 * r;  // a4 = 1
    FieldElem c1 = (cf1(g, k) - b3 * c4) / p;

    Poly l1 = Poly::variable(ctx, 4, i).scaled(a1) + Poly::variable(ctx, 4, j).scaled(b1) +
              Poly::constant(ctx, 4, c1);
    Poly l2p = affine2_poly(l2, k, l, ctx);
    Poly l3 = Poly::variable(ctx, 4, i).scaled(a3) + Poly::variable(ctx, 4, k).scaled(b3) +
              Poly::constant(ctx, 4, c3);
    Poly l4 = Poly::variable(ctx, 4, j).scaled(a4) + Poly::variable(ctx, 4, l).scaled(b4) +
              Poly::constant(ctx, 4, c4);

    if (l1 * l2p + l3 * l4 != g) return std::nullopt;

    // Normalize l4 to leading coefficient 1 (smaller-index variable first),
    // carrying the scale on l3.
    FieldElem lead = zero;
    for (int var : {std::min(j, l), std::max(j, l)}) {
        FieldElem c = cf1(l4, var);
        if (!c.is_zero()) {
            lead = c;
            break;
        }
    }
    if (lead.is_zero() && !l4.is_zero()) lead = l4.constant_term();
    if (!lead.is_zero()) {
        l4 = l4.scaled(lead.inverse());
        l3 = l3.scaled(lead);
    }
    return C3PrimeWitness{l1, l2p, l3, l4};
}

/// Commutator-free fallback for inputs whose commutators vanish
/// identically. With l2 normalized to p = 1, the rank-one consistency of
/// the tail's quadratic part is a quadratic in q; for each root, the
/// constants become affine in the unknown constant r of l2, leaving one
/// affine and one quadratic consistency equation that pin r exactly.
std::optional<C3PrimeWitness> solve_unconstrained(const Poly& g, const Roles& ro, bool* blocked) {
    const FieldCtx& ctx = g.ctx();
    const FieldElem one = ctx.one();
    const int i = ro.i, j = ro.j, k = ro.k, l = ro.l;

    FieldElem a1 = cf2(g, i, k);  // p = 1
    FieldElem gil = cf2(g, i, l), gjk = cf2(g, j, k), gjl = cf2(g, j, l);
    FieldElem gij = cf2(g, i, j), gkl = cf2(g, k, l);

    FieldElem A2 = -a1 * gjk;
    FieldElem A1 = gil * gjk + a1 * gjl - gij * gkl;
    FieldElem A0 = -gil * gjl;
    QuadRoots qroots = solve_quadratic(A2, A1, A0);
    if (qroots.blocked_irrational && blocked) *blocked = true;

    for (const FieldElem& q : qroots.roots) {
        if (q.is_zero() || gij.is_zero()) continue;
        FieldElem b1 = gjl / q;
        FieldElem m12 = gil - a1 * q;
        FieldElem a3 = gij, b3 = gjk - b1;
        FieldElem b4 = m12 / gij;  // a4 = 1
        if (!(a3 * gkl == m12 * b3)) continue;  // rank-one failed despite the root

        // c4, c3, c1 as affine functions of the unknown r.
        FieldElem c40 = cf1(g, i) / a3, c41 = -a1 / a3;
        FieldElem c30 = cf1(g, j), c31 = -b1;
        FieldElem c10 = cf1(g, k) - b3 * c40, c11 = -(b3 * c41);
        // remaining constraints: the xl coefficient and the constant term
        FieldElem e10 = q * c10 + b4 * c30 - cf1(g, l);
        FieldElem e11 = q * c11 + b4 * c31;
        FieldElem f2 = c11 + c31 * c41;
        FieldElem f1 = c10 + c30 * c41 + c31 * c40;
        FieldElem f0 = c30 * c40 - g.constant_term();

        std::vector<FieldElem> r_cands;
        if (!e11.is_zero()) {
            FieldElem r = -e10 / e11;
            if ((f2 * r * r + f1 * r + f0).is_zero()) r_cands.push_back(r);
        } else if (e10.is_zero()) {
            if (f2.is_zero() && f1.is_zero() && f0.is_zero()) {
                r_cands.push_back(ctx.zero());  // every r works; take the canonical one
            } else {
                QuadRoots rr = solve_quadratic(f2, f1, f0);
                if (rr.blocked_irrational && blocked) *blocked = true;
                r_cands = std::move(rr.roots);
            }
        }

        for (const FieldElem& r : r_cands) {
            if (auto w = solve_given_l2(g, ro, Affine2{one, q, r})) return w;
        }
    }
    return std::nullopt;
}

}  // namespace

ConditionReport f_family_conditions(const FieldElem& a, const FieldElem& b, const FieldElem& c) {
    const FieldCtx& ctx = a.ctx();
    if (!(b.ctx() == ctx) || !(c.ctx() == ctx)) throw FieldMismatchError("weights from different fields");
    ConditionReport rep;
    rep.c1 = !(a * b * c).is_zero();

    FieldElem a2 = a * a, b2 = b * b, c2 = c * c;
    rep.c2 = !((a2 - b2) * (b2 - c2) * (c2 - a2)).is_zero();

    FieldElem two = ctx.from_int(2);
    auto sq = [](const FieldElem& x) { return x * x; };
    rep.d_values.push_back(sq(a2 - b2 - c2) - sq(two * b * c));
    rep.d_values.push_back(sq(-a2 + b2 - c2) - sq(two * a * c));
    rep.d_values.push_back(sq(-a2 - b2 + c2) - sq(two * a * b));

    bool any_root = false;
    for (const FieldElem& d : rep.d_values) {
        SqrtResult s = sqrt_in_field(d);
        if (s.kind == SqrtResult::Kind::root) {
            any_root = true;
            if (!rep.c3_root) rep.c3_root = s.root;
        } else if (s.kind == SqrtResult::Kind::exists_irrational) {
            any_root = true;
            rep.c3_root_irrational = true;
        }
    }
    if (rep.c3_root) rep.c3_root_irrational = false;
    rep.c3 = !any_root;
    return rep;
}

std::optional<C1PrimeWitness> c1prime_check(const Poly& g) {
    require_multilinear_4var(g, "c1prime_check");
    const FieldCtx& ctx = g.ctx();
    const FieldElem zero = ctx.zero(), one = ctx.one();

    for (int i = 1; i <= 4; ++i) {
        for (int j = i + 1; j <= 4; ++j) {
            int k = 0, l = 0;
            for (int v = 1; v <= 4; ++v)
                if (v != i && v != j) (k == 0 ? k : l) = v;

            // Post-restriction coefficient of xk*xl is c0 + c1 A + c2 B + c3 A B.
            FieldElem c0 = cf2(g, k, l);
            FieldElem c1 = g.coeff_mask(mask_of_var(i) | mask_of_var(k) | mask_of_var(l));
            FieldElem c2 = g.coeff_mask(mask_of_var(j) | mask_of_var(k) | mask_of_var(l));
            FieldElem c3 = g.coeff_mask(mask_of_var(i) | mask_of_var(j) | mask_of_var(k) | mask_of_var(l));

            std::optional<std::pair<FieldElem, FieldElem>> ab;
            if (!c3.is_zero()) {
                FieldElem A = c2.is_zero() ? one : zero;  // makes c2 + c3 A != 0
                ab = {A, -(c0 + c1 * A) / (c2 + c3 * A)};
            } else if (!c1.is_zero()) {
                ab = {-c0 / c1, zero};
            } else if (!c2.is_zero()) {
                ab = {zero, -c0 / c2};
            } else if (c0.is_zero()) {
                ab = {zero, zero};
            }
            if (!ab) continue;

            Poly restricted = g.restricted(i, ab->first).restricted(j, ab->second);
            if (restricted.total_degree() > 1)
                throw InternalInvariantError("linearizing witness failed re-substitution");
            return C1PrimeWitness{i, j, ab->first, ab->second};
        }
    }
    return std::nullopt;
}

std::optional<C2PrimeWitness> c2prime_check(const Poly& g) {
    if (!g.is_multilinear()) throw NotMultilinearError("c2prime_check expects a multilinear polynomial");
    const FieldCtx& ctx = g.ctx();
    for (int i = 1; i <= g.nvars(); ++i) {
        for (int j = i + 1; j <= g.nvars(); ++j) {
            std::vector<Poly> polys;
            polys.push_back(Poly::variable(ctx, g.nvars(), i));
            polys.push_back(Poly::variable(ctx, g.nvars(), j));
            polys.push_back(g.derivative(i));
            polys.push_back(g.derivative(j));
            polys.push_back(Poly::constant(ctx, g.nvars(), ctx.one()));
            if (auto dep = linear_dependence(ctx, polys)) return C2PrimeWitness{i, j, std::move(*dep)};
        }
    }
    return std::nullopt;
}

C3PrimeResult c3prime_reconstruct(const Poly& g) {
    require_multilinear_4var(g, "c3prime_reconstruct");
    C3PrimeResult result;
    if (g.total_degree() > 2) return result;  // products of affine forms stay quadratic
    if (g.is_zero()) return result;

    // Pair partitions in lexicographic order; for each, candidate l2's come
    // from the commutator at the (i,j) block (the form on the other block
    // divides it), then from the direct fallback. Flipping the blocks and
    // reordering (k,l) cover every ordered role layout.
    static constexpr std::array<std::array<int, 4>, 3> kPartitions = {{{1, 2, 3, 4}, {1, 3, 2, 4}, {1, 4, 2, 3}}};

    for (const auto& part : kPartitions) {
        for (bool flip_blocks : {false, true}) {
            int i = flip_blocks ? part[2] : part[0];
            int j = flip_blocks ? part[3] : part[1];
            int k0 = flip_blocks ? part[0] : part[2];
            int l0 = flip_blocks ? part[1] : part[3];

            Poly delta = g.commutator(i, j);
            bool delta_usable = !delta.is_zero() && delta.total_degree() <= 2;
            for (bool tail_swapped : {false, true}) {
                Roles ro{i, j, tail_swapped ? l0 : k0, tail_swapped ? k0 : l0};
                if (delta_usable) {
                    DivisorCandidates dc = affine_divisor_candidates(delta, ro.k, ro.l);
                    result.blocked_irrational |= dc.blocked_irrational;
                    for (const Affine2& l2 : dc.forms) {
                        if (auto w = solve_given_l2(g, ro, l2)) {
                            result.witness = std::move(w);
                            return result;
                        }
                    }
                }
                bool blocked = false;
                if (auto w = solve_unconstrained(g, ro, &blocked)) {
                    result.witness = std::move(w);
                    return result;
                }
                result.blocked_irrational |= blocked;
            }
        }
    }
    return result;
}

TrivariateVerdict refute_trivariate_rop(const Poly& g) {
    if (!g.is_multilinear()) throw NotMultilinearError("refute_trivariate_rop expects a multilinear polynomial");
    VarMask eff = g.effective_vars();
    if (popcount_mask(eff) != 3) throw WrongArityError("refute_trivariate_rop expects exactly 3 effective variables");

    std::vector<int> vars;
    for (int v = 1; v <= g.nvars(); ++v)
        if (mask_contains(eff, v)) vars.push_back(v);

    FieldElem cube = g.coeff_mask(eff);
    for (int idx = 0; idx < 3; ++idx) {
        int a = vars[idx];
        int b = vars[(idx + 1) % 3], c = vars[(idx + 2) % 3];
        // Setting xa = A leaves xb*xc with coefficient cbc + A*cube.
        FieldElem cbc = cf2(g, b, c);
        bool solvable = !cube.is_zero() || cbc.is_zero();
        if (solvable) return TrivariateVerdict::inconclusive;
        (void)a;
    }
    return TrivariateVerdict::not_rop;
}

bool divides_affine(const Poly& q, const Poly& l) {
    if (l.total_degree() > 1) throw InvalidArgumentError("divisor must be affine");
    if (l.is_zero()) return q.is_zero();
    VarMask eff = l.effective_vars();
    if (eff == 0) return true;  // nonzero constant divides everything
    int v = 1;
    while (!mask_contains(eff, v)) ++v;
    FieldElem cv = l.coeff_mask(mask_of_var(v));
    // Substitute xv = -(l - cv*xv)/cv and test for the zero polynomial.
    Poly rest = l - Poly::variable(l.ctx(), l.nvars(), v).scaled(cv);
    Poly value = rest.scaled(-(cv.inverse()));
    return q.substituted(v, value).is_zero();
}

}  // namespace rops
