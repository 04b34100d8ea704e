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

#include "rops/refute.hpp"

namespace rops {

namespace {

/// Two-summand certificate from reconstructed forms: each product of
/// variable-disjoint affine forms is a ROF.
std::optional<Decomposition> certificate_from_forms(const Poly& g, const C3PrimeWitness& w) {
    std::vector<Rof> summands;
    auto push_product = [&](const Poly& a, const Poly& b) {
        if ((a * b).is_zero()) return;
        // A constant factor is folded into the other side's labels; a
        // constant leaf would re-read a variable the other form owns.
        if (a.effective_vars() == 0) {
            summands.push_back(rof_linear(b).scaled(a.constant_term()));
        } else if (b.effective_vars() == 0) {
            summands.push_back(rof_linear(a).scaled(b.constant_term()));
        } else {
            summands.push_back(Rof::node(Rof::Op::mul, g.ctx().one(), g.ctx().zero(), rof_linear(a), rof_linear(b)));
        }
    };
    push_product(w.l1, w.l2);
    push_product(w.l3, w.l4);
    Decomposition d{g, Construction::generic, std::move(summands), false};
    if (!verify_decomposition(d)) return std::nullopt;
    return d;
}

}  // namespace

Sum2Result refute_sum2(const Poly& g) {
    if (g.nvars() != 4) throw WrongArityError("refute_sum2 expects a 4-variable polynomial");
    if (!g.is_multilinear()) throw NotMultilinearError("refute_sum2 expects a multilinear polynomial");

    ConditionReport rep;
    if (auto fshape = match_f_family(g)) {
        rep = f_family_conditions((*fshape)[0], (*fshape)[1], (*fshape)[2]);
    }
    rep.cprime_evaluated = true;
    rep.c1p = c1prime_check(g);
    rep.c2p = c2prime_check(g);
    C3PrimeResult c3r = c3prime_reconstruct(g);
    rep.c3p = c3r.witness;
    rep.c3p_blocked_irrational = c3r.blocked_irrational;

    if (!rep.c1p && !rep.c2p && !rep.c3p && !c3r.blocked_irrational)
        return {Sum2Verdict::refuted_not_sum2, std::move(rep), std::nullopt, false};

    // Certificate hunt: symmetric 4-variate table first, then the f-family
    // construction, then the reconstructed forms.
    if (auto sym = match_sym4(g)) {
        Decomposition d = decompose_sym4(*sym);
        return {Sum2Verdict::expressible_witness, std::move(rep), std::move(d), false};
    }
    if (auto fshape = match_f_family(g)) {
        FFamilyOutcome out = decompose_f_family((*fshape)[0], (*fshape)[1], (*fshape)[2]);
        if (out.status == FFamilyOutcome::Status::decomposed)
            return {Sum2Verdict::expressible_witness, std::move(rep), std::move(out.decomposition), false};
        if (out.status == FFamilyOutcome::Status::root_not_representable)
            return {Sum2Verdict::expressible_witness, std::move(rep), std::nullopt, true};
    }
    if (rep.c3p) {
        if (auto d = certificate_from_forms(g, *rep.c3p))
            return {Sum2Verdict::expressible_witness, std::move(rep), std::move(d), false};
    }
    return {Sum2Verdict::inconclusive, std::move(rep), std::nullopt, false};
}

}  // namespace rops
