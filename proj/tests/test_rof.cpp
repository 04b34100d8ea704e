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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rops/rof.hpp"
#include "testutil.hpp"

using namespace rops;

namespace {

std::vector<int> var_list(int n) {
    std::vector<int> v(n);
    for (int i = 0; i < n; ++i) v[i] = i + 1;
    return v;
}

}  // namespace

TEST_CASE("expansion of leaves and nodes") {
    auto q = FieldCtx::rationals();
    Rof leaf = Rof::leaf(1, q.from_int(2), q.from_int(3));
    CHECK(leaf.expand(1) == Poly::variable(q, 1, 1).scaled(q.from_int(2)) + Poly::constant(q, 1, q.from_int(3)));

    Rof prod = Rof::node(Rof::Op::mul, q.one(), q.zero(), Rof::leaf(1, q.one(), q.zero()),
                         Rof::leaf(2, q.one(), q.zero()));
    CHECK(prod.expand(2) == Poly::variable(q, 2, 1) * Poly::variable(q, 2, 2));
}

TEST_CASE("the first worked pairing example expands correctly") {
    // 2(x1 + x4)(x2 + x3) + 3(x1x4 + x2x3) sums to the (2,2,3) pairing.
    auto q = FieldCtx::rationals();
    Rof s1 = Rof::node(Rof::Op::mul, q.from_int(2), q.zero(),
                       Rof::node(Rof::Op::add, q.one(), q.zero(), Rof::leaf(1, q.one(), q.zero()),
                                 Rof::leaf(4, q.one(), q.zero())),
                       Rof::node(Rof::Op::add, q.one(), q.zero(), Rof::leaf(2, q.one(), q.zero()),
                                 Rof::leaf(3, q.one(), q.zero())));
    Rof s2 = Rof::node(Rof::Op::add, q.from_int(3), q.zero(), rof_monomial(q, {1, 4}), rof_monomial(q, {2, 3}));
    CHECK(s1.expand(4) + s2.expand(4) == gen_f_family(q.from_int(2), q.from_int(2), q.from_int(3)));
}

TEST_CASE("read-once validation") {
    auto q = FieldCtx::rationals();
    CHECK(Rof::leaf(1, q.one(), q.zero()).check_read_once().ok);

    Rof dup = Rof::node(Rof::Op::add, q.one(), q.zero(), Rof::leaf(1, q.one(), q.zero()),
                        Rof::leaf(1, q.one(), q.one()));
    auto check = dup.check_read_once();
    CHECK(!check.ok);
    CHECK(check.offender == 1);
    CHECK_THROWS_AS(dup.expand(1), NotReadOnceError);
}

TEST_CASE("multiplicative detection") {
    auto q = FieldCtx::rationals();
    CHECK(Rof::leaf(1, q.one(), q.zero()).is_multiplicative());
    CHECK(rof_monomial(q, {1, 2, 3, 4}).is_multiplicative());
    Rof with_add = Rof::node(Rof::Op::mul, q.one(), q.zero(), rof_monomial(q, {1, 2}),
                             Rof::node(Rof::Op::add, q.one(), q.zero(), Rof::leaf(3, q.one(), q.zero()),
                                       Rof::leaf(4, q.one(), q.zero())));
    CHECK(!with_add.is_multiplicative());
}

TEST_CASE("bivariate construction") {
    auto q = FieldCtx::rationals();
    Poly p = Poly::variable(q, 2, 1) * Poly::variable(q, 2, 2);
    CHECK(rof_from_bivariate(p).expand(2) == p);

    // 2x1x2 + 4x1 + 6x2 + 13 -> outer (2, 1) over (x1+3)(x2+2)
    Poly p2 = (Poly::variable(q, 2, 1) * Poly::variable(q, 2, 2)).scaled(q.from_int(2)) +
              Poly::variable(q, 2, 1).scaled(q.from_int(4)) + Poly::variable(q, 2, 2).scaled(q.from_int(6)) +
              Poly::constant(q, 2, q.from_int(13));
    Rof t2 = rof_from_bivariate(p2);
    CHECK(t2.expand(2) == p2);
    CHECK(t2.root().op == Rof::Op::mul);
    CHECK(t2.root().a == q.from_int(2));
    CHECK(t2.root().b == q.from_int(1));

    Poly p3 = Poly::variable(q, 3, 3).scaled(q.from_int(5)) + Poly::constant(q, 3, q.from_int(7));
    Rof t3 = rof_from_bivariate(p3);
    CHECK(t3.root().op == Rof::Op::leaf);
    CHECK(t3.root().var == 3);
    CHECK(t3.expand(3) == p3);

    testutil::Rng rng(31);
    for (const FieldCtx& ctx : {FieldCtx::rationals(), FieldCtx::prime(5)}) {
        for (int rep = 0; rep < 200; ++rep) {
            Poly r = rng.multilinear(ctx, 2);
            CHECK(rof_from_bivariate(r.extended(4)).expand(4) == r.extended(4));
        }
    }
    CHECK_THROWS_AS(rof_from_bivariate(gen_symmetric(q, 3, 2)), TooManyVariablesError);
}

TEST_CASE("linear chains") {
    auto q = FieldCtx::rationals();
    Poly lin = Poly::variable(q, 3, 1) + Poly::variable(q, 3, 2) + Poly::variable(q, 3, 3);
    Rof t = rof_linear(lin);
    CHECK(t.expand(3) == lin);
    CHECK(t.root().op == Rof::Op::add);
    CHECK(t.root().right->op == Rof::Op::leaf);  // left-leaning

    Rof c = rof_linear(Poly::constant(q, 1, q.from_int(5)));
    CHECK(c.root().op == Rof::Op::leaf);
    CHECK(c.root().var == 1);
    CHECK(c.root().a.is_zero());
    CHECK(c.root().b == q.from_int(5));

    testutil::Rng rng(32);
    for (int rep = 0; rep < 100; ++rep) {
        Poly p(q, 4);
        p.add_term_mask(0, rng.elem(q));
        for (int v = 1; v <= 4; ++v) p.add_term_mask(mask_of_var(v), rng.elem(q));
        CHECK(rof_linear(p).expand(4) == p);
    }
    CHECK_THROWS_AS(rof_linear(gen_symmetric(q, 2, 2)), InvalidArgumentError);
}

TEST_CASE("expansions of random read-once formulas are multilinear") {
    testutil::Rng rng(33);
    for (const FieldCtx& ctx : {FieldCtx::rationals(), FieldCtx::prime(3)}) {
        for (int rep = 0; rep < 150; ++rep) {
            int n = static_cast<int>(rng.uniform(1, 6));
            Rof t = rng.rof(ctx, var_list(n));
            CHECK(t.check_read_once().ok);
            CHECK(t.expand(n).is_multilinear());
        }
    }
}

TEST_CASE("derivative-kill witness") {
    auto q = FieldCtx::rationals();

    SUBCASE("worked instances") {
        Rof t1 = rof_monomial(q, {1, 2});
        auto w1 = derivative_kill_witness(t1, 1, 2);
        CHECK(w1.j == 2);
        CHECK(w1.gamma.is_zero());

        Rof t2 = Rof::node(Rof::Op::mul, q.one(), q.zero(),
                           Rof::leaf(1, q.from_int(2), q.from_int(-4)), Rof::leaf(2, q.one(), q.zero()));
        auto w2 = derivative_kill_witness(t2, 1, 2);
        CHECK(w2.j == 2);
        CHECK(w2.gamma == q.from_int(2));

        Rof t3 = Rof::node(Rof::Op::mul, q.one(), q.zero(), rof_monomial(q, {1, 2}), rof_monomial(q, {3, 4}));
        auto w3 = derivative_kill_witness(t3, 3, 4);
        CHECK(w3.j == 4);  // smallest effective variable in the sibling subtree
        CHECK(w3.gamma.is_zero());
        Poly killed = t3.expand(4).derivative(w3.j).restricted(3, w3.gamma);
        CHECK(killed.is_zero());
    }

    SUBCASE("the defining identity holds on random multiplicative formulas") {
        testutil::Rng rng(34);
        for (const FieldCtx& ctx : {FieldCtx::rationals(), FieldCtx::prime(7)}) {
            for (int rep = 0; rep < 400; ++rep) {
                int n = static_cast<int>(rng.uniform(2, 6));
                Rof t = rng.rof(ctx, var_list(n), /*multiplicative=*/true);
                int i = static_cast<int>(rng.uniform(1, n));
                auto w = derivative_kill_witness(t, i, n);
                CHECK(w.j != i);
                CHECK(t.expand(n).derivative(w.j).restricted(i, w.gamma).is_zero());
            }
        }
    }

    SUBCASE("errors") {
        Rof sum = Rof::node(Rof::Op::add, q.one(), q.zero(), Rof::leaf(1, q.one(), q.zero()),
                            Rof::leaf(2, q.one(), q.zero()));
        CHECK_THROWS_AS(derivative_kill_witness(sum, 1, 2), NotMultiplicativeError);

        Rof dead = Rof::node(Rof::Op::mul, q.one(), q.zero(), Rof::leaf(1, q.zero(), q.one()),
                             rof_monomial(q, {2, 3}));
        CHECK_THROWS_AS(derivative_kill_witness(dead, 1, 3), DegenerateLeafError);

        CHECK_THROWS_AS(derivative_kill_witness(rof_monomial(q, {1, 2}), 3, 3), InvalidArgumentError);
    }
}

TEST_CASE("cross derivatives vanish across addition nodes") {
    testutil::Rng rng(35);
    auto q = FieldCtx::rationals();
    for (int rep = 0; rep < 150; ++rep) {
        // Build an addition node over disjoint random subtrees, wrap it in
        // random multiplicative context.
        Rof left = rng.rof(q, {1, 2});
        Rof right = rng.rof(q, {3, 4});
        Rof add = Rof::node(Rof::Op::add, rng.nonzero(q), rng.elem(q), left, right);
        Rof t = Rof::node(Rof::Op::mul, rng.nonzero(q), rng.elem(q), add, Rof::leaf(5, rng.nonzero(q), rng.elem(q)));
        Poly p = t.expand(5);
        // x1, x2 live left of the addition; x3, x4 right of it.
        CHECK(p.derivative(1).derivative(3).is_zero());
        CHECK(p.derivative(2).derivative(4).is_zero());
    }
}

TEST_CASE("effective variables ignore dead leaves") {
    auto q = FieldCtx::rationals();
    Rof t = Rof::node(Rof::Op::add, q.one(), q.zero(), Rof::leaf(1, q.zero(), q.from_int(3)),
                      Rof::leaf(2, q.one(), q.zero()));
    CHECK(t.effective_vars(2) == mask_of_var(2));

    Rof killed = Rof::node(Rof::Op::mul, q.zero(), q.one(), rof_monomial(q, {1, 2}), Rof::leaf(3, q.one(), q.zero()));
    CHECK(killed.effective_vars(3) == 0);
}

TEST_CASE("renaming relabels leaves") {
    auto q = FieldCtx::rationals();
    testutil::Rng rng(36);
    for (int rep = 0; rep < 50; ++rep) {
        Rof t = rng.rof(q, var_list(4));
        std::vector<int> perm = {1, 2, 3, 4};
        std::shuffle(perm.begin(), perm.end(), rng.gen());
        CHECK(t.renamed(perm).expand(4) == t.expand(4).renamed(perm));
    }
}
