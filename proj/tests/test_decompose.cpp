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

#include "rops/decompose.hpp"
#include "testutil.hpp"

using namespace rops;

namespace {

Poly x(const FieldCtx& ctx, int nvars, int v) { return Poly::variable(ctx, nvars, v); }

int bound_generic(int n) {
    if (n <= 2) return 1;
    if (n == 3) return 2;
    return 3 * (1 << (n - 4));
}

}  // namespace

TEST_CASE("generic decomposition base cases") {
    auto q = FieldCtx::rationals();
    Poly lin = x(q, 1, 1).scaled(q.from_int(3)) + Poly::constant(q, 1, q.one());
    Decomposition d1 = decompose_generic(lin);
    CHECK(d1.verified);
    CHECK(d1.summands.size() == 1);

    testutil::Rng rng(41);
    SUBCASE("four variables without degree-2 terms") {
        for (int rep = 0; rep < 100; ++rep) {
            Poly p(q, 4);
            p.add_term_mask(0, rng.elem(q));
            for (int v = 1; v <= 4; ++v) p.add_term_mask(mask_of_var(v), rng.elem(q));
            for (int v = 1; v <= 4; ++v) p.add_term_mask(VarMask{0b1111} & ~mask_of_var(v), rng.elem(q));
            p.add_term_mask(0b1111, rng.elem(q));
            Decomposition d = decompose_generic(p);
            CHECK(d.verified);
            CHECK(d.summands.size() <= 3);
        }
    }

    SUBCASE("random inputs stay within the summand bound") {
        for (const FieldCtx& ctx : {FieldCtx::rationals(), FieldCtx::prime(7)}) {
            for (int n = 1; n <= 6; ++n) {
                for (int rep = 0; rep < 40; ++rep) {
                    Poly p = rng.multilinear(ctx, n);
                    Decomposition d = decompose_generic(p);
                    CHECK(d.verified);
                    CHECK(static_cast<int>(d.summands.size()) <= bound_generic(n));
                }
            }
        }
    }

    SUBCASE("non-multilinear inputs are rejected") {
        CHECK_THROWS_AS(decompose_generic(x(q, 2, 1) * x(q, 2, 1)), NotMultilinearError);
    }
}

TEST_CASE("top-symmetric decomposition") {
    auto q = FieldCtx::rationals();

    Decomposition d2 = decompose_top_symmetric(q, 2, q.zero(), q.one());
    CHECK(d2.verified);
    CHECK(d2.summands.size() == 1);
    CHECK(d2.target == gen_symmetric(q, 2, 1));

    Decomposition d4 = decompose_top_symmetric(q, 4, q.zero(), q.one());
    CHECK(d4.verified);
    REQUIRE(d4.summands.size() == 2);
    Poly e1 = (x(q, 4, 1) + x(q, 4, 2)) * x(q, 4, 3) * x(q, 4, 4);
    Poly e2 = (x(q, 4, 3) + x(q, 4, 4)) * x(q, 4, 1) * x(q, 4, 2);
    CHECK(d4.summands[0].expand(4) + d4.summands[1].expand(4) == e1 + e2);
    CHECK((d4.summands[0].expand(4) == e1 || d4.summands[0].expand(4) == e2));

    Decomposition d5 = decompose_top_symmetric(q, 5, q.one(), q.one());
    CHECK(d5.verified);
    CHECK(d5.summands.size() == 3);
    CHECK(d5.target == gen_symmetric(q, 5, 5) + gen_symmetric(q, 5, 4));

    testutil::Rng rng(42);
    for (const FieldCtx& ctx : {FieldCtx::rationals(), FieldCtx::prime(7)}) {
        for (int n = 1; n <= 12; ++n) {
            for (int rep = 0; rep < 10; ++rep) {
                FieldElem A = rng.elem(ctx), B = rng.nonzero(ctx);
                Decomposition d = decompose_top_symmetric(ctx, n, A, B);
                CHECK(d.verified);
                CHECK(static_cast<int>(d.summands.size()) == (n + 1) / 2);
            }
        }
    }
    // B = 0 collapses to the single monomial summand
    Decomposition d0 = decompose_top_symmetric(q, 6, q.from_int(3), q.zero());
    CHECK(d0.verified);
    CHECK(d0.summands.size() == 1);
}

TEST_CASE("symmetric 4-variate table") {
    auto q = FieldCtx::rationals();
    testutil::Rng rng(43);

    SUBCASE("both zero row: linear plus monomial") {
        std::array<FieldElem, 5> a{rng.elem(q), rng.nonzero(q), q.zero(), q.zero(), rng.nonzero(q)};
        Decomposition d = decompose_sym4(a);
        CHECK(d.verified);
        REQUIRE(d.summands.size() == 2);
        CHECK(d.summands[0].expand(4).total_degree() <= 1);
        CHECK(d.summands[1].expand(4).terms().size() == 1);
    }

    SUBCASE("the plain degree-2 symmetric polynomial") {
        std::array<FieldElem, 5> a{q.zero(), q.zero(), q.one(), q.zero(), q.zero()};
        Decomposition d = decompose_sym4(a);
        CHECK(d.verified);
        CHECK(d.summands.size() <= 2);
        CHECK(d.target == gen_symmetric(q, 4, 2));
    }

    SUBCASE("random weights cover all four rows") {
        for (int row = 0; row < 4; ++row) {
            for (int rep = 0; rep < 60; ++rep) {
                std::array<FieldElem, 5> a{rng.elem(q), rng.elem(q), rng.elem(q), rng.elem(q), rng.elem(q)};
                switch (row) {
                    case 0: a[2] = q.zero(); a[3] = q.zero(); break;
                    case 1: a[2] = q.zero(); a[3] = rng.nonzero(q); break;
                    case 2: a[2] = rng.nonzero(q); a[4] = a[3] * a[3] / a[2]; break;
                    case 3:
                        a[2] = rng.nonzero(q);
                        if (a[2] * a[4] == a[3] * a[3]) a[4] = a[4] + q.one();
                        break;
                }
                Decomposition d = decompose_sym4(a);
                CHECK(d.verified);
                CHECK(d.summands.size() <= 2);
            }
        }
    }
}

TEST_CASE("pairing family decomposition") {
    auto q = FieldCtx::rationals();
    auto e = [&](int v) { return q.from_int(v); };

    SUBCASE("equal-weight case matches the worked expression") {
        FFamilyOutcome out = decompose_f_family(e(2), e(2), e(3));
        REQUIRE(out.status == FFamilyOutcome::Status::decomposed);
        REQUIRE(out.decomposition->summands.size() == 2);
        Poly s1 = (x(q, 4, 1) + x(q, 4, 4)) * (x(q, 4, 2) + x(q, 4, 3));
        Poly first = out.decomposition->summands[0].expand(4);
        Poly second = out.decomposition->summands[1].expand(4);
        CHECK(((first == s1.scaled(e(2))) || (second == s1.scaled(e(2)))));
        Poly tail = (x(q, 4, 1) * x(q, 4, 4) + x(q, 4, 2) * x(q, 4, 3)).scaled(e(3));
        CHECK(((first == tail) || (second == tail)));
    }

    SUBCASE("opposite-weight case") {
        FFamilyOutcome out = decompose_f_family(e(2), e(-2), e(3));
        REQUIRE(out.status == FFamilyOutcome::Status::decomposed);
        Poly s1 = ((x(q, 4, 1) - x(q, 4, 4)) * (x(q, 4, 2) - x(q, 4, 3))).scaled(e(2));
        bool found = false;
        for (const Rof& s : out.decomposition->summands) found |= s.expand(4) == s1;
        CHECK(found);
    }

    SUBCASE("root case reproduces the worked two-product expression") {
        FFamilyOutcome out = decompose_f_family(e(1), e(2), e(3));
        REQUIRE(out.status == FFamilyOutcome::Status::decomposed);
        REQUIRE(out.decomposition->summands.size() == 2);
        CHECK(out.decomposition->summands[0].expand(4) == (x(q, 4, 1) + x(q, 4, 3)) * (x(q, 4, 2) + x(q, 4, 4)));
        CHECK(out.decomposition->summands[1].expand(4) ==
              ((x(q, 4, 1) + x(q, 4, 2)) * (x(q, 4, 3) + x(q, 4, 4))).scaled(e(2)));
        CHECK(*out.report.c3 == false);
        REQUIRE(out.report.c3_root.has_value());
        CHECK(out.report.c3_root->is_zero());
    }

    SUBCASE("irrefutable weights are reported, not decomposed") {
        FFamilyOutcome out = decompose_f_family(e(2), e(4), e(5));
        CHECK(out.status == FFamilyOutcome::Status::not_expressible);
        CHECK(*out.report.c1);
        CHECK(*out.report.c2);
        CHECK(*out.report.c3);
        for (const FieldElem& d : out.report.d_values) CHECK(d == e(-231));
    }

    SUBCASE("reals semantics surfaces irrational roots") {
        auto qr = FieldCtx::rationals(true);
        // D = (1+2+4)(1-2-4)(1-2+4)(1+2-4) = 7 * -5 * 3 * -1 = 105 >= 0, not a square
        FFamilyOutcome out = decompose_f_family(qr.from_int(1), qr.from_int(2), qr.from_int(4));
        CHECK(out.status == FFamilyOutcome::Status::root_not_representable);
        CHECK(out.report.c3_root_irrational);
    }

    SUBCASE("zero weights split directly") {
        FFamilyOutcome out = decompose_f_family(e(0), e(4), e(5));
        REQUIRE(out.status == FFamilyOutcome::Status::decomposed);
        CHECK(out.decomposition->verified);
        CHECK(out.decomposition->summands.size() == 2);
    }

    SUBCASE("whenever a condition fails the construction succeeds") {
        testutil::Rng rng(44);
        for (const FieldCtx& ctx : {FieldCtx::rationals(), FieldCtx::prime(7), FieldCtx::prime(11)}) {
            int built = 0;
            for (int rep = 0; rep < 1000; ++rep) {
                FieldElem a = rng.elem(ctx), b = rng.elem(ctx), c = rng.elem(ctx);
                ConditionReport rep2 = f_family_conditions(a, b, c);
                FFamilyOutcome out = decompose_f_family(a, b, c);
                if (*rep2.c1 && *rep2.c2 && *rep2.c3) {
                    CHECK(out.status == FFamilyOutcome::Status::not_expressible);
                } else {
                    REQUIRE(out.status == FFamilyOutcome::Status::decomposed);
                    CHECK(out.decomposition->verified);
                    CHECK(out.decomposition->summands.size() <= 2);
                    ++built;
                }
            }
            CHECK(built > 0);
        }
    }
}

TEST_CASE("verification catches tampering") {
    auto q = FieldCtx::rationals();
    Decomposition d = decompose_top_symmetric(q, 4, q.from_int(2), q.from_int(3));
    CHECK(d.verified);

    Decomposition bad = d;
    bad.summands[0] = bad.summands[0].plus_const(q.one());
    CHECK(!verify_decomposition(bad));

    // a duplicated-variable summand is rejected even if sums match
    Decomposition dup{x(q, 2, 1).scaled(q.from_int(2)),
                      Construction::generic,
                      {Rof::node(Rof::Op::add, q.one(), q.zero(), Rof::leaf(1, q.one(), q.zero()),
                                 Rof::leaf(1, q.one(), q.zero()))},
                      false};
    CHECK(!verify_decomposition(dup));

    // hand-built certificate for the worked opposite-weight example
    Rof s1 = Rof::node(Rof::Op::mul, q.from_int(2), q.zero(),
                       Rof::node(Rof::Op::add, q.one(), q.zero(), Rof::leaf(1, q.one(), q.zero()),
                                 Rof::leaf(4, -q.one(), q.zero())),
                       Rof::node(Rof::Op::add, q.one(), q.zero(), Rof::leaf(2, q.one(), q.zero()),
                                 Rof::leaf(3, -q.one(), q.zero())));
    Rof s2 = Rof::node(Rof::Op::add, q.from_int(3), q.zero(), rof_monomial(q, {1, 4}), rof_monomial(q, {2, 3}));
    Decomposition hand{gen_f_family(q.from_int(2), q.from_int(-2), q.from_int(3)),
                       Construction::f_family,
                       {s1, s2},
                       false};
    CHECK(verify_decomposition(hand));
}

TEST_CASE("shape matchers") {
    auto q = FieldCtx::rationals();
    CHECK(match_f_family(gen_f_family(q.from_int(1), q.from_int(1), q.from_int(1))).has_value());
    CHECK(match_sym4(gen_symmetric(q, 4, 2)).has_value());
    CHECK(!match_f_family(gen_symmetric(q, 4, 3)).has_value());
    auto m = match_top_symmetric(gen_top_symmetric(q, 6, q.from_int(2), q.from_int(5)));
    REQUIRE(m.has_value());
    CHECK(m->n == 6);
    CHECK(m->A == q.from_int(2));
    CHECK(m->B == q.from_int(5));
    CHECK(!match_top_symmetric(gen_symmetric(q, 4, 2)).has_value());
}
