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

#include "rops/poly.hpp"
#include "testutil.hpp"

using namespace rops;

namespace {

Poly x(const FieldCtx& ctx, int nvars, int v) { return Poly::variable(ctx, nvars, v); }

/// Independent substitution ``oracle'': rebuild the polynomial term by term
/// with the variable replaced by the constant.
Poly naive_restrict(const Poly& p, int var, const FieldElem& a) {
    Poly out(p.ctx(), p.nvars());
    for (const auto& [m, c] : p.terms()) {
        FieldElem coeff = c;
        Poly::Mono mm = m;
        for (std::uint32_t e = 0; e < m[var - 1]; ++e) coeff *= a;
        mm[var - 1] = 0;
        out.add_term(mm, coeff);
    }
    return out;
}

}  // namespace

TEST_CASE("products do not reduce squares") {
    auto q = FieldCtx::rationals();
    Poly lhs = (x(q, 2, 1) + x(q, 2, 2)) * (x(q, 2, 1) - x(q, 2, 2));
    Poly expect(q, 2);
    expect.add_term({2, 0}, q.one());
    expect.add_term({0, 2}, -q.one());
    CHECK(lhs == expect);
    CHECK(!lhs.is_multilinear());
}

TEST_CASE("pair product expansion used in the equal-square construction") {
    testutil::Rng rng(21);
    auto q = FieldCtx::rationals();
    for (int rep = 0; rep < 50; ++rep) {
        FieldElem a = rng.elem(q);
        for (int sign : {1, -1}) {
            FieldElem s = q.from_int(sign);
            Poly lhs = ((x(q, 4, 1) + x(q, 4, 4).scaled(s)) * (x(q, 4, 2) + x(q, 4, 3).scaled(s))).scaled(a);
            Poly rhs = (x(q, 4, 1) * x(q, 4, 2) + x(q, 4, 3) * x(q, 4, 4)).scaled(a) +
                       (x(q, 4, 1) * x(q, 4, 3) + x(q, 4, 2) * x(q, 4, 4)).scaled(a * s);
            CHECK(lhs == rhs);
        }
    }
    Poly p = rng.multilinear(q, 5);
    CHECK((Poly(q, 5) * p).is_zero());
    CHECK(p.scaled(q.zero()).is_zero());
}

TEST_CASE("restriction") {
    auto q = FieldCtx::rationals();
    CHECK(gen_symmetric(q, 3, 2).restricted(3, q.zero()) == x(q, 3, 1) * x(q, 3, 2));

    testutil::Rng rng(22);
    for (int n = 2; n <= 6; ++n) {
        FieldElem a = rng.elem(q), b = rng.elem(q), g = rng.elem(q);
        Poly lhs = gen_top_symmetric(q, n, a, b).restricted(n, g);
        Poly rhs = gen_top_symmetric(q, n - 1, a * g + b, b * g).extended(n);
        CHECK(lhs == rhs);
    }

    // brute-force substitution agrees
    Poly f = gen_f_family(q.from_int(1), q.from_int(2), q.from_int(3));
    Poly r1 = f.restricted(1, q.one()).restricted(2, q.one());
    Poly r2 = naive_restrict(naive_restrict(f, 1, q.one()), 2, q.one());
    CHECK(r1 == r2);
    for (int rep = 0; rep < 100; ++rep) {
        Poly p = rng.multilinear(q, 5);
        int v = static_cast<int>(rng.uniform(1, 5));
        FieldElem a = rng.elem(q);
        CHECK(p.restricted(v, a) == naive_restrict(p, v, a));
    }
}

TEST_CASE("partial derivatives") {
    auto q = FieldCtx::rationals();
    testutil::Rng rng(23);

    FieldElem al = q.from_int(3), be = q.from_int(5), ga = q.from_int(7);
    Poly df = gen_f_family(al, be, ga).derivative(1);
    Poly expect = x(q, 4, 2).scaled(al) + x(q, 4, 3).scaled(be) + x(q, 4, 4).scaled(ga);
    CHECK(df == expect);

    for (int n = 2; n <= 6; ++n) {
        FieldElem a = rng.elem(q), b = rng.elem(q);
        CHECK(gen_top_symmetric(q, n, a, b).derivative(n) == gen_top_symmetric(q, n - 1, a, b).extended(n));
    }
    CHECK(Poly::constant(q, 3, q.from_int(5)).derivative(1).is_zero());
}

TEST_CASE("restriction and derivative commute; both are additive") {
    testutil::Rng rng(24);
    for (const FieldCtx& ctx : {FieldCtx::rationals(), FieldCtx::prime(7)}) {
        for (int rep = 0; rep < 100; ++rep) {
            Poly p = rng.multilinear(ctx, 5);
            Poly r = rng.multilinear(ctx, 5);
            int i = static_cast<int>(rng.uniform(1, 5));
            int j = static_cast<int>(rng.uniform(1, 5));
            if (i == j) continue;
            FieldElem a = rng.elem(ctx);
            CHECK(p.restricted(j, a).derivative(i) == p.derivative(i).restricted(j, a));
            CHECK((p + r).derivative(i) == p.derivative(i) + r.derivative(i));
            CHECK((p + r).restricted(i, a) == p.restricted(i, a) + r.restricted(i, a));
        }
    }
}

TEST_CASE("commutator") {
    auto q = FieldCtx::rationals();
    testutil::Rng rng(25);

    SUBCASE("vanishes on separated products") {
        for (int rep = 0; rep < 100; ++rep) {
            // l3 = C x1 + m(x3), l4 = D x2 + n(x4)
            FieldElem C = rng.elem(q), D = rng.elem(q);
            Poly m = x(q, 4, 3).scaled(rng.elem(q)) + Poly::constant(q, 4, rng.elem(q));
            Poly n = x(q, 4, 4).scaled(rng.elem(q)) + Poly::constant(q, 4, rng.elem(q));
            Poly l3 = x(q, 4, 1).scaled(C) + m;
            Poly l4 = x(q, 4, 2).scaled(D) + n;
            CHECK((l3 * l4).commutator(1, 2).is_zero());
        }
    }

    SUBCASE("closed form on the weighted pairing polynomial") {
        for (int rep = 0; rep < 100; ++rep) {
            FieldElem a = rng.elem(q), b = rng.elem(q), c = rng.elem(q);
            Poly delta = gen_f_family(a, b, c).commutator(1, 2);
            Poly expect(q, 4);
            expect.add_term({0, 0, 2, 0}, -(b * c));
            expect.add_term({0, 0, 0, 2}, -(b * c));
            expect.add_term({0, 0, 1, 1}, a * a - b * b - c * c);
            CHECK(delta == expect);
        }
    }

    SUBCASE("constants and symmetry") {
        CHECK(Poly::constant(q, 2, q.from_int(9)).commutator(1, 2).is_zero());
        for (int rep = 0; rep < 50; ++rep) {
            Poly p = rng.multilinear(q, 4);
            CHECK(p.commutator(1, 2) == p.commutator(2, 1));
        }
        Poly square = x(q, 2, 1) * x(q, 2, 1);
        CHECK_THROWS_AS(square.commutator(1, 2), NotMultilinearError);
    }
}

TEST_CASE("generators") {
    auto q = FieldCtx::rationals();
    Poly s32 = gen_symmetric(q, 3, 2);
    CHECK(s32 == x(q, 3, 1) * x(q, 3, 2) + x(q, 3, 1) * x(q, 3, 3) + x(q, 3, 2) * x(q, 3, 3));
    CHECK(gen_symmetric(q, 4, 0) == Poly::constant(q, 4, q.one()));

    Poly f = gen_f_family(q.from_int(2), q.from_int(4), q.from_int(5));
    Poly expect = (x(q, 4, 1) * x(q, 4, 2) + x(q, 4, 3) * x(q, 4, 4)).scaled(q.from_int(2)) +
                  (x(q, 4, 1) * x(q, 4, 3) + x(q, 4, 2) * x(q, 4, 4)).scaled(q.from_int(4)) +
                  (x(q, 4, 1) * x(q, 4, 4) + x(q, 4, 2) * x(q, 4, 3)).scaled(q.from_int(5));
    CHECK(f == expect);

    CHECK(gen_top_symmetric(q, 5, q.zero(), q.one()) == gen_symmetric(q, 5, 4));
}

TEST_CASE("evaluation") {
    auto q = FieldCtx::rationals();
    auto ones = std::vector<FieldElem>(4, q.one());
    CHECK(gen_symmetric(q, 4, 2).eval(ones) == q.from_int(6));

    Poly f = gen_f_family(q.from_int(2), q.from_int(4), q.from_int(5));
    CHECK(f.eval({q.one(), q.zero(), q.zero(), q.one()}) == q.from_int(5));

    testutil::Rng rng(26);
    Poly zero(q, 4);
    std::vector<FieldElem> pt;
    for (int i = 0; i < 4; ++i) pt.push_back(rng.elem(q));
    CHECK(zero.eval(pt).is_zero());
}

TEST_CASE("variable swaps permute the pairing weights") {
    auto q = FieldCtx::rationals();
    testutil::Rng rng(27);
    for (int rep = 0; rep < 50; ++rep) {
        FieldElem a = rng.elem(q), b = rng.elem(q), c = rng.elem(q);
        Poly f = gen_f_family(a, b, c);
        CHECK(f.renamed({1, 2, 4, 3}) == gen_f_family(a, c, b));  // x3 <-> x4
        CHECK(f.renamed({1, 3, 2, 4}) == gen_f_family(b, a, c));  // x2 <-> x3
    }
}

TEST_CASE("effective variables and embedding") {
    auto q = FieldCtx::rationals();
    Poly p = x(q, 5, 2).scaled(q.zero()) + x(q, 5, 4);
    CHECK(p.effective_vars() == mask_of_var(4));
    Poly wide = p.extended(7);
    CHECK(wide.nvars() == 7);
    CHECK(wide.effective_vars() == mask_of_var(4));
    CHECK_THROWS_AS(p.restricted(9, q.one()), UnknownVariableError);

    auto f7 = FieldCtx::prime(7);
    CHECK_THROWS_AS(Poly::variable(q, 2, 1) + Poly::variable(f7, 2, 1), FieldMismatchError);
    CHECK_THROWS_AS(Poly::variable(q, 2, 1) + Poly::variable(q, 3, 1), WrongArityError);
}
