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

#include <filesystem>

#include "rops/decompose.hpp"
#include "rops/oracle.hpp"
#include "testutil.hpp"

using namespace rops;

namespace {

std::size_t merged_size(const RopSet& rs, VarMask mask) {
    std::size_t total = 0;
    for (VarMask sub = mask;; sub = (sub - 1) & mask) {
        total += rs.proper(sub).size();
        if (sub == 0) break;
    }
    return total;
}

std::vector<int> var_list(int n) {
    std::vector<int> v(n);
    for (int i = 0; i < n; ++i) v[i] = i + 1;
    return v;
}

}  // namespace

TEST_CASE("single-variable enumeration over F2") {
    auto f2 = FieldCtx::prime(2);
    RopSet rs = RopSet::build(f2, 1);
    CHECK(rs.proper(0).size() == 2);   // constants 0, 1
    CHECK(rs.proper(1).size() == 2);   // x1, x1 + 1
    CHECK(merged_size(rs, 1) == 4);
}

TEST_CASE("three-variable checkpoints over F2") {
    auto f2 = FieldCtx::prime(2);
    RopSet rs = RopSet::build(f2, 3);
    Poly s32 = gen_symmetric(f2, 3, 2);
    CHECK(!rs.contains(s32));
    auto cert = rs.sum_membership(s32, 2);
    REQUIRE(cert.has_value());
    Poly sum(f2, 3);
    for (const Poly& s : cert->summands) {
        CHECK(rs.contains(s));
        sum = sum + s.extended(3);
    }
    CHECK(sum == s32);
    CHECK(rs.sum_membership(Poly(f2, 3), 1).has_value());  // zero is a (constant) ROP
}

TEST_CASE("four-variable checkpoints over F2") {
    auto f2 = FieldCtx::prime(2);
    RopSet rs = RopSet::build(f2, 4);
    Poly s43 = gen_symmetric(f2, 4, 3);
    CHECK(!rs.contains(s43));
    auto cert = rs.sum_membership(s43, 2);
    REQUIRE(cert.has_value());
    Poly sum(f2, 4);
    for (const Poly& s : cert->summands) sum = sum + s.extended(4);
    CHECK(sum == s43);
}

TEST_CASE("affine closure and monotonicity") {
    auto f3 = FieldCtx::prime(3);
    RopSet rs = RopSet::build(f3, 3);
    testutil::Rng rng(61);

    for (int rep = 0; rep < 100; ++rep) {
        VarMask mask = static_cast<VarMask>(rng.uniform(0, 7));
        const auto& set = rs.proper(mask);
        if (set.empty()) continue;
        RopFingerprint fp = set[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(set.size()) - 1))];
        Poly p = rs.poly_of(fp);
        Poly scaled = p.scaled(rng.nonzero(f3)) + Poly::constant(f3, 3, rng.elem(f3));
        CHECK(rs.contains(scaled));
        CHECK(rs.contains(p));  // membership is support-wise, so smaller sets embed
    }
}

TEST_CASE("every read-once expansion is enumerated, and derivatives stay inside") {
    testutil::Rng rng(62);
    for (std::int64_t pm : {2, 3}) {
        auto fp = FieldCtx::prime(pm);
        RopSet rs = RopSet::build(fp, 4);
        for (int rep = 0; rep < 120; ++rep) {
            int n = static_cast<int>(rng.uniform(1, 4));
            Rof t = rng.rof(fp, var_list(n));
            Poly p = t.expand(4);
            CHECK(rs.contains(p));
            for (int v = 1; v <= 4; ++v) {
                CHECK(rs.contains(p.derivative(v)));
            }
        }
    }
}

TEST_CASE("construction outputs re-enter the enumeration") {
    testutil::Rng rng(63);
    for (std::int64_t pm : {2, 3}) {
        auto fp = FieldCtx::prime(pm);
        RopSet rs = RopSet::build(fp, 5);
        for (int rep = 0; rep < 40; ++rep) {
            Poly p = rng.multilinear(fp, 4);
            Decomposition d = decompose_generic(p);
            for (const Rof& s : d.summands) CHECK(rs.contains(s.expand(5)));
        }
        Decomposition dm = decompose_top_symmetric(fp, 5, rng.elem(fp), rng.nonzero(fp));
        for (const Rof& s : dm.summands) CHECK(rs.contains(s.expand(5)));
    }
}

TEST_CASE("witness reconstruction certifies sampled members") {
    auto f3 = FieldCtx::prime(3);
    RopSet rs = RopSet::build(f3, 4);
    testutil::Rng rng(64);
    for (int rep = 0; rep < 25; ++rep) {
        VarMask mask = static_cast<VarMask>(rng.uniform(0, 15));
        const auto& set = rs.proper(mask);
        if (set.empty()) continue;
        RopFingerprint fp = set[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(set.size()) - 1))];
        auto witness = rs.reconstruct_witness(fp);
        REQUIRE(witness.has_value());
        CHECK(witness->check_read_once().ok);
        CHECK(witness->expand(4) == rs.poly_of(fp));
    }
}

TEST_CASE("cache round trip") {
    namespace fs = std::filesystem;
    auto f3 = FieldCtx::prime(3);
    fs::path dir = fs::temp_directory_path() / "rops-oracle-test-cache";
    fs::remove_all(dir);

    RopSet built = RopSet::build_cached(f3, 3, dir.string());
    fs::path file = dir / RopSet::cache_file_name(3, 3);
    REQUIRE(fs::exists(file));

    auto loaded = RopSet::load(file.string());
    REQUIRE(loaded.has_value());
    for (VarMask m = 0; m < 8; ++m) CHECK(loaded->proper(m) == built.proper(m));

    // corruption is detected
    {
        std::fstream f(file, std::ios::in | std::ios::out | std::ios::binary);
        f.seekp(24);
        char c;
        f.seekg(24);
        f.get(c);
        f.seekp(24);
        f.put(static_cast<char>(c ^ 1));
    }
    CHECK(!RopSet::load(file.string()).has_value());
    fs::remove_all(dir);
}

TEST_CASE("resource guards") {
    auto f2 = FieldCtx::prime(2);
    CHECK_THROWS_AS(RopSet::build(f2, 6), ResourceGuardError);
    CHECK_THROWS_AS(RopSet::build(FieldCtx::prime(7), 3), ResourceGuardError);
    OracleBuildOptions tiny;
    tiny.max_elements = 4;
    CHECK_THROWS_AS(RopSet::build(f2, 3, tiny), ResourceGuardError);
    OracleBuildOptions wide;
    wide.max_n = 6;
    RopSet rs = RopSet::build(f2, 6, wide);  // the guard is overridable
    CHECK(rs.nvars() == 6);
}

TEST_CASE("parallel build is bit-identical to the sequential one") {
    auto f3 = FieldCtx::prime(3);
    OracleBuildOptions seq, par;
    par.threads = 4;
    RopSet a = RopSet::build(f3, 4, seq);
    RopSet b = RopSet::build(f3, 4, par);
    for (VarMask m = 0; m < 16; ++m) CHECK(a.proper(m) == b.proper(m));
}

TEST_CASE("pairing-family cross-check at the two smallest primes") {
    for (std::int64_t pm : {2, 3}) {
        RopSet rs = RopSet::build(FieldCtx::prime(pm), 4);
        FFamilyCrossCheck r = cross_check_f_family(rs);
        CHECK(r.total == pm * pm * pm);
        CHECK(r.expressible == r.total);  // small primes leave no refuted triple
        CHECK(r.disagreements.empty());
    }
}
