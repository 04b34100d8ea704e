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

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "rops/oracle.hpp"
#include "rops/textio.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitNegative = 2;

void emit(const json& j, const std::string& out_path) {
    std::string text = j.dump(2);
    if (!out_path.empty()) {
        std::ofstream out(out_path, std::ios::trunc);
        if (!out) throw rops::IoError("cannot write '" + out_path + "'");
        out << text << "\n";
    }
    std::cout << text << "\n";
}

/// Parses an expression and widens the ambient variable set to at least
/// min_vars (the condition machinery lives on four variables).
rops::Poly parse_input(const std::string& expr, const rops::FieldCtx& ctx, int nvars, int min_vars = 0) {
    rops::Poly p = rops::parse_poly_or_gen(expr, ctx, nvars);
    if (p.nvars() < min_vars) p = p.extended(min_vars);
    return p;
}

struct OracleArgs {
    std::int64_t p = 2;
    int n = 4;
    std::string cache_dir;
    int max_n = 5;
    std::size_t max_elements = std::size_t{1} << 26;
    int threads = 1;

    rops::RopSet make() const {
        rops::OracleBuildOptions opt;
        opt.max_n = max_n;
        opt.max_elements = max_elements;
        opt.threads = threads;
        rops::FieldCtx ctx = rops::FieldCtx::prime(p);
        if (cache_dir.empty()) return rops::RopSet::build(ctx, n, opt);
        return rops::RopSet::build_cached(ctx, n, cache_dir, opt);
    }
};

int run_cli(int argc, char** argv) {
    CLI::App app{"exact toolkit for sums of read-once formulas"};
    app.require_subcommand(1);

    std::string field = "q";
    std::string expr;
    std::string out_path;
    int nvars = 0;

    auto add_field = [&](CLI::App* cmd) {
        cmd->add_option("--field", field, "coefficient field: q, q-reals or fp:<p>")->capture_default_str();
    };
    auto add_common = [&](CLI::App* cmd) {
        add_field(cmd);
        cmd->add_option("--nvars", nvars, "ambient variable count (default: inferred)");
        cmd->add_option("expr", expr, "polynomial text or gen:S:n,k | gen:M:n,A,B | gen:f:a,b,c")->required();
    };

    CLI::App* gen = app.add_subcommand("gen", "expand a generator (or echo a polynomial) as canonical text");
    add_common(gen);

    CLI::App* dec = app.add_subcommand("decompose", "produce a verified sum-of-ROFs certificate");
    add_common(dec);
    std::string construction = "auto";
    dec->add_option("--construction", construction, "auto | Generic | SymmetricM | Sym4Table | FFamily")
        ->capture_default_str();
    dec->add_option("--out", out_path, "also write the JSON certificate to a file");

    CLI::App* chk = app.add_subcommand("check", "evaluate the expressibility condition systems");
    add_common(chk);

    CLI::App* ver = app.add_subcommand("verify", "re-verify a decomposition JSON file");
    std::string in_path;
    ver->add_option("file", in_path, "path to a decomposition JSON document")->required();

    CLI::App* ref = app.add_subcommand("refute", "refute or certify small sum-of-ROPs memberships");
    add_common(ref);

    CLI::App* orc = app.add_subcommand("oracle", "exhaustive read-once enumeration over small prime fields");
    OracleArgs oargs;
    orc->add_option("--p", oargs.p, "prime modulus (2, 3 or 5)")->capture_default_str();
    orc->add_option("--n", oargs.n, "variable count")->capture_default_str();
    orc->add_option("--cache-dir", oargs.cache_dir, "directory for build caches");
    orc->add_option("--max-n", oargs.max_n, "resource guard on n")->capture_default_str();
    orc->add_option("--max-elements", oargs.max_elements, "resource guard on stored fingerprints");
    orc->add_option("--threads", oargs.threads, "worker threads for the subset DP")->capture_default_str();
    orc->require_subcommand(1);
    CLI::App* orc_build = orc->add_subcommand("build", "build (and cache) the enumeration");
    CLI::App* orc_member = orc->add_subcommand("member", "test sum-of-k membership");
    int member_k = 1;
    std::string member_expr;
    orc_member->add_option("--k", member_k, "number of summands allowed")->capture_default_str();
    orc_member->add_option("expr", member_expr, "polynomial text or generator shorthand")->required();
    CLI::App* orc_cross = orc->add_subcommand(
        "cross-check-f", "compare the condition system with ground truth on every f-family triple");

    CLI11_PARSE(app, argc, argv);

    if (gen->parsed()) {
        rops::FieldCtx ctx = rops::FieldCtx::from_selector(field);
        rops::Poly p = parse_input(expr, ctx, nvars);
        std::cout << rops::poly_to_text(p) << "\n";
        return kExitOk;
    }

    if (dec->parsed()) {
        rops::FieldCtx ctx = rops::FieldCtx::from_selector(field);
        rops::Poly p = parse_input(expr, ctx, nvars);

        std::string mode = construction;
        if (mode == "auto") {
            if (rops::match_f_family(p))
                mode = "FFamily";
            else if (rops::match_top_symmetric(p))
                mode = "SymmetricM";
            else if (rops::match_sym4(p))
                mode = "Sym4Table";
            else
                mode = "Generic";
        }

        if (mode == "FFamily") {
            auto shape = rops::match_f_family(p);
            if (!shape) throw rops::InvalidArgumentError("input does not match the f-family shape");
            rops::FFamilyOutcome out = rops::decompose_f_family((*shape)[0], (*shape)[1], (*shape)[2]);
            if (out.status == rops::FFamilyOutcome::Status::decomposed) {
                emit(rops::decomposition_to_json(*out.decomposition), out_path);
                return kExitOk;
            }
            json j;
            j["expressible"] = out.status == rops::FFamilyOutcome::Status::root_not_representable;
            j["root_not_representable"] = out.status == rops::FFamilyOutcome::Status::root_not_representable;
            j["report"] = rops::condition_report_to_json(out.report);
            emit(j, out_path);
            return out.status == rops::FFamilyOutcome::Status::not_expressible ? kExitNegative : kExitOk;
        }

        rops::Decomposition d = [&] {
            if (mode == "SymmetricM") {
                auto shape = rops::match_top_symmetric(p);
                if (!shape) throw rops::InvalidArgumentError("input does not match the M-family shape");
                return rops::decompose_top_symmetric(ctx, shape->n, shape->A, shape->B);
            }
            if (mode == "Sym4Table") {
                auto shape = rops::match_sym4(p);
                if (!shape) throw rops::InvalidArgumentError("input is not a symmetric 4-variate combination");
                return rops::decompose_sym4(*shape);
            }
            if (mode == "Generic") return rops::decompose_generic(p);
            throw rops::InvalidArgumentError("unknown construction '" + mode + "'");
        }();
        emit(rops::decomposition_to_json(d), out_path);
        return kExitOk;
    }

    if (chk->parsed()) {
        rops::FieldCtx ctx = rops::FieldCtx::from_selector(field);
        rops::Poly p = parse_input(expr, ctx, nvars, 4);
        if (p.nvars() != 4) throw rops::WrongArityError("check expects a polynomial on at most 4 variables");
        rops::ConditionReport rep;
        if (auto shape = rops::match_f_family(p))
            rep = rops::f_family_conditions((*shape)[0], (*shape)[1], (*shape)[2]);
        rep.cprime_evaluated = true;
        rep.c1p = rops::c1prime_check(p);
        rep.c2p = rops::c2prime_check(p);
        auto c3r = rops::c3prime_reconstruct(p);
        rep.c3p = c3r.witness;
        rep.c3p_blocked_irrational = c3r.blocked_irrational;
        emit(rops::condition_report_to_json(rep), out_path);
        return kExitOk;
    }

    if (ver->parsed()) {
        std::ifstream in(in_path);
        if (!in) throw rops::IoError("cannot read '" + in_path + "'");
        json j = json::parse(in);
        rops::Decomposition d = rops::decomposition_from_json(j);
        bool ok = rops::verify_decomposition(d);
        json outj;
        outj["verified"] = ok;
        outj["target"] = rops::poly_to_text(d.target);
        outj["summands"] = d.summands.size();
        emit(outj, "");
        return ok ? kExitOk : kExitNegative;
    }

    if (ref->parsed()) {
        rops::FieldCtx ctx = rops::FieldCtx::from_selector(field);
        rops::Poly p = parse_input(expr, ctx, nvars, 4);
        int eff = rops::popcount_mask(p.effective_vars());
        json j;
        int code = kExitOk;
        if (eff == 3) {
            rops::TrivariateVerdict v = rops::refute_trivariate_rop(p);
            j["mode"] = "trivariate-rop";
            j["verdict"] = v == rops::TrivariateVerdict::not_rop ? "NotROP" : "Inconclusive";
            code = v == rops::TrivariateVerdict::not_rop ? kExitNegative : kExitOk;
        } else {
            if (p.nvars() != 4) throw rops::WrongArityError("refute expects a polynomial on at most 4 variables");
            rops::Sum2Result r = rops::refute_sum2(p);
            j["mode"] = "sum2";
            switch (r.verdict) {
                case rops::Sum2Verdict::refuted_not_sum2:
                    j["verdict"] = "RefutedNotSum2";
                    code = kExitNegative;
                    break;
                case rops::Sum2Verdict::inconclusive: j["verdict"] = "Inconclusive"; break;
                case rops::Sum2Verdict::expressible_witness: j["verdict"] = "ExpressibleWitness"; break;
            }
            j["report"] = rops::condition_report_to_json(r.report);
            if (r.certificate) j["certificate"] = rops::decomposition_to_json(*r.certificate);
            if (r.expressible_over_reals_only) j["expressible_over_reals_only"] = true;
        }
        emit(j, out_path);
        return code;
    }

    if (orc->parsed()) {
        rops::RopSet rs = oargs.make();
        if (orc_build->parsed()) {
            json j;
            j["p"] = oargs.p;
            j["n"] = oargs.n;
            j["total_size"] = rs.total_size();
            json sizes = json::array();
            for (rops::VarMask m = 0; m < (rops::VarMask{1} << oargs.n); ++m) sizes.push_back(rs.proper(m).size());
            j["proper_sizes"] = sizes;
            emit(j, out_path);
            return kExitOk;
        }
        if (orc_member->parsed()) {
            rops::Poly g = rops::parse_poly_or_gen(member_expr, rs.ctx(), oargs.n);
            auto cert = rs.sum_membership(g, member_k);
            json j;
            j["p"] = oargs.p;
            j["n"] = oargs.n;
            j["k"] = member_k;
            j["target"] = rops::poly_to_text(g);
            j["member"] = cert.has_value();
            if (cert) {
                json s = json::array();
                for (const rops::Poly& q : cert->summands) s.push_back(rops::poly_to_text(q));
                j["summands"] = s;
            }
            emit(j, out_path);
            return cert ? kExitOk : kExitNegative;
        }
        if (orc_cross->parsed()) {
            rops::FFamilyCrossCheck r = rops::cross_check_f_family(rs);
            json j;
            j["p"] = r.p;
            j["triples"] = r.total;
            j["expressible"] = r.expressible;
            json ds = json::array();
            for (const auto& d : r.disagreements)
                ds.push_back({{"a", d.a},
                              {"b", d.b},
                              {"c", d.c},
                              {"conditions_refute", d.conditions_refute},
                              {"oracle_member", d.oracle_member}});
            j["disagreements"] = ds;
            emit(j, out_path);
            return r.disagreements.empty() ? kExitOk : kExitNegative;
        }
    }

    return kExitError;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run_cli(argc, argv);
    } catch (const rops::Error& e) {
        std::cerr << "error [" << e.code() << "]: " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
}
