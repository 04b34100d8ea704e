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

#include "rops/textio.hpp"

#include <cctype>
#include <functional>
#include <sstream>

namespace rops {

namespace {

struct Scanner {
    const std::string& text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool done() {
        skip_ws();
        return pos >= text.size();
    }
    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }
    bool accept(char c) {
        if (peek() != c) return false;
        ++pos;
        return true;
    }
    [[noreturn]] void fail(const std::string& what) {
        throw SyntaxError(what + " at position " + std::to_string(pos) + " in '" + text + "'");
    }
    std::string digits() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) fail("expected digits");
        return text.substr(start, pos - start);
    }
};

FieldElem scan_scalar(Scanner& s, const FieldCtx& ctx) {
    std::string num = s.digits();
    if (s.peek() == '/') {
        ++s.pos;
        std::string den = s.digits();
        return ctx.parse_scalar(num + "/" + den);
    }
    return ctx.parse_scalar(num);
}

std::string mono_text(const Poly::Mono& m) {
    std::string out;
    for (std::size_t k = 0; k < m.size(); ++k) {
        if (m[k] == 0) continue;
        if (!out.empty()) out += "*";
        out += "x" + std::to_string(k + 1);
        if (m[k] > 1) out += "^" + std::to_string(m[k]);
    }
    return out;
}

}  // namespace

std::string poly_to_text(const Poly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        FieldElem coeff = c;
        bool negative = false;
        if (p.ctx().is_rationals() && coeff.rational() < 0) {
            negative = true;
            coeff = -coeff;
        }
        if (first) {
            if (negative) out += "-";
            first = false;
        } else {
            out += negative ? " - " : " + ";
        }
        std::string mono = mono_text(m);
        if (mono.empty()) {
            out += coeff.to_string();
        } else if (coeff.is_one()) {
            out += mono;
        } else {
            out += coeff.to_string() + "*" + mono;
        }
    }
    return out;
}

Poly poly_from_text(const std::string& text, const FieldCtx& ctx, int nvars) {
    Scanner s{text};

    struct RawTerm {
        FieldElem coeff;
        std::map<int, std::uint32_t> exps;
    };
    std::vector<RawTerm> terms;
    int max_var = 0;

    bool negate = false;
    if (s.accept('-')) negate = true;
    else s.accept('+');

    while (true) {
        RawTerm term{negate ? -ctx.one() : ctx.one(), {}};
        bool more_factors = true;
        bool any_factor = false;
        while (more_factors) {
            char c = s.peek();
            if (c == 'x') {
                ++s.pos;
                int var = 0;
                try {
                    var = std::stoi(s.digits());
                } catch (const std::exception&) {
                    s.fail("bad variable index");
                }
                if (var < 1) s.fail("variable index must be >= 1");
                std::uint32_t e = 1;
                if (s.accept('^')) {
                    try {
                        e = static_cast<std::uint32_t>(std::stoul(s.digits()));
                    } catch (const std::exception&) {
                        s.fail("bad exponent");
                    }
                }
                term.exps[var] += e;
                max_var = std::max(max_var, var);
                any_factor = true;
            } else if (std::isdigit(static_cast<unsigned char>(c))) {
                term.coeff *= scan_scalar(s, ctx);
                any_factor = true;
            } else {
                s.fail("expected a coefficient or variable");
            }
            more_factors = s.accept('*');
        }
        if (!any_factor) s.fail("empty term");
        terms.push_back(std::move(term));

        if (s.done()) break;
        if (s.accept('+')) {
            negate = false;
        } else if (s.accept('-')) {
            negate = true;
        } else {
            s.fail("expected '+' or '-'");
        }
    }

    if (nvars == 0) nvars = max_var;
    if (max_var > nvars)
        throw UnknownVariableError("variable x" + std::to_string(max_var) + " exceeds ambient x1..x" +
                                   std::to_string(nvars));

    Poly out(ctx, nvars);
    for (const RawTerm& t : terms) {
        Poly::Mono m(nvars, 0);
        for (const auto& [var, e] : t.exps) m[var - 1] = e;
        out.add_term(m, t.coeff);
    }
    return out;
}

Poly parse_poly_or_gen(const std::string& text, const FieldCtx& ctx, int nvars) {
    std::string trimmed = text;
    auto l = trimmed.find_first_not_of(" \t");
    auto r = trimmed.find_last_not_of(" \t");
    trimmed = l == std::string::npos ? "" : trimmed.substr(l, r - l + 1);

    if (trimmed.rfind("gen:", 0) != 0) return poly_from_text(text, ctx, nvars);

    std::string rest = trimmed.substr(4);
    auto colon = rest.find(':');
    if (colon == std::string::npos) throw SyntaxError("generator shorthand needs gen:<name>:<args>");
    std::string name = rest.substr(0, colon);
    std::vector<std::string> args;
    {
        std::stringstream ss(rest.substr(colon + 1));
        std::string item;
        while (std::getline(ss, item, ',')) args.push_back(item);
    }
    auto arg_int = [&](std::size_t k) {
        try {
            return std::stoi(args.at(k));
        } catch (const std::exception&) {
            throw SyntaxError("bad integer argument in generator shorthand '" + trimmed + "'");
        }
    };
    auto arg_scalar = [&](std::size_t k) { return ctx.parse_scalar(args.at(k)); };

    Poly base = [&] {
        if ((name == "S" || name == "s") && args.size() == 2) return gen_symmetric(ctx, arg_int(0), arg_int(1));
        if ((name == "M" || name == "m") && args.size() == 3)
            return gen_top_symmetric(ctx, arg_int(0), arg_scalar(1), arg_scalar(2));
        if ((name == "f" || name == "F") && args.size() == 3)
            return gen_f_family(arg_scalar(0), arg_scalar(1), arg_scalar(2));
        throw SyntaxError("unknown generator shorthand '" + trimmed + "'");
    }();
    if (nvars != 0 && nvars != base.nvars()) base = base.extended(nvars);
    return base;
}

nlohmann::json rof_to_json(const Rof& t) {
    std::function<nlohmann::json(const Rof::Node&)> walk = [&](const Rof::Node& n) -> nlohmann::json {
        nlohmann::json j;
        j["a"] = n.a.to_string();
        j["b"] = n.b.to_string();
        if (n.op == Rof::Op::leaf) {
            j["var"] = n.var;
        } else {
            j["op"] = n.op == Rof::Op::add ? "add" : "mul";
            j["left"] = walk(*n.left);
            j["right"] = walk(*n.right);
        }
        return j;
    };
    return walk(t.root());
}

Rof rof_from_json(const nlohmann::json& j, const FieldCtx& ctx) {
    if (!j.is_object()) throw SyntaxError("ROF JSON node must be an object");
    FieldElem a = ctx.parse_scalar(j.at("a").get<std::string>());
    FieldElem b = ctx.parse_scalar(j.at("b").get<std::string>());
    if (j.contains("var")) return Rof::leaf(j.at("var").get<int>(), a, b);
    std::string op = j.at("op").get<std::string>();
    Rof left = rof_from_json(j.at("left"), ctx);
    Rof right = rof_from_json(j.at("right"), ctx);
    if (op == "add") return Rof::node(Rof::Op::add, a, b, left, right);
    if (op == "mul") return Rof::node(Rof::Op::mul, a, b, left, right);
    throw SyntaxError("unknown ROF op '" + op + "'");
}

nlohmann::json decomposition_to_json(const Decomposition& d) {
    nlohmann::json j;
    j["field"] = d.target.ctx().selector();
    j["nvars"] = d.target.nvars();
    j["target"] = poly_to_text(d.target);
    j["construction"] = construction_name(d.construction);
    j["summands"] = nlohmann::json::array();
    for (const Rof& s : d.summands) j["summands"].push_back(rof_to_json(s));
    j["verified"] = d.verified;
    return j;
}

Decomposition decomposition_from_json(const nlohmann::json& j) {
    FieldCtx ctx = FieldCtx::from_selector(j.at("field").get<std::string>());
    int nvars = j.at("nvars").get<int>();
    Poly target = poly_from_text(j.at("target").get<std::string>(), ctx, nvars);
    Decomposition d{std::move(target), construction_from_name(j.at("construction").get<std::string>()), {}, false};
    for (const auto& js : j.at("summands")) d.summands.push_back(rof_from_json(js, ctx));
    d.verified = j.value("verified", false);
    return d;
}

nlohmann::json condition_report_to_json(const ConditionReport& r) {
    nlohmann::json j;
    auto put_bool = [&](const char* key, const std::optional<bool>& v) {
        if (v) j[key] = *v;
        else j[key] = nullptr;
    };
    put_bool("c1", r.c1);
    put_bool("c2", r.c2);
    put_bool("c3", r.c3);
    if (!r.d_values.empty()) {
        j["d_values"] = nlohmann::json::array();
        for (const FieldElem& d : r.d_values) j["d_values"].push_back(d.to_string());
    } else {
        j["d_values"] = nullptr;
    }
    j["c3_root"] = r.c3_root ? nlohmann::json(r.c3_root->to_string()) : nlohmann::json(nullptr);
    j["c3_root_irrational"] = r.c3_root_irrational;

    j["cprime_evaluated"] = r.cprime_evaluated;
    if (r.c1p) {
        j["c1p"] = {{"holds", true},
                    {"i", r.c1p->i},
                    {"j", r.c1p->j},
                    {"A", r.c1p->A.to_string()},
                    {"B", r.c1p->B.to_string()}};
    } else {
        j["c1p"] = r.cprime_evaluated ? nlohmann::json{{"holds", false}} : nlohmann::json(nullptr);
    }
    if (r.c2p) {
        nlohmann::json coeffs = nlohmann::json::array();
        for (const FieldElem& c : r.c2p->coeffs) coeffs.push_back(c.to_string());
        j["c2p"] = {{"holds", true}, {"i", r.c2p->i}, {"j", r.c2p->j}, {"coeffs", coeffs}};
    } else {
        j["c2p"] = r.cprime_evaluated ? nlohmann::json{{"holds", false}} : nlohmann::json(nullptr);
    }
    if (r.c3p) {
        j["c3p"] = {{"holds", true},
                    {"l1", poly_to_text(r.c3p->l1)},
                    {"l2", poly_to_text(r.c3p->l2)},
                    {"l3", poly_to_text(r.c3p->l3)},
                    {"l4", poly_to_text(r.c3p->l4)}};
    } else {
        j["c3p"] = r.cprime_evaluated ? nlohmann::json{{"holds", false}} : nlohmann::json(nullptr);
    }
    j["c3p_blocked_irrational"] = r.c3p_blocked_irrational;
    return j;
}

}  // namespace rops
