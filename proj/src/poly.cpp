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

#include "rops/poly.hpp"

#include <algorithm>
#include <numeric>

namespace rops {

namespace {
constexpr int kMaxVars = 30;

int mono_degree(const Poly::Mono& m) {
    return std::accumulate(m.begin(), m.end(), 0, [](int acc, std::uint32_t e) { return acc + static_cast<int>(e); });
}
}  // namespace

bool Poly::GradedLexDesc::operator()(const Mono& a, const Mono& b) const {
    int da = mono_degree(a), db = mono_degree(b);
    if (da != db) return da > db;
    return a > b;  // lexicographic on exponent vectors, larger first
}

Poly::Poly(const FieldCtx& ctx, int nvars) : ctx_(ctx), nvars_(nvars) {
    if (nvars < 0 || nvars > kMaxVars)
        throw TooManyVariablesError("variable count out of range: " + std::to_string(nvars));
}

Poly Poly::constant(const FieldCtx& ctx, int nvars, const FieldElem& c) {
    Poly p(ctx, nvars);
    p.add_term(Mono(nvars, 0), c);
    return p;
}

Poly Poly::variable(const FieldCtx& ctx, int nvars, int var) {
    Poly p(ctx, nvars);
    p.check_var(var);
    Mono m(nvars, 0);
    m[var - 1] = 1;
    p.add_term(m, ctx.one());
    return p;
}

void Poly::check_var(int var) const {
    if (var < 1 || var > nvars_)
        throw UnknownVariableError("variable x" + std::to_string(var) + " outside ambient x1..x" +
                                   std::to_string(nvars_));
}

void Poly::check_compatible(const Poly& o) const {
    if (!(ctx_ == o.ctx_))
        throw FieldMismatchError("polynomials over " + ctx_.selector() + " and " + o.ctx_.selector() + " mixed");
    if (nvars_ != o.nvars_)
        throw WrongArityError("polynomials on " + std::to_string(nvars_) + " and " + std::to_string(o.nvars_) +
                              " variables mixed");
}

bool Poly::is_multilinear() const {
    for (const auto& [m, c] : terms_)
        for (std::uint32_t e : m)
            if (e > 1) return false;
    return true;
}

int Poly::total_degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, mono_degree(m));
    return d;
}

FieldElem Poly::coeff(const Mono& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? ctx_.zero() : it->second;
}

FieldElem Poly::coeff_mask(VarMask mask) const {
    Mono m(nvars_, 0);
    for (int v = 1; v <= nvars_; ++v)
        if (mask_contains(mask, v)) m[v - 1] = 1;
    return coeff(m);
}

VarMask Poly::effective_vars() const {
    VarMask out = 0;
    for (const auto& [m, c] : terms_)
        for (int v = 1; v <= nvars_; ++v)
            if (m[v - 1] > 0) out |= mask_of_var(v);
    return out;
}

void Poly::add_term(const Mono& m, const FieldElem& c) {
    if (static_cast<int>(m.size()) != nvars_) throw WrongArityError("exponent vector length mismatch");
    if (!(c.ctx() == ctx_)) throw FieldMismatchError("coefficient from a different field");
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

void Poly::add_term_mask(VarMask mask, const FieldElem& c) {
    Mono m(nvars_, 0);
    for (int v = 1; v <= nvars_; ++v)
        if (mask_contains(mask, v)) m[v - 1] = 1;
    add_term(m, c);
}

Poly Poly::operator+(const Poly& o) const {
    check_compatible(o);
    Poly out = *this;
    for (const auto& [m, c] : o.terms_) out.add_term(m, c);
    return out;
}

Poly Poly::operator-(const Poly& o) const {
    check_compatible(o);
    Poly out = *this;
    for (const auto& [m, c] : o.terms_) out.add_term(m, -c);
    return out;
}

Poly Poly::operator-() const {
    Poly out(ctx_, nvars_);
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
    return out;
}

Poly Poly::operator*(const Poly& o) const {
    check_compatible(o);
    Poly out(ctx_, nvars_);
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : o.terms_) {
            Mono m(nvars_);
            for (int k = 0; k < nvars_; ++k) m[k] = ma[k] + mb[k];
            out.add_term(m, ca * cb);
        }
    }
    return out;
}

bool Poly::operator==(const Poly& o) const {
    if (!(ctx_ == o.ctx_) || nvars_ != o.nvars_ || terms_.size() != o.terms_.size()) return false;
    auto it = terms_.begin(), jt = o.terms_.begin();
    for (; it != terms_.end(); ++it, ++jt)
        if (it->first != jt->first || !(it->second == jt->second)) return false;
    return true;
}

Poly Poly::scaled(const FieldElem& c) const {
    Poly out(ctx_, nvars_);
    if (c.is_zero()) return out;
    for (const auto& [m, v] : terms_) out.terms_.emplace(m, v * c);
    return out;
}

Poly Poly::restricted(int var, const FieldElem& a) const {
    check_var(var);
    Poly out(ctx_, nvars_);
    for (const auto& [m, c] : terms_) {
        std::uint32_t e = m[var - 1];
        Mono mm = m;
        mm[var - 1] = 0;
        FieldElem coeff = c;
        for (std::uint32_t k = 0; k < e; ++k) coeff *= a;
        out.add_term(mm, coeff);
    }
    return out;
}

Poly Poly::substituted(int var, const Poly& value) const {
    check_var(var);
    check_compatible(value);
    if (mask_contains(value.effective_vars(), var))
        throw InvalidArgumentError("substitution value mentions the substituted variable");
    Poly out(ctx_, nvars_);
    for (const auto& [m, c] : terms_) {
        std::uint32_t e = m[var - 1];
        Mono mm = m;
        mm[var - 1] = 0;
        Poly term(ctx_, nvars_);
        term.add_term(mm, c);
        for (std::uint32_t k = 0; k < e; ++k) term = term * value;
        out = out + term;
    }
    return out;
}

Poly Poly::derivative(int var) const {
    check_var(var);
    Poly out(ctx_, nvars_);
    for (const auto& [m, c] : terms_) {
        std::uint32_t e = m[var - 1];
        if (e == 0) continue;
        Mono mm = m;
        mm[var - 1] = e - 1;
        out.add_term(mm, c * ctx_.from_int(static_cast<std::int64_t>(e)));
    }
    return out;
}

Poly Poly::renamed(const std::vector<int>& perm) const {
    if (static_cast<int>(perm.size()) != nvars_) throw WrongArityError("permutation length mismatch");
    Poly out(ctx_, nvars_);
    for (const auto& [m, c] : terms_) {
        Mono mm(nvars_, 0);
        for (int k = 0; k < nvars_; ++k) {
            int target = perm[k];
            if (target < 1 || target > nvars_) throw InvalidArgumentError("bad permutation entry");
            mm[target - 1] = m[k];
        }
        out.add_term(mm, c);
    }
    return out;
}

Poly Poly::extended(int new_nvars) const {
    if (new_nvars < nvars_) throw WrongArityError("cannot shrink the ambient variable set");
    Poly out(ctx_, new_nvars);
    for (const auto& [m, c] : terms_) {
        Mono mm(new_nvars, 0);
        std::copy(m.begin(), m.end(), mm.begin());
        out.add_term(mm, c);
    }
    return out;
}

Poly Poly::commutator(int i, int j) const {
    check_var(i);
    check_var(j);
    if (i == j) throw InvalidArgumentError("commutator needs two distinct variables");
    if (!is_multilinear()) throw NotMultilinearError("commutator requires a multilinear polynomial");
    const FieldElem zero = ctx_.zero(), one = ctx_.one();
    Poly p00 = restricted(i, zero).restricted(j, zero);
    Poly p11 = restricted(i, one).restricted(j, one);
    Poly p01 = restricted(i, zero).restricted(j, one);
    Poly p10 = restricted(i, one).restricted(j, zero);
    return p00 * p11 - p01 * p10;
}

FieldElem Poly::eval(const std::vector<FieldElem>& point) const {
    if (static_cast<int>(point.size()) != nvars_) throw WrongArityError("evaluation point length mismatch");
    FieldElem acc = ctx_.zero();
    for (const auto& [m, c] : terms_) {
        FieldElem t = c;
        for (int k = 0; k < nvars_; ++k)
            for (std::uint32_t e = 0; e < m[k]; ++e) t *= point[k];
        acc += t;
    }
    return acc;
}

Poly gen_symmetric(const FieldCtx& ctx, int n, int k) {
    if (n < 0 || k < 0 || k > n) throw InvalidArgumentError("gen_symmetric needs 0 <= k <= n");
    Poly out(ctx, n);
    // Walk k-subsets of [n] in lexicographic order.
    std::vector<int> pick(k);
    std::iota(pick.begin(), pick.end(), 1);
    while (true) {
        VarMask m = 0;
        for (int v : pick) m |= mask_of_var(v);
        out.add_term_mask(m, ctx.one());
        int i = k - 1;
        while (i >= 0 && pick[i] == n - (k - 1 - i)) --i;
        if (i < 0) break;
        ++pick[i];
        for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
    return out;
}

Poly gen_top_symmetric(const FieldCtx& ctx, int n, const FieldElem& A, const FieldElem& B) {
    if (n < 1) throw InvalidArgumentError("gen_top_symmetric needs n >= 1");
    return gen_symmetric(ctx, n, n).scaled(A) + gen_symmetric(ctx, n, n - 1).scaled(B);
}

Poly gen_f_family(const FieldElem& a, const FieldElem& b, const FieldElem& c) {
    const FieldCtx& ctx = a.ctx();
    if (!(b.ctx() == ctx) || !(c.ctx() == ctx)) throw FieldMismatchError("f-family weights from different fields");
    Poly out(ctx, 4);
    out.add_term_mask(mask_of_var(1) | mask_of_var(2), a);
    out.add_term_mask(mask_of_var(3) | mask_of_var(4), a);
    out.add_term_mask(mask_of_var(1) | mask_of_var(3), b);
    out.add_term_mask(mask_of_var(2) | mask_of_var(4), b);
    out.add_term_mask(mask_of_var(1) | mask_of_var(4), c);
    out.add_term_mask(mask_of_var(2) | mask_of_var(3), c);
    return out;
}

}  // namespace rops
