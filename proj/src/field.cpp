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

#include "rops/field.hpp"

#include <limits>

namespace rops {

namespace {

// Exhaustive square-root search is only meant for small moduli; anything
// larger is outside the toolkit's working range.
constexpr std::int64_t kMaxSqrtModulus = 10'000;
constexpr std::int64_t kMaxModulus = (std::int64_t{1} << 31) - 1;

std::int64_t mod_reduce(std::int64_t v, std::int64_t p) {
    std::int64_t r = v % p;
    return r < 0 ? r + p : r;
}

// boost's rational constructor rejects negative denominators.
Rational make_rational(BigInt num, BigInt den) {
    if (den == 0) throw DivisionByZeroError("zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    return Rational(num, den);
}

// Inverse mod p via extended Euclid; pre: 0 < a < p, p prime.
std::int64_t mod_inverse(std::int64_t a, std::int64_t p) {
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = p, new_r = a;
    while (new_r != 0) {
        std::int64_t q = r / new_r;
        t -= q * new_t;
        std::swap(t, new_t);
        r -= q * new_r;
        std::swap(r, new_r);
    }
    return mod_reduce(t, p);
}

}  // namespace

bool is_prime_int(std::int64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::int64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

FieldCtx FieldCtx::rationals(bool reals_semantics) { return FieldCtx(Kind::rationals, 0, reals_semantics); }

FieldCtx FieldCtx::prime(std::int64_t p) {
    if (p > kMaxModulus) throw ResourceGuardError("prime modulus too large: " + std::to_string(p));
    if (!is_prime_int(p)) throw InvalidArgumentError("modulus is not prime: " + std::to_string(p));
    return FieldCtx(Kind::prime, p, false);
}

std::int64_t FieldCtx::modulus() const {
    if (kind_ != Kind::prime) throw InvalidArgumentError("modulus() on a non-prime field");
    return p_;
}

FieldElem FieldCtx::zero() const { return from_int(0); }
FieldElem FieldCtx::one() const { return from_int(1); }

FieldElem FieldCtx::from_int(std::int64_t v) const {
    if (kind_ == Kind::prime) return FieldElem(*this, mod_reduce(v, p_));
    return FieldElem(*this, Rational(v));
}

FieldElem FieldCtx::from_ratio(std::int64_t num, std::int64_t den) const {
    if (den == 0) throw DivisionByZeroError("zero denominator");
    if (kind_ == Kind::prime) {
        std::int64_t d = mod_reduce(den, p_);
        if (d == 0) throw DivisionByZeroError("denominator is zero mod p");
        std::int64_t n = mod_reduce(num, p_);
        return FieldElem(*this, n * mod_inverse(d, p_) % p_);
    }
    return FieldElem(*this, make_rational(BigInt(num), BigInt(den)));
}

FieldElem FieldCtx::from_rational(const Rational& q) const {
    if (kind_ == Kind::prime) {
        BigInt n = numerator(q) % p_;
        BigInt d = denominator(q) % p_;
        std::int64_t ni = mod_reduce(n.convert_to<std::int64_t>(), p_);
        std::int64_t di = mod_reduce(d.convert_to<std::int64_t>(), p_);
        if (di == 0) throw DivisionByZeroError("denominator is zero mod p");
        return FieldElem(*this, ni * mod_inverse(di, p_) % p_);
    }
    return FieldElem(*this, q);
}

FieldElem FieldCtx::parse_scalar(const std::string& text) const {
    std::size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    auto parse_int = [&]() -> BigInt {
        skip_ws();
        bool neg = false;
        if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
            neg = text[pos] == '-';
            ++pos;
        }
        skip_ws();
        if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
            throw SyntaxError("expected integer at position " + std::to_string(pos) + " in '" + text + "'");
        BigInt v = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            v = v * 10 + (text[pos] - '0');
            ++pos;
        }
        return neg ? BigInt(-v) : v;
    };
    BigInt num = parse_int();
    BigInt den = 1;
    skip_ws();
    if (pos < text.size() && text[pos] == '/') {
        ++pos;
        den = parse_int();
        skip_ws();
    }
    if (pos != text.size()) throw SyntaxError("trailing characters in scalar '" + text + "'");
    if (den == 0) throw DivisionByZeroError("zero denominator in scalar '" + text + "'");
    return from_rational(make_rational(num, den));
}

std::string FieldCtx::selector() const {
    if (kind_ == Kind::prime) return "fp:" + std::to_string(p_);
    return reals_semantics_ ? "q-reals" : "q";
}

FieldCtx FieldCtx::from_selector(const std::string& s) {
    if (s == "q") return rationals(false);
    if (s == "q-reals") return rationals(true);
    if (s.rfind("fp:", 0) == 0) {
        std::int64_t p;
        try {
            p = std::stoll(s.substr(3));
        } catch (const std::exception&) {
            throw SyntaxError("bad field selector '" + s + "'");
        }
        return prime(p);
    }
    throw SyntaxError("unknown field selector '" + s + "' (expected q, q-reals or fp:<p>)");
}

void FieldElem::check_same_field(const FieldElem& o) const {
    if (!(ctx_ == o.ctx_))
        throw FieldMismatchError("elements of " + ctx_.selector() + " and " + o.ctx_.selector() + " mixed");
}

bool FieldElem::is_zero() const noexcept { return ctx_.is_prime() ? r_ == 0 : q_.is_zero(); }

bool FieldElem::is_one() const noexcept { return ctx_.is_prime() ? r_ == 1 : q_ == 1; }

FieldElem FieldElem::operator+(const FieldElem& o) const {
    check_same_field(o);
    if (ctx_.is_prime()) return FieldElem(ctx_, (r_ + o.r_) % ctx_.modulus());
    return FieldElem(ctx_, q_ + o.q_);
}

FieldElem FieldElem::operator-(const FieldElem& o) const {
    check_same_field(o);
    if (ctx_.is_prime()) {
        std::int64_t p = ctx_.modulus();
        return FieldElem(ctx_, (r_ - o.r_ + p) % p);
    }
    return FieldElem(ctx_, q_ - o.q_);
}

FieldElem FieldElem::operator*(const FieldElem& o) const {
    check_same_field(o);
    if (ctx_.is_prime()) return FieldElem(ctx_, r_ * o.r_ % ctx_.modulus());
    return FieldElem(ctx_, q_ * o.q_);
}

FieldElem FieldElem::operator/(const FieldElem& o) const { return *this * o.inverse(); }

FieldElem FieldElem::operator-() const {
    if (ctx_.is_prime()) {
        std::int64_t p = ctx_.modulus();
        return FieldElem(ctx_, (p - r_) % p);
    }
    return FieldElem(ctx_, -q_);
}

FieldElem FieldElem::inverse() const {
    if (is_zero()) throw DivisionByZeroError("inverse of zero");
    if (ctx_.is_prime()) return FieldElem(ctx_, mod_inverse(r_, ctx_.modulus()));
    return FieldElem(ctx_, make_rational(denominator(q_), numerator(q_)));
}

bool FieldElem::operator==(const FieldElem& o) const {
    if (!(ctx_ == o.ctx_)) return false;
    return ctx_.is_prime() ? r_ == o.r_ : q_ == o.q_;
}

bool FieldElem::canonical_less(const FieldElem& o) const {
    check_same_field(o);
    return ctx_.is_prime() ? r_ < o.r_ : q_ < o.q_;
}

const Rational& FieldElem::rational() const {
    if (!ctx_.is_rationals()) throw InvalidArgumentError("rational() on a prime-field element");
    return q_;
}

std::int64_t FieldElem::residue() const {
    if (!ctx_.is_prime()) throw InvalidArgumentError("residue() on a rational element");
    return r_;
}

std::string FieldElem::to_string() const {
    if (ctx_.is_prime()) return std::to_string(r_);
    std::string s = numerator(q_).str();
    if (denominator(q_) != 1) s += "/" + denominator(q_).str();
    return s;
}

SqrtResult sqrt_in_field(const FieldElem& d) {
    const FieldCtx& ctx = d.ctx();
    if (ctx.is_prime()) {
        std::int64_t p = ctx.modulus();
        if (p > kMaxSqrtModulus)
            throw ResourceGuardError("square-root search limited to p <= " + std::to_string(kMaxSqrtModulus));
        std::int64_t v = d.residue();
        // Scan residues from 0 upward; the first hit is the canonical
        // (smaller) root.
        for (std::int64_t r = 0; r <= p / 2; ++r) {
            if (r * r % p == v) return {SqrtResult::Kind::root, ctx.from_int(r)};
        }
        return {SqrtResult::Kind::none, std::nullopt};
    }

    const Rational& q = d.rational();
    if (q < 0) return {SqrtResult::Kind::none, std::nullopt};
    BigInt num = numerator(q), den = denominator(q);
    BigInt sn = boost::multiprecision::sqrt(num);
    BigInt sd = boost::multiprecision::sqrt(den);
    if (sn * sn == num && sd * sd == den)
        return {SqrtResult::Kind::root, ctx.from_rational(Rational(sn, sd))};
    if (ctx.reals_semantics()) return {SqrtResult::Kind::exists_irrational, std::nullopt};
    return {SqrtResult::Kind::none, std::nullopt};
}

}  // namespace rops
