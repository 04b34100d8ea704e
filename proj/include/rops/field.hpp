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

#ifndef ROPS_FIELD_HPP
#define ROPS_FIELD_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <string>

#include "rops/errors.hpp"

namespace rops {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

class FieldElem;

/// An exact coefficient field: the rationals (optionally with real-number
/// squareness semantics, see sqrt_in_field) or a prime field F_p.
///
/// Values are small and immutable; copy freely.
class FieldCtx {
   public:
    enum class Kind : std::uint8_t { rationals, prime };

    static FieldCtx rationals(bool reals_semantics = false);
    static FieldCtx prime(std::int64_t p);

    Kind kind() const noexcept { return kind_; }
    bool is_rationals() const noexcept { return kind_ == Kind::rationals; }
    bool is_prime() const noexcept { return kind_ == Kind::prime; }
    std::int64_t modulus() const;
    bool reals_semantics() const noexcept { return reals_semantics_; }
    std::int64_t characteristic() const noexcept { return kind_ == Kind::prime ? p_ : 0; }

    bool operator==(const FieldCtx& o) const noexcept = default;

    FieldElem zero() const;
    FieldElem one() const;
    FieldElem from_int(std::int64_t v) const;
    FieldElem from_ratio(std::int64_t num, std::int64_t den) const;
    FieldElem from_rational(const Rational& q) const;

    /// Parses the textual scalar syntax: an optionally signed integer or
    /// `p/q` fraction, e.g. "7", "-3", "5/3".
    FieldElem parse_scalar(const std::string& text) const;

    /// Field selector string: "q", "q-reals" or "fp:<p>".
    std::string selector() const;
    static FieldCtx from_selector(const std::string& s);

   private:
    FieldCtx(Kind k, std::int64_t p, bool reals) : kind_(k), p_(p), reals_semantics_(reals) {}

    Kind kind_ = Kind::rationals;
    std::int64_t p_ = 0;
    bool reals_semantics_ = false;
};

/// A scalar in a FieldCtx, always held in canonical form: a reduced
/// fraction over the rationals, the residue in 0..p-1 over F_p.
/// Equality is structural; all arithmetic is exact.
class FieldElem {
   public:
    FieldElem() = delete;

    const FieldCtx& ctx() const noexcept { return ctx_; }
    bool is_zero() const noexcept;
    bool is_one() const noexcept;

    FieldElem operator+(const FieldElem& o) const;
    FieldElem operator-(const FieldElem& o) const;
    FieldElem operator*(const FieldElem& o) const;
    FieldElem operator/(const FieldElem& o) const;  // throws DivisionByZeroError
    FieldElem operator-() const;
    FieldElem inverse() const;

    FieldElem& operator+=(const FieldElem& o) { return *this = *this + o; }
    FieldElem& operator-=(const FieldElem& o) { return *this = *this - o; }
    FieldElem& operator*=(const FieldElem& o) { return *this = *this * o; }
    FieldElem& operator/=(const FieldElem& o) { return *this = *this / o; }

    bool operator==(const FieldElem& o) const;
    bool operator!=(const FieldElem& o) const { return !(*this == o); }

    /// Canonical total order within a field (value order over Q, residue
    /// order over F_p). Used only for deterministic tie-breaking.
    bool canonical_less(const FieldElem& o) const;

    /// The rational value; only valid over the rationals.
    const Rational& rational() const;
    /// The canonical residue in 0..p-1; only valid over F_p.
    std::int64_t residue() const;

    std::string to_string() const;

   private:
    friend class FieldCtx;
    FieldElem(FieldCtx ctx, Rational q) : ctx_(ctx), q_(std::move(q)) {}
    FieldElem(FieldCtx ctx, std::int64_t r) : ctx_(ctx), r_(r) {}
    void check_same_field(const FieldElem& o) const;

    FieldCtx ctx_;
    Rational q_;
    std::int64_t r_ = 0;
};

/// Result of a square-root query. Over F_p and the plain rationals the
/// answer is either a canonical root or "none". With reals semantics the
/// query is decided by sign, so a root may exist without being
/// representable in exact arithmetic.
struct SqrtResult {
    enum class Kind { root, exists_irrational, none };
    Kind kind = Kind::none;
    std::optional<FieldElem> root;

    bool exists() const noexcept { return kind != Kind::none; }
};

/// Decides whether d is a square in its field and returns the canonical
/// root when one is representable (non-negative over Q, smaller residue
/// over F_p).
SqrtResult sqrt_in_field(const FieldElem& d);

bool is_prime_int(std::int64_t n);

}  // namespace rops

#endif
