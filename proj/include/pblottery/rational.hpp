// Copyright 2026 The pblottery Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <memory>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pblottery {

// Exact rational number, always stored in lowest terms with a positive
// denominator.
//
// Values whose numerator and denominator fit in int64 stay in a pair of
// machine words and every operation runs on 128-bit intermediates. Anything
// larger is promoted to a shared, immutable GMP rational and demoted again as
// soon as a result fits. The two representations never hold the same value,
// so equality on mixed representations is simply false.
class Rational {
 public:
  Rational() noexcept = default;

  template <std::integral T>
  Rational(T value) {  // NOLINT(google-explicit-constructor)
    if constexpr (std::is_signed_v<T>) {
      if (static_cast<std::int64_t>(value) != std::numeric_limits<std::int64_t>::min()) {
        num_ = static_cast<std::int64_t>(value);
        return;
      }
    } else {
      if (static_cast<std::uint64_t>(value) <=
          static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
        num_ = static_cast<std::int64_t>(value);
        return;
      }
    }
    *this = from_mpq(mpq_class(mpz_class(std::to_string(value))));
  }

  // Throws std::domain_error when den == 0.
  Rational(std::int64_t num, std::int64_t den);

  // Parses "[+-]digits[/digits]". Throws std::invalid_argument on malformed
  // text and std::domain_error on a zero denominator.
  static Rational parse(std::string_view text);

  static Rational from_mpq(const mpq_class& value);
  mpq_class to_mpq() const;

  std::string str() const;
  double to_double() const;

  int sign() const noexcept {
    if (big_) return sgn(*big_);
    return (num_ > 0) - (num_ < 0);
  }
  bool is_zero() const noexcept { return !big_ && num_ == 0; }
  bool is_integer() const noexcept { return !big_ && den_ == 1; }
  bool is_small() const noexcept { return !big_; }

  // Present when the value is an integer in [0, 2^64).
  std::optional<std::uint64_t> to_uint64() const;

  // True iff *this > u / 2^64.
  bool exceeds_dyadic(std::uint64_t u) const;

  Rational abs() const { return sign() < 0 ? -*this : *this; }

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a);

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) noexcept {
    if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
    if (a.big_ && b.big_) return *a.big_ == *b.big_;
    return false;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  using i128 = __int128;

  static bool fits(i128 v) noexcept {
    return v > static_cast<i128>(std::numeric_limits<std::int64_t>::min()) &&
           v <= static_cast<i128>(std::numeric_limits<std::int64_t>::max());
  }
  static Rational raw(std::int64_t num, std::int64_t den) noexcept {
    Rational r;
    r.num_ = num;
    r.den_ = den;
    return r;
  }

  static Rational add_slow(const Rational& a, const Rational& b);
  static Rational sub_slow(const Rational& a, const Rational& b);
  static Rational mul_slow(const Rational& a, const Rational& b);
  static Rational div_slow(const Rational& a, const Rational& b);
  static std::strong_ordering cmp_slow(const Rational& a, const Rational& b);

  static Rational add_small(std::int64_t an, std::int64_t ad, std::int64_t bn,
                            std::int64_t bd, bool& ok) noexcept;
  static Rational mul_small(std::int64_t an, std::int64_t ad, std::int64_t bn,
                            std::int64_t bd, bool& ok) noexcept;

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::shared_ptr<const mpq_class> big_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

inline Rational Rational::add_small(std::int64_t an, std::int64_t ad, std::int64_t bn,
                                    std::int64_t bd, bool& ok) noexcept {
  ok = true;
  if (ad == 1 && bd == 1) {
    const i128 s = static_cast<i128>(an) + bn;
    if (fits(s)) return raw(static_cast<std::int64_t>(s), 1);
    ok = false;
    return {};
  }
  const std::int64_t g = std::gcd(ad, bd);
  const std::int64_t ad1 = ad / g;
  const std::int64_t bd1 = bd / g;
  const i128 t = static_cast<i128>(an) * bd1 + static_cast<i128>(bn) * ad1;
  if (t == 0) return {};
  std::int64_t g2 = 1;
  if (g != 1) {
    i128 rem = t % g;
    if (rem < 0) rem = -rem;
    g2 = std::gcd(static_cast<std::int64_t>(rem), g);
  }
  const i128 num = t / g2;
  const i128 den = static_cast<i128>(ad1) * (bd / g2);
  if (fits(num) && fits(den)) {
    return raw(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
  }
  ok = false;
  return {};
}

inline Rational Rational::mul_small(std::int64_t an, std::int64_t ad, std::int64_t bn,
                                    std::int64_t bd, bool& ok) noexcept {
  ok = true;
  if (an == 0 || bn == 0) return {};
  const std::int64_t g1 = std::gcd(an < 0 ? -an : an, bd);
  const std::int64_t g2 = std::gcd(bn < 0 ? -bn : bn, ad);
  const i128 num = static_cast<i128>(an / g1) * (bn / g2);
  const i128 den = static_cast<i128>(ad / g2) * (bd / g1);
  if (fits(num) && fits(den)) {
    return raw(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
  }
  ok = false;
  return {};
}

inline Rational operator+(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    bool ok;
    Rational r = Rational::add_small(a.num_, a.den_, b.num_, b.den_, ok);
    if (ok) return r;
  }
  return Rational::add_slow(a, b);
}

inline Rational operator-(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    bool ok;
    Rational r = Rational::add_small(a.num_, a.den_, -b.num_, b.den_, ok);
    if (ok) return r;
  }
  return Rational::sub_slow(a, b);
}

inline Rational operator*(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    bool ok;
    Rational r = Rational::mul_small(a.num_, a.den_, b.num_, b.den_, ok);
    if (ok) return r;
  }
  return Rational::mul_slow(a, b);
}

inline Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_zero()) throw std::domain_error("rational division by zero");
  if (!a.big_ && !b.big_) {
    const std::int64_t rn = b.num_ < 0 ? -b.den_ : b.den_;
    const std::int64_t rd = b.num_ < 0 ? -b.num_ : b.num_;
    bool ok;
    Rational r = Rational::mul_small(a.num_, a.den_, rn, rd, ok);
    if (ok) return r;
  }
  return Rational::div_slow(a, b);
}

inline Rational operator-(const Rational& a) {
  if (!a.big_) return Rational::raw(-a.num_, a.den_);
  return Rational::from_mpq(-*a.big_);
}

inline std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    if (a.den_ == b.den_) return a.num_ <=> b.num_;
    const Rational::i128 l = static_cast<Rational::i128>(a.num_) * b.den_;
    const Rational::i128 r = static_cast<Rational::i128>(b.num_) * a.den_;
    return l < r ? std::strong_ordering::less
                 : (l > r ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
  return Rational::cmp_slow(a, b);
}

inline Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace pblottery
