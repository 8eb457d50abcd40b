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

#include "pblottery/rational.hpp"

#include <cctype>
#include <ostream>

namespace pblottery {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  constexpr auto lowest = std::numeric_limits<std::int64_t>::min();
  if (num != lowest && den != lowest) {
    const std::int64_t g = std::gcd(num, den);
    num_ = den < 0 ? -num / g : num / g;
    den_ = den < 0 ? -den / g : den / g;
    return;
  }
  *this = from_mpq(mpq_class(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den))));
}

Rational Rational::parse(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '+' || body.front() == '-')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  const std::string_view num_text = body.substr(0, slash);
  const std::string_view den_text =
      slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!all_digits(num_text) || !all_digits(den_text)) {
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  }
  mpz_class num(std::string(num_text), 10);
  mpz_class den(std::string(den_text), 10);
  if (den == 0) throw std::domain_error("rational with zero denominator");
  if (negative) num = -num;
  mpq_class q(num, den);
  q.canonicalize();
  return from_mpq(q);
}

Rational Rational::from_mpq(const mpq_class& input) {
  mpq_class value(input);
  value.canonicalize();
  const mpz_class& num = value.get_num();
  const mpz_class& den = value.get_den();
  if (num.fits_slong_p() && den.fits_slong_p() &&
      num.get_si() != std::numeric_limits<long>::min()) {
    return raw(num.get_si(), den.get_si());
  }
  Rational r;
  r.big_ = std::make_shared<const mpq_class>(std::move(value));
  return r;
}

mpq_class Rational::to_mpq() const {
  if (big_) return *big_;
  return mpq_class(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
}

std::string Rational::str() const {
  if (big_) return big_->get_str(10);
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

double Rational::to_double() const {
  if (big_) return big_->get_d();
  return static_cast<double>(num_) / static_cast<double>(den_);
}

std::optional<std::uint64_t> Rational::to_uint64() const {
  if (!big_) {
    if (den_ != 1 || num_ < 0) return std::nullopt;
    return static_cast<std::uint64_t>(num_);
  }
  if (big_->get_den() != 1 || sgn(*big_) < 0) return std::nullopt;
  const mpz_class& n = big_->get_num();
  if (mpz_sizeinbase(n.get_mpz_t(), 2) > 64) return std::nullopt;
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, n.get_mpz_t());
  return out;
}

bool Rational::exceeds_dyadic(std::uint64_t u) const {
  if (!big_) {
    if (num_ <= 0) return false;
    using u128 = unsigned __int128;
    const u128 lhs = static_cast<u128>(static_cast<std::uint64_t>(num_)) << 64;
    const u128 rhs = static_cast<u128>(u) * static_cast<std::uint64_t>(den_);
    return lhs > rhs;
  }
  mpz_class scaled_u;
  mpz_import(scaled_u.get_mpz_t(), 1, -1, sizeof(u), 0, 0, &u);
  scaled_u *= big_->get_den();
  mpz_class scaled_num = big_->get_num();
  scaled_num <<= 64;
  return scaled_num > scaled_u;
}

Rational Rational::add_slow(const Rational& a, const Rational& b) {
  return from_mpq(a.to_mpq() + b.to_mpq());
}
Rational Rational::sub_slow(const Rational& a, const Rational& b) {
  return from_mpq(a.to_mpq() - b.to_mpq());
}
Rational Rational::mul_slow(const Rational& a, const Rational& b) {
  return from_mpq(a.to_mpq() * b.to_mpq());
}
Rational Rational::div_slow(const Rational& a, const Rational& b) {
  return from_mpq(a.to_mpq() / b.to_mpq());
}
std::strong_ordering Rational::cmp_slow(const Rational& a, const Rational& b) {
  const int c = cmp(a.to_mpq(), b.to_mpq());
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace pblottery
