#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace mixscope {

using Rational = mpq_class;
using BigInt = mpz_class;

/// Formats as "num/den" in lowest terms; integers keep the "/1".
std::string to_string(const Rational& q);

/// Accepts "num/den", "num", or a plain decimal such as "0.25".
Rational parse_rational(std::string_view text);

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  Rational q(BigInt(static_cast<long>(num)), BigInt(static_cast<long>(den)));
  q.canonicalize();
  return q;
}

inline Rational make_rational(const BigInt& num, const BigInt& den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline BigInt pow_int(std::uint64_t base, std::uint64_t exponent) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, exponent);
  return r;
}

inline double to_double(const Rational& q) { return q.get_d(); }

}  // namespace mixscope
