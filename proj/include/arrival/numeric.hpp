// Copyright (c) arrival contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace arrival {

// Unbounded integer / exact rational. Token counts and flow values can reach
// 2^|V|·t⁺, and the contraction factor 1 − δ/(t⁺(1+n·2ⁿ)) must be represented
// exactly, so no fixed-width type is usable anywhere in the pipeline.
using Int = mpz_class;
using Rat = mpq_class;

// Input problems (bad documents, bad parameters, violated preconditions).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Broken internal invariants (exhausted binary search, merge disagreement, ...).
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// mpq_class's two-argument constructor does not reduce; every ratio built
// from runtime values must pass through here to keep comparisons exact.
inline Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw ValidationError("rational with zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline Int pow2(unsigned long n) {
  Int r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, n);
  return r;
}

// ⌈v/2⌉ and ⌊v/2⌋ for v ≥ 0.
inline Int ceil_half(const Int& v) { return (v + 1) >> 1; }
inline Int floor_half(const Int& v) { return v >> 1; }

inline Int floor_rat(const Rat& x) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

inline Int ceil_rat(const Rat& x) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

inline bool is_integral(const Rat& x) { return x.get_den() == 1; }

// Distance from x to the nearest integer, in [0, 1/2].
inline Rat distance_to_nearest_int(const Rat& x) {
  Rat f = x - Rat(floor_rat(x));
  Rat g = Rat(1) - f;
  return f < g ? f : g;
}

// Nearest integer; ties round up (call sites exclude ties via margin checks).
inline Int nearest_int(const Rat& x) {
  Rat f = x - Rat(floor_rat(x));
  return f < Rat(1, 2) ? floor_rat(x) : floor_rat(x) + 1;
}

inline Int parse_decimal_int(const std::string& s, const std::string& what) {
  if (s.empty()) throw ValidationError(what + ": empty integer literal");
  std::size_t start = s[0] == '-' ? 1 : 0;
  if (start == s.size()) throw ValidationError(what + ": bad integer literal '" + s + "'");
  for (std::size_t i = start; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9')
      throw ValidationError(what + ": bad integer literal '" + s + "'");
  return Int(s, 10);
}

// Accepts "p", "-p", and "p/q" decimal forms.
inline Rat parse_rational(const std::string& s, const std::string& what) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rat(parse_decimal_int(s, what));
  Int num = parse_decimal_int(s.substr(0, slash), what);
  Int den = parse_decimal_int(s.substr(slash + 1), what);
  if (den == 0) throw ValidationError(what + ": zero denominator in '" + s + "'");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline std::string rational_string(const Rat& x) {
  return x.get_den() == 1 ? x.get_num().get_str() : x.get_str();
}

}  // namespace arrival
