#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace gcn {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "p" or "p/q" (optional leading '-') into a canonical Rational.
inline Rational parse_rational(std::string_view text) {
  auto digits = [](std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
      if (c < '0' || c > '9') return false;
    }
    return true;
  };
  std::string_view body = text;
  if (!body.empty() && body.front() == '-') body.remove_prefix(1);
  const auto slash = body.find('/');
  const bool ok = slash == std::string_view::npos
                      ? digits(body)
                      : digits(body.substr(0, slash)) && digits(body.substr(slash + 1));
  if (!ok) throw std::invalid_argument("malformed rational '" + std::string(text) + "'");

  Rational r;
  if (r.set_str(std::string(text), 10) != 0) {
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  }
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline std::string to_string(const Integer& z) { return z.get_str(); }

/// Binomial coefficient C(n, k); zero outside 0 <= k <= n, so C(0,2) = C(1,2) = 0.
constexpr std::int64_t choose(std::int64_t n, std::int64_t k) {
  if (n < 0 || k < 0 || k > n) return 0;
  std::int64_t r = 1;
  for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

}  // namespace gcn
