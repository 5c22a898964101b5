#pragma once

#include <gcn/rational.hpp>

#include <cstddef>
#include <utility>
#include <vector>

namespace gcn::univariate {

// Coefficients low to high, no trailing zeros; the zero polynomial is empty.
using UPoly = std::vector<Rational>;

inline UPoly trim(UPoly p) {
  while (!p.empty() && is_zero(p.back())) p.pop_back();
  return p;
}

inline int degree(const UPoly& p) { return static_cast<int>(p.size()) - 1; }

inline UPoly remainder(UPoly a, const UPoly& b) {
  a = trim(std::move(a));
  const int db = degree(b);
  while (degree(a) >= db && !a.empty()) {
    const Rational f = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    a = trim(std::move(a));
  }
  return a;
}

/// Monic gcd; gcd(0, 0) = 0.
inline UPoly gcd(UPoly a, UPoly b) {
  a = trim(std::move(a));
  b = trim(std::move(b));
  while (!b.empty()) {
    UPoly r = remainder(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const Rational lead = a.back();
    for (auto& c : a) c /= lead;
  }
  return a;
}

inline UPoly derivative(const UPoly& p) {
  UPoly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
  return trim(std::move(d));
}

/// Number of distinct real roots, by a Sturm sequence evaluated at -inf and +inf.
inline int count_real_roots(const UPoly& p_in) {
  UPoly p = trim(p_in);
  if (degree(p) < 1) return 0;
  std::vector<UPoly> seq{p, derivative(p)};
  while (!seq.back().empty()) {
    UPoly r = remainder(seq[seq.size() - 2], seq.back());
    for (auto& c : r) c = -c;
    if (r.empty()) break;
    seq.push_back(std::move(r));
  }
  auto changes = [&](bool at_plus_inf) {
    int count = 0;
    int last = 0;
    for (const auto& q : seq) {
      if (q.empty()) continue;
      int s = sgn(q.back());
      if (!at_plus_inf && degree(q) % 2 == 1) s = -s;
      if (last != 0 && s != last) ++count;
      last = s;
    }
    return count;
  };
  return changes(false) - changes(true);
}

inline bool has_real_root(const UPoly& p) { return count_real_roots(p) > 0; }

}  // namespace gcn::univariate
