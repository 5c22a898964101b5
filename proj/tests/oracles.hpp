#pragma once

// Brute-force reference computations used only by the tests. Deliberately naive and
// independent of the library algorithms (no Bareiss, no division, no shared helpers).

#include <gcn/geometry.hpp>
#include <gcn/poly.hpp>

#include <cstddef>
#include <map>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

using gcn::Node;
using gcn::Rational;
using Rows = std::vector<std::vector<Rational>>;

// Plain Gaussian elimination over Q.
inline std::size_t rank(Rows m) {
  std::size_t r = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = r + 1; i < m.size(); ++i) {
      if (m[i][c] == 0) continue;
      const Rational f = m[i][c] / m[r][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

// Cofactor expansion; only for small matrices.
inline Rational det(const Rows& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  Rational total = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c] == 0) continue;
    Rows minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Rational> row;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != c) row.push_back(m[i][j]);
      }
      minor.push_back(row);
    }
    const Rational term = m[0][c] * det(minor);
    total += (c % 2 == 0) ? term : Rational(-term);
  }
  return total;
}

inline Rational frac(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Rational power(const Rational& b, int e) {
  Rational r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

// Monomials x^(d-j) y^j, degree by degree.
inline Rows vandermonde(const std::vector<Node>& nodes, int n) {
  Rows m;
  for (const auto& p : nodes) {
    std::vector<Rational> row;
    for (int d = 0; d <= n; ++d) {
      for (int j = 0; j <= d; ++j) row.push_back(power(p.x, d - j) * power(p.y, j));
    }
    m.push_back(row);
  }
  return m;
}

inline std::size_t dim(int n) { return n < 0 ? 0 : static_cast<std::size_t>((n + 1) * (n + 2) / 2); }

inline bool is_poised(const std::vector<Node>& nodes, int n) {
  return nodes.size() == dim(n) && (nodes.empty() || rank(vandermonde(nodes, n)) == nodes.size());
}

inline bool is_independent(const std::vector<Node>& nodes, int n) {
  if (nodes.empty()) return true;
  return rank(vandermonde(nodes, n)) == nodes.size();
}

inline std::vector<Node> without(const std::vector<Node>& nodes, std::size_t skip) {
  std::vector<Node> out;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (i != skip) out.push_back(nodes[i]);
  }
  return out;
}

inline bool has_fundamental(const std::vector<Node>& nodes, int n, std::size_t i) {
  if (n < 0) return false;
  const std::size_t full = rank(vandermonde(nodes, n));
  const auto rest = without(nodes, i);
  const std::size_t part = rest.empty() ? 0 : rank(vandermonde(rest, n));
  return full == part + 1;
}

inline bool is_essentially_dependent(const std::vector<Node>& nodes, int n) {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (has_fundamental(nodes, n, i)) return false;
  }
  return true;
}

inline std::size_t curve_count(const std::vector<Node>& nodes, int n) {
  return dim(n) - (nodes.empty() ? 0 : rank(vandermonde(nodes, n)));
}

inline bool collinear(const Node& a, const Node& b, const Node& c) {
  return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x) == 0;
}

// Every maximal set of >= 2 collinear nodes, as sorted index sets.
inline std::set<std::vector<std::size_t>> collinear_classes(const std::vector<Node>& nodes) {
  std::set<std::vector<std::size_t>> out;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      std::vector<std::size_t> cls;
      for (std::size_t k = 0; k < nodes.size(); ++k) {
        if (k == i || k == j || collinear(nodes[i], nodes[j], nodes[k])) cls.push_back(k);
      }
      out.insert(cls);
    }
  }
  return out;
}

// n+1 distinct points of the line a x + b y + c = 0.
inline std::vector<Node> points_on(const gcn::Line& l, int count) {
  std::vector<Node> out;
  const Rational a(l.a()), b(l.b()), c(l.c());
  for (int t = 0; t < count; ++t) {
    const Rational s = frac(t * 3 + 1, 2);
    if (b != 0) {
      out.push_back(Node{s, -(a * s + c) / b});
    } else {
      out.push_back(Node{-c / a, s});
    }
  }
  return out;
}

// A polynomial of degree <= n vanishing at n+1 points of a line is divisible by it.
inline bool divisible_by_line(const gcn::Poly& p, const gcn::Line& l, int n) {
  for (const auto& q : points_on(l, n + 1)) {
    if (p(q.x, q.y) != 0) return false;
  }
  return true;
}

inline Rational eval_line(const gcn::Line& l, const Node& p) {
  return Rational(l.a()) * p.x + Rational(l.b()) * p.y + Rational(l.c());
}

// p == c * prod(lines) with c fixed by p(anchor), compared on a shifted degree-n lattice
// (a poised set, so agreement there is equality in Pi_n).
inline bool equals_product(const gcn::Poly& p, const std::vector<gcn::Line>& lines, const Node& anchor, int n) {
  if (static_cast<int>(lines.size()) != n) return false;
  Rational prod_anchor = 1;
  for (const auto& l : lines) prod_anchor *= eval_line(l, anchor);
  if (prod_anchor == 0) return false;
  const Rational c = p(anchor.x, anchor.y) / prod_anchor;
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; i + j <= n; ++j) {
      const Node q{frac(2 * i + 1, 7), frac(3 * j - 1, 5)};
      Rational prod = c;
      for (const auto& l : lines) prod *= eval_line(l, q);
      if (p(q.x, q.y) != prod) return false;
    }
  }
  return true;
}

// Factor lines of the fundamental polynomial of (i, j) in the principal lattice:
// x = k (k < i), y = k (k < j), x + y = k (i + j < k <= n).
inline std::vector<gcn::Line> principal_factors(int n, int i, int j) {
  using gcn::Integer;
  std::vector<gcn::Line> out;
  for (int k = 0; k < i; ++k) out.emplace_back(Integer(1), Integer(0), Integer(-k));
  for (int k = 0; k < j; ++k) out.emplace_back(Integer(0), Integer(1), Integer(-k));
  for (int k = i + j + 1; k <= n; ++k) out.emplace_back(Integer(1), Integer(1), Integer(-k));
  return out;
}

inline long long binom(long long n, long long k) {
  if (k < 0 || n < k) return 0;
  long long r = 1;
  for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace oracle
