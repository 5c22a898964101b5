#pragma once

#include <gcn/poly.hpp>
#include <gcn/rational.hpp>

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gcn {

struct Node {
  Rational x;
  Rational y;

  friend bool operator==(const Node& a, const Node& b) { return a.x == b.x && a.y == b.y; }
  friend bool operator!=(const Node& a, const Node& b) { return !(a == b); }
  friend bool operator<(const Node& a, const Node& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); }
};

inline Rational poly_eval(const Poly& p, const Node& pt) { return p(pt.x, pt.y); }

/// Line a x + b y + c = 0 over the integers, in canonical form: (a, b) != (0, 0),
/// gcd(|a|, |b|, |c|) = 1, first nonzero coefficient positive.
class Line {
 public:
  Line(Integer a, Integer b, Integer c) : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) { canonicalize(); }

  /// Clears denominators of rational coefficients, then canonicalizes.
  static Line from_rational(const Rational& a, const Rational& b, const Rational& c) {
    Integer l = 1;
    for (const Rational* r : {&a, &b, &c}) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), r->get_den_mpz_t());
    auto scaled = [&](const Rational& r) { return Integer(r.get_num() * (l / r.get_den())); };
    return Line(scaled(a), scaled(b), scaled(c));
  }

  const Integer& a() const { return a_; }
  const Integer& b() const { return b_; }
  const Integer& c() const { return c_; }

  Rational eval(const Node& p) const { return Rational(a_) * p.x + Rational(b_) * p.y + Rational(c_); }

  Poly as_poly() const { return Poly::linear(Rational(a_), Rational(b_), Rational(c_)); }

  std::string to_string() const {
    return "(" + a_.get_str() + "," + b_.get_str() + "," + c_.get_str() + ")";
  }

  friend bool operator==(const Line& l, const Line& m) { return l.a_ == m.a_ && l.b_ == m.b_ && l.c_ == m.c_; }
  friend bool operator!=(const Line& l, const Line& m) { return !(l == m); }
  friend bool operator<(const Line& l, const Line& m) {
    if (l.a_ != m.a_) return l.a_ < m.a_;
    if (l.b_ != m.b_) return l.b_ < m.b_;
    return l.c_ < m.c_;
  }

 private:
  void canonicalize() {
    if (sgn(a_) == 0 && sgn(b_) == 0) throw std::domain_error("Line: degenerate (a, b) = (0, 0)");
    Integer g;
    mpz_gcd(g.get_mpz_t(), a_.get_mpz_t(), b_.get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c_.get_mpz_t());
    if (g != 1) {
      mpz_divexact(a_.get_mpz_t(), a_.get_mpz_t(), g.get_mpz_t());
      mpz_divexact(b_.get_mpz_t(), b_.get_mpz_t(), g.get_mpz_t());
      mpz_divexact(c_.get_mpz_t(), c_.get_mpz_t(), g.get_mpz_t());
    }
    const int lead = sgn(a_) != 0 ? sgn(a_) : sgn(b_);
    if (lead < 0) {
      a_ = -a_;
      b_ = -b_;
      c_ = -c_;
    }
  }

  Integer a_;
  Integer b_;
  Integer c_;
};

inline std::optional<Poly> divide_by_linear(const Poly& p, const Line& l) { return divide_by_linear(p, l.as_poly()); }

inline Line line_through(const Node& p, const Node& q) {
  if (p == q) throw std::domain_error("line_through: identical points");
  return Line::from_rational(p.y - q.y, q.x - p.x, p.x * q.y - q.x * p.y);
}

inline bool incident(const Line& l, const Node& p) { return is_zero(l.eval(p)); }

inline bool parallel(const Line& l, const Line& m) { return l.a() * m.b() - m.a() * l.b() == 0; }

/// Intersection point, or nullopt for parallel (or equal) lines.
inline std::optional<Node> intersect(const Line& l, const Line& m) {
  const Integer det = l.a() * m.b() - m.a() * l.b();
  if (sgn(det) == 0) return std::nullopt;
  Rational x(l.b() * m.c() - m.b() * l.c(), det);
  Rational y(l.c() * m.a() - m.c() * l.a(), det);
  x.canonicalize();
  y.canonicalize();
  return Node{x, y};
}

/// Pairwise distinct planar nodes with an interpolation degree attached.
class NodeSet {
 public:
  NodeSet() = default;

  NodeSet(int degree, std::vector<Node> nodes) : degree_(degree), nodes_(std::move(nodes)) {
    for (auto& p : nodes_) {
      p.x.canonicalize();
      p.y.canonicalize();
    }
    std::vector<Node> sorted = nodes_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw std::invalid_argument("NodeSet: duplicate nodes");
    }
  }

  int degree() const { return degree_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }
  bool empty() const { return nodes_.empty(); }
  const Node& operator[](std::size_t i) const { return nodes_[i]; }

  std::optional<std::size_t> index_of(const Node& p) const {
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      if (nodes_[i] == p) return i;
    }
    return std::nullopt;
  }

  /// Nodes at the given indices, re-attached to another degree.
  NodeSet subset(const std::vector<std::size_t>& indices, int degree) const {
    std::vector<Node> out;
    out.reserve(indices.size());
    for (auto i : indices) out.push_back(nodes_.at(i));
    return NodeSet(degree, std::move(out));
  }

 private:
  int degree_ = 0;
  std::vector<Node> nodes_;
};

/// Indices of nodes of X incident to l.
inline std::vector<std::size_t> nodes_on(const NodeSet& X, const Line& l) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < X.size(); ++i) {
    if (incident(l, X[i])) out.push_back(i);
  }
  return out;
}

struct LineEntry {
  Line line;
  std::vector<std::size_t> nodes;  // ascending
  std::size_t k() const { return nodes.size(); }
};

/// Every line through at least two nodes, with its full incidence list, in canonical line order.
class LineClassification {
 public:
  LineClassification() = default;
  explicit LineClassification(std::vector<LineEntry> entries) : entries_(std::move(entries)) {}

  const std::vector<LineEntry>& entries() const { return entries_; }

  std::vector<LineEntry> with_k(std::size_t k) const {
    std::vector<LineEntry> out;
    for (const auto& e : entries_) {
      if (e.k() == k) out.push_back(e);
    }
    return out;
  }

  std::size_t max_k() const {
    std::size_t m = 0;
    for (const auto& e : entries_) m = std::max(m, e.k());
    return m;
  }

  const LineEntry* find(const Line& l) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), l,
                               [](const LineEntry& e, const Line& key) { return e.line < key; });
    if (it == entries_.end() || it->line != l) return nullptr;
    return &*it;
  }

 private:
  std::vector<LineEntry> entries_;
};

inline LineClassification classify_lines(const NodeSet& X) {
  std::map<Line, std::vector<std::size_t>> seen;
  for (std::size_t i = 0; i < X.size(); ++i) {
    for (std::size_t j = i + 1; j < X.size(); ++j) {
      Line l = line_through(X[i], X[j]);
      if (seen.count(l) != 0) continue;
      auto incident_nodes = nodes_on(X, l);
      seen.emplace(std::move(l), std::move(incident_nodes));
    }
  }
  std::vector<LineEntry> entries;
  entries.reserve(seen.size());
  for (auto& [line, nodes] : seen) entries.push_back(LineEntry{line, std::move(nodes)});
  return LineClassification(std::move(entries));
}

inline std::vector<Line> maximal_lines(const LineClassification& lines, int degree) {
  std::vector<Line> out;
  for (const auto& e : lines.entries()) {
    if (e.k() == static_cast<std::size_t>(degree) + 1) out.push_back(e.line);
  }
  return out;
}

inline std::vector<Line> maximal_lines(const NodeSet& X) { return maximal_lines(classify_lines(X), X.degree()); }

}  // namespace gcn
