#pragma once

#include <gcn/geometry.hpp>
#include <gcn/poisedness.hpp>
#include <gcn/poly.hpp>
#include <gcn/univariate.hpp>

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <variant>
#include <vector>

namespace gcn {

class NotPoisedError : public std::domain_error {
 public:
  NotPoisedError() : std::domain_error("node set is not poised") {}
};

/// A poised node set together with its fundamental polynomials.
class PoisedSet {
 public:
  explicit PoisedSet(NodeSet X) : nodes_(std::move(X)) {
    if (!is_poised(nodes_)) throw NotPoisedError();
    basis_ = fundamental_basis(nodes_);
  }

  const NodeSet& nodes() const { return nodes_; }
  int degree() const { return nodes_.degree(); }
  std::size_t size() const { return nodes_.size(); }
  const Node& operator[](std::size_t i) const { return nodes_[i]; }
  const Poly& fundamental(std::size_t i) const { return basis_.at(i); }
  const std::vector<Poly>& fundamentals() const { return basis_; }

 private:
  NodeSet nodes_;
  std::vector<Poly> basis_;
};

/// Node `index` uses q iff q divides its fundamental polynomial (linear-solve divisibility).
inline bool uses_curve(const PoisedSet& X, std::size_t index, const Poly& q) {
  const int k = q.degree();
  if (k < 1 || k > X.degree()) throw std::domain_error("uses_curve: need 1 <= deg q <= n");
  if (is_zero(poly_eval(q, X[index]))) return false;
  return divide_poly(X.fundamental(index), q, X.degree() - k).has_value();
}

/// Line specialization; exact long division instead of a linear solve.
inline bool uses_line(const PoisedSet& X, std::size_t index, const Line& l) {
  if (incident(l, X[index])) return false;
  return divide_by_linear(X.fundamental(index), l).has_value();
}

inline bool uses_curve(const Node& a, const NodeSet& X, const Poly& q) {
  const auto idx = X.index_of(a);
  if (!idx) throw std::invalid_argument("uses_curve: node is not in the set");
  return uses_curve(PoisedSet(X), *idx, q);
}

/// Partition of X relative to a curve: users, N_q, and nodes on the curve.
struct UsageSet {
  std::variant<Line, Poly> curve;
  std::vector<std::size_t> users;
  std::vector<std::size_t> non_users_off_curve;
  std::vector<std::size_t> on_curve;
};

inline UsageSet x_line(const PoisedSet& X, const Line& l) {
  UsageSet u{l, {}, {}, {}};
  for (std::size_t i = 0; i < X.size(); ++i) {
    if (incident(l, X[i])) {
      u.on_curve.push_back(i);
    } else if (uses_line(X, i, l)) {
      u.users.push_back(i);
    } else {
      u.non_users_off_curve.push_back(i);
    }
  }
  return u;
}

inline UsageSet x_line(const NodeSet& X, const Line& l) { return x_line(PoisedSet(X), l); }

inline UsageSet n_curve(const PoisedSet& X, const Poly& q) {
  UsageSet u{q, {}, {}, {}};
  for (std::size_t i = 0; i < X.size(); ++i) {
    if (is_zero(poly_eval(q, X[i]))) {
      u.on_curve.push_back(i);
    } else if (uses_curve(X, i, q)) {
      u.users.push_back(i);
    } else {
      u.non_users_off_curve.push_back(i);
    }
  }
  return u;
}

inline UsageSet n_curve(const NodeSet& X, const Poly& q) { return n_curve(PoisedSet(X), q); }

enum class SquarefreeStatus { verified, trusted, violated };

inline const char* to_string(SquarefreeStatus s) {
  switch (s) {
    case SquarefreeStatus::verified: return "verified";
    case SquarefreeStatus::trusted: return "trusted";
    case SquarefreeStatus::violated: return "violated";
  }
  return "trusted";
}

struct MaximalCurveReport {
  int curve_degree = 0;
  std::size_t nodes_on_curve = 0;
  std::size_t required = 0;  // d(n, k)
  bool is_maximal = false;
  bool n_q_empty = false;
  bool complement_poised = false;
  // maximal <=> N_q empty <=> X \ q is (n-k)-poised
  bool consistent = false;
  SquarefreeStatus squarefree = SquarefreeStatus::trusted;
  std::vector<std::size_t> n_q;
};

inline MaximalCurveReport is_maximal_curve(const PoisedSet& X, const Poly& q,
                                           SquarefreeStatus squarefree = SquarefreeStatus::trusted) {
  MaximalCurveReport r;
  r.curve_degree = q.degree();
  if (r.curve_degree < 1 || r.curve_degree > X.degree()) {
    throw std::domain_error("is_maximal_curve: need 1 <= deg q <= n");
  }
  r.squarefree = squarefree;
  r.required = static_cast<std::size_t>(d_nk(X.degree(), r.curve_degree));
  const UsageSet u = n_curve(X, q);
  r.nodes_on_curve = u.on_curve.size();
  r.is_maximal = r.nodes_on_curve == r.required;
  r.n_q = u.non_users_off_curve;
  r.n_q_empty = r.n_q.empty();
  std::vector<Node> rest;
  for (std::size_t i = 0; i < X.size(); ++i) {
    if (!is_zero(poly_eval(q, X[i]))) rest.push_back(X[i]);
  }
  r.complement_poised = is_poised(rest, X.degree() - r.curve_degree);
  r.consistent = r.is_maximal == r.n_q_empty && r.is_maximal == r.complement_poised;
  return r;
}

/// Product-of-lines form; squarefreeness is verified as pairwise distinct factors.
inline MaximalCurveReport is_maximal_curve(const PoisedSet& X, std::span<const Line> factors) {
  if (factors.empty()) throw std::domain_error("is_maximal_curve: empty line product");
  Poly q = Poly::constant(1);
  bool distinct = true;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    q = q * factors[i].as_poly();
    for (std::size_t j = 0; j < i; ++j) distinct = distinct && factors[i] != factors[j];
  }
  return is_maximal_curve(X, q, distinct ? SquarefreeStatus::verified : SquarefreeStatus::violated);
}

/// True iff p has a real linear factor through node b: every homogeneous part of
/// p(b + (u, v)) must share a real root direction.
inline bool has_linear_factor_through(const Poly& p, const Node& b) {
  if (!is_zero(poly_eval(p, b))) return false;
  const int d = p.degree();
  if (d < 1) return false;
  const Poly s = p.translated(b.x, b.y);

  bool horizontal = true;  // direction (1, 0)
  for (int j = 1; j <= d; ++j) horizontal = horizontal && is_zero(s.coeff(j, 0));
  if (horizontal) return true;

  // direction (t, 1): h_j(t, 1) = sum_i s[i, j - i] t^i
  univariate::UPoly g;
  for (int j = 1; j <= d; ++j) {
    univariate::UPoly h(static_cast<std::size_t>(j) + 1);
    for (int i = 0; i <= j; ++i) h[i] = s.coeff(i, j - i);
    g = univariate::gcd(std::move(g), std::move(h));
  }
  return univariate::degree(g) >= 1 && univariate::has_real_root(g);
}

enum class GcStatus { yes, no, unresolved };

inline const char* to_string(GcStatus s) {
  switch (s) {
    case GcStatus::yes: return "yes";
    case GcStatus::no: return "no";
    case GcStatus::unresolved: return "unresolved";
  }
  return "unresolved";
}

struct NodeFactorization {
  std::size_t node = 0;
  std::vector<Line> lines;  // with multiplicity, canonical order
  Poly residual;            // nonzero constant when resolved
  bool resolved = false;
  // residual certified to have no real linear factor at all
  bool certified_line_free = false;
};

struct GcReport {
  GcStatus status = GcStatus::unresolved;
  std::vector<NodeFactorization> nodes;
};

/// Peels node-pair lines off every fundamental polynomial. yes: every residual is constant;
/// no: some residual is certified to have no real linear factor (every linear factor of a
/// fundamental polynomial passes through a node); unresolved otherwise.
inline GcReport gc_factorize(const PoisedSet& X, const LineClassification& lines) {
  GcReport report;
  bool all_resolved = true;
  bool certified_no = false;
  for (std::size_t a = 0; a < X.size(); ++a) {
    NodeFactorization f;
    f.node = a;
    Poly running = X.fundamental(a);
    for (const auto& e : lines.entries()) {
      if (running.degree() < 1) break;
      if (incident(e.line, X[a])) continue;
      while (running.degree() >= 1) {
        auto q = divide_by_linear(running, e.line);
        if (!q) break;
        f.lines.push_back(e.line);
        running = q->trimmed();
      }
    }
    f.residual = running.trimmed();
    f.resolved = f.residual.degree() == 0;
    if (!f.resolved) {
      all_resolved = false;
      bool any = false;
      for (std::size_t b = 0; b < X.size() && !any; ++b) any = has_linear_factor_through(f.residual, X[b]);
      f.certified_line_free = !any;
      certified_no = certified_no || f.certified_line_free;
    }
    report.nodes.push_back(std::move(f));
  }
  report.status = all_resolved ? GcStatus::yes : (certified_no ? GcStatus::no : GcStatus::unresolved);
  return report;
}

inline GcReport gc_factorize(const PoisedSet& X) { return gc_factorize(X, classify_lines(X.nodes())); }

inline GcReport gc_factorize(const NodeSet& X) { return gc_factorize(PoisedSet(X)); }

}  // namespace gcn
