#pragma once

#include <gcn/geometry.hpp>
#include <gcn/matrix.hpp>
#include <gcn/poly.hpp>

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace gcn {

/// Row i holds the graded-lex monomials of Pi_degree evaluated at node i.
inline Matrix<Rational> vandermonde(std::span<const Node> nodes, int degree) {
  const std::size_t cols = dim_pi(degree);
  Matrix<Rational> m(nodes.size(), cols);
  for (std::size_t r = 0; r < nodes.size(); ++r) {
    std::vector<Rational> xp(static_cast<std::size_t>(std::max(degree, 0)) + 1, 1);
    std::vector<Rational> yp(xp.size(), 1);
    for (std::size_t i = 1; i < xp.size(); ++i) {
      xp[i] = xp[i - 1] * nodes[r].x;
      yp[i] = yp[i - 1] * nodes[r].y;
    }
    for (std::size_t c = 0; c < cols; ++c) {
      const auto [i, j] = monomial_at(c);
      m(r, c) = xp[i] * yp[j];
    }
  }
  return m;
}

inline Matrix<Rational> vandermonde(const NodeSet& X) { return vandermonde(X.nodes(), X.degree()); }

inline bool is_poised(std::span<const Node> nodes, int degree) {
  if (nodes.size() != dim_pi(degree)) return false;
  if (nodes.empty()) return true;
  return rank_det(vandermonde(nodes, degree)).rank == nodes.size();
}

inline bool is_poised(const NodeSet& X) { return is_poised(X.nodes(), X.degree()); }

inline bool is_independent(std::span<const Node> nodes, int degree) {
  if (nodes.size() > dim_pi(degree)) return false;
  return rank_det(vandermonde(nodes, degree)).rank == nodes.size();
}

inline bool is_independent(const NodeSet& X) { return is_independent(X.nodes(), X.degree()); }

namespace detail {

inline std::vector<Node> without(std::span<const Node> nodes, std::size_t skip) {
  std::vector<Node> out;
  out.reserve(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (i != skip) out.push_back(nodes[i]);
  }
  return out;
}

}  // namespace detail

/// A polynomial of Pi_degree equal to 1 at nodes[index] and 0 at the other nodes, when one
/// exists (iff rank V_X = rank V_{X \ A} + 1). Unique when the nodes are poised.
inline std::optional<Poly> fundamental_poly(std::size_t index, std::span<const Node> nodes, int degree) {
  if (index >= nodes.size()) throw std::out_of_range("fundamental_poly: node index out of range");
  if (degree < 0) return std::nullopt;
  const Matrix<Rational> v = vandermonde(nodes, degree);
  std::vector<Rational> rhs(nodes.size());
  rhs[index] = 1;

  const bool square = nodes.size() == dim_pi(degree);
  if (!square || rank_det(v).rank != nodes.size()) {
    const auto rest = detail::without(nodes, index);
    if (rank_det(v).rank != rank_det(vandermonde(rest, degree)).rank + 1) return std::nullopt;
  }
  auto coeffs = solve_linear(v, rhs);
  if (!coeffs) return std::nullopt;
  return Poly(degree, std::move(*coeffs));
}

inline std::optional<Poly> fundamental_poly(const Node& a, const NodeSet& X) {
  const auto idx = X.index_of(a);
  if (!idx) throw std::invalid_argument("fundamental_poly: node is not in the set");
  return fundamental_poly(*idx, X.nodes(), X.degree());
}

/// All fundamental polynomials of a poised set, from one inversion of the Vandermonde matrix.
inline std::vector<Poly> fundamental_basis(const NodeSet& X) {
  const std::size_t n = X.size();
  if (n != dim_pi(X.degree())) throw std::domain_error("fundamental_basis: node set is not poised");
  Matrix<Rational> identity(n, n);
  for (std::size_t i = 0; i < n; ++i) identity(i, i) = 1;
  auto inverse = solve_square(vandermonde(X), identity);
  if (!inverse) throw std::domain_error("fundamental_basis: node set is not poised");
  std::vector<Poly> basis;
  basis.reserve(n);
  for (std::size_t a = 0; a < n; ++a) {
    std::vector<Rational> coeffs(n);
    for (std::size_t i = 0; i < n; ++i) coeffs[i] = (*inverse)(i, a);
    basis.emplace_back(X.degree(), std::move(coeffs));
  }
  return basis;
}

/// True iff no node has a fundamental polynomial of the given degree. Requires a nonempty set.
/// Node A has one iff e_A lies in the column space of V, i.e. iff every relation w^T V = 0
/// has w_A = 0; so the set is essentially dependent iff the left null space has full support.
inline bool is_essentially_dependent(std::span<const Node> nodes, int degree) {
  if (nodes.empty()) throw std::domain_error("is_essentially_dependent: empty node set");
  std::vector<bool> covered(nodes.size(), false);
  for (const auto& w : nullspace(vandermonde(nodes, degree).transposed())) {
    for (std::size_t i = 0; i < w.size(); ++i) covered[i] = covered[i] || !is_zero(w[i]);
  }
  for (bool c : covered) {
    if (!c) return false;
  }
  return true;
}

inline bool is_essentially_dependent(const NodeSet& X) { return is_essentially_dependent(X.nodes(), X.degree()); }

/// Basis of the polynomials of Pi_degree vanishing at every node.
inline std::vector<Poly> curves_through(std::span<const Node> nodes, int degree) {
  if (degree < 1) throw std::domain_error("curves_through: degree must be >= 1");
  std::vector<Poly> out;
  for (auto& v : nullspace(vandermonde(nodes, degree))) out.emplace_back(degree, std::move(v));
  return out;
}

/// Calls visit on each k-subset of {0..n-1} in lexicographic order until it returns true.
template <typename Visit>
bool for_each_subset(std::size_t n, std::size_t k, Visit&& visit) {
  if (k > n) return false;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    if (visit(idx)) return true;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return false;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

struct NullityScan {
  std::size_t max_nullity = 0;
  std::vector<std::size_t> worst;  // removed indices attaining the maximum
  std::size_t subsets = 0;
};

/// Largest dimension of curves_through(X minus T, degree) over all |T| = removed.
/// With K spanning {w : w^T V = 0}, the curves through X \ T correspond to ker V plus the
/// vectors of col(V) supported on T, so the nullity is dim ker V + |T| - rank K_T.
inline NullityScan max_curve_nullity(const NodeSet& X, std::size_t removed, int degree) {
  if (degree < 0) throw std::domain_error("max_curve_nullity: negative degree");
  NullityScan scan;
  if (removed > X.size()) return scan;
  const Matrix<Rational> v = vandermonde(X.nodes(), degree);
  const std::size_t kernel = v.cols() - rank_det(v).rank;
  const auto relations = nullspace(v.transposed());
  for_each_subset(X.size(), removed, [&](const std::vector<std::size_t>& t) {
    Matrix<Rational> kt(t.size(), relations.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
      for (std::size_t j = 0; j < relations.size(); ++j) kt(i, j) = relations[j][t[i]];
    }
    const std::size_t nullity = kernel + t.size() - rank_det(kt).rank;
    if (scan.subsets == 0 || nullity > scan.max_nullity) {
      scan.max_nullity = nullity;
      scan.worst = t;
    }
    ++scan.subsets;
    return false;
  });
  return scan;
}

struct DependenceWitness {
  enum class Kind { collinear_n_plus_2, conic_2n_plus_2, cubic_3n, none };

  Kind kind = Kind::none;
  std::optional<Line> line;    // collinear_n_plus_2
  std::optional<Poly> curve;   // conic or cubic
  std::vector<std::size_t> nodes;
  bool partial = false;        // cubic_3n only checks a cubic through all nodes
};

inline const char* to_string(DependenceWitness::Kind k) {
  switch (k) {
    case DependenceWitness::Kind::collinear_n_plus_2: return "collinear_n_plus_2";
    case DependenceWitness::Kind::conic_2n_plus_2: return "conic_2n_plus_2";
    case DependenceWitness::Kind::cubic_3n: return "cubic_3n";
    case DependenceWitness::Kind::none: return "none";
  }
  return "none";
}


/// Line through >= n+2 nodes; nullopt if none.
inline std::optional<DependenceWitness> find_collinear_witness(const NodeSet& X) {
  const auto lines = classify_lines(X);
  const LineEntry* best = nullptr;
  for (const auto& e : lines.entries()) {
    if (e.k() >= static_cast<std::size_t>(X.degree()) + 2 && (best == nullptr || e.k() > best->k())) best = &e;
  }
  if (best == nullptr) return std::nullopt;
  DependenceWitness w;
  w.kind = DependenceWitness::Kind::collinear_n_plus_2;
  w.line = best->line;
  w.nodes = best->nodes;
  return w;
}

/// Conic through >= 2n+2 nodes, seeded from every 5-subset with a unique conic.
inline std::optional<DependenceWitness> find_conic_witness(const NodeSet& X) {
  const std::size_t need = 2 * static_cast<std::size_t>(X.degree()) + 2;
  if (X.size() < need) return std::nullopt;
  std::optional<DependenceWitness> found;
  for_each_subset(X.size(), 5, [&](const std::vector<std::size_t>& idx) {
    std::vector<Node> five;
    for (auto i : idx) five.push_back(X[i]);
    auto conics = curves_through(five, 2);
    if (conics.size() != 1) return false;
    std::vector<std::size_t> on;
    for (std::size_t i = 0; i < X.size(); ++i) {
      if (is_zero(poly_eval(conics[0], X[i]))) on.push_back(i);
    }
    if (on.size() < need) return false;
    DependenceWitness w;
    w.kind = DependenceWitness::Kind::conic_2n_plus_2;
    w.curve = conics[0];
    w.nodes = std::move(on);
    found = std::move(w);
    return true;
  });
  return found;
}

/// Searches, in order: n+2 collinear nodes, 2n+2 nodes on a conic, and (when |X| = 3n)
/// a cubic through all nodes. Only the last is partial.
inline DependenceWitness dependence_witness(const NodeSet& X) {
  if (is_independent(X)) throw std::domain_error("dependence_witness: node set is independent");
  if (auto w = find_collinear_witness(X)) return *w;
  if (auto w = find_conic_witness(X)) return *w;
  if (X.size() == 3 * static_cast<std::size_t>(X.degree()) && X.degree() >= 1) {
    auto cubics = curves_through(X.nodes(), 3);
    if (!cubics.empty()) {
      DependenceWitness w;
      w.kind = DependenceWitness::Kind::cubic_3n;
      w.curve = cubics.front();
      for (std::size_t i = 0; i < X.size(); ++i) w.nodes.push_back(i);
      w.partial = true;
      return w;
    }
  }
  return DependenceWitness{};
}

}  // namespace gcn
