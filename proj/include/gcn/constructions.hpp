#pragma once

#include <gcn/geometry.hpp>
#include <gcn/poisedness.hpp>
#include <gcn/usage.hpp>

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gcn {

/// Invalid construction input (parallel or concurrent generating lines, ...).
class ConstructionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A randomized generator ran out of attempts.
class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kRetryBudget = 1000;

/// Seeded source of bounded integers and rationals. Sampling is written out by hand so
/// that a seed yields the same sets on every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(engine_() % span);
  }

  /// p / q with |p| <= bound and 1 <= q <= bound.
  Rational rational(std::int64_t bound) {
    Rational r(static_cast<long>(uniform(-bound, bound)), static_cast<unsigned long>(uniform(1, bound)));
    r.canonicalize();
    return r;
  }

  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

/// {(i, j) in Z_+^2 : i + j <= n}, listed row by row (j outer, i inner).
inline NodeSet principal_lattice(int n) {
  if (n < 1) throw std::domain_error("principal_lattice: n must be >= 1");
  std::vector<Node> nodes;
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i + j <= n; ++i) nodes.push_back(Node{i, j});
  }
  return NodeSet(n, std::move(nodes));
}

/// Throws ConstructionError naming the first parallel pair or concurrent triple.
inline void require_general_position(std::span<const Line> lines) {
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      if (parallel(lines[i], lines[j])) {
        throw ConstructionError("lines " + std::to_string(i) + " and " + std::to_string(j) + " are parallel");
      }
    }
  }
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      const Node p = *intersect(lines[i], lines[j]);
      for (std::size_t k = j + 1; k < lines.size(); ++k) {
        if (incident(lines[k], p)) {
          throw ConstructionError("lines " + std::to_string(i) + ", " + std::to_string(j) + " and " +
                                  std::to_string(k) + " are concurrent");
        }
      }
    }
  }
}

inline bool in_general_position(std::span<const Line> lines) {
  try {
    require_general_position(lines);
    return true;
  } catch (const ConstructionError&) {
    return false;
  }
}

/// Pairwise intersections of n+2 lines in general position (pairs in lexicographic order).
inline NodeSet chung_yao(std::span<const Line> lines) {
  if (lines.size() < 3) throw ConstructionError("chung_yao: need at least 3 lines");
  require_general_position(lines);
  std::vector<Node> nodes;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t j = i + 1; j < lines.size(); ++j) nodes.push_back(*intersect(lines[i], lines[j]));
  }
  return NodeSet(static_cast<int>(lines.size()) - 2, std::move(nodes));
}

inline Line random_line(Rng& rng, std::int64_t bound) {
  while (true) {
    const auto a = rng.uniform(-bound, bound);
    const auto b = rng.uniform(-bound, bound);
    if (a == 0 && b == 0) continue;
    return Line(Integer(static_cast<long>(a)), Integer(static_cast<long>(b)),
                Integer(static_cast<long>(rng.uniform(-bound, bound))));
  }
}

inline std::vector<Line> random_general_lines(std::size_t count, Rng& rng, std::int64_t bound) {
  for (int attempt = 0; attempt < kRetryBudget; ++attempt) {
    std::vector<Line> lines;
    int local = 0;
    while (lines.size() < count && local < kRetryBudget) {
      ++local;
      lines.push_back(random_line(rng, bound));
      if (!in_general_position(lines)) lines.pop_back();
    }
    if (lines.size() == count) return lines;
  }
  throw GenerationError("random_general_lines: retry budget exhausted");
}

inline Node random_point_on(const Line& l, Rng& rng, std::int64_t bound) {
  const Rational t = rng.rational(bound);
  if (sgn(l.b()) != 0) return Node{t, -(Rational(l.a()) * t + Rational(l.c())) / Rational(l.b())};
  return Node{-Rational(l.c()) / Rational(l.a()), t};
}

inline Node random_point(Rng& rng, std::int64_t bound) {
  Rational x = rng.rational(bound);
  return Node{x, rng.rational(bound)};
}

/// Line l_j receives n+1-j fresh nodes off l_0..l_{j-1}; the result is n-poised.
inline NodeSet berzolari_radon(std::span<const Line> lines, std::uint64_t seed, std::int64_t bound) {
  if (lines.size() < 2) throw ConstructionError("berzolari_radon: need at least 2 lines");
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      if (lines[i] == lines[j]) {
        throw ConstructionError("lines " + std::to_string(i) + " and " + std::to_string(j) + " coincide");
      }
    }
  }
  const int n = static_cast<int>(lines.size()) - 1;
  Rng rng(seed);
  std::vector<Node> nodes;
  for (std::size_t j = 0; j < lines.size(); ++j) {
    const std::size_t want = static_cast<std::size_t>(n) + 1 - j;
    std::size_t placed = 0;
    int attempts = 0;
    while (placed < want) {
      if (++attempts > kRetryBudget) throw GenerationError("berzolari_radon: retry budget exhausted");
      const Node p = random_point_on(lines[j], rng, bound);
      bool ok = true;
      for (std::size_t i = 0; i < j && ok; ++i) ok = !incident(lines[i], p);
      for (const auto& q : nodes) ok = ok && q != p;
      if (!ok) continue;
      nodes.push_back(p);
      ++placed;
    }
  }
  NodeSet X(n, std::move(nodes));
  if (!is_poised(X)) throw GenerationError("berzolari_radon: result is not poised");
  return X;
}

/// Checks the Berzolari-Radon counts: l_j minus the earlier lines holds exactly n+1-j nodes,
/// and every node lies on some l_j.
inline bool is_berzolari_radon(const NodeSet& X, std::span<const Line> lines) {
  if (static_cast<int>(lines.size()) != X.degree() + 1) return false;
  std::vector<bool> covered(X.size(), false);
  for (std::size_t j = 0; j < lines.size(); ++j) {
    std::size_t count = 0;
    for (std::size_t a = 0; a < X.size(); ++a) {
      if (covered[a] || !incident(lines[j], X[a])) continue;
      covered[a] = true;
      ++count;
    }
    if (count != static_cast<std::size_t>(X.degree()) + 1 - j) return false;
  }
  for (bool c : covered) {
    if (!c) return false;
  }
  return true;
}

/// Rejection-samples dim_pi(n) distinct bounded-height rational nodes until poised.
inline NodeSet random_poised(int n, std::uint64_t seed, std::int64_t bound) {
  if (n < 1) throw std::domain_error("random_poised: n must be >= 1");
  Rng rng(seed);
  for (int attempt = 0; attempt < kRetryBudget; ++attempt) {
    std::vector<Node> nodes;
    int draws = 0;
    while (nodes.size() < dim_pi(n) && draws < kRetryBudget) {
      ++draws;
      const Node p = random_point(rng, bound);
      bool fresh = true;
      for (const auto& q : nodes) fresh = fresh && q != p;
      if (fresh) nodes.push_back(p);
    }
    if (nodes.size() != dim_pi(n)) continue;
    NodeSet X(n, std::move(nodes));
    if (is_poised(X)) return X;
  }
  throw GenerationError("random_poised: retry budget exhausted");
}

/// n+1 lines in general position: their C(n+1, 2) intersections plus one free node per line.
inline NodeSet gc_free_nodes(std::span<const Line> lines, std::span<const Node> free) {
  if (lines.size() < 2) throw ConstructionError("gc_free_nodes: need at least 2 lines");
  if (free.size() != lines.size()) throw ConstructionError("gc_free_nodes: need one free node per line");
  require_general_position(lines);
  std::vector<Node> nodes;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t j = i + 1; j < lines.size(); ++j) nodes.push_back(*intersect(lines[i], lines[j]));
  }
  for (std::size_t i = 0; i < free.size(); ++i) {
    for (std::size_t j = 0; j < lines.size(); ++j) {
      if (incident(lines[j], free[i]) != (i == j)) {
        throw ConstructionError("free node " + std::to_string(i) + " must lie on line " + std::to_string(i) +
                                " only");
      }
    }
    nodes.push_back(free[i]);
  }
  return NodeSet(static_cast<int>(lines.size()) - 1, std::move(nodes));
}

/// Placement of the free nodes: generic; n of them on one line (an n-node line missing one
/// maximal line); the free nodes of lines 2..n on one line through lines[0] ^ lines[1]; or,
/// for n = 3, both coincidences at once.
enum class FreeNodeLayout { generic, collinear_free, pencil, both };

inline const char* to_string(FreeNodeLayout l) {
  switch (l) {
    case FreeNodeLayout::generic: return "generic";
    case FreeNodeLayout::collinear_free: return "collinear_free";
    case FreeNodeLayout::pencil: return "pencil";
    case FreeNodeLayout::both: return "both";
  }
  return "generic";
}

namespace detail {

inline std::optional<Node> meet(const Line& l, const Line& m) { return intersect(l, m); }

inline std::optional<std::vector<Node>> place_free_nodes(const std::vector<Line>& lines, FreeNodeLayout layout,
                                                         Rng& rng, std::int64_t bound) {
  const std::size_t count = lines.size();
  std::vector<Node> free(count);
  for (std::size_t i = 0; i < count; ++i) free[i] = random_point_on(lines[i], rng, bound);
  switch (layout) {
    case FreeNodeLayout::generic:
      break;
    case FreeNodeLayout::collinear_free: {
      const Line l = random_line(rng, bound);
      for (std::size_t i = 0; i + 1 < count; ++i) {
        auto p = meet(l, lines[i]);
        if (!p) return std::nullopt;
        free[i] = *p;
      }
      break;
    }
    case FreeNodeLayout::pencil: {
      const Node apex = *meet(lines[0], lines[1]);
      const Node other = random_point(rng, bound);
      if (other == apex) return std::nullopt;
      const Line l = line_through(apex, other);
      for (std::size_t i = 2; i < count; ++i) {
        auto p = meet(l, lines[i]);
        if (!p) return std::nullopt;
        free[i] = *p;
      }
      break;
    }
    case FreeNodeLayout::both: {
      if (count != 4) throw std::domain_error("FreeNodeLayout::both needs n = 3");
      if (free[0] == free[1]) return std::nullopt;
      auto f2 = meet(line_through(free[0], free[1]), lines[2]);
      if (!f2) return std::nullopt;
      free[2] = *f2;
      const Node apex = *meet(lines[0], lines[1]);
      if (apex == free[2]) return std::nullopt;
      auto f3 = meet(line_through(apex, free[2]), lines[3]);
      if (!f3) return std::nullopt;
      free[3] = *f3;
      break;
    }
  }
  return free;
}

}  // namespace detail

/// Random GC_n set with exactly n+1 maximal lines; validated (poised, GC, maximal-line count).
inline NodeSet random_gc_free_nodes(int n, std::uint64_t seed, std::int64_t bound,
                                    FreeNodeLayout layout = FreeNodeLayout::generic) {
  if (n < 1) throw std::domain_error("random_gc_free_nodes: n must be >= 1");
  Rng rng(seed);
  for (int attempt = 0; attempt < kRetryBudget; ++attempt) {
    const auto lines = random_general_lines(static_cast<std::size_t>(n) + 1, rng, bound);
    const auto free = detail::place_free_nodes(lines, layout, rng, bound);
    if (!free) continue;
    std::optional<NodeSet> X;
    try {
      X = gc_free_nodes(lines, *free);
    } catch (const std::invalid_argument&) {
      continue;
    }
    if (!is_poised(*X)) continue;
    const PoisedSet P(*X);
    const auto classified = classify_lines(*X);
    if (maximal_lines(classified, n).size() != static_cast<std::size_t>(n) + 1) continue;
    if (gc_factorize(P, classified).status != GcStatus::yes) continue;
    return *X;
  }
  throw GenerationError("random_gc_free_nodes: retry budget exhausted");
}

/// GC_3 set with exactly 4 maximal lines; the seed also picks which 3-node lines appear.
inline NodeSet gc3_four_maximal(std::uint64_t seed, std::int64_t bound) {
  Rng rng(seed);
  const auto layout = static_cast<FreeNodeLayout>(rng.uniform(0, 3));
  return random_gc_free_nodes(3, rng.next(), bound, layout);
}

struct AffineMap {
  Rational m11 = 1, m12 = 0, m21 = 0, m22 = 1;
  Rational tx = 0, ty = 0;

  Node operator()(const Node& p) const { return Node{m11 * p.x + m12 * p.y + tx, m21 * p.x + m22 * p.y + ty}; }
  Rational det() const { return m11 * m22 - m12 * m21; }
};

inline NodeSet affine_map(const NodeSet& X, const AffineMap& m) {
  if (is_zero(m.det())) throw ConstructionError("affine_map: singular matrix");
  std::vector<Node> out;
  for (const auto& p : X.nodes()) out.push_back(m(p));
  return NodeSet(X.degree(), std::move(out));
}

/// Image of a line under an invertible affine map.
inline Line affine_image(const Line& l, const AffineMap& m) {
  // l(p) = 0 with p = M^{-1}(q - t): coefficients (a, b) M^{-1} and c - (a, b) M^{-1} t.
  const Rational d = m.det();
  const Rational a(l.a());
  const Rational b(l.b());
  const Rational na = (a * m.m22 - b * m.m21) / d;
  const Rational nb = (-a * m.m12 + b * m.m11) / d;
  return Line::from_rational(na, nb, Rational(l.c()) - na * m.tx - nb * m.ty);
}

/// (x, y) -> ((m0 x + m1 y + m2) / w, (m3 x + m4 y + m5) / w), w = m6 x + m7 y + m8.
struct ProjectiveMap {
  std::array<Rational, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};

  Rational det() const {
    return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
           m[2] * (m[3] * m[7] - m[4] * m[6]);
  }
};

inline NodeSet projective_map(const NodeSet& X, const ProjectiveMap& pm) {
  if (is_zero(pm.det())) throw ConstructionError("projective_map: singular matrix");
  const auto& m = pm.m;
  std::vector<Node> out;
  for (const auto& p : X.nodes()) {
    const Rational w = m[6] * p.x + m[7] * p.y + m[8];
    if (is_zero(w)) throw ConstructionError("projective_map: node sent to infinity");
    out.push_back(Node{(m[0] * p.x + m[1] * p.y + m[2]) / w, (m[3] * p.x + m[4] * p.y + m[5]) / w});
  }
  return NodeSet(X.degree(), std::move(out));
}

inline AffineMap random_affine(Rng& rng, std::int64_t bound) {
  while (true) {
    AffineMap m;
    m.m11 = rng.uniform(-bound, bound);
    m.m12 = rng.uniform(-bound, bound);
    m.m21 = rng.uniform(-bound, bound);
    m.m22 = rng.uniform(-bound, bound);
    m.tx = rng.rational(bound);
    m.ty = rng.rational(bound);
    if (!is_zero(m.det())) return m;
  }
}

inline NodeSet random_projective_image(const NodeSet& X, Rng& rng, std::int64_t bound) {
  for (int attempt = 0; attempt < kRetryBudget; ++attempt) {
    ProjectiveMap pm;
    for (auto& v : pm.m) v = rng.uniform(-bound, bound);
    try {
      return projective_map(X, pm);
    } catch (const ConstructionError&) {
      continue;
    }
  }
  throw GenerationError("random_projective_image: retry budget exhausted");
}

/// Poised sets built around a prescribed curve arrangement, for exercising the structure
/// clauses on n-node and (n-1)-node lines:
///   line_conic      n nodes on a line l, 2n on an irreducible conic, C(n-1,2) more;
///   line_line_pair  n nodes on l, n on each of two further lines, C(n-1,2) more;
///   n_minus_1_line  n-1 nodes on l, n+1 on a line M0, n on a line M0', C(n-1,2) more.
enum class StackKind { line_conic, line_line_pair, n_minus_1_line };

inline NodeSet stacked_set(int n, std::uint64_t seed, std::int64_t bound, StackKind kind) {
  if (n < 3) throw std::domain_error("stacked_set: n must be >= 3");
  Rng rng(seed);
  const std::size_t inner = static_cast<std::size_t>(choose(n - 1, 2));
  for (int attempt = 0; attempt < kRetryBudget; ++attempt) {
    std::vector<Node> nodes;
    std::vector<Line> lines;  // components that later nodes must avoid
    auto fresh = [&](const Node& p) {
      for (const auto& q : nodes) {
        if (q == p) return false;
      }
      return true;
    };
    auto off_lines = [&](const Node& p) {
      for (const auto& l : lines) {
        if (incident(l, p)) return false;
      }
      return true;
    };
    auto fill_line = [&](const Line& l, std::size_t count) {
      std::size_t placed = 0;
      for (int tries = 0; placed < count && tries < kRetryBudget; ++tries) {
        const Node p = random_point_on(l, rng, bound);
        if (fresh(p) && off_lines(p)) {
          nodes.push_back(p);
          ++placed;
        }
      }
      lines.push_back(l);
      return placed == count;
    };

    const Line ell = random_line(rng, bound);
    bool ok = true;
    std::optional<Poly> conic;
    switch (kind) {
      case StackKind::line_conic: {
        ok = fill_line(ell, static_cast<std::size_t>(n));
        const AffineMap m = random_affine(rng, bound);
        std::size_t placed = 0;
        for (int tries = 0; ok && placed < 2 * static_cast<std::size_t>(n) && tries < kRetryBudget; ++tries) {
          const Rational t = rng.rational(bound);
          const Node p = m(Node{t, t * t});
          if (fresh(p) && off_lines(p)) {
            nodes.push_back(p);
            ++placed;
          }
        }
        ok = ok && placed == 2 * static_cast<std::size_t>(n);
        if (ok) {
          const std::vector<Node> on_conic(nodes.end() - 2 * n, nodes.end());
          const auto basis = curves_through(on_conic, 2);
          ok = basis.size() == 1;
          if (ok) conic = basis.front();
        }
        break;
      }
      case StackKind::line_line_pair:
        ok = fill_line(ell, static_cast<std::size_t>(n)) && fill_line(random_line(rng, bound), n) &&
             fill_line(random_line(rng, bound), n);
        break;
      case StackKind::n_minus_1_line:
        ok = fill_line(ell, static_cast<std::size_t>(n) - 1) && fill_line(random_line(rng, bound), n + 1) &&
             fill_line(random_line(rng, bound), n);
        break;
    }
    if (!ok) continue;
    std::size_t placed = 0;
    for (int tries = 0; placed < inner && tries < kRetryBudget; ++tries) {
      const Node p = random_point(rng, bound);
      if (fresh(p) && off_lines(p) && (!conic || !is_zero(poly_eval(*conic, p)))) {
        nodes.push_back(p);
        ++placed;
      }
    }
    if (placed != inner) continue;
    NodeSet X(n, std::move(nodes));
    const std::size_t on_ell = nodes_on(X, ell).size();
    const std::size_t want = kind == StackKind::n_minus_1_line ? static_cast<std::size_t>(n) - 1 : n;
    if (on_ell != want || !is_poised(X)) continue;
    return X;
  }
  throw GenerationError("stacked_set: retry budget exhausted");
}

/// Flat description of one generated set.
struct GeneratorConfig {
  std::string family = "principal";
  int degree = 1;
  std::uint64_t seed = 0;
  std::int64_t bound = 10;
  std::string perturb = "none";  // none | affine | projective
};

inline const std::vector<std::string>& generator_families() {
  static const std::vector<std::string> families{
      "principal",     "chung_yao",        "berzolari_radon", "random_poised",  "gc3_four_maximal",
      "gc_free_nodes", "stack_line_conic", "stack_line_pair", "stack_n_minus_1"};
  return families;
}

/// Builds the set described by cfg. `lines` overrides the random generating lines of the
/// chung_yao and berzolari_radon families.
inline NodeSet generate(const GeneratorConfig& cfg, std::optional<std::vector<Line>> lines = std::nullopt) {
  if (cfg.degree < 1) throw std::domain_error("generate: degree must be >= 1");
  if (cfg.bound < 1) throw std::domain_error("generate: bound must be >= 1");
  Rng rng(cfg.seed);
  const int n = cfg.degree;
  NodeSet X;
  if (cfg.family == "principal") {
    X = principal_lattice(n);
  } else if (cfg.family == "chung_yao") {
    X = chung_yao(lines ? *lines : random_general_lines(static_cast<std::size_t>(n) + 2, rng, cfg.bound));
  } else if (cfg.family == "berzolari_radon") {
    std::vector<Line> ls;
    if (lines) {
      ls = *lines;
    } else {
      while (ls.size() < static_cast<std::size_t>(n) + 1) {
        Line l = random_line(rng, cfg.bound);
        bool distinct = true;
        for (const auto& m : ls) distinct = distinct && m != l;
        if (distinct) ls.push_back(l);
      }
    }
    X = berzolari_radon(ls, rng.next(), cfg.bound);
  } else if (cfg.family == "random_poised") {
    X = random_poised(n, cfg.seed, cfg.bound);
  } else if (cfg.family == "gc3_four_maximal") {
    if (n != 3) throw std::domain_error("generate: gc3_four_maximal has degree 3");
    X = gc3_four_maximal(cfg.seed, cfg.bound);
  } else if (cfg.family == "gc_free_nodes") {
    const auto layout = static_cast<FreeNodeLayout>(rng.uniform(0, n == 3 ? 3 : 2));
    X = random_gc_free_nodes(n, rng.next(), cfg.bound, layout);
  } else if (cfg.family == "stack_line_conic") {
    X = stacked_set(n, cfg.seed, cfg.bound, StackKind::line_conic);
  } else if (cfg.family == "stack_line_pair") {
    X = stacked_set(n, cfg.seed, cfg.bound, StackKind::line_line_pair);
  } else if (cfg.family == "stack_n_minus_1") {
    X = stacked_set(n, cfg.seed, cfg.bound, StackKind::n_minus_1_line);
  } else {
    throw std::invalid_argument("generate: unknown family '" + cfg.family + "'");
  }

  if (cfg.perturb == "affine") {
    Rng prng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
    X = affine_map(X, random_affine(prng, 3));
  } else if (cfg.perturb == "projective") {
    Rng prng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
    X = random_projective_image(X, prng, 3);
  } else if (cfg.perturb != "none") {
    throw std::invalid_argument("generate: unknown perturbation '" + cfg.perturb + "'");
  }
  return X;
}

}  // namespace gcn
