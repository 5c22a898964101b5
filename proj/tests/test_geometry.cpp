#include <gcn/constructions.hpp>
#include <gcn/geometry.hpp>

#include <gtest/gtest.h>

#include "oracles.hpp"

#include <set>

using namespace gcn;

TEST(Line, CanonicalForm) {
  const Line l(Integer(-2), Integer(4), Integer(6));
  EXPECT_EQ(l.a(), 1);
  EXPECT_EQ(l.b(), -2);
  EXPECT_EQ(l.c(), -3);
  EXPECT_EQ(l, Line(Integer(1), Integer(-2), Integer(-3)));
  EXPECT_EQ(Line(Integer(0), Integer(-3), Integer(6)), Line(Integer(0), Integer(1), Integer(-2)));
  EXPECT_EQ(Line::from_rational(Rational(1, 2), Rational(1, 3), 1), Line(Integer(3), Integer(2), Integer(6)));
  EXPECT_THROW(Line(Integer(0), Integer(0), Integer(1)), std::domain_error);
  EXPECT_EQ(l.to_string(), "(1,-2,-3)");
}

TEST(Line, ThroughIntersectParallel) {
  Rng rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    const Node p = random_point(rng, 6), q = random_point(rng, 6);
    if (p == q) continue;
    const Line l = line_through(p, q);
    EXPECT_TRUE(incident(l, p));
    EXPECT_TRUE(incident(l, q));
    const Line m = random_line(rng, 6);
    const auto x = intersect(l, m);
    EXPECT_EQ(x.has_value(), !parallel(l, m));
    if (x) {
      EXPECT_TRUE(incident(l, *x));
      EXPECT_TRUE(incident(m, *x));
    }
  }
  EXPECT_THROW(line_through(Node{1, 1}, Node{1, 1}), std::domain_error);
  const Line h(Integer(0), Integer(1), Integer(0));
  EXPECT_FALSE(intersect(h, Line(Integer(0), Integer(2), Integer(3))).has_value());
}

TEST(NodeSet, RejectsDuplicates) {
  EXPECT_THROW(NodeSet(1, {Node{0, 0}, Node{1, 0}, Node{Rational(2, 2), 0}}), std::invalid_argument);
  const NodeSet X(1, {Node{0, 0}, Node{1, 0}, Node{0, 1}});
  EXPECT_EQ(X.index_of(Node{0, 1}), std::optional<std::size_t>(2));
  EXPECT_FALSE(X.index_of(Node{5, 5}).has_value());
  EXPECT_EQ(X.subset({2, 0}, 0).size(), 2u);
}

TEST(Classification, MatchesBruteForce) {
  std::vector<NodeSet> sets;
  for (int n = 1; n <= 5; ++n) sets.push_back(principal_lattice(n));
  for (std::uint64_t s = 0; s < 20; ++s) sets.push_back(random_poised(3, s, 2));
  for (const auto& X : sets) {
    const auto lines = classify_lines(X);
    std::set<std::vector<std::size_t>> got;
    for (const auto& e : lines.entries()) {
      got.insert(e.nodes);
      EXPECT_EQ(e.nodes, nodes_on(X, e.line));
      EXPECT_EQ(lines.find(e.line), &e);
    }
    EXPECT_EQ(got, oracle::collinear_classes(X.nodes()));
    EXPECT_TRUE(std::is_sorted(lines.entries().begin(), lines.entries().end(),
                               [](const LineEntry& a, const LineEntry& b) { return a.line < b.line; }));
  }
}

TEST(Classification, PrincipalLatticeMaximalLines) {
  for (int n = 1; n <= 6; ++n) {
    const auto X = principal_lattice(n);
    const auto m = maximal_lines(X);
    const std::set<Line> want{Line(Integer(1), Integer(0), Integer(0)), Line(Integer(0), Integer(1), Integer(0)),
                              Line(Integer(1), Integer(1), Integer(-n))};
    EXPECT_EQ(std::set<Line>(m.begin(), m.end()), want) << n;
    EXPECT_EQ(classify_lines(X).max_k(), static_cast<std::size_t>(n) + 1);
  }
}
