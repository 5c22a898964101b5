#include <gcn/gcn.hpp>

#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace gcn;

namespace {

std::optional<std::size_t> entry_index(const SetAnalysis& a, const Line& l) {
  for (std::size_t i = 0; i < a.lines.entries().size(); ++i) {
    if (a.entry(i).line == l) return i;
  }
  return std::nullopt;
}

std::size_t count_status(const std::vector<TheoremVerdict>& vs, const std::string& id, VerdictStatus s) {
  std::size_t c = 0;
  for (const auto& v : vs) c += (v.statement_id == id && v.status == s) ? 1 : 0;
  return c;
}

std::vector<TheoremVerdict> run_all(const SetAnalysis& a) {
  std::vector<TheoremVerdict> out;
  for (const auto& c : verdict_checks()) {
    for (auto& v : run_check(c, a)) out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

TEST(Analysis, PrincipalLineIsCaseOne) {
  const SetAnalysis a = analyze_set(principal_lattice(3));
  ASSERT_TRUE(a.is_gc());
  const auto li = entry_index(a, Line(Integer(0), Integer(1), Integer(-1)));
  ASSERT_TRUE(li.has_value());
  EXPECT_EQ(a.usage[*li].users.size(), 3u);
  const auto m0 = detail::find_case_i(a, *li);
  ASSERT_TRUE(m0.has_value());
  EXPECT_EQ(a.entry(*m0).line, Line(Integer(0), Integer(1), Integer(0)));
  EXPECT_FALSE(detail::find_case_ii(a, *li).has_value());
  const auto vs = check_nline_theorem(a);
  EXPECT_EQ(count_status(vs, "nline.count", VerdictStatus::fail), 0u);
  EXPECT_GE(count_status(vs, "nline.case_i", VerdictStatus::pass), 1u);
}

TEST(Analysis, FourMaximalLineSetsReachCaseTwo) {
  std::size_t case_ii = 0;
  for (std::uint64_t seed = 0; seed < 24; ++seed) {
    const SetAnalysis a = analyze_set(gc3_four_maximal(seed, 8));
    ASSERT_TRUE(a.is_gc());
    EXPECT_EQ(a.maximal.size(), 4u);
    for (std::size_t li = 0; li < a.lines.entries().size(); ++li) {
      if (a.entry(li).k() != 3) continue;
      const auto u = a.usage[li].users.size();
      ASSERT_TRUE(u == 3 || u == 1) << u;
      // the two cases are mutually exclusive and match the usage count
      EXPECT_EQ(detail::find_case_i(a, li).has_value(), u == 3);
      EXPECT_EQ(detail::find_case_ii(a, li).has_value(), u == 1);
      case_ii += u == 1 ? 1 : 0;
    }
    for (const auto& v : run_all(a)) EXPECT_NE(v.status, VerdictStatus::fail) << v.statement_id << v.witness;
  }
  EXPECT_GT(case_ii, 0u);
}

TEST(Analysis, ChungYaoHasNoNNodeLines) {
  Rng rng(2);
  const SetAnalysis a = analyze_set(chung_yao(random_general_lines(5, rng, 7)));
  ASSERT_TRUE(a.is_gc());
  const auto vs = check_nline_theorem(a);
  ASSERT_EQ(vs.size(), 1u);
  EXPECT_EQ(vs[0].status, VerdictStatus::inapplicable);
  EXPECT_EQ(vs[0].witness["reason"], "no n-node lines");

  // n = 2: every node uses exactly the maximal lines missing it
  const SetAnalysis b = analyze_set(chung_yao(random_general_lines(4, rng, 7)));
  for (std::size_t li = 0; li < b.lines.entries().size(); ++li) {
    const bool maximal = std::find(b.maximal.begin(), b.maximal.end(), li) != b.maximal.end();
    if (!maximal) EXPECT_TRUE(b.usage[li].users.empty());
  }
}

TEST(Analysis, DependentSetsCarryWitness) {
  std::vector<Node> nodes;
  for (int i = 0; i < 5; ++i) nodes.push_back(Node{i, 0});
  nodes.push_back(Node{0, 1});
  const SetAnalysis a = analyze_set(NodeSet(2, nodes));
  EXPECT_FALSE(a.poised);
  ASSERT_TRUE(a.dependence.has_value());
  EXPECT_EQ(a.dependence->kind, DependenceWitness::Kind::collinear_n_plus_2);
  const Json r = analysis_report(a);
  EXPECT_FALSE(r["is_poised"].get<bool>());
  EXPECT_EQ(r["dependence_witness"]["kind"], "collinear_n_plus_2");
  for (const auto& c : verdict_checks()) {
    for (const auto& v : run_check(c, a)) EXPECT_EQ(v.status, VerdictStatus::inapplicable) << c;
  }
}

TEST(Analysis, ReportIsConsistentWithAnalysis) {
  const SetAnalysis a = analyze_set(principal_lattice(2));
  const Json r = analysis_report(a);
  EXPECT_EQ(r["fingerprint"], a.fingerprint);
  EXPECT_EQ(r["size"], 6);
  EXPECT_EQ(r["gc_status"], "yes");
  EXPECT_EQ(r["maximal_lines"].size(), 3u);
  EXPECT_EQ(r["lines"].size(), a.lines.entries().size());
  for (const auto& n : r["nodes"]) EXPECT_TRUE(n["factorization_resolved"].get<bool>());
  EXPECT_EQ(analysis_report(analyze_set(principal_lattice(2))).dump(), r.dump());
}

TEST(Verdicts, TamperedUsageFailsWithWitness) {
  SetAnalysis a = analyze_set(principal_lattice(3));
  const auto li = entry_index(a, Line(Integer(0), Integer(1), Integer(-1)));
  ASSERT_TRUE(li.has_value());
  a.usage[*li].users.pop_back();
  const auto vs = check_nline_theorem(a);
  const TheoremVerdict* fail = nullptr;
  for (const auto& v : vs) {
    if (v.statement_id == "nline.count" && v.status == VerdictStatus::fail) fail = &v;
  }
  ASSERT_NE(fail, nullptr);
  EXPECT_EQ(fail->witness["usage"], 2);
  EXPECT_EQ(fail->witness["check"], "nline");
  EXPECT_TRUE(fail->witness.contains("set"));
  EXPECT_TRUE(fail->witness.contains("line"));
  // the embedded set is genuine, so the failure does not reproduce
  EXPECT_FALSE(reproduce(*fail));

  const TheoremVerdict back = verdict_from_json(to_json(*fail));
  EXPECT_EQ(back.statement_id, fail->statement_id);
  EXPECT_EQ(back.status, fail->status);
  EXPECT_EQ(back.witness, fail->witness);
}

TEST(Verdicts, NonGcSetsSkipGcChecksButRunPoisedOnes) {
  const SetAnalysis a = analyze_set(random_poised(3, 4, 20));
  ASSERT_TRUE(a.poised);
  ASSERT_FALSE(a.is_gc());
  for (const auto& v : check_nline_theorem(a)) EXPECT_EQ(v.status, VerdictStatus::inapplicable);
  const auto fund = check_fundamental_duality(a);
  EXPECT_GT(count_status(fund, "fundamental.duality", VerdictStatus::pass), 0u);
  for (const auto& v : check_usage_independence(a)) EXPECT_NE(v.status, VerdictStatus::fail);
  EXPECT_EQ(count_status(check_curve_uniqueness(a), "curve_uniqueness.n_minus_4", VerdictStatus::pass), 1u);
}

TEST(Verdicts, HighDegreeNeedsAssumeGm) {
  const SetAnalysis a = analyze_set(principal_lattice(6));
  const auto plain = check_structure_theorems(a);
  ASSERT_EQ(plain.size(), 1u);
  EXPECT_EQ(plain[0].status, VerdictStatus::inapplicable);
  CheckOptions opts;
  opts.assume_gm = true;
  const auto assumed = check_structure_theorems(a, opts);
  EXPECT_GT(assumed.size(), 1u);
  for (const auto& v : assumed) EXPECT_EQ(v.status, VerdictStatus::pass) << v.statement_id;
}

TEST(Checks, ExpandAndReject) {
  const auto all = expand_checks({"all"});
  EXPECT_EQ(all.size(), verdict_checks().size() + 1);
  EXPECT_EQ(all.back(), "conjecture");
  EXPECT_EQ(expand_checks({"nline", "nline", "conjecture"}), (std::vector<std::string>{"nline", "conjecture"}));
  EXPECT_THROW(expand_checks({"bogus"}), InputError);
  EXPECT_THROW(run_check("bogus", analyze_set(principal_lattice(1))), std::invalid_argument);
}

TEST(Conjecture, BinomialRootsAndScan) {
  EXPECT_EQ(binomial_roots(0), (std::vector<int>{0, 1}));
  EXPECT_EQ(binomial_roots(3), (std::vector<int>{3}));
  EXPECT_TRUE(binomial_roots(4).empty());
  for (int n = 1; n <= 5; ++n) {
    const auto scan = check_conjecture(analyze_set(principal_lattice(n)));
    EXPECT_TRUE(scan.applicable);
    EXPECT_EQ(scan.findings(), 0u) << n;
    EXPECT_EQ(scan.records.size(), analyze_set(principal_lattice(n)).lines.entries().size());
  }
  EXPECT_FALSE(check_conjecture(analyze_set(random_poised(2, 1, 20))).applicable);
}

TEST(Corpus, DeterministicAcrossThreadCounts) {
  const Json config = Json::parse(R"({
    "checks": ["all"],
    "corpus": [
      {"family": "principal", "degrees": [2, 3]},
      {"family": "gc3_four_maximal", "degree": 3, "seed": 1, "count": 3, "bound": 6},
      {"family": "chung_yao", "degree": 3, "count": 2, "perturb": "affine"},
      {"family": "random_poised", "degree": 2, "count": 2, "bound": 5}
    ]})");
  const Json one = corpus_run(config, 1);
  const Json three = corpus_run(config, 3);
  EXPECT_EQ(one.dump(), three.dump());
  EXPECT_EQ(one["summary"]["items"], 9);
  EXPECT_EQ(one["summary"]["fail"], 0);
  EXPECT_EQ(one["summary"]["errors"], 0);
  EXPECT_EQ(one["summary"]["findings"], 0);
  EXPECT_GT(one["summary"]["pass"].get<std::size_t>(), 0u);
}

TEST(Corpus, EmptyChecksAndBadInput) {
  const Json r = corpus_run(Json::parse(R"({"checks": [], "corpus": [{"family": "principal", "degree": 2}]})"), 1);
  EXPECT_TRUE(r["items"].empty());
  EXPECT_EQ(r["summary"]["items"], 0);
  const Json err = corpus_run(Json::parse(R"({"checks": ["nline"], "corpus": [{"family": "nope", "degree": 2}]})"), 1);
  EXPECT_EQ(err["summary"]["errors"], 1);
  EXPECT_THROW(corpus_run(Json::parse(R"({"checks": "nline"})"), 1), InputError);
}
