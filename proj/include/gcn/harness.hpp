#pragma once

#include <gcn/constructions.hpp>
#include <gcn/geometry.hpp>
#include <gcn/io.hpp>
#include <gcn/poisedness.hpp>
#include <gcn/usage.hpp>

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

namespace gcn {

/// Everything the checks need about one node set, computed once.
struct SetAnalysis {
  NodeSet nodes;
  std::string fingerprint;
  bool poised = false;
  LineClassification lines;
  std::vector<std::size_t> maximal;          // indices into lines.entries()
  std::optional<PoisedSet> basis;            // when poised
  GcReport gc;                               // when poised
  std::vector<UsageSet> usage;               // aligned with lines.entries(), when poised
  std::optional<DependenceWitness> dependence;  // when dependent

  int degree() const { return nodes.degree(); }
  const LineEntry& entry(std::size_t i) const { return lines.entries()[i]; }
  bool is_gc() const { return poised && gc.status == GcStatus::yes; }
};

inline SetAnalysis analyze_set(NodeSet X) {
  SetAnalysis a;
  a.fingerprint = fingerprint(X);
  a.lines = classify_lines(X);
  for (std::size_t i = 0; i < a.lines.entries().size(); ++i) {
    if (a.lines.entries()[i].k() == static_cast<std::size_t>(X.degree()) + 1) a.maximal.push_back(i);
  }
  a.poised = is_poised(X);
  if (a.poised) {
    a.basis.emplace(X);
    a.gc = gc_factorize(*a.basis, a.lines);
    for (const auto& e : a.lines.entries()) a.usage.push_back(x_line(*a.basis, e.line));
  } else if (!is_independent(X)) {
    a.dependence = dependence_witness(X);
  }
  a.nodes = std::move(X);
  return a;
}

/// JSON report of an analysis: poisedness, GC status, every node line with X_l and N_l,
/// and the used-line list of every node.
inline Json analysis_report(const SetAnalysis& a) {
  Json r;
  r["fingerprint"] = a.fingerprint;
  r["set"] = to_json(a.nodes);
  r["degree"] = a.degree();
  r["size"] = a.nodes.size();
  r["dim"] = dim_pi(a.degree());
  r["is_poised"] = a.poised;
  r["gc_status"] = a.poised ? to_string(a.gc.status) : "not_poised";
  if (a.dependence) r["dependence_witness"] = to_json(*a.dependence);

  Json maximal = Json::array();
  for (auto i : a.maximal) maximal.push_back(to_json(a.entry(i).line));
  r["maximal_lines"] = maximal;

  Json lines = Json::array();
  for (std::size_t i = 0; i < a.lines.entries().size(); ++i) {
    const auto& e = a.entry(i);
    Json l{{"line", to_json(e.line)}, {"k", e.k()}, {"nodes", e.nodes},
           {"maximal", e.k() == static_cast<std::size_t>(a.degree()) + 1}};
    if (a.poised) {
      l["users"] = a.usage[i].users;
      l["n_l"] = a.usage[i].non_users_off_curve;
    }
    lines.push_back(std::move(l));
  }
  r["lines"] = lines;

  Json nodes = Json::array();
  for (std::size_t v = 0; v < a.nodes.size(); ++v) {
    Json n{{"index", v}, {"x", to_json(a.nodes[v].x)}, {"y", to_json(a.nodes[v].y)}};
    if (a.poised) {
      std::vector<std::size_t> used;
      for (std::size_t i = 0; i < a.usage.size(); ++i) {
        if (std::binary_search(a.usage[i].users.begin(), a.usage[i].users.end(), v)) used.push_back(i);
      }
      n["used_lines"] = used;
      n["fundamental"] = to_json(a.basis->fundamental(v));
      const auto& f = a.gc.nodes[v];
      Json factors = Json::array();
      for (const auto& l : f.lines) factors.push_back(to_json(l));
      n["factor_lines"] = factors;
      n["factorization_resolved"] = f.resolved;
    }
    nodes.push_back(std::move(n));
  }
  r["nodes"] = nodes;
  return r;
}

enum class VerdictStatus { pass, fail, inapplicable };

inline const char* to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::pass: return "pass";
    case VerdictStatus::fail: return "fail";
    case VerdictStatus::inapplicable: return "inapplicable";
  }
  return "inapplicable";
}

struct TheoremVerdict {
  std::string statement_id;
  std::string fingerprint;
  VerdictStatus status = VerdictStatus::inapplicable;
  Json witness;  // a fail witness also carries "set", "check" and "assume_gm"
};

inline Json to_json(const TheoremVerdict& v) {
  return Json{{"statement_id", v.statement_id},
              {"fingerprint", v.fingerprint},
              {"status", to_string(v.status)},
              {"witness", v.witness}};
}

inline TheoremVerdict verdict_from_json(const Json& j) {
  TheoremVerdict v;
  v.statement_id = field(j, "statement_id").get<std::string>();
  v.fingerprint = j.value("fingerprint", "");
  const std::string s = field(j, "status").get<std::string>();
  if (s == "pass") {
    v.status = VerdictStatus::pass;
  } else if (s == "fail") {
    v.status = VerdictStatus::fail;
  } else if (s == "inapplicable") {
    v.status = VerdictStatus::inapplicable;
  } else {
    throw InputError("unknown verdict status '" + s + "'");
  }
  v.witness = j.value("witness", Json::object());
  return v;
}

struct CheckOptions {
  bool assume_gm = false;  // run GC-only checks above degree 5
};

namespace detail {

class VerdictSink {
 public:
  VerdictSink(const SetAnalysis& a, std::string check, const CheckOptions& opts)
      : a_(a), check_(std::move(check)), opts_(opts) {}

  void add(std::string id, bool ok, Json witness) {
    if (!ok) {
      witness["set"] = to_json(a_.nodes);
      witness["check"] = check_;
      witness["assume_gm"] = opts_.assume_gm;
    }
    out_.push_back(TheoremVerdict{std::move(id), a_.fingerprint, ok ? VerdictStatus::pass : VerdictStatus::fail,
                                  std::move(witness)});
  }

  void inapplicable(std::string id, const std::string& reason) {
    out_.push_back(TheoremVerdict{std::move(id), a_.fingerprint, VerdictStatus::inapplicable,
                                  Json{{"reason", reason}}});
  }

  std::vector<TheoremVerdict> take() { return std::move(out_); }

 private:
  const SetAnalysis& a_;
  std::string check_;
  const CheckOptions& opts_;
  std::vector<TheoremVerdict> out_;
};

inline std::optional<std::string> poised_precondition(const SetAnalysis& a) {
  if (!a.poised) return std::string("not poised");
  return std::nullopt;
}

inline std::optional<std::string> gc_precondition(const SetAnalysis& a, const CheckOptions& opts) {
  if (!a.poised) return std::string("not poised");
  if (a.gc.status != GcStatus::yes) return std::string("GC status is ") + to_string(a.gc.status);
  if (a.degree() > 5 && !opts.assume_gm) return std::string("degree above 5 needs assume_gm");
  return std::nullopt;
}

inline bool contains(const std::vector<std::size_t>& sorted, std::size_t v) {
  return std::binary_search(sorted.begin(), sorted.end(), v);
}

inline std::optional<std::size_t> common_node(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  for (auto v : a) {
    if (contains(b, v)) return v;
  }
  return std::nullopt;
}

inline std::size_t count_common(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  std::size_t c = 0;
  for (auto v : a) c += contains(b, v) ? 1 : 0;
  return c;
}

/// Indices of {0..size-1} lying in none of the given sorted lists.
inline std::vector<std::size_t> outside(std::size_t size, std::initializer_list<const std::vector<std::size_t>*> parts) {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < size; ++v) {
    bool hit = false;
    for (const auto* p : parts) hit = hit || contains(*p, v);
    if (!hit) out.push_back(v);
  }
  return out;
}

inline std::vector<Node> pick(const NodeSet& X, const std::vector<std::size_t>& idx) {
  std::vector<Node> out;
  for (auto i : idx) out.push_back(X[i]);
  return out;
}

inline Json line_witness(const SetAnalysis& a, std::size_t li) {
  const auto& e = a.entry(li);
  return Json{{"line", to_json(e.line)}, {"k", e.k()}, {"usage", a.usage[li].users.size()},
              {"users", a.usage[li].users}};
}

/// Maximal M0 with M0 ^ l not a node and X_l = X \ (l u M0).
inline std::optional<std::size_t> find_case_i(const SetAnalysis& a, std::size_t li) {
  const auto& l = a.entry(li).nodes;
  for (auto m : a.maximal) {
    if (m == li) continue;
    const auto& M = a.entry(m).nodes;
    if (common_node(M, l)) continue;
    if (a.usage[li].users == outside(a.nodes.size(), {&l, &M})) return m;
  }
  return std::nullopt;
}

/// Maximal M', M'' meeting at a node of l with X_l = X \ (l u M' u M'').
inline std::optional<std::pair<std::size_t, std::size_t>> find_case_ii(const SetAnalysis& a, std::size_t li) {
  const auto& l = a.entry(li).nodes;
  for (std::size_t i = 0; i < a.maximal.size(); ++i) {
    for (std::size_t j = i + 1; j < a.maximal.size(); ++j) {
      const auto m1 = a.maximal[i];
      const auto m2 = a.maximal[j];
      if (m1 == li || m2 == li) continue;
      const auto& M1 = a.entry(m1).nodes;
      const auto& M2 = a.entry(m2).nodes;
      const auto c = common_node(M1, M2);
      if (!c || !contains(l, *c)) continue;
      if (a.usage[li].users == outside(a.nodes.size(), {&l, &M1, &M2})) return std::make_pair(m1, m2);
    }
  }
  return std::nullopt;
}

/// The two exclusion lemmas, valid in any poised set: a maximal line missing l at nodes
/// carries no user of l, and neither do two maximal lines meeting at a node of l. For an
/// n-node line the users are then exactly the rest.
inline Json lemma_exclusion_violations(const SetAnalysis& a, std::size_t li) {
  const auto& l = a.entry(li).nodes;
  const auto& users = a.usage[li].users;
  const bool n_node = l.size() == static_cast<std::size_t>(a.degree());
  Json bad = Json::array();
  for (auto m : a.maximal) {
    if (m == li) continue;
    const auto& M = a.entry(m).nodes;
    if (common_node(M, l)) continue;
    if (count_common(M, users) != 0 || (n_node && users != outside(a.nodes.size(), {&l, &M}))) {
      bad.push_back(Json{{"lemma", "maximal_line_off_l"}, {"maximal", to_json(a.entry(m).line)}});
    }
  }
  for (std::size_t i = 0; i < a.maximal.size(); ++i) {
    for (std::size_t j = i + 1; j < a.maximal.size(); ++j) {
      const auto m1 = a.maximal[i];
      const auto m2 = a.maximal[j];
      if (m1 == li || m2 == li) continue;
      const auto& M1 = a.entry(m1).nodes;
      const auto& M2 = a.entry(m2).nodes;
      const auto c = common_node(M1, M2);
      if (!c || !contains(l, *c)) continue;
      if (count_common(M1, users) != 0 || count_common(M2, users) != 0 ||
          (n_node && users != outside(a.nodes.size(), {&l, &M1, &M2}))) {
        bad.push_back(Json{{"lemma", "maximal_pair_on_l"},
                           {"maximal", Json::array({to_json(a.entry(m1).line), to_json(a.entry(m2).line)})}});
      }
    }
  }
  return bad;
}

/// Maximal line M (other than l) is "excluded" when M ^ l is not a node, or when a third
/// maximal line passes through the node M ^ l.
inline bool excluded_maximal(const SetAnalysis& a, std::size_t li, std::size_t m) {
  const auto& l = a.entry(li).nodes;
  const auto c = common_node(a.entry(m).nodes, l);
  if (!c) return true;
  for (auto other : a.maximal) {
    if (other == m || other == li) continue;
    if (contains(a.entry(other).nodes, *c)) return true;
  }
  return false;
}

inline bool is_degenerate_conic(const Poly& q) {
  // symmetric matrix of f(x, y, 1)
  const Rational a = q.coeff(2, 0), b = q.coeff(1, 1) / 2, c = q.coeff(0, 2);
  const Rational d = q.coeff(1, 0) / 2, e = q.coeff(0, 1) / 2, f = q.coeff(0, 0);
  return is_zero(a * (c * f - e * e) - b * (b * f - e * d) + d * (b * e - c * d));
}

}  // namespace detail

/// |X_l| in {C(n,2), C(n-1,2)} for each n-node line of a GC_n set, with the structural
/// witness of each case, the per-maximal-line counts, and the exclusion lemmas.
inline std::vector<TheoremVerdict> check_nline_theorem(const SetAnalysis& a, const CheckOptions& opts = {}) {
  detail::VerdictSink sink(a, "nline", opts);
  if (auto why = detail::gc_precondition(a, opts)) {
    sink.inapplicable("nline.count", *why);
    return sink.take();
  }
  const int n = a.degree();
  bool any = false;
  for (std::size_t li = 0; li < a.lines.entries().size(); ++li) {
    if (a.entry(li).k() != static_cast<std::size_t>(n)) continue;
    any = true;
    const auto& users = a.usage[li].users;
    const auto u = static_cast<std::int64_t>(users.size());
    const Json base = detail::line_witness(a, li);

    Json w = base;
    w["allowed"] = Json::array({choose(n, 2), choose(n - 1, 2)});
    sink.add("nline.count", u == choose(n, 2) || u == choose(n - 1, 2), w);

    std::optional<int> s;
    if (u == choose(n, 2)) {
      s = n;
      const auto m0 = detail::find_case_i(a, li);
      Json wi = base;
      bool ok = m0.has_value();
      if (m0) {
        wi["m0"] = to_json(a.entry(*m0).line);
        ok = is_poised(detail::pick(a.nodes, users), n - 2);
        wi["x_l_poised"] = ok;
      }
      sink.add("nline.case_i", ok, wi);
    } else if (u == choose(n - 1, 2)) {
      s = n - 1;
      const auto pair = detail::find_case_ii(a, li);
      Json wii = base;
      bool ok = pair.has_value();
      if (pair) {
        wii["m_pair"] = Json::array({to_json(a.entry(pair->first).line), to_json(a.entry(pair->second).line)});
        ok = is_poised(detail::pick(a.nodes, users), n - 3);
        wii["x_l_poised"] = ok;
      }
      sink.add("nline.case_ii", ok, wii);
    }

    const Json bad = detail::lemma_exclusion_violations(a, li);
    Json wl = base;
    wl["violations"] = bad;
    sink.add("nline.lemma_exclusions", bad.empty(), wl);

    if (s) {
      Json counts = Json::array();
      bool ok = true;
      for (auto m : a.maximal) {
        const std::size_t c = detail::count_common(a.entry(m).nodes, users);
        const std::size_t expect = detail::excluded_maximal(a, li, m) ? 0 : static_cast<std::size_t>(*s - 1);
        ok = ok && c == expect;
        counts.push_back(Json{{"maximal", to_json(a.entry(m).line)}, {"count", c}, {"expected", expect}});
      }
      Json wm = base;
      wm["s"] = *s;
      wm["per_maximal"] = counts;
      sink.add("nline.per_maximal", ok, wm);
    }

    if (u > 0) {
      // a maximal line through a node of l carrying no user of l has a partner through that node
      Json unpaired = Json::array();
      for (auto m : a.maximal) {
        const auto c = detail::common_node(a.entry(m).nodes, a.entry(li).nodes);
        if (!c || detail::count_common(a.entry(m).nodes, users) != 0) continue;
        bool partner = false;
        for (auto other : a.maximal) partner = partner || (other != m && detail::contains(a.entry(other).nodes, *c));
        if (!partner) unpaired.push_back(to_json(a.entry(m).line));
      }
      Json wp = base;
      wp["unpaired"] = unpaired;
      sink.add("nline.paired_maximal", unpaired.empty(), wp);
    }
  }
  if (!any) sink.inapplicable("nline.count", "no n-node lines");
  return sink.take();
}

/// Usage bounds for n-node lines of an n-poised set, with the structure forced by large usage.
inline std::vector<TheoremVerdict> check_nline_poised(const SetAnalysis& a, const CheckOptions& opts = {}) {
  detail::VerdictSink sink(a, "nline-poised", opts);
  if (auto why = detail::poised_precondition(a)) {
    sink.inapplicable("nline_poised.bound", *why);
    return sink.take();
  }
  const int n = a.degree();
  bool any = false;
  for (std::size_t li = 0; li < a.lines.entries().size(); ++li) {
    if (a.entry(li).k() != static_cast<std::size_t>(n)) continue;
    any = true;
    const auto& users = a.usage[li].users;
    const auto& n_l = a.usage[li].non_users_off_curve;
    const auto u = static_cast<std::int64_t>(users.size());
    const Json base = detail::line_witness(a, li);

    Json wb = base;
    wb["bound"] = choose(n, 2);
    sink.add("nline_poised.bound", u <= choose(n, 2), wb);

    if (u >= choose(n - 1, 2) + 1) {
      Json w = base;
      bool ok = u == choose(n, 2);
      const auto m0 = detail::find_case_i(a, li);
      ok = ok && m0.has_value();
      if (m0) w["m0"] = to_json(a.entry(*m0).line);
      ok = ok && is_poised(detail::pick(a.nodes, users), n - 2);
      sink.add("nline_poised.large_usage", ok, w);
    }

    if (u >= choose(n - 2, 2) + 2 && u <= choose(n - 1, 2)) {
      Json w = base;
      w["n_l"] = n_l;
      std::vector<std::string> failed;
      if (u != choose(n - 1, 2)) failed.push_back("usage");
      if (!is_poised(detail::pick(a.nodes, users), n - 3)) failed.push_back("x_l_poised");
      if (n_l.size() != 2 * static_cast<std::size_t>(n)) failed.push_back("n_l_size");
      const auto conics = curves_through(detail::pick(a.nodes, n_l), 2);
      if (conics.size() != 1 || conics.front().degree() != 2) {
        failed.push_back("unique_conic");
      } else {
        const Poly& beta = conics.front();
        w["conic"] = to_json(beta);
        std::size_t off_l = 0;
        std::size_t on_l = 0;
        bool users_match = true;
        for (std::size_t v = 0; v < a.nodes.size(); ++v) {
          const bool on_beta = is_zero(poly_eval(beta, a.nodes[v]));
          const bool on_ell = detail::contains(a.entry(li).nodes, v);
          if (on_beta) (on_ell ? on_l : off_l) += 1;
          users_match = users_match && (detail::contains(users, v) == (!on_beta && !on_ell));
        }
        if (!users_match) failed.push_back("x_l_is_complement");
        if (off_l != 2 * static_cast<std::size_t>(n) || on_l > 1) failed.push_back("conic_node_count");
        if (detail::is_degenerate_conic(beta)) {
          std::vector<std::size_t> factors;
          for (std::size_t fi = 0; fi < a.lines.entries().size(); ++fi) {
            if (divide_by_linear(beta, a.entry(fi).line)) factors.push_back(fi);
          }
          Json parts = Json::array();
          bool split_ok = factors.size() == 2;
          for (auto fi : factors) {
            const std::size_t on = a.entry(fi).k() - detail::count_common(a.entry(fi).nodes, a.entry(li).nodes);
            parts.push_back(Json{{"line", to_json(a.entry(fi).line)}, {"nodes_off_l", on}});
            split_ok = split_ok && on == static_cast<std::size_t>(n);
          }
          w["components"] = parts;
          if (!split_ok) failed.push_back("reducible_split");
        }
      }
      w["failed"] = failed;
      sink.add("nline_poised.conic", failed.empty(), w);
    }

    const Json bad = detail::lemma_exclusion_violations(a, li);
    Json wl = base;
    wl["violations"] = bad;
    sink.add("nline_poised.lemma_exclusions", bad.empty(), wl);
  }
  if (!any) sink.inapplicable("nline_poised.bound", "no n-node lines");
  return sink.take();
}

/// |X_l| <= C(n-1,2) for (n-1)-node lines, and the M0 / M0' split of N_l under large usage.
inline std::vector<TheoremVerdict> check_n_minus_1_line(const SetAnalysis& a, const CheckOptions& opts = {}) {
  detail::VerdictSink sink(a, "n1line", opts);
  if (auto why = detail::poised_precondition(a)) {
    sink.inapplicable("n1line.bound", *why);
    return sink.take();
  }
  const int n = a.degree();
  bool any = false;
  for (std::size_t li = 0; li < a.lines.entries().size(); ++li) {
    if (n < 3 || a.entry(li).k() != static_cast<std::size_t>(n) - 1) continue;
    any = true;
    const auto& users = a.usage[li].users;
    const auto& n_l = a.usage[li].non_users_off_curve;
    const auto u = static_cast<std::int64_t>(users.size());
    const Json base = detail::line_witness(a, li);

    Json wb = base;
    wb["bound"] = choose(n - 1, 2);
    sink.add("n1line.bound", u <= choose(n - 1, 2), wb);

    if (u >= choose(n - 2, 2) + 3) {
      Json w = base;
      w["n_l"] = n_l;
      std::vector<std::string> failed;
      if (u != choose(n - 1, 2)) failed.push_back("usage");
      if (n_l.size() != 2 * static_cast<std::size_t>(n) + 1) failed.push_back("n_l_size");
      if (!is_poised(detail::pick(a.nodes, users), n - 3)) failed.push_back("x_l_poised");
      bool split = false;
      for (auto m : a.maximal) {
        const auto& M = a.entry(m).nodes;
        if (detail::count_common(M, n_l) != M.size()) continue;
        std::vector<std::size_t> rest;
        for (auto v : n_l) {
          if (!detail::contains(M, v)) rest.push_back(v);
        }
        if (rest.size() != static_cast<std::size_t>(n)) continue;
        const Line m0p = line_through(a.nodes[rest[0]], a.nodes[rest[1]]);
        const LineEntry* e = a.lines.find(m0p);
        if (e == nullptr || detail::count_common(e->nodes, rest) != rest.size()) continue;
        bool extra_ok = true;
        for (auto v : e->nodes) {
          if (!detail::contains(rest, v)) extra_ok = extra_ok && detail::contains(M, v);
        }
        if (!extra_ok || e->k() > static_cast<std::size_t>(n) + 1) continue;
        split = true;
        w["m0"] = to_json(a.entry(m).line);
        w["m0_prime"] = to_json(e->line);
        break;
      }
      if (!split) failed.push_back("m0_split");
      w["failed"] = failed;
      sink.add("n1line.structure", failed.empty(), w);
    }
  }
  if (!any) sink.inapplicable("n1line.bound", "no (n-1)-node lines");
  return sink.take();
}

/// X_l is (k-2)-independent for every k-node line of a GC_n set, with the resulting counts,
/// and each user's (k-2)-fundamental polynomial is found among products of its factor lines.
inline std::vector<TheoremVerdict> check_usage_independence(const SetAnalysis& a, const CheckOptions& opts = {}) {
  detail::VerdictSink sink(a, "usage-indep", opts);
  if (auto why = detail::gc_precondition(a, opts)) {
    sink.inapplicable("usage_indep.independent", *why);
    return sink.take();
  }
  for (std::size_t li = 0; li < a.lines.entries().size(); ++li) {
    const std::size_t k = a.entry(li).k();
    const auto& users = a.usage[li].users;
    const Json base = detail::line_witness(a, li);
    const auto pts = detail::pick(a.nodes, users);

    sink.add("usage_indep.independent", users.empty() || is_independent(pts, static_cast<int>(k) - 2), base);

    std::size_t collinear = users.empty() ? 0 : 1;
    for (const auto& e : a.lines.entries()) collinear = std::max(collinear, detail::count_common(e.nodes, users));
    Json wb = base;
    wb["max_collinear"] = collinear;
    sink.add("usage_indep.bounds",
             static_cast<std::int64_t>(users.size()) <= choose(static_cast<int>(k), 2) && (users.empty() || collinear + 1 <= k),
             wb);

    // (k-2) factor lines of p*_A must cover X_l \ {A}
    Json found = Json::array();
    bool all = true;
    for (auto v : users) {
      const auto& factors = a.gc.nodes[v].lines;
      std::optional<std::vector<std::size_t>> hit;
      for_each_subset(factors.size(), k - 2, [&](const std::vector<std::size_t>& pick) {
        for (auto b : users) {
          if (b == v) continue;
          bool covered = false;
          for (auto f : pick) covered = covered || incident(factors[f], a.nodes[b]);
          if (!covered) return false;
        }
        hit = pick;
        return true;
      });
      all = all && hit.has_value();
      Json lines = Json::array();
      if (hit) {
        for (auto f : *hit) lines.push_back(to_json(factors[f]));
      }
      found.push_back(Json{{"node", v}, {"found", hit.has_value()}, {"lines", lines}});
    }
    Json wd = base;
    wd["divisors"] = found;
    sink.add("usage_indep.divisor", all, wd);
  }
  return sink.take();
}

/// Maximal-line counts of a GC_n set, and every node using some maximal line.
inline std::vector<TheoremVerdict> check_structure_theorems(const SetAnalysis& a, const CheckOptions& opts = {}) {
  detail::VerdictSink sink(a, "structure", opts);
  if (auto why = detail::gc_precondition(a, opts)) {
    sink.inapplicable("structure.gm", *why);
    return sink.take();
  }
  const std::size_t count = a.maximal.size();
  Json w{{"maximal_lines", count}};
  sink.add("structure.gm", count >= 1, w);
  sink.add("structure.three_maximal", count >= 3, w);
  sink.add("structure.at_most_n_plus_2", count <= static_cast<std::size_t>(a.degree()) + 2, w);
  Json lonely = Json::array();
  for (std::size_t v = 0; v < a.nodes.size(); ++v) {
    bool uses = false;
    for (auto m : a.maximal) uses = uses || detail::contains(a.usage[m].users, v);
    if (!uses) lonely.push_back(v);
  }
  sink.add("structure.node_uses_maximal", lonely.empty(), Json{{"nodes_without_maximal", lonely}});
  return sink.take();
}

/// Sum of the fundamental polynomials is 1 and p*_A(B) = delta_AB.
inline std::vector<TheoremVerdict> check_fundamental_duality(const SetAnalysis& a, const CheckOptions& opts = {}) {
  detail::VerdictSink sink(a, "fundamental", opts);
  if (auto why = detail::poised_precondition(a)) {
    sink.inapplicable("fundamental.partition_of_unity", *why);
    return sink.take();
  }
  Poly sum(a.degree());
  for (const auto& p : a.basis->fundamentals()) sum = sum + p;
  sink.add("fundamental.partition_of_unity", sum == Poly::constant(1), Json{{"sum", to_json(sum)}});
  Json bad = Json::array();
  for (std::size_t i = 0; i < a.nodes.size(); ++i) {
    for (std::size_t j = 0; j < a.nodes.size(); ++j) {
      const Rational v = poly_eval(a.basis->fundamental(i), a.nodes[j]);
      if (v != Rational(i == j ? 1 : 0)) bad.push_back(Json{{"a", i}, {"b", j}, {"value", to_json(v)}});
    }
  }
  sink.add("fundamental.duality", bad.empty(), Json{{"mismatches", bad}});
  return sink.take();
}

/// Maximal lines and products of two or three maximal lines are maximal curves (N_q empty,
/// X \ q poised of the complementary degree); a non-maximal line has a nonempty, essentially
/// (n-1)-dependent N_l.
inline std::vector<TheoremVerdict> check_maximal_curves(const SetAnalysis& a, const CheckOptions& opts = {}) {
  detail::VerdictSink sink(a, "maximal-curves", opts);
  if (auto why = detail::poised_precondition(a)) {
    sink.inapplicable("maximal_curves.line", *why);
    return sink.take();
  }
  const int n = a.degree();
  for (std::size_t r = 1; r <= std::min<std::size_t>(3, static_cast<std::size_t>(n)); ++r) {
    for_each_subset(a.maximal.size(), r, [&](const std::vector<std::size_t>& pick) {
      std::vector<Line> factors;
      Json lines = Json::array();
      for (auto p : pick) {
        factors.push_back(a.entry(a.maximal[p]).line);
        lines.push_back(to_json(factors.back()));
      }
      const auto rep = is_maximal_curve(*a.basis, factors);
      Json w = to_json(rep);
      w["lines"] = lines;
      const bool ok = rep.is_maximal && rep.n_q_empty && rep.complement_poised && rep.consistent;
      sink.add(r == 1 ? "maximal_curves.line" : (r == 2 ? "maximal_curves.conic" : "maximal_curves.cubic"), ok, w);
      return false;
    });
  }
  for (std::size_t li = 0; li < a.lines.entries().size(); ++li) {
    if (a.entry(li).k() == static_cast<std::size_t>(n) + 1) continue;
    const auto& n_l = a.usage[li].non_users_off_curve;
    Json w = detail::line_witness(a, li);
    w["n_l"] = n_l;
    sink.add("maximal_curves.non_maximal_line",
             !n_l.empty() && is_essentially_dependent(detail::pick(a.nodes, n_l), n - 1), w);
  }
  return sink.take();
}

/// At most one curve of degree n-1 passes through any N-4 nodes.
inline std::vector<TheoremVerdict> check_curve_uniqueness(const SetAnalysis& a, const CheckOptions& opts = {}) {
  detail::VerdictSink sink(a, "curve-uniqueness", opts);
  if (auto why = detail::poised_precondition(a)) {
    sink.inapplicable("curve_uniqueness.n_minus_4", *why);
    return sink.take();
  }
  if (a.degree() < 2) {
    sink.inapplicable("curve_uniqueness.n_minus_4", "degree below 2");
    return sink.take();
  }
  const auto scan = max_curve_nullity(a.nodes, 4, a.degree() - 1);
  sink.add("curve_uniqueness.n_minus_4", scan.max_nullity <= 1,
           Json{{"max_nullity", scan.max_nullity}, {"removed", scan.worst}, {"subsets", scan.subsets}});
  return sink.take();
}

struct MaximalCount {
  Line line;
  std::size_t count = 0;
  bool excluded = false;  // predicted zero
};

struct ConjectureRecord {
  Line line;
  std::size_t k = 0;
  std::size_t usage = 0;
  std::vector<int> s_candidates;  // every s >= 0 with C(s,2) = usage
  bool in_bounds = false;         // some candidate has 2k-n-1 <= s <= k
  std::vector<MaximalCount> per_maximal;
  bool consistent = false;  // some in-bounds s also matches every per-maximal count
};

struct ConjectureScan {
  bool applicable = false;
  std::string reason;
  std::vector<ConjectureRecord> records;

  std::size_t findings() const {
    std::size_t f = 0;
    for (const auto& r : records) f += r.consistent ? 0 : 1;
    return f;
  }
};

inline std::vector<int> binomial_roots(std::size_t usage) {
  std::vector<int> out;
  for (int s = 0; choose(s, 2) <= static_cast<std::int64_t>(usage); ++s) {
    if (choose(s, 2) == static_cast<std::int64_t>(usage)) out.push_back(s);
  }
  return out;
}

/// Records, never asserts, |X_l| = C(s,2) with 2k-n-1 <= s <= k and the per-maximal-line
/// counts for every k-node line. C(0,2) = C(1,2) = 0, so an unused line lists both s = 0, 1.
inline ConjectureScan check_conjecture(const SetAnalysis& a, const CheckOptions& opts = {}) {
  ConjectureScan scan;
  if (auto why = detail::gc_precondition(a, opts)) {
    scan.reason = *why;
    return scan;
  }
  scan.applicable = true;
  const int n = a.degree();
  for (std::size_t li = 0; li < a.lines.entries().size(); ++li) {
    ConjectureRecord r{a.entry(li).line, a.entry(li).k(), a.usage[li].users.size(), {}, false, {}, false};
    r.s_candidates = binomial_roots(r.usage);
    const int k = static_cast<int>(r.k);
    for (auto m : a.maximal) {
      if (m == li) continue;
      r.per_maximal.push_back(MaximalCount{a.entry(m).line, detail::count_common(a.entry(m).nodes, a.usage[li].users),
                                           detail::excluded_maximal(a, li, m)});
    }
    for (int s : r.s_candidates) {
      if (s < 2 * k - n - 1 || s > k) continue;
      r.in_bounds = true;
      bool match = true;
      for (const auto& pm : r.per_maximal) {
        const std::int64_t expect = pm.excluded ? 0 : s - 1;
        match = match && static_cast<std::int64_t>(pm.count) == expect;
      }
      r.consistent = r.consistent || match;
    }
    scan.records.push_back(std::move(r));
  }
  return scan;
}

inline Json to_json(const ConjectureRecord& r) {
  Json pm = Json::array();
  for (const auto& m : r.per_maximal) {
    pm.push_back(Json{{"maximal", to_json(m.line)}, {"count", m.count}, {"excluded", m.excluded}});
  }
  return Json{{"line", to_json(r.line)}, {"k", r.k},           {"usage", r.usage}, {"s_candidates", r.s_candidates},
              {"in_bounds", r.in_bounds}, {"per_maximal", pm}, {"consistent", r.consistent}};
}

inline Json to_json(const ConjectureScan& s) {
  Json records = Json::array();
  for (const auto& r : s.records) records.push_back(to_json(r));
  Json j{{"applicable", s.applicable}, {"records", records}, {"findings", s.findings()}};
  if (!s.applicable) j["reason"] = s.reason;
  return j;
}

/// Names accepted by run_check, in the order "all" runs them ("conjecture" is separate).
inline const std::vector<std::string>& verdict_checks() {
  static const std::vector<std::string> names{"nline",       "nline-poised",   "n1line",
                                              "usage-indep", "structure",      "fundamental",
                                              "maximal-curves", "curve-uniqueness"};
  return names;
}

inline std::vector<TheoremVerdict> run_check(const std::string& name, const SetAnalysis& a,
                                             const CheckOptions& opts = {}) {
  if (name == "nline") return check_nline_theorem(a, opts);
  if (name == "nline-poised") return check_nline_poised(a, opts);
  if (name == "n1line") return check_n_minus_1_line(a, opts);
  if (name == "usage-indep") return check_usage_independence(a, opts);
  if (name == "structure") return check_structure_theorems(a, opts);
  if (name == "fundamental") return check_fundamental_duality(a, opts);
  if (name == "maximal-curves") return check_maximal_curves(a, opts);
  if (name == "curve-uniqueness") return check_curve_uniqueness(a, opts);
  throw std::invalid_argument("unknown check '" + name + "'");
}

/// Expands "all" and validates names; keeps first-seen order without duplicates.
inline std::vector<std::string> expand_checks(const std::vector<std::string>& requested) {
  std::vector<std::string> out;
  auto push = [&](const std::string& s) {
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
  };
  for (const auto& r : requested) {
    if (r == "all") {
      for (const auto& c : verdict_checks()) push(c);
      push("conjecture");
    } else if (r == "conjecture" ||
               std::find(verdict_checks().begin(), verdict_checks().end(), r) != verdict_checks().end()) {
      push(r);
    } else {
      throw InputError("unknown check '" + r + "'");
    }
  }
  return out;
}

/// Re-runs the failing check on the set embedded in a fail witness; true iff the same
/// statement fails again on the same line.
inline bool reproduce(const TheoremVerdict& v) {
  if (v.status != VerdictStatus::fail) return false;
  const SetAnalysis a = analyze_set(nodeset_from_json(field(v.witness, "set")));
  CheckOptions opts;
  opts.assume_gm = v.witness.value("assume_gm", false);
  for (const auto& again : run_check(field(v.witness, "check").get<std::string>(), a, opts)) {
    if (again.statement_id != v.statement_id || again.status != VerdictStatus::fail) continue;
    if (v.witness.contains("line") && again.witness.value("line", Json()) != v.witness["line"]) continue;
    return true;
  }
  return false;
}

struct CorpusEntry {
  GeneratorConfig generator;
  std::size_t count = 1;
};

inline std::vector<CorpusEntry> corpus_from_json(const Json& config) {
  std::vector<CorpusEntry> out;
  if (!config.contains("corpus")) return out;
  const Json& arr = config.at("corpus");
  if (!arr.is_array()) throw InputError("'corpus' must be an array");
  for (const auto& e : arr) {
    std::vector<int> degrees;
    if (e.contains("degrees")) {
      for (const auto& d : e.at("degrees")) degrees.push_back(d.get<int>());
    } else {
      degrees.push_back(field(e, "degree").get<int>());
    }
    for (int d : degrees) {
      CorpusEntry c;
      c.generator.family = field(e, "family").get<std::string>();
      c.generator.degree = d;
      c.generator.seed = e.value("seed", std::uint64_t{0});
      c.generator.bound = e.value("bound", std::int64_t{10});
      c.generator.perturb = e.value("perturb", std::string("none"));
      c.count = e.value("count", std::size_t{1});
      out.push_back(c);
    }
  }
  return out;
}

/// Generates every corpus item, runs the selected checks and aggregates a report. Items are
/// processed in parallel and sorted by fingerprint (then generator) so output is deterministic.
inline Json corpus_run(const Json& config, unsigned threads = 0) {
  Json checks_json = config.value("checks", Json::array());
  if (!checks_json.is_array()) throw InputError("'checks' must be an array");
  std::vector<std::string> requested;
  for (const auto& c : checks_json) requested.push_back(c.get<std::string>());
  const auto checks = expand_checks(requested);
  CheckOptions opts;
  opts.assume_gm = config.value("assume_gm", false);

  struct Job {
    GeneratorConfig gen;
  };
  std::vector<Job> jobs;
  if (!checks.empty()) {
    for (const auto& c : corpus_from_json(config)) {
      for (std::size_t i = 0; i < c.count; ++i) {
        Job j{c.generator};
        j.gen.seed = c.generator.seed + i;
        jobs.push_back(j);
      }
    }
  }

  std::vector<Json> items(jobs.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      const auto& g = jobs[i].gen;
      Json item{{"family", g.family}, {"degree", g.degree}, {"seed", g.seed}, {"bound", g.bound},
                {"perturb", g.perturb}};
      try {
        const SetAnalysis a = analyze_set(generate(g));
        item["fingerprint"] = a.fingerprint;
        item["is_poised"] = a.poised;
        item["gc_status"] = a.poised ? to_string(a.gc.status) : "not_poised";
        Json verdicts = Json::array();
        for (const auto& c : checks) {
          if (c == "conjecture") {
            item["conjecture"] = to_json(check_conjecture(a, opts));
            continue;
          }
          for (const auto& v : run_check(c, a, opts)) verdicts.push_back(to_json(v));
        }
        item["verdicts"] = verdicts;
      } catch (const std::exception& e) {
        item["fingerprint"] = "";
        item["error"] = e.what();
      }
      items[i] = std::move(item);
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(jobs.size(), 1)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  std::sort(items.begin(), items.end(), [](const Json& x, const Json& y) {
    auto key = [](const Json& j) {
      return std::make_tuple(j["fingerprint"].get<std::string>(), j["family"].get<std::string>(),
                             j["degree"].get<int>(), j["seed"].get<std::uint64_t>(), j["perturb"].get<std::string>());
    };
    return key(x) < key(y);
  });

  std::size_t pass = 0, fail = 0, inapplicable = 0, findings = 0, errors = 0;
  Json by_statement = Json::object();
  for (const auto& item : items) {
    if (item.contains("error")) ++errors;
    for (const auto& v : item.value("verdicts", Json::array())) {
      const std::string s = v["status"].get<std::string>();
      (s == "pass" ? pass : s == "fail" ? fail : inapplicable) += 1;
      Json& counts = by_statement[v["statement_id"].get<std::string>()];
      if (counts.is_null()) counts = Json{{"pass", 0}, {"fail", 0}, {"inapplicable", 0}};
      counts[s] = counts[s].get<std::size_t>() + 1;
    }
    if (item.contains("conjecture")) findings += item["conjecture"]["findings"].get<std::size_t>();
  }
  Json cfg = config;
  cfg.erase("threads");
  return Json{{"config", cfg},
              {"items", items},
              {"summary",
               {{"pass", pass},
                {"fail", fail},
                {"inapplicable", inapplicable},
                {"findings", findings},
                {"items", items.size()},
                {"errors", errors},
                {"by_statement", by_statement}}}};
}

}  // namespace gcn
