#pragma once

#include <gcn/constructions.hpp>
#include <gcn/harness.hpp>
#include <gcn/io.hpp>
#include <gcn/svg.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace gcn {

namespace cli {

inline constexpr int kOk = 0;
inline constexpr int kFinding = 1;
inline constexpr int kUsage = 2;

inline std::string read_text(const std::string& path) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(in), {});
}

inline void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << text)) throw InputError("cannot write '" + path + "'");
}

inline NodeSet read_nodeset(const std::string& path) {
  NodeSet X = nodeset_from_json(parse_json_text(read_text(path)));
  if (X.degree() < 1) throw InputError("degree must be >= 1");
  return X;
}

inline Line parse_line_flag(const std::string& s) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  for (std::string p; std::getline(ss, p, ',');) parts.push_back(p);
  if (parts.size() != 3) throw InputError("--line expects a,b,c");
  try {
    return Line::from_rational(parse_rational(parts[0]), parse_rational(parts[1]), parse_rational(parts[2]));
  } catch (const std::exception& e) {
    throw InputError(std::string("--line: ") + e.what());
  }
}

}  // namespace cli

/// Entry point of the gcn tool. Exit codes: 0 all verdicts pass or inapplicable,
/// 1 some verdict failed, 2 usage or input error.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app("Poised and GC_n planar node sets: generation, analysis and theorem checks", "gcn");
  app.require_subcommand(1, 1);

  GeneratorConfig gen;
  std::string lines_path, gen_out;
  auto* generate_cmd = app.add_subcommand("generate", "Write a generated node set as JSON");
  generate_cmd->add_option("--family", gen.family, "Generator family")
      ->required()
      ->check(CLI::IsMember(generator_families()));
  generate_cmd->add_option("--degree", gen.degree, "Interpolation degree n")->required()->check(CLI::Range(1, 64));
  generate_cmd->add_option("--seed", gen.seed, "Random seed");
  generate_cmd->add_option("--bound", gen.bound, "Height bound of random rationals")->check(CLI::Range(1, 1000000));
  generate_cmd->add_option("--perturb", gen.perturb, "none | affine | projective")
      ->check(CLI::IsMember({"none", "affine", "projective"}));
  generate_cmd->add_option("--lines", lines_path, "JSON file of generating lines");
  generate_cmd->add_option("-o,--output", gen_out, "Output file (default stdout)");

  std::string analyze_in, analyze_out, svg_path, query_line;
  auto* analyze_cmd = app.add_subcommand("analyze", "Full analysis report of a node set");
  analyze_cmd->add_option("input", analyze_in, "NodeSet JSON file ('-' for stdin)")->required();
  analyze_cmd->add_option("-o,--output", analyze_out, "Report file (default stdout)");
  analyze_cmd->add_option("--svg", svg_path, "Also write an incidence diagram");
  analyze_cmd->add_option("--line", query_line, "Line a,b,c to highlight in the diagram");

  std::string verify_in, verify_out;
  std::vector<std::string> verify_checks;
  bool assume_gm = false;
  auto* verify_cmd = app.add_subcommand("verify", "Run theorem checks on a node set");
  verify_cmd->add_option("input", verify_in, "NodeSet JSON file ('-' for stdin)")->required();
  std::vector<std::string> check_names = verdict_checks();
  check_names.push_back("conjecture");
  check_names.push_back("all");
  verify_cmd->add_option("--check", verify_checks, "Check name (repeatable)")
      ->required()
      ->check(CLI::IsMember(check_names));
  verify_cmd->add_flag("--assume-gm", assume_gm, "Run GC-only checks above degree 5");
  verify_cmd->add_option("-o,--output", verify_out, "Report file (default stdout)");

  std::string config_path, scan_out;
  unsigned threads = 0;
  auto* scan_cmd = app.add_subcommand("scan", "Run checks over a generated corpus");
  scan_cmd->add_option("--config", config_path, "Corpus configuration JSON")->required();
  scan_cmd->add_option("-o,--output", scan_out, "Report file")->required();
  scan_cmd->add_option("--threads", threads, "Worker threads (default: hardware concurrency)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return cli::kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return cli::kOk;
  } catch (const CLI::ParseError& e) {
    err << "gcn: " << e.what() << "\n";
    return cli::kUsage;
  }

  try {
    if (generate_cmd->parsed()) {
      std::optional<std::vector<Line>> lines;
      if (!lines_path.empty()) lines = lines_from_json(parse_json_text(cli::read_text(lines_path)));
      cli::write_text(gen_out, to_json(generate(gen, lines)).dump(2) + "\n", out);
      return cli::kOk;
    }

    if (analyze_cmd->parsed()) {
      const SetAnalysis a = analyze_set(cli::read_nodeset(analyze_in));
      std::optional<Line> query;
      if (!query_line.empty()) query = cli::parse_line_flag(query_line);
      cli::write_text(analyze_out, analysis_report(a).dump(2) + "\n", out);
      if (!svg_path.empty()) {
        std::vector<Line> maximal;
        for (auto i : a.maximal) maximal.push_back(a.entry(i).line);
        cli::write_text(svg_path, incidence_svg(a.nodes, maximal, query), out);
      }
      return cli::kOk;
    }

    if (verify_cmd->parsed()) {
      const SetAnalysis a = analyze_set(cli::read_nodeset(verify_in));
      CheckOptions opts;
      opts.assume_gm = assume_gm;
      const auto checks = expand_checks(verify_checks);
      Json verdicts = Json::array();
      std::size_t pass = 0, fail = 0, inapplicable = 0;
      Json report{{"fingerprint", a.fingerprint}, {"checks", checks}};
      for (const auto& c : checks) {
        if (c == "conjecture") {
          report["conjecture"] = to_json(check_conjecture(a, opts));
          continue;
        }
        for (const auto& v : run_check(c, a, opts)) {
          (v.status == VerdictStatus::pass ? pass : v.status == VerdictStatus::fail ? fail : inapplicable) += 1;
          verdicts.push_back(to_json(v));
        }
      }
      report["verdicts"] = verdicts;
      report["summary"] = Json{{"pass", pass},
                               {"fail", fail},
                               {"inapplicable", inapplicable},
                               {"findings", report.contains("conjecture") ? report["conjecture"]["findings"] : Json(0)}};
      cli::write_text(verify_out, report.dump(2) + "\n", out);
      return fail > 0 ? cli::kFinding : cli::kOk;
    }

    if (scan_cmd->parsed()) {
      const Json config = parse_json_text(cli::read_text(config_path));
      if (!config.is_object()) throw InputError("config must be a JSON object");
      const Json report = corpus_run(config, threads);
      cli::write_text(scan_out, report.dump(2) + "\n", out);
      return report["summary"]["fail"].get<std::size_t>() > 0 ? cli::kFinding : cli::kOk;
    }
  } catch (const Json::exception& e) {
    err << "gcn: bad input: " << e.what() << "\n";
    return cli::kUsage;
  } catch (const std::exception& e) {
    err << "gcn: " << e.what() << "\n";
    return cli::kUsage;
  }
  return cli::kUsage;
}

}  // namespace gcn
