#include "rvss/cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "rvss/comparator.hpp"
#include "rvss/errors.hpp"
#include "rvss/report.hpp"
#include "rvss/service.hpp"

namespace rvss {

namespace {

std::string format_weight(double w) {
  auto s = fmt::format("{}", round_to(w, 6));
  if (s.find('.') == std::string::npos) s += ".0";
  return s;
}

int report_vector_error(const VectorError& e, std::ostream& err) {
  err << fmt::format("error: {}: {} (token: {})\n", to_string(e.code()), e.what(), e.token());
  return kExitDomainError;
}

int cmd_score(const std::string& text, bool as_json, bool with_subscores, std::ostream& out,
              std::ostream& err) {
  try {
    const auto vector = parse(text);
    if (as_json) {
      out << score_report(vector, with_subscores).dump(2) << "\n";
      return kExitOk;
    }
    const auto r = score(vector);
    out << serialize(vector) << "\n";
    out << fmt::format("{:<14} {:>4.1f}  {}\n", "Base", r.scores.base, to_string(r.severities.base));
    out << fmt::format("{:<14} {:>4.1f}  {}\n", "Temporal", r.scores.temporal,
                       to_string(r.severities.temporal));
    out << fmt::format("{:<14} {:>4.1f}  {}\n", "Environmental", r.scores.environmental,
                       to_string(r.severities.environmental));
    if (with_subscores) {
      const auto& s = r.subscores;
      out << fmt::format("{:<16} {:.6f}\n", "Exploitability", s.exploitability);
      out << fmt::format("{:<16} {:.6f}\n", "ISC base", s.isc_base);
      out << fmt::format("{:<16} {:.6f}\n", "Impact", s.impact);
      if (s.m_exploitability) out << fmt::format("{:<16} {:.6f}\n", "M.Exploitability", *s.m_exploitability);
      if (s.isc_modified) out << fmt::format("{:<16} {:.6f}\n", "ISC modified", *s.isc_modified);
      if (s.m_impact) out << fmt::format("{:<16} {:.6f}\n", "M.Impact", *s.m_impact);
    }
    return kExitOk;
  } catch (const VectorError& e) {
    return report_vector_error(e, err);
  }
}

std::string assignment_weight(const ParsedVector& v, const Assignment& a) {
  if (a.key == "S" || a.key == "MS") return "-";
  if (const auto* av = std::get_if<CompositeAV>(&a.value)) return format_weight(av->weight());
  const auto& code = std::get<std::string>(a.value);
  bool changed = v.code_or_default("S") == "C";
  if (a.key == "MPR") {
    const auto ms = v.code_or_default("MS");
    changed = ms == "X" ? changed : ms == "C";
  }
  return format_weight(Catalog::get(v.scheme()).weight(a.key, code, changed));
}

std::string assignment_detail(const Assignment& a) {
  const auto* av = std::get_if<CompositeAV>(&a.value);
  if (av == nullptr) return {};
  if (av->local) return "local";
  std::string out;
  if (av->network) out += fmt::format("network={}", to_code(*av->network));
  if (av->physical) out += fmt::format("{}physical={}", out.empty() ? "" : " ", to_code(*av->physical));
  return out;
}

int cmd_parse(const std::string& text, bool canonical, std::ostream& out, std::ostream& err) {
  try {
    const auto vector = parse(text);
    if (canonical) {
      out << serialize(vector) << "\n";
      return kExitOk;
    }
    out << "Scheme:    " << scheme_id(vector.scheme()) << "\n";
    out << "Canonical: " << serialize(vector) << "\n";
    out << fmt::format("{:<5}{:<7}{:<10}{}\n", "KEY", "VALUE", "WEIGHT", "DETAIL");
    for (const auto& a : vector.assignments()) {
      const auto line = fmt::format("{:<5}{:<7}{:<10}{}", a.key, value_text(a.value),
                                    assignment_weight(vector, a), assignment_detail(a));
      out << line.substr(0, line.find_last_not_of(' ') + 1) << "\n";
    }
    return kExitOk;
  } catch (const VectorError& e) {
    return report_vector_error(e, err);
  }
}

void print_diagnostics(const std::vector<Diagnostic>& diagnostics, std::ostream& err) {
  for (const auto& d : diagnostics) {
    err << fmt::format("warning: line {}{}: {}: {}\n", d.line, d.id.empty() ? "" : " (" + d.id + ")",
                       d.code, d.message);
  }
}

int cmd_compare(const std::string& input, bool builtin, const std::string& format_name,
                const std::string& input_format_name, const std::string& out_path,
                std::ostream& out, std::ostream& err) {
  std::vector<VulnRecord> records;
  if (builtin) {
    records = builtin_corpus();
  } else {
    std::optional<InputFormat> format;
    if (input_format_name == "jsonl") format = InputFormat::JsonLines;
    else if (input_format_name == "csv") format = InputFormat::Csv;
    else format = input_format_from_path(input);
    if (!format) {
      err << "error: cannot infer input format of '" << input << "'; pass --input-format\n";
      return kExitUsage;
    }
    try {
      auto loaded = load_records(std::filesystem::path(input), *format);
      print_diagnostics(loaded.diagnostics, err);
      records = std::move(loaded.records);
    } catch (const IoError& e) {
      err << "error: " << e.what() << "\n";
      return kExitIo;
    } catch (const EmptyCorpusError& e) {
      print_diagnostics(e.diagnostics(), err);
      err << "error: EmptyCorpus: " << e.what() << "\n";
      return kExitDomainError;
    }
  }

  const auto result = compare(records);
  print_diagnostics(result.diagnostics, err);

  const auto format = format_name == "csv"    ? ReportFormat::Csv
                      : format_name == "json" ? ReportFormat::Json
                                              : ReportFormat::Markdown;
  const auto report = emit_report(result.rows, format);
  if (out_path.empty()) {
    out << report;
    return kExitOk;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!(file << report)) {
    err << "error: cannot write '" << out_path << "'\n";
    return kExitIo;
  }
  return kExitOk;
}

std::string describe_values(const MetricDefinition& m) {
  std::string out;
  for (const auto& v : m.values) {
    if (!out.empty()) out += "  ";
    out += fmt::format("{}={}", v.code, format_weight(v.weight));
    if (v.weight_scope_changed) out += fmt::format(" ({} changed)", format_weight(*v.weight_scope_changed));
    for (const auto& alias : v.aliases) out += fmt::format(" (alias {})", alias);
  }
  return out;
}

int cmd_catalog(const std::string& name, bool as_json, std::ostream& out) {
  const auto scheme = *scheme_from_short_name(name);
  if (as_json) {
    out << catalog_export(scheme).dump(2) << "\n";
    return kExitOk;
  }
  out << scheme_id(scheme) << " (" << scheme_prefix(scheme) << ")\n";
  for (const auto& m : list_metrics(scheme)) {
    const auto group = m.subgroup == Subgroup::None
                           ? std::string(to_string(m.group))
                           : fmt::format("{}/{}", to_string(m.group), to_string(m.subgroup));
    out << fmt::format("{:<4} {:<30} {:<28} {:<9} {}\n", m.key, m.name, group,
                       m.mandatory ? "mandatory" : "optional", describe_values(m));
  }
  if (scheme == Scheme::Rvss10) {
    std::string combos;
    for (const auto& av : all_attack_vectors()) {
      if (av.network && av.physical) {
        combos += fmt::format("{}{}={}", combos.empty() ? "" : "  ", av.to_string(),
                              format_weight(av.weight()));
      }
    }
    out << "AV/MAV combinations: " << combos << "\n";
  }
  return kExitOk;
}

int cmd_serve(const std::string& addr, const std::string& ui_dir, const std::string& cors,
              std::ostream& out, std::ostream& err) {
  auto options = options_from_env();
  if (!addr.empty()) {
    const auto parsed = parse_address(addr);
    if (!parsed) {
      err << "error: bad address '" << addr << "' (expected host:port)\n";
      return kExitUsage;
    }
    options.host = parsed->host;
    options.port = parsed->port;
  }
  if (!ui_dir.empty()) options.ui_dir = ui_dir;
  if (!cors.empty()) options.cors_origin = cors;

  ScoreService service(options);
  const int port = service.bind();
  if (port < 0) {
    err << "error: cannot bind " << options.host << ":" << options.port << "\n";
    return kExitIo;
  }
  out << "listening on http://" << options.host << ":" << port << std::endl;
  return service.listen() ? kExitOk : kExitIo;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Score, parse and compare CVSS v3.0 and RVSS v1.0 vulnerability vectors", "rvss"};
  app.require_subcommand(1);

  std::string vector_text;
  bool as_json = false;
  bool with_subscores = false;
  auto* score = app.add_subcommand("score", "Score a vector");
  score->add_option("vector", vector_text, "Vector string")->required();
  score->add_flag("--json", as_json, "Emit the JSON score report");
  score->add_flag("--subscores", with_subscores, "Include sub-scores");

  bool canonical = false;
  auto* parse_cmd = app.add_subcommand("parse", "Decode a vector into its assignments");
  parse_cmd->add_option("vector", vector_text, "Vector string")->required();
  parse_cmd->add_flag("--canonical", canonical, "Print only the canonical vector string");

  std::string input;
  bool builtin = false;
  std::string format = "md";
  std::string input_format;
  std::string out_path;
  auto* compare_cmd = app.add_subcommand("compare", "Score a corpus under both schemes");
  compare_cmd->add_option("input", input, "Corpus file (.jsonl or .csv)");
  compare_cmd->add_flag("--builtin", builtin, "Use the built-in reference corpus");
  compare_cmd->add_option("--format", format, "Report format")
      ->check(CLI::IsMember({"md", "csv", "json"}));
  compare_cmd->add_option("--input-format", input_format, "Corpus format override")
      ->check(CLI::IsMember({"jsonl", "csv"}));
  compare_cmd->add_option("--out", out_path, "Write the report to a file");

  std::string scheme_name;
  auto* catalog = app.add_subcommand("catalog", "List a scheme's metrics and weights");
  catalog->add_option("scheme", scheme_name, "cvss3 or rvss1")
      ->required()
      ->check(CLI::IsMember({"cvss3", "rvss1"}));
  catalog->add_flag("--json", as_json, "Emit the catalog export document");

  std::string addr;
  std::string ui_dir;
  std::string cors;
  auto* serve = app.add_subcommand("serve", "Run the HTTP API");
  serve->add_option("--addr", addr, "host:port (default $SERVE_ADDR or 127.0.0.1:8315)");
  serve->add_option("--ui-dir", ui_dir, "Directory with calculator assets to serve under /");
  serve->add_option("--cors-origin", cors, "Allowed cross-origin for browser clients");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (*compare_cmd && builtin == !input.empty()) {
      throw CLI::ValidationError("compare", "give exactly one of an input file or --builtin");
    }
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success) ? kExitOk : kExitUsage;
  }

  if (*score) return cmd_score(vector_text, as_json, with_subscores, out, err);
  if (*parse_cmd) return cmd_parse(vector_text, canonical, out, err);
  if (*compare_cmd) return cmd_compare(input, builtin, format, input_format, out_path, out, err);
  if (*catalog) return cmd_catalog(scheme_name, as_json, out);
  return cmd_serve(addr, ui_dir, cors, out, err);
}

}  // namespace rvss
