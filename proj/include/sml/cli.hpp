#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sml/cdv.hpp"
#include "sml/constructions.hpp"
#include "sml/enumerate.hpp"
#include "sml/family.hpp"
#include "sml/graph6.hpp"
#include "sml/minors.hpp"
#include "sml/search.hpp"
#include "sml/spectral.hpp"

namespace sml::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

inline constexpr double kDefaultCliTolerance = 1e-10;

/// Named graphs: Kn, Ks,t, Cn, Pn, En, Petersen (case-sensitive).
inline std::optional<Graph> named_graph(const std::string& spec) {
  if (spec == "Petersen") return graphs::petersen();
  std::smatch m;
  static const std::regex bip(R"(K(\d+),(\d+))");
  static const std::regex single(R"(([KCPE])(\d+))");
  if (std::regex_match(spec, m, bip)) {
    const int s = std::stoi(m[1]), t = std::stoi(m[2]);
    if (s + t > kMaxVertices) throw DomainError("graph " + spec + " exceeds " + std::to_string(kMaxVertices) + " vertices");
    return graphs::complete_bipartite(s, t);
  }
  if (std::regex_match(spec, m, single)) {
    const int n = std::stoi(m[2]);
    if (n > kMaxVertices) throw DomainError("graph " + spec + " exceeds " + std::to_string(kMaxVertices) + " vertices");
    switch (spec[0]) {
      case 'K': return graphs::complete(n);
      case 'P': return graphs::path(n);
      case 'E': return Graph(n);
      default:
        if (n < 3) throw DomainError("cycles need at least 3 vertices");
        return graphs::cycle(n);
    }
  }
  return std::nullopt;
}

namespace detail {

struct Options {
  std::string family;
  int n = -1;
  int r = -1, s = -1, t = -1, m = -1;
  double tol = kDefaultCliTolerance;
  std::string format = "text";
  std::string output;
  std::string input;
  int threads = 0;
  std::string graph;
  std::string h;
  int n_max = kMaxInternalEnumeration;
};

inline std::string read_graph_text(const std::string& arg, std::istream& in) {
  if (arg != "-") return arg;
  std::string line;
  while (std::getline(in, line))
    if (line.find_first_not_of(" \t\r") != std::string::npos) return line;
  throw DomainError("no graph6 input on stdin");
}

inline Graph read_graph(const std::string& arg, std::istream& in) { return parse_graph6(read_graph_text(arg, in)); }

/// Named graph first, then graph6.
inline Graph read_graph_or_name(const std::string& arg, std::istream& in) {
  if (auto g = named_graph(arg)) return *g;
  return read_graph(arg, in);
}

inline void require_param(int value, const char* name, const std::string& family) {
  if (value < 0) throw CLI::ValidationError("--" + std::string(name), "required for --family " + family);
}

inline FamilySpec family_from(const Options& o) {
  if (o.family == "kr") {
    require_param(o.r, "r", o.family);
    return KrMinorFree{o.r};
  }
  if (o.family == "kst") {
    require_param(o.s, "s", o.family);
    require_param(o.t, "t", o.family);
    return KstMinorFree{o.s, o.t};
  }
  require_param(o.m, "m", o.family);
  return CdvAtMost{o.m};
}

inline void add_family_options(CLI::App* sub, Options& o) {
  sub->add_option("--family", o.family, "kr, kst or cdv")->required()->check(CLI::IsMember({"kr", "kst", "cdv"}));
  sub->add_option("--r", o.r, "clique minor size");
  sub->add_option("--s", o.s, "smaller side of K_{s,t}");
  sub->add_option("--t", o.t, "larger side of K_{s,t}");
  sub->add_option("--m", o.m, "Colin de Verdiere bound");
}

inline void add_format(CLI::App* sub, Options& o, bool csv) {
  auto* opt = sub->add_option("--format", o.format, "output format")->capture_default_str();
  if (csv)
    opt->check(CLI::IsMember({"text", "csv", "json"}));
  else
    opt->check(CLI::IsMember({"text", "json"}));
}

inline std::string yes_no(bool b) { return b ? "yes" : "no"; }

inline nlohmann::ordered_json number(double v) { return std::stod(format_number(v)); }

inline std::string join_vertices(VertexMask set) {
  std::string s;
  mask::for_each(set, [&](Vertex v) {
    if (!s.empty()) s += ' ';
    s += std::to_string(v);
  });
  return s;
}

// ---------------------------------------------------------------------------
// Subcommands. Each writes its report to `out`.

inline void cmd_construct(const Options& o, std::ostream& out) {
  ConstructionParams p;
  p.n = o.n;
  if (o.family == "kr") {
    require_param(o.r, "r", o.family);
    p.family = ConstructionFamily::kCliqueMinorFree;
    p.r = o.r;
  } else if (o.family == "kst") {
    require_param(o.s, "s", o.family);
    require_param(o.t, "t", o.family);
    p.family = ConstructionFamily::kBipartiteMinorFree;
    p.s = o.s;
    p.t = o.t;
  } else {
    require_param(o.m, "m", o.family);
    p.family = ConstructionFamily::kColinDeVerdiere;
    p.m = o.m;
  }
  const Graph g = construct(p);
  if (o.format == "json") {
    nlohmann::ordered_json j;
    j["graph6"] = encode_graph6(g);
    j["n"] = g.order();
    j["edges"] = g.size();
    out << j.dump() << '\n';
  } else {
    out << encode_graph6(g) << '\n';
  }
}

inline void cmd_lambda(const Options& o, std::istream& in, std::ostream& out) {
  const Graph g = read_graph(o.graph, in);
  const EigenResult r = spectral_radius(g, o.tol);
  if (o.format == "json") {
    nlohmann::ordered_json j;
    j["lambda"] = number(r.lambda);
    nlohmann::ordered_json vec = nlohmann::ordered_json::array();
    for (double x : r.vector) vec.push_back(number(x));
    j["vector"] = vec;
    j["iterations"] = r.iterations;
    j["residual"] = r.residual;
    out << j.dump() << '\n';
  } else {
    out << format_number(r.lambda) << '\n';
  }
}

inline void cmd_minor(const Options& o, std::istream& in, std::ostream& out) {
  const Graph h = read_graph_or_name(o.h, in);
  const Graph g = read_graph(o.graph, in);
  const auto w = has_minor(h, g);
  if (o.format == "json") {
    nlohmann::ordered_json j;
    j["minor"] = w.has_value();
    if (w) {
      nlohmann::ordered_json sets = nlohmann::ordered_json::array();
      for (VertexMask b : w->branch_sets) sets.push_back(mask::to_vector(b));
      j["branch_sets"] = sets;
    }
    out << j.dump() << '\n';
    return;
  }
  out << yes_no(w.has_value()) << '\n';
  if (w)
    for (std::size_t i = 0; i < w->branch_sets.size(); ++i) out << i << ": " << join_vertices(w->branch_sets[i]) << '\n';
}

inline void cmd_mu(const Options& o, std::istream& in, std::ostream& out) {
  const MuClass c = classify_mu(read_graph(o.graph, in));
  if (o.format == "json") {
    nlohmann::ordered_json j;
    j["class"] = short_label(c);
    j["description"] = to_string(c);
    out << j.dump() << '\n';
  } else {
    out << to_string(c) << '\n';
  }
}

inline void cmd_bound(const Options& o, std::ostream& out) {
  const FamilySpec f = family_from(o);
  validate(f);
  double value = 0.0;
  std::string kind;
  if (auto* kr = std::get_if<KrMinorFree>(&f)) {
    value = kr_lambda_lower_bound(o.n, kr->r);
    kind = "lower";
  } else if (auto* kst = std::get_if<KstMinorFree>(&f)) {
    value = kst_lambda_bound(o.n, kst->s, kst->t);
    kind = "upper";
  } else {
    throw DomainError("no closed-form spectral bound for the cdv family; use construct and lambda");
  }
  if (o.format == "json") {
    nlohmann::ordered_json j;
    j["family"] = family_tag(f);
    j["params"] = family_params(f);
    j["n"] = o.n;
    j["kind"] = kind;
    j["bound"] = number(value);
    out << j.dump() << '\n';
  } else {
    out << format_number(value) << '\n';
  }
}

inline void emit_reports(const std::vector<SearchReport>& reports, const std::string& format, std::ostream& out) {
  if (format == "csv") {
    out << csv_header() << '\n';
    for (const auto& r : reports) out << to_csv_row(r) << '\n';
  } else if (format == "json") {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : reports) arr.push_back(to_json(r));
    out << arr.dump(2) << '\n';
  } else {
    for (const auto& r : reports) {
      out << "n = " << r.n << ", family " << family_tag(r.family) << " (" << family_params(r.family) << ")\n";
      out << "  graphs scanned:      " << r.graphs_scanned << " (" << r.members << " members)\n";
      out << "  max lambda:          " << format_number(r.max_lambda) << " at " << r.argmax_graph6 << '\n';
      out << "  max edges:           " << r.max_edges << " at " << r.edge_argmax_graph6 << '\n';
      if (r.construction_lambda) {
        out << "  construction:        " << r.construction_graph6 << ", lambda "
            << format_number(*r.construction_lambda) << ", " << *r.construction_edges << " edges, member "
            << yes_no(r.construction_member) << '\n';
        out << "  lambda match:        " << yes_no(r.lambda_match) << '\n';
      } else {
        out << "  construction:        none at this n\n";
      }
      if (std::holds_alternative<KstMinorFree>(r.family))
        out << "  bound violations:    " << r.bound_violations << '\n';
    }
  }
}

inline void cmd_search(const Options& o, std::ostream& out) {
  const FamilySpec f = family_from(o);
  validate(f);
  const int threads = o.threads > 0 ? o.threads : default_parallelism();
  std::vector<SearchReport> reports;
  if (!o.input.empty()) {
    const std::vector<Graph> all = ingest_graph6_stream(std::filesystem::path(o.input));
    if (all.empty()) throw DomainError("input stream " + o.input + " contains no graphs");
    const int n = o.n >= 0 ? o.n : all.front().order();
    reports.push_back(scan_family(f, n, all, threads));
  } else {
    if (o.n < 0) throw CLI::ValidationError("--n", "required without --input");
    reports.push_back(search_max_lambda(f, o.n, threads));
  }
  emit_reports(reports, o.format, out);
}

inline void cmd_verify(const Options& o, std::istream& in, std::ostream& out) {
  const FamilySpec f = family_from(o);
  const Graph g = read_graph(o.graph, in);
  const MembershipReport r = verify_membership(g, f);
  if (o.format == "json") {
    nlohmann::ordered_json j;
    j["member"] = r.member;
    j["lambda"] = number(r.lambda);
    j["bound"] = r.bound ? number(*r.bound) : nlohmann::ordered_json();
    j["apex_count"] = r.apex_count;
    j["residual"] = to_string(r.residual);
    if (r.equality_structure) j["equality_structure"] = *r.equality_structure;
    if (r.congruent) j["congruent"] = *r.congruent;
    out << j.dump() << '\n';
    return;
  }
  out << "member: " << yes_no(r.member) << '\n';
  out << "lambda: " << format_number(r.lambda) << '\n';
  if (r.bound)
    out << (std::holds_alternative<KrMinorFree>(f) ? "lower bound: " : "upper bound: ") << format_number(*r.bound)
        << '\n';
  out << "apex vertices: " << r.apex_count << '\n';
  out << "residual: " << to_string(r.residual) << '\n';
  if (r.equality_structure) out << "equality structure: " << yes_no(*r.equality_structure) << '\n';
  if (r.congruent) out << "n = s-1 (mod t): " << yes_no(*r.congruent) << '\n';
}

inline void cmd_dy(const Options& o, std::istream& in, std::ostream& out) {
  const auto closure = delta_y_closure(read_graph_or_name(o.graph, in));
  if (o.format == "json") {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const Graph& g : closure)
      arr.push_back({{"graph6", encode_graph6(g)}, {"n", g.order()}, {"edges", g.size()}});
    out << arr.dump() << '\n';
    return;
  }
  for (const Graph& g : closure) out << encode_graph6(g) << '\n';
}

struct ProblemRow {
  int n = 0;
  int m = 0;
  long graphs = 0;
  long violations = 0;
};

inline void cmd_report_problems(const Options& o, std::ostream& out) {
  std::vector<Graph> all;
  if (!o.input.empty()) {
    all = ingest_graph6_stream(std::filesystem::path(o.input));
  } else {
    if (o.n_max > kMaxInternalEnumeration)
      throw DomainError("internal enumeration stops at n = " + std::to_string(kMaxInternalEnumeration));
    for (int n = 1; n <= o.n_max; ++n)
      for (Graph& g : enumerate_graphs(n)) all.push_back(std::move(g));
  }
  std::map<std::pair<int, int>, ProblemRow> p1;
  std::map<int, ProblemRow> p2;
  for (const Graph& g : all) {
    const MuClass c = classify_mu(g);
    for (int m = 1; m <= 4; ++m) {
      if (!c.at_most(m)) continue;
      auto& row = p1[{g.order(), m}];
      row.n = g.order();
      row.m = m;
      ++row.graphs;
      if (!check_problem1(g, m)) ++row.violations;
    }
    if (c.at_most(4) && is_bipartite(g)) {
      auto& row = p2[g.order()];
      row.n = g.order();
      ++row.graphs;
      if (!check_problem2(g)) ++row.violations;
    }
  }
  if (o.format == "json") {
    nlohmann::ordered_json j;
    j["problem1"] = nlohmann::ordered_json::array();
    for (const auto& [key, row] : p1)
      j["problem1"].push_back({{"n", row.n}, {"m", row.m}, {"graphs", row.graphs}, {"violations", row.violations}});
    j["problem2"] = nlohmann::ordered_json::array();
    for (const auto& [key, row] : p2)
      j["problem2"].push_back({{"n", row.n}, {"graphs", row.graphs}, {"violations", row.violations}});
    out << j.dump(2) << '\n';
  } else if (o.format == "csv") {
    out << "problem,n,m,graphs,violations\n";
    for (const auto& [key, row] : p1)
      out << "1," << row.n << ',' << row.m << ',' << row.graphs << ',' << row.violations << '\n';
    for (const auto& [key, row] : p2) out << "2," << row.n << ",," << row.graphs << ',' << row.violations << '\n';
  } else {
    out << "check_problem1: e <= m n - m(m+1)/2 for class <= m\n";
    out << "   n  m   graphs  violations\n";
    for (const auto& [key, row] : p1) {
      char buf[80];
      std::snprintf(buf, sizeof buf, "%4d %2d %8ld %11ld\n", row.n, row.m, row.graphs, row.violations);
      out << buf;
    }
    out << "check_problem2: e <= 3n - 9 for bipartite linkless graphs\n";
    out << "   n   graphs  violations\n";
    for (const auto& [key, row] : p2) {
      char buf[80];
      std::snprintf(buf, sizeof buf, "%4d %8ld %11ld\n", row.n, row.graphs, row.violations);
      out << buf;
    }
  }
}

}  // namespace detail

/// Runs the command line. Returns 0 on success, 1 on a domain error and 2 on
/// a usage error.
inline int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  using detail::Options;
  Options o;
  CLI::App app{"Spectral extremal problems for minor-closed graph families"};
  app.set_help_flag("--help", "print this help");
  app.require_subcommand(1);

  auto* construct_cmd = app.add_subcommand("construct", "print the extremal construction as graph6");
  detail::add_family_options(construct_cmd, o);
  construct_cmd->add_option("--n", o.n, "number of vertices")->required();
  detail::add_format(construct_cmd, o, false);

  auto* lambda_cmd = app.add_subcommand("lambda", "spectral radius of a graph");
  lambda_cmd->add_option("graph", o.graph, "graph6 string or - for stdin")->required();
  lambda_cmd->add_option("--tol", o.tol, "residual tolerance")->capture_default_str();
  detail::add_format(lambda_cmd, o, false);

  auto* minor_cmd = app.add_subcommand("minor", "test whether H is a minor of G");
  minor_cmd->add_option("--h", o.h, "H as Kn, Ks,t, Cn, Pn, En, Petersen or graph6")->required();
  minor_cmd->add_option("graph", o.graph, "graph6 string or - for stdin")->required();
  detail::add_format(minor_cmd, o, false);

  auto* mu_cmd = app.add_subcommand("mu", "Colin de Verdiere class");
  mu_cmd->add_option("graph", o.graph, "graph6 string or - for stdin")->required();
  detail::add_format(mu_cmd, o, false);

  auto* bound_cmd = app.add_subcommand("bound", "closed-form spectral bound");
  detail::add_family_options(bound_cmd, o);
  bound_cmd->add_option("--n", o.n, "number of vertices")->required();
  detail::add_format(bound_cmd, o, false);

  auto* search_cmd = app.add_subcommand("search", "exhaustive extremal search");
  detail::add_family_options(search_cmd, o);
  search_cmd->add_option("--n", o.n, "number of vertices (at most 7 without --input)");
  search_cmd->add_option("--input", o.input, "graph6 stream file");
  search_cmd->add_option("--threads", o.threads, "worker threads (default: SML_THREADS or all cores)");
  search_cmd->add_option("--output", o.output, "write the report to a file");
  detail::add_format(search_cmd, o, true);

  auto* verify_cmd = app.add_subcommand("verify", "family membership and equality structure");
  detail::add_family_options(verify_cmd, o);
  verify_cmd->add_option("graph", o.graph, "graph6 string or - for stdin")->required();
  detail::add_format(verify_cmd, o, false);

  auto* dy_cmd = app.add_subcommand("dy", "delta-wye closure of a graph");
  dy_cmd->add_option("graph", o.graph, "named graph, graph6 string or - for stdin")->required();
  detail::add_format(dy_cmd, o, false);

  auto* problems_cmd = app.add_subcommand("report-problems", "edge-count problems over an enumeration");
  problems_cmd->add_option("--n-max", o.n_max, "enumerate n = 1..n-max")->capture_default_str();
  problems_cmd->add_option("--input", o.input, "graph6 stream file instead of the enumeration");
  problems_cmd->add_option("--output", o.output, "write the report to a file");
  detail::add_format(problems_cmd, o, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  std::ostringstream buffer;
  try {
    if (construct_cmd->parsed()) detail::cmd_construct(o, buffer);
    else if (lambda_cmd->parsed()) detail::cmd_lambda(o, in, buffer);
    else if (minor_cmd->parsed()) detail::cmd_minor(o, in, buffer);
    else if (mu_cmd->parsed()) detail::cmd_mu(o, in, buffer);
    else if (bound_cmd->parsed()) detail::cmd_bound(o, buffer);
    else if (search_cmd->parsed()) detail::cmd_search(o, buffer);
    else if (verify_cmd->parsed()) detail::cmd_verify(o, in, buffer);
    else if (dy_cmd->parsed()) detail::cmd_dy(o, in, buffer);
    else detail::cmd_report_problems(o, buffer);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }

  if (!o.output.empty()) {
    std::ofstream file(o.output, std::ios::binary);
    if (!(file << buffer.str())) {
      err << "error: cannot write " << o.output << '\n';
      return kExitDomain;
    }
  } else {
    out << buffer.str();
  }
  return kExitOk;
}

}  // namespace sml::cli
