#include "totcheck/driver.hpp"

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <thread>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "totcheck/eval.hpp"
#include "totcheck/surface.hpp"

namespace totcheck {

namespace {

void collect_funs(const Term& u, std::set<std::string>& out) {
  if (u.kind == Term::Kind::Fun) out.insert(u.name);
  for (const auto& a : u.args) collect_funs(a, out);
}

std::string join(const std::vector<std::string>& xs, const char* sep) {
  std::string s;
  for (size_t i = 0; i < xs.size(); ++i) s += (i ? sep : "") + xs[i];
  return s;
}

void decide(GroupReport& r, const DefGroup& g, const CheckOptions& opts) {
  try {
    TotalityResult t = decide_totality(g, opts.bound_weight, opts.bound_depth, opts.max_edges);
    r.verdict = t.verdict;
    r.reason = t.reason;
    r.evidence = t.evidence;
    r.graph = std::move(t.graph);
    r.closure = std::move(t.closure);
  } catch (const ResourceError& e) {
    r.verdict = Verdict::Error;
    r.reason = e.message();
  }
}

}  // namespace

CheckReport check_source(std::string_view source, const CheckOptions& opts) {
  CheckReport rep;
  Program p = desugar(parse_program(source));
  TypeEnv env = validate_type_decls(p);
  rep.typed = TypedProgram{std::move(p), std::move(env)};
  auto& groups = rep.typed.program.def_groups;
  for (auto& g : groups) infer_group(g, rep.typed.env);

  rep.groups.resize(groups.size());
  std::vector<bool> pending(groups.size(), true);
  for (size_t i = 0; i < groups.size(); ++i) {
    GroupReport& r = rep.groups[i];
    r.functions = groups[i].names();
    try {
      check_group_exhaustive(groups[i], rep.typed.env);
      check_group_full_application(groups[i]);
    } catch (const CoverageError& e) {
      r.verdict = Verdict::Error;
      r.reason = e.message();
      pending[i] = false;
    } catch (const HigherOrderError& e) {
      r.verdict = Verdict::Unsafe;
      r.reason = e.message();
      pending[i] = false;
    }
  }

  rep.game = annotate_program(rep.typed);

  std::vector<size_t> todo;
  for (size_t i = 0; i < groups.size(); ++i)
    if (pending[i]) todo.push_back(i);
  unsigned jobs = std::max(1u, std::min<unsigned>(opts.jobs, static_cast<unsigned>(todo.size())));
  if (jobs <= 1) {
    for (size_t i : todo) decide(rep.groups[i], groups[i], opts);
  } else {
    // Groups are independent until the dependency pass below; each worker
    // takes every `jobs`-th group.
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < jobs; ++w)
      pool.emplace_back([&, w] {
        for (size_t k = w; k < todo.size(); k += jobs) decide(rep.groups[todo[k]], groups[todo[k]], opts);
      });
    for (auto& t : pool) t.join();
  }

  std::map<std::string, size_t> owner;
  for (size_t i = 0; i < groups.size(); ++i) {
    for (const auto& n : rep.groups[i].functions) owner[n] = i;
    if (rep.groups[i].verdict != Verdict::Total) continue;
    std::set<std::string> used;
    for (const auto& c : groups[i].clauses) collect_funs(c.rhs, used);
    for (const auto& f : used) {
      auto it = owner.find(f);
      if (it == owner.end() || it->second == i || rep.groups[it->second].verdict == Verdict::Total) continue;
      rep.groups[i].verdict = Verdict::UnsafeByDependency;
      rep.groups[i].reason = fmt::format("uses `{}`, which is not total", f);
      break;
    }
  }
  return rep;
}

int exit_code(const std::vector<Verdict>& verdicts) {
  int code = 0;
  for (Verdict v : verdicts) {
    if (v == Verdict::Error) return 2;
    if (v != Verdict::Total) code = 1;
  }
  return code;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(fmt::format("cannot read `{}`", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string evaluate_expression(std::string_view source, std::string_view expr, int depth, long fuel) {
  Program p = desugar(parse_program(source));
  TypedProgram tp = infer_types(p, validate_type_decls(p));
  Term t = desugar_term(parse_term(expr), p);

  DefGroup probe;
  const std::string name = "expression";
  std::string fresh = name;
  for (int k = 0; tp.env.sigs.count(fresh); ++k) fresh = name + std::to_string(k);
  probe.functions.push_back(FunSig{fresh, std::nullopt, {}});
  probe.clauses.push_back(Clause{fresh, {}, t, {}});
  infer_group(probe, tp.env);

  Evaluator ev(p);
  return ev.force_depth(t, depth, fuel);
}

namespace {

using nlohmann::json;

std::vector<std::string> call_lines(const CallGraph& g) {
  std::vector<std::string> out;
  for (const auto& c : g.edges) out.push_back(to_string(c));
  return out;
}

int run_check(const std::string& file, const CheckOptions& opts, bool as_json, bool show_callgraph,
              const std::optional<std::string>& game_path, std::ostream& out, std::ostream& err) {
  CheckReport rep = check_source(read_file(file), opts);
  std::vector<Verdict> verdicts;
  for (const auto& g : rep.groups) verdicts.push_back(g.verdict);
  std::string dot = to_dot(rep.game);
  bool game_to_stdout = game_path && *game_path == "-";
  if (game_path && !game_to_stdout) {
    std::ofstream f(*game_path);
    if (!f) throw std::runtime_error(fmt::format("cannot write `{}`", *game_path));
    f << dot;
  }

  if (as_json) {
    json j;
    j["file"] = file;
    j["bounds"] = {{"B", opts.bound_weight}, {"D", opts.bound_depth}};
    j["groups"] = json::array();
    for (const auto& g : rep.groups) {
      json o{{"functions", g.functions}, {"verdict", to_string(g.verdict)}};
      if (!g.reason.empty()) o["reason"] = g.reason;
      if (g.evidence) o["evidence_loop"] = to_string(*g.evidence);
      j["groups"].push_back(o);
    }
    if (game_path) j["game"] = dot;
    if (show_callgraph) {
      json cg = json::array();
      for (const auto& g : rep.groups)
        cg.push_back({{"functions", g.functions}, {"calls", call_lines(g.graph)}, {"closure", call_lines(g.closure)}});
      j["callgraph"] = cg;
    }
    out << j.dump(2) << "\n";
  } else {
    for (const auto& g : rep.groups) {
      out << "val " << join(g.functions, ",") << ": " << to_string(g.verdict);
      if (g.verdict == Verdict::Unsafe && !g.reason.empty()) out << " (" << g.reason << ")";
      out << "\n";
      if (g.verdict == Verdict::Error) err << file << ": " << join(g.functions, ",") << ": " << g.reason << "\n";
    }
    if (show_callgraph) {
      for (const auto& g : rep.groups) {
        out << "# calls of " << join(g.functions, ",") << "\n";
        for (const auto& l : call_lines(g.graph)) out << l << "\n";
        out << "# closure of " << join(g.functions, ",") << "\n";
        for (const auto& l : call_lines(g.closure)) out << l << "\n";
      }
    }
    if (game_to_stdout) out << dot;
  }
  return exit_code(verdicts);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Totality checker for a small language with data and codata", "totcheck"};
  app.require_subcommand(1);

  CheckOptions opts;
  std::string file;
  bool as_json = false;
  bool show_callgraph = false;
  std::string game_path;
  CLI::App* check = app.add_subcommand("check", "decide totality of every definition group");
  check->add_option("FILE", file, "source file")->required();
  check->add_option("--bound-weight", opts.bound_weight, "weight bound B")->check(CLI::NonNegativeNumber);
  check->add_option("--bound-depth", opts.bound_depth, "depth bound D")->check(CLI::NonNegativeNumber);
  check->add_option("--max-edges", opts.max_edges, "ceiling on closure size");
  check->add_option("--jobs", opts.jobs, "worker threads")->check(CLI::PositiveNumber);
  check->add_flag("--json", as_json, "machine-readable report");
  check->add_flag("--show-callgraph", show_callgraph, "dump calls and their closure");
  check->add_option("--show-game", game_path, "dump the parity game in dot (`-` or no value: stdout)");

  std::string eval_file;
  std::string expr;
  int depth = 5;
  long fuel = 1000000;
  CLI::App* ev = app.add_subcommand("eval", "evaluate an expression lazily");
  ev->add_option("FILE", eval_file, "source file")->required();
  ev->add_option("EXPR", expr, "closed expression")->required();
  ev->add_option("--depth", depth, "record depth to force")->check(CLI::NonNegativeNumber);
  ev->add_option("--fuel", fuel, "evaluation steps per forced node")->check(CLI::PositiveNumber);

  // A bare `--show-game` means stdout.
  std::vector<std::string> argv;
  for (const auto& a : args) argv.push_back(a == "--show-game" ? "--show-game=-" : a);
  std::reverse(argv.begin(), argv.end());

  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "totcheck: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*check) {
      std::optional<std::string> gp;
      if (check->count("--show-game")) gp = game_path;
      return run_check(file, opts, as_json, show_callgraph, gp, out, err);
    }
    out << evaluate_expression(read_file(eval_file), expr, depth, fuel) << "\n";
    return 0;
  } catch (const Error& e) {
    err << "totcheck: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "totcheck: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace totcheck
