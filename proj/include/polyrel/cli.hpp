#pragma once

#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "polyrel/axioms.hpp"
#include "polyrel/dsl.hpp"
#include "polyrel/json_io.hpp"

namespace polyrel::cli {

inline const char* kUsage =
    "usage: polyrel [--format text|json] [--strict] [--exact-redundancy] <verb> ...\n"
    "\n"
    "verbs:\n"
    "  eval <diagram>                 evaluate to a polyhedral relation\n"
    "  nf <diagram>                   polyhedral normal form (as DSL)\n"
    "  fgnf <diagram>                 finitely generated normal form (as DSL)\n"
    "  polar <diagram>                syntactic polar (as DSL)\n"
    "  op <diagram>                   opposite circuit (as DSL)\n"
    "  include <diagram> <diagram>    decide semantic inclusion\n"
    "  equiv <diagram> <diagram>      decide semantic equivalence\n"
    "  empty <diagram>                decide emptiness\n"
    "  axioms [table-file]            run the axiom soundness suite\n"
    "  maxflow <network.json>         maximum flow of a layered network\n"
    "  petri-step [--via-process] <net.json> <y> <z>   one-step reachability\n"
    "  petri-encode <net.json>        encoding of the net (as DSL)\n"
    "  st-step <diagram> <u> <l>      reachable (state', outputs) polyhedron\n"
    "\n"
    "diagram arguments are inline DSL or paths to files holding DSL;\n"
    "vectors are comma-separated rationals, '-' for the empty vector.\n";

namespace detail {

inline std::string slurp_or_inline(const std::string& arg) {
  std::ifstream in(arg);
  if (!in.good()) return arg;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string slurp_file(const std::string& path) {
  std::ifstream in(path);
  if (!in.good()) throw Error("cannot read file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline QVector parse_vector(const std::string& arg) {
  QVector v;
  if (arg == "-" || arg.empty()) return v;
  std::size_t start = 0;
  while (start <= arg.size()) {
    std::size_t comma = arg.find(',', start);
    std::string item =
        comma == std::string::npos ? arg.substr(start) : arg.substr(start, comma - start);
    v.push_back(parse_rational(item));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return v;
}

inline std::string render_rows(const HPoly& h, const std::vector<std::string>& vars) {
  HPoly n = normalized(h);
  std::string out;
  for (const auto& q : n.ineqs) {
    std::string line;
    bool first = true;
    for (std::size_t j = 0; j < q.coeffs.size(); ++j) {
      const Rational& c = q.coeffs[j];
      if (c == 0) continue;
      if (first)
        line += c < 0 ? "-" : "";
      else
        line += c < 0 ? " - " : " + ";
      Rational a = abs(c);
      if (a != 1) line += to_string(a) + " ";
      line += vars[j];
      first = false;
    }
    if (line.empty()) line = "0";
    if (q.constant != 0)
      line += (q.constant < 0 ? " - " : " + ") + to_string(abs(q.constant));
    out += "  " + line + " >= 0\n";
  }
  if (n.ineqs.empty()) out += "  (no constraints)\n";
  return out;
}

inline std::vector<std::string> boundary_vars(std::size_t n, std::size_t m) {
  std::vector<std::string> vars;
  for (std::size_t i = 0; i < n; ++i) vars.push_back("x" + std::to_string(i + 1));
  for (std::size_t i = 0; i < m; ++i) vars.push_back("y" + std::to_string(i + 1));
  return vars;
}

struct Options {
  bool json = false;
  bool strict = false;
  bool via_process = false;
};

}  // namespace detail

// Runs one command; output on `out`, diagnostics on `err`. Exit codes:
// 0 success, 1 negative answer from a boolean verb under --strict,
// 2 usage/parse errors, 3 elimination row cap exceeded.
inline int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  detail::Options opt;
  if (const char* cap = std::getenv("POLYREL_MAX_FM_ROWS")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(cap, &end, 10);
    if (end && *end == '\0' && v > 0) config::fm_row_cap().store(static_cast<std::size_t>(v));
  }
  std::vector<std::string> args;
  bool exact_redundancy = false;
  for (const auto& a : argv) {
    if (a == "--format") {
      args.push_back(a);  // handled with its value below
    } else if (a == "--strict") {
      opt.strict = true;
    } else if (a == "--exact-redundancy") {
      exact_redundancy = true;
    } else if (a == "--via-process") {
      opt.via_process = true;
    } else {
      args.push_back(a);
    }
  }
  config::exact_redundancy().store(exact_redundancy);
  for (std::size_t i = 0; i < args.size();) {
    if (args[i] == "--format") {
      if (i + 1 >= args.size()) {
        err << "missing value for --format\n" << kUsage;
        return 2;
      }
      if (args[i + 1] == "json")
        opt.json = true;
      else if (args[i + 1] != "text") {
        err << "unknown format '" << args[i + 1] << "'\n";
        return 2;
      }
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i),
                 args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
    } else {
      ++i;
    }
  }
  if (args.empty()) {
    err << kUsage;
    return 2;
  }
  const std::string verb = args[0];
  args.erase(args.begin());

  auto need = [&](std::size_t k) {
    if (args.size() != k)
      throw Error("verb '" + verb + "' takes " + std::to_string(k) + " argument(s)");
  };
  auto diagram_arg = [&](const std::string& a) { return parse_dsl(detail::slurp_or_inline(a)); };
  auto bool_out = [&](bool v) {
    if (opt.json)
      out << Json{{"result", v}}.dump(2) << "\n";
    else
      out << (v ? "true" : "false") << "\n";
    return v || !opt.strict ? 0 : 1;
  };
  auto dsl_out = [&](const Diagram& d) {
    if (opt.json)
      out << Json{{"dsl", print_dsl(d)}}.dump(2) << "\n";
    else
      out << print_dsl(d) << "\n";
    return 0;
  };

  try {
    if (verb == "eval") {
      need(1);
      PolyRelation r = eval(diagram_arg(args[0]));
      if (opt.json) {
        out << to_json(r).dump(2) << "\n";
      } else {
        out << "relation " << r.left << " -> " << r.right << "\n"
            << detail::render_rows(r.body, detail::boundary_vars(r.left, r.right));
      }
      return 0;
    }
    if (verb == "nf") {
      need(1);
      return dsl_out(poly_nf(diagram_arg(args[0])));
    }
    if (verb == "fgnf") {
      need(1);
      return dsl_out(fg_nf(diagram_arg(args[0])));
    }
    if (verb == "polar") {
      need(1);
      return dsl_out(polar_syntactic(diagram_arg(args[0])));
    }
    if (verb == "op") {
      need(1);
      return dsl_out(opposite(diagram_arg(args[0])));
    }
    if (verb == "include") {
      need(2);
      return bool_out(includes(diagram_arg(args[0]), diagram_arg(args[1])));
    }
    if (verb == "equiv") {
      need(2);
      return bool_out(equiv(diagram_arg(args[0]), diagram_arg(args[1])));
    }
    if (verb == "empty") {
      need(1);
      return bool_out(is_empty(diagram_arg(args[0])));
    }
    if (verb == "axioms") {
      if (args.size() > 1) throw Error("verb 'axioms' takes at most one argument");
      AxiomReport report =
          args.empty() ? axiom_suite() : axiom_suite(detail::slurp_file(args[0]));
      if (opt.json) {
        Json entries = Json::array();
        for (const auto& r : report.results)
          entries.push_back(Json{{"name", r.name}, {"pass", r.pass}});
        out << Json{{"axioms", std::move(entries)}, {"all_pass", report.all_pass()}}.dump(2)
            << "\n";
      } else {
        for (const auto& r : report.results)
          out << r.name << ": " << (r.pass ? "pass" : "fail") << "\n";
        out << (report.all_pass() ? "all axioms pass" : "SOME AXIOMS FAIL") << "\n";
      }
      return report.all_pass() || !opt.strict ? 0 : 1;
    }
    if (verb == "maxflow") {
      need(1);
      FlowNetwork net = flow_from_json(Json::parse(detail::slurp_file(args[0])));
      auto flow = max_flow(net);
      if (opt.json)
        out << Json{{"maxflow", flow ? to_string(*flow) : "unbounded"}}.dump(2) << "\n";
      else
        out << (flow ? to_string(*flow) : "unbounded") << "\n";
      return 0;
    }
    if (verb == "petri-step") {
      need(3);
      PetriNet net = petri_from_json(Json::parse(detail::slurp_file(args[0])));
      QVector y = detail::parse_vector(args[1]);
      QVector z = detail::parse_vector(args[2]);
      bool ok = opt.via_process ? petri_step_via_process(net, y, z) : petri_can_step(net, y, z);
      return bool_out(ok);
    }
    if (verb == "petri-encode") {
      need(1);
      PetriNet net = petri_from_json(Json::parse(detail::slurp_file(args[0])));
      return dsl_out(encode_petri(net));
    }
    if (verb == "st-step") {
      need(3);
      StatefulProcess proc = st_eval(diagram_arg(args[0]));
      HPoly step = st_step_set(proc, detail::parse_vector(args[1]), detail::parse_vector(args[2]));
      if (opt.json) {
        out << to_json(step).dump(2) << "\n";
      } else {
        std::vector<std::string> vars;
        for (std::size_t i = 0; i < proc.regs; ++i) vars.push_back("v" + std::to_string(i + 1));
        for (std::size_t i = 0; i < proc.m; ++i) vars.push_back("r" + std::to_string(i + 1));
        out << "step set over (state', outputs)\n" << detail::render_rows(step, vars);
      }
      return 0;
    }
    err << "unknown verb '" << verb << "'\n" << kUsage;
    return 2;
  } catch (const FmRowCapExceeded& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace polyrel::cli
