#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "polyrel/dsl.hpp"
#include "polyrel/semantics.hpp"

namespace polyrel {

enum class AxiomRelation { Equal, LeqIncluded };

struct AxiomEntry {
  std::string name;
  Diagram lhs;
  Diagram rhs;
  AxiomRelation relation;
};

struct AxiomResult {
  std::string name;
  bool pass;
};

struct AxiomReport {
  std::vector<AxiomResult> results;
  bool all_pass() const {
    for (const auto& r : results)
      if (!r.pass) return false;
    return true;
  }
};

// The axiom table: one line per scheme, fields separated by '|':
//   name | eq-or-leq | side-condition | lhs-dsl | rhs-dsl
// Scalar families carry @k / @l placeholders (plus @k+l and @k*l for the
// composite scalars) and are instantiated over a fixed probe set, filtered
// by the side condition (none, k>0, k<0, k!=0).
inline std::string_view axiom_table_text() {
  return R"(# monoid / comonoid
circ-as | eq | none | (add * id(1)) ; add | (id(1) * add) ; add
circ-co | eq | none | sym(1,1) ; add | add
circ-unl | eq | none | (zero * id(1)) ; add | id(1)
bullet-coas | eq | none | copy ; (copy * id(1)) | copy ; (id(1) * copy)
bullet-coco | eq | none | copy ; sym(1,1) | copy
bullet-counl | eq | none | copy ; (del * id(1)) | id(1)
# bimonoid
circ-bullet-bi | eq | none | add ; copy | (copy * copy) ; (id(1) * sym(1,1) * id(1)) ; (add * add)
circ-bullet-biun | eq | none | zero ; copy | zero * zero
bullet-circ-biun | eq | none | add ; del | del * del
circ-bullet-bo | eq | none | zero ; del | id(0)
# scalar families
scl-add | eq | none | copy ; (scalar(@k) * scalar(@l)) ; add | scalar(@k+l)
scl-zer | eq | none | scalar(0) | del ; zero
scl-dup | eq | none | scalar(@k) ; copy | copy ; (scalar(@k) * scalar(@k))
scl-del | eq | none | scalar(@k) ; del | del
scl-mul | eq | none | scalar(@k) ; scalar(@l) | scalar(@k*l)
scl-sum | eq | none | add ; scalar(@k) | (scalar(@k) * scalar(@k)) ; add
scl-zero | eq | none | zero ; scalar(@k) | zero
r-inv | eq | k!=0 | scalar(@k) ; coscalar(@k) | id(1)
r-coinv | eq | k!=0 | id(1) | coscalar(@k) ; scalar(@k)
# Frobenius structures
bullet-fr1 | eq | none | (copy * id(1)) ; (id(1) * cocopy) | cocopy ; copy
bullet-fr2 | eq | none | cocopy ; copy | (id(1) * copy) ; (cocopy * id(1))
bullet-sp | eq | none | copy ; cocopy | id(1)
bullet-bo | eq | none | codel ; del | id(0)
circ-fr1 | eq | none | (coadd * id(1)) ; (id(1) * add) | add ; coadd
circ-fr2 | eq | none | add ; coadd | (id(1) * coadd) ; (add * id(1))
circ-sp | eq | none | coadd ; add | id(1)
circ-bo | eq | none | zero ; cozero | id(0)
# compact closure and the inequational axiom
cc-1 | eq | none | zero ; coadd | codel ; copy ; (id(1) * scalar(-1))
cc-2 | eq | none | add ; cozero | (id(1) * scalar(-1)) ; cocopy ; del
circ-bullet-inc | leq | none | cozero | del
# order generator
P1 | leq | none | geq ; copy | copy ; (geq * geq)
P2 | eq | none | add ; geq | (geq * geq) ; add
P3 | eq | none | geq ; del | del
P4 | leq | none | cozero | geq ; cozero
P5 | eq | k>0 | scalar(@k) ; geq | geq ; scalar(@k)
P6 | eq | k<0 | scalar(@k) ; geq | leq ; scalar(@k)
antisym | leq | none | copy ; (geq * leq) ; cocopy | id(1)
spider | eq | none | (geq * geq) ; cocopy ; copy ; (geq * geq) | (copy * copy) ; (id(1) * sym(1,1) * id(1)) ; (geq * geq * geq * geq) ; (cocopy * cocopy)
direction | eq | none | leq ; geq | del ; codel
# affine generator
dup | eq | none | one ; copy | one * one
del | eq | none | one ; del | id(0)
emptyset | eq | none | id(1) * (one ; cozero) | (del ; codel) * (one ; cozero)
AP1 | eq | none | id(0) | one ; geq ; cozero
)";
}

inline const std::vector<Rational>& axiom_probe_scalars() {
  static const std::vector<Rational> probes = {Rational(-2), Rational(-1),  Rational(0),
                                               Rational(1, 2), Rational(1), Rational(2),
                                               Rational(3)};
  return probes;
}

namespace detail {

inline std::string trimmed(std::string s) {
  std::size_t a = s.find_first_not_of(" \t");
  std::size_t b = s.find_last_not_of(" \t");
  if (a == std::string::npos) return "";
  return s.substr(a, b - a + 1);
}

inline std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t bar = line.find('|', start);
    if (bar == std::string::npos) {
      out.push_back(trimmed(line.substr(start)));
      break;
    }
    out.push_back(trimmed(line.substr(start, bar - start)));
    start = bar + 1;
  }
  return out;
}

inline std::string substitute_scalars(std::string text, const Rational& k, const Rational& l) {
  auto replace_all = [](std::string& s, std::string_view from, const std::string& to) {
    std::size_t pos = 0;
    while ((pos = s.find(from, pos)) != std::string::npos) {
      s.replace(pos, from.size(), to);
      pos += to.size();
    }
  };
  replace_all(text, "@k+l", to_string(k + l));
  replace_all(text, "@k*l", to_string(k * l));
  replace_all(text, "@k", to_string(k));
  replace_all(text, "@l", to_string(l));
  return text;
}

inline bool side_condition_holds(const std::string& cond, const Rational& k) {
  if (cond == "none") return true;
  if (cond == "k>0") return k > 0;
  if (cond == "k<0") return k < 0;
  if (cond == "k!=0") return k != 0;
  throw Error("axiom table: unknown side condition '" + cond + "'");
}

}  // namespace detail

// Parses the table and expands the scalar families over the probe set.
inline std::vector<AxiomEntry> axiom_table(std::string_view text = axiom_table_text()) {
  std::vector<AxiomEntry> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string line = detail::trimmed(std::string(text.substr(pos, eol - pos)));
    pos = eol + 1;
    if (line.empty() || line[0] == '#') continue;
    auto fields = detail::split_fields(line);
    if (fields.size() != 5) throw Error("axiom table: malformed line '" + line + "'");
    const std::string& name = fields[0];
    AxiomRelation rel;
    if (fields[1] == "eq")
      rel = AxiomRelation::Equal;
    else if (fields[1] == "leq")
      rel = AxiomRelation::LeqIncluded;
    else
      throw Error("axiom table: unknown relation '" + fields[1] + "'");
    const std::string& cond = fields[2];
    const std::string& lhs = fields[3];
    const std::string& rhs = fields[4];
    bool has_k = lhs.find("@k") != std::string::npos || rhs.find("@k") != std::string::npos;
    bool has_l = lhs.find("@l") != std::string::npos || rhs.find("@l") != std::string::npos ||
                 lhs.find("@k+l") != std::string::npos || lhs.find("@k*l") != std::string::npos ||
                 rhs.find("@k+l") != std::string::npos || rhs.find("@k*l") != std::string::npos;
    if (!has_k) {
      out.push_back(AxiomEntry{name, parse_dsl(lhs), parse_dsl(rhs), rel});
      continue;
    }
    for (const Rational& k : axiom_probe_scalars()) {
      if (!detail::side_condition_holds(cond, k)) continue;
      if (!has_l) {
        out.push_back(AxiomEntry{name + "[k=" + to_string(k) + "]",
                                 parse_dsl(detail::substitute_scalars(lhs, k, k)),
                                 parse_dsl(detail::substitute_scalars(rhs, k, k)), rel});
        continue;
      }
      for (const Rational& l : axiom_probe_scalars())
        out.push_back(AxiomEntry{name + "[k=" + to_string(k) + ",l=" + to_string(l) + "]",
                                 parse_dsl(detail::substitute_scalars(lhs, k, l)),
                                 parse_dsl(detail::substitute_scalars(rhs, k, l)), rel});
    }
  }
  return out;
}

// Checks every (in)equation of the table as a semantic statement.
inline AxiomReport axiom_suite(std::string_view table_text = axiom_table_text()) {
  AxiomReport report;
  for (const auto& entry : axiom_table(table_text)) {
    bool pass = entry.relation == AxiomRelation::Equal ? equiv(entry.lhs, entry.rhs)
                                                       : includes(entry.lhs, entry.rhs);
    report.results.push_back(AxiomResult{entry.name, pass});
  }
  return report;
}

}  // namespace polyrel
