#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <map>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "polyrel/hpoly.hpp"

namespace polyrel {

struct FmRowCapExceeded : Error {
  using Error::Error;
};

namespace config {

// Safety cap on intermediate row counts during elimination (the CLI seeds it
// from POLYREL_MAX_FM_ROWS). Exceeding it aborts the computation.
inline std::atomic<std::size_t>& fm_row_cap() {
  static std::atomic<std::size_t> cap{100000};
  return cap;
}

// When set, redundancy removal additionally drops every row implied by the
// rest of the system (decided exactly, see remove_redundancy).
inline std::atomic<bool>& exact_redundancy() {
  static std::atomic<bool> flag{false};
  return flag;
}

}  // namespace config

namespace detail {

// Elimination state with ancestor tracking. Beyond the cheap filters
// (normalization, duplicates, constant dominance), every derived row carries
// the set of original rows it combines; after k elimination steps a row
// combining more than k + 1 originals is redundant (Imbert) and is dropped.
class Eliminator {
 public:
  explicit Eliminator(const HPoly& h) : dim_(h.dim) {
    HPoly n = normalized(h);
    std::map<QVector, std::pair<Rational, std::vector<std::uint32_t>>> tight;
    std::uint32_t next = 0;
    for (const auto& q : n.ineqs) {
      if (is_zero_row(q)) {
        if (q.constant < 0) infeasible_ = true;
        continue;
      }
      auto it = tight.find(q.coeffs);
      std::vector<std::uint32_t> label{next++};
      if (it == tight.end())
        tight.emplace(q.coeffs, std::make_pair(q.constant, std::move(label)));
      else if (q.constant < it->second.first)
        it->second = std::make_pair(q.constant, std::move(label));
    }
    for (auto& [coeffs, rc] : tight) {
      rows_.push_back(Ineq{coeffs, rc.first});
      labels_.push_back(std::move(rc.second));
    }
  }

  std::size_t dim() const { return dim_; }
  bool infeasible() const { return infeasible_; }
  const std::vector<Ineq>& rows() const { return rows_; }

  // Bulk Gaussian phase: pairs up rows with their exact negations once, then
  // substitutes away every eliminable variable pinned by such an equation,
  // compacting columns at the end. Equation twins stay twins under the
  // in-place updates, so the pairing never needs rebuilding. Returns the
  // eliminated columns as indices into the dimension at entry, ascending.
  template <typename Eliminable>
  std::vector<std::size_t> presolve_equalities(const Eliminable& eliminable) {
    constexpr std::size_t kNone = static_cast<std::size_t>(-1);
    std::vector<std::size_t> twin(rows_.size(), kNone);
    {
      std::map<Ineq, std::pair<std::size_t, std::size_t>> signs;
      for (std::size_t i = 0; i < rows_.size(); ++i) {
        Ineq canon = rows_[i];
        bool flipped = false;
        for (std::size_t c = 0; c <= dim_; ++c) {
          const Rational& v = c < dim_ ? canon.coeffs[c] : canon.constant;
          if (v == 0) continue;
          flipped = v < 0;
          break;
        }
        if (flipped) {
          for (auto& e : canon.coeffs) e = -e;
          canon.constant = -canon.constant;
        }
        auto [it, fresh] = signs.try_emplace(std::move(canon), std::make_pair(kNone, kNone));
        (flipped ? it->second.second : it->second.first) = i;
      }
      for (const auto& [canon, idx] : signs)
        if (idx.first != kNone && idx.second != kNone) {
          twin[idx.first] = idx.second;
          twin[idx.second] = idx.first;
        }
    }
    std::vector<bool> dead_row(rows_.size(), false);
    std::vector<bool> dead_col(dim_, false);
    std::vector<std::size_t> live_cols(dim_);
    std::iota(live_cols.begin(), live_cols.end(), 0);
    for (std::size_t e = 0; e < rows_.size(); ++e) {
      if (dead_row[e] || twin[e] == kNone) continue;
      std::size_t col = dim_;
      for (std::size_t j = 0; j < dim_; ++j)
        if (!dead_col[j] && rows_[e].coeffs[j] != 0 && eliminable(j)) {
          col = j;
          break;
        }
      if (col == dim_) continue;
      const Rational pivot = rows_[e].coeffs[col];
      for (std::size_t k = 0; k < rows_.size(); ++k) {
        if (k == e || k == twin[e] || dead_row[k] || rows_[k].coeffs[col] == 0) continue;
        Rational factor = -rows_[k].coeffs[col] / pivot;
        for (std::size_t j = 0; j < dim_; ++j) {
          if (dead_col[j] || rows_[e].coeffs[j] == 0) continue;
          rows_[k].coeffs[j] += factor * rows_[e].coeffs[j];
        }
        rows_[k].constant += factor * rows_[e].constant;
      }
      dead_row[e] = dead_row[twin[e]] = true;
      dead_col[col] = true;
    }
    // compact columns and rebuild in deduplicated, normalized form
    std::vector<Ineq> kept;
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      if (dead_row[k]) continue;
      Ineq row;
      row.coeffs.reserve(dim_);
      for (std::size_t j = 0; j < dim_; ++j)
        if (!dead_col[j]) row.coeffs.push_back(rows_[k].coeffs[j]);
      row.constant = rows_[k].constant;
      kept.push_back(std::move(row));
    }
    dim_ -= static_cast<std::size_t>(std::count(dead_col.begin(), dead_col.end(), true));
    std::map<QVector, Rational> tight;
    for (auto& q : kept) {
      Ineq row = normalized_row(q);
      if (is_zero_row(row)) {
        if (row.constant < 0) infeasible_ = true;
        continue;
      }
      auto it = tight.find(row.coeffs);
      if (it == tight.end())
        tight.emplace(std::move(row.coeffs), row.constant);
      else if (row.constant < it->second)
        it->second = row.constant;
    }
    rows_.clear();
    labels_.clear();
    std::uint32_t next = 0;
    for (auto& [coeffs, constant] : tight) {
      rows_.push_back(Ineq{coeffs, constant});
      labels_.push_back({next++});
    }
    fm_steps_ = 0;
    std::vector<std::size_t> eliminated;
    for (std::size_t j = 0; j < dead_col.size(); ++j)
      if (dead_col[j]) eliminated.push_back(j);
    return eliminated;
  }

  // Gaussian shortcut: when a row and its exact negation are both present,
  // the pair is an equation, and any of its variables can be substituted
  // away at one derived row per input row. Every Fourier-Motzkin combination
  // of two substituted rows is a nonnegative combination of their
  // substituted forms, so nothing is lost. Returns the eliminated column.
  template <typename Eliminable>
  std::optional<std::size_t> gauss_step(const Eliminable& eliminable) {
    std::map<Ineq, std::array<std::size_t, 2>> signs;  // canonical row -> {pos idx, neg idx}
    constexpr std::size_t kNone = static_cast<std::size_t>(-1);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      Ineq canon = rows_[i];
      bool flipped = false;
      for (std::size_t c = 0; c <= dim_; ++c) {
        const Rational& v = c < dim_ ? canon.coeffs[c] : canon.constant;
        if (v == 0) continue;
        flipped = v < 0;
        break;
      }
      if (flipped) {
        for (auto& e : canon.coeffs) e = -e;
        canon.constant = -canon.constant;
      }
      auto [it, fresh] = signs.try_emplace(std::move(canon), std::array<std::size_t, 2>{kNone, kNone});
      it->second[flipped ? 1 : 0] = i;
    }
    for (const auto& [canon, idx] : signs) {
      if (idx[0] == kNone || idx[1] == kNone) continue;
      std::size_t pos = idx[0], neg = idx[1];
      for (std::size_t j = 0; j < dim_; ++j) {
        if (rows_[pos].coeffs[j] == 0 || !eliminable(j)) continue;
        substitute_out(pos, neg, j);
        return j;
      }
    }
    return std::nullopt;
  }

  // Cost estimate of eliminating the variable at current column j.
  std::size_t cost(std::size_t j) const {
    std::size_t p = 0, n = 0, z = 0;
    for (const auto& q : rows_) {
      int s = polyrel::sign(q.coeffs[j]);
      if (s > 0)
        ++p;
      else if (s < 0)
        ++n;
      else
        ++z;
    }
    return z + p * n;
  }

  void eliminate(std::size_t j) {
    if (j >= dim_) throw DimensionError("eliminate: column out of range");
    ++fm_steps_;
    // Kohler's bound counts eliminations since the rows we labelled, i.e.
    // since the last Gaussian step re-based the system.
    std::size_t ancestor_cap = fm_steps_ + 1;
    std::vector<std::size_t> pos, neg;
    std::map<QVector, std::pair<Rational, std::vector<std::uint32_t>>> tight;
    auto consider = [&](Ineq row, std::vector<std::uint32_t> label) {
      row = normalized_row(row);
      if (is_zero_row(row)) {
        if (row.constant < 0) infeasible_ = true;
        return;
      }
      auto it = tight.find(row.coeffs);
      if (it == tight.end())
        tight.emplace(std::move(row.coeffs), std::make_pair(row.constant, std::move(label)));
      else if (row.constant < it->second.first ||
               (row.constant == it->second.first && label.size() < it->second.second.size()))
        it->second = std::make_pair(row.constant, std::move(label));
    };
    auto drop_col = [&](const Ineq& q) {
      QVector coeffs;
      coeffs.reserve(dim_ - 1);
      for (std::size_t c = 0; c < dim_; ++c)
        if (c != j) coeffs.push_back(q.coeffs[c]);
      return Ineq{std::move(coeffs), q.constant};
    };
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      int s = polyrel::sign(rows_[i].coeffs[j]);
      if (s > 0)
        pos.push_back(i);
      else if (s < 0)
        neg.push_back(i);
      else
        consider(drop_col(rows_[i]), labels_[i]);
    }
    std::size_t cap = config::fm_row_cap().load();
    if (tight.size() + pos.size() * neg.size() > cap)
      throw FmRowCapExceeded("Fourier-Motzkin intermediate row count exceeds cap of " +
                             std::to_string(cap));
    for (std::size_t pi : pos)
      for (std::size_t ni : neg) {
        std::vector<std::uint32_t> label;
        std::set_union(labels_[pi].begin(), labels_[pi].end(), labels_[ni].begin(),
                       labels_[ni].end(), std::back_inserter(label));
        if (label.size() > ancestor_cap) continue;
        const Rational& a = rows_[pi].coeffs[j];
        const Rational& b = rows_[ni].coeffs[j];
        Ineq row;
        row.coeffs.reserve(dim_ - 1);
        for (std::size_t c = 0; c < dim_; ++c)
          if (c != j) row.coeffs.push_back(a * rows_[ni].coeffs[c] - b * rows_[pi].coeffs[c]);
        row.constant = a * rows_[ni].constant - b * rows_[pi].constant;
        consider(std::move(row), std::move(label));
      }
    rows_.clear();
    labels_.clear();
    for (auto& [coeffs, rc] : tight) {
      rows_.push_back(Ineq{coeffs, rc.first});
      labels_.push_back(std::move(rc.second));
    }
    --dim_;
  }

  HPoly to_hpoly() const {
    HPoly out(dim_);
    if (infeasible_) {
      out.add(QVector(dim_, Rational(0)), Rational(-1));
      return out;
    }
    out.ineqs = rows_;
    return out;
  }

 private:
  // A Gaussian step breaks the correspondence between stored histories and
  // pure Fourier-Motzkin derivations, so it re-bases the Kohler filter: rows
  // become fresh originals with singleton labels.
  void substitute_out(std::size_t pos, std::size_t neg, std::size_t j) {
    const Ineq eq = rows_[pos];
    const Rational pivot = eq.coeffs[j];
    std::map<QVector, Rational> tight;
    auto consider = [&](Ineq row) {
      row = normalized_row(row);
      if (is_zero_row(row)) {
        if (row.constant < 0) infeasible_ = true;
        return;
      }
      auto it = tight.find(row.coeffs);
      if (it == tight.end())
        tight.emplace(std::move(row.coeffs), row.constant);
      else if (row.constant < it->second)
        it->second = row.constant;
    };
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      if (k == pos || k == neg) continue;
      Rational factor = -rows_[k].coeffs[j] / pivot;
      Ineq row;
      row.coeffs.reserve(dim_ - 1);
      for (std::size_t c = 0; c < dim_; ++c) {
        if (c == j) continue;
        row.coeffs.push_back(rows_[k].coeffs[c] + factor * eq.coeffs[c]);
      }
      row.constant = rows_[k].constant + factor * eq.constant;
      consider(std::move(row));
    }
    rows_.clear();
    labels_.clear();
    std::uint32_t next = 0;
    for (auto& [coeffs, constant] : tight) {
      rows_.push_back(Ineq{coeffs, constant});
      labels_.push_back({next++});
    }
    fm_steps_ = 0;
    --dim_;
  }

  std::size_t dim_;
  std::size_t fm_steps_ = 0;
  bool infeasible_ = false;
  std::vector<Ineq> rows_;
  std::vector<std::vector<std::uint32_t>> labels_;
};

// Cheap Imbert-style filters: normalize rows, drop duplicates and rows
// positively dominated by a row with equal coefficients and smaller constant.
inline HPoly cheap_filter(const HPoly& h) {
  HPoly n = normalized(h);
  if (syntactically_infeasible(n)) {
    HPoly out(h.dim);
    out.add(QVector(h.dim, Rational(0)), Rational(-1));
    return out;
  }
  HPoly out(h.dim);
  std::map<QVector, Rational> tightest;
  for (const auto& q : n.ineqs) {
    auto it = tightest.find(q.coeffs);
    if (it == tightest.end())
      tightest.emplace(q.coeffs, q.constant);
    else if (q.constant < it->second)
      it->second = q.constant;
  }
  for (auto& [coeffs, constant] : tightest) out.ineqs.push_back(Ineq{coeffs, constant});
  return out;
}

}  // namespace detail

// One Fourier-Motzkin step: drops variable i, replacing the rows where it
// occurs by all positive/negative combinations with the variable cancelled.
inline HPoly fm_eliminate_var(const HPoly& h, std::size_t i) {
  if (i >= h.dim) throw DimensionError("fm_eliminate_var: index out of range");
  std::vector<const Ineq*> pos, neg;
  HPoly out(h.dim - 1);
  auto drop_var = [&](const Ineq& q) {
    QVector coeffs;
    coeffs.reserve(h.dim - 1);
    for (std::size_t j = 0; j < h.dim; ++j)
      if (j != i) coeffs.push_back(q.coeffs[j]);
    return Ineq{std::move(coeffs), q.constant};
  };
  for (const auto& q : h.ineqs) {
    int s = sign(q.coeffs[i]);
    if (s > 0)
      pos.push_back(&q);
    else if (s < 0)
      neg.push_back(&q);
    else
      out.ineqs.push_back(drop_var(q));
  }
  std::size_t cap = config::fm_row_cap().load();
  if (out.ineqs.size() + pos.size() * neg.size() > cap)
    throw FmRowCapExceeded("Fourier-Motzkin intermediate row count exceeds cap of " +
                           std::to_string(cap));
  for (const Ineq* p : pos) {
    const Rational& a = p->coeffs[i];
    for (const Ineq* q : neg) {
      const Rational& b = q->coeffs[i];  // b < 0: combo = a*q + (-b)*p
      Ineq row;
      row.coeffs.reserve(h.dim - 1);
      for (std::size_t j = 0; j < h.dim; ++j)
        if (j != i) row.coeffs.push_back(a * q->coeffs[j] - b * p->coeffs[j]);
      row.constant = a * q->constant - b * p->constant;
      out.ineqs.push_back(std::move(row));
    }
  }
  return detail::cheap_filter(out);
}

// Existential projection onto the given variables, which also fixes the
// column order of the result. Eliminates greedily by lowest combination
// count.
inline HPoly project(const HPoly& h, const std::vector<std::size_t>& keep) {
  std::vector<bool> keep_mask(h.dim, false);
  for (std::size_t k : keep) {
    if (k >= h.dim) throw DimensionError("project: index out of range");
    keep_mask[k] = true;
  }
  detail::Eliminator state(h);
  // Track original identities of the surviving columns.
  std::vector<std::size_t> cols(h.dim);
  std::iota(cols.begin(), cols.end(), 0);
  auto dead = state.presolve_equalities([&](std::size_t c) { return !keep_mask[cols[c]]; });
  for (auto it = dead.rbegin(); it != dead.rend(); ++it)
    cols.erase(cols.begin() + static_cast<std::ptrdiff_t>(*it));
  while (!state.infeasible()) {
    if (auto j = state.gauss_step([&](std::size_t c) { return !keep_mask[cols[c]]; })) {
      cols.erase(cols.begin() + static_cast<std::ptrdiff_t>(*j));
      continue;
    }
    std::size_t best = state.dim();
    std::size_t best_cost = 0;
    for (std::size_t j = 0; j < state.dim(); ++j) {
      if (keep_mask[cols[j]]) continue;
      std::size_t cost = state.cost(j);
      if (best == state.dim() || cost < best_cost) {
        best = j;
        best_cost = cost;
      }
    }
    if (best == state.dim()) break;
    state.eliminate(best);
    cols.erase(cols.begin() + static_cast<std::ptrdiff_t>(best));
  }
  if (state.infeasible()) {
    HPoly out(keep.size());
    out.add(QVector(keep.size(), Rational(0)), Rational(-1));
    return out;
  }
  // Reorder the surviving columns to match the requested keep order.
  std::vector<std::size_t> position(h.dim, 0);
  for (std::size_t j = 0; j < cols.size(); ++j) position[cols[j]] = j;
  HPoly out(keep.size());
  for (const auto& q : state.rows()) {
    QVector coeffs(keep.size());
    for (std::size_t j = 0; j < keep.size(); ++j) coeffs[j] = q.coeffs[position[keep[j]]];
    out.ineqs.push_back(Ineq{std::move(coeffs), q.constant});
  }
  return detail::cheap_filter(out);
}

// Rational feasibility: eliminate every variable and inspect the surviving
// constant rows.
inline bool is_feasible(const HPoly& h) {
  detail::Eliminator state(h);
  state.presolve_equalities([](std::size_t) { return true; });
  while (!state.infeasible() && state.dim() > 0) {
    if (state.gauss_step([](std::size_t) { return true; })) continue;
    std::size_t best = 0;
    std::size_t best_cost = 0;
    for (std::size_t j = 0; j < state.dim(); ++j) {
      std::size_t cost = state.cost(j);
      if (j == 0 || cost < best_cost) {
        best = j;
        best_cost = cost;
      }
    }
    state.eliminate(best);
  }
  return !state.infeasible();
}

enum class RedundancyMode { Cheap, Exact };

// Same solution set, fewer rows. Cheap mode applies the Imbert filters only;
// exact mode also drops any row implied by the others, deciding implication
// by feasibility of the system with the row's strict violation adjoined
// (encoded with a fresh eps variable bounded below by 1).
inline HPoly remove_redundancy(const HPoly& h, RedundancyMode mode = RedundancyMode::Cheap) {
  HPoly cur = detail::cheap_filter(h);
  if (mode == RedundancyMode::Cheap) return cur;
  if (!is_feasible(cur)) {
    HPoly out(h.dim);
    out.add(QVector(h.dim, Rational(0)), Rational(-1));
    return out;
  }
  for (std::size_t i = cur.ineqs.size(); i-- > 0;) {
    HPoly probe(cur.dim + 1);
    for (std::size_t j = 0; j < cur.ineqs.size(); ++j) {
      if (j == i) continue;
      QVector coeffs = cur.ineqs[j].coeffs;
      coeffs.push_back(0);
      probe.add(std::move(coeffs), cur.ineqs[j].constant);
    }
    // -(coeffs . z + const) >= eps and eps >= 1
    QVector violated;
    violated.reserve(cur.dim + 1);
    for (const auto& c : cur.ineqs[i].coeffs) violated.push_back(-c);
    violated.push_back(-1);
    probe.add(std::move(violated), -cur.ineqs[i].constant);
    QVector eps_row(cur.dim + 1, Rational(0));
    eps_row[cur.dim] = 1;
    probe.add(std::move(eps_row), Rational(-1));
    if (!is_feasible(probe))
      cur.ineqs.erase(cur.ineqs.begin() + static_cast<std::ptrdiff_t>(i));
  }
  return cur;
}

inline HPoly remove_redundancy_default(const HPoly& h) {
  return remove_redundancy(
      h, config::exact_redundancy().load() ? RedundancyMode::Exact : RedundancyMode::Cheap);
}

}  // namespace polyrel
