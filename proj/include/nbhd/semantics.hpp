#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "nbhd/error.hpp"
#include "nbhd/formula.hpp"
#include "nbhd/frame.hpp"

namespace nbhd {

/// Worlds of Z at which the subset x counts as a neighborhood.
inline WorldSet box_extent(const NeighborhoodFrame& z, WorldSet x) {
  WorldSet out = 0;
  for (int c = 0; c < z.world_count(); ++c)
    if (z.has_neighborhood(c, x)) out |= WorldSet{1} << c;
  return out;
}

class PropositionalModel {
public:
  PropositionalModel(NeighborhoodFrame frame, std::map<std::string, WorldSet> valuation)
      : frame_(std::move(frame)), valuation_(std::move(valuation)) {
    for (const auto& [name, set] : valuation_) {
      detail::require_identifier(name, "proposition name");
      if (set > frame_.full_set())
        throw Error::construction("valuation of '" + name + "' out of range");
    }
  }

  const NeighborhoodFrame& frame() const { return frame_; }
  const std::map<std::string, WorldSet>& valuation() const { return valuation_; }

  /// Unknown propositions hold nowhere.
  WorldSet truth_set(const std::string& name) const {
    auto it = valuation_.find(name);
    return it == valuation_.end() ? 0 : it->second;
  }

private:
  NeighborhoodFrame frame_;
  std::map<std::string, WorldSet> valuation_;
};

/// Per-predicate interpretation: one tuple set per world.
using Interpretation = std::map<std::string, std::vector<std::set<std::vector<int>>>>;

class PredicateModel {
public:
  PredicateModel(NeighborhoodFrame frame, int domain_size, Interpretation interp)
      : frame_(std::move(frame)), domain_size_(domain_size), interp_(std::move(interp)) {
    if (domain_size_ < 1) throw Error::construction("domain size must be at least 1");
    for (const auto& [name, per_world] : interp_) {
      detail::require_identifier(name, "predicate name");
      if (per_world.size() != static_cast<std::size_t>(frame_.world_count()))
        throw Error::construction("interpretation of '" + name +
                                  "' must cover every world");
      std::optional<std::size_t> arity;
      for (const auto& tuples : per_world)
        for (const auto& tuple : tuples) {
          if (!arity) arity = tuple.size();
          if (tuple.size() != *arity || tuple.empty())
            throw Error::construction("inconsistent tuple arity for predicate '" + name +
                                      "'");
          for (int v : tuple)
            if (v < 0 || v >= domain_size_)
              throw Error::construction("tuple entry out of domain for predicate '" +
                                        name + "'");
        }
      if (arity) arities_[name] = *arity;
    }
  }

  const NeighborhoodFrame& frame() const { return frame_; }
  int domain_size() const { return domain_size_; }
  const Interpretation& interpretation() const { return interp_; }

  std::optional<std::size_t> arity(const std::string& pred) const {
    auto it = arities_.find(pred);
    if (it == arities_.end()) return std::nullopt;
    return it->second;
  }

  bool holds(int world, const std::string& pred, const std::vector<int>& tuple) const {
    auto it = interp_.find(pred);
    if (it == interp_.end()) return false;
    return it->second[world].count(tuple) > 0;
  }

private:
  NeighborhoodFrame frame_;
  int domain_size_;
  Interpretation interp_;
  std::map<std::string, std::size_t> arities_;
};

/// Variable → domain element, total on the free variables under evaluation.
using Assignment = std::map<std::string, int>;

namespace detail {

inline WorldSet eval_prop_node(const PropositionalModel& m, const Formula& f) {
  const WorldSet full = m.frame().full_set();
  switch (f.kind()) {
    case FormulaKind::top: return full;
    case FormulaKind::bot: return 0;
    case FormulaKind::prop_var: return m.truth_set(f.name());
    case FormulaKind::neg: return full & ~eval_prop_node(m, *f.child());
    case FormulaKind::conj: {
      WorldSet v = full;
      for (const FormulaPtr& c : f.children()) v &= eval_prop_node(m, *c);
      return v;
    }
    case FormulaKind::disj: {
      WorldSet v = 0;
      for (const FormulaPtr& c : f.children()) v |= eval_prop_node(m, *c);
      return v;
    }
    case FormulaKind::implies:
      return (full & ~eval_prop_node(m, *f.child(0))) | eval_prop_node(m, *f.child(1));
    case FormulaKind::iff:
      return full & ~(eval_prop_node(m, *f.child(0)) ^ eval_prop_node(m, *f.child(1)));
    case FormulaKind::box: return box_extent(m.frame(), eval_prop_node(m, *f.child()));
    case FormulaKind::diamond:
      return full & ~box_extent(m.frame(), full & ~eval_prop_node(m, *f.child()));
    case FormulaKind::pred_atom:
    case FormulaKind::forall:
    case FormulaKind::exists:
      throw Error::language("eval_prop: predicate-language node in propositional formula");
    case FormulaKind::omega_conj:
      throw Error::language("eval_prop: schematic conjunction has no finite evaluation");
  }
  throw Error::language("eval_prop: unknown node kind");
}

inline WorldSet eval_pred_node(const PredicateModel& m, Assignment& a, const Formula& f) {
  const WorldSet full = m.frame().full_set();
  switch (f.kind()) {
    case FormulaKind::top: return full;
    case FormulaKind::bot: return 0;
    case FormulaKind::pred_atom: {
      if (auto arity = m.arity(f.name()); arity && *arity != f.variables().size())
        throw Error::language("predicate '" + f.name() + "' used with arity " +
                              std::to_string(f.variables().size()) +
                              " but interpreted with arity " + std::to_string(*arity));
      std::vector<int> tuple;
      tuple.reserve(f.variables().size());
      for (const std::string& v : f.variables()) {
        auto it = a.find(v);
        if (it == a.end())
          throw Error::domain("assignment missing variable '" + v + "'");
        tuple.push_back(it->second);
      }
      WorldSet out = 0;
      for (int c = 0; c < m.frame().world_count(); ++c)
        if (m.holds(c, f.name(), tuple)) out |= WorldSet{1} << c;
      return out;
    }
    case FormulaKind::neg: return full & ~eval_pred_node(m, a, *f.child());
    case FormulaKind::conj: {
      WorldSet v = full;
      for (const FormulaPtr& c : f.children()) v &= eval_pred_node(m, a, *c);
      return v;
    }
    case FormulaKind::disj: {
      WorldSet v = 0;
      for (const FormulaPtr& c : f.children()) v |= eval_pred_node(m, a, *c);
      return v;
    }
    case FormulaKind::implies:
      return (full & ~eval_pred_node(m, a, *f.child(0))) |
             eval_pred_node(m, a, *f.child(1));
    case FormulaKind::iff:
      return full &
             ~(eval_pred_node(m, a, *f.child(0)) ^ eval_pred_node(m, a, *f.child(1)));
    case FormulaKind::box: return box_extent(m.frame(), eval_pred_node(m, a, *f.child()));
    case FormulaKind::diamond:
      return full & ~box_extent(m.frame(), full & ~eval_pred_node(m, a, *f.child()));
    case FormulaKind::forall:
    case FormulaKind::exists: {
      const bool universal = f.kind() == FormulaKind::forall;
      auto it = a.find(f.name());
      std::optional<int> saved;
      if (it != a.end()) saved = it->second;
      WorldSet v = universal ? full : 0;
      for (int d = 0; d < m.domain_size(); ++d) {
        a[f.name()] = d;
        WorldSet w = eval_pred_node(m, a, *f.child());
        v = universal ? (v & w) : (v | w);
      }
      if (saved) a[f.name()] = *saved;
      else a.erase(f.name());
      return v;
    }
    case FormulaKind::prop_var:
      throw Error::language("eval_pred: propositional variable '" + f.name() +
                            "' in predicate formula");
    case FormulaKind::omega_conj:
      throw Error::language("eval_pred: schematic conjunction has no finite evaluation");
  }
  throw Error::language("eval_pred: unknown node kind");
}

}  // namespace detail

/// Worlds at which φ holds, per the propositional truth clauses.
inline WorldSet eval_prop(const PropositionalModel& m, const FormulaPtr& f) {
  return detail::eval_prop_node(m, *f);
}

/// Worlds at which φ holds under assignment a, per the constant-domain
/// predicate truth clauses.
inline WorldSet eval_pred(const PredicateModel& m, const Assignment& a,
                          const FormulaPtr& f) {
  Assignment env = a;
  return detail::eval_pred_node(m, env, *f);
}

// ---------------------------------------------------------------------------
// Language classification and validity.

struct LanguageShape {
  bool has_prop = false;
  bool has_pred = false;  // predicate atoms or quantifiers
  bool has_schematic = false;
};

inline LanguageShape language_shape(const FormulaPtr& f) {
  LanguageShape s;
  for (const FormulaPtr& g : subformulas(f)) {
    switch (g->kind()) {
      case FormulaKind::prop_var: s.has_prop = true; break;
      case FormulaKind::pred_atom:
      case FormulaKind::forall:
      case FormulaKind::exists: s.has_pred = true; break;
      case FormulaKind::omega_conj: s.has_schematic = true; break;
      default: break;
    }
  }
  return s;
}

inline std::set<std::string> proposition_names(const FormulaPtr& f) {
  std::set<std::string> out;
  for (const FormulaPtr& g : subformulas(f))
    if (g->kind() == FormulaKind::prop_var) out.insert(g->name());
  return out;
}

inline bool model_valid(const PropositionalModel& m, const FormulaPtr& f) {
  return eval_prop(m, f) == m.frame().full_set();
}

/// Truth at every world under every assignment of the free variables.
inline bool model_valid(const PredicateModel& m, const FormulaPtr& f) {
  std::set<std::string> fv = free_variables(f);
  std::vector<std::string> free(fv.begin(), fv.end());
  Assignment a;
  std::vector<int> digits(free.size(), 0);
  while (true) {
    for (std::size_t i = 0; i < free.size(); ++i) a[free[i]] = digits[i];
    if (eval_pred(m, a, f) != m.frame().full_set()) return false;
    std::size_t i = 0;
    while (i < free.size() && ++digits[i] == m.domain_size()) digits[i++] = 0;
    if (i == free.size()) break;
  }
  return true;
}

namespace detail {

inline bool frame_valid_prop(const NeighborhoodFrame& z, const FormulaPtr& f) {
  std::set<std::string> names = proposition_names(f);
  const int m = z.world_count();
  const std::uint64_t per_atom = std::uint64_t{1} << m;
  double total = 1;
  for (std::size_t i = 0; i < names.size(); ++i) total *= static_cast<double>(per_atom);
  if (total > double(1 << 26))
    throw Error::resource("frame_valid: too many valuations to sweep");

  std::vector<std::string> atoms(names.begin(), names.end());
  std::vector<WorldSet> digits(atoms.size(), 0);
  while (true) {
    std::map<std::string, WorldSet> valuation;
    for (std::size_t i = 0; i < atoms.size(); ++i) valuation[atoms[i]] = digits[i];
    if (!model_valid(PropositionalModel(z, std::move(valuation)), f)) return false;
    std::size_t i = 0;
    while (i < digits.size() && ++digits[i] == per_atom) digits[i++] = 0;
    if (i == digits.size()) break;
  }
  return true;
}

inline bool frame_valid_pred(const NeighborhoodFrame& z, const FormulaPtr& f,
                             int max_domain) {
  std::map<std::string, std::size_t> arities;
  collect_predicate_arities(f, arities);
  const int m = z.world_count();
  for (int d = 1; d <= max_domain; ++d) {
    // One bit per (predicate, world, tuple); enumerate all interpretations.
    std::vector<std::pair<std::string, std::vector<std::vector<int>>>> slots;
    std::size_t bits = 0;
    for (const auto& [name, arity] : arities) {
      std::vector<std::vector<int>> tuples;
      std::vector<int> tuple(arity, 0);
      while (true) {
        tuples.push_back(tuple);
        std::size_t i = 0;
        while (i < arity && ++tuple[i] == d) tuple[i++] = 0;
        if (i == arity) break;
      }
      bits += static_cast<std::size_t>(m) * tuples.size();
      slots.emplace_back(name, std::move(tuples));
    }
    if (bits > 26) throw Error::resource("frame_valid: too many interpretations to sweep");

    for (std::uint64_t code = 0; code < (std::uint64_t{1} << bits); ++code) {
      Interpretation interp;
      std::size_t bit = 0;
      for (const auto& [name, tuples] : slots) {
        auto& per_world = interp[name];
        per_world.resize(m);
        for (int c = 0; c < m; ++c)
          for (const auto& tuple : tuples)
            if (code >> bit++ & 1) per_world[c].insert(tuple);
      }
      if (!model_valid(PredicateModel(z, d, std::move(interp)), f)) return false;
    }
  }
  return true;
}

}  // namespace detail

/// Validity over every model on the frame: all valuations for propositional φ
/// (exact), all interpretations over domains of size ≤ max_domain for
/// predicate φ (bounded quantification, per the caller's cap).
inline bool frame_valid(const NeighborhoodFrame& z, const FormulaPtr& f, int max_domain) {
  LanguageShape shape = language_shape(f);
  if (shape.has_schematic)
    throw Error::language("frame_valid: schematic conjunction has no finite evaluation");
  if (shape.has_prop && shape.has_pred)
    throw Error::language("frame_valid: formula mixes propositional and predicate atoms");
  if (shape.has_pred) {
    if (max_domain < 1) throw Error::domain("frame_valid: max_domain must be at least 1");
    return detail::frame_valid_pred(z, f, max_domain);
  }
  return detail::frame_valid_prop(z, f);
}

inline bool class_valid(const std::vector<NeighborhoodFrame>& frames, const FormulaPtr& f,
                        int max_domain) {
  for (const NeighborhoodFrame& z : frames)
    if (!frame_valid(z, f, max_domain)) return false;
  return true;
}

}  // namespace nbhd
