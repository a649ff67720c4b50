#pragma once

// Decision procedure, finite syntactic algebras and symbolic countermodels
// for the eight classes of neighborhood logics selected by the flags
// {monotonic, topped, cufi}.
//
// The engine behind decide_valid and lindenbaum_fragment is a semantic type
// analysis.  A *type* assigns a truth value to every proposition letter and
// every boxed subformula of the input; every subformula's truth is then a
// Boolean function of the type.  Starting from all types, a type is
// eliminated when some boxed subformula it declares false would be forced
// true: the operand's extension lands in the closure (under the class flags)
// of the extensions the type does declare to be neighborhoods.  Because each
// elimination condition says "the surviving set misses a fixed blocker set",
// satisfying sets of types are exactly the subsets of the greatest fixpoint,
// so the fixpoint characterizes the types realizable in some model on a
// frame carrying the class flags — of any cardinality.  Validity and
// countermodel search both read off that fixpoint.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "nbhd/algebra.hpp"
#include "nbhd/duality.hpp"
#include "nbhd/epset.hpp"
#include "nbhd/error.hpp"
#include "nbhd/formula.hpp"
#include "nbhd/frame.hpp"
#include "nbhd/semantics.hpp"

namespace nbhd {

/// Flags selecting one of the eight logic classes.  The empty selection is
/// the minimal class; each flag adds the matching frame condition.
struct LogicClass {
  bool monotonic = false;
  bool topped = false;
  bool cufi = false;

  friend bool operator==(const LogicClass&, const LogicClass&) = default;
};

inline FrameProperties required_frame_properties(const LogicClass& l) {
  return FrameProperties{l.monotonic, l.topped, l.cufi};
}

/// Parses a class selector: any subset of the letters m (monotonic),
/// t (topped), c (cufi), in any order, with optional comma or space
/// separators ("mtc" and "m,t,c" name the same class).  "" selects the
/// minimal class.
inline LogicClass parse_logic_class(const std::string& s) {
  LogicClass l;
  for (char ch : s) {
    switch (ch) {
      case 'm': l.monotonic = true; break;
      case 't': l.topped = true; break;
      case 'c': l.cufi = true; break;
      case ',':
      case ' ': break;
      default:
        throw Error::domain(std::string("unknown class flag '") + ch +
                            "'; class selectors use letters from \"mtc\"");
    }
  }
  return l;
}

inline std::string to_string(const LogicClass& l) {
  std::string s;
  if (l.monotonic) s += 'm';
  if (l.topped) s += 't';
  if (l.cufi) s += 'c';
  return s;
}

/// Default cap on semantic bits (proposition letters + boxed subformulas)
/// accepted by decide_valid, and the ceiling the engine supports at all.
inline constexpr int default_bit_bound = 5;
inline constexpr int hard_bit_ceiling = 6;

namespace detail {

/// The semantic type space of a formula set: one bit per proposition letter
/// (in name order, lowest bits) and one per boxed subformula (in structural
/// order, above the letters).  A type is a bit pattern; subformula truth
/// masks live over the 2^bits type codes.
struct TypeSpace {
  std::vector<std::string> props;
  std::vector<FormulaPtr> box_operands;
  std::map<std::string, int> prop_index;
  std::map<FormulaPtr, int, FormulaLess> box_index;  // keyed by the box node
  std::vector<std::uint64_t> prop_masks;
  std::vector<std::uint64_t> box_masks;
  std::vector<std::uint64_t> operand_mask;  // truth mask of each box operand
  int type_count = 1;

  int bit_count() const {
    return static_cast<int>(props.size() + box_operands.size());
  }

  std::uint64_t all_types() const {
    return type_count == 64 ? ~std::uint64_t{0}
                            : (std::uint64_t{1} << type_count) - 1;
  }

  /// Truth mask of a desugared propositional formula over the type codes.
  std::uint64_t mask_of(const FormulaPtr& f) const {
    switch (f->kind()) {
      case FormulaKind::top: return all_types();
      case FormulaKind::bot: return 0;
      case FormulaKind::prop_var:
        return prop_masks[static_cast<std::size_t>(prop_index.at(f->name()))];
      case FormulaKind::neg: return all_types() & ~mask_of(f->child());
      case FormulaKind::conj: {
        std::uint64_t m = all_types();
        for (const FormulaPtr& ch : f->children()) m &= mask_of(ch);
        return m;
      }
      case FormulaKind::box:
        return box_masks[static_cast<std::size_t>(box_index.at(f))];
      default:
        throw Error::language(
            "semantic types cover the desugared propositional core only");
    }
  }
};

inline void require_propositional(const FormulaPtr& f, const char* who) {
  LanguageShape s = language_shape(f);
  if (s.has_pred)
    throw Error::language(std::string(who) +
                          " handles propositional formulas only; quantified "
                          "input: " +
                          print(f));
  if (s.has_schematic)
    throw Error::language(std::string(who) +
                          " handles finitary formulas only; schematic "
                          "conjunction in: " +
                          print(f));
}

inline TypeSpace make_type_space(const std::vector<FormulaPtr>& desugared,
                                 int max_bits, const char* who) {
  std::set<std::string> prop_names;
  std::set<FormulaPtr, FormulaLess> boxes;
  for (const FormulaPtr& f : desugared) {
    for (const FormulaPtr& g : subformulas(f)) {
      if (g->kind() == FormulaKind::prop_var) prop_names.insert(g->name());
      if (g->kind() == FormulaKind::box) boxes.insert(g);
    }
  }
  TypeSpace ts;
  ts.props.assign(prop_names.begin(), prop_names.end());
  for (const FormulaPtr& b : boxes) {
    ts.box_index.emplace(b, static_cast<int>(ts.box_operands.size()));
    ts.box_operands.push_back(b->child());
  }
  const int bits = ts.bit_count();
  const int bound = std::min(max_bits, hard_bit_ceiling);
  if (bits > bound) {
    std::string msg = std::string(who) + ": input needs " +
                      std::to_string(bits) +
                      " semantic bits (proposition letters plus boxed "
                      "subformulas), above the bound of " +
                      std::to_string(bound);
    if (bound < hard_bit_ceiling)
      msg += "; raise it with --bound / the max_bits argument (ceiling " +
             std::to_string(hard_bit_ceiling) + ")";
    else
      msg += ", the engine ceiling";
    throw Error::resource(msg);
  }
  ts.type_count = 1 << bits;
  const int pb = static_cast<int>(ts.props.size());
  ts.prop_masks.assign(ts.props.size(), 0);
  ts.box_masks.assign(ts.box_operands.size(), 0);
  for (int t = 0; t < ts.type_count; ++t) {
    for (int i = 0; i < pb; ++i)
      if ((t >> i) & 1) ts.prop_masks[static_cast<std::size_t>(i)] |= std::uint64_t{1} << t;
    for (std::size_t j = 0; j < ts.box_operands.size(); ++j)
      if ((t >> (pb + static_cast<int>(j))) & 1) ts.box_masks[j] |= std::uint64_t{1} << t;
  }
  for (std::size_t i = 0; i < ts.props.size(); ++i)
    ts.prop_index.emplace(ts.props[i], static_cast<int>(i));
  for (std::size_t j = 0; j < ts.box_operands.size(); ++j)
    ts.operand_mask.push_back(ts.mask_of(ts.box_operands[j]));
  return ts;
}

/// Does the type declare some boxed subformula false whose operand's
/// extension (within w) is forced into the neighborhood family generated,
/// under the class flags, by the extensions it declares true?
inline bool type_violated(const TypeSpace& ts, int t, std::uint64_t w,
                          const LogicClass& l) {
  const int pb = static_cast<int>(ts.props.size());
  std::uint64_t gens[8];  // at most 6 boxed subformulas plus the full set
  int gen_count = 0;
  for (std::size_t j = 0; j < ts.box_operands.size(); ++j)
    if ((t >> (pb + static_cast<int>(j))) & 1)
      gens[gen_count++] = w & ts.operand_mask[j];
  if (l.topped) gens[gen_count++] = w;  // always a neighborhood when topped
  if (gen_count == 0) return false;
  for (std::size_t j = 0; j < ts.box_operands.size(); ++j) {
    if ((t >> (pb + static_cast<int>(j))) & 1) continue;
    const std::uint64_t target = w & ts.operand_mask[j];
    bool forced = false;
    if (l.monotonic && l.cufi) {
      // Closure = supersets of finite meets; the full meet is the best shot.
      std::uint64_t meet = w;
      for (int i = 0; i < gen_count; ++i) meet &= gens[i];
      forced = (meet & ~target) == 0;
    } else if (l.monotonic) {
      for (int i = 0; i < gen_count; ++i)
        if ((gens[i] & ~target) == 0) { forced = true; break; }
    } else if (l.cufi) {
      // Closure = finite meets; only generators above the target can
      // participate, and using all of them is the canonical witness.
      std::uint64_t meet = w;
      bool any = false;
      for (int i = 0; i < gen_count; ++i)
        if ((target & ~gens[i]) == 0) { meet &= gens[i]; any = true; }
      forced = any && meet == target;
    } else {
      for (int i = 0; i < gen_count; ++i)
        if (gens[i] == target) { forced = true; break; }
    }
    if (forced) return true;
  }
  return false;
}

/// Greatest fixpoint of simultaneous violation removal, seeded from `start`.
inline std::uint64_t eliminate_from(const TypeSpace& ts, std::uint64_t start,
                                    const LogicClass& l) {
  std::uint64_t w = start;
  for (;;) {
    std::uint64_t next = w;
    for (int t = 0; t < ts.type_count; ++t)
      if (((w >> t) & 1) && type_violated(ts, t, w, l))
        next &= ~(std::uint64_t{1} << t);
    if (next == w) return w;
    w = next;
  }
}

inline std::uint64_t surviving_types(const TypeSpace& ts,
                                     const LogicClass& l) {
  return eliminate_from(ts, ts.all_types(), l);
}

inline bool subset_satisfying(const TypeSpace& ts, std::uint64_t s,
                              const LogicClass& l) {
  for (int t = 0; t < ts.type_count; ++t)
    if (((s >> t) & 1) && type_violated(ts, t, s, l)) return false;
  return true;
}

/// Picks the countermodel's set of types: the first self-consistent subset
/// of the surviving types containing a refuting type, ordered by size and
/// then lexicographically over ascending type codes, so the result has the
/// fewest possible worlds.  Enumeration stops after a fixed work budget
/// (never reached when at most 16 types survive); past it, a deterministic
/// greedy pruning of the survivor set supplies an upper bound instead.
inline std::uint64_t select_countermodel_types(const TypeSpace& ts,
                                               std::uint64_t winf,
                                               std::uint64_t refuting,
                                               const LogicClass& l) {
  std::vector<int> alive;
  for (int t = 0; t < ts.type_count; ++t)
    if ((winf >> t) & 1) alive.push_back(t);
  const int n = static_cast<int>(alive.size());
  constexpr std::uint64_t subset_budget = std::uint64_t{1} << 20;
  std::uint64_t examined = 0;
  for (int k = 1; k <= n && examined <= subset_budget; ++k) {
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
    for (;;) {
      std::uint64_t s = 0;
      for (int i : idx) s |= std::uint64_t{1} << alive[static_cast<std::size_t>(i)];
      if ((s & refuting) != 0 && subset_satisfying(ts, s, l)) return s;
      if (++examined > subset_budget && n > 16) break;
      int i = k - 1;
      while (i >= 0 && idx[static_cast<std::size_t>(i)] == i + n - k) --i;
      if (i < 0) break;
      ++idx[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < k; ++j)
        idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  // Budget exhausted on a large survivor set: prune greedily instead.
  std::uint64_t s = winf;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int t : alive) {
      if (!((s >> t) & 1)) continue;
      const std::uint64_t pruned =
          eliminate_from(ts, s & ~(std::uint64_t{1} << t), l);
      if ((pruned & refuting) != 0) {
        s = pruned;
        changed = true;
      }
    }
  }
  return s;
}

/// Smallest neighborhood family containing the generators and carrying the
/// class flags, over subsets of an m-world frame.
inline std::vector<WorldSet> close_family(const std::vector<WorldSet>& gens,
                                          int m, const LogicClass& l) {
  const WorldSet full = (WorldSet{1} << m) - 1;
  std::set<WorldSet> fam(gens.begin(), gens.end());
  if (l.topped) fam.insert(full);
  if (l.cufi) {
    bool grew = true;
    while (grew) {
      grew = false;
      const std::vector<WorldSet> snapshot(fam.begin(), fam.end());
      for (std::size_t a = 0; a < snapshot.size(); ++a)
        for (std::size_t b = a + 1; b < snapshot.size(); ++b)
          if (fam.insert(snapshot[a] & snapshot[b]).second) grew = true;
    }
  }
  if (l.monotonic) {
    std::set<WorldSet> up;
    for (WorldSet x : fam) {
      for (WorldSet s = x;; s = (s + 1) | x) {
        up.insert(s);
        if (s == full) break;
      }
    }
    fam.swap(up);
  }
  return std::vector<WorldSet>(fam.begin(), fam.end());
}

/// Builds the concrete model whose worlds are the chosen types.
inline PropositionalModel materialize_countermodel(const TypeSpace& ts,
                                                   std::uint64_t s,
                                                   const LogicClass& l) {
  std::vector<int> types;
  for (int t = 0; t < ts.type_count; ++t)
    if ((s >> t) & 1) types.push_back(t);
  const int m = static_cast<int>(types.size());
  if (m > NeighborhoodFrame::max_world_count)
    throw Error::resource("countermodel would need " + std::to_string(m) +
                          " worlds; the frame cap is " +
                          std::to_string(NeighborhoodFrame::max_world_count));
  auto world_ext = [&](std::uint64_t type_mask) {
    WorldSet x = 0;
    for (int i = 0; i < m; ++i)
      if ((type_mask >> types[static_cast<std::size_t>(i)]) & 1)
        x |= WorldSet{1} << i;
    return x;
  };
  const int pb = static_cast<int>(ts.props.size());
  std::vector<std::vector<WorldSet>> nbhd(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    std::set<WorldSet> gens;
    for (std::size_t j = 0; j < ts.box_operands.size(); ++j)
      if ((types[static_cast<std::size_t>(i)] >> (pb + static_cast<int>(j))) & 1)
        gens.insert(world_ext(s & ts.operand_mask[j]));
    nbhd[static_cast<std::size_t>(i)] =
        close_family(std::vector<WorldSet>(gens.begin(), gens.end()), m, l);
  }
  std::map<std::string, WorldSet> valuation;
  for (std::size_t i = 0; i < ts.props.size(); ++i)
    valuation[ts.props[i]] = world_ext(ts.prop_masks[i]);
  return PropositionalModel(NeighborhoodFrame(m, std::move(nbhd)),
                            std::move(valuation));
}

}  // namespace detail

/// Outcome of a validity decision.  A countermodel is present exactly when
/// the formula is invalid; it is confirmed against the model-theoretic
/// evaluator and its frame carries the class flags before being returned.
struct Verdict {
  bool valid = true;
  int semantic_bits = 0;          ///< proposition letters + boxed subformulas
  std::uint64_t world_bound = 1;  ///< countermodels are complete up to this size
  std::string assumption;         ///< scope note attached to every verdict
  std::optional<PropositionalModel> countermodel;
};

inline const char* validity_assumption_note() {
  return "decided over all neighborhood frames carrying the class flags; "
         "reading the verdict as provability assumes the class logic is "
         "complete for those frames";
}

/// Decides whether a propositional formula holds on every frame of the
/// class.  Invalid verdicts carry the first countermodel in a deterministic
/// order (fewest worlds first); the construction is exhaustive, so Valid
/// means no countermodel of any size exists over frames with the flags.
inline Verdict decide_valid(const FormulaPtr& phi, const LogicClass& l,
                            int max_bits = default_bit_bound) {
  if (!phi) throw Error::domain("decide_valid: null formula");
  detail::require_propositional(phi, "decide_valid");
  const FormulaPtr d = desugar(phi);
  detail::TypeSpace ts = detail::make_type_space({d}, max_bits, "decide_valid");
  const std::uint64_t winf = detail::surviving_types(ts, l);
  const std::uint64_t refuting = winf & ~ts.mask_of(d);

  Verdict v;
  v.semantic_bits = ts.bit_count();
  v.world_bound = std::uint64_t{1} << ts.bit_count();
  v.assumption = validity_assumption_note();
  if (refuting == 0) return v;

  v.valid = false;
  const std::uint64_t s = detail::select_countermodel_types(ts, winf, refuting, l);
  PropositionalModel model = detail::materialize_countermodel(ts, s, l);
  const FrameProperties props = check_frame_properties(model.frame());
  const FrameProperties want = required_frame_properties(l);
  if ((want.monotonic && !props.monotonic) || (want.topped && !props.topped) ||
      (want.cufi && !props.cufi))
    throw Error::construction(
        "internal: countermodel frame lost a required class flag");
  if (model_valid(model, phi))
    throw Error::construction(
        "internal: countermodel fails to refute the formula");
  v.countermodel = std::move(model);
  return v;
}

/// Finite fragment of the Lindenbaum algebra generated by a formula set:
/// the powerset algebra over the class-realizable semantic types, with the
/// box table extended canonically from the boxed-subformula constraints.
struct FragmentAlgebra {
  FiniteModalAlgebra base;
  std::map<Code, FormulaPtr> labels;       ///< element code → representative
  MeetFamilySet meets;                     ///< one family per conjunction subformula
  std::vector<Code> input_codes;           ///< code of each input, in order
  std::map<std::string, Code> prop_codes;  ///< code of each proposition letter
};

inline FragmentAlgebra lindenbaum_fragment(const std::vector<FormulaPtr>& u,
                                           const LogicClass& l) {
  if (u.empty()) throw Error::domain("lindenbaum_fragment: empty formula set");
  std::vector<FormulaPtr> ds;
  for (const FormulaPtr& f : u) {
    if (!f) throw Error::domain("lindenbaum_fragment: null formula");
    detail::require_propositional(f, "lindenbaum_fragment");
    ds.push_back(desugar(f));
  }
  detail::TypeSpace ts =
      detail::make_type_space(ds, hard_bit_ceiling, "lindenbaum_fragment");
  const std::uint64_t winf = detail::surviving_types(ts, l);
  std::vector<int> types;
  for (int t = 0; t < ts.type_count; ++t)
    if ((winf >> t) & 1) types.push_back(t);
  const int n = static_cast<int>(types.size());
  if (n == 0)
    throw Error::construction("internal: no realizable semantic types");
  if (n > FiniteModalAlgebra::max_atom_count)
    throw Error::resource(
        "lindenbaum_fragment: " + std::to_string(n) +
        " atoms exceed the algebra cap of " +
        std::to_string(FiniteModalAlgebra::max_atom_count) +
        " (4096 elements); shrink the formula set");
  const Code top = (Code{1} << n) - 1;
  auto code_of_mask = [&](std::uint64_t mask) {
    Code c = 0;
    for (int i = 0; i < n; ++i)
      if ((mask >> types[static_cast<std::size_t>(i)]) & 1) c |= Code{1} << i;
    return c;
  };
  auto code_of = [&](const FormulaPtr& f) { return code_of_mask(ts.mask_of(f)); };

  // Box table: join, over the constraint pairs (|operand|, |boxed|) whose
  // meet of operands qualifies against x, of the matching meet of boxed
  // codes.  Qualification is ≤ when monotonic, = otherwise; meets of more
  // than one pair participate only when cufi.
  std::set<std::pair<Code, Code>> pair_set;
  for (std::size_t j = 0; j < ts.box_operands.size(); ++j)
    pair_set.emplace(code_of_mask(ts.operand_mask[j]),
                     code_of_mask(ts.box_masks[j]));
  if (l.topped) pair_set.emplace(top, top);
  const std::vector<std::pair<Code, Code>> pairs(pair_set.begin(),
                                                 pair_set.end());
  std::vector<Code> box_table(std::size_t{1} << n, 0);
  for (Code x = 0; x <= top; ++x) {
    Code val = 0;
    if (l.cufi && !pairs.empty()) {
      for (std::uint32_t sub = 1; sub < (std::uint32_t{1} << pairs.size());
           ++sub) {
        Code ma = top, mb = top;
        for (std::size_t i = 0; i < pairs.size(); ++i)
          if ((sub >> i) & 1) { ma &= pairs[i].first; mb &= pairs[i].second; }
        const bool ok = l.monotonic ? (ma & ~x) == 0 : ma == x;
        if (ok) val |= mb;
      }
    } else {
      for (const auto& [a, b] : pairs) {
        const bool ok = l.monotonic ? (a & ~x) == 0 : a == x;
        if (ok) val |= b;
      }
    }
    box_table[x] = val;
  }
  FragmentAlgebra out{make_powerset_algebra(n, std::move(box_table)),
                      {}, {}, {}, {}};

  // The extension must reproduce every labelled constraint, and the algebra
  // must carry the class flags; both are checked, never assumed.
  for (const auto& [a, b] : pairs)
    if (out.base.box(a) != b)
      throw Error::construction(
          "internal: box extension disagrees with a subformula constraint");
  const AlgebraProperties got = check_algebra_properties(out.base);
  if ((l.monotonic && !got.monotonic) || (l.topped && !got.topped) ||
      (l.cufi && !got.cufi))
    throw Error::construction(
        "internal: fragment algebra lost a required class flag");

  out.labels.emplace(0, Formula::bot());
  out.labels.emplace(top, Formula::top());
  std::set<MeetFamily> meet_set;
  for (const FormulaPtr& f : ds) {
    for (const FormulaPtr& g : subformulas(f)) {
      out.labels.emplace(code_of(g), g);
      if (g->kind() != FormulaKind::conj) continue;
      MeetFamily fam;
      for (const FormulaPtr& ch : g->children()) fam.push_back(code_of(ch));
      std::sort(fam.begin(), fam.end());
      fam.erase(std::unique(fam.begin(), fam.end()), fam.end());
      if (family_meet(out.base, fam) != code_of(g))
        throw Error::construction(
            "internal: a conjunction's code is not the meet of its parts");
      meet_set.insert(std::move(fam));
    }
  }
  out.meets.assign(meet_set.begin(), meet_set.end());
  for (const FormulaPtr& f : ds) out.input_codes.push_back(code_of(f));
  for (std::size_t i = 0; i < ts.props.size(); ++i)
    out.prop_codes[ts.props[i]] = code_of_mask(ts.prop_masks[i]);
  return out;
}

/// Canonical model for a formula set: the dual frame of its fragment
/// algebra (with upward closure exactly when the class is monotonic),
/// designated meets taken from the recorded conjunction families, and the
/// valuation pushed through the canonical embedding.  The model satisfies a
/// member of the set at every world precisely when the member is valid in
/// the class; that biconditional is checked before returning.
inline PropositionalModel model_existence(const std::vector<FormulaPtr>& u,
                                          const LogicClass& l) {
  const FragmentAlgebra frag = lindenbaum_fragment(u, l);
  const DualVariant variant =
      l.monotonic ? DualVariant::with_closure : DualVariant::plain;
  const auto [f, report] = stone_map(frag.base, frag.meets, variant);
  if (!report.monomorphism() || !report.surjective)
    throw Error::construction(
        "internal: canonical embedding is not an isomorphism onto the dual");
  NeighborhoodFrame frame = l.monotonic ? build_J(frag.base, frag.meets)
                                        : build_Jbar(frag.base, frag.meets);
  const FrameProperties props = check_frame_properties(frame);
  const FrameProperties want = required_frame_properties(l);
  if ((want.monotonic && !props.monotonic) || (want.topped && !props.topped) ||
      (want.cufi && !props.cufi))
    throw Error::construction(
        "internal: canonical frame lost a required class flag");
  std::map<std::string, WorldSet> valuation;
  for (const auto& [name, code] : frag.prop_codes)
    valuation[name] = static_cast<WorldSet>(f[code]);
  PropositionalModel model(std::move(frame), std::move(valuation));
  for (std::size_t i = 0; i < u.size(); ++i) {
    const bool in_class = frag.input_codes[i] == frag.base.top();
    if (model_valid(model, u[i]) != in_class)
      throw Error::construction(
          "internal: canonical model disagrees with the fragment on " +
          print(u[i]));
  }
  return model;
}

/// ── The designated infinite frame ──────────────────────────────────────
///
/// Worlds are the natural numbers; every world's neighborhood family is the
/// collection of all cofinite subsets.  Eventually-periodic sets make its
/// membership and closure conditions decidable: a set is a neighborhood
/// exactly when its canonical period is "1".

struct CofiniteFrameReport {
  bool monotonic = false;
  bool topped = false;
  bool cufi = false;
  int checks = 0;  ///< closure checks performed on the sample battery

  bool all() const { return monotonic && topped && cufi; }
};

inline bool cofinite_frame_has(const EPSet& x) { return ep_is_cofinite(x); }

/// Certifies the three flags of the cofinite-neighborhood frame on a
/// deterministic battery of eventually-periodic sets.  A superset of a
/// cofinite set has a smaller complement and any two cofinite sets meet in
/// a cofinite set, so each check also re-verifies the complement reasoning
/// (`complement is finite`) that makes the flags hold for all sets.
inline CofiniteFrameReport check_cofinite_frame() {
  CofiniteFrameReport r;
  std::vector<EPSet> battery;
  battery.push_back(EPSet::omega());
  for (std::uint32_t i = 0; i < 8; ++i) battery.push_back(EPSet::co_singleton(i));
  for (std::uint32_t i = 1; i <= 8; ++i) battery.push_back(EPSet::tail(i));
  battery.push_back(ep_intersection(EPSet::co_singleton(0), EPSet::tail(3)));
  battery.push_back(ep_intersection(EPSet::co_singleton(5), EPSet::co_singleton(6)));

  bool mono = true, cuf = true;
  int checks = 0;
  for (const EPSet& x : battery) {
    mono = mono && cofinite_frame_has(x) && ep_is_finite(ep_complement(x));
    ++checks;
    for (const EPSet& y : battery) {
      mono = mono && cofinite_frame_has(ep_union(x, y));
      cuf = cuf && cofinite_frame_has(ep_intersection(x, y));
      checks += 2;
    }
    for (std::uint32_t j = 0; j < 8; ++j) {
      mono = mono && cofinite_frame_has(ep_union(x, EPSet::singleton(j)));
      ++checks;
    }
  }
  r.topped = cofinite_frame_has(EPSet::omega());
  ++checks;
  r.monotonic = mono;
  r.cufi = cuf;
  r.checks = checks;
  return r;
}

/// ── Barcan-style failures on the cofinite frame ─────────────────────────

/// Refutation record for ∀x □P(x) → □∀x P(x) at world 0, interpreting P(d)
/// as "everything except d" (the co-singleton of d).
struct BarcanReport {
  FormulaPtr schema;
  bool premise_holds = false;     ///< ∀x □P(x) at world 0
  bool conclusion_holds = true;   ///< □∀x P(x) at world 0
  bool refutes = false;
  CofiniteFrameReport frame;
  EPSet universal_extension = EPSet::empty();  ///< extension of ∀x P(x)
  int instances_checked = 0;
};

inline BarcanReport bf_countermodel() {
  BarcanReport r;
  r.schema = Formula::implies(
      Formula::forall("x", Formula::box(Formula::pred("P", {"x"}))),
      Formula::box(Formula::forall("x", Formula::pred("P", {"x"}))));
  r.frame = check_cofinite_frame();

  // The extension of P(d) is the co-singleton of d, whose canonical form has
  // period "1" for every d, hence is a neighborhood; each instance up to 100
  // is also checked explicitly, including its membership profile around d.
  bool premise = true;
  for (std::uint32_t d = 0; d <= 100; ++d) {
    const EPSet inst = EPSet::co_singleton(d);
    premise = premise && cofinite_frame_has(inst) && !inst.contains(d) &&
              inst.contains(d + 1) && (d == 0 || inst.contains(d - 1));
  }
  r.instances_checked = 101;
  r.premise_holds = premise;

  // The extension of ∀x P(x) is the meet of all co-singletons: empty, and
  // the empty set is not cofinite, so the conclusion fails at world 0.
  r.universal_extension = family_meet(ParametricFamily::co_singleton_family());
  r.conclusion_holds = cofinite_frame_has(r.universal_extension);
  r.refutes = r.premise_holds && !r.conclusion_holds && r.frame.all();
  return r;
}

/// Finite-arity instance (⋀_{i<k} □p_i) → □(⋀_{i<k} p_i).
inline FormulaPtr finite_omega_instance(int k) {
  if (k < 2) throw Error::domain("finite_omega_instance: arity must be >= 2");
  std::vector<FormulaPtr> boxes, letters;
  for (int i = 0; i < k; ++i) {
    FormulaPtr p = Formula::prop("p_" + std::to_string(i));
    boxes.push_back(Formula::box(p));
    letters.push_back(std::move(p));
  }
  return Formula::implies(Formula::conj(std::move(boxes)),
                          Formula::box(Formula::conj(std::move(letters))));
}

namespace detail {

/// Finite instances of the schematic conjunction reduce world-by-world to
/// k-ary meet closure of the neighborhood family, so checking every family
/// over every small world count covers every frame assembled from them.
inline bool cufi_families_absorb_finite_meets(int max_arity, int max_worlds) {
  for (int m = 1; m <= max_worlds; ++m) {
    const int subsets = 1 << m;
    for (std::uint32_t fam = 0; fam < (std::uint32_t{1} << subsets); ++fam) {
      std::vector<WorldSet> members;
      for (int x = 0; x < subsets; ++x)
        if ((fam >> x) & 1) members.push_back(static_cast<WorldSet>(x));
      bool pairwise = true;
      for (WorldSet a : members)
        for (WorldSet b : members)
          if (!((fam >> (a & b)) & 1)) pairwise = false;
      if (!pairwise) continue;  // not a cufi family; not in scope
      for (int k = 2; k <= max_arity; ++k) {
        std::vector<std::size_t> pick(static_cast<std::size_t>(k), 0);
        for (;;) {
          if (members.empty()) break;
          WorldSet meet = ~WorldSet{0};
          for (std::size_t i : pick) meet &= members[i];
          meet &= static_cast<WorldSet>(subsets - 1);
          if (!((fam >> meet) & 1)) return false;
          std::size_t pos = pick.size();
          while (pos > 0 && pick[pos - 1] + 1 == members.size()) --pos;
          if (pos == 0) break;
          ++pick[pos - 1];
          for (std::size_t i = pos; i < pick.size(); ++i) pick[i] = 0;
        }
      }
    }
  }
  return true;
}

}  // namespace detail

/// Refutation record for the schematic (⋀_i □p_i) → □(⋀_i p_i) at world 0,
/// with v(p_i) = everything except i, together with the finite contrast:
/// every finite-arity instance is valid on every cufi frame.
struct OmegaBarcanReport {
  FormulaPtr schema;
  bool premise_holds = false;
  bool conclusion_holds = true;
  bool refutes = false;
  CofiniteFrameReport frame;
  EPSet conjunction_extension = EPSet::empty();  ///< extension of ⋀_i p_i
  int instances_checked = 0;
  bool finite_contrast_valid = false;
  int contrast_max_arity = 0;
  int contrast_max_worlds = 0;
};

inline OmegaBarcanReport omega_bf_countermodel() {
  OmegaBarcanReport r;
  r.schema = Formula::implies(
      Formula::omega_conj("i", Formula::box(Formula::prop("p_i"))),
      Formula::box(Formula::omega_conj("i", Formula::prop("p_i"))));
  r.frame = check_cofinite_frame();

  bool premise = true;
  for (std::uint32_t i = 0; i <= 100; ++i) {
    const EPSet vi = EPSet::co_singleton(i);
    premise = premise && cofinite_frame_has(vi) && !vi.contains(i) &&
              vi.contains(i + 1);
  }
  r.instances_checked = 101;
  r.premise_holds = premise;

  r.conjunction_extension =
      family_meet(ParametricFamily::co_singleton_family());
  r.conclusion_holds = cofinite_frame_has(r.conjunction_extension);
  r.refutes = r.premise_holds && !r.conclusion_holds && r.frame.all();

  // Finite contrast: family-level exhaustion at m ≤ 3, cross-checked with
  // the model-theoretic evaluator over every cufi frame with m ≤ 2.
  r.contrast_max_arity = 3;
  r.contrast_max_worlds = 3;
  bool contrast = detail::cufi_families_absorb_finite_meets(
      r.contrast_max_arity, r.contrast_max_worlds);
  for (int m = 1; m <= 2 && contrast; ++m) {
    const std::vector<NeighborhoodFrame> frames =
        enumerate_frames(m, FrameProperties{false, false, true}, 1 << 20);
    for (int k = 2; k <= r.contrast_max_arity && contrast; ++k)
      contrast = contrast && class_valid(frames, finite_omega_instance(k), 1);
  }
  r.finite_contrast_valid = contrast;
  return r;
}

}  // namespace nbhd
