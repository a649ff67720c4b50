#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "nbhd/algebra.hpp"
#include "nbhd/duality.hpp"
#include "nbhd/epset.hpp"
#include "nbhd/error.hpp"
#include "nbhd/formula.hpp"
#include "nbhd/frame.hpp"
#include "nbhd/lab.hpp"
#include "nbhd/semantics.hpp"

/// JSON readers and writers for every value the library exchanges with the
/// outside world.  Writers produce the documented wire shapes; readers accept
/// exactly those shapes and throw Error::parse (malformed JSON or wrong
/// structure) or whatever the underlying constructor throws (semantic
/// violations), so a round trip through a reader re-validates every value.
namespace nbhd {

using Json = nlohmann::json;

namespace detail {

inline Json parse_json_text(const std::string& text, const std::string& what) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded())
    throw Error::parse(what + ": input is not well-formed JSON");
  return j;
}

inline const Json& require_field(const Json& j, const char* key,
                                 const std::string& what) {
  if (!j.is_object())
    throw Error::parse(what + ": expected a JSON object");
  auto it = j.find(key);
  if (it == j.end())
    throw Error::parse(what + ": missing field \"" + key + "\"");
  return *it;
}

inline std::uint64_t require_uint(const Json& j, const std::string& what) {
  if (!(j.is_number_integer() || j.is_number_unsigned()) ||
      (j.is_number_integer() && j.get<std::int64_t>() < 0))
    throw Error::parse(what + ": expected a non-negative integer");
  return j.get<std::uint64_t>();
}

inline Code require_code(const Json& j, const std::string& what) {
  const std::uint64_t v = require_uint(j, what);
  if (v > 0xffffffffull)
    throw Error::parse(what + ": value " + std::to_string(v) +
                       " does not fit a 32-bit code");
  return static_cast<Code>(v);
}

inline std::string require_string(const Json& j, const std::string& what) {
  if (!j.is_string()) throw Error::parse(what + ": expected a string");
  return j.get<std::string>();
}

inline const Json& require_array(const Json& j, const std::string& what) {
  if (!j.is_array()) throw Error::parse(what + ": expected an array");
  return j;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Algebras, filters, meet families
// ---------------------------------------------------------------------------

inline Json to_json(const FiniteModalAlgebra& a) {
  Json box = Json::array();
  for (Code c : a.box_table()) box.push_back(c);
  return Json{{"atoms", a.atom_count()}, {"box", std::move(box)}};
}

inline FiniteModalAlgebra algebra_from_json(const Json& j) {
  const std::string what = "algebra";
  const int atoms = static_cast<int>(
      detail::require_uint(detail::require_field(j, "atoms", what), what));
  const Json& box = detail::require_array(detail::require_field(j, "box", what), what);
  std::vector<Code> table;
  table.reserve(box.size());
  for (const Json& entry : box)
    table.push_back(detail::require_code(entry, what + " box table"));
  return FiniteModalAlgebra(atoms, std::move(table));
}

/// Filters travel as their sorted element-code arrays.
inline Json to_json(const Filter& f) {
  Json out = Json::array();
  for (Code c : f.elements) out.push_back(c);
  return out;
}

inline Filter filter_from_json(const Json& j) {
  const std::string what = "filter";
  Filter f;
  for (const Json& entry : detail::require_array(j, what))
    f.elements.push_back(detail::require_code(entry, what));
  if (!std::is_sorted(f.elements.begin(), f.elements.end()))
    throw Error::parse(what + ": element codes must be sorted ascending");
  return f;
}

/// A meet-family set travels as an array of arrays of element codes.
inline Json to_json(const MeetFamilySet& s) {
  Json out = Json::array();
  for (const MeetFamily& fam : s) {
    Json row = Json::array();
    for (Code c : fam) row.push_back(c);
    out.push_back(std::move(row));
  }
  return out;
}

inline MeetFamilySet meet_families_from_json(const Json& j) {
  const std::string what = "meet families";
  MeetFamilySet s;
  for (const Json& row : detail::require_array(j, what)) {
    MeetFamily fam;
    for (const Json& entry : detail::require_array(row, what))
      fam.push_back(detail::require_code(entry, what));
    s.push_back(std::move(fam));
  }
  return s;
}

// ---------------------------------------------------------------------------
// Eventually periodic sets
// ---------------------------------------------------------------------------

inline Json to_json(const EPSet& x) {
  return Json{{"prefix", x.prefix()}, {"period", x.period()}};
}

inline EPSet epset_from_json(const Json& j) {
  const std::string what = "epset";
  return EPSet::make(
      detail::require_string(detail::require_field(j, "prefix", what), what),
      detail::require_string(detail::require_field(j, "period", what), what));
}

// ---------------------------------------------------------------------------
// Frames and property records
// ---------------------------------------------------------------------------

inline Json to_json(const NeighborhoodFrame& z) {
  Json nbhd = Json::array();
  for (int c = 0; c < z.world_count(); ++c) {
    Json row = Json::array();
    for (WorldSet x : z.neighborhoods(c)) row.push_back(x);
    nbhd.push_back(std::move(row));
  }
  return Json{{"worlds", z.world_count()}, {"nbhd", std::move(nbhd)}};
}

inline NeighborhoodFrame frame_from_json(const Json& j) {
  const std::string what = "frame";
  const int worlds = static_cast<int>(
      detail::require_uint(detail::require_field(j, "worlds", what), what));
  const Json& nbhd = detail::require_array(detail::require_field(j, "nbhd", what), what);
  std::vector<std::vector<WorldSet>> families;
  families.reserve(nbhd.size());
  for (const Json& row : nbhd) {
    std::vector<WorldSet> fam;
    for (const Json& entry : detail::require_array(row, what + " neighborhoods"))
      fam.push_back(detail::require_code(entry, what + " neighborhoods"));
    families.push_back(std::move(fam));
  }
  return NeighborhoodFrame(worlds, std::move(families));
}

inline Json to_json(const FrameProperties& p) {
  return Json{{"monotonic", p.monotonic}, {"topped", p.topped}, {"cufi", p.cufi}};
}

inline Json to_json(const AlgebraProperties& p) {
  return Json{{"monotonic", p.monotonic}, {"topped", p.topped}, {"cufi", p.cufi}};
}

// ---------------------------------------------------------------------------
// Models
// ---------------------------------------------------------------------------

/// Propositional model: the frame fields plus "valuation", a map from
/// proposition letters to truth-set codes.
inline Json to_json(const PropositionalModel& m) {
  Json j = to_json(m.frame());
  Json val = Json::object();
  for (const auto& [name, set] : m.valuation()) val[name] = set;
  j["valuation"] = std::move(val);
  return j;
}

inline PropositionalModel prop_model_from_json(const Json& j) {
  const std::string what = "model valuation";
  NeighborhoodFrame z = frame_from_json(j);
  const Json& val = detail::require_field(j, "valuation", what);
  if (!val.is_object()) throw Error::parse(what + ": expected an object");
  std::map<std::string, WorldSet> valuation;
  for (auto it = val.begin(); it != val.end(); ++it)
    valuation[it.key()] = detail::require_code(it.value(), what);
  return PropositionalModel(std::move(z), std::move(valuation));
}

/// Predicate model: the frame fields plus "domain" (its size) and "interp",
/// mapping each predicate name to one tuple list per world.
inline Json to_json(const PredicateModel& m) {
  Json j = to_json(m.frame());
  j["domain"] = m.domain_size();
  Json interp = Json::object();
  for (const auto& [name, per_world] : m.interpretation()) {
    Json worlds = Json::array();
    for (const auto& tuples : per_world) {
      Json rows = Json::array();
      for (const auto& tuple : tuples) rows.push_back(tuple);
      worlds.push_back(std::move(rows));
    }
    interp[name] = std::move(worlds);
  }
  j["interp"] = std::move(interp);
  return j;
}

inline PredicateModel pred_model_from_json(const Json& j) {
  const std::string what = "predicate model";
  NeighborhoodFrame z = frame_from_json(j);
  const int domain = static_cast<int>(
      detail::require_uint(detail::require_field(j, "domain", what), what));
  const Json& interp = detail::require_field(j, "interp", what);
  if (!interp.is_object()) throw Error::parse(what + ": interp must be an object");
  Interpretation out;
  for (auto it = interp.begin(); it != interp.end(); ++it) {
    std::vector<std::set<std::vector<int>>> per_world;
    for (const Json& rows : detail::require_array(it.value(), what + " interp")) {
      std::set<std::vector<int>> tuples;
      for (const Json& row : detail::require_array(rows, what + " interp")) {
        std::vector<int> tuple;
        for (const Json& v : detail::require_array(row, what + " tuple"))
          tuple.push_back(static_cast<int>(detail::require_uint(v, what + " tuple")));
        tuples.insert(std::move(tuple));
      }
      per_world.push_back(std::move(tuples));
    }
    out[it.key()] = std::move(per_world);
  }
  return PredicateModel(std::move(z), domain, std::move(out));
}

// ---------------------------------------------------------------------------
// Reports and verdicts
// ---------------------------------------------------------------------------

inline Json to_json(const EmbeddingReport& r) {
  Json witnesses = Json::array();
  for (Code c : r.witnesses) witnesses.push_back(c);
  return Json{{"injective", r.injective},
              {"boolean_homomorphism", r.boolean_homomorphism},
              {"box_preserved", r.box_preserved},
              {"meets_preserved", r.meets_preserved},
              {"surjective", r.surjective},
              {"monomorphism", r.monomorphism()},
              {"witnesses", std::move(witnesses)}};
}

inline Json to_json(const Verdict& v) {
  Json j{{"status", v.valid ? "valid" : "invalid"},
         {"bound", v.world_bound},
         {"countermodel", nullptr},
         {"semantic_bits", v.semantic_bits},
         {"assumption", v.assumption}};
  if (v.countermodel) j["countermodel"] = to_json(*v.countermodel);
  return j;
}

inline Json to_json(const CofiniteFrameReport& r) {
  return Json{{"monotonic", r.monotonic},
              {"topped", r.topped},
              {"cufi", r.cufi},
              {"checks", r.checks}};
}

inline Json to_json(const BarcanReport& r) {
  return Json{{"schema", print(r.schema)},
              {"premise_holds", r.premise_holds},
              {"conclusion_holds", r.conclusion_holds},
              {"refutes", r.refutes},
              {"frame", to_json(r.frame)},
              {"universal_extension", to_json(r.universal_extension)},
              {"instances_checked", r.instances_checked}};
}

inline Json to_json(const OmegaBarcanReport& r) {
  return Json{{"schema", print(r.schema)},
              {"premise_holds", r.premise_holds},
              {"conclusion_holds", r.conclusion_holds},
              {"refutes", r.refutes},
              {"frame", to_json(r.frame)},
              {"conjunction_extension", to_json(r.conjunction_extension)},
              {"instances_checked", r.instances_checked},
              {"finite_contrast_valid", r.finite_contrast_valid},
              {"contrast_max_arity", r.contrast_max_arity},
              {"contrast_max_worlds", r.contrast_max_worlds}};
}

/// Uniform error payload: {"error": {"kind": ..., "message": ...}}.
inline Json error_to_json(const Error& e) {
  return Json{{"error", Json{{"kind", to_string(e.kind())}, {"message", e.what()}}}};
}

}  // namespace nbhd
