#pragma once

#include <atomic>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "nbhd/json_io.hpp"
#include "nbhd/parallel.hpp"

/// Command-line surface.  `run` parses an argument vector and returns a
/// CommandReport without touching the process state, so commands are testable
/// in-process; `run_main` adds the printing convention (payload JSON on
/// standard output, diagnostics on standard error) and the exit code.
namespace nbhd::cli {

struct CommandReport {
  std::string command;           ///< verb name, empty when parsing failed
  Json inputs = Json::object();  ///< echo of the parsed inputs
  Json result;                   ///< payload, or error object; null = nothing to print
  int exit_code = 0;             ///< 0 ok, 1 domain error, 2 usage error
  bool pretty = false;
  std::string diagnostics;       ///< human-readable text for standard error
};

namespace detail {

inline std::string read_text(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error::domain("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Json read_json(const std::string& path, const std::string& what) {
  return nbhd::detail::parse_json_text(read_text(path), what);
}

inline std::string language_of(const FormulaPtr& f) {
  bool predicate = false;
  bool schematic = false;
  auto walk = [&](auto&& self, const Formula& node) -> void {
    switch (node.kind()) {
      case FormulaKind::pred_atom:
      case FormulaKind::forall:
      case FormulaKind::exists: predicate = true; break;
      case FormulaKind::omega_conj: schematic = true; break;
      default: break;
    }
    for (const FormulaPtr& c : node.children()) self(self, *c);
  };
  walk(walk, *f);
  if (schematic) return "schematic";
  if (predicate) return "predicate";
  return "propositional";
}

// ---------------------------------------------------------------------------
// Self-test suites.  Each suite re-runs a module's headline invariants at a
// scale chosen for interactive use; --exhaustive widens the sweeps.
// ---------------------------------------------------------------------------

struct SuiteResult {
  std::string name;
  bool passed = true;
  std::uint64_t checks = 0;
};

inline EPSet random_epset(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> plen(0, 6), qlen(1, 4), bit(0, 1);
  std::string prefix, period;
  const int np = plen(rng), nq = qlen(rng);
  for (int i = 0; i < np; ++i) prefix += static_cast<char>('0' + bit(rng));
  for (int i = 0; i < nq; ++i) period += static_cast<char>('0' + bit(rng));
  return EPSet::make(prefix, period);
}

inline NeighborhoodFrame random_frame(std::mt19937_64& rng, int m) {
  std::uniform_int_distribution<std::uint32_t> pick(
      0, (std::uint32_t{1} << (std::uint32_t{1} << m)) - 1);
  std::vector<std::vector<WorldSet>> nb(static_cast<std::size_t>(m));
  for (int w = 0; w < m; ++w) {
    const std::uint32_t mask = pick(rng);
    for (std::uint32_t s = 0; s < (std::uint32_t{1} << m); ++s)
      if (mask >> s & 1u) nb[static_cast<std::size_t>(w)].push_back(s);
  }
  return NeighborhoodFrame(m, std::move(nb));
}

inline SuiteResult epset_laws_suite(std::uint64_t trials, int jobs) {
  SuiteResult r{"epset-laws", true, 0};
  std::atomic<std::uint64_t> checks{0};
  std::atomic<bool> ok{true};
  parallel_for(0, trials, jobs, [&](std::uint64_t i) {
    std::mt19937_64 rng(0x9e3779b97f4a7c15ull ^ (i * 0xbf58476d1ce4e5b9ull + 1));
    const EPSet x = random_epset(rng), y = random_epset(rng);
    std::uint64_t local = 0;
    bool good = true;
    auto chk = [&](bool b) {
      ++local;
      good = good && b;
    };
    const EPSet u = ep_union(x, y), n = ep_intersection(x, y);
    for (std::uint64_t s = 0; s < 80; ++s) {
      chk(u.contains(s) == (x.contains(s) || y.contains(s)));
      chk(n.contains(s) == (x.contains(s) && y.contains(s)));
    }
    chk(ep_complement(ep_complement(x)) == x);
    chk(ep_complement(u) == ep_intersection(ep_complement(x), ep_complement(y)));
    chk(ep_subset(n, x) && ep_subset(x, u));
    chk(EPSet::make(x.prefix(), x.period()) == x);
    chk(ep_is_cofinite(x) == ep_is_finite(ep_complement(x)));
    checks += local;
    if (!good) ok = false;
  });
  r.checks = checks;
  r.passed = ok;
  return r;
}

/// Enumerates the `t`-th box table of a powerset algebra on `atoms` atoms;
/// each element code contributes `atoms` bits of the encoding.
inline FiniteModalAlgebra table_algebra(int atoms, std::uint64_t t) {
  const Code size = Code{1} << atoms;
  std::vector<Code> table(size);
  for (Code x = 0; x < size; ++x)
    table[x] = static_cast<Code>((t >> (atoms * x)) & (size - 1));
  return make_powerset_algebra(atoms, std::move(table));
}

inline MeetFamilySet small_families(const FiniteModalAlgebra& a) {
  MeetFamilySet fams;
  for (Code x = 0; x < a.size(); ++x) fams.push_back({x});
  for (Code x = 0; x < a.size(); ++x)
    for (Code y = x + 1; y < a.size(); ++y) fams.push_back({x, y});
  return fams;
}

inline SuiteResult representation_suite(bool exhaustive, int jobs) {
  SuiteResult r{"duality-representation", true, 0};
  std::atomic<std::uint64_t> checks{0};
  std::atomic<bool> ok{true};
  auto visit = [&](int atoms, std::uint64_t t) {
    const FiniteModalAlgebra a = table_algebra(atoms, t);
    const MeetFamilySet fams = small_families(a);
    std::uint64_t local = 0;
    bool good = true;
    auto [map_plain, plain] = stone_map(a, fams, DualVariant::plain);
    ++local;
    good = good && plain.monomorphism();
    if (check_algebra_properties(a).monotonic) {
      auto [map_closed, closed] = stone_map(a, fams, DualVariant::with_closure);
      ++local;
      good = good && closed.monomorphism();
    }
    checks += local;
    if (!good) ok = false;
  };
  for (std::uint64_t t = 0; t < 4; ++t) visit(1, t);
  const std::uint64_t stride = exhaustive ? 1 : 8;
  parallel_for(0, 256 / stride, jobs,
               [&](std::uint64_t i) { visit(2, i * stride); });
  r.checks = checks;
  r.passed = ok;
  return r;
}

inline SuiteResult property_transfer_suite(bool exhaustive, int jobs) {
  SuiteResult r{"property-transfer", true, 0};
  std::uint64_t checks = 0;
  bool ok = true;
  auto chk = [&](bool b) {
    ++checks;
    ok = ok && b;
  };
  auto frame_to_algebra = [&](const NeighborhoodFrame& z) {
    const FrameProperties fp = check_frame_properties(z);
    const AlgebraProperties ap = check_algebra_properties(build_K(z));
    if (fp.monotonic) chk(ap.monotonic);
    if (fp.topped) chk(ap.topped);
    if (fp.cufi) chk(ap.cufi);
  };
  for (int m = 1; m <= 2; ++m)
    for (const NeighborhoodFrame& z : enumerate_frames(m, {}, UINT64_MAX))
      frame_to_algebra(z);

  const std::uint64_t samples = exhaustive ? 20000 : 2000;
  std::atomic<std::uint64_t> sample_checks{0};
  std::atomic<bool> sample_ok{true};
  parallel_for(0, samples, jobs, [&](std::uint64_t i) {
    std::mt19937_64 rng(0xabcdef12u + i);
    const NeighborhoodFrame z = random_frame(rng, 3);
    const FrameProperties fp = check_frame_properties(z);
    const AlgebraProperties ap = check_algebra_properties(build_K(z));
    bool good = true;
    if (fp.monotonic) good = good && ap.monotonic;
    if (fp.topped) good = good && ap.topped;
    if (fp.cufi) good = good && ap.cufi;
    sample_checks += 1;
    if (!good) sample_ok = false;
  });
  checks += sample_checks;
  ok = ok && sample_ok;

  for (std::uint64_t t = 0; t < 256; t += exhaustive ? 1 : 8) {
    const FiniteModalAlgebra a = table_algebra(2, t);
    const AlgebraProperties ap = check_algebra_properties(a);
    const FrameProperties plain = check_frame_properties(build_Jbar(a, {}));
    if (ap.topped) chk(plain.topped);
    if (ap.cufi) chk(plain.cufi);
    if (ap.monotonic) {
      const FrameProperties closed = check_frame_properties(build_J(a, {}));
      chk(closed.monotonic);
      if (ap.topped) chk(closed.topped);
      if (ap.cufi) chk(closed.cufi);
    }
  }
  r.checks = checks;
  r.passed = ok;
  return r;
}

inline SuiteResult axiom_separation_suite() {
  SuiteResult r{"axiom-separation", true, 0};
  const FormulaPtr m_axiom = nbhd::parse("[](p & q) -> ([]p & []q)");
  const FormulaPtr n_axiom = nbhd::parse("[]T");
  const FormulaPtr c_axiom = nbhd::parse("([]p & []q) -> [](p & q)");
  for (int bits = 0; bits < 8; ++bits) {
    const LogicClass l{(bits & 1) != 0, (bits & 2) != 0, (bits & 4) != 0};
    auto chk = [&](bool b) {
      ++r.checks;
      r.passed = r.passed && b;
    };
    chk(decide_valid(m_axiom, l).valid == l.monotonic);
    chk(decide_valid(n_axiom, l).valid == l.topped);
    chk(decide_valid(c_axiom, l).valid == l.cufi);
  }
  return r;
}

inline SuiteResult fragment_model_suite() {
  SuiteResult r{"fragment-model-existence", true, 0};
  // Each entry stays within three semantic bits so the fragment algebra of
  // every class fits under the atom cap.
  const std::vector<std::string> corpus = {"[]p", "[]T", "p -> p", "[]p -> p"};
  const std::vector<std::string> classes = {"", "m", "t", "mtc"};
  for (const std::string& text : corpus) {
    const FormulaPtr f = nbhd::parse(text);
    for (const std::string& cls : classes) {
      const LogicClass l = parse_logic_class(cls);
      const PropositionalModel model = model_existence({f}, l);
      const bool in_class = decide_valid(f, l, hard_bit_ceiling).valid;
      ++r.checks;
      r.passed = r.passed && (model_valid(model, f) == in_class);
    }
  }
  return r;
}

inline SuiteResult demo_suite() {
  SuiteResult r{"barcan-demos", true, 0};
  auto chk = [&](bool b) {
    ++r.checks;
    r.passed = r.passed && b;
  };
  const BarcanReport bf = bf_countermodel();
  chk(bf.premise_holds);
  chk(!bf.conclusion_holds);
  chk(bf.refutes);
  chk(bf.frame.all());
  chk(bf.universal_extension == EPSet::empty());
  const OmegaBarcanReport om = omega_bf_countermodel();
  chk(om.premise_holds);
  chk(!om.conclusion_holds);
  chk(om.refutes);
  chk(om.frame.all());
  chk(om.finite_contrast_valid);
  return r;
}

inline SuiteResult json_roundtrip_suite() {
  SuiteResult r{"json-roundtrip", true, 0};
  auto chk = [&](bool b) {
    ++r.checks;
    r.passed = r.passed && b;
  };
  auto same_frame = [](const NeighborhoodFrame& a, const NeighborhoodFrame& b) {
    if (a.world_count() != b.world_count()) return false;
    for (int w = 0; w < a.world_count(); ++w)
      if (a.neighborhoods(w) != b.neighborhoods(w)) return false;
    return true;
  };
  auto same_algebra = [](const FiniteModalAlgebra& a, const FiniteModalAlgebra& b) {
    return a.atom_count() == b.atom_count() && a.box_table() == b.box_table();
  };

  for (std::uint64_t t = 0; t < 256; t += 8) {
    const FiniteModalAlgebra a = table_algebra(2, t);
    chk(same_algebra(a, algebra_from_json(to_json(a))));
  }
  for (int m = 1; m <= 2; ++m)
    for (const NeighborhoodFrame& z : enumerate_frames(m, {}, UINT64_MAX))
      chk(same_frame(z, frame_from_json(to_json(z))));

  std::mt19937_64 rng(2026);
  for (int i = 0; i < 200; ++i) {
    const EPSet x = random_epset(rng);
    chk(epset_from_json(to_json(x)) == x);
  }

  const FiniteModalAlgebra id2 = table_algebra(2, 0b11'10'01'00);
  for (Code x = 0; x < id2.size(); ++x) {
    const Filter f = principal_filter(id2, x);
    chk(filter_from_json(to_json(f)) == f);
  }
  const MeetFamilySet meets = {{0, 1}, {2}, {1, 2, 3}};
  chk(meet_families_from_json(to_json(meets)) == meets);

  const NeighborhoodFrame z2(2, {{1, 3}, {}});
  const PropositionalModel pm(z2, {{"p", 1}, {"q", 2}});
  const PropositionalModel pm2 = prop_model_from_json(to_json(pm));
  chk(same_frame(pm.frame(), pm2.frame()) && pm.valuation() == pm2.valuation());

  const PredicateModel dm(z2, 2, {{"P", {{{0}, {1}}, {{0}}}}});
  const PredicateModel dm2 = pred_model_from_json(to_json(dm));
  chk(same_frame(dm.frame(), dm2.frame()) && dm.domain_size() == dm2.domain_size() &&
      dm.interpretation() == dm2.interpretation());

  const Verdict v = decide_valid(nbhd::parse("[]T"), LogicClass{});
  chk(!v.valid && v.countermodel.has_value());
  if (v.countermodel) {
    const Json vj = to_json(v);
    const PropositionalModel back = prop_model_from_json(vj["countermodel"]);
    chk(same_frame(back.frame(), v.countermodel->frame()) &&
        back.valuation() == v.countermodel->valuation());
  }
  return r;
}

inline Json to_json(const SuiteResult& s) {
  return Json{{"name", s.name}, {"passed", s.passed}, {"checks", s.checks}};
}

// ---------------------------------------------------------------------------
// Verb handlers
// ---------------------------------------------------------------------------

inline Json parse_cmd(const std::string& file) {
  std::string text = read_text(file);
  const FormulaPtr f = nbhd::parse(text);
  return Json{{"formula", print(f)}, {"language", language_of(f)}};
}

inline Json check_frame_cmd(const std::string& file) {
  const NeighborhoodFrame z = frame_from_json(read_json(file, "frame"));
  return Json{{"worlds", z.world_count()},
              {"properties", nbhd::to_json(check_frame_properties(z))}};
}

inline Json check_algebra_cmd(const std::string& file) {
  const FiniteModalAlgebra a = algebra_from_json(read_json(file, "algebra"));
  return Json{{"atoms", a.atom_count()},
              {"properties", nbhd::to_json(check_algebra_properties(a))}};
}

inline MeetFamilySet meets_from_file(const std::optional<std::string>& path) {
  if (!path) return {};
  return meet_families_from_json(read_json(*path, "meet families"));
}

inline Json dualize_cmd(bool use_j, bool use_jbar, bool use_k,
                        const std::string& file,
                        const std::optional<std::string>& meets_path) {
  if (use_k) {
    const NeighborhoodFrame z = frame_from_json(read_json(file, "frame"));
    return nbhd::to_json(build_K(z));
  }
  const FiniteModalAlgebra a = algebra_from_json(read_json(file, "algebra"));
  const MeetFamilySet s = meets_from_file(meets_path);
  const NeighborhoodFrame z = use_j ? build_J(a, s) : build_Jbar(a, s);
  (void)use_jbar;
  return nbhd::to_json(z);
}

inline Json represent_cmd(const std::string& file, const std::string& meets_path,
                          bool plain_variant) {
  const FiniteModalAlgebra a = algebra_from_json(read_json(file, "algebra"));
  const MeetFamilySet s =
      meet_families_from_json(read_json(meets_path, "meet families"));
  const DualVariant variant =
      plain_variant ? DualVariant::plain : DualVariant::with_closure;
  auto [map, report] = stone_map(a, s, variant);
  Json j = nbhd::to_json(report);
  Json codes = Json::array();
  for (Code c : map) codes.push_back(c);
  j["map"] = std::move(codes);
  j["variant"] = plain_variant ? "jbar" : "j";
  return j;
}

inline Json decide_cmd(const std::string& formula, const std::string& cls,
                       int bound) {
  const FormulaPtr f = nbhd::parse(formula);
  const LogicClass l = parse_logic_class(cls);
  return nbhd::to_json(decide_valid(f, l, bound));
}

inline Json countermodel_cmd(const std::string& formula, const std::string& cls,
                             int max_worlds) {
  const FormulaPtr f = nbhd::parse(formula);
  const LogicClass l = parse_logic_class(cls);
  const Verdict v = decide_valid(f, l);
  if (!v.valid && v.countermodel &&
      v.countermodel->frame().world_count() > max_worlds) {
    throw Error::resource(
        "smallest countermodel uses " +
        std::to_string(v.countermodel->frame().world_count()) +
        " worlds, above --max-worlds " + std::to_string(max_worlds));
  }
  Json j = nbhd::to_json(v);
  j["max_worlds"] = max_worlds;
  return j;
}

inline Json model_existence_cmd(const std::string& formulas_path,
                                const std::string& cls) {
  const Json list = read_json(formulas_path, "formula list");
  if (!list.is_array())
    throw Error::parse("formula list: expected a JSON array of formula strings");
  std::vector<FormulaPtr> u;
  for (const Json& entry : list) {
    if (!entry.is_string())
      throw Error::parse("formula list: expected a JSON array of formula strings");
    u.push_back(nbhd::parse(entry.get<std::string>()));
  }
  const LogicClass l = parse_logic_class(cls);
  const PropositionalModel model = nbhd::model_existence(u, l);
  Json rows = Json::array();
  bool biconditional = true;
  for (const FormulaPtr& f : u) {
    const bool holds = model_valid(model, f);
    const bool in_class = decide_valid(f, l, hard_bit_ceiling).valid;
    biconditional = biconditional && (holds == in_class);
    rows.push_back(Json{{"formula", print(f)},
                        {"valid_in_class", in_class},
                        {"holds_in_model", holds}});
  }
  return Json{{"model", nbhd::to_json(model)},
              {"formulas", std::move(rows)},
              {"biconditional", biconditional}};
}

inline Json selftest_cmd(bool exhaustive, int jobs) {
  std::vector<SuiteResult> suites;
  suites.push_back(epset_laws_suite(exhaustive ? 20000 : 2000, jobs));
  suites.push_back(representation_suite(exhaustive, jobs));
  suites.push_back(property_transfer_suite(exhaustive, jobs));
  suites.push_back(axiom_separation_suite());
  suites.push_back(fragment_model_suite());
  suites.push_back(demo_suite());
  suites.push_back(json_roundtrip_suite());
  bool all = true;
  Json arr = Json::array();
  for (const SuiteResult& s : suites) {
    all = all && s.passed;
    arr.push_back(to_json(s));
  }
  return Json{{"passed", all},
              {"exhaustive", exhaustive},
              {"jobs", jobs},
              {"suites", std::move(arr)}};
}

}  // namespace detail

inline CommandReport run(const std::vector<std::string>& args) {
  CommandReport report;

  CLI::App app{"neighborhood-semantics toolkit for non-normal modal logics", "nbhd"};
  app.require_subcommand(1);
  bool pretty = false;
  std::optional<int> jobs_flag;
  app.add_flag("--pretty", pretty, "indent the JSON output");
  app.add_option("--jobs", jobs_flag, "cap worker threads (default: NBHD_DUALITY_JOBS, then hardware)")
      ->check(CLI::PositiveNumber);

  std::string parse_file;
  CLI::App* cmd_parse =
      app.add_subcommand("parse", "parse a formula from FILE (or - for stdin) and reprint it");
  cmd_parse->add_option("file", parse_file, "formula text file, or - for stdin")->required();

  std::string frame_file;
  CLI::App* cmd_frame = app.add_subcommand("check-frame", "report the properties of a frame");
  cmd_frame->add_option("file", frame_file, "frame JSON file")->required();

  std::string algebra_file;
  CLI::App* cmd_algebra =
      app.add_subcommand("check-algebra", "report the properties of a modal algebra");
  cmd_algebra->add_option("file", algebra_file, "algebra JSON file")->required();

  std::string dualize_file;
  std::optional<std::string> dualize_meets;
  bool flag_j = false, flag_jbar = false, flag_k = false;
  CLI::App* cmd_dualize = app.add_subcommand(
      "dualize", "map an algebra to its dual frame (--j, --jbar) or a frame to its complex algebra (--k)");
  CLI::App* mode = cmd_dualize->add_option_group("mode", "dual construction");
  mode->add_flag("--j", flag_j, "closed dual frame (requires a monotonic algebra)");
  mode->add_flag("--jbar", flag_jbar, "plain dual frame (any algebra)");
  CLI::Option* k_opt = mode->add_flag("--k", flag_k, "complex algebra of a frame");
  mode->require_option(1);
  cmd_dualize->add_option("file", dualize_file, "algebra or frame JSON file")->required();
  cmd_dualize->add_option("--meets", dualize_meets, "designated meet families JSON file")
      ->excludes(k_opt);

  std::string represent_file, represent_meets;
  bool represent_jbar = false;
  CLI::App* cmd_represent = app.add_subcommand(
      "represent", "embed an algebra into the complex algebra of its dual frame and report the checks");
  cmd_represent->add_option("file", represent_file, "algebra JSON file")->required();
  cmd_represent->add_option("--meets", represent_meets, "designated meet families JSON file")
      ->required();
  cmd_represent->add_flag("--jbar", represent_jbar, "use the plain dual frame");

  std::string decide_formula, decide_class;
  int decide_bound = default_bit_bound;
  CLI::App* cmd_decide =
      app.add_subcommand("decide", "decide validity of a formula over a frame class");
  cmd_decide->add_option("formula", decide_formula, "formula text")->required();
  cmd_decide->add_option("--class", decide_class, "class flags, a comma set from {m,t,c}")
      ->required();
  cmd_decide->add_option("--bound", decide_bound, "semantic bit budget")
      ->check(CLI::Range(1, hard_bit_ceiling));

  std::string counter_formula, counter_class;
  int counter_max_worlds = 0;
  CLI::App* cmd_counter =
      app.add_subcommand("countermodel", "search for a countermodel within a world budget");
  cmd_counter->add_option("formula", counter_formula, "formula text")->required();
  cmd_counter->add_option("--class", counter_class, "class flags, a comma set from {m,t,c}")
      ->required();
  cmd_counter->add_option("--max-worlds", counter_max_worlds, "largest admissible countermodel")
      ->required()
      ->check(CLI::PositiveNumber);

  std::string existence_formulas, existence_class;
  CLI::App* cmd_existence = app.add_subcommand(
      "model-existence", "build one model deciding every formula of a finite fragment");
  cmd_existence->add_option("--formulas", existence_formulas, "JSON array of formula strings")
      ->required();
  cmd_existence->add_option("--class", existence_class, "class flags, a comma set from {m,t,c}")
      ->required();

  CLI::App* cmd_bf = app.add_subcommand("bf-demo", "refute the Barcan formula on the cofinite frame");
  CLI::App* cmd_omega = app.add_subcommand(
      "omega-bf-demo", "refute the infinitary Barcan schema and contrast its finite instances");

  bool exhaustive = false;
  CLI::App* cmd_selftest = app.add_subcommand("selftest", "run the module invariant suites");
  cmd_selftest->add_flag("--exhaustive", exhaustive, "widen the sweeps");

  for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
    report.pretty = pretty;
    const int jobs = resolve_jobs(jobs_flag);

    if (cmd_parse->parsed()) {
      report.command = "parse";
      report.inputs = Json{{"file", parse_file}};
      report.result = detail::parse_cmd(parse_file);
    } else if (cmd_frame->parsed()) {
      report.command = "check-frame";
      report.inputs = Json{{"file", frame_file}};
      report.result = detail::check_frame_cmd(frame_file);
    } else if (cmd_algebra->parsed()) {
      report.command = "check-algebra";
      report.inputs = Json{{"file", algebra_file}};
      report.result = detail::check_algebra_cmd(algebra_file);
    } else if (cmd_dualize->parsed()) {
      report.command = "dualize";
      report.inputs = Json{{"file", dualize_file},
                           {"mode", flag_k ? "k" : (flag_j ? "j" : "jbar")},
                           {"meets", dualize_meets ? Json(*dualize_meets) : Json(nullptr)}};
      report.result = detail::dualize_cmd(flag_j, flag_jbar, flag_k, dualize_file, dualize_meets);
    } else if (cmd_represent->parsed()) {
      report.command = "represent";
      report.inputs = Json{{"file", represent_file},
                           {"meets", represent_meets},
                           {"variant", represent_jbar ? "jbar" : "j"}};
      report.result = detail::represent_cmd(represent_file, represent_meets, represent_jbar);
    } else if (cmd_decide->parsed()) {
      report.command = "decide";
      report.inputs = Json{{"formula", decide_formula},
                           {"class", to_string(parse_logic_class(decide_class))},
                           {"bound", decide_bound}};
      report.result = detail::decide_cmd(decide_formula, decide_class, decide_bound);
    } else if (cmd_counter->parsed()) {
      report.command = "countermodel";
      report.inputs = Json{{"formula", counter_formula},
                           {"class", to_string(parse_logic_class(counter_class))},
                           {"max_worlds", counter_max_worlds}};
      report.result = detail::countermodel_cmd(counter_formula, counter_class, counter_max_worlds);
    } else if (cmd_existence->parsed()) {
      report.command = "model-existence";
      report.inputs = Json{{"formulas", existence_formulas},
                           {"class", to_string(parse_logic_class(existence_class))}};
      report.result = detail::model_existence_cmd(existence_formulas, existence_class);
    } else if (cmd_bf->parsed()) {
      report.command = "bf-demo";
      report.result = nbhd::to_json(bf_countermodel());
    } else if (cmd_omega->parsed()) {
      report.command = "omega-bf-demo";
      report.result = nbhd::to_json(omega_bf_countermodel());
    } else if (cmd_selftest->parsed()) {
      report.command = "selftest";
      report.inputs = Json{{"exhaustive", exhaustive}, {"jobs", jobs}};
      report.result = detail::selftest_cmd(exhaustive, jobs);
      if (!report.result.value("passed", false)) {
        report.exit_code = 1;
        report.diagnostics = "selftest: at least one invariant suite failed";
      }
    }
    return report;
  } catch (const CLI::CallForHelp&) {
    report.pretty = pretty;
    report.diagnostics = app.help();
    report.exit_code = 0;
    return report;
  } catch (const CLI::ParseError& e) {
    report.pretty = pretty;
    report.diagnostics = std::string("usage error: ") + e.what() + "\n\n" + app.help();
    report.exit_code = 2;
    return report;
  } catch (const Error& e) {
    report.pretty = pretty;
    report.result = error_to_json(e);
    report.diagnostics = std::string("error (") + to_string(e.kind()) + "): " + e.what();
    report.exit_code = 1;
    return report;
  } catch (const std::exception& e) {
    report.pretty = pretty;
    report.result = Json{{"error", Json{{"kind", "internal"}, {"message", e.what()}}}};
    report.diagnostics = std::string("internal error: ") + e.what();
    report.exit_code = 1;
    return report;
  }
}

inline int run_main(int argc, char** argv) {
  std::vector<std::string> args;
  args.reserve(static_cast<std::size_t>(argc > 0 ? argc - 1 : 0));
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  const CommandReport r = run(args);
  if (!r.diagnostics.empty()) std::cerr << r.diagnostics << "\n";
  if (!r.result.is_null())
    std::cout << (r.pretty ? r.result.dump(2) : r.result.dump()) << "\n";
  return r.exit_code;
}

}  // namespace nbhd::cli
