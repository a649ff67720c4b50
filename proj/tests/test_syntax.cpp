#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>
#include <string>
#include <vector>

#include "nbhd/formula.hpp"

using namespace nbhd;

namespace {

FormulaPtr p() { return Formula::prop("p"); }
FormulaPtr q() { return Formula::prop("q"); }
FormulaPtr r() { return Formula::prop("r"); }

// Random ASTs with consistent predicate arities: P/1, Q/2, R/1.
FormulaPtr random_formula(std::mt19937& rng, int depth) {
  std::uniform_int_distribution<int> leaf(0, 4), inner(0, 12), var(0, 2);
  const std::string vars[] = {"x", "y", "z"};
  if (depth == 0) {
    switch (leaf(rng)) {
      case 0: return Formula::top();
      case 1: return Formula::bot();
      case 2: return Formula::prop(std::string("p") + char('0' + var(rng)));
      case 3: return Formula::pred("P", {vars[var(rng)]});
      default: return Formula::pred("Q", {vars[var(rng)], vars[var(rng)]});
    }
  }
  auto sub = [&] { return random_formula(rng, depth - 1); };
  switch (inner(rng)) {
    case 0: return Formula::neg(sub());
    case 1: return Formula::box(sub());
    case 2: return Formula::diamond(sub());
    case 3: return Formula::conj({sub(), sub()});
    case 4: return Formula::disj({sub(), sub()});
    case 5: return Formula::implies(sub(), sub());
    case 6: return Formula::iff(sub(), sub());
    case 7: return Formula::forall(vars[var(rng)], sub());
    case 8: return Formula::exists(vars[var(rng)], sub());
    case 9: return Formula::conj({sub(), sub(), sub()});
    case 10: return Formula::disj({sub()});
    case 11: return Formula::omega_conj("i", Formula::box(Formula::prop("a_i")));
    default: return random_formula(rng, 0);
  }
}

}  // namespace

TEST_CASE("parser reference cases") {
  FormulaPtr m = parse("[](p & q) -> ([]p & []q)");
  FormulaPtr m_expected = Formula::implies(
      Formula::box(Formula::conj({p(), q()})),
      Formula::conj({Formula::box(p()), Formula::box(q())}));
  CHECK(equal(m, m_expected));

  CHECK(equal(parse("A x. P(x)"), Formula::forall("x", Formula::pred("P", {"x"}))));

  CHECK(equal(parse("/\\{p0, p1, p2}"),
              Formula::conj({Formula::prop("p0"), Formula::prop("p1"),
                             Formula::prop("p2")})));

  CHECK(parse("T")->kind() == FormulaKind::top);
  CHECK(parse("F")->kind() == FormulaKind::bot);
  CHECK(equal(parse("<>~p"), Formula::diamond(Formula::neg(p()))));
  CHECK(equal(parse("\\/{p, q}"), Formula::disj({p(), q()})));
  CHECK(equal(parse("E y. Q(x,y)"), Formula::exists("y", Formula::pred("Q", {"x", "y"}))));
}

TEST_CASE("precedence and associativity") {
  CHECK(equal(parse("~p & q"), Formula::conj({Formula::neg(p()), q()})));
  CHECK(equal(parse("p & q | r"), Formula::disj({Formula::conj({p(), q()}), r()})));
  CHECK(equal(parse("p | q -> r"), Formula::implies(Formula::disj({p(), q()}), r())));
  CHECK(equal(parse("p -> q <-> r"), Formula::iff(Formula::implies(p(), q()), r())));
  CHECK(equal(parse("p -> q -> r"), Formula::implies(p(), Formula::implies(q(), r()))));
  CHECK(equal(parse("[]p & []q"),
              Formula::conj({Formula::box(p()), Formula::box(q())})));
  // A quantifier body extends as far right as possible.
  CHECK(equal(parse("A x. P(x) & q"),
              Formula::forall("x", Formula::conj({Formula::pred("P", {"x"}), q()}))));
  CHECK(equal(parse("(A x. P(x)) & q"),
              Formula::conj({Formula::forall("x", Formula::pred("P", {"x"})), q()})));
}

TEST_CASE("schematic countable conjunction") {
  FormulaPtr f = parse("/\\_i. []p_i");
  REQUIRE(f->kind() == FormulaKind::omega_conj);
  CHECK(f->name() == "i");
  CHECK(equal(f->child(), Formula::box(Formula::prop("p_i"))));
  CHECK(print(f) == "/\\_i. []p_i");

  FormulaPtr wbf = parse("(/\\_i. []p_i) -> [](/\\_i. p_i)");
  CHECK(wbf->kind() == FormulaKind::implies);
  CHECK(print(wbf) == "(/\\_i. []p_i) -> [](/\\_i. p_i)");
}

TEST_CASE("parse errors carry position and expected tokens") {
  auto message = [](const std::string& text) {
    try {
      parse(text);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::parse);
      return std::string(e.what());
    }
    FAIL("expected a parse error for: " << text);
    return std::string();
  };

  CHECK_THAT(message("(p"), Catch::Matchers::ContainsSubstring("position 2") &&
                                Catch::Matchers::ContainsSubstring("')'"));
  CHECK_THAT(message(""), Catch::Matchers::ContainsSubstring("expected") &&
                              Catch::Matchers::ContainsSubstring("identifier"));
  CHECK_THAT(message("p &"), Catch::Matchers::ContainsSubstring("end of input"));
  CHECK_THAT(message("p $ q"), Catch::Matchers::ContainsSubstring("position 2"));
  CHECK_THAT(message("[p"), Catch::Matchers::ContainsSubstring("'[]'"));
  CHECK_THAT(message("A x P(x)"), Catch::Matchers::ContainsSubstring("'.'"));
  CHECK_THAT(message("P()"), Catch::Matchers::ContainsSubstring("identifier"));
  CHECK_THAT(message("p & q & r"), Catch::Matchers::ContainsSubstring("chain"));
  CHECK_THAT(message("p | q | r"), Catch::Matchers::ContainsSubstring("chain"));
  CHECK_THAT(message("p <-> q <-> r"), Catch::Matchers::ContainsSubstring("chain"));
}

TEST_CASE("inconsistent predicate arities are rejected") {
  CHECK_THROWS_AS(parse("P(x) & P(x,y)"), Error);
  try {
    parse("Q(x) -> A y. Q(x,y)");
    FAIL("expected an arity error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::language);
  }
  CHECK_NOTHROW(parse("P(x) & P(y)"));
}

TEST_CASE("factories validate their inputs") {
  CHECK_THROWS_AS(Formula::prop("T"), Error);
  CHECK_THROWS_AS(Formula::prop("has space"), Error);
  CHECK_THROWS_AS(Formula::prop(""), Error);
  CHECK_THROWS_AS(Formula::pred("P", {}), Error);
  CHECK_THROWS_AS(Formula::conj({}), Error);
  CHECK_THROWS_AS(Formula::forall("A", p()), Error);
  CHECK_NOTHROW(Formula::prop("y'"));
}

TEST_CASE("printer emits the canonical spelling") {
  CHECK(print(parse("[](p & q) -> ([]p & []q)")) == "[](p & q) -> ([]p & []q)");
  CHECK(print(parse("A x. P(x)")) == "A x. P(x)");
  CHECK(print(parse("/\\{p0, p1, p2}")) == "/\\{p0, p1, p2}");
  CHECK(print(parse("p -> q -> r")) == "p -> (q -> r)");
  CHECK(print(Formula::conj({p()})) == "/\\{p}");
  CHECK(print(Formula::neg(Formula::conj({p(), q()}))) == "~(p & q)");
  CHECK(print(Formula::neg(Formula::conj({p(), q(), r()}))) == "~/\\{p, q, r}");
  CHECK(print(Formula::box(Formula::forall("x", Formula::pred("P", {"x"})))) ==
        "[](A x. P(x))");
  CHECK(print(Formula::implies(Formula::forall("x", Formula::pred("P", {"x"})), q())) ==
        "(A x. P(x)) -> q");
  // Whitespace never matters on the way in.
  CHECK(equal(parse("  [] ( p&q )  ->([]p&[]q)"), parse("[](p & q) -> ([]p & []q)")));
}

TEST_CASE("parse of print is the identity on ASTs") {
  std::mt19937 rng(20260815);
  for (int iter = 0; iter < 5000; ++iter) {
    FormulaPtr f = random_formula(rng, 1 + iter % 5);
    FormulaPtr back = parse(print(f));
    CAPTURE(print(f));
    REQUIRE(equal(back, f));
    // And printing is stable from there on.
    CHECK(print(back) == print(f));
  }
}

TEST_CASE("structural compare is a total order consistent with equality") {
  std::mt19937 rng(7);
  std::vector<FormulaPtr> fs;
  for (int i = 0; i < 60; ++i) fs.push_back(random_formula(rng, 3));
  for (const FormulaPtr& a : fs) {
    CHECK(compare(a, a) == 0);
    for (const FormulaPtr& b : fs) {
      CHECK(compare(a, b) == -compare(b, a));
      CHECK((compare(a, b) == 0) == (print(a) == print(b)));
    }
  }
}

TEST_CASE("subformula reference cases") {
  std::vector<FormulaPtr> sub_box = subformulas(Formula::box(p()));
  REQUIRE(sub_box.size() == 2);
  CHECK(equal(sub_box[0], p()));
  CHECK(equal(sub_box[1], Formula::box(p())));

  std::vector<FormulaPtr> sub_conj = subformulas(Formula::conj({p(), q()}));
  CHECK(sub_conj.size() == 3);

  std::vector<FormulaPtr> sub_p = subformulas(p());
  REQUIRE(sub_p.size() == 1);
  CHECK(equal(sub_p[0], p()));

  // Shared parts are collected once.
  CHECK(subformulas(Formula::conj({p(), p()})).size() == 2);
}

TEST_CASE("subformulas contain the formula and are closed under parts") {
  std::mt19937 rng(3);
  for (int iter = 0; iter < 500; ++iter) {
    FormulaPtr f = random_formula(rng, 4);
    std::vector<FormulaPtr> sub = subformulas(f);
    auto member = [&](const FormulaPtr& g) {
      return std::any_of(sub.begin(), sub.end(),
                         [&](const FormulaPtr& h) { return equal(g, h); });
    };
    CHECK(member(f));
    for (const FormulaPtr& g : sub)
      for (const FormulaPtr& c : g->children()) CHECK(member(c));
  }
}

TEST_CASE("free variable reference cases") {
  CHECK(free_variables(parse("P(x)")) == std::set<std::string>{"x"});
  CHECK(free_variables(parse("A x. P(x)")).empty());
  CHECK(free_variables(parse("A y. Q(x,y)")) == std::set<std::string>{"x"});
  CHECK(free_variables(parse("p & []q")).empty());
  CHECK(free_variables(parse("P(x) -> A x. P(x)")) == std::set<std::string>{"x"});
}

TEST_CASE("substitution reference cases") {
  CHECK(equal(substitute(parse("P(x)"), "x", "y"), parse("P(y)")));

  FormulaPtr closed = parse("A x. P(x)");
  CHECK(substitute(closed, "x", "y") == closed);  // untouched, same node

  // Capture case: the bound y is renamed to a fresh y'.
  FormulaPtr captured = substitute(parse("A y. Q(x,y)"), "x", "y");
  CHECK(equal(captured, Formula::forall("y'", Formula::pred("Q", {"y", "y'"}))));
  CHECK(print(captured) == "A y'. Q(y,y')");

  // The fresh name also dodges variables already in the body.
  FormulaPtr crowded = substitute(parse("A y. Q(x,y) & P(y')"), "x", "y");
  REQUIRE(crowded->kind() == FormulaKind::forall);
  CHECK(crowded->name() == "y''");

  // Deep binders are handled on the way down.
  CHECK(equal(substitute(parse("P(x) & (A y. Q(x,y))"), "x", "y"),
              Formula::conj({Formula::pred("P", {"y"}),
                             Formula::forall("y'", Formula::pred("Q", {"y", "y'"}))})));

  // No free occurrence anywhere: the original node comes back.
  FormulaPtr no_x = parse("A x. P(x) & p");
  CHECK(substitute(no_x, "x", "y") == no_x);
}

TEST_CASE("substitution never leaves the target variable free") {
  std::mt19937 rng(11);
  for (int iter = 0; iter < 2000; ++iter) {
    FormulaPtr f = random_formula(rng, 4);
    FormulaPtr g = substitute(f, "x", "y");
    CHECK_FALSE(free_variables(g).count("x"));
    std::set<std::string> before = free_variables(f);
    std::set<std::string> after = free_variables(g);
    std::set<std::string> expected = before;
    if (expected.erase("x")) expected.insert("y");
    CHECK(after == expected);
  }
}

TEST_CASE("desugar expands the derived connectives") {
  CHECK(equal(desugar(parse("<>p")), parse("~[]~p")));
  CHECK(equal(desugar(parse("p | q")), parse("~(~p & ~q)")));
  CHECK(equal(desugar(parse("p -> q")), parse("~(p & ~q)")));
  CHECK(equal(desugar(parse("E x. P(x)")), parse("~A x. ~P(x)")));
  CHECK(equal(desugar(parse("p <-> q")), parse("~(p & ~q) & ~(q & ~p)")));

  std::mt19937 rng(13);
  const std::set<FormulaKind> core{FormulaKind::top,      FormulaKind::bot,
                                   FormulaKind::prop_var, FormulaKind::pred_atom,
                                   FormulaKind::neg,      FormulaKind::conj,
                                   FormulaKind::box,      FormulaKind::forall,
                                   FormulaKind::omega_conj};
  for (int iter = 0; iter < 500; ++iter) {
    FormulaPtr f = desugar(random_formula(rng, 4));
    for (const FormulaPtr& g : subformulas(f)) CHECK(core.count(g->kind()));
  }
}
