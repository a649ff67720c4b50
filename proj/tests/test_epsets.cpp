#include <catch2/catch_amalgamated.hpp>

#include <numeric>
#include <random>
#include <string>

#include "nbhd/epset.hpp"

using namespace nbhd;

namespace {

// Sampling horizon long enough to decide equality of two eventually periodic
// sets: past both prefixes they are lcm-periodic.
std::uint64_t horizon(const EPSet& x, const EPSet& y) {
  return std::max(x.prefix_length(), y.prefix_length()) +
         2 * std::lcm(x.period_length(), y.period_length()) + 4;
}

bool sampled_equal(const EPSet& x, const EPSet& y) {
  for (std::uint64_t i = 0; i <= horizon(x, y); ++i)
    if (x.contains(i) != y.contains(i)) return false;
  return true;
}

EPSet random_epset(std::mt19937& rng) {
  std::uniform_int_distribution<int> pre_len(0, 8), per_len(1, 6), bit(0, 1);
  std::string prefix(pre_len(rng), '0'), period(per_len(rng), '0');
  for (char& c : prefix) c = bit(rng) ? '1' : '0';
  for (char& c : period) c = bit(rng) ? '1' : '0';
  return EPSet::make(prefix, period);
}

const EPSet evens = EPSet::make("", "10");
const EPSet odds = EPSet::make("", "01");

}  // namespace

TEST_CASE("membership follows the prefix/period rule") {
  EPSet x = EPSet::make("011", "100");
  // 0,1,1 then 1,0,0 repeating
  CHECK_FALSE(x.contains(0));
  CHECK(x.contains(1));
  CHECK(x.contains(2));
  CHECK(x.contains(3));
  CHECK_FALSE(x.contains(4));
  CHECK_FALSE(x.contains(5));
  CHECK(x.contains(6));
  CHECK(x.contains(600));
}

TEST_CASE("construction validates bitstrings") {
  CHECK_THROWS_AS(EPSet::make("01x", "1"), Error);
  CHECK_THROWS_AS(EPSet::make("", ""), Error);
}

TEST_CASE("canonical form: minimal period and prefix") {
  CHECK(EPSet::make("", "1010") == evens);
  CHECK(EPSet::make("10", "10") == evens);       // prefix absorbed
  CHECK(EPSet::make("1", "01") == evens);        // rotation absorbed
  CHECK(EPSet::make("111", "1") == EPSet::omega());
  CHECK(EPSet::make("", "111") == EPSet::omega());
  CHECK(EPSet::make("000", "00") == EPSet::empty());
  CHECK(evens.prefix() == "");
  CHECK(evens.period() == "10");

  // A genuinely aperiodic start survives.
  EPSet x = EPSet::make("11", "0110");
  CHECK(x.prefix() == "11");
  CHECK(x.period() == "0110");

  // ("10", "0110") denotes (1001)^ω and collapses to a pure period.
  EPSet y = EPSet::make("10", "0110");
  CHECK(y.prefix() == "");
  CHECK(y.period() == "1001");
}

TEST_CASE("canonicalization is idempotent and equality-complete (random)") {
  std::mt19937 rng(20240811);
  std::uniform_int_distribution<int> reps(1, 3), rot(0, 5);
  for (int iter = 0; iter < 20000; ++iter) {
    EPSet x = random_epset(rng);

    EPSet again = EPSet::make(x.prefix(), x.period());
    CHECK(again == x);

    // Re-encode the same set redundantly: unroll part of the period into the
    // prefix and repeat the period; the canonical form must come back.
    int k = rot(rng);
    std::string pre = x.prefix(), per = x.period();
    for (int i = 0; i < k; ++i) {
      pre.push_back(per.front());
      per.push_back(per.front());
      per.erase(per.begin());
    }
    std::string per_rep;
    for (int i = 0, n = reps(rng); i < n; ++i) per_rep += per;
    EPSet y = EPSet::make(pre, per_rep);
    CHECK(sampled_equal(x, y));
    CHECK(y == x);
  }
}

TEST_CASE("distinct canonical forms denote distinct sets (random)") {
  std::mt19937 rng(99);
  for (int iter = 0; iter < 5000; ++iter) {
    EPSet x = random_epset(rng), y = random_epset(rng);
    CHECK((x == y) == sampled_equal(x, y));
  }
}

TEST_CASE("reference Boolean operations") {
  CHECK(ep_complement(evens) == odds);
  CHECK(ep_intersection(EPSet::co_singleton(0), EPSet::co_singleton(1)) ==
        EPSet::make("00", "1"));
  for (int i = 0; i <= 20; ++i) {
    bool expect = i != 0 && i != 1;
    CHECK(ep_intersection(EPSet::co_singleton(0), EPSet::co_singleton(1)).contains(i) == expect);
  }
  CHECK_FALSE(ep_is_cofinite(evens));
  CHECK(ep_is_cofinite(EPSet::co_singleton(7)));
  CHECK(ep_is_cofinite(EPSet::omega()));
  CHECK(ep_is_finite(EPSet::singleton(3)));
  CHECK(ep_is_empty(EPSet::empty()));
}

TEST_CASE("Boolean laws against membership sampling (random)") {
  std::mt19937 rng(7777);
  for (int iter = 0; iter < 20000; ++iter) {
    EPSet x = random_epset(rng), y = random_epset(rng), z = random_epset(rng);

    EPSet u = ep_union(x, y);
    EPSet i = ep_intersection(x, y);
    for (std::uint64_t k = 0; k <= horizon(x, y); ++k) {
      CHECK(u.contains(k) == (x.contains(k) || y.contains(k)));
      CHECK(i.contains(k) == (x.contains(k) && y.contains(k)));
      CHECK(x.complement().contains(k) == !x.contains(k));
    }

    CHECK(ep_union(x, y) == ep_union(y, x));
    CHECK(ep_intersection(ep_intersection(x, y), z) == ep_intersection(x, ep_intersection(y, z)));
    CHECK(ep_intersection(x, ep_union(y, z)) ==
          ep_union(ep_intersection(x, y), ep_intersection(x, z)));
    CHECK(ep_complement(ep_complement(x)) == x);
    CHECK(ep_complement(ep_union(x, y)) == ep_intersection(ep_complement(x), ep_complement(y)));
    CHECK(ep_subset(ep_intersection(x, y), x));
    CHECK(ep_subset(x, ep_union(x, y)));
  }
}

TEST_CASE("cofiniteness is closed under superset and binary intersection (random)") {
  std::mt19937 rng(31337);
  for (int iter = 0; iter < 5000; ++iter) {
    EPSet x = random_epset(rng), y = random_epset(rng);
    EPSet cof_x = ep_union(x, EPSet::tail(8));  // force cofinite
    EPSet cof_y = ep_union(y, EPSet::tail(5));
    CHECK(ep_is_cofinite(cof_x));
    CHECK(ep_is_cofinite(ep_union(cof_x, y)));  // superset of a cofinite set
    CHECK(ep_is_cofinite(ep_intersection(cof_x, cof_y)));
  }
}

TEST_CASE("family_meet") {
  CHECK(family_meet(ParametricFamily::explicit_family({evens, odds})) == EPSet::empty());
  CHECK(family_meet(ParametricFamily::co_singleton_family()) == EPSet::empty());
  CHECK(family_meet(ParametricFamily::tail_family()) == EPSet::empty());
  CHECK(family_meet(ParametricFamily::explicit_family({EPSet::co_singleton(0), evens})) ==
        EPSet::make("00", "10"));
  CHECK_THROWS_AS(ParametricFamily::explicit_family({}), Error);
}

TEST_CASE("ep_principal_ultrafilter_is_q") {
  CHECK(ep_principal_ultrafilter_is_q(5, {ParametricFamily::co_singleton_family()}));
  CHECK(ep_principal_ultrafilter_is_q(0, {ParametricFamily::tail_family()}));
  CHECK(ep_principal_ultrafilter_is_q(42, {}));
  for (std::uint32_t n = 0; n <= 100; ++n) {
    CHECK(ep_principal_ultrafilter_is_q(
        n, {ParametricFamily::co_singleton_family(), ParametricFamily::tail_family()}));
  }
  // An explicit family inside U_n keeps its meet inside U_n.
  CHECK(ep_principal_ultrafilter_is_q(
      2, {ParametricFamily::explicit_family({evens, EPSet::co_singleton(5)})}));
}

TEST_CASE("ep_separate reference cases") {
  std::vector<ParametricFamily> s{ParametricFamily::co_singleton_family()};
  CHECK(ep_separate(evens, EPSet::empty(), s) == 0);
  CHECK(ep_separate(odds, evens, {}) == 1);
  CHECK_THROWS_WITH(ep_separate(EPSet::empty(), evens, {}), "not separable");
  CHECK_THROWS_WITH(ep_separate(evens, evens, {}), "not separable");
  CHECK_THROWS_WITH(ep_separate(evens, EPSet::omega(), {}), "not separable");
}

TEST_CASE("ep_separate postconditions (random)") {
  std::mt19937 rng(555);
  std::vector<ParametricFamily> s{ParametricFamily::co_singleton_family(),
                                  ParametricFamily::tail_family()};
  int separable = 0;
  for (int iter = 0; iter < 10000; ++iter) {
    EPSet a = random_epset(rng), b = random_epset(rng);
    if (ep_subset(a, b)) {
      CHECK_THROWS_AS(ep_separate(a, b, s), Error);
      continue;
    }
    ++separable;
    std::uint32_t n = ep_separate(a, b, s);
    CHECK(a.contains(n));          // a ∈ U_n
    CHECK_FALSE(b.contains(n));    // b ∉ U_n
    CHECK(ep_principal_ultrafilter_is_q(n, s));
    for (std::uint32_t k = 0; k < n; ++k)  // least such index
      CHECK_FALSE((a.contains(k) && !b.contains(k)));
  }
  CHECK(separable > 1000);
}
