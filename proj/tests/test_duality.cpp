#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "nbhd/algebra.hpp"
#include "nbhd/duality.hpp"
#include "nbhd/frame.hpp"

using namespace nbhd;

namespace {

std::vector<Code> identity_table(int n) {
  std::vector<Code> t(std::size_t{1} << n);
  for (Code x = 0; x < t.size(); ++x) t[x] = x;
  return t;
}

std::vector<Code> constant_table(int n, Code value) {
  return std::vector<Code>(std::size_t{1} << n, value);
}

std::vector<Code> complement_table(int n) {
  const Code full = (Code{1} << n) - 1;
  std::vector<Code> t(std::size_t{1} << n);
  for (Code x = 0; x < t.size(); ++x) t[x] = full & ~x;
  return t;
}

std::set<int> code_to_set(std::uint32_t code) {
  std::set<int> s;
  for (int i = 0; i < 32; ++i)
    if (code >> i & 1) s.insert(i);
  return s;
}

std::set<std::set<int>> family_as_sets(const std::vector<WorldSet>& family) {
  std::set<std::set<int>> out;
  for (WorldSet x : family) out.insert(code_to_set(x));
  return out;
}

// Independent oracle for the plain dual construction, phrased over explicit
// integer sets instead of bitmask codes.
std::set<std::set<int>> oracle_plain_world(const FiniteModalAlgebra& a,
                                           const std::vector<Filter>& filters, int i) {
  std::set<std::set<int>> fam;
  for (Code x = 0; x < a.size(); ++x) {
    if (!filters[i].contains(a.box(x))) continue;
    std::set<int> extent;
    for (std::size_t j = 0; j < filters.size(); ++j)
      if (filters[j].contains(x)) extent.insert(static_cast<int>(j));
    fam.insert(extent);
  }
  return fam;
}

std::set<std::set<int>> oracle_closed_world(const FiniteModalAlgebra& a,
                                            const std::vector<Filter>& filters, int i) {
  std::set<std::set<int>> base = oracle_plain_world(a, filters, i);
  std::set<std::set<int>> out;
  const int m = static_cast<int>(filters.size());
  for (std::uint32_t y = 0; y < (std::uint32_t{1} << m); ++y) {
    std::set<int> candidate = code_to_set(y);
    for (const std::set<int>& x : base)
      if (std::includes(candidate.begin(), candidate.end(), x.begin(), x.end())) {
        out.insert(candidate);
        break;
      }
  }
  return out;
}

// Every family of carrier codes with one or two members.
MeetFamilySet all_small_families(const FiniteModalAlgebra& a) {
  MeetFamilySet s;
  for (Code x = 0; x < a.size(); ++x) {
    s.push_back({x});
    for (Code y = x + 1; y < a.size(); ++y) s.push_back({x, y});
  }
  return s;
}

NeighborhoodFrame random_frame(std::mt19937& rng, int m) {
  std::vector<std::vector<WorldSet>> nbhd(m);
  std::uniform_int_distribution<int> coin(0, 1);
  for (int c = 0; c < m; ++c)
    for (WorldSet s = 0; s < (WorldSet{1} << m); ++s)
      if (coin(rng)) nbhd[c].push_back(s);
  return NeighborhoodFrame(m, std::move(nbhd));
}

}  // namespace

TEST_CASE("plain dual frame reference cases") {
  // One-atom algebra, box = identity: one world seeing exactly its singleton.
  NeighborhoodFrame z1 = build_Jbar(make_powerset_algebra(1, identity_table(1)), {});
  CHECK(z1.world_count() == 1);
  CHECK(z1.neighborhoods(0) == std::vector<WorldSet>{1});

  // Two atoms, box = complement: worlds are the two principal atom filters.
  NeighborhoodFrame z2 = build_Jbar(make_powerset_algebra(2, complement_table(2)), {});
  REQUIRE(z2.world_count() == 2);
  CHECK(z2.neighborhoods(0) == std::vector<WorldSet>{0, 2});
  CHECK(z2.neighborhoods(1) == std::vector<WorldSet>{0, 1});

  // Box constantly bottom: nothing is ever believed boxed.
  NeighborhoodFrame z3 = build_Jbar(make_powerset_algebra(2, constant_table(2, 0)), {});
  CHECK(z3.neighborhoods(0).empty());
  CHECK(z3.neighborhoods(1).empty());
}

TEST_CASE("closed dual frame reference cases") {
  NeighborhoodFrame z1 = build_J(make_powerset_algebra(1, identity_table(1)), {});
  CHECK(z1.world_count() == 1);
  CHECK(z1.neighborhoods(0) == std::vector<WorldSet>{1});

  // Two atoms, box = identity: each world sees the up-closure of its singleton.
  NeighborhoodFrame z2 = build_J(make_powerset_algebra(2, identity_table(2)), {});
  REQUIRE(z2.world_count() == 2);
  CHECK(z2.neighborhoods(0) == std::vector<WorldSet>{1, 3});
  CHECK(z2.neighborhoods(1) == std::vector<WorldSet>{2, 3});

  // Box constantly top: every extent qualifies, so closure gives everything.
  NeighborhoodFrame z3 = build_J(make_powerset_algebra(2, constant_table(2, 3)), {});
  CHECK(z3.neighborhoods(0) == std::vector<WorldSet>{0, 1, 2, 3});
  CHECK(z3.neighborhoods(1) == std::vector<WorldSet>{0, 1, 2, 3});
}

TEST_CASE("closed dual requires a monotonic algebra") {
  FiniteModalAlgebra nonmono = make_powerset_algebra(2, complement_table(2));
  REQUIRE_FALSE(check_algebra_properties(nonmono).monotonic);
  CHECK_THROWS_WITH(build_J(nonmono, {}),
                    Catch::Matchers::ContainsSubstring("build_Jbar"));
  CHECK_THROWS_AS(stone_map(nonmono, {}, DualVariant::with_closure), Error);
  CHECK_NOTHROW(build_Jbar(nonmono, {}));
}

TEST_CASE("dual constructions validate designated meet families") {
  FiniteModalAlgebra a = make_powerset_algebra(1, identity_table(1));
  CHECK_THROWS_AS(build_Jbar(a, {{}}), Error);
  CHECK_THROWS_AS(build_Jbar(a, {{7}}), Error);
  CHECK_THROWS_AS(build_J(a, {{}}), Error);
}

TEST_CASE("dual frames agree with the set-based oracle over every small algebra") {
  for (int n = 1; n <= 2; ++n) {
    const Code size = Code{1} << n;
    std::vector<Code> table(size);
    const std::uint64_t total = std::uint64_t{1} << (2 * size);
    for (std::uint64_t t = 0; t < total; ++t) {
      for (Code x = 0; x < size; ++x) table[x] = static_cast<Code>(t >> (2 * x) & (size - 1));
      FiniteModalAlgebra a = make_powerset_algebra(n, table);
      std::vector<Filter> filters = enumerate_prime_filters(a);

      NeighborhoodFrame plain = build_Jbar(a, {});
      for (int i = 0; i < plain.world_count(); ++i)
        CHECK(family_as_sets(plain.neighborhoods(i)) == oracle_plain_world(a, filters, i));

      if (check_algebra_properties(a).monotonic) {
        NeighborhoodFrame closed = build_J(a, {});
        for (int i = 0; i < closed.world_count(); ++i)
          CHECK(family_as_sets(closed.neighborhoods(i)) == oracle_closed_world(a, filters, i));

        // The closed variant is exactly the upward closure of the plain one.
        for (int i = 0; i < closed.world_count(); ++i)
          CHECK(closed.neighborhoods(i) ==
                upward_closure(plain.neighborhoods(i), plain.world_count()));
      }
    }
  }
}

TEST_CASE("complex algebra reference cases") {
  FiniteModalAlgebra blind = build_K(NeighborhoodFrame(1, {{}}));
  CHECK(blind.box_table() == std::vector<Code>{0, 0});

  FiniteModalAlgebra ident = build_K(NeighborhoodFrame(1, {{1}}));
  CHECK(ident.box_table() == std::vector<Code>{0, 1});

  FiniteModalAlgebra flip = build_K(NeighborhoodFrame(1, {{0}}));
  CHECK(flip.box_table() == std::vector<Code>{1, 0});

  CHECK_THROWS_AS(build_K(NeighborhoodFrame(13, std::vector<std::vector<WorldSet>>(13))),
                  Error);
}

TEST_CASE("complex algebra box agrees with a direct membership scan") {
  std::mt19937 rng(20260815);
  for (int iter = 0; iter < 400; ++iter) {
    int m = 1 + iter % 3;
    NeighborhoodFrame z = random_frame(rng, m);
    FiniteModalAlgebra k = build_K(z);
    for (Code x = 0; x < k.size(); ++x) {
      std::set<int> expect;
      for (int c = 0; c < m; ++c)
        if (z.has_neighborhood(c, static_cast<WorldSet>(x))) expect.insert(c);
      CHECK(code_to_set(k.box(x)) == expect);
    }
  }
}

TEST_CASE("frame properties transfer to the complex algebra") {
  for (int m = 1; m <= 2; ++m) {
    for (const NeighborhoodFrame& z : enumerate_frames(m, {}, UINT64_MAX)) {
      FrameProperties fp = check_frame_properties(z);
      AlgebraProperties ap = check_algebra_properties(build_K(z));
      if (fp.monotonic) CHECK(ap.monotonic);
      if (fp.topped) CHECK(ap.topped);
      if (fp.cufi) CHECK(ap.cufi);
    }
  }
  std::mt19937 rng(99);
  for (int iter = 0; iter < 20000; ++iter) {
    NeighborhoodFrame z = random_frame(rng, 3);
    FrameProperties fp = check_frame_properties(z);
    AlgebraProperties ap = check_algebra_properties(build_K(z));
    if (fp.monotonic) CHECK(ap.monotonic);
    if (fp.topped) CHECK(ap.topped);
    if (fp.cufi) CHECK(ap.cufi);
  }
}

TEST_CASE("algebra properties transfer to both dual frames") {
  const Code size = 4;
  std::vector<Code> table(size);
  for (std::uint64_t t = 0; t < (std::uint64_t{1} << (2 * size)); ++t) {
    for (Code x = 0; x < size; ++x) table[x] = static_cast<Code>(t >> (2 * x) & (size - 1));
    FiniteModalAlgebra a = make_powerset_algebra(2, table);
    AlgebraProperties ap = check_algebra_properties(a);

    FrameProperties plain = check_frame_properties(build_Jbar(a, {}));
    if (ap.topped) CHECK(plain.topped);
    if (ap.cufi) CHECK(plain.cufi);

    if (ap.monotonic) {
      FrameProperties closed = check_frame_properties(build_J(a, {}));
      CHECK(closed.monotonic);
      if (ap.topped) CHECK(closed.topped);
      if (ap.cufi) CHECK(closed.cufi);
    }
  }
}

TEST_CASE("canonical embedding reference cases") {
  auto [f1, r1] = stone_map(make_powerset_algebra(1, identity_table(1)), {},
                            DualVariant::with_closure);
  CHECK(f1 == std::vector<Code>{0, 1});
  CHECK(r1 == EmbeddingReport{true, true, true, true, true, {}});

  auto [f2, r2] = stone_map(make_powerset_algebra(2, complement_table(2)), {},
                            DualVariant::plain);
  CHECK(r2.monomorphism());
  CHECK(r2.surjective);
  CHECK(r2.witnesses.empty());

  // Designated meet {1,2} in the four-element algebra: f(1 ∧ 2) = f(0) = ∅.
  auto [f3, r3] = stone_map(make_powerset_algebra(2, identity_table(2)), {{1, 2}},
                            DualVariant::with_closure);
  CHECK(r3.meets_preserved);
  CHECK(f3[0] == 0);
  CHECK((f3[1] & f3[2]) == f3[0]);
}

TEST_CASE("embedding is a monomorphism for every small algebra") {
  for (int n = 1; n <= 2; ++n) {
    const Code size = Code{1} << n;
    std::vector<Code> table(size);
    for (std::uint64_t t = 0; t < (std::uint64_t{1} << (2 * size)); ++t) {
      for (Code x = 0; x < size; ++x)
        table[x] = static_cast<Code>(t >> (2 * x) & (size - 1));
      FiniteModalAlgebra a = make_powerset_algebra(n, table);
      MeetFamilySet s = all_small_families(a);

      auto [fp, rp] = stone_map(a, s, DualVariant::plain);
      CHECK(rp.monomorphism());
      CHECK(rp.surjective);

      if (check_algebra_properties(a).monotonic) {
        auto [fc, rc] = stone_map(a, s, DualVariant::with_closure);
        CHECK(rc.monomorphism());
        CHECK(rc.surjective);
        CHECK(fc == fp);
      }
    }
  }
}

TEST_CASE("embedding is a homomorphism in the algebra-core sense") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<Code> pick(0, 7);
  for (int iter = 0; iter < 200; ++iter) {
    std::vector<Code> table(8);
    for (Code& v : table) v = pick(rng);
    FiniteModalAlgebra a = make_powerset_algebra(3, table);
    auto [f, report] = stone_map(a, {}, DualVariant::plain);
    FiniteModalAlgebra k = build_K(build_Jbar(a, {}));
    CHECK(is_algebra_homomorphism(f, a, k) ==
          (report.boolean_homomorphism && report.box_preserved));
    CHECK(report.monomorphism());
  }
}

TEST_CASE("round trip through both constructions recovers the box table") {
  for (int n = 1; n <= 2; ++n) {
    const Code size = Code{1} << n;
    std::vector<Code> table(size);
    for (std::uint64_t t = 0; t < (std::uint64_t{1} << (2 * size)); ++t) {
      for (Code x = 0; x < size; ++x)
        table[x] = static_cast<Code>(t >> (2 * x) & (size - 1));
      FiniteModalAlgebra a = make_powerset_algebra(n, table);
      FiniteModalAlgebra k = build_K(build_Jbar(a, {}));
      auto [f, report] = stone_map(a, {}, DualVariant::plain);
      REQUIRE(report.injective);
      REQUIRE(a.size() == k.size());
      std::vector<Code> finv(k.size());
      for (Code x = 0; x < a.size(); ++x) finv[f[x]] = x;
      for (Code x = 0; x < a.size(); ++x) CHECK(finv[k.box(f[x])] == a.box(x));
    }
  }
}

TEST_CASE("separation certifies the non-inclusions behind injectivity") {
  std::mt19937 rng(17);
  std::uniform_int_distribution<Code> pick(0, 7);
  for (int iter = 0; iter < 100; ++iter) {
    std::vector<Code> table(8);
    for (Code& v : table) v = pick(rng);
    FiniteModalAlgebra a = make_powerset_algebra(3, table);
    auto [f, report] = stone_map(a, {}, DualVariant::plain);
    REQUIRE(report.injective);
    for (Code x = 0; x < a.size(); ++x)
      for (Code y = 0; y < a.size(); ++y) {
        if (a.leq(x, y)) continue;
        Filter g = separate(a, x, y, {});
        CHECK(g.contains(x));
        CHECK_FALSE(g.contains(y));
        // The extent of x escapes the extent of y exactly as separation says.
        CHECK((f[x] & ~f[y]) != 0);
      }
  }
}
