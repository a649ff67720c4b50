#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "nbhd/algebra.hpp"
#include "nbhd/error.hpp"
#include "nbhd/frame.hpp"

namespace nbhd {

enum class DualVariant { with_closure, plain };

/// Outcome of checking the canonical embedding of an algebra into the dual of
/// its dual. All of injective/boolean_homomorphism/box_preserved/
/// meets_preserved true iff the map is a monomorphism of modal algebras
/// preserving the designated meets; surjective is additionally noted because
/// in the finite case the embedding is onto.
struct EmbeddingReport {
  bool injective = false;
  bool boolean_homomorphism = false;
  bool box_preserved = false;
  bool meets_preserved = false;
  bool surjective = false;
  std::vector<Code> witnesses;  // element codes behind any false flag

  bool monomorphism() const {
    return injective && boolean_homomorphism && box_preserved && meets_preserved;
  }

  friend bool operator==(const EmbeddingReport&, const EmbeddingReport&) = default;
};

namespace detail {

inline void validate_meet_families(const FiniteModalAlgebra& a, const MeetFamilySet& s) {
  for (const MeetFamily& fam : s) {
    if (fam.empty()) throw Error::domain("designated meet family must be non-empty");
    for (Code c : fam)
      if (!a.is_element(c)) throw Error::domain("designated meet family code out of range");
  }
}

/// Worlds whose filter contains x, packed as a subset code. Filters are the
/// dual frame's worlds in enumeration order, so this is the canonical map f.
inline WorldSet filter_extent(const std::vector<Filter>& filters, Code x) {
  WorldSet out = 0;
  for (std::size_t i = 0; i < filters.size(); ++i)
    if (filters[i].contains(x)) out |= WorldSet{1} << i;
  return out;
}

inline std::vector<std::vector<WorldSet>> dual_neighborhoods(
    const FiniteModalAlgebra& a, const std::vector<Filter>& filters) {
  std::vector<std::vector<WorldSet>> nbhd(filters.size());
  for (std::size_t i = 0; i < filters.size(); ++i) {
    for (Code x = 0; x < a.size(); ++x)
      if (filters[i].contains(a.box(x))) nbhd[i].push_back(filter_extent(filters, x));
    std::sort(nbhd[i].begin(), nbhd[i].end());
    nbhd[i].erase(std::unique(nbhd[i].begin(), nbhd[i].end()), nbhd[i].end());
  }
  return nbhd;
}

}  // namespace detail

/// Dual frame without the upward closure: worlds are the Q-filters for S (the
/// prime filters, in the finite case) and each world's neighborhoods are the
/// extents of the elements it believes boxed.
inline NeighborhoodFrame build_Jbar(const FiniteModalAlgebra& a, const MeetFamilySet& s) {
  detail::validate_meet_families(a, s);
  std::vector<Filter> filters = enumerate_prime_filters(a);
  for (const Filter& f : filters)
    if (!is_q_filter(a, f, s))
      throw Error::construction("prime filter unexpectedly fails the designated-meet closure");
  return NeighborhoodFrame(static_cast<int>(filters.size()),
                           detail::dual_neighborhoods(a, filters));
}

/// Dual frame with each neighborhood family closed upward. Requires a
/// monotonic algebra; the closure is what makes the dual frame monotonic.
inline NeighborhoodFrame build_J(const FiniteModalAlgebra& a, const MeetFamilySet& s) {
  if (!check_algebra_properties(a).monotonic)
    throw Error::domain(
        "build_J requires a monotonic algebra; use build_Jbar for arbitrary algebras");
  detail::validate_meet_families(a, s);
  std::vector<Filter> filters = enumerate_prime_filters(a);
  for (const Filter& f : filters)
    if (!is_q_filter(a, f, s))
      throw Error::construction("prime filter unexpectedly fails the designated-meet closure");
  std::vector<std::vector<WorldSet>> nbhd = detail::dual_neighborhoods(a, filters);
  const int m = static_cast<int>(filters.size());
  for (auto& family : nbhd) family = upward_closure(family, m);
  return NeighborhoodFrame(m, std::move(nbhd));
}

/// Complex algebra of a frame: full powerset of the worlds with
/// Box X = {c | X is a neighborhood of c}.
inline FiniteModalAlgebra build_K(const NeighborhoodFrame& z) {
  const int m = z.world_count();
  if (m > FiniteModalAlgebra::max_atom_count)
    throw Error::resource("build_K: frame has " + std::to_string(m) + " worlds, limit " +
                          std::to_string(FiniteModalAlgebra::max_atom_count));
  std::vector<Code> box(std::size_t{1} << m, 0);
  for (Code x = 0; x < box.size(); ++x) {
    Code worlds = 0;
    for (int c = 0; c < m; ++c)
      if (z.has_neighborhood(c, static_cast<WorldSet>(x))) worlds |= Code{1} << c;
    box[x] = worlds;
  }
  return make_powerset_algebra(m, std::move(box));
}

/// Canonical map x ↦ {F | x ∈ F} from an algebra into the complex algebra of
/// its dual frame, together with an exhaustively checked report.
inline std::pair<std::vector<Code>, EmbeddingReport> stone_map(const FiniteModalAlgebra& a,
                                                               const MeetFamilySet& s,
                                                               DualVariant variant) {
  NeighborhoodFrame z =
      variant == DualVariant::with_closure ? build_J(a, s) : build_Jbar(a, s);
  FiniteModalAlgebra b = build_K(z);
  std::vector<Filter> filters = enumerate_prime_filters(a);

  std::vector<Code> f(a.size());
  for (Code x = 0; x < a.size(); ++x)
    f[x] = static_cast<Code>(detail::filter_extent(filters, x));

  EmbeddingReport report{true, true, true, true, true, {}};
  auto note = [&report](bool& flag, std::initializer_list<Code> codes) {
    flag = false;
    for (Code c : codes)
      if (std::find(report.witnesses.begin(), report.witnesses.end(), c) ==
          report.witnesses.end())
        report.witnesses.push_back(c);
  };

  for (Code x = 0; x < a.size(); ++x)
    for (Code y = x + 1; y < a.size(); ++y)
      if (f[x] == f[y]) note(report.injective, {x, y});

  if (f[a.bot()] != b.bot()) note(report.boolean_homomorphism, {a.bot()});
  if (f[a.top()] != b.top()) note(report.boolean_homomorphism, {a.top()});
  for (Code x = 0; x < a.size(); ++x) {
    if (f[a.complement(x)] != b.complement(f[x])) note(report.boolean_homomorphism, {x});
    for (Code y = 0; y < a.size(); ++y) {
      if (f[a.meet(x, y)] != b.meet(f[x], f[y])) note(report.boolean_homomorphism, {x, y});
      if (f[a.join(x, y)] != b.join(f[x], f[y])) note(report.boolean_homomorphism, {x, y});
    }
  }

  for (Code x = 0; x < a.size(); ++x)
    if (f[a.box(x)] != b.box(f[x])) note(report.box_preserved, {x});

  for (const MeetFamily& fam : s) {
    Code image_meet = b.top();
    for (Code c : fam) image_meet = b.meet(image_meet, f[c]);
    if (f[family_meet(a, fam)] != image_meet)
      note(report.meets_preserved, {family_meet(a, fam)});
  }

  std::vector<bool> hit(b.size(), false);
  for (Code x = 0; x < a.size(); ++x) hit[f[x]] = true;
  for (Code y = 0; y < b.size(); ++y)
    if (!hit[y]) note(report.surjective, {y});

  return {std::move(f), std::move(report)};
}

}  // namespace nbhd
