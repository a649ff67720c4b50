#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "nbhd/error.hpp"

namespace nbhd {

/// Element code of a finite powerset algebra: a characteristic vector over the
/// atom set, packed into the low bits of an unsigned integer.
using Code = std::uint32_t;

struct AlgebraProperties {
  bool monotonic = false;  // Box(x∧y) ≤ Box x ∧ Box y for all x, y
  bool topped = false;     // Box 1 = 1
  bool cufi = false;       // Box x ∧ Box y ≤ Box(x∧y) for all x, y

  friend bool operator==(const AlgebraProperties&, const AlgebraProperties&) = default;
};

/// Finite modal algebra: the powerset Boolean algebra on `atom_count` atoms
/// together with an arbitrary unary Box given as a total table.
///
/// Every finite Boolean algebra is of this form, so Boolean structure is
/// componentwise on codes and needs no table.
class FiniteModalAlgebra {
public:
  static constexpr int max_atom_count = 12;

  FiniteModalAlgebra(int atom_count, std::vector<Code> box_table)
      : atom_count_(atom_count), box_(std::move(box_table)) {
    if (atom_count_ < 1 || atom_count_ > max_atom_count) {
      throw Error::construction("atom count " + std::to_string(atom_count_) +
                                " outside 1.." + std::to_string(max_atom_count));
    }
    const std::size_t want = std::size_t{1} << atom_count_;
    if (box_.size() != want) {
      throw Error::construction("box table has " + std::to_string(box_.size()) +
                                " entries, expected " + std::to_string(want));
    }
    for (std::size_t i = 0; i < box_.size(); ++i) {
      if (box_[i] >= want) {
        throw Error::construction("box table entry " + std::to_string(i) +
                                  " = " + std::to_string(box_[i]) + " out of range");
      }
    }
  }

  int atom_count() const { return atom_count_; }
  std::size_t size() const { return box_.size(); }

  Code bot() const { return 0; }
  Code top() const { return static_cast<Code>(size() - 1); }
  Code meet(Code x, Code y) const { return x & y; }
  Code join(Code x, Code y) const { return x | y; }
  Code complement(Code x) const { return ~x & top(); }
  bool leq(Code x, Code y) const { return (x & ~y) == 0; }
  Code box(Code x) const { return box_[x]; }
  const std::vector<Code>& box_table() const { return box_; }

  bool is_element(Code x) const { return x < size(); }

  /// Atoms in ascending code order: 1, 2, 4, ...
  std::vector<Code> atoms() const {
    std::vector<Code> out;
    out.reserve(atom_count_);
    for (int i = 0; i < atom_count_; ++i) out.push_back(Code{1} << i);
    return out;
  }

private:
  int atom_count_;
  std::vector<Code> box_;
};

inline FiniteModalAlgebra make_powerset_algebra(int atom_count, std::vector<Code> box_table) {
  return FiniteModalAlgebra(atom_count, std::move(box_table));
}

inline AlgebraProperties check_algebra_properties(const FiniteModalAlgebra& a) {
  AlgebraProperties p;
  p.topped = a.box(a.top()) == a.top();
  p.monotonic = true;
  p.cufi = true;
  const Code n = static_cast<Code>(a.size());
  for (Code x = 0; x < n && (p.monotonic || p.cufi); ++x) {
    for (Code y = 0; y < n; ++y) {
      const Code both = a.meet(a.box(x), a.box(y));
      const Code boxed = a.box(a.meet(x, y));
      if (!a.leq(boxed, both)) p.monotonic = false;
      if (!a.leq(both, boxed)) p.cufi = false;
      if (!p.monotonic && !p.cufi) break;
    }
  }
  return p;
}

/// Filter of a finite algebra, stored as the sorted set of member codes.
struct Filter {
  std::vector<Code> elements;

  bool contains(Code x) const {
    return std::binary_search(elements.begin(), elements.end(), x);
  }

  friend bool operator==(const Filter&, const Filter&) = default;
};

using MeetFamily = std::vector<Code>;
using MeetFamilySet = std::vector<MeetFamily>;

/// Principal filter ↑x = {y : x ≤ y}.
inline Filter principal_filter(const FiniteModalAlgebra& a, Code x) {
  Filter f;
  for (Code y = 0; y < a.size(); ++y)
    if (a.leq(x, y)) f.elements.push_back(y);
  return f;
}

inline bool is_filter(const FiniteModalAlgebra& a, const Filter& f) {
  for (Code x : f.elements) {
    if (!a.is_element(x)) return false;
    for (Code y : f.elements)
      if (!f.contains(a.meet(x, y))) return false;
    for (Code y = 0; y < a.size(); ++y)
      if (a.leq(x, y) && !f.contains(y)) return false;
  }
  return true;
}

/// Prime: proper filter such that x∨y ∈ F implies x ∈ F or y ∈ F.
inline bool is_prime_filter(const FiniteModalAlgebra& a, const Filter& f) {
  if (!is_filter(a, f)) return false;
  if (f.elements.empty() || f.contains(a.bot())) return false;
  for (Code x = 0; x < a.size(); ++x)
    for (Code y = 0; y < a.size(); ++y)
      if (f.contains(a.join(x, y)) && !f.contains(x) && !f.contains(y)) return false;
  return true;
}

/// Prime filters of a finite powerset algebra are exactly ↑{atom}; listed in
/// ascending atom order. The brute-force cross-check lives in the test suite.
inline std::vector<Filter> enumerate_prime_filters(const FiniteModalAlgebra& a) {
  std::vector<Filter> out;
  out.reserve(a.atom_count());
  for (Code atom : a.atoms()) out.push_back(principal_filter(a, atom));
  return out;
}

inline Code family_meet(const FiniteModalAlgebra& a, const MeetFamily& x) {
  Code m = a.top();
  for (Code c : x) m = a.meet(m, c);
  return m;
}

/// Q-filter condition for a prime filter: every designated family contained in
/// F has its meet in F.
inline bool is_q_filter(const FiniteModalAlgebra& a, const Filter& f, const MeetFamilySet& s) {
  if (!is_prime_filter(a, f)) throw Error::domain("is_q_filter: filter is not prime");
  for (const MeetFamily& fam : s) {
    for (Code c : fam)
      if (!a.is_element(c)) throw Error::domain("is_q_filter: family code out of range");
    const bool inside = std::all_of(fam.begin(), fam.end(),
                                    [&](Code c) { return f.contains(c); });
    if (inside && !f.contains(family_meet(a, fam))) return false;
  }
  return true;
}

/// Separation: a Q-filter for S containing a and omitting b, built on the
/// smallest atom below a and not below b.
inline Filter separate(const FiniteModalAlgebra& a, Code a_code, Code b_code,
                       const MeetFamilySet& s) {
  if (!a.is_element(a_code) || !a.is_element(b_code))
    throw Error::domain("separate: code out of range");
  if (a.leq(a_code, b_code)) throw Error::domain("not separable");
  for (Code atom : a.atoms()) {
    if (a.leq(atom, a_code) && !a.leq(atom, b_code)) {
      Filter f = principal_filter(a, atom);
      // Principal ultrafilters satisfy the Q condition outright; asserted here
      // so a regression cannot return a non-Q witness silently.
      if (!is_q_filter(a, f, s)) throw Error::domain("separate: candidate not a Q-filter");
      return f;
    }
  }
  throw Error::domain("not separable");
}

inline bool check_box_meet_equation(const FiniteModalAlgebra& a, const MeetFamily& x) {
  if (x.empty()) throw Error::domain("check_box_meet_equation: empty family");
  for (Code c : x)
    if (!a.is_element(c)) throw Error::domain("check_box_meet_equation: code out of range");
  Code rhs = a.top();
  for (Code c : x) rhs = a.meet(rhs, a.box(c));
  return a.box(family_meet(a, x)) == rhs;
}

/// f preserves 0, 1, ∧, − and Box (∨ follows from ∧ and −).
inline bool is_algebra_homomorphism(const std::vector<Code>& f, const FiniteModalAlgebra& a,
                                    const FiniteModalAlgebra& b) {
  if (f.size() != a.size()) throw Error::domain("homomorphism map not total on carrier");
  for (Code v : f)
    if (!b.is_element(v)) throw Error::domain("homomorphism map value out of range");
  if (f[a.bot()] != b.bot() || f[a.top()] != b.top()) return false;
  for (Code x = 0; x < a.size(); ++x) {
    if (f[a.complement(x)] != b.complement(f[x])) return false;
    if (f[a.box(x)] != b.box(f[x])) return false;
    for (Code y = 0; y < a.size(); ++y)
      if (f[a.meet(x, y)] != b.meet(f[x], f[y])) return false;
  }
  return true;
}

}  // namespace nbhd
