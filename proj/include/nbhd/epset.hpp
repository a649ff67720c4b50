#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "nbhd/error.hpp"

namespace nbhd {

/// Eventually-periodic subset of ω, stored as a finite prefix bitstring plus a
/// repeating period bitstring:
///
///   i ∈ X  iff  i < ℓ ? prefix[i] : period[(i − ℓ) mod p]
///
/// Values are kept in canonical form (minimal period, then minimal prefix), so
/// set equality is string equality. The family of all such sets is a Boolean
/// subalgebra of 𝒫(ω) with decidable membership, inclusion and equality.
class EPSet {
public:
  /// Canonicalizing constructor; bits are the characters '0' and '1'.
  static EPSet make(std::string prefix, std::string period) {
    validate_bits(prefix);
    validate_bits(period);
    if (period.empty()) throw Error::construction("EPSet period must be non-empty");
    canonicalize(prefix, period);
    return EPSet(std::move(prefix), std::move(period));
  }

  static EPSet empty() { return make("", "0"); }
  static EPSet omega() { return make("", "1"); }

  /// {i}
  static EPSet singleton(std::uint32_t i) {
    return make(std::string(i, '0') + '1', "0");
  }

  /// ω ∖ {i}
  static EPSet co_singleton(std::uint32_t i) {
    return make(std::string(i, '1') + '0', "1");
  }

  /// [i, ∞)
  static EPSet tail(std::uint32_t i) { return make(std::string(i, '0'), "1"); }

  const std::string& prefix() const { return prefix_; }
  const std::string& period() const { return period_; }
  std::size_t prefix_length() const { return prefix_.size(); }
  std::size_t period_length() const { return period_.size(); }

  bool contains(std::uint64_t i) const {
    if (i < prefix_.size()) return prefix_[i] == '1';
    return period_[(i - prefix_.size()) % period_.size()] == '1';
  }

  EPSet complement() const {
    std::string pre = prefix_, per = period_;
    for (char& c : pre) c = c == '1' ? '0' : '1';
    for (char& c : per) c = c == '1' ? '0' : '1';
    // Flipping bits preserves canonicality: both the minimal-period and the
    // minimal-prefix conditions only compare bits for equality.
    return EPSet(std::move(pre), std::move(per));
  }

  friend bool operator==(const EPSet&, const EPSet&) = default;

private:
  EPSet(std::string prefix, std::string period)
      : prefix_(std::move(prefix)), period_(std::move(period)) {}

  static void validate_bits(const std::string& s) {
    for (std::size_t i = 0; i < s.size(); ++i)
      if (s[i] != '0' && s[i] != '1')
        throw Error::construction("EPSet bitstring has non-bit at index " + std::to_string(i));
  }

  static void canonicalize(std::string& prefix, std::string& period) {
    // Minimal period first. The minimal period of an infinite word u^ω
    // divides |u| (Fine–Wilf), so it suffices to test divisors.
    const std::size_t p = period.size();
    for (std::size_t d = 1; d < p; ++d) {
      if (p % d != 0) continue;
      bool repeats = true;
      for (std::size_t i = d; i < p && repeats; ++i) repeats = period[i] == period[i - d];
      if (repeats) {
        period.resize(d);
        break;
      }
    }
    // Minimal prefix: absorb the last prefix bit whenever it matches the bit
    // the rotated period would put there. Rotation keeps the period primitive,
    // so no re-minimization is needed.
    while (!prefix.empty() && prefix.back() == period.back()) {
      prefix.pop_back();
      period.insert(period.begin(), period.back());
      period.pop_back();
    }
  }

  std::string prefix_;
  std::string period_;
};

namespace detail {

template <typename F>
EPSet ep_combine(const EPSet& x, const EPSet& y, F bit_op) {
  const std::size_t ell = std::max(x.prefix_length(), y.prefix_length());
  const std::size_t p = std::lcm(x.period_length(), y.period_length());
  std::string prefix(ell, '0'), period(p, '0');
  for (std::size_t i = 0; i < ell; ++i)
    prefix[i] = bit_op(x.contains(i), y.contains(i)) ? '1' : '0';
  for (std::size_t i = 0; i < p; ++i)
    period[i] = bit_op(x.contains(ell + i), y.contains(ell + i)) ? '1' : '0';
  return EPSet::make(std::move(prefix), std::move(period));
}

}  // namespace detail

inline EPSet ep_union(const EPSet& x, const EPSet& y) {
  return detail::ep_combine(x, y, [](bool a, bool b) { return a || b; });
}

inline EPSet ep_intersection(const EPSet& x, const EPSet& y) {
  return detail::ep_combine(x, y, [](bool a, bool b) { return a && b; });
}

inline EPSet ep_complement(const EPSet& x) { return x.complement(); }

inline bool ep_is_empty(const EPSet& x) { return x == EPSet::empty(); }

inline bool ep_subset(const EPSet& x, const EPSet& y) {
  return ep_is_empty(ep_intersection(x, y.complement()));
}

/// Complement finite. In canonical form that is exactly period "1".
inline bool ep_is_cofinite(const EPSet& x) { return x.period() == "1"; }

inline bool ep_is_finite(const EPSet& x) { return x.period() == "0"; }

/// Least element, or no value when the set is empty.
inline bool ep_least(const EPSet& x, std::uint64_t& out) {
  for (std::size_t i = 0; i < x.prefix_length(); ++i) {
    if (x.prefix()[i] == '1') {
      out = i;
      return true;
    }
  }
  for (std::size_t i = 0; i < x.period_length(); ++i) {
    if (x.period()[i] == '1') {
      out = x.prefix_length() + i;
      return true;
    }
  }
  return false;
}

/// Designated meet families over the EP algebra. Besides explicit finite
/// lists, the two infinite families the infinitary countermodels need are
/// built in; their members are generated on demand.
struct ParametricFamily {
  enum class Kind { explicit_list, co_singleton, tail };

  Kind kind;
  std::vector<EPSet> members;  // populated only for explicit_list

  static ParametricFamily explicit_family(std::vector<EPSet> sets) {
    if (sets.empty()) throw Error::construction("explicit family must be non-empty");
    return {Kind::explicit_list, std::move(sets)};
  }
  static ParametricFamily co_singleton_family() { return {Kind::co_singleton, {}}; }
  static ParametricFamily tail_family() { return {Kind::tail, {}}; }
};

/// Meet of a family within the EP algebra.
///
/// co_singleton: any lower bound of {ω∖{i} : i∈ω} avoids every i, so the only
/// one is ∅, which is eventually periodic; likewise for tail.
inline EPSet family_meet(const ParametricFamily& f) {
  switch (f.kind) {
    case ParametricFamily::Kind::explicit_list: {
      EPSet m = f.members.front();
      for (std::size_t i = 1; i < f.members.size(); ++i) m = ep_intersection(m, f.members[i]);
      return m;
    }
    case ParametricFamily::Kind::co_singleton:
    case ParametricFamily::Kind::tail:
      return EPSet::empty();
  }
  throw Error::domain("family_meet: unknown family kind");
}

/// Q-filter condition for the principal ultrafilter U_n = {X : n ∈ X}:
/// for each family whose meet exists in the algebra, either some member
/// already fails to contain n (the family is not inside U_n) or the meet
/// contains n.
inline bool ep_principal_ultrafilter_is_q(std::uint32_t n,
                                          const std::vector<ParametricFamily>& s) {
  for (const ParametricFamily& fam : s) {
    bool some_member_outside = false;
    switch (fam.kind) {
      case ParametricFamily::Kind::explicit_list:
        for (const EPSet& x : fam.members)
          if (!x.contains(n)) {
            some_member_outside = true;
            break;
          }
        break;
      case ParametricFamily::Kind::co_singleton:
        some_member_outside = !EPSet::co_singleton(n).contains(n);
        break;
      case ParametricFamily::Kind::tail:
        some_member_outside = !EPSet::tail(n + 1).contains(n);
        break;
    }
    if (!some_member_outside && !family_meet(fam).contains(n)) return false;
  }
  return true;
}

/// Separation on the EP carrier: least n ∈ a∖b. The returned index names the
/// principal ultrafilter U_n, which contains a, omits b, and passes the Q
/// condition for s.
inline std::uint32_t ep_separate(const EPSet& a, const EPSet& b,
                                 const std::vector<ParametricFamily>& s) {
  EPSet diff = ep_intersection(a, b.complement());
  std::uint64_t n = 0;
  if (!ep_least(diff, n)) throw Error::domain("not separable");
  if (!ep_principal_ultrafilter_is_q(static_cast<std::uint32_t>(n), s))
    throw Error::domain("ep_separate: candidate ultrafilter fails the Q condition");
  return static_cast<std::uint32_t>(n);
}

}  // namespace nbhd
