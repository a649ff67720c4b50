#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nbhd/error.hpp"

namespace nbhd {

/// Subset of a frame's worlds, packed as a characteristic bit vector.
using WorldSet = std::uint32_t;

struct FrameProperties {
  bool monotonic = false;  // every 𝒱(c) closed upward under inclusion
  bool topped = false;     // C ∈ 𝒱(c) for every c
  bool cufi = false;       // 𝒱(c) closed under binary intersection

  friend bool operator==(const FrameProperties&, const FrameProperties&) = default;
};

/// Finite neighborhood frame ⟨C, 𝒱⟩: a world count and, per world, the family
/// of world-subsets considered its neighborhoods. Families are kept sorted and
/// duplicate-free so frames compare canonically.
class NeighborhoodFrame {
public:
  static constexpr int max_world_count = 20;

  NeighborhoodFrame(int world_count, std::vector<std::vector<WorldSet>> neighborhoods)
      : world_count_(world_count), nbhd_(std::move(neighborhoods)) {
    if (world_count_ < 1 || world_count_ > max_world_count)
      throw Error::construction("world count " + std::to_string(world_count_) +
                                " outside 1.." + std::to_string(max_world_count));
    if (nbhd_.size() != static_cast<std::size_t>(world_count_))
      throw Error::construction("expected one neighborhood family per world");
    const WorldSet full = full_set();
    for (auto& family : nbhd_) {
      for (WorldSet x : family)
        if (x > full)
          throw Error::construction("neighborhood subset code " + std::to_string(x) +
                                    " out of range");
      std::sort(family.begin(), family.end());
      family.erase(std::unique(family.begin(), family.end()), family.end());
    }
  }

  int world_count() const { return world_count_; }
  WorldSet full_set() const { return (WorldSet{1} << world_count_) - 1; }
  const std::vector<WorldSet>& neighborhoods(int world) const { return nbhd_[world]; }

  bool has_neighborhood(int world, WorldSet x) const {
    const auto& f = nbhd_[world];
    return std::binary_search(f.begin(), f.end(), x);
  }

  friend bool operator==(const NeighborhoodFrame&, const NeighborhoodFrame&) = default;

private:
  int world_count_;
  std::vector<std::vector<WorldSet>> nbhd_;
};

/// Inclusion-upward closure of a family inside the powerset of m worlds.
inline std::vector<WorldSet> upward_closure(const std::vector<WorldSet>& family, int m) {
  if (m < 0 || m > NeighborhoodFrame::max_world_count)
    throw Error::domain("upward_closure: world count out of range");
  const WorldSet full = (WorldSet{1} << m) - 1;
  std::vector<bool> in(std::size_t{1} << m, false);
  for (WorldSet x : family) {
    if (x > full) throw Error::domain("upward_closure: subset code out of range");
    // Walk all supersets of x inside the full mask.
    WorldSet s = x;
    while (true) {
      in[s] = true;
      if (s == full) break;
      s = (s + 1) | x;
    }
  }
  std::vector<WorldSet> out;
  for (WorldSet y = 0; y < in.size(); ++y)
    if (in[y]) out.push_back(y);
  return out;
}

inline FrameProperties check_frame_properties(const NeighborhoodFrame& z) {
  FrameProperties p{true, true, true};
  const WorldSet full = z.full_set();
  for (int c = 0; c < z.world_count(); ++c) {
    const auto& fam = z.neighborhoods(c);
    if (!z.has_neighborhood(c, full)) p.topped = false;
    for (std::size_t i = 0; i < fam.size(); ++i) {
      if (p.monotonic) {
        WorldSet s = fam[i];
        while (s != full) {
          s = (s + 1) | fam[i];
          if (!z.has_neighborhood(c, s)) {
            p.monotonic = false;
            break;
          }
        }
      }
      if (p.cufi) {
        for (std::size_t j = i + 1; j < fam.size(); ++j) {
          if (!z.has_neighborhood(c, fam[i] & fam[j])) {
            p.cufi = false;
            break;
          }
        }
      }
      if (!p.monotonic && !p.cufi && !p.topped) return p;
    }
  }
  return p;
}

/// f: worlds of z1 → worlds of z2 with f⁻¹[X] ∈ 𝒱₁(c) ⇔ X ∈ 𝒱₂(f(c)).
inline bool is_frame_homomorphism(const std::vector<int>& f, const NeighborhoodFrame& z1,
                                  const NeighborhoodFrame& z2) {
  if (f.size() != static_cast<std::size_t>(z1.world_count()))
    throw Error::domain("is_frame_homomorphism: map not total on source worlds");
  for (int v : f)
    if (v < 0 || v >= z2.world_count())
      throw Error::domain("is_frame_homomorphism: map value out of range");
  const WorldSet full2 = z2.full_set();
  for (int c = 0; c < z1.world_count(); ++c) {
    for (WorldSet x = 0; x <= full2; ++x) {
      WorldSet pre = 0;
      for (int w = 0; w < z1.world_count(); ++w)
        if (x >> f[w] & 1) pre |= WorldSet{1} << w;
      if (z1.has_neighborhood(c, pre) != z2.has_neighborhood(f[c], x)) return false;
    }
  }
  return true;
}

/// Deterministic stream over all frames with m worlds, filtered to the
/// requested property flags. Per-world families are encoded as bitmasks over
/// the 2^m subset codes; the stream counts an odometer with world 0 as the
/// least significant digit.
class FrameEnumerator {
public:
  FrameEnumerator(int m, FrameProperties required, std::uint64_t budget)
      : m_(m), required_(required), budget_(budget), digits_(m, 0) {
    if (m < 1 || m > 4) throw Error::domain("enumerate_frames: world count must be 1..4");
    family_count_ = std::uint64_t{1} << (std::uint64_t{1} << m);
  }

  std::optional<NeighborhoodFrame> next() {
    while (budget_ > 0 && !exhausted_) {
      NeighborhoodFrame z = materialize();
      advance();
      FrameProperties p = check_frame_properties(z);
      if ((p.monotonic || !required_.monotonic) && (p.topped || !required_.topped) &&
          (p.cufi || !required_.cufi)) {
        --budget_;
        return z;
      }
    }
    return std::nullopt;
  }

private:
  NeighborhoodFrame materialize() const {
    std::vector<std::vector<WorldSet>> nbhd(m_);
    for (int c = 0; c < m_; ++c)
      for (std::uint64_t s = 0; s < (std::uint64_t{1} << m_); ++s)
        if (digits_[c] >> s & 1) nbhd[c].push_back(static_cast<WorldSet>(s));
    return NeighborhoodFrame(m_, std::move(nbhd));
  }

  void advance() {
    for (int c = 0; c < m_; ++c) {
      if (++digits_[c] < family_count_) return;
      digits_[c] = 0;
    }
    exhausted_ = true;
  }

  int m_;
  FrameProperties required_;
  std::uint64_t budget_;
  std::vector<std::uint64_t> digits_;
  std::uint64_t family_count_ = 0;
  bool exhausted_ = false;
};

inline std::vector<NeighborhoodFrame> enumerate_frames(int m, FrameProperties required,
                                                       std::uint64_t budget) {
  FrameEnumerator stream(m, required, budget);
  std::vector<NeighborhoodFrame> out;
  while (auto z = stream.next()) out.push_back(std::move(*z));
  return out;
}

}  // namespace nbhd
