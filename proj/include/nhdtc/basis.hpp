#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace nhdtc {

using Index = std::uint64_t;

/// Largest supported chain length. 4^L must fit in a 64-bit index.
inline constexpr int kMaxSites = 31;

enum class BasisKind { Full, PairSector };

enum class Spin : std::uint8_t { Down = 0, Up = 1 };

/// Describes the state space of two L-site chains.
///
/// Full: all 4^L configurations. Bit j of an index holds chain-a site j,
/// bit L+j holds chain-b site j (1 = up).
///
/// PairSector: the 2^L configurations in which every (a_j, b_j) pair is
/// antialigned. Reduced bit j = 1 means pair j is |up>_a|down>_b.
class BasisDescriptor {
 public:
  BasisDescriptor(int sites, BasisKind kind);

  static BasisDescriptor full(int sites) { return {sites, BasisKind::Full}; }
  static BasisDescriptor pair_sector(int sites) { return {sites, BasisKind::PairSector}; }

  int sites() const { return sites_; }
  BasisKind kind() const { return kind_; }
  Index dim() const { return dim_; }

  bool operator==(const BasisDescriptor&) const = default;

 private:
  int sites_;
  BasisKind kind_;
  Index dim_;
};

/// Spin configuration as 2L labels: chain a sites 0..L-1, then chain b.
using SpinConfig = std::vector<Spin>;

Index encode(std::span<const Spin> config);
SpinConfig decode(Index idx, int sites);

/// (#up - #down) over both chains of a Full-basis index.
int total_magnetization(Index idx, const BasisDescriptor& desc);

/// Full-basis index of the configuration labelled by a pair-sector index.
Index pair_sector_embed(Index reduced_idx, int sites);

/// Inverse of pair_sector_embed. Returns false when the Full index has an
/// aligned pair.
bool pair_sector_project(Index full_idx, int sites, Index& reduced_idx);

/// Index of the global spin-inversion partner within the same basis.
inline Index spin_flip(Index idx, const BasisDescriptor& desc) { return idx ^ (desc.dim() - 1); }

/// z-spin (+1/-1) of chain-a site j for any basis kind.
inline int spin_a(Index idx, int j) { return ((idx >> j) & 1U) ? 1 : -1; }

/// z-spin of chain-b site j. In the pair sector it is minus the a spin.
inline int spin_b(Index idx, int j, const BasisDescriptor& desc) {
  if (desc.kind() == BasisKind::PairSector) return -spin_a(idx, j);
  return ((idx >> (desc.sites() + j)) & 1U) ? 1 : -1;
}

}  // namespace nhdtc
