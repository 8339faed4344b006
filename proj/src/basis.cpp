#include "nhdtc/basis.hpp"

#include <bit>
#include <string>

#include "nhdtc/errors.hpp"

namespace nhdtc {

BasisDescriptor::BasisDescriptor(int sites, BasisKind kind) : sites_(sites), kind_(kind) {
  if (sites < 1 || sites > kMaxSites)
    throw InvalidParam("L=" + std::to_string(sites) + " outside [1, " + std::to_string(kMaxSites) + "]");
  dim_ = kind == BasisKind::Full ? (Index{1} << (2 * sites)) : (Index{1} << sites);
}

Index encode(std::span<const Spin> config) {
  if (config.empty() || config.size() % 2 != 0 || config.size() / 2 > kMaxSites)
    throw InvalidConfig("expected 2L spin labels, got " + std::to_string(config.size()));
  Index idx = 0;
  for (std::size_t bit = 0; bit < config.size(); ++bit)
    if (config[bit] == Spin::Up) idx |= Index{1} << bit;
  return idx;
}

SpinConfig decode(Index idx, int sites) {
  const BasisDescriptor desc = BasisDescriptor::full(sites);
  if (idx >= desc.dim()) throw IndexError("index " + std::to_string(idx) + " >= " + std::to_string(desc.dim()));
  SpinConfig config(2 * static_cast<std::size_t>(sites));
  for (std::size_t bit = 0; bit < config.size(); ++bit)
    config[bit] = ((idx >> bit) & 1U) ? Spin::Up : Spin::Down;
  return config;
}

int total_magnetization(Index idx, const BasisDescriptor& desc) {
  if (desc.kind() != BasisKind::Full) throw InvalidParam("total_magnetization expects a Full basis");
  if (idx >= desc.dim()) throw IndexError("index " + std::to_string(idx) + " >= " + std::to_string(desc.dim()));
  const int ups = std::popcount(idx);
  return 2 * ups - 2 * desc.sites();
}

Index pair_sector_embed(Index reduced_idx, int sites) {
  const BasisDescriptor desc = BasisDescriptor::pair_sector(sites);
  if (reduced_idx >= desc.dim())
    throw IndexError("reduced index " + std::to_string(reduced_idx) + " >= " + std::to_string(desc.dim()));
  // Chain a copies the reduced bits, chain b holds their complement.
  const Index mask = desc.dim() - 1;
  return reduced_idx | ((~reduced_idx & mask) << sites);
}

bool pair_sector_project(Index full_idx, int sites, Index& reduced_idx) {
  const Index mask = (Index{1} << sites) - 1;
  const Index a = full_idx & mask;
  const Index b = (full_idx >> sites) & mask;
  if ((a ^ b) != mask) return false;
  reduced_idx = a;
  return true;
}

}  // namespace nhdtc
