#include "parking/armour.hpp"

#include <algorithm>
#include <unordered_set>

namespace parking {

namespace {

struct CapBox {
  std::array<std::int64_t, Site::kMaxDimension> lo{};
  std::array<std::int64_t, Site::kMaxDimension> hi{};
  int dim = 0;

  CapBox(std::span<const Site> seedset, std::int32_t cap) {
    dim = seedset.front().dimension();
    for (int k = 0; k < dim; ++k) {
      lo[k] = seedset.front()[k];
      hi[k] = seedset.front()[k];
    }
    for (const Site& s : seedset)
      for (int k = 0; k < dim; ++k) {
        lo[k] = std::min<std::int64_t>(lo[k], s[k]);
        hi[k] = std::max<std::int64_t>(hi[k], s[k]);
      }
    for (int k = 0; k < dim; ++k) {
      lo[k] -= cap;
      hi[k] += cap;
    }
  }

  bool contains(const Site& s) const {
    for (int k = 0; k < dim; ++k)
      if (s[k] < lo[k] || s[k] > hi[k]) return false;
    return true;
  }
};

}  // namespace

bool Armour::contains(const Site& i) const {
  return std::binary_search(members.begin(), members.end(), i);
}

Armour compute_armour(const UniformField& field, std::span<const Site> seedset,
                      std::int32_t cap) {
  if (seedset.empty())
    throw std::invalid_argument("compute_armour: seed set must be non-empty");
  if (cap <= 0) throw std::invalid_argument("compute_armour: cap must be positive");

  const CapBox cap_box(seedset, cap);

  std::unordered_set<Site, SiteHash> visited;
  visited.reserve(2 * seedset.size());
  std::vector<std::pair<Site, double>> stack;
  stack.reserve(seedset.size() + 16);
  for (const Site& s : seedset) {
    if (visited.insert(s).second) stack.emplace_back(s, field.uniform_at(s));
  }

  while (!stack.empty()) {
    const auto [cur, mark] = stack.back();
    stack.pop_back();
    for_each_neighbor(cur, [&, mark = mark](const Site& next) {
      if (visited.contains(next)) return;
      const double next_mark = field.uniform_at(next);
      if (!mark_less(next_mark, mark, next, cur)) return;
      if (!cap_box.contains(next)) {
        std::vector<Site> partial(visited.begin(), visited.end());
        std::sort(partial.begin(), partial.end());
        throw ArmourOverflowError(
            "armour overflow: member " + next.to_string() +
                " escaped the cap box (cap=" + std::to_string(cap) + ")",
            std::move(partial));
      }
      visited.insert(next);
      stack.emplace_back(next, next_mark);
    });
  }

  Armour out;
  out.seedset.assign(seedset.begin(), seedset.end());
  std::sort(out.seedset.begin(), out.seedset.end());
  out.members.assign(visited.begin(), visited.end());
  std::sort(out.members.begin(), out.members.end());
  out.seed = field.seed();
  return out;
}

Armour compute_armour(const UniformField& field, const Site& seed_site,
                      std::int32_t cap) {
  return compute_armour(field, std::span<const Site>(&seed_site, 1), cap);
}

bool sample_occupancy(const UniformField& field, const Site& i, std::int32_t cap) {
  const Armour armour = compute_armour(field, i, cap);
  const Configuration config = jam(field, armour.members);
  return config.occupied(i);
}

Configuration sample_window(const UniformField& field, const BoxRegion& window,
                            std::int32_t cap) {
  const auto window_sites = box_sites(window);
  const Armour armour = compute_armour(field, window_sites, cap);
  const Configuration full = jam(field, armour.members);

  Configuration out;
  out.sites = window_sites;
  std::sort(out.sites.begin(), out.sites.end());
  out.occupancy.reserve(out.sites.size());
  for (const Site& s : out.sites)
    out.occupancy.push_back(full.occupied(s) ? 1 : 0);
  return out;
}

ArmourExtents1d armour_extents_1d(const Armour& armour, const Site& seed_site) {
  if (seed_site.dimension() != 1)
    throw std::invalid_argument("armour_extents_1d: requires d=1");
  const std::int64_t lo = armour.members.front()[0];
  const std::int64_t hi = armour.members.back()[0];
  if (hi - lo + 1 != static_cast<std::int64_t>(armour.members.size()))
    throw std::logic_error("armour_extents_1d: members are not an interval");
  ArmourExtents1d ext;
  ext.left = static_cast<std::int32_t>(seed_site[0] - lo);
  ext.right = static_cast<std::int32_t>(hi - seed_site[0]);
  return ext;
}

}  // namespace parking
