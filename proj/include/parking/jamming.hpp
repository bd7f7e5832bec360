#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "parking/field.hpp"
#include "parking/lattice.hpp"

namespace parking {

// Frozen configuration outside the region being jammed. Sparse: unlisted
// sites are empty (the all-zero boundary of the free process).
class BoundaryCondition {
 public:
  BoundaryCondition() = default;

  void set(const Site& i, bool occupied) { values_[i] = occupied; }

  bool value(const Site& i) const {
    auto it = values_.find(i);
    return it != values_.end() && it->second;
  }

  bool empty() const { return values_.empty(); }

  const std::unordered_map<Site, bool, SiteHash>& values() const { return values_; }

 private:
  std::unordered_map<Site, bool, SiteHash> values_;
};

// Terminal state of a jammed region: sites in lexicographic order with their
// 0/1 occupancy, plus the boundary the sweep consulted. The visit order is
// recorded only when the caller asks for it.
struct Configuration {
  std::vector<Site> sites;              // lexicographically sorted
  std::vector<std::uint8_t> occupancy;  // aligned with sites
  BoundaryCondition boundary;
  std::vector<Site> visit_order;  // empty unless traced

  int site_index(const Site& i) const {
    auto it = std::lower_bound(sites.begin(), sites.end(), i);
    if (it == sites.end() || !(*it == i)) return -1;
    return static_cast<int>(it - sites.begin());
  }

  bool occupied(const Site& i) const {
    const int idx = site_index(i);
    if (idx < 0) throw std::invalid_argument("Configuration: site not in region");
    return occupancy[static_cast<std::size_t>(idx)] != 0;
  }
};

inline std::int64_t count_occupied(const Configuration& c) {
  std::int64_t n = 0;
  for (auto v : c.occupancy) n += v;
  return n;
}

namespace jam_detail {

// Core sweep, generic in the source of marks so that tests can drive it
// with synthetic ranks. Visits region sites in increasing (mark, lex) order;
// a site is occupied iff every neighbor is empty at its turn, where
// neighbors inside the region carry the evolving state and neighbors outside
// carry the frozen boundary (default 0).
template <class MarkFn>
Configuration sweep(std::span<const Site> region, const BoundaryCondition& boundary,
                    MarkFn&& mark_of, bool trace) {
  if (region.empty()) throw std::invalid_argument("jam: region must be non-empty");

  const std::size_t m = region.size();
  Configuration out;
  out.sites.assign(region.begin(), region.end());
  std::sort(out.sites.begin(), out.sites.end());
  if (std::adjacent_find(out.sites.begin(), out.sites.end()) != out.sites.end())
    throw std::invalid_argument("jam: region contains duplicate sites");
  for (const auto& [key, value] : boundary.values())
    if (out.site_index(key) >= 0)
      throw std::invalid_argument("jam: boundary key " + key.to_string() +
                                  " lies inside the region");
  out.boundary = boundary;
  out.occupancy.assign(m, 0);

  std::vector<double> marks(m);
  for (std::size_t k = 0; k < m; ++k) marks[k] = mark_of(out.sites[k]);

  std::vector<std::uint32_t> order(m);
  for (std::size_t k = 0; k < m; ++k) order[k] = static_cast<std::uint32_t>(k);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return mark_less(marks[a], marks[b], out.sites[a], out.sites[b]);
  });

  if (trace) out.visit_order.reserve(m);
  for (const std::uint32_t idx : order) {
    const Site& i = out.sites[idx];
    if (trace) out.visit_order.push_back(i);
    bool blocked = false;
    for_each_neighbor(i, [&](const Site& j) {
      if (blocked) return;
      const int jdx = out.site_index(j);
      if (jdx >= 0) {
        if (out.occupancy[static_cast<std::size_t>(jdx)]) blocked = true;
      } else if (boundary.value(j)) {
        blocked = true;
      }
    });
    if (!blocked) out.occupancy[idx] = 1;
  }
  return out;
}

}  // namespace jam_detail

// Jamming limit of the parking process on an arbitrary finite region with a
// frozen boundary, driven by the field's marks. Deterministic in
// (field, region, boundary).
inline Configuration jam(const UniformField& field, std::span<const Site> region,
                         const BoundaryCondition& boundary = {}, bool trace = false) {
  return jam_detail::sweep(
      region, boundary, [&](const Site& i) { return field.uniform_at(i); }, trace);
}

inline Configuration jam(const UniformField& field, const BoxRegion& box,
                         const BoundaryCondition& boundary = {}, bool trace = false) {
  const auto sites = box_sites(box);
  return jam(field, sites, boundary, trace);
}

// No two occupied region sites adjacent, and no occupied region site
// adjacent to a frozen 1.
bool is_independent_set(const Configuration& c);

// Every empty region site has an occupied neighbor in the region or among
// the frozen 1s. Holds for every jam output; not required of restrictions
// of larger configurations.
bool is_maximal(const Configuration& c);

}  // namespace parking
