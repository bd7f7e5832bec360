#include "parking/jamming.hpp"

namespace parking {

bool is_independent_set(const Configuration& c) {
  for (std::size_t k = 0; k < c.sites.size(); ++k) {
    if (!c.occupancy[k]) continue;
    bool bad = false;
    for_each_neighbor(c.sites[k], [&](const Site& j) {
      if (bad) return;
      const int jdx = c.site_index(j);
      if (jdx >= 0) {
        if (c.occupancy[static_cast<std::size_t>(jdx)]) bad = true;
      } else if (c.boundary.value(j)) {
        bad = true;
      }
    });
    if (bad) return false;
  }
  return true;
}

bool is_maximal(const Configuration& c) {
  for (std::size_t k = 0; k < c.sites.size(); ++k) {
    if (c.occupancy[k]) continue;
    bool shielded = false;
    for_each_neighbor(c.sites[k], [&](const Site& j) {
      if (shielded) return;
      const int jdx = c.site_index(j);
      if (jdx >= 0) {
        if (c.occupancy[static_cast<std::size_t>(jdx)]) shielded = true;
      } else if (c.boundary.value(j)) {
        shielded = true;
      }
    });
    if (!shielded) return false;
  }
  return true;
}

}  // namespace parking
