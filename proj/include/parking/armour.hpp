#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "parking/field.hpp"
#include "parking/jamming.hpp"
#include "parking/lattice.hpp"

namespace parking {

// The armour of a finite seed set: the seeds together with every site
// reachable from a seed by a nearest-neighbor path of strictly decreasing
// marks. Jamming the armour determines the thermodynamic occupancy on the
// seed set, whatever happens outside.
struct Armour {
  std::vector<Site> seedset;  // lexicographically sorted
  std::vector<Site> members;  // lexicographically sorted, contains seedset
  Seed seed;                  // field that produced it

  bool contains(const Site& i) const;
};

// Raised when an armour search escapes the cap box. The probability decays
// factorially in the cap, so with the default cap this signals a broken
// field or a genuinely astronomical event; either way it must surface.
class ArmourOverflowError : public std::runtime_error {
 public:
  ArmourOverflowError(std::string message, std::vector<Site> partial_members)
      : std::runtime_error(std::move(message)),
        partial_members_(std::move(partial_members)) {}

  const std::vector<Site>& partial_members() const { return partial_members_; }

 private:
  std::vector<Site> partial_members_;
};

inline constexpr std::int32_t kDefaultArmourCap = 64;

// Exact armour by depth-first descent search. Errors out (never truncates)
// if any member leaves the box of radius `cap` around the seed set's
// bounding box.
Armour compute_armour(const UniformField& field, std::span<const Site> seedset,
                      std::int32_t cap = kDefaultArmourCap);

Armour compute_armour(const UniformField& field, const Site& seed_site,
                      std::int32_t cap = kDefaultArmourCap);

// Exact sample of the thermodynamic jamming limit at one site: jam the
// armour of {i} with free boundary and read off the occupancy at i.
bool sample_occupancy(const UniformField& field, const Site& i,
                      std::int32_t cap = kDefaultArmourCap);

// Exact sample of the thermodynamic jamming limit on a whole window: jam
// the armour of the window once with free boundary and restrict. The
// marginal on the window equals the infinite-volume limit; windows of the
// same field agree wherever they overlap.
Configuration sample_window(const UniformField& field, const BoxRegion& window,
                            std::int32_t cap = kDefaultArmourCap);

// d=1 armours are intervals [-m, n] around the seed; classify the two
// extents. Throws if members are not a contiguous interval around seed_site.
struct ArmourExtents1d {
  std::int32_t left = 0;   // m >= 0
  std::int32_t right = 0;  // n >= 0
};
ArmourExtents1d armour_extents_1d(const Armour& armour, const Site& seed_site);

}  // namespace parking
