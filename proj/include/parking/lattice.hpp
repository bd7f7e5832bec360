#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "parking/field.hpp"

namespace parking {

// Centered box {j : ||j - center||_max <= radius} in Z^d.
class BoxRegion {
 public:
  BoxRegion(Site center, std::int32_t radius)
      : center_(center), radius_(radius) {
    if (radius < 0) throw std::invalid_argument("BoxRegion: radius must be >= 0");
  }

  static BoxRegion centered(int dimension, std::int32_t radius) {
    return BoxRegion(Site::origin(dimension), radius);
  }

  const Site& center() const { return center_; }
  std::int32_t radius() const { return radius_; }
  int dimension() const { return center_.dimension(); }

  // (2n+1)^d
  std::int64_t site_count() const {
    std::int64_t c = 1;
    for (int k = 0; k < dimension(); ++k) c *= 2 * static_cast<std::int64_t>(radius_) + 1;
    return c;
  }

  // (2n+1)^d - (2n-1)^d for n >= 1, and 1 for n = 0.
  std::int64_t boundary_count() const {
    if (radius_ == 0) return 1;
    std::int64_t inner = 1;
    for (int k = 0; k < dimension(); ++k) inner *= 2 * static_cast<std::int64_t>(radius_) - 1;
    return site_count() - inner;
  }

  bool contains(const Site& i) const {
    if (i.dimension() != dimension()) return false;
    for (int k = 0; k < dimension(); ++k) {
      const std::int64_t delta = static_cast<std::int64_t>(i[k]) - center_[k];
      if (delta > radius_ || delta < -static_cast<std::int64_t>(radius_)) return false;
    }
    return true;
  }

 private:
  Site center_;
  std::int32_t radius_;
};

// The 2d nearest neighbors of i (Euclidean distance 1).
inline std::vector<Site> neighbors(const Site& i) {
  std::vector<Site> out;
  out.reserve(2 * static_cast<std::size_t>(i.dimension()));
  for (int k = 0; k < i.dimension(); ++k) {
    out.push_back(i.shifted(k, -1));
    out.push_back(i.shifted(k, +1));
  }
  return out;
}

template <class Fn>
void for_each_neighbor(const Site& i, Fn&& fn) {
  for (int k = 0; k < i.dimension(); ++k) {
    fn(i.shifted(k, -1));
    fn(i.shifted(k, +1));
  }
}

// All sites of the box, streamed in row-major order (last coordinate
// fastest) so downstream output files are reproducible.
template <class Fn>
void for_each_box_site(const BoxRegion& b, Fn&& fn) {
  const int d = b.dimension();
  const std::int32_t n = b.radius();
  Site cur = b.center();
  for (int k = 0; k < d; ++k) cur[k] = b.center()[k] - n;
  while (true) {
    fn(cur);
    int k = d - 1;
    while (k >= 0) {
      if (cur[k] < b.center()[k] + n) {
        ++cur[k];
        break;
      }
      cur[k] = b.center()[k] - n;
      --k;
    }
    if (k < 0) break;
  }
}

inline std::vector<Site> box_sites(const BoxRegion& b) {
  std::vector<Site> out;
  out.reserve(static_cast<std::size_t>(b.site_count()));
  for_each_box_site(b, [&](const Site& s) { out.push_back(s); });
  return out;
}

// Sites of the box having a nearest neighbor outside the box, in row-major
// order. A radius-0 box is its own boundary.
inline std::vector<Site> boundary_sites(const BoxRegion& b) {
  std::vector<Site> out;
  out.reserve(static_cast<std::size_t>(b.boundary_count()));
  for_each_box_site(b, [&](const Site& s) {
    for (int k = 0; k < b.dimension(); ++k) {
      const std::int64_t delta = static_cast<std::int64_t>(s[k]) - b.center()[k];
      if (delta == b.radius() || -delta == b.radius()) {
        out.push_back(s);
        return;
      }
    }
  });
  return out;
}

}  // namespace parking
