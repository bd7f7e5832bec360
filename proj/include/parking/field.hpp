#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>

namespace parking {

// A lattice site in Z^d, d in [1, kMaxDimension]. Coordinates are exact
// 32-bit integers; the dimension is a runtime property so one binary can
// serve d = 1, 2, 3, ...
class Site {
 public:
  static constexpr int kMaxDimension = 8;

  Site() : dim_(1) { coords_.fill(0); }

  explicit Site(std::span<const std::int32_t> coords) {
    if (coords.empty() || coords.size() > kMaxDimension)
      throw std::invalid_argument("Site: dimension must be in [1, " +
                                  std::to_string(kMaxDimension) + "]");
    dim_ = static_cast<int>(coords.size());
    coords_.fill(0);
    for (int k = 0; k < dim_; ++k) coords_[k] = coords[k];
  }

  Site(std::initializer_list<std::int32_t> coords)
      : Site(std::span<const std::int32_t>(coords.begin(), coords.size())) {}

  static Site origin(int dimension) {
    if (dimension < 1 || dimension > kMaxDimension)
      throw std::invalid_argument("Site: dimension must be in [1, " +
                                  std::to_string(kMaxDimension) + "]");
    Site s;
    s.dim_ = dimension;
    return s;
  }

  int dimension() const { return dim_; }
  std::int32_t operator[](int k) const { return coords_[k]; }
  std::int32_t& operator[](int k) { return coords_[k]; }

  std::span<const std::int32_t> coords() const {
    return {coords_.data(), static_cast<std::size_t>(dim_)};
  }

  // Site displaced by delta along axis k.
  Site shifted(int axis, std::int32_t delta) const {
    Site s = *this;
    s.coords_[axis] += delta;
    return s;
  }

  friend bool operator==(const Site& a, const Site& b) {
    if (a.dim_ != b.dim_) return false;
    for (int k = 0; k < a.dim_; ++k)
      if (a.coords_[k] != b.coords_[k]) return false;
    return true;
  }
  friend bool operator!=(const Site& a, const Site& b) { return !(a == b); }

  // Lexicographic order; used as the deterministic tie-break everywhere.
  friend bool operator<(const Site& a, const Site& b) {
    if (a.dim_ != b.dim_) return a.dim_ < b.dim_;
    for (int k = 0; k < a.dim_; ++k)
      if (a.coords_[k] != b.coords_[k]) return a.coords_[k] < b.coords_[k];
    return false;
  }

  std::string to_string() const;

 private:
  std::array<std::int32_t, kMaxDimension> coords_;
  int dim_;
};

struct SiteHash {
  std::size_t operator()(const Site& s) const noexcept;
};

// Seed of the deterministic field. Same seed, same field, bit for bit.
struct Seed {
  std::uint64_t value = 0;
};

namespace field_detail {

// splitmix64 finalizer; bijective on 64-bit words.
inline std::uint64_t avalanche(std::uint64_t z) noexcept {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

// One absorption round. The input is spread by the golden-ratio constant so
// consecutive integers (sequential coordinates, sequential replicate seeds)
// enter the avalanche with the same step splitmix64 uses for its counter;
// a step of 1 is its known weak case.
inline std::uint64_t absorb(std::uint64_t w, std::uint64_t x) noexcept {
  return avalanche(w + (x + 1) * kGolden);
}

// Selftest-only corruption switch. When set, marks are rigged so that the
// even sublattice always wins, which wrecks every density statistic. Set
// only before concurrent use (CLI selftest negative control).
extern bool g_selftest_corruption;

}  // namespace field_detail

// Deterministic i.i.d.-quality uniform marks on (0,1), one per site of Z^d,
// addressable in O(1): the mark is a pure function of (seed, coordinates).
// This is the coupling substrate shared by every simulator; two consumers
// holding equal fields observe identical marks at every site.
class UniformField {
 public:
  UniformField(Seed seed, int dimension) : seed_(seed), dim_(dimension) {
    if (dimension < 1 || dimension > Site::kMaxDimension)
      throw std::invalid_argument("UniformField: dimension must be in [1, " +
                                  std::to_string(Site::kMaxDimension) + "]");
  }

  Seed seed() const { return seed_; }
  int dimension() const { return dim_; }

  // Counter-based word: seed and coordinates absorbed through the avalanche
  // one at a time, so any change in any input diffuses over all 64 bits.
  std::uint64_t word_at(const Site& i) const {
    check_dimension(i);
    std::uint64_t w = field_detail::absorb(0, seed_.value);
    for (int k = 0; k < dim_; ++k)
      w = field_detail::absorb(
          w, static_cast<std::uint64_t>(static_cast<std::uint32_t>(i[k])));
    return w;
  }

  // Uniform mark in the open interval (0,1). The top 53 bits of the word map
  // to (k + 1/2) * 2^-53, so the smallest value is 2^-54 and the largest
  // 1 - 2^-54; both endpoints are unreachable in double precision.
  double uniform_at(const Site& i) const {
    const std::uint64_t w = word_at(i);
    double u = (static_cast<double>(w >> 11) + 0.5) * 0x1.0p-53;
    if (field_detail::g_selftest_corruption) [[unlikely]]
      u = corrupted(i, u);
    return u;
  }

  friend bool operator==(const UniformField& a, const UniformField& b) {
    return a.seed_.value == b.seed_.value && a.dim_ == b.dim_;
  }

 private:
  void check_dimension(const Site& i) const {
    if (i.dimension() != dim_)
      throw std::invalid_argument("UniformField: site dimension " +
                                  std::to_string(i.dimension()) +
                                  " does not match field dimension " +
                                  std::to_string(dim_));
  }

  static double corrupted(const Site& i, double u) {
    std::int64_t parity = 0;
    for (int k = 0; k < i.dimension(); ++k) parity += i[k];
    return (parity & 1) ? 0.5 + u / 2 : u / 2;
  }

  Seed seed_;
  int dim_;
};

// Strict total order on distinct sites: by mark, ties (possible at finite
// precision, probability ~2^-53 per pair) by lexicographic coordinates.
inline bool mark_less(double ua, double ub, const Site& a, const Site& b) {
  if (ua != ub) return ua < ub;
  return a < b;
}

inline bool rank_less(const UniformField& field, const Site& a, const Site& b) {
  if (a == b) throw std::invalid_argument("rank_less: sites must be distinct");
  return mark_less(field.uniform_at(a), field.uniform_at(b), a, b);
}

}  // namespace parking
