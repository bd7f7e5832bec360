#include "parking/field.hpp"

namespace parking {

namespace field_detail {
bool g_selftest_corruption = false;
}  // namespace field_detail

std::string Site::to_string() const {
  std::string out = "(";
  for (int k = 0; k < dim_; ++k) {
    if (k) out += ",";
    out += std::to_string(coords_[k]);
  }
  out += ")";
  return out;
}

std::size_t SiteHash::operator()(const Site& s) const noexcept {
  std::uint64_t h = field_detail::absorb(0, static_cast<std::uint64_t>(s.dimension()));
  for (int k = 0; k < s.dimension(); ++k)
    h = field_detail::absorb(h,
                             static_cast<std::uint64_t>(static_cast<std::uint32_t>(s[k])));
  return static_cast<std::size_t>(h);
}

}  // namespace parking
