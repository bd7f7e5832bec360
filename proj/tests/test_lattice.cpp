#include <algorithm>
#include <set>

#include "doctest.h"
#include "parking/lattice.hpp"

using namespace parking;

TEST_CASE("neighbors are the 2d sites at distance 1") {
  SUBCASE("d=1") {
    const auto n = neighbors(Site{0});
    REQUIRE(n.size() == 2);
    CHECK(n[0] == Site{-1});
    CHECK(n[1] == Site{1});
  }
  SUBCASE("d=2") {
    const auto n = neighbors(Site{0, 0});
    REQUIRE(n.size() == 4);
    const std::set<Site> got(n.begin(), n.end());
    const std::set<Site> want{Site{-1, 0}, Site{1, 0}, Site{0, -1}, Site{0, 1}};
    CHECK(got == want);
  }
  SUBCASE("d=3 count") {
    CHECK(neighbors(Site{4, -2, 9}).size() == 6);
  }
}

TEST_CASE("neighbor relation is symmetric") {
  const Site i{3, -1, 2};
  for (const Site& j : neighbors(i)) {
    const auto back = neighbors(j);
    CHECK(std::find(back.begin(), back.end(), i) != back.end());
  }
}

TEST_CASE("box enumeration matches the closed-form counts") {
  SUBCASE("d=2 n=3 has 49 sites") {
    CHECK(box_sites(BoxRegion::centered(2, 3)).size() == 49);
  }
  SUBCASE("d=1 n=0 is just the center") {
    const auto sites = box_sites(BoxRegion(Site{7}, 0));
    REQUIRE(sites.size() == 1);
    CHECK(sites[0] == Site{7});
  }
  SUBCASE("d=3 n=2 has 125 sites") {
    CHECK(box_sites(BoxRegion::centered(3, 2)).size() == 125);
  }
}

TEST_CASE("boundary enumeration matches the shell counts") {
  SUBCASE("d=2 n=2 shell has 16 sites") {
    CHECK(boundary_sites(BoxRegion::centered(2, 2)).size() == 16);
  }
  SUBCASE("d=1 n=5 endpoints") {
    const auto shell = boundary_sites(BoxRegion(Site{10}, 5));
    REQUIRE(shell.size() == 2);
    CHECK(shell[0] == Site{5});
    CHECK(shell[1] == Site{15});
  }
  SUBCASE("singleton is its own boundary") {
    CHECK(boundary_sites(BoxRegion::centered(2, 0)).size() == 1);
  }
}

TEST_CASE("counts agree with exhaustive enumeration for d<=3, n<=6") {
  for (int d = 1; d <= 3; ++d) {
    for (int n = 0; n <= 6; ++n) {
      const BoxRegion box = BoxRegion::centered(d, n);
      const auto sites = box_sites(box);
      CHECK(static_cast<std::int64_t>(sites.size()) == box.site_count());

      // every enumerated site is unique and inside
      std::set<Site> unique(sites.begin(), sites.end());
      CHECK(unique.size() == sites.size());
      for (const Site& s : sites) CHECK(box.contains(s));

      // brute-force boundary: a site with a neighbor outside the box
      std::int64_t brute_boundary = 0;
      for (const Site& s : sites) {
        bool on_edge = false;
        for (const Site& j : neighbors(s))
          if (!box.contains(j)) on_edge = true;
        brute_boundary += on_edge;
      }
      CHECK(brute_boundary == box.boundary_count());
      CHECK(static_cast<std::int64_t>(boundary_sites(box).size()) ==
            box.boundary_count());
    }
  }
}

TEST_CASE("boxes are nested") {
  for (int n = 0; n <= 4; ++n) {
    const auto inner = box_sites(BoxRegion::centered(2, n));
    const BoxRegion outer = BoxRegion::centered(2, n + 1);
    for (const Site& s : inner) CHECK(outer.contains(s));
  }
}

TEST_CASE("sites stream in row-major order") {
  const auto sites = box_sites(BoxRegion::centered(2, 1));
  REQUIRE(sites.size() == 9);
  CHECK(sites[0] == Site{-1, -1});
  CHECK(sites[1] == Site{-1, 0});
  CHECK(sites[2] == Site{-1, 1});
  CHECK(sites[3] == Site{0, -1});
  CHECK(sites[8] == Site{1, 1});
  CHECK(std::is_sorted(sites.begin(), sites.end()));
}
