#include <doctest.h>

#include <cmath>

#include "spiraldim/holder.hpp"

using namespace spiraldim;

namespace {

void check12(double got, double expected) {
  CHECK(std::abs(got - expected) <= 1e-12);
}

// raw formula values, recomputed independently of the library's clamping
double box_raw(double p, double q, double r, double s) {
  if (p <= 1.0) return (2 + q - p) * (1 + s) / ((2 + s - r) * (1 + q));
  return (1 + s) / (2 + s - r);
}

double profile_raw(double p, double q, double r, double s) {
  return (p + q + r + s - p * r + q * s) / ((2 + s - r) * (p + q));
}

}  // namespace

TEST_CASE("box-dimension bound") {
  check12(box_dim_bound({{0.4, 0.7}, {0.2, 0.3}}), 2.99 / 3.57);
  check12(box_dim_bound({{1.5, 2.0}, {0.5, 0.5}}), 1.5 / 2.0);
  check12(box_dim_bound({{0.4, 0.7}, {0.4, 0.7}}), 1.0);
  CHECK_THROWS_AS(box_dim_bound({{0.4, 0.7}, {1.2, 1.5}}), std::domain_error);
}

TEST_CASE("profile bound") {
  check12(profile_bound({{0.5, 0.5}, {0.25, 0.25}}), 0.75);
  check12(profile_bound({{0.4, 0.7}, {0.2, 0.3}}), 1.73 / 2.31);
  CHECK(profile_bound({{0.4, 0.7}, {0.2, 0.3}}) <
        box_dim_bound({{0.4, 0.7}, {0.2, 0.3}}));
  CHECK_THROWS_AS(profile_bound({{1.5, 2.0}, {0.5, 0.5}}), std::domain_error);
}

TEST_CASE("hyperbolic special case") {
  check12(hyperbolic_bound(0.5, 0.25), 0.75);
  check12(hyperbolic_bound(0.8, 0.2), 0.625);
  CHECK(std::abs(hyperbolic_bound(1.0, 1.0 - 1e-9) - 1.0) <= 1e-8);
  CHECK_THROWS_AS(hyperbolic_bound(0.5, 0.5), std::domain_error);
  CHECK_THROWS_AS(hyperbolic_bound(1.2, 0.5), std::domain_error);
  // exact diagonal identity with the profile bound
  for (double p : {0.3, 0.5, 0.9})
    for (double q : {0.1, 0.25}) {
      if (!(p > q)) continue;
      CHECK(std::abs(hyperbolic_bound(p, q) -
                     profile_bound({{p, p}, {q, q}})) <= 1e-14);
    }
}

TEST_CASE("best bound aggregation") {
  const HolderBoundReport a = best_bound({{0.4, 0.7}, {0.2, 0.3}});
  CHECK(a.binding == "profile");
  check12(a.best, 1.73 / 2.31);
  REQUIRE(a.box_bound.has_value());
  check12(*a.box_bound, 2.99 / 3.57);

  const HolderBoundReport b = best_bound({{0.1, 0.1}, {0.9, 0.9}});
  CHECK(b.binding == "none");
  CHECK(b.best == 1.0);
  CHECK(b.box_clamped);
  check12(box_raw(0.1, 0.1, 0.9, 0.9), (2.0 * 1.9) / (2.0 * 1.1));

  const HolderBoundReport c = best_bound({{1.5, 2.0}, {0.5, 0.5}});
  CHECK(c.binding == "box");
  check12(c.best, 0.75);
  CHECK_FALSE(c.profile_bound.has_value());
}

TEST_CASE("identity pairs give exactly 1") {
  for (double p : {0.2, 0.6, 1.0})
    for (double q : {0.6, 1.0, 1.4}) {
      if (q < p) continue;
      CHECK(box_dim_bound({{p, q}, {p, q}}) == 1.0);
      CHECK(std::abs(profile_bound({{p, q}, {p, q}}) - 1.0) <= 1e-12);
    }
}

TEST_CASE("profile dominance and 1/2 floor over the dense grid") {
  // p,q,r,s in {0.05, 0.10, ..., 0.95} with p <= q, r <= s. The profile
  // bound beats the box bound exactly where the box bound is informative
  // (below 1, i.e. the target is boxier than the source); where the box
  // bound is vacuous both formulas are
  int checked = 0, informative = 0;
  for (int pi = 1; pi <= 19; ++pi)
    for (int qi = pi; qi <= 19; ++qi)
      for (int ri = 1; ri <= 19; ++ri)
        for (int si = ri; si <= 19; ++si) {
          const double p = pi * 0.05, q = qi * 0.05;
          const double r = ri * 0.05, s = si * 0.05;
          const double prof = profile_raw(p, q, r, s);
          const double box = box_raw(p, q, r, s);
          CHECK(prof > 0.5);
          if (box < 1.0 - 1e-9) {
            CHECK(prof < box);
            ++informative;
          } else {
            // equal-dimension boundary or vacuous regime
            CHECK(prof >= 1.0 - 1e-9);
          }
          ++checked;
        }
  CHECK(checked == 190 * 190);
  CHECK(informative > 10000);
}

TEST_CASE("clamped values match the raw formulas below 1") {
  for (double p : {0.2, 0.5, 0.8})
    for (double q : {0.5, 0.8})
      for (double r : {0.1, 0.4})
        for (double s : {0.4, 0.9}) {
          if (q < p || s < r) continue;
          const DeformationPair pair{{p, q}, {r, s}};
          check12(box_dim_bound(pair), std::min(1.0, box_raw(p, q, r, s)));
          check12(profile_bound(pair),
                  std::min(1.0, profile_raw(p, q, r, s)));
        }
}

TEST_CASE("bounds are monotone along the grid directions") {
  // nondecreasing in r (sparser target), nonincreasing in p (sparser source)
  for (int qi = 4; qi <= 19; qi += 5)
    for (int si = 4; si <= 19; si += 5) {
      const double q = qi * 0.05, s = si * 0.05;
      for (int ri = 2; ri <= si; ++ri) {
        const double r0 = (ri - 1) * 0.05, r1 = ri * 0.05;
        for (double p : {0.2, 0.6}) {
          if (q < p) continue;
          CHECK(box_raw(p, q, r1, s) >= box_raw(p, q, r0, s) - 1e-14);
          CHECK(profile_raw(p, q, r1, s) >= profile_raw(p, q, r0, s) - 1e-14);
        }
      }
      for (int pi = 2; pi <= qi; ++pi) {
        const double p0 = (pi - 1) * 0.05, p1 = pi * 0.05;
        for (double r : {0.1, 0.3}) {
          if (s < r) continue;
          CHECK(box_raw(p1, q, r, s) <= box_raw(p0, q, r, s) + 1e-14);
          CHECK(profile_raw(p1, q, r, s) <=
                profile_raw(p0, q, r, s) + 1e-14);
        }
      }
    }
}
