#include <cmath>
#include <random>

#include <doctest.h>

#include "oracles.hpp"
#include "raa/errors.hpp"
#include "raa/geo.hpp"

using namespace raa;

TEST_CASE("frame scale factors") {
  const double pi = std::acos(-1.0);
  const LocalFrame eq = make_frame({0.0, 0.0});
  CHECK(eq.meters_per_deg_lat() == doctest::Approx(111319.49).epsilon(1e-7));
  CHECK(eq.meters_per_deg_lon() == doctest::Approx(eq.meters_per_deg_lat()));

  const LocalFrame sixty = make_frame({60.0, 0.0});
  CHECK(sixty.meters_per_deg_lon() == doctest::Approx(sixty.meters_per_deg_lat() / 2).epsilon(1e-12));

  const LocalFrame beijing = make_frame({39.9, 116.4});
  const double expected = pi * 6378137.0 * std::cos(39.9 * pi / 180.0) / 180.0;
  CHECK(beijing.meters_per_deg_lon() == doctest::Approx(expected).epsilon(1e-12));
  CHECK(beijing.meters_per_deg_lon() == doctest::Approx(85393).epsilon(1e-4));
}

TEST_CASE("frame rejects near-polar origins and invalid coordinates") {
  CHECK_THROWS_AS(make_frame({89.0, 0.0}), InvalidArgument);
  CHECK_THROWS_AS(make_frame({-89.5, 10.0}), InvalidArgument);
  CHECK_NOTHROW(make_frame({88.9, 0.0}));
  CHECK_THROWS_AS(make_frame({0.0, 181.0}), InvalidArgument);
  CHECK_THROWS_AS(validate(GeoPoint{91.0, 0.0}), InvalidArgument);
  CHECK_THROWS_AS(validate(GeoPoint{std::nan(""), 0.0}), InvalidArgument);
}

TEST_CASE("to_local and to_geo on hand-checked points") {
  const LocalFrame f = make_frame({0.0, 0.0});
  const LocalPoint o = f.to_local({0.0, 0.0});
  CHECK(o.x == 0.0);
  CHECK(o.y == 0.0);
  const LocalPoint q = f.to_local({0.0, 0.001});
  CHECK(q.x == doctest::Approx(111.319).epsilon(1e-5));
  CHECK(q.y == 0.0);
  const GeoPoint g = f.to_geo({111.31949, 0.0});
  CHECK(g.lon == doctest::Approx(0.001).epsilon(1e-6));
  CHECK(g.lat == 0.0);
  CHECK(f.to_geo({0.0, 0.0}) == GeoPoint{0.0, 0.0});
}

TEST_CASE("to_local rejects points beyond the distortion bound") {
  const LocalFrame f = make_frame({39.9, 116.4});
  CHECK_THROWS_AS(f.to_local({39.9, 116.6}), OutOfRange);
  CHECK_NOTHROW(f.to_local({39.95, 116.45}));
}

TEST_CASE("round trip within 2 km stays below a nanometer") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> off(-2000.0 / std::sqrt(2.0), 2000.0 / std::sqrt(2.0));
  const LocalFrame f = make_frame({39.9, 116.4});
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const LocalPoint q{off(rng), off(rng)};
    const GeoPoint p = f.to_geo(q);
    const LocalPoint back = f.to_local(f.to_geo(f.to_local(p)));
    worst = std::max(worst, distance(back, f.to_local(p)));
    const GeoPoint again = f.to_geo(f.to_local(p));
    worst = std::max(worst, oracle::haversine(p.lat, p.lon, again.lat, again.lon));
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("local distances match haversine within 0.1 percent up to 1 km") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> pos(-300.0, 300.0);
  std::uniform_real_distribution<double> ang(0.0, 2 * std::acos(-1.0));
  std::uniform_real_distribution<double> len(1.0, 1000.0);
  const LocalFrame f = make_frame({39.9, 116.4});
  for (int i = 0; i < 500; ++i) {
    const LocalPoint a{pos(rng), pos(rng)};
    const double t = ang(rng);
    const double l = len(rng);
    const LocalPoint b{a.x + l * std::cos(t), a.y + l * std::sin(t)};
    const GeoPoint ga = f.to_geo(a);
    const GeoPoint gb = f.to_geo(b);
    const double h = oracle::haversine(ga.lat, ga.lon, gb.lat, gb.lon);
    CHECK(std::abs(distance(a, b) - h) / h < 1e-3);
    CHECK(haversine_distance(ga, gb) == doctest::Approx(h).epsilon(1e-12));
  }
}

TEST_CASE("distance under a moved frame origin") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> d(-0.002, 0.002);
  const GeoPoint base{39.9, 116.4};
  for (int i = 0; i < 200; ++i) {
    const GeoPoint a{base.lat + d(rng), base.lon + d(rng)};
    const GeoPoint b{base.lat + d(rng), base.lon + d(rng)};
    const LocalFrame f1 = make_frame(base);
    const LocalFrame f2 = make_frame({base.lat + d(rng), base.lon});
    const double d1 = distance(f1.to_local(a), f1.to_local(b));
    const double d2 = distance(f2.to_local(a), f2.to_local(b));
    // Frames sharing an origin latitude agree exactly; a latitude shift
    // changes the longitude scale slightly.
    const LocalFrame f3 = make_frame({base.lat, base.lon + d(rng)});
    CHECK(std::abs(distance(f3.to_local(a), f3.to_local(b)) - d1) < 1e-9);
    CHECK(std::abs(d2 - d1) / d1 < 1e-4);
  }
}

TEST_CASE("centroid") {
  const GeoPoint c = centroid({{1.0, 2.0}, {3.0, 6.0}});
  CHECK(c.lat == 2.0);
  CHECK(c.lon == 4.0);
  CHECK_THROWS_AS(centroid({}), InvalidArgument);
}
