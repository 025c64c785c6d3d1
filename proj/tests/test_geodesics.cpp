#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "hypmet/geodesics.hpp"
#include "support.hpp"

using namespace hypmet;
using hypmet::testing::interior_point;
using hypmet::testing::l_shape;

namespace {

// Circumcenter of three planar points; independent route to the arc's
// circle for the orthogonality checks.
Vec circumcenter(const Vec& a, const Vec& b, const Vec& c) {
  double d = 2.0 * (a.x() * (b.y() - c.y()) + b.x() * (c.y() - a.y()) + c.x() * (a.y() - b.y()));
  double ux = (norm2(a) * (b.y() - c.y()) + norm2(b) * (c.y() - a.y()) + norm2(c) * (a.y() - b.y())) / d;
  double uy = (norm2(a) * (c.x() - b.x()) + norm2(b) * (a.x() - c.x()) + norm2(c) * (b.x() - a.x())) / d;
  return {ux, uy};
}

auto punctured_density = [](const Vec& p) { return 1.0 / norm(p); };

}  // namespace

TEST(WeightedLength, VerticalSegmentLogWeight) {
  Polyline seg = resample(Polyline({Vec{0.0, 1.0}, Vec{0.0, 2.0}}), 4);
  double len = weighted_length(seg, [](const Vec& p) { return 1.0 / p.y(); }, 8);
  EXPECT_NEAR(len, std::log(2.0), 1e-10);
  // Single segment at higher order also reaches the target.
  double len16 = weighted_length(Polyline({Vec{0.0, 1.0}, Vec{0.0, 2.0}}),
                                 [](const Vec& p) { return 1.0 / p.y(); }, 16);
  EXPECT_NEAR(len16, std::log(2.0), 1e-10);
}

TEST(WeightedLength, RayReciprocalWeight) {
  Rng rng(51);
  for (int i = 0; i < 50; ++i) {
    double a = rng.uniform(0.2, 1.0);
    double b = rng.uniform(1.0, 5.0);
    Polyline seg = resample(Polyline({Vec{a, 0.0}, Vec{b, 0.0}}), 8);
    double len = weighted_length(seg, [](const Vec& p) { return 1.0 / p.x(); }, 8);
    EXPECT_NEAR(len, std::fabs(std::log(a / b)), 1e-10);
  }
}

TEST(WeightedLength, UnitWeightIsEuclideanLength) {
  Rng rng(52);
  std::vector<Vec> vs;
  for (int i = 0; i < 10; ++i) vs.push_back({rng.uniform(-3., 3.), rng.uniform(-3., 3.)});
  Polyline p(vs);
  double expect = euclidean_length(p);
  double got = weighted_length(p, [](const Vec&) { return 1.0; }, 8);
  EXPECT_NEAR(got, expect, 1e-13 * expect);
}

TEST(WeightedLength, AdditiveUnderConcatenation) {
  Rng rng(53);
  std::vector<Vec> vs;
  for (int i = 0; i < 8; ++i) vs.push_back({rng.uniform(1.0, 3.0), rng.uniform(1.0, 3.0)});
  Polyline whole(vs);
  std::vector<Vec> first(vs.begin(), vs.begin() + 4);
  std::vector<Vec> second(vs.begin() + 3, vs.end());
  double w = weighted_length(whole, punctured_density, 8);
  double parts = weighted_length(Polyline(first), punctured_density, 8) +
                 weighted_length(Polyline(second), punctured_density, 8);
  EXPECT_NEAR(w, parts, 1e-12 * w);
}

TEST(WeightedLength, PoisonedOutsideDomain) {
  Domain ball = Domain::unit_ball(2);
  auto w = quasihyperbolic_density(ball);
  Polyline exits({Vec{0.0, 0.0}, Vec{2.0, 0.0}});
  EXPECT_TRUE(std::isinf(weighted_length(exits, w, 8)));
}

TEST(SpiralGeodesic, RadialDegeneratesToSegmentOfLengthOne) {
  Polyline sp = spiral_geodesic(Vec{1.0, 0.0}, Vec{std::exp(1.0), 0.0}, 65);
  double len = weighted_length(sp, punctured_density, 8);
  EXPECT_NEAR(len, 1.0, 1e-9);
  EXPECT_NEAR(cross2(sp.vertices[10], Vec{1.0, 0.0}), 0.0, 1e-15);
}

TEST(SpiralGeodesic, QuarterTurnLength) {
  Polyline sp = spiral_geodesic(Vec{1.0, 0.0}, Vec{0.0, 1.0}, 10001);
  double len = weighted_length(sp, punctured_density, 8);
  EXPECT_NEAR(len, std::numbers::pi / 2.0, 1e-6);
}

TEST(SpiralGeodesic, EndpointsExact) {
  Rng rng(54);
  for (int i = 0; i < 20; ++i) {
    Vec x{rng.uniform(-2., 2.), rng.uniform(-2., 2.)};
    Vec y{rng.uniform(-2., 2.), rng.uniform(-2., 2.)};
    if (norm(x) < 0.1 || norm(y) < 0.1 || x == y) continue;
    Polyline sp = spiral_geodesic(x, y, 33);
    EXPECT_TRUE(sp.front() == x);
    EXPECT_TRUE(sp.back() == y);
  }
}

TEST(SpiralGeodesic, LengthDecreasesMonotonicallyTowardClosedForm) {
  Rng rng(55);
  for (int i = 0; i < 10; ++i) {
    Vec x{rng.uniform(-2., 2.), rng.uniform(-2., 2.)};
    Vec y{rng.uniform(-2., 2.), rng.uniform(-2., 2.)};
    if (norm(x) < 0.2 || norm(y) < 0.2 || angle_between(x, y) < 1e-3) continue;
    double target = quasihyperbolic_punctured(x, y);
    double prev = std::numeric_limits<double>::infinity();
    for (int samples : {65, 129, 257, 513, 1025}) {
      double len = weighted_length(spiral_geodesic(x, y, samples), punctured_density, 8);
      EXPECT_GE(len, target - 1e-12);
      EXPECT_LE(len, prev + 1e-12);
      prev = len;
    }
    EXPECT_NEAR(prev, target, 1e-6 * (1.0 + target));
  }
}

TEST(SpiralGeodesic, AntipodalPairHasWellDefinedLength) {
  Vec x{1.0, 0.0}, y{-2.0, 0.0};
  Polyline sp = spiral_geodesic(x, y, 4001);
  double len = weighted_length(sp, punctured_density, 8);
  EXPECT_NEAR(len, quasihyperbolic_punctured(x, y), 1e-6);
}

TEST(SpiralGeodesic, ThreeDimensionalPlaneEmbedding) {
  Vec x{1.0, 0.0, 0.5}, y{0.0, 1.2, -0.3};
  Polyline sp = spiral_geodesic(x, y, 2001);
  double len = weighted_length(sp, [](const Vec& p) { return 1.0 / norm(p); }, 8);
  EXPECT_NEAR(len, quasihyperbolic_punctured(x, y), 1e-5);
}

TEST(BallGeodesic, RadialCaseIsDiameterSegment) {
  Vec y{0.7, 0.0};
  BallGeodesic geo = ball_geodesic(Vec{0.0, 0.0}, y, 257);
  double len = weighted_length(geo.path, ball_hyperbolic_density(), 8);
  EXPECT_NEAR(len, std::log((1.0 + 0.7) / (1.0 - 0.7)), 1e-10);
  EXPECT_NEAR(dist(geo.ideal_y, Vec{1.0, 0.0}), 0.0, 1e-12);
  EXPECT_NEAR(dist(geo.ideal_x, Vec{-1.0, 0.0}), 0.0, 1e-12);
}

TEST(BallGeodesic, IdealEndpointsOnSphereAndOrthogonal) {
  Rng rng(56);
  for (int i = 0; i < 100; ++i) {
    Vec x = rng.in_ball(2) * 0.95;
    Vec y = rng.in_ball(2) * 0.95;
    if (dist(x, y) < 1e-3) continue;
    BallGeodesic geo = ball_geodesic(x, y, 9);
    EXPECT_NEAR(norm(geo.ideal_x), 1.0, 1e-10);
    EXPECT_NEAR(norm(geo.ideal_y), 1.0, 1e-10);
    if (std::fabs(cross2(x, y)) < 1e-6) continue;  // chord case: no circle
    // Orthogonality at the sphere: the circle through x, y and an ideal
    // endpoint p satisfies p . c = 1 for its circumcenter c.
    Vec c = circumcenter(geo.ideal_x, x, y);
    EXPECT_NEAR(dot(geo.ideal_x, c), 1.0, 1e-8);
    Vec c2 = circumcenter(geo.ideal_y, x, y);
    EXPECT_NEAR(dot(geo.ideal_y, c2), 1.0, 1e-8);
  }
}

TEST(BallGeodesic, WeightedLengthMatchesClosedForm) {
  Rng rng(57);
  for (int i = 0; i < 100; ++i) {
    Vec x = rng.in_ball(2) * 0.9;
    Vec y = rng.in_ball(2) * 0.9;
    if (dist(x, y) < 1e-3) continue;
    BallGeodesic geo = ball_geodesic(x, y, 10001);
    double len = weighted_length(geo.path, ball_hyperbolic_density(), 8);
    EXPECT_NEAR(len, rho_ball(x, y), 1e-6);
  }
}

TEST(LogChart, BasicsAndRoundTrip) {
  Vec c = log_chart(Vec{1.0, 0.0});
  EXPECT_DOUBLE_EQ(c.x(), 0.0);
  EXPECT_DOUBLE_EQ(c.y(), 0.0);
  EXPECT_NEAR(chart_distance(Vec{0.0, 0.0}, Vec{0.0, std::numbers::pi / 2.0}),
              std::numbers::pi / 2.0, 1e-15);
  EXPECT_NEAR(chart_distance(Vec{0.0, 0.0}, Vec{0.0, std::numbers::pi / 2.0}),
              quasihyperbolic_punctured(Vec{1.0, 0.0}, Vec{0.0, 1.0}), 1e-12);
  Rng rng(58);
  for (int i = 0; i < 1000; ++i) {
    Vec z{rng.uniform(-4., 4.), rng.uniform(-4., 4.)};
    if (norm(z) < 1e-3) continue;
    Vec back = log_chart_inverse(log_chart(z));
    EXPECT_NEAR(dist(back, z), 0.0, 1e-12 * (1.0 + norm(z)));
  }
}

TEST(LogChart, DistanceMatchesPuncturedFormula) {
  Rng rng(59);
  for (int i = 0; i < 1000; ++i) {
    Vec x{rng.uniform(-4., 4.), rng.uniform(-4., 4.)};
    Vec y{rng.uniform(-4., 4.), rng.uniform(-4., 4.)};
    if (norm(x) < 0.05 || norm(y) < 0.05) continue;
    EXPECT_NEAR(chart_distance(log_chart(x), log_chart(y)), quasihyperbolic_punctured(x, y),
                1e-12);
  }
}

TEST(QhAngle, OrthogonalAndCollinearCases) {
  EXPECT_NEAR(qh_angle(Vec{1.0, 0.0}, Vec{std::exp(1.0), 0.0}, Vec{0.0, 1.0}),
              std::numbers::pi / 2.0, 1e-12);
  // Chart-collinear through z on opposite sides.
  EXPECT_NEAR(qh_angle(Vec{1.0, 0.0}, Vec{2.0, 0.0}, Vec{0.5, 0.0}), std::numbers::pi, 1e-12);
  EXPECT_THROW(qh_angle(Vec{1.0, 0.0}, Vec{1.0, 0.0}, Vec{0.0, 1.0}), std::domain_error);
}

TEST(NumericGeodesic, BallRadialCase) {
  Domain ball = Domain::unit_ball(2);
  GeodesicResult r = numeric_geodesic(ball, Vec{0.0, 0.0}, Vec{0.9, 0.0}, 512);
  double target = std::log(10.0);
  EXPECT_NEAR(r.upper, target, 0.005 * target);
  EXPECT_GE(r.upper, r.lower - 1e-12);
  EXPECT_GE(r.upper, target - 1e-9);  // admissible paths never beat the infimum
  EXPECT_LE(r.lower, target + 1e-12);
}

TEST(NumericGeodesic, PuncturedQuarterTurn) {
  Domain g = Domain::punctured_space(2);
  GeodesicResult r = numeric_geodesic(g, Vec{1.0, 0.0}, Vec{0.0, 1.0}, 512);
  double target = std::numbers::pi / 2.0;
  EXPECT_NEAR(r.upper, target, 0.005 * target);
  EXPECT_GE(r.upper, target - 1e-9);
}

TEST(NumericGeodesic, HalfPlaneVerticalPair) {
  Domain g = Domain::half_space(2);
  GeodesicResult r = numeric_geodesic(g, Vec{0.0, 1.0}, Vec{0.0, 2.0}, 256);
  double target = std::log(2.0);
  EXPECT_NEAR(r.upper, target, 0.005 * target);
  EXPECT_GE(r.upper, target - 1e-9);
}

TEST(NumericGeodesic, BracketTightensWithResolution) {
  Domain g = Domain::punctured_space(2);
  Vec x{1.0, 0.2}, y{-0.7, 0.9};
  double target = quasihyperbolic_punctured(x, y);
  double prev_width = std::numeric_limits<double>::infinity();
  for (int res : {65, 129, 257}) {
    GeodesicResult r = numeric_geodesic(g, x, y, res);
    EXPECT_GE(r.upper, target - 1e-9);
    EXPECT_LE(r.lower, target + 1e-12);
    double width = r.upper - r.lower;
    EXPECT_LE(width, prev_width + 1e-9);
    prev_width = width;
  }
}

TEST(NumericGeodesic, DisconnectedEndpointsThrow) {
  // A pinched polygon whose two lobes only touch through a corridor thinner
  // than the grid step.
  Domain pinched = Domain::polygon({{0.0, 0.0},
                                    {1.0, 0.0},
                                    {1.0, 0.499},
                                    {2.0, 0.499},
                                    {2.0, 0.0},
                                    {3.0, 0.0},
                                    {3.0, 1.0},
                                    {2.0, 1.0},
                                    {2.0, 0.501},
                                    {1.0, 0.501},
                                    {1.0, 1.0},
                                    {0.0, 1.0}});
  EXPECT_THROW(numeric_geodesic(pinched, Vec{0.5, 0.25}, Vec{2.5, 0.25}, 64),
               std::runtime_error);
}

TEST(Quasihyperbolic, ClosedFormDispatch) {
  EXPECT_NEAR(quasihyperbolic(Domain::punctured_space(2), Vec{1.0, 0.0}, Vec{0.0, 1.0}).value(),
              std::numbers::pi / 2.0, 1e-12);
  EXPECT_NEAR(quasihyperbolic(Domain::half_space(2), Vec{0.0, 1.0}, Vec{0.0, 2.0}).value(),
              std::log(2.0), 1e-12);
  DistanceBracket same = quasihyperbolic(Domain::unit_ball(2), Vec{0.2, 0.2}, Vec{0.2, 0.2});
  EXPECT_DOUBLE_EQ(same.lower, 0.0);
  EXPECT_DOUBLE_EQ(same.upper, 0.0);
}

TEST(Quasihyperbolic, BallBracketsRadialValues) {
  Domain ball = Domain::unit_ball(2);
  DistanceBracket b = quasihyperbolic(ball, Vec{0.0, 0.0}, Vec{0.9, 0.0});
  double target = std::log(10.0);
  EXPECT_GE(b.upper, target - 1e-10);
  EXPECT_LE(b.lower, target + 1e-12);
  EXPECT_NEAR(b.value(), target, 1e-6 * target);

  DistanceBracket r = quasihyperbolic(ball, Vec{0.3, 0.0}, Vec{0.6, 0.0});
  EXPECT_NEAR(r.value(), std::log(0.7 / 0.4), 1e-10);
}

TEST(Quasihyperbolic, BallBracketInsideRhoWindow) {
  Domain ball = Domain::unit_ball(2);
  Rng rng(60);
  for (int i = 0; i < 100; ++i) {
    Vec x = rng.in_ball(2), y = rng.in_ball(2);
    DistanceBracket b = quasihyperbolic(ball, x, y);
    double rho = rho_ball(x, y);
    EXPECT_GE(b.lower, rho / 2.0 - 1e-12);
    EXPECT_LE(b.upper, rho + 1e-3);
    EXPECT_LE(b.lower, b.upper + 1e-15);
  }
}

TEST(Quasihyperbolic, PuncturedBallStructuralBound) {
  Domain g = Domain::punctured_ball(2);
  Rng rng(61);
  auto w = quasihyperbolic_density(g);
  for (int i = 0; i < 25; ++i) {
    Vec x = interior_point(g, rng, 0.02);
    Vec y = interior_point(g, rng, 0.02);
    if (dist(x, y) < 1e-3) continue;
    DistanceBracket b = quasihyperbolic(g, x, y);
    double spiral_only = weighted_length(spiral_geodesic(x, y, 257), w, 8);
    double arc_only = weighted_length(ball_geodesic(x, y, 257).path, w, 8);
    EXPECT_LE(b.upper, std::fmin(spiral_only, arc_only) + 1e-6);
    EXPECT_GE(b.upper, b.lower - 1e-12);
  }
}

TEST(Quasihyperbolic, SectorSegmentSeedAndLShapeGridFallback) {
  Domain sector = Domain::sector(std::numbers::pi / 3.0);
  DistanceBracket b = quasihyperbolic(sector, Vec{1.0, 0.5}, Vec{2.0, 1.0});
  EXPECT_GT(b.upper, 0.0);
  EXPECT_GE(b.upper, b.lower - 1e-12);

  // Segment between the lobes of the L leaves the domain: grid fallback.
  Domain l = l_shape();
  Vec x{1.7, 0.5}, y{0.5, 1.7};
  DistanceBracket c = quasihyperbolic(l, x, y);
  EXPECT_GE(c.upper, c.lower - 1e-12);
  EXPECT_GT(c.upper, distance_ratio_j(l, x, y) - 1e-12);
}

TEST(Quasihyperbolic, RadialSegmentEqualsDistanceRatio) {
  // Points on the segment toward the nearest boundary point: k = j exactly.
  std::vector<Domain> domains = {Domain::unit_ball(2), Domain::punctured_space(2),
                                 Domain::half_space(2), Domain::sector(1.2), l_shape()};
  Rng rng(62);
  for (const Domain& g : domains) {
    for (int rep = 0; rep < 5; ++rep) {
      Vec z0 = interior_point(g, rng, 0.05);
      Vec b = boundary_project(g, z0);
      double d0 = boundary_distance(g, z0);
      ASSERT_NEAR(dist(z0, b), d0, 1e-9);
      Vec u = (b - z0) / dist(b, z0);
      Vec p = z0 + u * (0.15 * d0);
      Vec q = z0 + u * (0.75 * d0);
      double expect = std::fabs(std::log(boundary_distance(g, p) / boundary_distance(g, q)));
      DistanceBracket k = quasihyperbolic(g, p, q);
      double j = distance_ratio_j(g, p, q);
      EXPECT_NEAR(k.value(), expect, 1e-9 * (1.0 + expect)) << g.name();
      EXPECT_NEAR(j, expect, 1e-10 * (1.0 + expect)) << g.name();
    }
  }
}
