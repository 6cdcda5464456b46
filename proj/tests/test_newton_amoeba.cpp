#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "oracles.hpp"
#include "tropep/models.hpp"
#include "tropep/newton_amoeba.hpp"

using namespace tropep;

namespace {

BiPoly L() { return BiPoly::lambda(); }
BiPoly N() { return BiPoly::nu(); }
BiPoly line() { return BiPoly(1) + N() + L(); }

BiPoly pow(BiPoly b, int e) {
  BiPoly r(1);
  for (int k = 0; k < e; ++k) r = r * b;
  return r;
}

std::vector<LatticePoint> sorted(std::vector<LatticePoint> v) {
  std::sort(v.begin(), v.end());
  return v;
}

bool contains(const std::vector<Direction>& dirs, const Direction& d) {
  return std::find(dirs.begin(), dirs.end(), d) != dirs.end();
}

}  // namespace

TEST(NewtonPolygon, TwoSiteTriangle) {
  const auto np = newton_polygon(pow(L(), 2) - pow(N(), 2) - GaussianRational(2) * GaussianRational::i() * N());
  EXPECT_EQ(np.hull, (std::vector<LatticePoint>{{0, 1}, {2, 0}, {0, 2}}));
  EXPECT_EQ(np.edges.size(), 3u);
  EXPECT_FALSE(np.is_segment());
  EXPECT_EQ(interior_lattice_points(np), 0);
}

TEST(NewtonPolygon, SegmentAndPoint) {
  const auto seg = newton_polygon(pow(L(), 5) - N());
  EXPECT_TRUE(seg.is_segment());
  EXPECT_EQ(seg.hull, (std::vector<LatticePoint>{{0, 1}, {5, 0}}));
  const auto dirs = tentacle_directions(seg);
  EXPECT_EQ(dirs.size(), 2u);
  EXPECT_TRUE(contains(dirs, {1, 5}));
  EXPECT_TRUE(contains(dirs, {-1, -5}));

  const auto pt = newton_polygon(pow(L(), 3));
  EXPECT_TRUE(pt.is_point());
  EXPECT_EQ(pt.hull, (std::vector<LatticePoint>{{3, 0}}));
  EXPECT_TRUE(tentacle_directions(pt).empty());
  EXPECT_THROW(newton_polygon(BiPoly()), input_error);
}

TEST(NewtonPolygon, UnitTriangleNormals) {
  const auto dirs = tentacle_directions(newton_polygon(line()));
  EXPECT_EQ(dirs.size(), 3u);
  EXPECT_TRUE(contains(dirs, {0, -1}));
  EXPECT_TRUE(contains(dirs, {-1, 0}));
  EXPECT_TRUE(contains(dirs, {1, 1}));
}

TEST(NewtonPolygon, InteriorLatticePointsByPick) {
  // 1 + λ³ + ν³ + λν: triangle with the single interior point (1, 1).
  const BiPoly p = BiPoly(1) + pow(L(), 3) + pow(N(), 3) + L() * N();
  EXPECT_EQ(interior_lattice_points(newton_polygon(p)), 1);
  EXPECT_EQ(interior_lattice_points(newton_polygon(pow(L() + N() + BiPoly(1), 4))), 3);
}

TEST(NewtonPolygonProperty, HullMatchesBruteForceAndInvariants) {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> count(1, 12), coord(0, 6);
  for (int t = 0; t < 300; ++t) {
    BiPoly p;
    std::vector<LatticePoint> pts;
    const int n = count(rng);
    for (int k = 0; k < n; ++k) {
      const int i = coord(rng), j = coord(rng);
      p += BiPoly::monomial(1, static_cast<unsigned>(i), static_cast<unsigned>(j));
      pts.push_back({i, j});
    }
    const auto np = newton_polygon(p);
    EXPECT_EQ(sorted(np.hull), oracle::brute_force_hull_vertices(pts));
    // Convex, counter-clockwise, starting at the smallest vertex.
    EXPECT_EQ(np.hull.front(), *std::min_element(np.hull.begin(), np.hull.end()));
    if (np.hull.size() >= 3)
      for (std::size_t j = 0; j < np.hull.size(); ++j) {
        const auto& a = np.hull[j];
        const auto& b = np.hull[(j + 1) % np.hull.size()];
        const auto& c = np.hull[(j + 2) % np.hull.size()];
        EXPECT_GT((b.i - a.i) * (c.k - a.k) - (b.k - a.k) * (c.i - a.i), 0);
      }
    for (const auto& e : np.edges) {
      EXPECT_EQ(std::gcd(std::abs(e.normal.i), std::abs(e.normal.k)), 1);
      // Outward: no support point lies beyond the edge.
      for (const auto& s : np.support)
        EXPECT_LE(e.normal.i * s.i + e.normal.k * s.k, e.normal.i * e.from.i + e.normal.k * e.from.k);
      EXPECT_EQ(e.normal.i * (e.to.i - e.from.i) + e.normal.k * (e.to.k - e.from.k), 0);
    }
    if (np.is_segment()) {
      ASSERT_EQ(np.edges.size(), 2u);
      EXPECT_EQ(np.edges[0].normal.i, -np.edges[1].normal.i);
      EXPECT_EQ(np.edges[0].normal.k, -np.edges[1].normal.k);
    }
  }
}

TEST(Amoeba, RequiresABivariatePolynomial) {
  EXPECT_THROW(amoeba_sample(pow(L(), 2) + BiPoly(1)), input_error);
  EXPECT_THROW(amoeba_sample(N() + BiPoly(1)), input_error);
  EXPECT_THROW(spine_approx(N() + BiPoly(1)), input_error);
  try {
    amoeba_sample(L() + BiPoly(1));
  } catch (const input_error& e) {
    EXPECT_STREQ(e.what(), "amoeba requires a genuinely bivariate polynomial");
  }
  AmoebaGrid bad;
  bad.r_min = 0;
  EXPECT_THROW(amoeba_sample(line(), bad), input_error);
}

TEST(Amoeba, EveryPointSatisfiesTheResidualBound) {
  AmoebaGrid g;
  g.radial = 40;
  g.angular = 32;
  const BiPoly p = pow(L(), 2) - pow(N(), 2) - GaussianRational(2) * GaussianRational::i() * N();
  const auto cloud = amoeba_sample(p, g);
  EXPECT_GT(cloud.points.size(), 40u * 32u);
  EXPECT_EQ(cloud.grid.radial, 40u);
  // On the curve |λ|² = |ν|·|ν + 2i|, so e^{2y−x} lies in [|2 − |ν||, 2 + |ν|].
  for (const auto& pt : cloud.points) {
    ASSERT_TRUE(std::isfinite(pt.x) && std::isfinite(pt.y));
    const double ratio = std::exp(2 * pt.y - pt.x), r = std::exp(pt.x);
    EXPECT_GE(ratio, std::abs(2 - r) * (1 - 1e-6) - 1e-9);
    EXPECT_LE(ratio, (2 + r) * (1 + 1e-6));
  }
  EXPECT_EQ(cloud.rejected, 0u);
}

TEST(Amoeba, LineTentaclesFollowTheNormals) {
  const auto cloud = amoeba_sample(line());
  const auto dirs = tentacle_directions(newton_polygon(line()));
  std::size_t far = 0, good = 0;
  for (const auto& pt : cloud.points) {
    if (std::hypot(pt.x, pt.y) <= 6.0) continue;
    ++far;
    if (angle_to_nearest(pt, dirs) <= 0.1) ++good;
  }
  ASSERT_GT(far, 1000u);
  EXPECT_GE(static_cast<double>(good), 0.95 * static_cast<double>(far));
  EXPECT_FALSE(has_vacuole(cloud));
}

TEST(Amoeba, SamplingIsDeterministic) {
  AmoebaGrid g;
  g.radial = 30;
  g.angular = 16;
  std::ostringstream a, b;
  write_amoeba_csv(a, amoeba_sample(line(), g));
  write_amoeba_csv(b, amoeba_sample(line(), g));
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(a.str().rfind("log_abs_nu,log_abs_lambda\n", 0), 0u);
}

TEST(Amoeba, TrimerAtThirdOrderEPHasAVacuole) {
  const BiPoly p = char_poly(three_site(preset_trimer_ep3()));
  EXPECT_EQ(interior_lattice_points(newton_polygon(p)), 1);
  EXPECT_TRUE(has_vacuole(amoeba_sample(p)));
}

TEST(Amoeba, VacuoleFlagOnASyntheticRing) {
  AmoebaPointCloud ring;
  for (int k = 0; k < 2000; ++k) {
    const double t = 2 * M_PI * k / 2000.0;
    ring.points.push_back({2 * std::cos(t), 2 * std::sin(t)});
  }
  EXPECT_TRUE(has_vacuole(ring));
  AmoebaPointCloud small_ring;
  for (int k = 0; k < 200; ++k) {
    const double t = 2 * M_PI * k / 200.0;
    small_ring.points.push_back({0.12 * std::cos(t), 0.12 * std::sin(t)});
  }
  EXPECT_FALSE(has_vacuole(small_ring));  // hole narrower than 3×3 cells
}

TEST(Spine, TropicalLine) {
  const auto c = spine_approx(line());
  ASSERT_EQ(c.vertices.size(), 1u);
  EXPECT_NEAR(c.vertices[0].x, 0.0, 1e-12);
  EXPECT_NEAR(c.vertices[0].y, 0.0, 1e-12);
  EXPECT_TRUE(c.segments.empty());
  ASSERT_EQ(c.rays.size(), 3u);
  std::vector<Direction> normals;
  for (const auto& r : c.rays) normals.push_back(r.normal);
  EXPECT_TRUE(contains(normals, {0, -1}));
  EXPECT_TRUE(contains(normals, {-1, 0}));
  EXPECT_TRUE(contains(normals, {1, 1}));
}

TEST(Spine, TwoTermSupportIsALine) {
  // λ² − ν: corner locus of max(2y, x) is the line y = x/2.
  const auto c = spine_approx(pow(L(), 2) - N());
  EXPECT_TRUE(c.vertices.empty());
  ASSERT_EQ(c.rays.size(), 2u);
  for (const auto& r : c.rays) {
    EXPECT_NEAR(r.origin.y - r.origin.x / 2, 0.0, 1e-12);
    const Point2 d = r.direction();
    EXPECT_NEAR(d.y / d.x, 0.5, 1e-12);
  }
}

TEST(Spine, CollinearSupportGivesParallelLines) {
  // (λ² − 2ν)(λ² − 3ν) = λ⁴ − 5νλ² + 6ν² has three collinear support points:
  // two lines, at 2y − x = log 5 and log(6/5) from the expanded coefficients
  // (the amoeba itself hugs log 2 and log 3).
  const BiPoly p = (pow(L(), 2) - GaussianRational(2) * N()) * (pow(L(), 2) - GaussianRational(3) * N());
  const auto c = spine_approx(p);
  EXPECT_EQ(c.rays.size(), 4u);
  std::set<double> offsets;
  for (const auto& r : c.rays) offsets.insert(std::round((2 * r.origin.y - r.origin.x) * 1e9) / 1e9);
  EXPECT_EQ(offsets.size(), 2u);
  EXPECT_TRUE(offsets.count(std::round(std::log(5.0) * 1e9) / 1e9));
  EXPECT_TRUE(offsets.count(std::round(std::log(1.2) * 1e9) / 1e9));
}

TEST(Spine, BoundedSegmentsBetweenVertices) {
  // (1 + ν + λ)(1 + 2ν + 3λ): two tropical lines meeting, with a bounded edge.
  const BiPoly q = BiPoly(1) + GaussianRational(2) * N() + GaussianRational(3) * L();
  const auto c = spine_approx(line() * q);
  EXPECT_GE(c.vertices.size(), 2u);
  EXPECT_GE(c.segments.size(), 1u);
  std::ostringstream os;
  write_spine_csv(os, c);
  EXPECT_EQ(os.str().rfind("x1,y1,x2,y2,kind\n", 0), 0u);
  EXPECT_NE(os.str().find(",segment\n"), std::string::npos);
  EXPECT_NE(os.str().find(",ray\n"), std::string::npos);
}

TEST(SpineProperty, RaysAreNewtonNormals) {
  std::mt19937_64 rng(32);
  for (int t = 0; t < 60; ++t) {
    BiPoly p = oracle::random_bipoly(rng, 3, 5) + L() + N();
    if (p.lambda_degree().value_or(0) == 0 || p.nu_degree().value_or(0) == 0) continue;
    const auto np = newton_polygon(p);
    if (np.is_point()) continue;
    const auto dirs = tentacle_directions(np);
    const auto c = spine_approx(p);
    for (const auto& r : c.rays) EXPECT_TRUE(contains(dirs, r.normal)) << to_string(p);
    std::set<Direction> covered;
    for (const auto& r : c.rays) covered.insert(r.normal);
    EXPECT_EQ(covered.size(), std::set<Direction>(dirs.begin(), dirs.end()).size()) << to_string(p);
  }
}

TEST(Spine, SSHCollapsedPolynomialIsASingleLine) {
  const auto c = spine_approx(pow(L(), 5) - GaussianRational(4) * N());
  EXPECT_TRUE(c.vertices.empty());
  EXPECT_EQ(c.rays.size(), 2u);
  EXPECT_TRUE(c.segments.empty());
}

TEST(Svg, WritesADocument) {
  AmoebaGrid g;
  g.radial = 10;
  g.angular = 8;
  std::ostringstream os;
  write_svg(os, amoeba_sample(line(), g), spine_approx(line()), newton_polygon(line()));
  EXPECT_EQ(os.str().rfind("<svg", 0), 0u);
  EXPECT_NE(os.str().find("</svg>"), std::string::npos);
}
