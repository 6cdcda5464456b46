#pragma once

// Newton polygon of p(ν, λ), its outer normals (the amoeba tentacles), a
// sampled amoeba under the logarithmic map and a piecewise-linear spine.
//
// Lattice points are (i, k) = (λ-exponent, ν-exponent). The amoeba plane is
// (x, y) = (log|ν|, log|λ|), so a lattice direction (i, k) is drawn as
// (x, y) = (k, i).

#include <algorithm>
#include <cmath>
#include <compare>
#include <complex>
#include <cstddef>
#include <map>
#include <numbers>
#include <numeric>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "tropep/csv.hpp"
#include "tropep/error.hpp"
#include "tropep/parallel.hpp"
#include "tropep/poly.hpp"
#include "tropep/spectrum.hpp"

namespace tropep {

struct LatticePoint {
  long long i = 0;  // λ-exponent
  long long k = 0;  // ν-exponent
  friend auto operator<=>(const LatticePoint&, const LatticePoint&) = default;
};

/// Integer direction in the (i, k) lattice.
using Direction = LatticePoint;

inline std::string to_string(const LatticePoint& p) {
  return "(" + std::to_string(p.i) + "," + std::to_string(p.k) + ")";
}

struct NewtonEdge {
  LatticePoint from, to;
  Direction normal;  // primitive, outward
  friend bool operator==(const NewtonEdge&, const NewtonEdge&) = default;
};

struct NewtonPolygon {
  std::vector<LatticePoint> support;  // sorted
  std::vector<LatticePoint> hull;     // counter-clockwise, no collinear vertices
  std::vector<NewtonEdge> edges;      // hull[j] -> hull[j+1]; a segment has two

  bool is_point() const { return hull.size() == 1; }
  bool is_segment() const { return hull.size() == 2; }
};

namespace detail {

inline long long cross(const LatticePoint& o, const LatticePoint& a, const LatticePoint& b) {
  return (a.i - o.i) * (b.k - o.k) - (a.k - o.k) * (b.i - o.i);
}

/// Andrew's monotone chain; strict turns only, so collinear points drop out.
/// Starts at the lexicographically smallest point.
inline std::vector<LatticePoint> convex_hull(std::vector<LatticePoint> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() <= 2) return pts;
  std::vector<LatticePoint> h(2 * pts.size());
  std::size_t n = 0;
  for (const auto& p : pts) {
    while (n >= 2 && cross(h[n - 2], h[n - 1], p) <= 0) --n;
    h[n++] = p;
  }
  for (std::size_t j = pts.size() - 1, lower = n + 1; j-- > 0;) {
    while (n >= lower && cross(h[n - 2], h[n - 1], pts[j]) <= 0) --n;
    h[n++] = pts[j];
  }
  h.resize(n - 1);
  if (h.size() == 1) h.push_back(pts.back());  // all collinear
  return h;
}

inline Direction outer_normal(const LatticePoint& from, const LatticePoint& to) {
  long long di = to.i - from.i, dk = to.k - from.k;
  const long long g = std::gcd(di < 0 ? -di : di, dk < 0 ? -dk : dk);
  return {dk / g, -di / g};
}

}  // namespace detail

inline NewtonPolygon newton_polygon(const BiPoly& p) {
  if (p.is_zero()) throw input_error("Newton polygon of the zero polynomial is undefined");
  NewtonPolygon np;
  for (const auto& [m, c] : p.terms())
    np.support.push_back({static_cast<long long>(m.lambda), static_cast<long long>(m.nu)});
  std::sort(np.support.begin(), np.support.end());
  np.hull = detail::convex_hull(np.support);
  if (np.hull.size() >= 2) {
    for (std::size_t j = 0; j < np.hull.size(); ++j) {
      const auto& a = np.hull[j];
      const auto& b = np.hull[(j + 1) % np.hull.size()];
      np.edges.push_back({a, b, detail::outer_normal(a, b)});
    }
  }
  return np;
}

/// One primitive outer normal per hull edge; empty for a single point.
inline std::vector<Direction> tentacle_directions(const NewtonPolygon& np) {
  std::vector<Direction> out;
  for (const auto& e : np.edges) out.push_back(e.normal);
  return out;
}

/// Lattice points strictly inside the hull, by Pick's theorem.
inline long long interior_lattice_points(const NewtonPolygon& np) {
  if (np.hull.size() < 3) return 0;
  long long twice_area = 0, boundary = 0;
  for (std::size_t j = 0; j < np.hull.size(); ++j) {
    const auto& a = np.hull[j];
    const auto& b = np.hull[(j + 1) % np.hull.size()];
    twice_area += a.i * b.k - b.i * a.k;
    boundary += std::gcd(std::abs(b.i - a.i), std::abs(b.k - a.k));
  }
  return (twice_area - boundary + 2) / 2;
}

// ---------------------------------------------------------------------------
// Amoeba sampling

struct AmoebaGrid {
  double r_min = 1e-4;
  double r_max = 1e4;
  std::size_t radial = 200;
  std::size_t angular = 256;

  void validate() const {
    if (!(r_min > 0.0) || !std::isfinite(r_max) || !(r_max > r_min))
      throw input_error("amoeba grid needs 0 < r_min < r_max");
    if (radial < 2 || angular < 1) throw input_error("amoeba grid needs n_r >= 2 and n_theta >= 1");
  }
  double radius(std::size_t j) const {
    const double t = static_cast<double>(j) / static_cast<double>(radial - 1);
    return std::exp(std::log(r_min) + t * (std::log(r_max) - std::log(r_min)));
  }
  double angle(std::size_t j) const {
    return 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(angular);
  }
};

struct AmoebaPoint {
  double x, y;  // log|ν|, log|λ|
  friend bool operator==(const AmoebaPoint&, const AmoebaPoint&) = default;
};

struct AmoebaPointCloud {
  std::vector<AmoebaPoint> points;
  AmoebaGrid grid;
  std::size_t rejected = 0;  // roots dropped for failing the residual check
};

/// Largest relative residual |p| / Σ|a_ik||ν|^k|λ|^i a sample may carry.
inline constexpr double amoeba_residual_tol = 1e-8;
/// Roots smaller than this are treated as lying at the origin.
inline constexpr double amoeba_min_modulus = 1e-300;

namespace detail {

inline void require_bivariate(const BiPoly& p) {
  if (p.is_zero() || p.lambda_degree().value_or(0) == 0 || p.nu_degree().value_or(0) == 0)
    throw input_error("amoeba requires a genuinely bivariate polynomial");
}

}  // namespace detail

/// Log-image of the curve p = 0. For every grid node z = r·e^{iθ} the roots λ
/// of p(z, ·) and the roots ν of p(·, z) are found via companion-matrix
/// eigenvalues; each non-zero root passing the residual check contributes a
/// point. Points are emitted in grid order (radius, angle, direction, root)
/// regardless of threading.
inline AmoebaPointCloud amoeba_sample(const BiPoly& p, const AmoebaGrid& grid = {}) {
  detail::require_bivariate(p);
  grid.validate();

  const auto lam_coeffs = lambda_coefficients(p);  // a_i(ν)
  std::vector<UniPoly> nu_coeffs(*p.nu_degree() + 1);  // b_k(λ)
  for (std::size_t k = 0; k < nu_coeffs.size(); ++k) nu_coeffs[k] = nu_coefficient(p, static_cast<unsigned>(k));

  struct Slot {
    std::vector<AmoebaPoint> points;
    std::size_t rejected = 0;
  };
  std::vector<Slot> slots(grid.radial);

  detail::parallel_for(grid.radial, [&](std::size_t rj) {
    Slot& slot = slots[rj];
    const double r = grid.radius(rj);
    const double log_r = std::log(r);
    std::vector<cdouble> c;
    for (std::size_t aj = 0; aj < grid.angular; ++aj) {
      const cdouble z = std::polar(r, grid.angle(aj));
      for (int dir = 0; dir < 2; ++dir) {
        const auto& coeffs = dir == 0 ? lam_coeffs : nu_coeffs;
        c.resize(coeffs.size());
        for (std::size_t j = 0; j < coeffs.size(); ++j) c[j] = coeffs[j](z);
        std::vector<cdouble> roots;
        try {
          roots = polynomial_roots(c);
        } catch (const input_error&) {
          continue;  // p(z, ·) vanishes identically: z is on a vertical component
        }
        for (const cdouble w : roots) {
          const double m = std::abs(w);
          if (!(m >= amoeba_min_modulus) || !std::isfinite(m)) continue;
          const cdouble nu = dir == 0 ? z : w;
          const cdouble lam = dir == 0 ? w : z;
          const double scale = poly_abs_scale(p, nu, lam);
          if (!(std::abs(poly_eval(p, nu, lam)) <= amoeba_residual_tol * scale)) {
            ++slot.rejected;
            continue;
          }
          slot.points.push_back(dir == 0 ? AmoebaPoint{log_r, std::log(m)} : AmoebaPoint{std::log(m), log_r});
        }
      }
    }
  });

  AmoebaPointCloud cloud;
  cloud.grid = grid;
  for (auto& s : slots) {
    cloud.points.insert(cloud.points.end(), s.points.begin(), s.points.end());
    cloud.rejected += s.rejected;
  }
  return cloud;
}

/// Smallest angle between the ray from the origin through pt and any of the
/// given lattice directions (drawn as (x, y) = (k, i)).
inline double angle_to_nearest(const AmoebaPoint& pt, std::span<const Direction> dirs) {
  const double a = std::atan2(pt.y, pt.x);
  double best = std::numbers::pi;
  for (const auto& d : dirs) {
    double diff = std::abs(a - std::atan2(static_cast<double>(d.i), static_cast<double>(d.k)));
    if (diff > std::numbers::pi) diff = 2.0 * std::numbers::pi - diff;
    best = std::min(best, diff);
  }
  return best;
}

/// Coarse hole detector. The bounding box of the cloud is cut into cells of
/// side `cell`; empty cells reachable from the border (4-connected) are
/// outside. The flag is raised when some enclosed empty region contains a
/// fully empty 3×3 block of cells.
inline bool has_vacuole(const AmoebaPointCloud& cloud, double cell = 0.1) {
  if (cloud.points.empty() || !(cell > 0.0)) return false;
  double x0 = cloud.points[0].x, x1 = x0, y0 = cloud.points[0].y, y1 = y0;
  for (const auto& p : cloud.points) {
    x0 = std::min(x0, p.x), x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y), y1 = std::max(y1, p.y);
  }
  // One empty ring of cells around the box so the flood has a start.
  const auto nx = static_cast<std::size_t>((x1 - x0) / cell) + 3;
  const auto ny = static_cast<std::size_t>((y1 - y0) / cell) + 3;
  if (nx * ny > 50'000'000) throw input_error("vacuole grid too fine for this cloud");
  std::vector<char> state(nx * ny, 0);  // 0 empty, 1 occupied, 2 outside
  auto at = [&](std::size_t ix, std::size_t iy) -> char& { return state[iy * nx + ix]; };
  for (const auto& p : cloud.points)
    at(static_cast<std::size_t>((p.x - x0) / cell) + 1, static_cast<std::size_t>((p.y - y0) / cell) + 1) = 1;

  std::vector<std::size_t> stack{0};
  state[0] = 2;
  while (!stack.empty()) {
    const std::size_t idx = stack.back();
    stack.pop_back();
    const std::size_t ix = idx % nx, iy = idx / nx;
    auto visit = [&](std::size_t jx, std::size_t jy) {
      char& s = at(jx, jy);
      if (s == 0) {
        s = 2;
        stack.push_back(jy * nx + jx);
      }
    };
    if (ix > 0) visit(ix - 1, iy);
    if (ix + 1 < nx) visit(ix + 1, iy);
    if (iy > 0) visit(ix, iy - 1);
    if (iy + 1 < ny) visit(ix, iy + 1);
  }
  for (std::size_t iy = 1; iy + 1 < ny; ++iy)
    for (std::size_t ix = 1; ix + 1 < nx; ++ix) {
      bool block = true;
      for (int dy = -1; dy <= 1 && block; ++dy)
        for (int dx = -1; dx <= 1 && block; ++dx) block = at(ix + dx, iy + dy) == 0;
      if (block) return true;
    }
  return false;
}

// ---------------------------------------------------------------------------
// Spine approximation: the corner locus of
//   f(x, y) = max over the support of (k·x + i·y + log|a_ik|).

struct Point2 {
  double x, y;
  friend bool operator==(const Point2&, const Point2&) = default;
};

struct PLSegment {
  Point2 a, b;
  Point2 direction() const { return {b.x - a.x, b.y - a.y}; }
};

struct PLRay {
  Point2 origin;
  Direction normal;  // Newton-edge outer normal this ray follows
  Point2 direction() const { return {static_cast<double>(normal.k), static_cast<double>(normal.i)}; }
};

struct PLCurve {
  std::vector<Point2> vertices;
  std::vector<PLSegment> segments;
  std::vector<PLRay> rays;
  bool empty() const { return segments.empty() && rays.empty(); }
};

inline constexpr const char* spine_note =
    "tropical curve with intercepts -log|coefficient|; ray directions are exact, vertex placement approximates the "
    "Ronkin spine";

namespace detail {

struct WeightedPoint {
  LatticePoint p;
  double w;  // log|a|
};

inline double tropical_value(const WeightedPoint& t, double x, double y) {
  return static_cast<double>(t.p.k) * x + static_cast<double>(t.p.i) * y + t.w;
}

/// Parallel lines for a support lying on one lattice line.
inline void collinear_spine(const std::vector<WeightedPoint>& pts, const NewtonPolygon& np, PLCurve& out) {
  const LatticePoint a = np.hull[0];
  const LatticePoint b = np.hull[1];
  long long di = b.i - a.i, dk = b.k - a.k;
  const long long g = std::gcd(std::abs(di), std::abs(dk));
  di /= g;
  dk /= g;
  // Each point is a + s·d; f = base + max_s (s·u + w) with u = dk·x + di·y.
  struct SW {
    long long s;
    double w;
  };
  std::map<long long, double> best;
  for (const auto& t : pts) {
    const long long s = di != 0 ? (t.p.i - a.i) / di : (t.p.k - a.k) / dk;
    auto [it, fresh] = best.emplace(s, t.w);
    if (!fresh) it->second = std::max(it->second, t.w);
  }
  std::vector<SW> hull;
  for (const auto& [s, w] : best) {
    // upper hull in (s, w)
    while (hull.size() >= 2) {
      const SW& o = hull[hull.size() - 2];
      const SW& m = hull.back();
      const double turn = static_cast<double>(m.s - o.s) * (w - o.w) - (m.w - o.w) * static_cast<double>(s - o.s);
      if (turn >= 0) hull.pop_back();
      else break;
    }
    hull.push_back({s, w});
  }
  const Direction n1 = outer_normal(a, b);
  const Direction n2{-n1.i, -n1.k};
  const double norm2 = static_cast<double>(dk * dk + di * di);
  for (std::size_t j = 1; j < hull.size(); ++j) {
    const double u = -(hull[j].w - hull[j - 1].w) / static_cast<double>(hull[j].s - hull[j - 1].s);
    const Point2 anchor{u * static_cast<double>(dk) / norm2, u * static_cast<double>(di) / norm2};
    out.rays.push_back({anchor, n1});
    out.rays.push_back({anchor, n2});
  }
}

}  // namespace detail

/// Piecewise-linear spine of the amoeba of p. Rays follow the outer normals
/// of the Newton polygon; a collinear support gives parallel lines, each
/// stored as two opposite rays from its point nearest the origin.
inline PLCurve spine_approx(const BiPoly& p) {
  detail::require_bivariate(p);
  const NewtonPolygon np = newton_polygon(p);
  std::vector<detail::WeightedPoint> pts;
  double scale = 1.0;
  for (const auto& [m, c] : p.terms()) {
    const double w = std::log(std::abs(c.to_complex()));
    pts.push_back({{static_cast<long long>(m.lambda), static_cast<long long>(m.nu)}, w});
    scale = std::max(scale, std::abs(w));
  }
  PLCurve out;
  if (np.is_segment()) {
    detail::collinear_spine(pts, np, out);
    return out;
  }

  const double tol = 1e-9 * scale;
  const std::size_t n = pts.size();
  std::map<std::vector<std::size_t>, Point2> cells;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t c = b + 1; c < n; ++c) {
        const auto& pa = pts[a];
        const auto& pb = pts[b];
        const auto& pc = pts[c];
        const double a11 = static_cast<double>(pa.p.k - pb.p.k), a12 = static_cast<double>(pa.p.i - pb.p.i);
        const double a21 = static_cast<double>(pa.p.k - pc.p.k), a22 = static_cast<double>(pa.p.i - pc.p.i);
        const double det = a11 * a22 - a12 * a21;
        if (det == 0.0) continue;
        const double r1 = pb.w - pa.w, r2 = pc.w - pa.w;
        const double x = (r1 * a22 - a12 * r2) / det;
        const double y = (a11 * r2 - r1 * a21) / det;
        const double alpha = detail::tropical_value(pa, x, y);
        const double local_tol = tol * (1.0 + std::abs(x) + std::abs(y));
        bool valid = true;
        std::vector<std::size_t> cell;
        for (std::size_t t = 0; t < n && valid; ++t) {
          const double v = detail::tropical_value(pts[t], x, y);
          if (v > alpha + local_tol) valid = false;
          else if (v >= alpha - local_tol) cell.push_back(t);
        }
        if (valid) cells.emplace(std::move(cell), Point2{x, y});
      }
  if (cells.empty()) throw numeric_error("spine: no tropical vertex found for a two-dimensional support");

  // Each cell edge either lies on the Newton boundary (a ray) or is shared
  // with exactly one other cell (a bounded segment).
  std::map<std::pair<LatticePoint, LatticePoint>, std::vector<Point2>> interior;
  for (const auto& [cell, vertex] : cells) {
    out.vertices.push_back(vertex);
    std::vector<LatticePoint> lp;
    for (std::size_t t : cell) lp.push_back(pts[t].p);
    const auto hull = detail::convex_hull(lp);
    if (hull.size() < 3) throw numeric_error("spine: degenerate dual cell");
    for (std::size_t j = 0; j < hull.size(); ++j) {
      const LatticePoint& u = hull[j];
      const LatticePoint& v = hull[(j + 1) % hull.size()];
      const Direction nrm = detail::outer_normal(u, v);
      const long long edge_level = nrm.i * u.i + nrm.k * u.k;
      const bool boundary = std::all_of(np.support.begin(), np.support.end(), [&](const LatticePoint& s) {
        return nrm.i * s.i + nrm.k * s.k <= edge_level;
      });
      if (boundary) {
        out.rays.push_back({vertex, nrm});
      } else {
        interior[{std::min(u, v), std::max(u, v)}].push_back(vertex);
      }
    }
  }
  for (const auto& [edge, ends] : interior) {
    if (ends.size() != 2) throw numeric_error("spine: unmatched interior edge in the dual subdivision");
    out.segments.push_back({ends[0], ends[1]});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Output

inline void write_amoeba_csv(std::ostream& os, const AmoebaPointCloud& cloud) {
  os << "log_abs_nu,log_abs_lambda\n";
  for (const auto& p : cloud.points) os << format_double(p.x) << ',' << format_double(p.y) << '\n';
}

/// Rays are written with their second point at origin + direction.
inline void write_spine_csv(std::ostream& os, const PLCurve& curve) {
  os << "x1,y1,x2,y2,kind\n";
  for (const auto& s : curve.segments)
    os << format_double(s.a.x) << ',' << format_double(s.a.y) << ',' << format_double(s.b.x) << ','
       << format_double(s.b.y) << ",segment\n";
  for (const auto& r : curve.rays) {
    const Point2 d = r.direction();
    os << format_double(r.origin.x) << ',' << format_double(r.origin.y) << ',' << format_double(r.origin.x + d.x)
       << ',' << format_double(r.origin.y + d.y) << ",ray\n";
  }
}

/// Cloud, spine and (inset, lower right) Newton polygon as a standalone SVG.
inline void write_svg(std::ostream& os, const AmoebaPointCloud& cloud, const PLCurve& curve, const NewtonPolygon& np) {
  double x0 = -1, x1 = 1, y0 = -1, y1 = 1;
  for (const auto& p : cloud.points) {
    x0 = std::min(x0, p.x), x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y), y1 = std::max(y1, p.y);
  }
  const double size = 800.0;
  const double span = std::max(x1 - x0, y1 - y0);
  auto sx = [&](double x) { return (x - x0) / span * size; };
  auto sy = [&](double y) { return size - (y - y0) / span * size; };
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (const auto& p : cloud.points)
    os << "<circle cx=\"" << sx(p.x) << "\" cy=\"" << sy(p.y) << "\" r=\"0.6\" fill=\"#3060a0\"/>\n";
  auto line = [&](Point2 a, Point2 b) {
    os << "<line x1=\"" << sx(a.x) << "\" y1=\"" << sy(a.y) << "\" x2=\"" << sx(b.x) << "\" y2=\"" << sy(b.y)
       << "\" stroke=\"#c03020\" stroke-width=\"1.5\"/>\n";
  };
  for (const auto& s : curve.segments) line(s.a, s.b);
  for (const auto& r : curve.rays) {
    const Point2 d = r.direction();
    const double len = 2.0 * span / std::hypot(d.x, d.y);
    line(r.origin, {r.origin.x + len * d.x, r.origin.y + len * d.y});
  }
  if (!np.hull.empty()) {
    long long mi = 1, mk = 1;
    for (const auto& v : np.support) mi = std::max(mi, v.i), mk = std::max(mk, v.k);
    const double unit = 150.0 / static_cast<double>(std::max(mi, mk));
    auto px = [&](const LatticePoint& v) { return size - 180.0 + unit * static_cast<double>(v.k); };
    auto py = [&](const LatticePoint& v) { return size - 20.0 - unit * static_cast<double>(v.i); };
    os << "<polygon fill=\"#f0e0a0\" stroke=\"black\" points=\"";
    for (const auto& v : np.hull) os << px(v) << ',' << py(v) << ' ';
    os << "\"/>\n";
    for (const auto& v : np.support) os << "<circle cx=\"" << px(v) << "\" cy=\"" << py(v) << "\" r=\"3\"/>\n";
  }
  os << "</svg>\n";
}

}  // namespace tropep
