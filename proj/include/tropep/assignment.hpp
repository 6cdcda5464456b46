#pragma once

// Minimum-cost perfect matching on a dense square cost matrix.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "tropep/error.hpp"

namespace tropep {

struct Assignment {
  std::vector<std::size_t> to;  // row r is matched with column to[r]
  double cost = 0.0;
};

namespace detail {

/// Hungarian method with potentials (Jonker–Volgenant style shortest
/// augmenting paths), O(n³). `cost` is row-major n×n.
inline std::vector<std::size_t> hungarian(const std::vector<double>& cost, std::size_t n) {
  const double inf = std::numeric_limits<double>::infinity();
  // 1-based with column 0 as the virtual source.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = p[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost[(i0 - 1) * n + (j - 1)] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<std::size_t> to(n);
  for (std::size_t j = 1; j <= n; ++j) to[p[j] - 1] = j - 1;
  return to;
}

inline double total_cost(const std::vector<double>& cost, std::size_t n, const std::vector<std::size_t>& to) {
  double s = 0.0;
  for (std::size_t r = 0; r < n; ++r) s += cost[r * n + to[r]];
  return s;
}

}  // namespace detail

inline Assignment min_cost_assignment(const std::vector<double>& cost, std::size_t n) {
  if (cost.size() != n * n) throw input_error("assignment: cost matrix must be n*n");
  for (double c : cost)
    if (!std::isfinite(c)) throw numeric_error("assignment: non-finite cost");
  Assignment a;
  if (n == 0) return a;
  a.to = detail::hungarian(cost, n);
  a.cost = detail::total_cost(cost, n, a.to);
  return a;
}

/// Cheapest assignment different from `best`: every other assignment avoids
/// at least one pair of `best`, so forbidding each pair in turn and taking
/// the minimum is exact. The cost is +∞ when n < 2.
inline Assignment second_best_assignment(const std::vector<double>& cost, std::size_t n, const Assignment& best) {
  Assignment out;
  out.cost = std::numeric_limits<double>::infinity();
  if (n < 2) return out;
  double hi = 0.0;
  for (double c : cost) hi = std::max(hi, std::abs(c));
  const double forbidden = 4.0 * (hi + 1.0) * static_cast<double>(n);
  std::vector<double> modified = cost;
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t idx = r * n + best.to[r];
    modified[idx] = forbidden;
    auto to = detail::hungarian(modified, n);
    modified[idx] = cost[idx];
    if (to[r] == best.to[r]) continue;  // cannot happen unless n < 2
    const double c = detail::total_cost(cost, n, to);
    if (c < out.cost) {
      out.cost = c;
      out.to = std::move(to);
    }
  }
  return out;
}

}  // namespace tropep
