#pragma once
// Marching-squares boundary extraction on a thresholded map.  Grid cells act
// as corners of the marching blocks; crossing points sit at midpoints of the
// segments joining adjacent cell centers, so every polyline vertex lies on a
// cell edge between one true and one false cell.  Ambiguous saddle blocks
// are resolved by the sample-midpoint rule: the mean of the four corner
// values decides the connection.

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "yblaser/sweep.hpp"

namespace yblaser {

struct Polyline {
  std::vector<std::array<double, 2>> points;  // MHz coordinates
  bool closed = false;
};

namespace detail {

// edge between cell (ix,iy) and its +x neighbour (horizontal, type 0) or its
// +y neighbour (vertical, type 1)
inline std::uint64_t edge_id(int type, int ix, int iy) {
  return (static_cast<std::uint64_t>(type) << 42) |
         (static_cast<std::uint64_t>(static_cast<std::uint32_t>(iy)) << 21) |
         static_cast<std::uint64_t>(static_cast<std::uint32_t>(ix));
}

inline std::array<double, 2> edge_point(const GridSpec& g, std::uint64_t id) {
  const int ix = static_cast<int>(id & 0x1fffff);
  const int iy = static_cast<int>((id >> 21) & 0x1fffff);
  const int type = static_cast<int>(id >> 42);
  if (type == 0) return {0.5 * (g.x(ix) + g.x(ix + 1)), g.y(iy)};
  return {g.x(ix), 0.5 * (g.y(iy) + g.y(iy + 1))};
}

}  // namespace detail

// Boundary polylines of the region {value > level} (NaN counts as false).
// Polylines are closed where the region is interior to the map.
inline std::vector<Polyline> extract_contour(const Map2D& map, double level = 0.0) {
  const GridSpec& g = map.grid;
  const auto above = [&](int ix, int iy) {
    const double v = map.at(ix, iy);
    return std::isfinite(v) && v > level;
  };
  const auto finite_or_level = [&](int ix, int iy) {
    const double v = map.at(ix, iy);
    return std::isfinite(v) ? v : level;
  };

  std::vector<std::array<std::uint64_t, 2>> segments;
  for (int by = 0; by + 1 < g.ny; ++by) {
    for (int bx = 0; bx + 1 < g.nx; ++bx) {
      const bool c00 = above(bx, by);          // SW
      const bool c10 = above(bx + 1, by);      // SE
      const bool c11 = above(bx + 1, by + 1);  // NE
      const bool c01 = above(bx, by + 1);      // NW
      const int code = (c00 ? 1 : 0) | (c10 ? 2 : 0) | (c11 ? 4 : 0) | (c01 ? 8 : 0);
      if (code == 0 || code == 15) continue;
      const std::uint64_t s = detail::edge_id(0, bx, by);
      const std::uint64_t n = detail::edge_id(0, bx, by + 1);
      const std::uint64_t w = detail::edge_id(1, bx, by);
      const std::uint64_t e = detail::edge_id(1, bx + 1, by);
      const auto add = [&segments](std::uint64_t a, std::uint64_t b) {
        segments.push_back({a, b});
      };
      switch (code) {
        case 1: add(w, s); break;
        case 2: add(s, e); break;
        case 3: add(w, e); break;
        case 4: add(e, n); break;
        case 6: add(s, n); break;
        case 7: add(w, n); break;
        case 8: add(w, n); break;
        case 9: add(s, n); break;
        case 11: add(e, n); break;
        case 12: add(w, e); break;
        case 13: add(s, e); break;
        case 14: add(w, s); break;
        case 5:    // SW+NE true
        case 10: { // SE+NW true
          const double mid = 0.25 * (finite_or_level(bx, by) + finite_or_level(bx + 1, by) +
                                     finite_or_level(bx, by + 1) + finite_or_level(bx + 1, by + 1));
          const bool center = mid > level;
          const bool join_true_diag = (code == 5) == center;
          if (join_true_diag) {
            add(w, n);
            add(s, e);
          } else {
            add(w, s);
            add(e, n);
          }
          break;
        }
        default: break;
      }
    }
  }

  // chain segments through shared edge ids
  std::multimap<std::uint64_t, size_t> by_edge;
  for (size_t k = 0; k < segments.size(); ++k) {
    by_edge.emplace(segments[k][0], k);
    by_edge.emplace(segments[k][1], k);
  }
  std::vector<char> used(segments.size(), 0);
  const auto next_unused = [&](std::uint64_t edge) -> size_t {
    auto [lo, hi] = by_edge.equal_range(edge);
    for (auto it = lo; it != hi; ++it)
      if (!used[it->second]) return it->second;
    return segments.size();
  };

  std::vector<Polyline> out;
  for (size_t k0 = 0; k0 < segments.size(); ++k0) {
    if (used[k0]) continue;
    used[k0] = 1;
    std::vector<std::uint64_t> chain{segments[k0][0], segments[k0][1]};
    bool closed = false;
    // extend forward
    for (;;) {
      const size_t nk = next_unused(chain.back());
      if (nk >= segments.size()) break;
      used[nk] = 1;
      const std::uint64_t other =
          segments[nk][0] == chain.back() ? segments[nk][1] : segments[nk][0];
      if (other == chain.front()) {
        closed = true;
        break;
      }
      chain.push_back(other);
    }
    if (!closed) {  // extend backward
      for (;;) {
        const size_t nk = next_unused(chain.front());
        if (nk >= segments.size()) break;
        used[nk] = 1;
        const std::uint64_t other =
            segments[nk][0] == chain.front() ? segments[nk][1] : segments[nk][0];
        chain.insert(chain.begin(), other);
      }
    }
    Polyline pl;
    pl.closed = closed;
    pl.points.reserve(chain.size() + (closed ? 1 : 0));
    for (const std::uint64_t id : chain) pl.points.push_back(detail::edge_point(g, id));
    if (closed) pl.points.push_back(pl.points.front());
    out.push_back(std::move(pl));
  }
  return out;
}

}  // namespace yblaser
