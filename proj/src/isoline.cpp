#include "cloudsig/isoline.hpp"

#include "cloudsig/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_map>

namespace cloudsig {

double IsolineSet::cell_diagonal() const {
  const double hx = (box.hi[0] - box.lo[0]) / nx;
  const double hy = (box.hi[1] - box.lo[1]) / ny;
  return std::hypot(hx, hy);
}

double auto_iso_value(const SignatureModel& model) {
  const PointCloud& c = model.cloud();
  double sum = 0.0;
  for (Eigen::Index i = 0; i < c.size(); ++i) sum += model.value(c.point(i));
  return sum / static_cast<double>(c.size());
}

double default_iso_value(const SignatureModel& model) {
  return model.density().alpha == 0.0 ? 1.0 : auto_iso_value(model);
}

Box2 isoline_box(const SignatureModel& model, double margin) {
  const PointCloud& c = model.cloud();
  const Vec lo = c.bbox_min();
  const Vec hi = c.bbox_max();
  // A single point has no extent; fall back to ten kernel widths.
  const double diam = c.diameter();
  const double scale = diam > 0.0 ? diam : 10.0 / model.spec().delta;
  const double grow = margin * scale;
  return {{lo(0) - grow, lo(1) - grow}, {hi(0) + grow, hi(1) + grow}};
}

namespace {

using Key = std::int64_t;

// Joins marching-squares segments into polylines. Nodes are edge keys;
// every node has degree one (grid boundary) or two.
struct Chainer {
  std::unordered_map<Key, std::array<double, 2>> where;
  std::unordered_map<Key, std::vector<Key>> links;

  void add(Key a, Key b) {
    links[a].push_back(b);
    links[b].push_back(a);
  }

  std::vector<Polyline> chain() {
    auto next_unused = [&](Key node) -> Key {
      for (Key k : links[node]) {
        if (k >= 0) return k;
      }
      return -1;
    };
    auto consume = [&](Key a, Key b) {
      auto& la = links[a];
      *std::find(la.begin(), la.end(), b) = -1;
      auto& lb = links[b];
      *std::find(lb.begin(), lb.end(), a) = -1;
    };
    auto walk = [&](Key start) {
      Polyline line;
      line.vertices.push_back(where[start]);
      Key cur = start;
      for (Key nxt = next_unused(cur); nxt >= 0; nxt = next_unused(cur)) {
        consume(cur, nxt);
        line.vertices.push_back(where[nxt]);
        cur = nxt;
      }
      line.closed = cur == start && line.vertices.size() > 2;
      return line;
    };

    std::vector<Key> order;
    order.reserve(links.size());
    for (const auto& entry : links) order.push_back(entry.first);
    std::sort(order.begin(), order.end());

    std::vector<Polyline> out;
    // open chains first, starting from their boundary ends; then loops
    for (Key k : order) {
      if (links[k].size() == 1 && next_unused(k) >= 0) out.push_back(walk(k));
    }
    for (Key k : order) {
      if (next_unused(k) >= 0) out.push_back(walk(k));
    }
    return out;
  }
};

}  // namespace

IsolineSet extract_isolines(const SignatureModel& model, std::optional<double> iso,
                            const IsolineOptions& options) {
  if (model.dim() != 2) {
    throw DimensionUnsupported("isolines are only extracted for planar clouds (d = 2)");
  }
  if (options.nx < 8 || options.ny < 8) {
    throw InvalidSpec("isoline grid needs at least 8 cells per axis");
  }
  IsolineSet set;
  set.iso_value = iso ? *iso : default_iso_value(model);
  set.nx = options.nx;
  set.ny = options.ny;
  set.box = options.box ? *options.box : isoline_box(model, options.margin);

  const int nx = options.nx;
  const int ny = options.ny;
  const double x0 = set.box.lo[0];
  const double y0 = set.box.lo[1];
  const double hx = (set.box.hi[0] - x0) / nx;
  const double hy = (set.box.hi[1] - y0) / ny;
  auto node_x = [&](int i) { return i == nx ? set.box.hi[0] : x0 + i * hx; };
  auto node_y = [&](int j) { return j == ny ? set.box.hi[1] : y0 + j * hy; };

  // f(i, j) = u - iso at grid nodes.
  Mat f(nx + 1, ny + 1);
  Vec q(2);
  for (int j = 0; j <= ny; ++j) {
    for (int i = 0; i <= nx; ++i) {
      q << node_x(i), node_y(j);
      f(i, j) = model.value(q) - set.iso_value;
    }
  }

  // Edge keys: horizontal edge from node (i, j) -> 2 * id, vertical -> 2 * id + 1.
  auto node_id = [&](int i, int j) { return static_cast<Key>(j) * (nx + 1) + i; };
  Chainer chainer;
  auto crossing = [&](Key key, double xa, double ya, double fa, double xb, double yb, double fb) {
    if (!chainer.where.count(key)) {
      const double t = fa / (fa - fb);
      chainer.where[key] = {xa + t * (xb - xa), ya + t * (yb - ya)};
    }
    return key;
  };

  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      // corners: c0 (i,j), c1 (i+1,j), c2 (i+1,j+1), c3 (i,j+1)
      const double f0 = f(i, j), f1 = f(i + 1, j), f2 = f(i + 1, j + 1), f3 = f(i, j + 1);
      const bool a0 = f0 >= 0, a1 = f1 >= 0, a2 = f2 >= 0, a3 = f3 >= 0;
      const int mask = a0 | (a1 << 1) | (a2 << 2) | (a3 << 3);
      if (mask == 0 || mask == 15) continue;

      const double xl = node_x(i), xr = node_x(i + 1), yb = node_y(j), yt = node_y(j + 1);
      // edges: e0 bottom, e1 right, e2 top, e3 left
      std::array<Key, 4> e{-1, -1, -1, -1};
      if (a0 != a1) e[0] = crossing(2 * node_id(i, j), xl, yb, f0, xr, yb, f1);
      if (a1 != a2) e[1] = crossing(2 * node_id(i + 1, j) + 1, xr, yb, f1, xr, yt, f2);
      if (a3 != a2) e[2] = crossing(2 * node_id(i, j + 1), xl, yt, f3, xr, yt, f2);
      if (a0 != a3) e[3] = crossing(2 * node_id(i, j) + 1, xl, yb, f0, xl, yt, f3);

      if (mask == 5 || mask == 10) {
        q << 0.5 * (xl + xr), 0.5 * (yb + yt);
        const bool center = model.value(q) - set.iso_value >= 0;
        if (center == a0) {
          // c0 and c2 connect through the center; cut off c1 and c3
          chainer.add(e[0], e[1]);
          chainer.add(e[2], e[3]);
        } else {
          chainer.add(e[0], e[3]);
          chainer.add(e[1], e[2]);
        }
        continue;
      }
      std::array<Key, 2> ends{};
      int n = 0;
      for (Key k : e) {
        if (k >= 0) ends[static_cast<std::size_t>(n++)] = k;
      }
      chainer.add(ends[0], ends[1]);
    }
  }

  set.polylines = chainer.chain();
  double worst = 0.0;
  for (const Polyline& line : set.polylines) {
    for (const auto& v : line.vertices) {
      q << v[0], v[1];
      worst = std::max(worst, std::abs(model.value(q) - set.iso_value));
    }
  }
  set.max_vertex_residual = worst;
  return set;
}

}  // namespace cloudsig
