#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <queue>
#include <sstream>
#include <stdexcept>

#include "ringmod/errors.h"
#include "ringmod/graph_modulus.h"

namespace ringmod {

std::string GridResolution::to_string() const {
  std::ostringstream out;
  out << radial << "x" << angular;
  if (stencil != 1) out << "/s" << stencil;
  return out.str();
}

void validate(const GridGraph& graph) {
  const int num_nodes = static_cast<int>(graph.nodes.size());
  if (graph.sources.empty() || graph.sinks.empty()) {
    throw std::invalid_argument("graph needs nonempty source and sink sets");
  }
  std::vector<char> role(num_nodes, 0);
  for (int s : graph.sources) {
    if (s < 0 || s >= num_nodes) throw std::invalid_argument("source index out of range");
    role[s] = 1;
  }
  for (int t : graph.sinks) {
    if (t < 0 || t >= num_nodes) throw std::invalid_argument("sink index out of range");
    if (role[t] == 1) throw std::invalid_argument("source and sink sets must be disjoint");
    role[t] = 2;
  }
  const size_t cells = graph.layout == DensityLayout::kEdge ? graph.edges.size()
                                                             : graph.nodes.size();
  if (graph.cell_volume.size() != cells) {
    throw std::invalid_argument("cell volume count does not match the density layout");
  }
  for (double v : graph.cell_volume) {
    if (!(v > 0.0 && std::isfinite(v))) throw std::invalid_argument("cell volumes must be positive");
  }
  if (!graph.support_begin.empty()) {
    if (graph.layout != DensityLayout::kVertex ||
        graph.support_begin.size() != graph.edges.size() + 1 ||
        graph.support_begin.front() != 0 ||
        graph.support_begin.back() != static_cast<int>(graph.support_cell.size()) ||
        graph.support_cell.size() != graph.support_weight.size()) {
      throw std::invalid_argument("inconsistent edge support arrays");
    }
    for (size_t j = 0; j < graph.support_cell.size(); ++j) {
      if (graph.support_cell[j] < 0 || graph.support_cell[j] >= num_nodes ||
          !(graph.support_weight[j] > 0.0)) {
        throw std::invalid_argument("invalid edge support entry");
      }
    }
  }
  std::vector<std::vector<int>> adjacency(num_nodes);
  for (const GridEdge& e : graph.edges) {
    if (e.tail < 0 || e.tail >= num_nodes || e.head < 0 || e.head >= num_nodes) {
      throw std::invalid_argument("edge endpoint out of range");
    }
    if (!(e.length > 0.0 && std::isfinite(e.length))) {
      throw std::invalid_argument("edge lengths must be positive");
    }
    adjacency[e.tail].push_back(e.head);
    adjacency[e.head].push_back(e.tail);
  }
  std::vector<char> seen(num_nodes, 0);
  std::queue<int> frontier;
  for (int s : graph.sources) {
    seen[s] = 1;
    frontier.push(s);
  }
  while (!frontier.empty()) {
    const int v = frontier.front();
    frontier.pop();
    if (role[v] == 2) return;
    for (int w : adjacency[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        frontier.push(w);
      }
    }
  }
  throw std::invalid_argument("disconnected graph: no source-sink path");
}

namespace {

using std::numbers::pi;

// Primitive integer offsets with max-norm <= k whose first nonzero entry is
// positive; each undirected neighbor relation appears once.
std::vector<std::vector<int>> stencil_offsets(int dims, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> d(dims, -k);
  while (true) {
    int first = 0;
    for (int x : d) {
      if (x != 0) {
        first = x;
        break;
      }
    }
    int g = 0;
    for (int x : d) g = std::gcd(g, std::abs(x));
    if (first > 0 && g == 1) out.push_back(d);
    int pos = dims - 1;
    while (pos >= 0 && d[pos] == k) {
      d[pos] = -k;
      --pos;
    }
    if (pos < 0) break;
    ++d[pos];
  }
  return out;
}

struct Lattice {
  std::vector<int> extent;
  std::vector<bool> periodic;

  int size() const {
    int s = 1;
    for (int e : extent) s *= e;
    return s;
  }
  int index(const std::vector<int>& c) const {
    int idx = 0;
    for (size_t i = 0; i < c.size(); ++i) idx = idx * extent[i] + c[i];
    return idx;
  }
  std::vector<int> coords(int idx) const {
    std::vector<int> c(extent.size());
    for (int i = static_cast<int>(extent.size()) - 1; i >= 0; --i) {
      c[i] = idx % extent[i];
      idx /= extent[i];
    }
    return c;
  }
};

// Exact measure of the dual interval around s_i in the log-radius variable,
// i.e. integral of r^{n-1} dr over the matching radial range.
double radial_volume(int n, double s0, double h, int i, int count) {
  const double s_end = s0 + h * (count - 1);
  const double si = s0 + h * i;
  const double lo = std::max(s0, si - 0.5 * h);
  const double hi = std::min(s_end, si + 0.5 * h);
  return (std::exp(n * hi) - std::exp(n * lo)) / n;
}

}  // namespace

GridGraph build_grid(const Shape& shape, const GridResolution& res) {
  const int n = shape.dim();
  if (n != 2 && n != 3) {
    throw std::invalid_argument("build_grid supports dimensions 2 and 3");
  }
  if (res.radial < 8 || res.angular < 8) {
    throw std::invalid_argument("resolution too small: need at least 8 cells per direction");
  }
  if (res.stencil < 1 || 2 * res.stencil >= res.angular) {
    throw std::invalid_argument("stencil must be >= 1 and less than half the angular count");
  }
  const bool half = shape.is_semiring();
  const double r0 = shape.inner();
  const double r1 = shape.outer();
  const double s0 = std::log(r0);
  const double h = (std::log(r1) - s0) / (res.radial - 1);

  Lattice lattice;
  int polar = 0;
  if (n == 2) {
    lattice.extent = {res.radial, res.angular};
    lattice.periodic = {false, !half};
  } else {
    polar = std::max(2, half ? res.angular / 4 : res.angular / 2);
    lattice.extent = {res.radial, polar, res.angular};
    lattice.periodic = {false, false, true};
  }

  GridGraph g;
  g.dim = n;
  g.p = n;
  g.layout = DensityLayout::kVertex;
  g.resolution = res;
  const int count = lattice.size();
  g.nodes.resize(count);
  g.cell_volume.resize(count);

  // Unit-axis local frame: the half space is {w_n >= 0}.
  for (int idx = 0; idx < count; ++idx) {
    const std::vector<int> c = lattice.coords(idx);
    const double r = std::exp(s0 + h * c[0]);
    Vector dir(n);
    double solid = 0.0;
    if (n == 2) {
      double phi;
      if (half) {
        const double dphi = pi / (res.angular - 1);
        phi = dphi * c[1];
        solid = (c[1] == 0 || c[1] == res.angular - 1) ? 0.5 * dphi : dphi;
      } else {
        const double dphi = 2.0 * pi / res.angular;
        phi = dphi * c[1];
        solid = dphi;
      }
      dir << std::cos(phi), std::sin(phi);
    } else {
      const double span = half ? 0.5 * pi : pi;
      const double dtheta = span / polar;
      const double theta = dtheta * (c[1] + 0.5);
      const double dphi = 2.0 * pi / res.angular;
      const double phi = dphi * c[2];
      dir << std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta);
      solid = (std::cos(dtheta * c[1]) - std::cos(dtheta * (c[1] + 1))) * dphi;
    }
    g.nodes[idx] = r * dir;
    g.cell_volume[idx] = radial_volume(n, s0, h, c[0], res.radial) * solid;
  }

  switch (shape.kind()) {
    case ShapeKind::kAnnulus:
    case ShapeKind::kHalfSemiring:
      for (Vector& x : g.nodes) x += shape.center();
      break;
    case ShapeKind::kApollonianSemiring: {
      // Reflect the axis e_n onto xi, then invert in the sphere of radius
      // sqrt(2) about -xi; |x - xi| / |x + xi| becomes |w|.
      const Vector& xi = shape.center();
      const Vector v = Vector::Unit(n, n - 1) - xi;
      Matrix reflect = Matrix::Identity(n, n);
      if (v.norm() > 1e-14) reflect -= 2.0 * v * v.transpose() / v.squaredNorm();
      for (int idx = 0; idx < count; ++idx) {
        const Vector w = reflect * g.nodes[idx];
        const Vector shifted = w + xi;
        const double q = shifted.squaredNorm();
        g.nodes[idx] = -xi + 2.0 * shifted / q;
        g.cell_volume[idx] *= std::pow(2.0 / q, n);
      }
      break;
    }
  }

  const auto offsets = stencil_offsets(static_cast<int>(lattice.extent.size()), res.stencil);
  const bool wide = res.stencil > 1;
  if (wide) g.support_begin.push_back(0);
  // Lattice point at c + round(d * t / steps), or -1 outside the lattice.
  auto step_point = [&](const std::vector<int>& c, const std::vector<int>& d, int t, int steps) {
    std::vector<int> nb(c.size());
    for (size_t k = 0; k < c.size(); ++k) {
      int v = c[k] + static_cast<int>(std::lround(static_cast<double>(d[k]) * t / steps));
      if (lattice.periodic[k]) {
        v = ((v % lattice.extent[k]) + lattice.extent[k]) % lattice.extent[k];
      } else if (v < 0 || v >= lattice.extent[k]) {
        return -1;
      }
      nb[k] = v;
    }
    return lattice.index(nb);
  };
  for (int idx = 0; idx < count; ++idx) {
    const std::vector<int> c = lattice.coords(idx);
    for (const auto& d : offsets) {
      int steps = 0;
      for (int x : d) steps = std::max(steps, std::abs(x));
      const int other = step_point(c, d, steps, steps);
      if (other < 0) continue;
      g.edges.push_back({idx, other, (g.nodes[idx] - g.nodes[other]).norm()});
      if (!wide) continue;
      // Trapezoidal weights along the digital line from idx to other.
      for (int t = 0; t <= steps; ++t) {
        const double w = (t == 0 || t == steps) ? 0.5 / steps : 1.0 / steps;
        g.support_cell.push_back(step_point(c, d, t, steps));
        g.support_weight.push_back(w);
      }
      g.support_begin.push_back(static_cast<int>(g.support_cell.size()));
    }
  }

  const int per_shell = count / res.radial;
  for (int k = 0; k < per_shell; ++k) {
    g.sources.push_back(k);
    g.sinks.push_back((res.radial - 1) * per_shell + k);
  }
  validate(g);
  return g;
}

GridGraph push_forward(const GridGraph& graph, const MapSpec& map) {
  GridGraph out = graph;
  std::vector<double> jac(graph.nodes.size());
  for (size_t i = 0; i < graph.nodes.size(); ++i) {
    const Vector& x = graph.nodes[i];
    if (map.singular_distance(x) < kMinSingularDistance) {
      throw DomainError("map singular inside shape at a grid node");
    }
    out.nodes[i] = eval_map(map, x);
    jac[i] = std::abs(jacobian(map, x).det);
    if (!(jac[i] > 0.0)) throw DomainError("map has a vanishing Jacobian inside shape");
  }
  for (GridEdge& e : out.edges) {
    e.length = (out.nodes[e.tail] - out.nodes[e.head]).norm();
  }
  if (graph.layout == DensityLayout::kVertex) {
    for (size_t i = 0; i < jac.size(); ++i) out.cell_volume[i] *= jac[i];
  } else {
    for (size_t k = 0; k < graph.edges.size(); ++k) {
      const Vector mid = 0.5 * (graph.nodes[graph.edges[k].tail] + graph.nodes[graph.edges[k].head]);
      out.cell_volume[k] *= std::abs(jacobian(map, mid).det);
    }
  }
  validate(out);
  return out;
}

}  // namespace ringmod
