#include "ringmod/graph_modulus.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <limits>
#include <queue>
#include <stdexcept>
#include <unordered_set>
#include <utility>

#include "ringmod/errors.h"

namespace ringmod {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct ActivePath {
  std::vector<int> cells;
  std::vector<double> coef;
  double lambda = 0.0;
  // sum a_c^2 / (2 w_c): the exact coordinate step for p = 2.
  double quad = 0.0;
};

struct Adjacency {
  std::vector<int> offset;
  std::vector<std::pair<int, int>> items;  // (neighbor, edge)
};

Adjacency make_adjacency(const GridGraph& g) {
  const int n = static_cast<int>(g.nodes.size());
  Adjacency adj;
  adj.offset.assign(n + 1, 0);
  for (const GridEdge& e : g.edges) {
    ++adj.offset[e.tail + 1];
    ++adj.offset[e.head + 1];
  }
  for (int i = 0; i < n; ++i) adj.offset[i + 1] += adj.offset[i];
  adj.items.resize(adj.offset[n]);
  std::vector<int> fill(adj.offset.begin(), adj.offset.end() - 1);
  for (int k = 0; k < static_cast<int>(g.edges.size()); ++k) {
    const GridEdge& e = g.edges[k];
    adj.items[fill[e.tail]++] = {e.head, k};
    adj.items[fill[e.head]++] = {e.tail, k};
  }
  return adj;
}

class Solver {
 public:
  Solver(const GridGraph& graph, const SolverOptions& options)
      : g_(graph), opt_(options), adj_(make_adjacency(graph)) {
    const size_t cells = g_.cell_volume.size();
    eta_.assign(cells, 0.0);
    rho_.assign(cells, 0.0);
    is_sink_.assign(g_.nodes.size(), 0);
    for (int t : g_.sinks) is_sink_[t] = 1;
  }

  ModulusEstimate run();

 private:
  double edge_weight(int k, const std::vector<double>& rho) const {
    const GridEdge& e = g_.edges[k];
    if (g_.layout == DensityLayout::kEdge) return e.length * rho[k];
    if (!g_.support_begin.empty()) {
      double s = 0.0;
      for (int j = g_.support_begin[k]; j < g_.support_begin[k + 1]; ++j) {
        s += g_.support_weight[j] * rho[g_.support_cell[j]];
      }
      return e.length * s;
    }
    return 0.5 * e.length * (rho[e.tail] + rho[e.head]);
  }

  double rho_of(double eta, double w) const {
    if (eta <= 0.0) return 0.0;
    if (g_.p == 2.0) return eta / (2.0 * w);
    return std::pow(eta / (g_.p * w), 1.0 / (g_.p - 1.0));
  }

  // Multi-source Dijkstra; fills dist_ and pred_ (edge index, -1 at sources).
  void shortest_paths(const std::vector<double>& rho);
  ActivePath trace(int sink, uint64_t* hash) const;
  double path_length(const ActivePath& path) const;
  void update(ActivePath& path);
  double sweep();
  double energy(const std::vector<double>& rho) const;
  double dual_value() const;

  const GridGraph& g_;
  SolverOptions opt_;
  Adjacency adj_;
  std::vector<double> eta_;
  std::vector<double> rho_;
  std::vector<char> is_sink_;
  std::vector<double> dist_;
  std::vector<int> pred_;
  std::vector<ActivePath> paths_;
  std::unordered_set<uint64_t> seen_;
};

void Solver::shortest_paths(const std::vector<double>& rho) {
  const int n = static_cast<int>(g_.nodes.size());
  dist_.assign(n, kInf);
  pred_.assign(n, -1);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> queue;
  for (int s : g_.sources) {
    dist_[s] = 0.0;
    queue.push({0.0, s});
  }
  while (!queue.empty()) {
    const auto [d, v] = queue.top();
    queue.pop();
    if (d > dist_[v]) continue;
    for (int k = adj_.offset[v]; k < adj_.offset[v + 1]; ++k) {
      const auto [w, e] = adj_.items[k];
      const double nd = d + edge_weight(e, rho);
      if (nd < dist_[w]) {
        dist_[w] = nd;
        pred_[w] = e;
        queue.push({nd, w});
      }
    }
  }
}

ActivePath Solver::trace(int sink, uint64_t* hash) const {
  std::vector<std::pair<int, double>> terms;
  uint64_t h = 1469598103934665603ULL;
  int v = sink;
  while (pred_[v] >= 0) {
    const int k = pred_[v];
    const GridEdge& e = g_.edges[k];
    h = (h ^ static_cast<uint64_t>(k)) * 1099511628211ULL;
    if (g_.layout == DensityLayout::kEdge) {
      terms.push_back({k, e.length});
    } else if (!g_.support_begin.empty()) {
      for (int j = g_.support_begin[k]; j < g_.support_begin[k + 1]; ++j) {
        terms.push_back({g_.support_cell[j], e.length * g_.support_weight[j]});
      }
    } else {
      terms.push_back({e.tail, 0.5 * e.length});
      terms.push_back({e.head, 0.5 * e.length});
    }
    v = (e.tail == v) ? e.head : e.tail;
  }
  std::sort(terms.begin(), terms.end());
  ActivePath path;
  for (const auto& [c, a] : terms) {
    if (!path.cells.empty() && path.cells.back() == c) {
      path.coef.back() += a;
    } else {
      path.cells.push_back(c);
      path.coef.push_back(a);
    }
  }
  for (size_t i = 0; i < path.cells.size(); ++i) {
    path.quad += path.coef[i] * path.coef[i] / (2.0 * g_.cell_volume[path.cells[i]]);
  }
  *hash = h;
  return path;
}

double Solver::path_length(const ActivePath& path) const {
  double len = 0.0;
  for (size_t i = 0; i < path.cells.size(); ++i) len += path.coef[i] * rho_[path.cells[i]];
  return len;
}

// Exact maximization of the dual objective in lambda_path.
void Solver::update(ActivePath& path) {
  const size_t m = path.cells.size();
  auto apply = [&](double delta) {
    for (size_t i = 0; i < m; ++i) {
      const int c = path.cells[i];
      eta_[c] = std::max(0.0, eta_[c] + delta * path.coef[i]);
      rho_[c] = rho_of(eta_[c], g_.cell_volume[c]);
    }
    path.lambda += delta;
  };

  const double length = path_length(path);
  if (g_.p == 2.0) {
    double delta = (1.0 - length) / path.quad;
    delta = std::max(delta, -path.lambda);
    if (delta != 0.0) apply(delta);
    return;
  }

  auto phi = [&](double delta) {
    double s = 0.0;
    for (size_t i = 0; i < m; ++i) {
      const int c = path.cells[i];
      s += path.coef[i] * rho_of(std::max(0.0, eta_[c] + delta * path.coef[i]),
                                 g_.cell_volume[c]);
    }
    return s;
  };
  double lo = -path.lambda;
  if (phi(lo) >= 1.0) {
    if (lo != 0.0) apply(lo);
    return;
  }
  double hi = length < 1.0 ? std::max(path.quad, 1e-300) : 0.0;
  while (phi(hi) < 1.0) hi = 2.0 * hi + 1e-300;
  if (length < 1.0) lo = std::max(lo, 0.0);
  double x = hi;
  for (int it = 0; it < 100; ++it) {
    const double fx = phi(x) - 1.0;
    if (std::abs(fx) < 1e-14) break;
    if (fx < 0.0) {
      lo = x;
    } else {
      hi = x;
    }
    double slope = 0.0;
    for (size_t i = 0; i < m; ++i) {
      const int c = path.cells[i];
      const double eta = eta_[c] + x * path.coef[i];
      if (eta > 0.0) {
        slope += path.coef[i] * path.coef[i] * rho_of(eta, g_.cell_volume[c]) /
                 ((g_.p - 1.0) * eta);
      }
    }
    double next = slope > 0.0 ? x - fx / slope : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (hi - lo < 1e-15 * std::max(1.0, std::abs(hi))) break;
    x = next;
  }
  apply(x);
}

double Solver::sweep() {
  double worst = 0.0;
  for (ActivePath& path : paths_) {
    const double residual = 1.0 - path_length(path);
    const double violation = path.lambda > 0.0 ? std::abs(residual) : std::max(0.0, residual);
    worst = std::max(worst, violation);
    if (violation > 0.0) update(path);
  }
  return worst;
}

double Solver::energy(const std::vector<double>& rho) const {
  double e = 0.0;
  for (size_t c = 0; c < rho.size(); ++c) {
    if (rho[c] > 0.0) e += g_.cell_volume[c] * std::pow(rho[c], g_.p);
  }
  return e;
}

double Solver::dual_value() const {
  double total = 0.0;
  for (const ActivePath& path : paths_) total += path.lambda;
  return total - (g_.p - 1.0) * energy(rho_);
}

ModulusEstimate Solver::run() {
  const double tol = opt_.tol;
  const double inner_tol = 0.1 * tol;
  ModulusEstimate est;
  est.resolution = g_.resolution;
  int stalled = 0;

  for (int round = 0;; ++round) {
    if (round == 0) {
      // Seed with the natural local scale of each cell, which is already
      // the extremal profile on aligned grids.
      std::vector<double> seed(rho_.size());
      for (size_t c = 0; c < seed.size(); ++c) {
        seed[c] = std::pow(g_.cell_volume[c], -1.0 / g_.dim);
      }
      shortest_paths(seed);
    } else {
      shortest_paths(rho_);
    }
    double min_len = kInf;
    for (int t : g_.sinks) min_len = std::min(min_len, dist_[t]);
    if (round > 0 && min_len >= 1.0 - tol) {
      est.iterations = round;
      est.paths = static_cast<int>(paths_.size());
      est.duality_gap = std::max(0.0, 1.0 - min_len);
      est.lower_bound = dual_value();
      est.density = rho_;
      for (double& r : est.density) r /= min_len;
      est.m_gamma = energy(est.density);
      return est;
    }

    std::vector<int> candidates;
    for (int t : g_.sinks) {
      if (round == 0 || dist_[t] < 1.0 - tol) candidates.push_back(t);
    }
    if (round > 0) {
      std::stable_sort(candidates.begin(), candidates.end(),
                       [&](int a, int b) { return dist_[a] < dist_[b]; });
    }
    int added = 0;
    for (int t : candidates) {
      uint64_t hash = 0;
      ActivePath path = trace(t, &hash);
      if (!seen_.insert(hash).second) continue;
      paths_.push_back(std::move(path));
      ++added;
    }
    if (static_cast<int>(paths_.size()) > opt_.max_paths) {
      const double upper = min_len > 0.0 ? energy(rho_) / std::pow(min_len, g_.p) : kInf;
      throw ConvergenceError("modulus_connect: path cap exceeded", dual_value(), upper);
    }
    stalled = added == 0 ? stalled + 1 : 0;
    if (stalled > 50) {
      const double upper = min_len > 0.0 ? energy(rho_) / std::pow(min_len, g_.p) : kInf;
      throw ConvergenceError("modulus_connect: no progress", dual_value(), upper);
    }

    for (int s = 0; s < opt_.max_sweeps; ++s) {
      if (sweep() < inner_tol) break;
    }
  }
}

}  // namespace

ModulusEstimate modulus_connect(const GridGraph& graph, const SolverOptions& options) {
  if (!(options.tol > 0.0 && options.tol < 1.0)) {
    throw std::invalid_argument("modulus_connect: need 0 < tol < 1");
  }
  if (!(graph.p > 1.0)) throw std::invalid_argument("modulus_connect: need p > 1");
  validate(graph);
  Solver solver(graph, options);
  return solver.run();
}

double modulus_separate(const GridGraph& graph, const SolverOptions& options) {
  const double m = modulus_connect(graph, options).m_gamma;
  return std::pow(m, 1.0 / (1.0 - graph.dim));
}

double mo_from_gamma(double m_gamma, ShapeKind kind, int n) {
  if (!(m_gamma > 0.0)) throw std::invalid_argument("mo_from_gamma: need M > 0");
  if (n < 2) throw std::invalid_argument("mo_from_gamma: need n >= 2");
  const double area = sphere_area(n);
  const double num = kind == ShapeKind::kAnnulus ? area : 0.5 * area;
  return std::pow(num / m_gamma, 1.0 / (n - 1));
}

ModulusEstimate shape_modulus(const Shape& shape, const GridResolution& resolution,
                              const SolverOptions& options) {
  ModulusEstimate est = modulus_connect(build_grid(shape, resolution), options);
  est.mo = mo_from_gamma(est.m_gamma, shape.kind(), shape.dim());
  return est;
}

ModulusEstimate image_modulus(const MapSpec& map, const Shape& shape,
                              const GridResolution& resolution, const SolverOptions& options) {
  const GridGraph image = push_forward(build_grid(shape, resolution), map);
  ModulusEstimate est = modulus_connect(image, options);
  est.mo = mo_from_gamma(est.m_gamma, shape.kind(), shape.dim());
  return est;
}

std::vector<double> edge_density(const GridGraph& graph, const ModulusEstimate& estimate) {
  std::vector<double> out(graph.edges.size());
  for (size_t k = 0; k < graph.edges.size(); ++k) {
    const GridEdge& e = graph.edges[k];
    if (graph.layout == DensityLayout::kEdge) {
      out[k] = estimate.density[k];
    } else if (!graph.support_begin.empty()) {
      double v = 0.0;
      for (int j = graph.support_begin[k]; j < graph.support_begin[k + 1]; ++j) {
        v += graph.support_weight[j] * estimate.density[graph.support_cell[j]];
      }
      out[k] = v;
    } else {
      out[k] = 0.5 * (estimate.density[e.tail] + estimate.density[e.head]);
    }
  }
  return out;
}

void write_density_csv(const GridGraph& graph, const ModulusEstimate& estimate,
                       const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out.precision(17);
  for (int i = 1; i <= graph.dim; ++i) out << "x" << i << "_tail,";
  for (int i = 1; i <= graph.dim; ++i) out << "x" << i << "_head,";
  out << "rho,length\n";
  const std::vector<double> rho = edge_density(graph, estimate);
  for (size_t k = 0; k < graph.edges.size(); ++k) {
    const GridEdge& e = graph.edges[k];
    for (int i = 0; i < graph.dim; ++i) out << graph.nodes[e.tail](i) << ",";
    for (int i = 0; i < graph.dim; ++i) out << graph.nodes[e.head](i) << ",";
    out << rho[k] << "," << e.length << "\n";
  }
  if (!out) throw std::runtime_error("error writing " + path);
}

}  // namespace ringmod
