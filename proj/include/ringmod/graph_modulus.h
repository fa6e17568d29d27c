#ifndef RINGMOD_GRAPH_MODULUS_H_
#define RINGMOD_GRAPH_MODULUS_H_

#include <string>
#include <vector>

#include "ringmod/geometry.h"
#include "ringmod/maps.h"

namespace ringmod {

// Where the unknown density lives.
//   kEdge    one value per edge; an edge contributes length * rho_e to a path.
//   kVertex  one value per node; an edge (v, w) contributes
//            length * (rho_v + rho_w) / 2 (trapezoidal rule).
// The energy is sum_c volume_c * rho_c^p over density cells c in both cases.
enum class DensityLayout { kEdge, kVertex };

struct GridResolution {
  int radial = 16;   // node shells between the two boundaries, inclusive
  int angular = 64;  // nodes around the (hemi)sphere in the azimuthal angle
  int stencil = 1;   // neighbor offsets up to this size in index space

  std::string to_string() const;
};

struct GridEdge {
  int tail = 0;
  int head = 0;
  double length = 0.0;
};

struct GridGraph {
  int dim = 2;
  double p = 2.0;
  std::vector<Vector> nodes;
  std::vector<GridEdge> edges;
  std::vector<int> sources;
  std::vector<int> sinks;
  DensityLayout layout = DensityLayout::kEdge;
  // One entry per density cell: per edge or per node depending on layout.
  std::vector<double> cell_volume;
  GridResolution resolution;
  // Optional, vertex layout only. When nonempty, edge k is charged
  //   length * sum_j support_weight[j] * rho[support_cell[j]]
  // for j in [support_begin[k], support_begin[k + 1]) instead of the
  // endpoint average. Long stencil edges use it to sample the density at
  // the lattice points they pass over.
  std::vector<int> support_begin;
  std::vector<int> support_cell;
  std::vector<double> support_weight;
};

// Throws std::invalid_argument if the invariants fail: nonempty disjoint
// terminal sets, positive lengths and volumes, consistent edge supports,
// source and sink connected.
void validate(const GridGraph& graph);

// Product grid aligned with the shape: log-uniform shells, uniform azimuth
// (and polar angle for n = 3), vertex densities. With stencil k > 1 every
// primitive index offset of max-norm <= k becomes an edge, charged along
// the digital line of lattice points it crosses. Apollonian semirings are
// built in bipolar coordinates, i.e. as the image of a half-semiring grid
// under the inversion that straightens the Apollonian spheres. Supports
// n in {2, 3}; resolution counts must be >= 8.
GridGraph build_grid(const Shape& shape, const GridResolution& resolution);

// Push a graph through a map: nodes move, edge lengths become image chords,
// cell volumes are scaled by |J|.
GridGraph push_forward(const GridGraph& graph, const MapSpec& map);

struct SolverOptions {
  double tol = 1e-3;
  int max_paths = 10000;
  int max_sweeps = 20000;
};

struct ModulusEstimate {
  // Energy of the returned density, rescaled to be exactly admissible: an
  // upper bound on the discrete modulus.
  double m_gamma = 0.0;
  // Dual objective at termination: a lower bound on the discrete modulus.
  double lower_bound = 0.0;
  // Ring/semiring modulus derived from m_gamma (0 when no shape attached).
  double mo = 0.0;
  int iterations = 0;
  int paths = 0;
  // Largest admissibility violation 1 - min path length before rescaling.
  double duality_gap = 0.0;
  GridResolution resolution;
  std::vector<double> density;
};

// Discrete p-modulus of the family of source-to-sink paths by constraint
// generation: shortest-path separation over an active path set whose convex
// subproblem is solved by exact dual coordinate ascent.
ModulusEstimate modulus_connect(const GridGraph& graph, const SolverOptions& options = {});

// M(Sigma) = M(Gamma)^{1/(1-n)}.
double modulus_separate(const GridGraph& graph, const SolverOptions& options = {});

// Ring modulus (w_{n-1} / M)^{1/(n-1)}; semirings use w_{n-1} / (2 M).
double mo_from_gamma(double m_gamma, ShapeKind kind, int n);

ModulusEstimate shape_modulus(const Shape& shape, const GridResolution& resolution,
                              const SolverOptions& options = {});

// Modulus of f(shape) from the pushed-forward grid of the shape.
ModulusEstimate image_modulus(const MapSpec& map, const Shape& shape,
                              const GridResolution& resolution,
                              const SolverOptions& options = {});

// Per-edge density (the averaged endpoint value for vertex layouts).
std::vector<double> edge_density(const GridGraph& graph, const ModulusEstimate& estimate);

// CSV with header x1_tail..xn_tail,x1_head..xn_head,rho,length.
void write_density_csv(const GridGraph& graph, const ModulusEstimate& estimate,
                       const std::string& path);

}  // namespace ringmod

#endif  // RINGMOD_GRAPH_MODULUS_H_
