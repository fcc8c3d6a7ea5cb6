#pragma once

#include "shadow_wlo/discrete.hpp"
#include "shadow_wlo/link.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace shadow_wlo {

// A link realised by simplicial ribbons in qK x Z_N. Each nesting chain sits on its own
// chimney (a tube of quads glued over a base face); ribbon i runs around one ring of it.
struct EmbeddedLink {
  SurfaceComplex surface;
  AbstractLink spec;
  int N = 0;
  std::vector<RibbonLoop> loops;
  std::vector<std::vector<int>> quads;  // qK faces swept by each ribbon, in order
  int sigma0 = 0;                       // base vertex, off every ribbon
};

// throws std::invalid_argument when the link is not a forest of chains or N is too small
EmbeddedLink embed_link(const AbstractLink& link, int refinement, int N, HodgeConvention hodge = {});

struct FramingReport {
  bool closed = true;  // l and l' return to their start
  bool fc1 = true;     // l, l' images pairwise disjoint
  bool fc2 = true;     // ribbon quad vertices lie on l or l'
  bool fc3 = true;     // each ribbon quad has one side on l and one on l'
  bool fc4 = true;     // l and l' carry the same time labels
  bool ncp = true;     // quads of different ribbons are disjoint
  std::string detail;
  bool ok() const { return closed && fc1 && fc2 && fc3 && fc4 && ncp; }
};

FramingReport check_framing(const EmbeddedLink& link);

// the 1-cochain on K carried by ribbon i: half of the projected l and l' paths
Eigen::VectorXd ribbon_current(const EmbeddedLink& link, int ribbon);

struct RibbonPotential {
  Eigen::VectorXd f;  // on qK vertices, f(sigma0) = 0
  int orientation = 0;  // star pi d of the region indicator equals orientation * current
  bool matches_current = false;
  bool affine = false;
  double residual = 0.0;
};

RibbonPotential ribbon_potential(const EmbeddedLink& link, int ribbon);

// Connected regions of qK cut along all l paths.
struct EmbeddedFaces {
  std::vector<int> face_of_quad;
  std::vector<std::vector<int>> u;  // potential values on the closure of the non-ribbon part
  std::vector<int> chi;             // vertex count: +1 primal and dual, -1 midpoints
  std::vector<int> chi_cw;          // V - E + F of the same closure
  std::vector<int> plus_face, minus_face;
  bool potentials_constant = true;
  int num_faces() const { return static_cast<int>(chi.size()); }
};

EmbeddedFaces embedded_faces(const EmbeddedLink& link, const std::vector<RibbonPotential>& potentials);
std::vector<RibbonPotential> all_potentials(const EmbeddedLink& link);
// faces, euler characteristics and gleams read off the complex; throws std::runtime_error
// if a potential check fails
LinkGeometry embedded_geometry(const EmbeddedLink& link);

// Aggregates the embedded state sum needs.
struct EmbeddedStateData {
  int N = 0;
  std::vector<Weight> colors;
  // (potential vector, summed vertex weight) over qK vertices
  std::vector<std::pair<std::vector<int>, int>> vertex_classes;
  std::vector<std::int64_t> time_total;               // per ribbon, sum of dt + dtp
  std::vector<std::vector<std::int64_t>> rung_sums;   // [i][j]: sum over time steps of dt f_j(x) + dtp f_j(x')
};

EmbeddedStateData embedded_state_data(const EmbeddedLink& link);

// covariance of l against l' sources for a fixed generic regular B
CovarianceReport embedded_covariance_check(const EmbeddedLink& link, const LieData& lie);

}  // namespace shadow_wlo
