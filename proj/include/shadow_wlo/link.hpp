#pragma once

#include "shadow_wlo/lie.hpp"

#include <vector>

namespace shadow_wlo {

struct RibbonSpec {
  Weight color;
  int winding = 0;
  int sign = 1;     // +1: runs counterclockwise around the region it bounds
  int parent = -1;  // enclosing ribbon, -1 for the outer face
};

// Nested, non-crossing, null-homotopic ribbons on a closed surface of given genus.
struct AbstractLink {
  int genus = 0;
  std::vector<RibbonSpec> ribbons;

  int size() const { return static_cast<int>(ribbons.size()); }
  // throws std::invalid_argument on bad parents, signs or colors
  void validate(const LieData& lie) const;
  std::vector<int> children(int ribbon) const;
  // ribbon ids from the root down to r
  std::vector<int> ancestry(int r) const;
};

// Faces and per-face data of a link. Face 0 is the outer face; in the abstract encoding
// face i+1 is the face directly inside ribbon i. Embedded mode numbers faces its own way.
struct LinkGeometry {
  int genus = 0;
  std::vector<Weight> colors;
  std::vector<int> winding;
  std::vector<int> chi;                // per face
  std::vector<std::vector<int>> u;     // u[face][ribbon], values of the ribbon potentials
  std::vector<int> plus_face;          // per ribbon, adjacent face with the larger potential
  std::vector<int> minus_face;

  int num_faces() const { return static_cast<int>(chi.size()); }
  int num_ribbons() const { return static_cast<int>(colors.size()); }
  int gleam(int face) const;
  int euler_sum() const;
};

LinkGeometry abstract_geometry(const AbstractLink& link);

}  // namespace shadow_wlo
