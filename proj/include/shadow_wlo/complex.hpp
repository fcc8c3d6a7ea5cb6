#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace shadow_wlo {

struct Edge {
  int tail = 0;
  int head = 0;
};

// an edge traversed forwards (+1) or backwards (-1)
struct SignedEdge {
  int edge = -1;
  int dir = 1;
  bool valid() const { return edge >= 0; }
};

// Oriented closed surface given by vertices, oriented edges and counterclockwise face cycles.
class CellComplex {
 public:
  CellComplex() = default;
  CellComplex(int num_vertices, std::vector<Edge> edges, std::vector<std::vector<SignedEdge>> faces);
  // faces as vertex cycles; one edge per unordered vertex pair, oriented low -> high
  static CellComplex from_polygons(int num_vertices, const std::vector<std::vector<int>>& cycles);

  int num_vertices() const { return num_vertices_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  int num_faces() const { return static_cast<int>(faces_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<std::vector<SignedEdge>>& faces() const { return faces_; }
  int euler_characteristic() const { return num_vertices_ - num_edges() + num_faces(); }

  // face having the edge on its left (traversed +1), resp. right
  int left_face(int e) const { return left_[e]; }
  int right_face(int e) const { return right_[e]; }
  int start(const SignedEdge& s) const { return s.dir > 0 ? edges_[s.edge].tail : edges_[s.edge].head; }
  int end(const SignedEdge& s) const { return s.dir > 0 ? edges_[s.edge].head : edges_[s.edge].tail; }
  std::vector<int> face_vertices(int f) const;

  // counterclockwise faces around each vertex, as (face, position of the corner in that face)
  std::vector<std::vector<std::pair<int, int>>> vertex_stars() const;

  // empty string when the complex is a closed oriented surface whose cells and dual cells
  // are embedded polygons; otherwise the first problem found
  std::string polyhedral_defect() const;

 private:
  int num_vertices_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<SignedEdge>> faces_;
  std::vector<int> left_, right_;
};

// Topological Catmull-Clark step. Vertices: old vertices, then edge midpoints, then face centres.
// Edge 2e / 2e+1 are the halves tail->mid / mid->head of old edge e; edge 2E+2e is
// centre(right)->mid and 2E+2e+1 is mid->centre(left). One quad per face corner.
CellComplex subdivide(const CellComplex& c);
// vertices are the faces of c, edge e runs right(e) -> left(e), faces are the vertex stars
CellComplex dual_complex(const CellComplex& c);

CellComplex cube_complex();
// one vertex, 2g edges, one 4g-gon with boundary word a1 b1 a1^-1 b1^-1 ...
CellComplex polygon_surface(int genus);

enum class VertexKind { primal, mid, dual };

struct HodgeConvention {
  int sign_k1 = 1;   // (star_K1 x)(e') = sign_k1 x(e)
  int sign_k2 = -1;  // (star_K2 y)(e) = sign_k2 y(e')
};

// K1, its dual K2 and the joint subdivision qK.
class SurfaceComplex {
 public:
  SurfaceComplex(CellComplex k1, int genus, HodgeConvention hodge = {});

  int genus() const { return genus_; }
  const CellComplex& k1() const { return k1_; }
  const CellComplex& k2() const { return k2_; }
  const CellComplex& qk() const { return qk_; }
  const HodgeConvention& hodge() const { return hodge_; }

  int num_k_edges() const { return 2 * k1_.num_edges(); }  // K1 edges then K2 edges
  VertexKind kind(int qv) const;
  int midpoint(int e) const { return k1_.num_vertices() + e; }
  int centre(int f) const { return k1_.num_vertices() + k1_.num_edges() + f; }
  // qK halves of K1 edge e (0: at tail, 1: at head) and of its dual (0: right side, 1: left side)
  int primal_half(int e, int which) const { return 2 * e + which; }
  int dual_half(int e, int which) const { return 2 * k1_.num_edges() + 2 * e + which; }
  // K edge containing a qK edge (K1 edges first)
  int parent_k_edge(int qe) const;
  // qK face of the corner (K1 face f, position j)
  int corner_quad(int f, int j) const { return corner_offset_[f] + j; }

  // coboundary on qK: (d c)(e) = c(head) - c(tail)
  Eigen::VectorXd coboundary(const Eigen::VectorXd& c) const;
  // orthogonal projection C^1(qK) -> C^1(K): mean of the two halves
  Eigen::VectorXd project_to_k(const Eigen::VectorXd& c) const;
  // C^1(K) -> C^1(qK), each K edge to the sum of its halves
  Eigen::VectorXd psi(const Eigen::VectorXd& x) const;
  // star_K on C^1(K) = C^1(K1) + C^1(K2)
  Eigen::MatrixXd hodge_matrix() const;
  Eigen::VectorXd hodge(const Eigen::VectorXd& x) const;

  // qK vertices sharing a qK face with v (v included)
  std::vector<int> closed_star(int v) const;
  // basis (columns) of B_0(qK): affine 0-cochains constant on the closed star of sigma0
  Eigen::MatrixXd b0_basis(int sigma0) const;
  // true iff ker(pi d) on B_0(qK) is exactly the constants
  bool kernel_check_b0(int sigma0 = 0) const;
  // diagonal sums agree on every qK quad
  bool is_affine(const Eigen::VectorXd& c, double tol = 1e-12) const;

 private:
  int genus_ = 0;
  CellComplex k1_, k2_, qk_;
  HodgeConvention hodge_;
  std::vector<int> corner_offset_;
};

// refined cube (g = 0) or refined 4g-gon; throws if the result is not polyhedral
SurfaceComplex build_standard_surface(int genus, int refinement, HodgeConvention hodge = {});

}  // namespace shadow_wlo
