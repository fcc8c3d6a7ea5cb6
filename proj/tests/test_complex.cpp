#include <doctest.h>

#include "shadow_wlo/complex.hpp"

#include <random>
#include <set>
#include <stdexcept>

using namespace shadow_wlo;

TEST_SUITE("complex") {

TEST_CASE("cube and polygon surfaces are closed with the right euler characteristic") {
  const auto cube = cube_complex();
  CHECK(cube.polyhedral_defect().empty());
  CHECK(cube.euler_characteristic() == 2);
  for (int g = 1; g <= 3; ++g) {
    const auto p = polygon_surface(g);
    CHECK(p.euler_characteristic() == 2 - 2 * g);
    // one vertex with 2g loops is a valid surface but not polyhedral
    CHECK_FALSE(p.polyhedral_defect().empty());
  }
}

TEST_CASE("every edge lies between two distinct faces, once each way") {
  const auto c = subdivide(cube_complex());
  std::vector<int> seen(c.num_edges(), 0);
  for (const auto& f : c.faces())
    for (const auto& s : f) seen[s.edge] += s.dir;
  for (int e = 0; e < c.num_edges(); ++e) {
    CHECK(seen[e] == 0);
    CHECK(c.left_face(e) != c.right_face(e));
  }
}

TEST_CASE("subdivision census") {
  for (int g = 0; g <= 2; ++g) {
    CellComplex c = g == 0 ? cube_complex() : polygon_surface(g);
    for (int step = 0; step < 2; ++step) {
      const auto s = subdivide(c);
      CAPTURE(g);
      CHECK(s.num_vertices() == c.num_vertices() + c.num_edges() + c.num_faces());
      CHECK(s.num_edges() == 4 * c.num_edges());
      CHECK(s.num_faces() == 2 * c.num_edges());
      CHECK(s.euler_characteristic() == c.euler_characteristic());
      for (const auto& f : s.faces()) CHECK(f.size() == 4);
      c = s;
    }
  }
}

TEST_CASE("dual of the dual has the original shape") {
  const auto c = subdivide(cube_complex());
  const auto d = dual_complex(c);
  CHECK(d.num_vertices() == c.num_faces());
  CHECK(d.num_faces() == c.num_vertices());
  CHECK(d.polyhedral_defect().empty());
  const auto dd = dual_complex(d);
  CHECK(dd.num_vertices() == c.num_vertices());
  CHECK(dd.num_edges() == c.num_edges());
  // dual of dual reverses every edge
  for (int e = 0; e < c.num_edges(); ++e) {
    CHECK(dd.edges()[e].tail == c.edges()[e].head);
    CHECK(dd.edges()[e].head == c.edges()[e].tail);
  }
}

TEST_CASE("standard surfaces") {
  struct Row {
    int g, ref, v, e, f;
  };
  for (const Row& r : {Row{0, 1, 26, 48, 24}, Row{0, 2, 98, 192, 96}, Row{1, 2, 16, 32, 16}, Row{1, 3, 64, 128, 64},
                       Row{2, 2, 30, 64, 32}}) {
    CAPTURE(r.g);
    CAPTURE(r.ref);
    const auto sc = build_standard_surface(r.g, r.ref);
    CHECK(sc.k1().num_vertices() == r.v);
    CHECK(sc.k1().num_edges() == r.e);
    CHECK(sc.k1().num_faces() == r.f);
    CHECK(sc.k2().euler_characteristic() == 2 - 2 * r.g);
    CHECK(sc.qk().num_vertices() == r.v + r.e + r.f);
    CHECK(sc.qk().num_edges() == 4 * r.e);
    CHECK(sc.kernel_check_b0(0));
  }
}

TEST_CASE("degenerate refinements are rejected") {
  CHECK_THROWS_AS(build_standard_surface(1, 1), std::invalid_argument);
  CHECK_THROWS_AS(build_standard_surface(2, 1), std::invalid_argument);
  CHECK_THROWS_AS(build_standard_surface(0, 0), std::invalid_argument);
}

TEST_CASE("vertex kinds and halves") {
  const auto sc = build_standard_surface(0, 1);
  const int V = sc.k1().num_vertices(), E = sc.k1().num_edges();
  CHECK(sc.kind(0) == VertexKind::primal);
  CHECK(sc.kind(V) == VertexKind::mid);
  CHECK(sc.kind(V + E) == VertexKind::dual);
  const auto& q = sc.qk().edges();
  for (int e = 0; e < E; ++e) {
    CHECK(q[sc.primal_half(e, 0)].tail == sc.k1().edges()[e].tail);
    CHECK(q[sc.primal_half(e, 0)].head == sc.midpoint(e));
    CHECK(q[sc.primal_half(e, 1)].head == sc.k1().edges()[e].head);
    CHECK(q[sc.dual_half(e, 0)].tail == sc.centre(sc.k1().right_face(e)));
    CHECK(q[sc.dual_half(e, 1)].head == sc.centre(sc.k1().left_face(e)));
    CHECK(sc.parent_k_edge(sc.primal_half(e, 1)) == e);
    CHECK(sc.parent_k_edge(sc.dual_half(e, 0)) == E + e);
  }
}

TEST_CASE("projection after psi is the identity, a single half projects to one half") {
  const auto sc = build_standard_surface(0, 1);
  std::mt19937_64 rng(11);
  std::normal_distribution<double> nd;
  Eigen::VectorXd x(sc.num_k_edges());
  for (auto& v : x) v = nd(rng);
  CHECK((sc.project_to_k(sc.psi(x)) - x).norm() < 1e-14);
  Eigen::VectorXd h = Eigen::VectorXd::Zero(sc.qk().num_edges());
  h[sc.dual_half(3, 1)] = 1.0;
  const auto p = sc.project_to_k(h);
  CHECK(p[sc.k1().num_edges() + 3] == doctest::Approx(0.5));
  CHECK(p.sum() == doctest::Approx(0.5));
}

TEST_CASE("coboundary of a vertex indicator") {
  const auto sc = build_standard_surface(0, 1);
  Eigen::VectorXd c = Eigen::VectorXd::Zero(sc.qk().num_vertices());
  const int v = 5;
  c[v] = 1.0;
  const auto d = sc.coboundary(c);
  int touched = 0;
  for (int e = 0; e < sc.qk().num_edges(); ++e) {
    const auto& ed = sc.qk().edges()[e];
    const double want = (ed.head == v) - (ed.tail == v);
    CHECK(d[e] == want);
    touched += want != 0;
  }
  CHECK(touched == static_cast<int>(sc.qk().vertex_stars()[v].size()));
  // constants are closed
  CHECK(sc.coboundary(Eigen::VectorXd::Ones(sc.qk().num_vertices())).norm() == 0.0);
}

TEST_CASE("hodge sign conventions") {
  const auto sc = build_standard_surface(0, 1);
  const int E = sc.k1().num_edges();
  const auto H = sc.hodge_matrix();
  CHECK(H(0, E) == -1);
  CHECK(H(E, 0) == 1);
  // star star = -1 on one-forms
  CHECK((H * H + Eigen::MatrixXd::Identity(2 * E, 2 * E)).norm() == 0.0);
  const auto flipped = build_standard_surface(0, 1, HodgeConvention{1, 1});
  const auto F = flipped.hodge_matrix();
  CHECK((F * F - Eigen::MatrixXd::Identity(2 * E, 2 * E)).norm() == 0.0);
  Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(2 * E, -1.0, 1.0);
  CHECK((sc.hodge(x) - H * x).norm() < 1e-14);
}

TEST_CASE("affine cochains") {
  const auto sc = build_standard_surface(0, 1);
  CHECK(sc.is_affine(Eigen::VectorXd::Constant(sc.qk().num_vertices(), 3.0)));
  Eigen::VectorXd c = Eigen::VectorXd::Zero(sc.qk().num_vertices());
  c[sc.centre(0)] = 1.0;
  CHECK_FALSE(sc.is_affine(c));
  const auto basis = sc.b0_basis(0);
  for (int j = 0; j < basis.cols(); ++j) CHECK(sc.is_affine(basis.col(j), 1e-10));
  // constant on the closed star of the base vertex, up to the constant mode
  for (int j = 0; j < basis.cols(); ++j)
    for (int v : sc.closed_star(0)) CHECK(basis(v, j) == doctest::Approx(basis(0, j)).epsilon(1e-10));
}

TEST_CASE("closed stars") {
  const auto sc = build_standard_surface(0, 1);
  // a primal vertex of degree 3 on the cube: 3 quads, 7 vertices
  const auto star = sc.closed_star(0);
  CHECK(std::set<int>(star.begin(), star.end()).size() == star.size());
  CHECK(star.size() == 7);
}

}  // TEST_SUITE
