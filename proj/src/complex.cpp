#include "shadow_wlo/complex.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace shadow_wlo {

CellComplex::CellComplex(int num_vertices, std::vector<Edge> edges, std::vector<std::vector<SignedEdge>> faces)
    : num_vertices_(num_vertices), edges_(std::move(edges)), faces_(std::move(faces)) {
  left_.assign(edges_.size(), -1);
  right_.assign(edges_.size(), -1);
  for (int f = 0; f < num_faces(); ++f)
    for (const auto& s : faces_[f]) {
      if (s.edge < 0 || s.edge >= num_edges()) throw std::invalid_argument("CellComplex: edge index out of range");
      (s.dir > 0 ? left_ : right_)[s.edge] = f;
    }
}

CellComplex CellComplex::from_polygons(int num_vertices, const std::vector<std::vector<int>>& cycles) {
  std::map<std::pair<int, int>, int> index;
  std::vector<Edge> edges;
  std::vector<std::vector<SignedEdge>> faces;
  for (const auto& cyc : cycles) {
    std::vector<SignedEdge> face;
    for (std::size_t j = 0; j < cyc.size(); ++j) {
      const int a = cyc[j], b = cyc[(j + 1) % cyc.size()];
      const auto key = std::minmax(a, b);
      auto it = index.find(key);
      if (it == index.end()) {
        it = index.emplace(key, static_cast<int>(edges.size())).first;
        edges.push_back({key.first, key.second});
      }
      face.push_back({it->second, a == edges[it->second].tail ? 1 : -1});
    }
    faces.push_back(std::move(face));
  }
  return CellComplex(num_vertices, std::move(edges), std::move(faces));
}

std::vector<int> CellComplex::face_vertices(int f) const {
  std::vector<int> out;
  for (const auto& s : faces_[f]) out.push_back(start(s));
  return out;
}

std::vector<std::vector<std::pair<int, int>>> CellComplex::vertex_stars() const {
  // corner (f, j) sits at start of side j; next counterclockwise corner is across side j-1
  std::map<std::pair<int, int>, std::pair<int, int>> occurrence;  // (edge, dir) -> (face, pos)
  for (int f = 0; f < num_faces(); ++f)
    for (int j = 0; j < static_cast<int>(faces_[f].size()); ++j)
      occurrence[{faces_[f][j].edge, faces_[f][j].dir}] = {f, j};
  std::vector<std::vector<std::pair<int, int>>> stars(num_vertices_);
  std::set<std::pair<int, int>> seen;
  for (int f = 0; f < num_faces(); ++f)
    for (int j = 0; j < static_cast<int>(faces_[f].size()); ++j) {
      if (seen.count({f, j})) continue;
      const int v = start(faces_[f][j]);
      if (!stars[v].empty()) continue;  // second orbit at v, reported by polyhedral_defect
      std::pair<int, int> cur{f, j};
      for (int guard = 0; guard <= 2 * num_edges(); ++guard) {
        if (seen.count(cur)) break;
        seen.insert(cur);
        stars[v].push_back(cur);
        const auto& face = faces_[cur.first];
        const SignedEdge in = face[(cur.second + static_cast<int>(face.size()) - 1) % face.size()];
        auto it = occurrence.find({in.edge, -in.dir});
        if (it == occurrence.end()) break;
        cur = it->second;
      }
    }
  return stars;
}

std::string CellComplex::polyhedral_defect() const {
  std::ostringstream os;
  for (int e = 0; e < num_edges(); ++e) {
    int plus = 0, minus = 0;
    for (const auto& face : faces_)
      for (const auto& s : face)
        if (s.edge == e) ++(s.dir > 0 ? plus : minus);
    if (plus != 1 || minus != 1) {
      os << "edge " << e << " is not traversed once in each direction";
      return os.str();
    }
    if (edges_[e].tail == edges_[e].head) {
      os << "edge " << e << " is a loop";
      return os.str();
    }
    if (left_[e] == right_[e]) {
      os << "face " << left_[e] << " is adjacent to itself across edge " << e;
      return os.str();
    }
  }
  std::set<std::pair<int, int>> pairs, face_pairs;
  for (const auto& e : edges_)
    if (!pairs.insert(std::minmax(e.tail, e.head)).second) {
      os << "two edges join vertices " << e.tail << " and " << e.head;
      return os.str();
    }
  for (int e = 0; e < num_edges(); ++e)
    if (!face_pairs.insert(std::minmax(left_[e], right_[e])).second) {
      os << "faces " << left_[e] << " and " << right_[e] << " share more than one edge";
      return os.str();
    }
  for (int f = 0; f < num_faces(); ++f) {
    const auto& face = faces_[f];
    if (face.size() < 3) {
      os << "face " << f << " has fewer than three sides";
      return os.str();
    }
    for (std::size_t j = 0; j < face.size(); ++j)
      if (end(face[j]) != start(face[(j + 1) % face.size()])) {
        os << "face " << f << " is not a closed cycle";
        return os.str();
      }
    auto vs = face_vertices(f);
    std::sort(vs.begin(), vs.end());
    if (std::adjacent_find(vs.begin(), vs.end()) != vs.end()) {
      os << "face " << f << " repeats a vertex";
      return os.str();
    }
  }
  const auto stars = vertex_stars();
  std::vector<int> degree(num_vertices_, 0);
  for (const auto& e : edges_) {
    ++degree[e.tail];
    ++degree[e.head];
  }
  for (int v = 0; v < num_vertices_; ++v) {
    if (static_cast<int>(stars[v].size()) != degree[v] || degree[v] < 3) {
      os << "vertex " << v << " does not have a disk neighbourhood";
      return os.str();
    }
    std::set<int> fs;
    for (auto [f, j] : stars[v]) fs.insert(f);
    if (fs.size() != stars[v].size()) {
      os << "vertex " << v << " meets a face twice";
      return os.str();
    }
  }
  return {};
}

CellComplex subdivide(const CellComplex& c) {
  const int V = c.num_vertices(), E = c.num_edges();
  auto mid = [&](int e) { return V + e; };
  auto ctr = [&](int f) { return V + E + f; };
  std::vector<Edge> edges(4 * E);
  for (int e = 0; e < E; ++e) {
    edges[2 * e] = {c.edges()[e].tail, mid(e)};
    edges[2 * e + 1] = {mid(e), c.edges()[e].head};
    edges[2 * E + 2 * e] = {ctr(c.right_face(e)), mid(e)};
    edges[2 * E + 2 * e + 1] = {mid(e), ctr(c.left_face(e))};
  }
  std::vector<std::vector<SignedEdge>> faces;
  for (int f = 0; f < c.num_faces(); ++f) {
    const auto& face = c.faces()[f];
    const int n = static_cast<int>(face.size());
    for (int j = 0; j < n; ++j) {
      const SignedEdge out = face[j], in = face[(j + n - 1) % n];
      // v -> mid(out) -> centre -> mid(in) -> v
      std::vector<SignedEdge> q(4);
      q[0] = out.dir > 0 ? SignedEdge{2 * out.edge, 1} : SignedEdge{2 * out.edge + 1, -1};
      q[1] = out.dir > 0 ? SignedEdge{2 * E + 2 * out.edge + 1, 1} : SignedEdge{2 * E + 2 * out.edge, -1};
      q[2] = in.dir > 0 ? SignedEdge{2 * E + 2 * in.edge + 1, -1} : SignedEdge{2 * E + 2 * in.edge, 1};
      q[3] = in.dir > 0 ? SignedEdge{2 * in.edge + 1, 1} : SignedEdge{2 * in.edge, -1};
      faces.push_back(std::move(q));
    }
  }
  return CellComplex(V + E + c.num_faces(), std::move(edges), std::move(faces));
}

CellComplex dual_complex(const CellComplex& c) {
  std::vector<Edge> edges(c.num_edges());
  for (int e = 0; e < c.num_edges(); ++e) edges[e] = {c.right_face(e), c.left_face(e)};
  std::vector<std::vector<SignedEdge>> faces;
  for (const auto& star : c.vertex_stars()) {
    std::vector<SignedEdge> face;
    for (auto [f, j] : star) {
      const auto& fc = c.faces()[f];
      const SignedEdge in = fc[(j + fc.size() - 1) % fc.size()];
      // crossing from f to the next face; f is on the left of `in` iff in.dir > 0
      face.push_back({in.edge, -in.dir});
    }
    faces.push_back(std::move(face));
  }
  return CellComplex(c.num_faces(), std::move(edges), std::move(faces));
}

CellComplex cube_complex() {
  // vertex id = x + 2y + 4z, faces counterclockwise seen from outside
  return CellComplex::from_polygons(
      8, {{0, 2, 3, 1}, {4, 5, 7, 6}, {0, 1, 5, 4}, {2, 6, 7, 3}, {0, 4, 6, 2}, {1, 3, 7, 5}});
}

CellComplex polygon_surface(int genus) {
  if (genus < 1) throw std::invalid_argument("polygon_surface: genus must be >= 1");
  std::vector<Edge> edges(2 * genus, Edge{0, 0});
  std::vector<SignedEdge> face;
  for (int i = 0; i < genus; ++i) {
    const int a = 2 * i, b = 2 * i + 1;
    face.insert(face.end(), {{a, 1}, {b, 1}, {a, -1}, {b, -1}});
  }
  return CellComplex(1, std::move(edges), {face});
}

SurfaceComplex::SurfaceComplex(CellComplex k1, int genus, HodgeConvention hodge)
    : genus_(genus), k1_(std::move(k1)), hodge_(hodge) {
  if (const auto defect = k1_.polyhedral_defect(); !defect.empty())
    throw std::invalid_argument("SurfaceComplex: " + defect);
  if (k1_.euler_characteristic() != 2 - 2 * genus)
    throw std::invalid_argument("SurfaceComplex: Euler characteristic does not match the genus");
  k2_ = dual_complex(k1_);
  if (const auto defect = k2_.polyhedral_defect(); !defect.empty())
    throw std::invalid_argument("SurfaceComplex: dual complex: " + defect);
  qk_ = subdivide(k1_);
  corner_offset_.resize(k1_.num_faces() + 1, 0);
  for (int f = 0; f < k1_.num_faces(); ++f)
    corner_offset_[f + 1] = corner_offset_[f] + static_cast<int>(k1_.faces()[f].size());
}

VertexKind SurfaceComplex::kind(int qv) const {
  if (qv < k1_.num_vertices()) return VertexKind::primal;
  if (qv < k1_.num_vertices() + k1_.num_edges()) return VertexKind::mid;
  return VertexKind::dual;
}

int SurfaceComplex::parent_k_edge(int qe) const {
  const int E = k1_.num_edges();
  return qe < 2 * E ? qe / 2 : E + (qe - 2 * E) / 2;
}

Eigen::VectorXd SurfaceComplex::coboundary(const Eigen::VectorXd& c) const {
  Eigen::VectorXd d(qk_.num_edges());
  for (int e = 0; e < qk_.num_edges(); ++e) d[e] = c[qk_.edges()[e].head] - c[qk_.edges()[e].tail];
  return d;
}

Eigen::VectorXd SurfaceComplex::project_to_k(const Eigen::VectorXd& c) const {
  Eigen::VectorXd x(num_k_edges());
  for (int k = 0; k < num_k_edges(); ++k) x[k] = 0.5 * (c[2 * k] + c[2 * k + 1]);
  return x;
}

Eigen::VectorXd SurfaceComplex::psi(const Eigen::VectorXd& x) const {
  Eigen::VectorXd c(qk_.num_edges());
  for (int k = 0; k < num_k_edges(); ++k) c[2 * k] = c[2 * k + 1] = x[k];
  return c;
}

Eigen::MatrixXd SurfaceComplex::hodge_matrix() const {
  const int E = k1_.num_edges();
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(2 * E, 2 * E);
  for (int e = 0; e < E; ++e) {
    H(e, E + e) = hodge_.sign_k2;
    H(E + e, e) = hodge_.sign_k1;
  }
  return H;
}

Eigen::VectorXd SurfaceComplex::hodge(const Eigen::VectorXd& x) const {
  const int E = k1_.num_edges();
  Eigen::VectorXd y(2 * E);
  y.head(E) = hodge_.sign_k2 * x.tail(E);
  y.tail(E) = hodge_.sign_k1 * x.head(E);
  return y;
}

std::vector<int> SurfaceComplex::closed_star(int v) const {
  std::set<int> out{v};
  for (int f = 0; f < qk_.num_faces(); ++f) {
    const auto vs = qk_.face_vertices(f);
    if (std::find(vs.begin(), vs.end(), v) != vs.end()) out.insert(vs.begin(), vs.end());
  }
  return {out.begin(), out.end()};
}

bool SurfaceComplex::is_affine(const Eigen::VectorXd& c, double tol) const {
  for (int f = 0; f < qk_.num_faces(); ++f) {
    const auto p = qk_.face_vertices(f);
    if (std::abs(c[p[0]] + c[p[2]] - c[p[1]] - c[p[3]]) > tol) return false;
  }
  return true;
}

Eigen::MatrixXd SurfaceComplex::b0_basis(int sigma0) const {
  const int n = qk_.num_vertices();
  const auto star = closed_star(sigma0);
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(qk_.num_faces() + static_cast<int>(star.size()), n);
  int row = 0;
  for (int f = 0; f < qk_.num_faces(); ++f, ++row) {
    const auto p = qk_.face_vertices(f);
    A(row, p[0]) += 1;
    A(row, p[2]) += 1;
    A(row, p[1]) -= 1;
    A(row, p[3]) -= 1;
  }
  for (int v : star) {
    if (v != sigma0) {
      A(row, v) = 1;
      A(row, sigma0) = -1;
    }
    ++row;
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
  return lu.kernel();
}

bool SurfaceComplex::kernel_check_b0(int sigma0) const {
  const Eigen::MatrixXd basis = b0_basis(sigma0);
  // pi d as a matrix, applied to each basis column
  Eigen::MatrixXd image(num_k_edges(), basis.cols());
  for (int j = 0; j < basis.cols(); ++j) image.col(j) = project_to_k(coboundary(basis.col(j)));
  Eigen::FullPivLU<Eigen::MatrixXd> lu(image);
  lu.setThreshold(1e-10);
  if (basis.cols() - lu.rank() != 1) return false;
  // the one-dimensional kernel must be the constants
  const Eigen::VectorXd k = basis * lu.kernel().col(0);
  return (k.array() - k[0]).abs().maxCoeff() < 1e-9 * std::max(1.0, k.cwiseAbs().maxCoeff());
}

SurfaceComplex build_standard_surface(int genus, int refinement, HodgeConvention hodge) {
  if (genus < 0) throw std::invalid_argument("build_standard_surface: genus must be >= 0");
  if (refinement < 1) throw std::invalid_argument("build_standard_surface: refinement must be >= 1");
  CellComplex c = genus == 0 ? cube_complex() : polygon_surface(genus);
  for (int i = 0; i < refinement; ++i) c = subdivide(c);
  if (const auto defect = c.polyhedral_defect(); !defect.empty())
    throw std::invalid_argument("build_standard_surface: refinement too small (" + defect + ")");
  return SurfaceComplex(std::move(c), genus, hodge);
}

}  // namespace shadow_wlo
