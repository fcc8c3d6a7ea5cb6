#include "shadow_wlo/embedded.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace shadow_wlo {

namespace {

using VertexPair = std::pair<int, int>;

std::map<VertexPair, int> edge_index(const CellComplex& c) {
  std::map<VertexPair, int> out;
  for (int e = 0; e < c.num_edges(); ++e) out[std::minmax(c.edges()[e].tail, c.edges()[e].head)] = e;
  return out;
}

SignedEdge oriented(const CellComplex& c, const std::map<VertexPair, int>& index, int from, int to) {
  const auto it = index.find(std::minmax(from, to));
  if (it == index.end()) throw std::logic_error("embed_link: missing edge");
  return {it->second, c.edges()[it->second].tail == from ? 1 : -1};
}

// where one ribbon sits: the ring it runs along, the ring below, and the K1 faces between them
struct Ring {
  std::vector<int> top, below, faces;
};

struct Plan {
  CellComplex k1;
  std::vector<Ring> rings;  // per ribbon
};

Plan plan_chimneys(const AbstractLink& link, int refinement) {
  const CellComplex base = build_standard_surface(link.genus, refinement).k1();
  std::vector<std::vector<int>> cycles;
  for (int f = 0; f < base.num_faces(); ++f) cycles.push_back(base.face_vertices(f));
  int nv = base.num_vertices();

  std::vector<std::vector<int>> chains;
  for (int root : link.children(-1)) {
    std::vector<int> chain{root};
    for (;;) {
      const auto kids = link.children(chain.back());
      if (kids.empty()) break;
      if (kids.size() > 1)
        throw std::invalid_argument("embedded mode supports nested chains only; ribbon " +
                                    std::to_string(chain.back()) + " has several children");
      chain.push_back(kids[0]);
    }
    chains.push_back(chain);
  }

  Plan plan;
  plan.rings.resize(link.size());
  std::vector<bool> used(nv, false);
  std::vector<bool> removed(cycles.size(), false);
  int next_face = 0;
  for (const auto& chain : chains) {
    // first base quad sharing no vertex with an earlier chimney
    while (next_face < base.num_faces()) {
      const auto& cyc = cycles[next_face];
      if (cyc.size() == 4 && std::none_of(cyc.begin(), cyc.end(), [&](int v) { return used[v]; })) break;
      ++next_face;
    }
    if (next_face == base.num_faces()) throw std::invalid_argument("embed_link: surface too coarse for this link");
    const std::vector<int> base_cycle = cycles[next_face];
    for (int v : base_cycle) used[v] = true;
    removed[next_face] = true;
    ++next_face;

    const int h = static_cast<int>(chain.size());
    std::vector<std::vector<int>> layer{base_cycle};
    for (int j = 1; j <= h; ++j) {
      std::vector<int> ring;
      for (int i = 0; i < 4; ++i) ring.push_back(nv++);
      std::vector<int> faces;
      for (int i = 0; i < 4; ++i) {
        const auto& lo = layer[j - 1];
        faces.push_back(static_cast<int>(cycles.size()));
        cycles.push_back({lo[i], lo[(i + 1) % 4], ring[(i + 1) % 4], ring[i]});
        removed.push_back(false);
      }
      layer.push_back(ring);
      // ribbon at depth j-1 runs along ring j, just above the row of side faces
      plan.rings[chain[j - 1]] = Ring{ring, layer[j - 1], faces};
    }
    cycles.push_back(layer[h]);
    removed.push_back(false);
  }

  std::vector<std::vector<int>> kept;
  std::vector<int> renumber(cycles.size(), -1);
  for (std::size_t f = 0; f < cycles.size(); ++f)
    if (!removed[f]) {
      renumber[f] = static_cast<int>(kept.size());
      kept.push_back(cycles[f]);
    }
  for (auto& r : plan.rings)
    for (int& f : r.faces) f = renumber[f];
  plan.k1 = CellComplex::from_polygons(nv, kept);
  return plan;
}

int corner_quad_at(const SurfaceComplex& sc, int f, int v) {
  const auto verts = sc.k1().face_vertices(f);
  for (std::size_t j = 0; j < verts.size(); ++j)
    if (verts[j] == v) return sc.corner_quad(f, static_cast<int>(j));
  throw std::logic_error("embed_link: vertex not on face");
}

std::vector<int> quad_vertices(const SurfaceComplex& sc, int q) { return sc.qk().face_vertices(q); }

// qK faces reachable from start without crossing a blocked qK edge
std::vector<int> flood(const SurfaceComplex& sc, int start, const std::vector<bool>& blocked_edge) {
  const auto& qk = sc.qk();
  std::vector<int> out;
  std::vector<bool> seen(qk.num_faces(), false);
  std::vector<int> stack{start};
  seen[start] = true;
  while (!stack.empty()) {
    const int q = stack.back();
    stack.pop_back();
    out.push_back(q);
    for (const auto& s : qk.faces()[q]) {
      if (blocked_edge[s.edge]) continue;
      const int other = qk.left_face(s.edge) == q ? qk.right_face(s.edge) : qk.left_face(s.edge);
      if (!seen[other]) {
        seen[other] = true;
        stack.push_back(other);
      }
    }
  }
  return out;
}

std::vector<bool> l_edges(const EmbeddedLink& link, int only = -1) {
  std::vector<bool> out(link.surface.qk().num_edges(), false);
  for (int i = 0; i < static_cast<int>(link.loops.size()); ++i) {
    if (only >= 0 && i != only) continue;
    for (const auto& st : link.loops[i].steps)
      if (st.spatial()) out[st.l.edge] = true;
  }
  return out;
}

// the qK face across an l edge of ribbon i that is not one of its quads
int inner_seed(const EmbeddedLink& link, int i) {
  const auto& qk = link.surface.qk();
  const std::set<int> own(link.quads[i].begin(), link.quads[i].end());
  for (const auto& st : link.loops[i].steps) {
    if (!st.spatial()) continue;
    for (int q : {qk.left_face(st.l.edge), qk.right_face(st.l.edge)})
      if (!own.count(q)) return q;
  }
  throw std::logic_error("ribbon has no inner side");
}

}  // namespace

EmbeddedLink embed_link(const AbstractLink& link, int refinement, int N, HodgeConvention hodge) {
  if (N < 2) throw std::invalid_argument("embed_link: N must be >= 2");
  Plan plan = plan_chimneys(link, refinement);
  SurfaceComplex sc(std::move(plan.k1), link.genus, hodge);
  const auto k1_index = edge_index(sc.k1());
  const auto qk_index = edge_index(sc.qk());

  EmbeddedLink out{sc, link, N, {}, {}, 0};
  std::set<int> image;
  for (int i = 0; i < link.size(); ++i) {
    const auto& ring = plan.rings[i];
    // rungs and spatial steps counterclockwise around the region above the ring
    struct Rung {
      int x, xp;
    };
    std::vector<Rung> rungs;
    std::vector<RibbonStep> spatial;
    std::vector<int> quads;
    for (int j = 0; j < 4; ++j) {
      const int v = ring.top[j], w = ring.top[(j + 1) % 4], f = ring.faces[j];
      const int e = oriented(sc.k1(), k1_index, v, w).edge;
      const int out_v = oriented(sc.k1(), k1_index, v, ring.below[j]).edge;
      const int out_w = oriented(sc.k1(), k1_index, w, ring.below[(j + 1) % 4]).edge;
      const int me = sc.midpoint(e), c = sc.centre(f);
      rungs.push_back({v, sc.midpoint(out_v)});
      RibbonStep a;
      a.l = oriented(sc.qk(), qk_index, v, me);
      a.lp = oriented(sc.qk(), qk_index, sc.midpoint(out_v), c);
      spatial.push_back(a);
      quads.push_back(corner_quad_at(sc, f, v));
      rungs.push_back({me, c});
      RibbonStep b;
      b.l = oriented(sc.qk(), qk_index, me, w);
      b.lp = oriented(sc.qk(), qk_index, c, sc.midpoint(out_w));
      spatial.push_back(b);
      quads.push_back(corner_quad_at(sc, f, w));
    }
    const int n = static_cast<int>(rungs.size());
    if (link.ribbons[i].sign < 0) {
      // same rungs, traversed the other way
      std::vector<Rung> r2{rungs[0]};
      std::vector<RibbonStep> s2;
      std::vector<int> q2;
      for (int k = n - 1; k >= 0; --k) {
        RibbonStep st = spatial[k];
        st.l.dir = -st.l.dir;
        st.lp.dir = -st.lp.dir;
        s2.push_back(st);
        q2.push_back(quads[k]);
        if (k > 0) r2.push_back(rungs[k]);
      }
      rungs = r2;
      spatial = s2;
      quads = q2;
    }

    const int total = link.ribbons[i].winding * N;
    const int count = std::abs(total), dir = total > 0 ? 1 : -1;
    if ((count + n - 1) / n > N - 1)
      throw std::invalid_argument("embed_link: winding of ribbon " + std::to_string(i) + " too large for N");
    RibbonLoop loop;
    for (int r = 0; r < n; ++r) {
      const int steps = count / n + (r < count % n ? 1 : 0);
      for (int s = 0; s < steps; ++s) {
        RibbonStep t;
        t.x = rungs[r].x;
        t.xp = rungs[r].xp;
        t.dt = t.dtp = dir;
        loop.steps.push_back(t);
      }
      loop.steps.push_back(spatial[r]);
    }
    out.loops.push_back(std::move(loop));
    out.quads.push_back(quads);
    for (int q : quads)
      for (int v : quad_vertices(sc, q)) image.insert(v);
  }
  for (int v = 0; v < sc.qk().num_vertices(); ++v)
    if (!image.count(v)) {
      out.sigma0 = v;
      break;
    }
  return out;
}

FramingReport check_framing(const EmbeddedLink& link) {
  const auto& qk = link.surface.qk();
  const int m = static_cast<int>(link.loops.size());
  FramingReport rep;
  auto fail = [&](bool& flag, const std::string& why) {
    if (flag && rep.detail.empty()) rep.detail = why;
    flag = false;
  };
  std::vector<std::set<int>> lv(m), lpv(m);
  std::vector<std::set<int>> le(m), lpe(m);
  for (int i = 0; i < m; ++i) {
    const auto& loop = link.loops[i];
    int at = -1, atp = -1, first = -1, firstp = -1;
    for (const auto& st : loop.steps) {
      if (!st.spatial()) {
        if (at >= 0 && (st.x != at || st.xp != atp)) fail(rep.closed, "time step off the current rung");
        continue;
      }
      const int a = qk.start(st.l), b = qk.end(st.l), ap = qk.start(st.lp), bp = qk.end(st.lp);
      if (first < 0) {
        first = a;
        firstp = ap;
      } else if (a != at || ap != atp) {
        fail(rep.closed, "ribbon " + std::to_string(i) + " is not connected");
      }
      at = b;
      atp = bp;
      lv[i].insert({a, b});
      lpv[i].insert({ap, bp});
      le[i].insert(st.l.edge);
      lpe[i].insert(st.lp.edge);
    }
    if (at != first || atp != firstp) fail(rep.closed, "ribbon " + std::to_string(i) + " does not close");
    if (loop.times(link.N) != loop.times_p(link.N) || loop.winding_steps() != loop.winding_steps_p())
      fail(rep.fc4, "ribbon " + std::to_string(i) + ": time labels of l and l' differ");
  }
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      for (int v : lv[i])
        if (lpv[j].count(v)) fail(rep.fc1, "l and l' meet");
      if (i != j)
        for (int v : lv[i])
          if (lv[j].count(v) || lpv[j].count(v)) fail(rep.fc1, "two ribbons meet");
    }
  for (int i = 0; i < m; ++i)
    for (int q : link.quads[i]) {
      int on_l = 0, on_lp = 0;
      for (const auto& s : qk.faces()[q]) {
        on_l += le[i].count(s.edge);
        on_lp += lpe[i].count(s.edge);
      }
      if (on_l != 1 || on_lp != 1) fail(rep.fc3, "ribbon quad without exactly one l and one l' side");
      for (int v : qk.face_vertices(q))
        if (!lv[i].count(v) && !lpv[i].count(v)) fail(rep.fc2, "ribbon quad vertex off l and l'");
    }
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      std::set<int> vi;
      for (int q : link.quads[i])
        for (int v : qk.face_vertices(q)) vi.insert(v);
      for (int q : link.quads[j])
        for (int v : qk.face_vertices(q))
          if (vi.count(v)) fail(rep.ncp, "ribbons " + std::to_string(i) + " and " + std::to_string(j) + " touch");
    }
  return rep;
}

Eigen::VectorXd ribbon_current(const EmbeddedLink& link, int ribbon) {
  const auto& sc = link.surface;
  Eigen::VectorXd x = Eigen::VectorXd::Zero(sc.num_k_edges());
  for (const auto& st : link.loops[ribbon].steps) {
    if (!st.spatial()) continue;
    // a half edge projects to half its parent; halves are oriented like their parents
    x[sc.parent_k_edge(st.l.edge)] += 0.25 * st.l.dir;
    x[sc.parent_k_edge(st.lp.edge)] += 0.25 * st.lp.dir;
  }
  return x;
}

RibbonPotential ribbon_potential(const EmbeddedLink& link, int ribbon) {
  const auto& sc = link.surface;
  const auto inside = flood(sc, inner_seed(link, ribbon), l_edges(link, ribbon));
  const std::set<int> own(link.quads[ribbon].begin(), link.quads[ribbon].end());
  RibbonPotential out;
  Eigen::VectorXd indicator = Eigen::VectorXd::Zero(sc.qk().num_vertices());
  for (int q : inside) {
    if (own.count(q)) return out;  // l does not separate
    for (int v : sc.qk().face_vertices(q)) indicator[v] = 1.0;
  }
  const Eigen::VectorXd m = sc.hodge(sc.project_to_k(sc.coboundary(indicator)));
  const Eigen::VectorXd cur = ribbon_current(link, ribbon);
  const double plus = (m - cur).cwiseAbs().maxCoeff(), minus = (m + cur).cwiseAbs().maxCoeff();
  out.orientation = plus <= minus ? 1 : -1;
  out.residual = std::min(plus, minus);
  out.matches_current = out.residual < 1e-12;
  out.f = out.orientation * (indicator.array() - indicator[link.sigma0]).matrix();
  out.affine = sc.is_affine(out.f);
  return out;
}

std::vector<RibbonPotential> all_potentials(const EmbeddedLink& link) {
  std::vector<RibbonPotential> out;
  for (int i = 0; i < static_cast<int>(link.loops.size()); ++i) out.push_back(ribbon_potential(link, i));
  return out;
}

EmbeddedFaces embedded_faces(const EmbeddedLink& link, const std::vector<RibbonPotential>& potentials) {
  const auto& sc = link.surface;
  const auto& qk = sc.qk();
  const int m = static_cast<int>(link.loops.size());
  const auto blocked = l_edges(link);
  EmbeddedFaces out;
  out.face_of_quad.assign(qk.num_faces(), -1);
  int nf = 0;
  for (int q = 0; q < qk.num_faces(); ++q) {
    if (out.face_of_quad[q] >= 0) continue;
    for (int p : flood(sc, q, blocked)) out.face_of_quad[p] = nf;
    ++nf;
  }
  std::vector<bool> ribbon_quad(qk.num_faces(), false);
  for (const auto& qs : link.quads)
    for (int q : qs) ribbon_quad[q] = true;

  out.u.assign(nf, std::vector<int>(m, 0));
  out.chi.assign(nf, 0);
  out.chi_cw.assign(nf, 0);
  for (int y = 0; y < nf; ++y) {
    std::set<int> verts, edges;
    int quads = 0;
    for (int q = 0; q < qk.num_faces(); ++q) {
      if (out.face_of_quad[q] != y || ribbon_quad[q]) continue;
      ++quads;
      for (const auto& s : qk.faces()[q]) edges.insert(s.edge);
      for (int v : qk.face_vertices(q)) verts.insert(v);
    }
    for (int v : verts) out.chi[y] += sc.kind(v) == VertexKind::mid ? -1 : 1;
    out.chi_cw[y] = static_cast<int>(verts.size()) - static_cast<int>(edges.size()) + quads;
    for (int i = 0; i < m; ++i) {
      const double first = verts.empty() ? 0.0 : potentials[i].f[*verts.begin()];
      for (int v : verts)
        if (potentials[i].f[v] != first) out.potentials_constant = false;
      out.u[y][i] = static_cast<int>(std::lround(first));
    }
  }
  for (int i = 0; i < m; ++i) {
    const int outside = out.face_of_quad[link.quads[i][0]];
    const int inside = out.face_of_quad[inner_seed(link, i)];
    const bool in_higher = out.u[inside][i] > out.u[outside][i];
    out.plus_face.push_back(in_higher ? inside : outside);
    out.minus_face.push_back(in_higher ? outside : inside);
  }
  return out;
}

LinkGeometry embedded_geometry(const EmbeddedLink& link) {
  const auto pots = all_potentials(link);
  for (std::size_t i = 0; i < pots.size(); ++i)
    if (!pots[i].matches_current || !pots[i].affine)
      throw std::runtime_error("ribbon " + std::to_string(i) + ": potential check failed");
  const auto faces = embedded_faces(link, pots);
  if (!faces.potentials_constant) throw std::runtime_error("potentials are not constant on faces");
  LinkGeometry g;
  g.genus = link.spec.genus;
  for (const auto& r : link.spec.ribbons) {
    g.colors.push_back(r.color);
    g.winding.push_back(r.winding);
  }
  g.chi = faces.chi;
  g.u = faces.u;
  g.plus_face = faces.plus_face;
  g.minus_face = faces.minus_face;
  return g;
}

EmbeddedStateData embedded_state_data(const EmbeddedLink& link) {
  const auto pots = all_potentials(link);
  const auto& sc = link.surface;
  const int m = static_cast<int>(link.loops.size());
  auto fvec = [&](int v) {
    std::vector<int> key(m);
    for (int i = 0; i < m; ++i) key[i] = static_cast<int>(std::lround(pots[i].f[v]));
    return key;
  };
  EmbeddedStateData out;
  out.N = link.N;
  for (const auto& r : link.spec.ribbons) out.colors.push_back(r.color);
  std::map<std::vector<int>, int> classes;
  for (int v = 0; v < sc.qk().num_vertices(); ++v) classes[fvec(v)] += sc.kind(v) == VertexKind::mid ? -1 : 1;
  out.vertex_classes.assign(classes.begin(), classes.end());
  out.time_total.assign(m, 0);
  out.rung_sums.assign(m, std::vector<std::int64_t>(m, 0));
  for (int i = 0; i < m; ++i)
    for (const auto& st : link.loops[i].steps) {
      if (st.spatial()) continue;
      out.time_total[i] += st.dt + st.dtp;
      const auto fx = fvec(st.x), fxp = fvec(st.xp);
      for (int j = 0; j < m; ++j) out.rung_sums[i][j] += st.dt * fx[j] + st.dtp * fxp[j];
    }
  return out;
}

CovarianceReport embedded_covariance_check(const EmbeddedLink& link, const LieData& lie) {
  const auto& sc = link.surface;
  // rho / h is regular with margin 1/h; small vertex-dependent wiggles keep it so
  TCochain B;
  for (int x = 0; x < sc.qk().num_vertices(); ++x) {
    Eigen::VectorXd b = lie.rho().to_real() / lie.dual_coxeter();
    for (int a = 0; a < lie.rank(); ++a) b[a] += 0.002 * (((x * 37 + a * 11) % 9) - 4);
    B.push_back(b);
  }
  std::vector<CovarianceSource> l, lp;
  for (const auto& loop : link.loops) {
    const auto t = loop.times(link.N), tp = loop.times_p(link.N);
    for (std::size_t k = 0; k < loop.steps.size(); ++k) {
      if (!loop.steps[k].spatial()) continue;
      l.push_back({t[k], loop.steps[k].l});
      lp.push_back({tp[k], loop.steps[k].lp});
    }
  }
  return covariance_vanishing_check(sc, lie, B, link.N, l, lp);
}

}  // namespace shadow_wlo
