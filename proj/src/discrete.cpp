#include "shadow_wlo/discrete.hpp"

#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace shadow_wlo {

namespace {

int mod_n(int a, int n) {
  const int r = a % n;
  return r < 0 ? r + n : r;
}

void require_regular(const LieData& lie, const Eigen::VectorXd& b, const char* who) {
  if (!is_regular(lie, b)) throw std::domain_error(std::string(who) + ": b is not regular");
}

}  // namespace

Eigen::MatrixXd ad_matrix(const LieData& lie, const Eigen::VectorXd& b) {
  const int dim = lie.dim();
  Eigen::MatrixXd ad = Eigen::MatrixXd::Zero(dim, dim);
  const auto& roots = lie.positive_roots();
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const double angle = 2.0 * std::numbers::pi * lie.inner(roots[i].to_real(), b);
    ad(2 * i, 2 * i + 1) = -angle;
    ad(2 * i + 1, 2 * i) = angle;
  }
  return ad;
}

Eigen::MatrixXd ad_exp(const LieData& lie, const Eigen::VectorXd& b, int N) {
  const int dim = lie.dim();
  Eigen::MatrixXd E = Eigen::MatrixXd::Identity(dim, dim);
  const auto& roots = lie.positive_roots();
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const double angle = 2.0 * std::numbers::pi * lie.inner(roots[i].to_real(), b) / N;
    const double c = std::cos(angle), s = std::sin(angle);
    E(2 * i, 2 * i) = c;
    E(2 * i, 2 * i + 1) = -s;
    E(2 * i + 1, 2 * i) = s;
    E(2 * i + 1, 2 * i + 1) = c;
  }
  return E;
}

Eigen::MatrixXd build_twisted(const LieData& lie, TwistVariant v, int N, const Eigen::VectorXd& b) {
  if (N < 2) throw std::invalid_argument("build_twisted: N must be >= 2");
  if (v == TwistVariant::bar && N % 2) throw std::invalid_argument("build_twisted: bar variant needs even N");
  const int dim = lie.dim();
  const Eigen::MatrixXd E = ad_exp(lie, b, N);
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(dim, dim);
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(N * dim, N * dim);
  for (int t = 0; t < N; ++t) {
    const int up = mod_n(t + 1, N) * dim, down = mod_n(t - 1, N) * dim, at = t * dim;
    switch (v) {
      case TwistVariant::hat:  // N (tau_1 E - 1)
        M.block(at, up, dim, dim) += N * E;
        M.block(at, at, dim, dim) -= N * I;
        break;
      case TwistVariant::check:  // N (1 - tau_-1 E^-1)
        M.block(at, at, dim, dim) += N * I;
        M.block(at, down, dim, dim) -= N * E.transpose();
        break;
      case TwistVariant::bar:  // (N/2)(tau_1 E - tau_-1 E^-1)
        M.block(at, up, dim, dim) += 0.5 * N * E;
        M.block(at, down, dim, dim) -= 0.5 * N * E.transpose();
        break;
    }
  }
  return M;
}

Eigen::MatrixXd twisted_kernel_basis(const LieData& lie, TwistVariant v, int N) {
  const int dim = lie.dim(), r = lie.rank(), off = dim - r;
  const int cols = v == TwistVariant::bar ? 2 * r : r;
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(N * dim, cols);
  const double s = 1.0 / std::sqrt(static_cast<double>(N));
  for (int c = 0; c < r; ++c)
    for (int t = 0; t < N; ++t) {
      K(t * dim + off + c, c) = s;
      if (v == TwistVariant::bar) K(t * dim + off + c, r + c) = (t % 2 ? -s : s);
    }
  return K;
}

double det_twisted_restricted(const LieData& lie, TwistVariant v, int N, const Eigen::VectorXd& b) {
  require_regular(lie, b, "det_twisted_restricted");
  if (N < 2) throw std::invalid_argument("det_twisted_restricted: N must be >= 2");
  const double ad = ad_det_k(lie, b);
  const double d = static_cast<double>(N) * lie.dim();
  switch (v) {
    case TwistVariant::hat: {
      const int sign = (lie.rank() % 2 && (N - 1) % 2) ? -1 : 1;
      return sign * std::pow(static_cast<double>(N), d) * ad;
    }
    case TwistVariant::check:
      return std::pow(static_cast<double>(N), d) * ad;
    case TwistVariant::bar:
      if (N % 2) throw std::invalid_argument("det_twisted_restricted: bar variant needs even N");
      return std::pow(0.5 * N, d) * ad * ad;
  }
  return 0.0;
}

Eigen::MatrixXd assemble_block_operator(const SurfaceComplex& sc, const LieData& lie, const TCochain& B, int N) {
  const int E = sc.k1().num_edges(), dim = lie.dim(), blk = N * dim;
  if (static_cast<int>(B.size()) != sc.qk().num_vertices())
    throw std::invalid_argument("assemble_block_operator: B must have one value per qK vertex");
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(2 * E * blk, 2 * E * blk);
  for (int e = 0; e < E; ++e) {
    const Eigen::VectorXd& b = B[sc.midpoint(e)];
    M.block(e * blk, e * blk, blk, blk) = build_twisted(lie, TwistVariant::hat, N, b);
    M.block((E + e) * blk, (E + e) * blk, blk, blk) = build_twisted(lie, TwistVariant::check, N, b);
  }
  return M;
}

Eigen::MatrixXd assemble_block_action(const SurfaceComplex& sc, const LieData& lie, const TCochain& B, int N) {
  const Eigen::MatrixXd L = assemble_block_operator(sc, lie, B, N);
  const int E = sc.k1().num_edges(), blk = N * lie.dim();
  Eigen::MatrixXd M(L.rows(), L.cols());
  // K1 rows take star_K2 of the K2 rows, K2 rows take star_K1 of the K1 rows
  for (int e = 0; e < E; ++e) {
    M.middleRows(e * blk, blk) = sc.hodge().sign_k2 * L.middleRows((E + e) * blk, blk);
    M.middleRows((E + e) * blk, blk) = sc.hodge().sign_k1 * L.middleRows(e * blk, blk);
  }
  return M;
}

SignedLogDet det_block(const SurfaceComplex& sc, const LieData& lie, const TCochain& B, int N) {
  const int E = sc.k1().num_edges();
  SignedLogDet out;
  const double log_n = std::log(static_cast<double>(N)) * N * lie.dim();
  const bool flip = lie.rank() % 2 && (N - 1) % 2;
  for (int e = 0; e < E; ++e) {
    const int x = sc.midpoint(e);
    const double ad = ad_det_k(lie, B[x]);
    if (!is_regular(lie, B[x])) {
      std::ostringstream os;
      os << "det_block: B is singular at the midpoint of K1 edge " << e << " (qK vertex " << x << ")";
      throw std::domain_error(os.str());
    }
    out.log_abs += 2.0 * log_n + 2.0 * std::log(ad);
    if (flip) out.sign = -out.sign;
  }
  return out;
}

SignedLogDet det_fp_disc(const SurfaceComplex& sc, const LieData& lie, const TCochain& B) {
  SignedLogDet out;
  for (int x = 0; x < sc.qk().num_vertices(); ++x) {
    const double ad = ad_det_k(lie, B[x]);
    if (ad == 0.0 || !is_regular(lie, B[x])) return {0, 0.0};
    out.log_abs += 0.5 * std::log(ad);
  }
  return out;
}

int RibbonLoop::winding_steps() const {
  int s = 0;
  for (const auto& st : steps) s += st.dt;
  return s;
}

int RibbonLoop::winding_steps_p() const {
  int s = 0;
  for (const auto& st : steps) s += st.dtp;
  return s;
}

std::vector<int> RibbonLoop::times(int N) const {
  std::vector<int> out;
  int t = t0;
  for (const auto& st : steps) {
    out.push_back(mod_n(t, N));
    t += st.dt;
  }
  return out;
}

std::vector<int> RibbonLoop::times_p(int N) const {
  std::vector<int> out;
  int t = t0;
  for (const auto& st : steps) {
    out.push_back(mod_n(t, N));
    t += st.dtp;
  }
  return out;
}

Holonomy hol_disc(const LieData& lie, const RibbonLoop& loop, const TField& A, const TCochain& B, int N,
                  const Character& chi) {
  const auto tl = loop.times(N), tp = loop.times_p(N);
  Eigen::VectorXd X = Eigen::VectorXd::Zero(lie.rank());
  for (std::size_t k = 0; k < loop.steps.size(); ++k) {
    const auto& st = loop.steps[k];
    if (st.spatial()) {
      X += 0.5 * st.l.dir * A(tl[k], st.l.edge);
      X += 0.5 * st.lp.dir * A(tp[k], st.lp.edge);
    } else {
      if (st.x < 0 || st.xp < 0) throw std::invalid_argument("hol_disc: time step without rung");
      X += 0.5 * (B[st.x] * st.dt + B[st.xp] * st.dtp) / static_cast<double>(N);
    }
  }
  Holonomy h;
  h.exponent = X;
  h.trace = 0.0;
  for (const auto& [w, m] : chi.weights()) {
    const std::complex<double> ph = std::polar(1.0, 2.0 * std::numbers::pi * lie.inner(w.to_real(), X));
    for (std::int64_t j = 0; j < m; ++j) h.diagonal.push_back(ph);
    h.trace += static_cast<double>(m) * ph;
  }
  return h;
}

CovarianceReport covariance_vanishing_check(const SurfaceComplex& sc, const LieData& lie, const TCochain& B, int N,
                                            const std::vector<CovarianceSource>& l_steps,
                                            const std::vector<CovarianceSource>& lp_steps, double tol) {
  const int E = sc.k1().num_edges(), dim = lie.dim(), r = lie.rank(), blk = N * dim;
  const int s1 = sc.hodge().sign_k1, s2 = sc.hodge().sign_k2;

  struct Block {
    Eigen::MatrixXd Q;  // orthonormal basis of the kernel complement
    Eigen::PartialPivLU<Eigen::MatrixXd> lu;
  };
  std::map<int, Block> blocks;
  auto block_for = [&](int e) -> const Block& {
    auto it = blocks.find(e);
    if (it != blocks.end()) return it->second;
    const Eigen::VectorXd& b = B[sc.midpoint(e)];
    if (!is_regular(lie, b)) throw std::domain_error("covariance_vanishing_check: B singular at an edge midpoint");
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(2 * blk, 2 * blk);
    M.block(0, blk, blk, blk) = s2 * build_twisted(lie, TwistVariant::check, N, b);
    M.block(blk, 0, blk, blk) = s1 * build_twisted(lie, TwistVariant::hat, N, b);
    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(2 * blk, 2 * r);
    const Eigen::MatrixXd k0 = twisted_kernel_basis(lie, TwistVariant::hat, N);
    K.block(0, 0, blk, r) = k0;
    K.block(blk, r, blk, r) = k0;
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(K);
    const Eigen::MatrixXd full = qr.householderQ();
    Block out;
    out.Q = full.rightCols(2 * blk - 2 * r);
    out.lu = Eigen::PartialPivLU<Eigen::MatrixXd>(out.Q.transpose() * M * out.Q);
    return blocks.emplace(e, std::move(out)).first->second;
  };
  // position of a source inside its (e, e') block
  auto locate = [&](const CovarianceSource& s, int a) {
    const int parent = sc.parent_k_edge(s.half.edge);
    const int comp = parent < E ? 0 : 1;
    return std::pair{parent % E, comp * blk + ((s.t % N + N) % N) * dim + a};
  };

  CovarianceReport rep;
  for (std::size_t i = 0; i < l_steps.size(); ++i)
    for (std::size_t j = 0; j < lp_steps.size(); ++j)
      for (int a = 0; a < dim; ++a)
        for (int a2 = 0; a2 < dim; ++a2) {
          ++rep.pairs;
          const auto [e1, p1] = locate(l_steps[i], a);
          const auto [e2, p2] = locate(lp_steps[j], a2);
          if (e1 != e2) continue;  // different blocks of a block-diagonal inverse
          const Block& bl = block_for(e1);
          Eigen::VectorXd src = Eigen::VectorXd::Zero(2 * blk);
          src[p2] = 0.5 * lp_steps[j].half.dir;
          const Eigen::VectorXd x = bl.Q * bl.lu.solve(bl.Q.transpose() * src);
          Eigen::VectorXd tgt = Eigen::VectorXd::Zero(2 * blk);
          tgt[p1] = 0.5 * l_steps[i].half.dir;
          const Eigen::VectorXd ptgt = bl.Q * (bl.Q.transpose() * tgt);
          const double v = std::abs(ptgt.dot(x));
          rep.max_abs = std::max(rep.max_abs, v);
          if (v > tol && rep.ok) {
            rep.ok = false;
            std::ostringstream os;
            os << "l step " << i << " (generator " << a << ") against l' step " << j << " (generator " << a2
               << "): " << v;
            rep.first_failure = os.str();
          }
        }
  return rep;
}

}  // namespace shadow_wlo
