#include "shadow_wlo/selfcheck.hpp"

#include "shadow_wlo/statesum.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

namespace shadow_wlo {

namespace {

// log |det| and sign of M restricted to the orthogonal complement of span(K)
SignedLogDet dense_restricted(const Eigen::MatrixXd& M, const Eigen::MatrixXd& K) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(K);
  const Eigen::MatrixXd full = qr.householderQ();
  const Eigen::MatrixXd Q = full.rightCols(M.rows() - K.cols());
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(Q.transpose() * M * Q);
  const Eigen::MatrixXd U = lu.matrixLU();
  SignedLogDet out;
  out.sign = static_cast<int>(std::lround(lu.permutationP().determinant()));
  for (int i = 0; i < U.rows(); ++i) {
    if (U(i, i) < 0) out.sign = -out.sign;
    out.log_abs += std::log(std::abs(U(i, i)));
  }
  return out;
}

// deterministic regular points, away from the walls
Eigen::VectorXd sample_regular(const LieData& lie, int seed) {
  Eigen::VectorXd b(lie.rank());
  for (int trial = 0;; ++trial) {
    for (int a = 0; a < lie.rank(); ++a)
      b[a] = std::fmod(0.6180339887 * (seed * 7 + trial * 13 + a * 3 + 1), 1.0) * 2.0 - 1.0;
    bool ok = true;
    for (const auto& r : lie.positive_roots()) {
      const double p = lie.inner(r.to_real(), b);
      ok = ok && std::abs(p - std::round(p)) > 0.05;
    }
    if (ok) return b;
  }
}

// spins as twice-spin integers, truncated Clebsch-Gordan at shifted level k
int truncated_cg(int k, int a, int b, int c) {
  if ((a + b + c) % 2 || c < std::abs(a - b) || c > a + b) return 0;
  return a + b + c <= 2 * (k - 2) ? 1 : 0;
}

AbstractLink sample_link(int genus) {
  AbstractLink l;
  l.genus = genus;
  l.ribbons = {{Weight{1}, 1, -1, -1}, {Weight{2}, -2, 1, 0}, {Weight{1}, 1, 1, -1}};
  return l;
}

using Suite = std::function<std::string(const SelfcheckOptions&)>;  // empty string on success

std::string oscillatory_suite(const SelfcheckOptions&) {
  const cplx i1{0.0, 1.0};
  const cplx root = std::sqrt(i1 * std::numbers::pi);
  Eigen::MatrixXd S(1, 1);
  S(0, 0) = -2.0;
  const auto mu = OscGaussMeasure::make(S, Eigen::VectorXd::Zero(1), 1.0);
  struct Case {
    EntireFn f;
    cplx want;
  };
  const std::vector<Case> cases{
      {[](std::span<const cplx>) { return cplx(1.0); }, root},
      {[](std::span<const cplx> x) { return x[0] * x[0]; }, 0.5 * i1 * root},
      {[](std::span<const cplx> x) { return std::exp(0.7 * x[0]); }, std::exp(i1 * 0.49 / 4.0) * root}};
  for (std::size_t c = 0; c < cases.size(); ++c) {
    const auto r = epsilon_oracle(mu, cases[c].f);
    if (std::abs(r.value - cases[c].want) > 1e-3 * std::abs(cases[c].want))
      return "closed form " + std::to_string(c) + " off by " + std::to_string(std::abs(r.value - cases[c].want));
  }
  return {};
}

std::string twisted_suite(const SelfcheckOptions&) {
  for (int r = 1; r <= 2; ++r) {
    const auto lie = LieData::type_a(r);
    for (int N = 2; N <= 5; ++N)
      for (int s = 0; s < 5; ++s)
        for (auto v : {TwistVariant::hat, TwistVariant::check, TwistVariant::bar}) {
          if (v == TwistVariant::bar && N % 2) continue;
          const auto b = sample_regular(lie, s + 10 * N);
          const double closed = det_twisted_restricted(lie, v, N, b);
          const auto dense = dense_restricted(build_twisted(lie, v, N, b), twisted_kernel_basis(lie, v, N));
          if (dense.sign != (closed > 0 ? 1 : -1) ||
              std::abs(dense.log_abs - std::log(std::abs(closed))) > 1e-8 * std::max(1.0, std::abs(dense.log_abs))) {
            std::ostringstream os;
            os << "A" << r << " N=" << N << ": closed " << closed << " dense sign " << dense.sign << " log "
               << dense.log_abs;
            return os.str();
          }
        }
  }
  return {};
}

std::string block_suite(const SelfcheckOptions& opt) {
  const SurfaceComplex sc(cube_complex(), 0, opt.hodge);
  const auto lie = LieData::type_a(1);
  const int N = 2;
  TCochain B;
  for (int x = 0; x < sc.qk().num_vertices(); ++x) B.push_back(sample_regular(lie, x));
  const auto L = assemble_block_operator(sc, lie, B, N);
  const int blk = N * lie.dim(), ke = sc.num_k_edges();
  const auto k0 = twisted_kernel_basis(lie, TwistVariant::hat, N);
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(L.rows(), ke * lie.rank());
  for (int e = 0; e < ke; ++e) K.block(e * blk, e * lie.rank(), blk, lie.rank()) = k0;
  const auto dense = dense_restricted(L, K);
  const auto mine = det_block(sc, lie, B, N);
  if (dense.sign != mine.sign || std::abs(dense.log_abs - mine.log_abs) > 1e-7 * std::abs(dense.log_abs))
    return "det_block differs from the assembled determinant";
  return {};
}

std::string symmetry_suite(const SelfcheckOptions& opt) {
  const SurfaceComplex sc(cube_complex(), 0, opt.hodge);
  const auto lie = LieData::type_a(1);
  TCochain B;
  for (int x = 0; x < sc.qk().num_vertices(); ++x) B.push_back(sample_regular(lie, x));
  const auto M = assemble_block_action(sc, lie, B, 3);
  const double asym = (M - M.transpose()).norm() / M.norm();
  if (asym > 1e-12) return "star L is not symmetric (relative asymmetry " + std::to_string(asym) + ")";
  return {};
}

std::string kernel_suite(const SelfcheckOptions& opt) {
  for (auto [g, ref] : {std::pair{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 2}})
    if (!build_standard_surface(g, ref, opt.hodge).kernel_check_b0(0))
      return "kernel check fails for genus " + std::to_string(g) + " refinement " + std::to_string(ref);
  for (int g = 0; g <= 1; ++g) {
    const auto e = embed_link(sample_link(g), g == 0 ? 1 : 2, 4, opt.hodge);
    if (!e.surface.kernel_check_b0(e.sigma0)) return "kernel check fails on a chimney surface";
  }
  return {};
}

std::string fusion_suite(const SelfcheckOptions&) {
  const auto lie = LieData::type_a(1);
  for (int k = 1; k <= 8; ++k)
    for (const auto& a : level_labels(lie, k))
      for (const auto& b : level_labels(lie, k))
        for (const auto& c : level_labels(lie, k))
          if (fusion_coefficient(lie, k, a, b, c) != truncated_cg(k, int(a[0]), int(c[0]), int(b[0])))
            return "A1 fusion differs at k=" + std::to_string(k);
  return {};
}

std::string euler_suite(const SelfcheckOptions& opt) {
  for (int g = 0; g <= 1; ++g) {
    const auto link = sample_link(g);
    const auto a = abstract_geometry(link);
    if (a.euler_sum() != 2 - 2 * g) return "abstract faces do not add up to 2 - 2g";
    const auto emb = embed_link(link, g == 0 ? 1 : 2, 4, opt.hodge);
    const auto faces = embedded_faces(emb, all_potentials(emb));
    if (faces.num_faces() != link.size() + 1) return "embedded face count is not m + 1";
    int sum = 0;
    for (int y = 0; y < faces.num_faces(); ++y) {
      if (faces.chi[y] != faces.chi_cw[y]) return "vertex and cell counts of a face disagree";
      sum += faces.chi[y];
    }
    if (sum != 2 - 2 * g) return "embedded faces do not add up to 2 - 2g";
  }
  return {};
}

std::string framing_suite(const SelfcheckOptions& opt) {
  const auto lie = LieData::type_a(1);
  for (int g = 0; g <= 1; ++g) {
    const auto emb = embed_link(sample_link(g), g == 0 ? 1 : 2, 4, opt.hodge);
    const auto fr = check_framing(emb);
    if (!fr.ok()) return "framing: " + fr.detail;
    for (const auto& p : all_potentials(emb))
      if (!p.matches_current || !p.affine) return "ribbon potential does not reproduce the ribbon current";
    const auto cov = embedded_covariance_check(emb, lie);
    if (!cov.ok) return "covariance: " + cov.first_failure;
  }
  return {};
}

std::string coloring_suite(const SelfcheckOptions&) {
  struct Job {
    LieData lie;
    int k;
    AbstractLink link;
  };
  AbstractLink a2;
  a2.ribbons = {{Weight{1, 1}, -1, -1, -1}, {Weight{0, 1}, 1, 1, 0}};
  const std::vector<Job> jobs{{LieData::type_a(1), 5, sample_link(0)},
                              {LieData::type_a(1), 4, sample_link(1)},
                              {LieData::type_a(2), 5, a2}};
  for (const auto& j : jobs) {
    const auto rep = coloring_check(j.lie, j.k, abstract_geometry(j.link));
    if (!rep.ok()) return rep.first_failure.empty() ? "determinant identity off" : rep.first_failure;
  }
  return {};
}

std::string theorem_suite(const SelfcheckOptions& opt) {
  const auto lie = LieData::type_a(1);
  for (int g = 0; g <= 1; ++g)
    for (Mode mode : {Mode::abstract, Mode::embedded}) {
      CompareOptions co;
      co.mode = mode;
      co.refinement = g == 0 ? 1 : 2;
      co.threads = opt.threads;
      const auto rep = compare_theorem(lie, 5, sample_link(g), co);
      if (!rep.pass) return "ratio difference " + std::to_string(rep.ratio_diff);
    }
  return {};
}

std::string empty_label_suite(const SelfcheckOptions&) {
  const auto lie = LieData::type_a(1);
  const auto link = sample_link(0);
  const auto wlo = wlo_sum(AbstractTerms(lie, 1, abstract_geometry(link)));
  const auto sh = shadow_invariant(lie, 1, abstract_geometry(link));
  if (!wlo.empty_label_set || !sh.empty_label_set) return "k = 1 not flagged";
  if (std::abs(wlo.value) != 0.0 || std::abs(sh.value) != 0.0) return "k = 1 gives a nonzero value";
  return {};
}

}  // namespace

std::vector<SuiteResult> run_selfcheck(const SelfcheckOptions& opt) {
  const std::vector<std::pair<std::string, Suite>> suites{
      {"oscillatory_closed_forms", oscillatory_suite},
      {"twisted_determinants", twisted_suite},
      {"block_determinant", block_suite},
      {"hodge_symmetry", symmetry_suite},
      {"kernel_check", kernel_suite},
      {"fusion_tables", fusion_suite},
      {"euler_characteristics", euler_suite},
      {"framing_and_covariance", framing_suite},
      {"coloring_identities", coloring_suite},
      {"theorem_sample", theorem_suite},
      {"empty_label_set", empty_label_suite},
  };
  std::vector<SuiteResult> out;
  for (const auto& [name, suite] : suites) {
    SuiteResult r;
    r.name = name;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      r.detail = suite(opt);
      r.pass = r.detail.empty();
    } catch (const std::exception& e) {
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace shadow_wlo
