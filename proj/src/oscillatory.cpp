#include "shadow_wlo/oscillatory.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace shadow_wlo {

namespace {

constexpr cplx kI{0.0, 1.0};

Eigen::VectorXd sym_eigenvalues(const Eigen::MatrixXd& S) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

Eigen::VectorXcd to_complex(const Eigen::VectorXd& v) { return v.cast<cplx>(); }

}  // namespace

OscGaussMeasure OscGaussMeasure::make(Eigen::MatrixXd S, Eigen::VectorXd m, cplx Z) {
  if (S.rows() != S.cols()) throw std::invalid_argument("S must be square");
  if ((S - S.transpose()).cwiseAbs().maxCoeff() > 1e-12) throw std::invalid_argument("S must be symmetric");
  if (m.size() == 0) m = Eigen::VectorXd::Zero(S.rows());
  if (m.size() != S.rows()) throw std::invalid_argument("mean has wrong dimension");
  if (Z == cplx(0.0, 0.0)) throw std::invalid_argument("Z must be nonzero");
  OscGaussMeasure mu;
  mu.S = std::move(S);
  mu.m = std::move(m);
  mu.Z = Z;
  return mu;
}

OscGaussMeasure OscGaussMeasure::normalized(Eigen::MatrixXd S, Eigen::VectorXd m) {
  OscGaussMeasure mu = make(std::move(S), std::move(m), 1.0);
  const int d = mu.dim() - mu.kernel_dim();
  mu.Z = std::pow(2.0 * std::numbers::pi, 0.5 * d) / phase_det_sqrt(mu.S).value;
  return mu;
}

bool OscGaussMeasure::centered(double tol) const { return m.cwiseAbs().maxCoeff() <= tol || m.size() == 0; }

int OscGaussMeasure::kernel_dim(double tol) const {
  const auto ev = sym_eigenvalues(S);
  return static_cast<int>((ev.array().abs() <= tol).count());
}

bool OscGaussMeasure::degenerate(double tol) const { return kernel_dim(tol) > 0; }

bool OscGaussMeasure::is_normalized(double tol) const { return std::abs(integrate_constant(*this) - 1.0) <= tol; }

PhaseDet phase_det_sqrt(const Eigen::MatrixXd& S, double tol) {
  const auto ev = sym_eigenvalues(S);
  PhaseDet out;
  out.value = 1.0;
  std::vector<double> kept;
  for (int i = 0; i < ev.size(); ++i) {
    if (std::abs(ev[i]) <= tol) continue;
    kept.push_back(ev[i]);
    out.value *= std::sqrt(kI * ev[i]);
  }
  out.eigenvalues = Eigen::Map<Eigen::VectorXd>(kept.data(), static_cast<Eigen::Index>(kept.size()));
  return out;
}

cplx integrate_constant(const OscGaussMeasure& mu) {
  const PhaseDet pd = phase_det_sqrt(mu.S);
  const double d = static_cast<double>(pd.eigenvalues.size());
  return std::pow(2.0 * std::numbers::pi, 0.5 * d) / (mu.Z * pd.value);
}

namespace {

void require_normalized_nondegenerate(const OscGaussMeasure& mu) {
  if (mu.degenerate()) throw std::invalid_argument("measure is degenerate");
  if (!mu.is_normalized(1e-10)) throw std::invalid_argument("measure is not normalized");
}

cplx covariance(const Eigen::MatrixXd& Sinv, const Eigen::VectorXd& v, const Eigen::VectorXd& w) {
  return -kI * v.dot(Sinv * w);
}

}  // namespace

std::pair<cplx, cplx> first_second_moments(const OscGaussMeasure& mu, const Eigen::VectorXd& v,
                                           const Eigen::VectorXd& w) {
  require_normalized_nondegenerate(mu);
  const Eigen::MatrixXd Sinv = mu.S.inverse();
  const cplx first = v.dot(mu.m);
  const cplx second = covariance(Sinv, v, w) + v.dot(mu.m) * w.dot(mu.m);
  return {first, second};
}

cplx wick_moment(const OscGaussMeasure& mu, std::span<const Eigen::VectorXd> vs) {
  require_normalized_nondegenerate(mu);
  if (!mu.centered()) throw std::invalid_argument("wick_moment needs a centered measure");
  const int n = static_cast<int>(vs.size());
  if (n % 2) return 0.0;
  if (n == 0) return 1.0;
  const Eigen::MatrixXd Sinv = mu.S.inverse();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  cplx total = 0.0;
  do {
    cplx term = 1.0;
    for (int j = 0; j < n; j += 2) term *= covariance(Sinv, vs[perm[j]], vs[perm[j + 1]]);
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  double norm = std::pow(2.0, n / 2);
  for (int j = 2; j <= n / 2; ++j) norm *= j;
  return total / norm;
}

cplx factorized_expectation(const OscGaussMeasure& mu, std::span<const AffineForm> ys, const EntireFn& phi,
                            double tol) {
  require_normalized_nondegenerate(mu);
  const Eigen::MatrixXd Sinv = mu.S.inverse();
  std::vector<cplx> firsts;
  for (const auto& y : ys) firsts.push_back(y.a.dot(mu.m) + y.c);
  for (std::size_t i = 0; i < ys.size(); ++i)
    for (std::size_t j = i; j < ys.size(); ++j) {
      // E[Y_i Y_j] - E[Y_i] E[Y_j] is the covariance of the linear parts
      const cplx cov = covariance(Sinv, ys[i].a, ys[j].a);
      if (std::abs(cov) > tol)
        throw std::domain_error("factorized_expectation: covariance of Y" + std::to_string(i) + ", Y" +
                                std::to_string(j) + " does not vanish");
    }
  return phi(firsts);
}

cplx TrigPolynomial::operator()(std::span<const cplx> x) const {
  cplx s = 0.0;
  for (const auto& t : terms) {
    cplx arg = 0.0;
    for (int j = 0; j < t.freq.size(); ++j) arg += t.freq[j] * x[j];
    s += t.coeff * std::exp(kI * arg);
  }
  return s;
}

OscGaussMeasure DeltaLimitProblem::measure() const {
  const int a = d0(), b = d1();
  const int d = a + 2 * b;
  Eigen::MatrixXd S = Eigen::MatrixXd::Zero(d, d);
  // -(i/2) x.S x = i <x2, M x1>
  S.block(a + b, a, b, b) = -M;
  S.block(a, a + b, b, b) = -M.transpose();
  return OscGaussMeasure::normalized(S);
}

EntireFn DeltaLimitProblem::integrand() const {
  const int a = d0(), b = d1();
  const TrigPolynomial F_ = F;
  const Eigen::VectorXd v_ = v;
  return [F_, v_, a, b](std::span<const cplx> x) {
    cplx ph = 0.0;
    for (int j = 0; j < b; ++j) ph += x[a + b + j] * v_[j];
    return F_(x.subspan(0, a + b)) * std::exp(kI * ph);
  };
}

cplx delta_limit(const DeltaLimitProblem& p, double tol) {
  const int a = p.d0(), b = p.d1();
  if (p.M.rows() != b || p.v.size() != b) throw std::invalid_argument("delta_limit: dimension mismatch");
  if (std::abs(p.M.determinant()) < 1e-12) throw std::invalid_argument("delta_limit: M must be invertible");
  const Eigen::VectorXd x1 = -p.M.lu().solve(p.v);
  cplx total = 0.0;
  for (const auto& t : p.F.terms) {
    if (t.freq.size() != a + b) throw std::invalid_argument("delta_limit: frequency has wrong dimension");
    // periodicity on V0: <freq0, lattice vector> in 2 pi Z
    bool zero0 = true;
    for (int c = 0; c < a; ++c) {
      const double ph = t.freq.head(a).dot(p.lattice0.col(c)) / (2.0 * std::numbers::pi);
      if (std::abs(ph - std::round(ph)) > tol) throw std::domain_error("delta_limit: F is not periodic on V0");
    }
    if (a > 0 && t.freq.head(a).cwiseAbs().maxCoeff() > tol) zero0 = false;
    // cell average keeps only terms constant along V0
    if (zero0) total += t.coeff * std::exp(kI * t.freq.tail(b).dot(x1));
  }
  return total;
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> gauss_hermite(int n) {
  // Golub-Welsch
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) J(i, i - 1) = J(i - 1, i) = std::sqrt(0.5 * i);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  Eigen::VectorXd w(n);
  for (int i = 0; i < n; ++i) w[i] = std::sqrt(std::numbers::pi) * es.eigenvectors()(0, i) * es.eigenvectors()(0, i);
  return {es.eigenvalues(), w};
}

cplx regularized_integral(const OscGaussMeasure& mu, const EntireFn& f, double eps, int nodes) {
  const int d = mu.dim();
  // in the eigenbasis of S the form eps + (i/2) S is diagonal; u = Q diag(D^{-1/2}) y
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(mu.S);
  Eigen::MatrixXcd T = es.eigenvectors().cast<cplx>();
  cplx jac = 1.0;
  for (int j = 0; j < d; ++j) {
    const cplx r = std::sqrt(eps + 0.5 * kI * es.eigenvalues()[j]);
    T.col(j) /= r;
    jac /= r;
  }
  const Eigen::VectorXcd m = to_complex(mu.m);
  const cplx m2 = mu.m.squaredNorm();

  const auto [x, w] = gauss_hermite(nodes);
  std::vector<int> idx(d, 0);
  std::vector<cplx> pt(d);
  Eigen::VectorXcd y(d);
  cplx total = 0.0, comp = 0.0;
  for (;;) {
    double weight = 1.0;
    for (int j = 0; j < d; ++j) {
      y[j] = x[idx[j]];
      weight *= w[idx[j]];
    }
    const Eigen::VectorXcd u = T * y;
    for (int j = 0; j < d; ++j) pt[j] = m[j] + u[j];
    // exp(-eps|m+u|^2) = exp(-eps|m|^2 - 2 eps m.u) exp(-eps u.u), last factor is in A
    const cplx extra = std::exp(-eps * m2 - 2.0 * eps * m.dot(u));
    const cplx term = weight * f(pt) * extra - comp;
    const cplx t2 = total + term;
    comp = (t2 - total) - term;
    total = t2;
    int j = d - 1;
    while (j >= 0 && idx[j] == nodes - 1) idx[j--] = 0;
    if (j < 0) break;
    ++idx[j];
  }
  const int n0 = mu.kernel_dim();
  const double pref = n0 ? std::pow(eps / std::numbers::pi, 0.5 * n0) : 1.0;
  return pref * jac * total / mu.Z;
}

OracleResult epsilon_oracle(const OscGaussMeasure& mu, const EntireFn& f, EpsilonSchedule sched, double tol) {
  const int d = mu.dim();
  if (d < 1 || d > 4) throw std::invalid_argument("epsilon_oracle: dimension must be 1..4");
  int nodes = sched.nodes;
  if (nodes <= 0) nodes = d == 1 ? 96 : d == 2 ? 64 : d == 3 ? 40 : 24;
  OracleResult res;
  double eps = sched.eps0;
  for (int l = 0; l < sched.levels; ++l, eps *= 0.5) res.raw.push_back(regularized_integral(mu, f, eps, nodes));
  // Richardson table in eps with ratio 2; extrapolated holds the diagonal
  std::vector<cplx> row = res.raw;
  res.extrapolated.push_back(row.back());
  double pow2 = 1.0;
  while (row.size() > 1) {
    pow2 *= 2.0;
    std::vector<cplx> next;
    for (std::size_t l = 1; l < row.size(); ++l) next.push_back((pow2 * row[l] - row[l - 1]) / (pow2 - 1.0));
    row = std::move(next);
    res.extrapolated.push_back(row.back());
  }
  res.value = res.extrapolated.back();
  res.residual = res.extrapolated.size() > 1
                     ? std::abs(res.extrapolated.back() - res.extrapolated[res.extrapolated.size() - 2])
                     : 0.0;
  res.converged = res.residual <= tol * std::max(1.0, std::abs(res.value));
  return res;
}

}  // namespace shadow_wlo
