#pragma once

#include <Eigen/Dense>

#include <complex>
#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace shadow_wlo {

using cplx = std::complex<double>;

// dmu = (1/Z) exp(-(i/2) <x-m, S(x-m)>) dx
struct OscGaussMeasure {
  Eigen::MatrixXd S;
  Eigen::VectorXd m;
  cplx Z{1.0, 0.0};

  static OscGaussMeasure make(Eigen::MatrixXd S, Eigen::VectorXd m, cplx Z);
  // Z chosen so that the integral of 1 is 1
  static OscGaussMeasure normalized(Eigen::MatrixXd S, Eigen::VectorXd m = {});

  int dim() const { return static_cast<int>(S.rows()); }
  bool centered(double tol = 1e-14) const;
  bool degenerate(double tol = 1e-10) const;
  bool is_normalized(double tol = 1e-12) const;
  int kernel_dim(double tol = 1e-10) const;
};

struct PhaseDet {
  cplx value;
  Eigen::VectorXd eigenvalues;  // nonzero eigenvalues of S
};

// det^{1/2}(iS) on ker(S)^perp, product of principal roots sqrt(i lambda)
PhaseDet phase_det_sqrt(const Eigen::MatrixXd& S, double tol = 1e-10);

cplx integrate_constant(const OscGaussMeasure& mu);
// (first, second) moments of <v,x> and <v,x><w,x>
std::pair<cplx, cplx> first_second_moments(const OscGaussMeasure& mu, const Eigen::VectorXd& v,
                                           const Eigen::VectorXd& w);
// centered moment of prod <v_j, x>, permutation sum over pairings
cplx wick_moment(const OscGaussMeasure& mu, std::span<const Eigen::VectorXd> vs);

// Y(x) = <a, x> + c
struct AffineForm {
  Eigen::VectorXd a;
  cplx c{0.0, 0.0};
};

using EntireFn = std::function<cplx(std::span<const cplx>)>;

// Phi evaluated at first moments; throws if some covariance is nonzero
cplx factorized_expectation(const OscGaussMeasure& mu, std::span<const AffineForm> ys, const EntireFn& phi,
                            double tol = 1e-12);

// sum of coeff * exp(i <freq, x>)
struct TrigPolynomial {
  struct Term {
    cplx coeff;
    Eigen::VectorXd freq;
  };
  std::vector<Term> terms;
  cplx operator()(std::span<const cplx> x) const;
};

// measure (1/Z) exp(i <x2, M x1>) dx on V0 + V1 + V2, integrand F(x0 + x1) exp(i <x2, v>)
struct DeltaLimitProblem {
  Eigen::MatrixXd lattice0;  // columns span the period lattice of F on V0
  Eigen::MatrixXd M;         // V1 -> V2
  Eigen::VectorXd v;         // in V2
  TrigPolynomial F;          // frequencies over (x0, x1)
  int d0() const { return static_cast<int>(lattice0.cols()); }
  int d1() const { return static_cast<int>(M.cols()); }
  OscGaussMeasure measure() const;
  // full integrand on (x0, x1, x2)
  EntireFn integrand() const;
};

cplx delta_limit(const DeltaLimitProblem& p, double tol = 1e-9);

struct EpsilonSchedule {
  double eps0 = 0.1;
  int levels = 5;  // eps0, eps0/2, ...
  int nodes = 0;   // Gauss-Hermite nodes per axis, 0 picks by dimension
};

struct OracleResult {
  cplx value;
  std::vector<cplx> raw;           // regularized integrals per eps
  std::vector<cplx> extrapolated;  // diagonal of the Richardson table
  double residual = 0.0;
  bool converged = false;
};

// (eps/pi)^{n/2} int f(x) exp(-eps |x|^2) dmu(x) extrapolated to eps -> 0
OracleResult epsilon_oracle(const OscGaussMeasure& mu, const EntireFn& f, EpsilonSchedule sched = {},
                            double tol = 1e-4);
// the regularized integral at a single eps
cplx regularized_integral(const OscGaussMeasure& mu, const EntireFn& f, double eps, int nodes);

// Gauss-Hermite rule for weight exp(-x^2)
std::pair<Eigen::VectorXd, Eigen::VectorXd> gauss_hermite(int n);

}  // namespace shadow_wlo
