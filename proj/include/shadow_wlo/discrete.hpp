#pragma once

#include "shadow_wlo/complex.hpp"
#include "shadow_wlo/lie.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace shadow_wlo {

enum class TwistVariant { hat, check, bar };

// determinant as sign * exp(log_abs); block determinants overflow doubles quickly
struct SignedLogDet {
  int sign = 1;
  double log_abs = 0.0;
  double value() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }
};

// ad(b) on g in the real basis (X_1, Y_1, ..., X_n, Y_n, H_1..H_r), one rotation
// block of angle 2 pi <alpha, b> per positive root; b in Dynkin coordinates
Eigen::MatrixXd ad_matrix(const LieData& lie, const Eigen::VectorXd& b);
// exp(ad(b) / N), orthogonal
Eigen::MatrixXd ad_exp(const LieData& lie, const Eigen::VectorXd& b, int N);

// acting on Map(Z_N, g), index t * dim + a
Eigen::MatrixXd build_twisted(const LieData& lie, TwistVariant v, int N, const Eigen::VectorXd& b);
// orthonormal basis (columns) of the kernel for regular b: constant t-valued maps,
// plus alternating ones for the bar variant
Eigen::MatrixXd twisted_kernel_basis(const LieData& lie, TwistVariant v, int N);
// closed form of the determinant restricted to the kernel complement
double det_twisted_restricted(const LieData& lie, TwistVariant v, int N, const Eigen::VectorXd& b);

// B is a t-valued 0-cochain on qK, one Dynkin vector per qK vertex
using TCochain = std::vector<Eigen::VectorXd>;

// L^(N)(B) on Map(Z_N, C^1(K, g)), hat blocks on K1 edges and check blocks on K2 edges,
// both twisted by B at the edge midpoint; index (k_edge * N + t) * dim + a
Eigen::MatrixXd assemble_block_operator(const SurfaceComplex& sc, const LieData& lie, const TCochain& B, int N);
// star_K L^(N)(B)
Eigen::MatrixXd assemble_block_action(const SurfaceComplex& sc, const LieData& lie, const TCochain& B, int N);
// closed form of det L^(N)(B) restricted to the complement of the constant t-valued maps
SignedLogDet det_block(const SurfaceComplex& sc, const LieData& lie, const TCochain& B, int N);
// product over qK vertices of ad_det_k(B(x))^{1/2}
SignedLogDet det_fp_disc(const SurfaceComplex& sc, const LieData& lie, const TCochain& B);

// One step of a simplicial ribbon in qK x Z_N. A spatial step moves l and l' along
// qK half edges at fixed time; a time step moves l by dt and l' by dtp at the rung (x, xp).
struct RibbonStep {
  SignedEdge l, lp;
  int x = -1, xp = -1;
  int dt = 0, dtp = 0;
  bool spatial() const { return l.valid(); }
};

struct RibbonLoop {
  std::vector<RibbonStep> steps;
  int t0 = 0;
  int winding_steps() const;   // sum of dt
  int winding_steps_p() const; // sum of dtp
  // time at the start of each step along l, resp. l'
  std::vector<int> times(int N) const;
  std::vector<int> times_p(int N) const;
};

// t-valued connection: value on (time, qK edge), Dynkin coordinates
using TField = std::function<Eigen::VectorXd(int t, int qk_edge)>;

struct Holonomy {
  std::vector<std::complex<double>> diagonal;  // per weight of the character, with multiplicity
  std::complex<double> trace;
  Eigen::VectorXd exponent;  // X with hol = exp(X) in t
};

// ordered product of the half-ribbon step exponentials, t-valued fields
Holonomy hol_disc(const LieData& lie, const RibbonLoop& loop, const TField& A, const TCochain& B, int N,
                  const Character& chi);

struct CovarianceSource {
  int t = 0;
  SignedEdge half;  // qK half edge
};

struct CovarianceReport {
  bool ok = true;
  double max_abs = 0.0;
  int pairs = 0;
  std::string first_failure;
};

// <j_a, (star_K L(B))^{-1} j'_a'> on the kernel complement for every l step against every
// l' step and every pair of generators; evaluated blockwise over (e, e') pairs
CovarianceReport covariance_vanishing_check(const SurfaceComplex& sc, const LieData& lie, const TCochain& B, int N,
                                            const std::vector<CovarianceSource>& l_steps,
                                            const std::vector<CovarianceSource>& lp_steps, double tol = 1e-10);

}  // namespace shadow_wlo
