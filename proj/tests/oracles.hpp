#pragma once
// Independent reference computations used only by tests.

#include "shadow_wlo/lie.hpp"
#include "shadow_wlo/oscillatory.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

using shadow_wlo::cplx;
using shadow_wlo::LieData;
using shadow_wlo::Weight;

// level-k truncated Clebsch-Gordan rule for su(2); arguments are twice the spins.
// multiplicity of spin c in a (x) b
int su2_fusion(int k, int a, int b, int c);

// Verlinde formula with the Kac-Peterson S-matrix, ambient model of su(r+1).
// multiplicity of nu in mu (x) lambda
double verlinde_fusion(const LieData& lie, int k, const Weight& mu, const Weight& nu, const Weight& lambda);

// su(3) weight multiplicity by counting Gelfand-Tsetlin patterns
std::int64_t gt_multiplicity_su3(const Weight& highest, const Weight& beta);

// det(1 - exp(ad b)) on the off-diagonal part of su(r+1), dense matrices
double dense_ad_det(const LieData& lie, const Eigen::VectorXd& b);

// character of lambda evaluated at exp(2 pi i rho / k)
double character_qdim(const LieData& lie, int k, const Weight& lambda);

// ad(b) on su(r+1) in a Frobenius-orthonormal real basis built from matrices
Eigen::MatrixXd su_ad(const LieData& lie, const Eigen::VectorXd& b);
// twisted difference operators assembled with Kronecker products; variant 0 hat, 1 check, 2 bar
Eigen::MatrixXd su_twisted(const LieData& lie, int variant, int N, const Eigen::VectorXd& b);
// product of the eigenvalues left after dropping the kernel_dim smallest in modulus
cplx pseudo_det(const Eigen::MatrixXd& M, int kernel_dim, double kernel_tol = 1e-8);
// sign and log|det| of M restricted to the orthogonal complement of span(K)
std::pair<int, double> restricted_logdet(const Eigen::MatrixXd& M, const Eigen::MatrixXd& K);

Eigen::VectorXd random_vector(std::mt19937_64& rng, int n, double lo, double hi);
Eigen::MatrixXd random_symmetric(std::mt19937_64& rng, int n, double min_abs_eig, double max_abs_eig);

}  // namespace oracle
