#pragma once

#include <boost/rational.hpp>
#include <Eigen/Dense>

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace shadow_wlo {

using Rational = boost::rational<std::int64_t>;
using IMat = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

// Integer coordinates in the fundamental-weight (Dynkin) basis.
struct Weight {
  std::vector<std::int64_t> coords;

  Weight() = default;
  explicit Weight(std::vector<std::int64_t> c) : coords(std::move(c)) {}
  Weight(std::initializer_list<std::int64_t> c) : coords(c) {}
  static Weight zero(int rank) { return Weight(std::vector<std::int64_t>(rank, 0)); }

  int rank() const { return static_cast<int>(coords.size()); }
  std::int64_t operator[](int i) const { return coords[i]; }
  std::int64_t& operator[](int i) { return coords[i]; }
  bool dominant() const;
  bool is_zero() const;
  Eigen::VectorXd to_real() const;
  std::string str() const;

  Weight& operator+=(const Weight& o);
  Weight& operator-=(const Weight& o);
  friend Weight operator+(Weight a, const Weight& b) { return a += b; }
  friend Weight operator-(Weight a, const Weight& b) { return a -= b; }
  friend Weight operator-(Weight a);
  friend Weight operator*(std::int64_t s, Weight a);
  auto operator<=>(const Weight&) const = default;
};

struct WeightHash {
  std::size_t operator()(const Weight& w) const noexcept;
};

// Element of the finite Weyl group acting on Dynkin coordinates.
struct WeylElement {
  IMat matrix;
  int sign = 1;
  Weight apply(const Weight& w) const;
};

// Affine map x -> linear(x) + shift on Dynkin coordinates.
struct AffineWeyl {
  WeylElement linear;
  Weight shift;
  Weight apply(const Weight& w) const { return linear.apply(w) + shift; }
  int sign() const { return linear.sign; }
};

// Root datum of a simply-laced simple Lie algebra (type A implemented).
class LieData {
 public:
  static LieData type_a(int rank);
  static LieData from_label(std::string_view label);

  const std::string& label() const { return label_; }
  int rank() const { return rank_; }
  int dim() const { return rank_ + 2 * static_cast<int>(positive_roots_.size()); }
  int dual_coxeter() const { return dual_coxeter_; }
  const IMat& cartan() const { return cartan_; }

  // Inner products: gram_scale() * <a,b> is an integer for weights a, b.
  std::int64_t gram_scale() const { return gram_scale_; }
  const IMat& scaled_gram() const { return scaled_gram_; }
  const Eigen::MatrixXd& gram() const { return gram_; }
  std::int64_t scaled_inner(const Weight& a, const Weight& b) const;
  Rational inner(const Weight& a, const Weight& b) const;
  double inner(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const;
  double norm(const Weight& a) const;

  const std::vector<Weight>& simple_roots() const { return simple_roots_; }
  const std::vector<Weight>& coroot_basis() const { return simple_roots_; }
  const std::vector<Weight>& fundamental_weights() const { return fundamental_; }
  const std::vector<Weight>& positive_roots() const { return positive_roots_; }
  // expansion of each positive root in simple roots
  const std::vector<std::vector<std::int64_t>>& positive_root_coeffs() const { return root_coeffs_; }
  const Weight& rho() const { return rho_; }
  const Weight& highest_root() const { return theta_; }

  // <alpha, w> for positive root number i; always an integer.
  std::int64_t root_pairing(int i, const Weight& w) const;
  std::int64_t theta_pairing(const Weight& w) const;

  const std::vector<WeylElement>& weyl_group() const { return weyl_; }
  WeylElement reflection(int i) const;
  Weight dual(const Weight& w) const;      // highest weight of the dual rep
  Weight dominant_rep(const Weight& w) const;

  // coordinates in the sum-zero hyperplane of R^{r+1}
  Eigen::VectorXd ambient(const Eigen::VectorXd& dynkin) const;

 private:
  std::string label_;
  int rank_ = 0;
  int dual_coxeter_ = 0;
  IMat cartan_;
  IMat scaled_gram_;
  std::int64_t gram_scale_ = 1;
  Eigen::MatrixXd gram_;
  Eigen::MatrixXd ambient_basis_;  // (r+1) x r, columns are fundamental weights
  std::vector<Weight> simple_roots_, fundamental_, positive_roots_;
  std::vector<std::vector<std::int64_t>> root_coeffs_;
  std::vector<std::int64_t> theta_coeffs_;
  Weight rho_, theta_;
  std::vector<WeylElement> weyl_;
};

// Weight multiplicities of one irreducible representation.
class Character {
 public:
  Character(const LieData& lie, Weight highest);

  const Weight& highest() const { return highest_; }
  std::int64_t multiplicity(const Weight& w) const;
  std::int64_t dimension() const { return dimension_; }
  // (weight, multiplicity), lexicographically sorted
  const std::vector<std::pair<Weight, std::int64_t>>& weights() const { return weights_; }

 private:
  Weight highest_;
  std::vector<std::pair<Weight, std::int64_t>> weights_;
  std::unordered_map<Weight, std::int64_t, WeightHash> lookup_;
  std::int64_t dimension_ = 0;
};

constexpr double kRegularityTol = 1e-9;

std::vector<Weight> level_labels(const LieData& lie, int k);
bool in_level_set(const LieData& lie, int k, const Weight& w);
double quantum_dim(const LieData& lie, int k, const Weight& lambda);
std::int64_t weight_multiplicity(const LieData& lie, const Weight& mu, const Weight& beta);
std::int64_t weyl_dimension(const LieData& lie, const Weight& lambda);

// sum over tau in W_k of sgn(tau) m_mu(nu - tau(lambda)); nu, lambda level-k labels
std::int64_t fusion_coefficient(const LieData& lie, int k, const Character& mu, const Weight& nu,
                                const Weight& lambda);
std::int64_t fusion_coefficient(const LieData& lie, int k, const Weight& mu, const Weight& nu,
                                const Weight& lambda);

// float path, b in Dynkin coordinates
bool is_regular(const LieData& lie, const Eigen::VectorXd& b, double tol = kRegularityTol);
// exact path: is lambda / k regular
bool is_regular_at_level(const LieData& lie, const Weight& lambda, int k);

double ad_det_k(const LieData& lie, const Eigen::VectorXd& b);
// signed square root of ad_det_k: prod over positive roots of 2 sin(pi <alpha,b>)
double weyl_denominator(const LieData& lie, const Eigen::VectorXd& b);
// same at b = lambda / k, using exact integer pairings
double weyl_denominator_at_level(const LieData& lie, const Weight& lambda, int k);

struct AlcovePoint {
  Weight label;      // in the level-k label set
  AffineWeyl tau;    // lambda == tau(label + rho)
};

// lambda = k b must be an integral weight with b regular
AlcovePoint alcove_decompose(const LieData& lie, int k, const Weight& lambda);

// Lambda intersected with the half-open box [0,k)^r in a coroot basis.
// basis rows are coroots spanning Gamma; defaults to the simple coroots.
std::vector<Weight> box_points(const LieData& lie, int k, const IMat* basis = nullptr);

}  // namespace shadow_wlo
