#include "shadow_wlo/lie.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

namespace shadow_wlo {

namespace {

std::int64_t mod_pos(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

// sin(pi n / k) with n reduced first so large n stay accurate
double sin_pi_ratio(std::int64_t n, std::int64_t k) {
  std::int64_t r = mod_pos(n, 2 * k);
  return std::sin(std::numbers::pi * static_cast<double>(r) / static_cast<double>(k));
}

}  // namespace

bool Weight::dominant() const {
  return std::all_of(coords.begin(), coords.end(), [](auto c) { return c >= 0; });
}

bool Weight::is_zero() const {
  return std::all_of(coords.begin(), coords.end(), [](auto c) { return c == 0; });
}

Eigen::VectorXd Weight::to_real() const {
  Eigen::VectorXd v(rank());
  for (int i = 0; i < rank(); ++i) v[i] = static_cast<double>(coords[i]);
  return v;
}

std::string Weight::str() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < coords.size(); ++i) os << (i ? "," : "") << coords[i];
  os << ')';
  return os.str();
}

Weight& Weight::operator+=(const Weight& o) {
  for (std::size_t i = 0; i < coords.size(); ++i) coords[i] += o.coords[i];
  return *this;
}

Weight& Weight::operator-=(const Weight& o) {
  for (std::size_t i = 0; i < coords.size(); ++i) coords[i] -= o.coords[i];
  return *this;
}

Weight operator-(Weight a) {
  for (auto& c : a.coords) c = -c;
  return a;
}

Weight operator*(std::int64_t s, Weight a) {
  for (auto& c : a.coords) c *= s;
  return a;
}

std::size_t WeightHash::operator()(const Weight& w) const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ull;
  for (auto c : w.coords) h ^= std::hash<std::int64_t>{}(c) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  return h;
}

Weight WeylElement::apply(const Weight& w) const {
  const int r = w.rank();
  Weight out = Weight::zero(r);
  for (int i = 0; i < r; ++i) {
    std::int64_t s = 0;
    for (int j = 0; j < r; ++j) s += matrix(i, j) * w.coords[j];
    out.coords[i] = s;
  }
  return out;
}

LieData LieData::type_a(int rank) {
  if (rank < 1) throw std::invalid_argument("rank must be >= 1");
  LieData L;
  L.label_ = "A" + std::to_string(rank);
  L.rank_ = rank;
  const int n = rank + 1;

  // hyperplane model: simple roots e_i - e_{i+1}, fundamental weights
  // e_1 + ... + e_i projected to the sum-zero hyperplane
  Eigen::MatrixXd roots_amb(n, rank);
  roots_amb.setZero();
  for (int i = 0; i < rank; ++i) {
    roots_amb(i, i) = 1.0;
    roots_amb(i + 1, i) = -1.0;
  }
  L.ambient_basis_.resize(n, rank);
  for (int i = 0; i < rank; ++i)
    for (int a = 0; a < n; ++a)
      L.ambient_basis_(a, i) = (a <= i ? 1.0 : 0.0) - static_cast<double>(i + 1) / n;

  L.cartan_ = IMat::Zero(rank, rank);
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j)
      L.cartan_(i, j) = std::llround(roots_amb.col(i).dot(roots_amb.col(j)));

  L.gram_scale_ = n;
  L.scaled_gram_ = IMat::Zero(rank, rank);
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j)
      L.scaled_gram_(i, j) = std::llround(n * L.ambient_basis_.col(i).dot(L.ambient_basis_.col(j)));
  L.gram_ = L.scaled_gram_.cast<double>() / static_cast<double>(n);

  for (int i = 0; i < rank; ++i) {
    Weight a = Weight::zero(rank);
    for (int j = 0; j < rank; ++j) a[j] = L.cartan_(i, j);
    L.simple_roots_.push_back(a);
    Weight w = Weight::zero(rank);
    w[i] = 1;
    L.fundamental_.push_back(w);
  }

  // positive roots e_i - e_j, i < j, i.e. alpha_i + ... + alpha_{j-1}
  for (int i = 0; i < rank; ++i)
    for (int j = i + 1; j <= rank; ++j) {
      std::vector<std::int64_t> c(rank, 0);
      for (int t = i; t < j; ++t) c[t] = 1;
      Weight root = Weight::zero(rank);
      for (int t = 0; t < rank; ++t)
        for (int u = 0; u < rank; ++u) root[u] += c[t] * L.cartan_(t, u);
      L.root_coeffs_.push_back(c);
      L.positive_roots_.push_back(root);
    }
  // stable order: by height then lexicographic coefficients
  std::vector<std::size_t> idx(L.positive_roots_.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  auto height = [&](std::size_t i) {
    std::int64_t h = 0;
    for (auto c : L.root_coeffs_[i]) h += c;
    return h;
  };
  std::sort(idx.begin(), idx.end(), [&](auto a, auto b) {
    if (height(a) != height(b)) return height(a) < height(b);
    return L.root_coeffs_[a] > L.root_coeffs_[b];
  });
  std::vector<Weight> pr;
  std::vector<std::vector<std::int64_t>> pc;
  for (auto i : idx) {
    pr.push_back(L.positive_roots_[i]);
    pc.push_back(L.root_coeffs_[i]);
  }
  L.positive_roots_ = std::move(pr);
  L.root_coeffs_ = std::move(pc);

  L.theta_ = L.positive_roots_.back();
  L.theta_coeffs_ = L.root_coeffs_.back();
  L.rho_ = Weight(std::vector<std::int64_t>(rank, 1));
  L.dual_coxeter_ = static_cast<int>(1 + L.theta_pairing(L.rho_));

  // Weyl group by closure under simple reflections
  std::vector<WeylElement> gens;
  for (int i = 0; i < rank; ++i) gens.push_back(L.reflection(i));
  WeylElement id{IMat::Identity(rank, rank), 1};
  std::map<std::vector<std::int64_t>, std::size_t> seen;
  auto key = [](const IMat& m) { return std::vector<std::int64_t>(m.data(), m.data() + m.size()); };
  std::deque<WeylElement> queue{id};
  seen[key(id.matrix)] = 0;
  L.weyl_.push_back(id);
  while (!queue.empty()) {
    WeylElement cur = queue.front();
    queue.pop_front();
    for (const auto& g : gens) {
      WeylElement nxt{g.matrix * cur.matrix, -cur.sign};
      auto kk = key(nxt.matrix);
      if (seen.count(kk)) continue;
      seen[kk] = L.weyl_.size();
      L.weyl_.push_back(nxt);
      queue.push_back(nxt);
    }
  }
  return L;
}

LieData LieData::from_label(std::string_view label) {
  if (label.size() >= 2 && (label[0] == 'A' || label[0] == 'a')) {
    int r = 0;
    for (std::size_t i = 1; i < label.size(); ++i) {
      if (label[i] < '0' || label[i] > '9') throw std::invalid_argument("bad group label");
      r = 10 * r + (label[i] - '0');
    }
    if (r >= 1 && r <= 8) return type_a(r);
  }
  throw std::invalid_argument("unsupported group label: " + std::string(label));
}

std::int64_t LieData::scaled_inner(const Weight& a, const Weight& b) const {
  std::int64_t s = 0;
  for (int i = 0; i < rank_; ++i) {
    if (a.coords[i] == 0) continue;
    for (int j = 0; j < rank_; ++j) s += a.coords[i] * scaled_gram_(i, j) * b.coords[j];
  }
  return s;
}

Rational LieData::inner(const Weight& a, const Weight& b) const {
  return Rational(scaled_inner(a, b), gram_scale_);
}

double LieData::inner(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const {
  return a.dot(gram_ * b);
}

double LieData::norm(const Weight& a) const {
  return std::sqrt(static_cast<double>(scaled_inner(a, a)) / static_cast<double>(gram_scale_));
}

std::int64_t LieData::root_pairing(int i, const Weight& w) const {
  const auto& c = root_coeffs_[i];
  std::int64_t s = 0;
  for (int j = 0; j < rank_; ++j) s += c[j] * w.coords[j];
  return s;
}

std::int64_t LieData::theta_pairing(const Weight& w) const {
  std::int64_t s = 0;
  for (int j = 0; j < rank_; ++j) s += theta_coeffs_[j] * w.coords[j];
  return s;
}

WeylElement LieData::reflection(int i) const {
  // s_i(w) = w - w_i alpha_i
  IMat m = IMat::Identity(rank_, rank_);
  for (int j = 0; j < rank_; ++j) m(j, i) -= cartan_(i, j);
  return WeylElement{m, -1};
}

Weight LieData::dual(const Weight& w) const {
  // -w0 reverses the Dynkin diagram of A_r
  Weight d = w;
  std::reverse(d.coords.begin(), d.coords.end());
  return d;
}

Weight LieData::dominant_rep(const Weight& w) const {
  Weight cur = w;
  for (;;) {
    int neg = -1;
    for (int i = 0; i < rank_; ++i)
      if (cur.coords[i] < 0) {
        neg = i;
        break;
      }
    if (neg < 0) return cur;
    const std::int64_t c = cur.coords[neg];
    for (int j = 0; j < rank_; ++j) cur.coords[j] -= c * cartan_(neg, j);
  }
}

Eigen::VectorXd LieData::ambient(const Eigen::VectorXd& dynkin) const {
  return ambient_basis_ * dynkin;
}

Character::Character(const LieData& lie, Weight highest) : highest_(std::move(highest)) {
  if (!highest_.dominant()) throw std::invalid_argument("highest weight must be dominant");
  const int r = lie.rank();
  const auto& roots = lie.positive_roots();

  // dominant weights below the highest weight
  std::set<Weight> dom{highest_};
  std::deque<Weight> queue{highest_};
  while (!queue.empty()) {
    Weight cur = queue.front();
    queue.pop_front();
    for (const auto& a : roots) {
      Weight nxt = cur - a;
      if (!nxt.dominant() || dom.count(nxt)) continue;
      dom.insert(nxt);
      queue.push_back(nxt);
    }
  }
  // depth = height of highest - mu, via scaled inverse Cartan
  auto depth = [&](const Weight& mu) {
    Weight d = highest_ - mu;
    std::int64_t h = 0;
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) h += lie.scaled_gram()(i, j) * d.coords[j];
    return h;  // scaled by gram_scale, ordering is all that matters
  };
  std::vector<Weight> order(dom.begin(), dom.end());
  std::stable_sort(order.begin(), order.end(),
                   [&](const Weight& a, const Weight& b) { return depth(a) < depth(b); });

  std::map<Weight, std::int64_t> dom_mult;
  const Weight hr = highest_ + lie.rho();
  const std::int64_t top = lie.scaled_inner(hr, hr);
  auto mult_of = [&](const Weight& w) -> std::int64_t {
    auto it = dom_mult.find(lie.dominant_rep(w));
    return it == dom_mult.end() ? 0 : it->second;
  };
  for (const auto& mu : order) {
    if (mu == highest_) {
      dom_mult[mu] = 1;
      continue;
    }
    std::int64_t acc = 0;
    for (const auto& a : roots) {
      for (std::int64_t j = 1;; ++j) {
        Weight shifted = mu + j * a;
        std::int64_t m = mult_of(shifted);
        if (m == 0) break;
        acc += m * lie.scaled_inner(shifted, a);
      }
    }
    const Weight mr = mu + lie.rho();
    const std::int64_t denom = top - lie.scaled_inner(mr, mr);
    if (denom <= 0 || (2 * acc) % denom != 0)
      throw std::logic_error("Freudenthal recursion produced a non-integer multiplicity");
    dom_mult[mu] = 2 * acc / denom;
  }

  for (const auto& [mu, m] : dom_mult) {
    if (m == 0) continue;
    std::set<Weight> orbit;
    for (const auto& w : lie.weyl_group()) orbit.insert(w.apply(mu));
    for (const auto& b : orbit) {
      lookup_[b] = m;
      weights_.emplace_back(b, m);
      dimension_ += m;
    }
  }
  std::sort(weights_.begin(), weights_.end());
}

std::int64_t Character::multiplicity(const Weight& w) const {
  auto it = lookup_.find(w);
  return it == lookup_.end() ? 0 : it->second;
}

std::vector<Weight> level_labels(const LieData& lie, int k) {
  std::vector<Weight> out;
  const std::int64_t bound = static_cast<std::int64_t>(k) - lie.dual_coxeter();
  if (bound < 0) return out;
  const int r = lie.rank();
  Weight cur = Weight::zero(r);
  // odometer over coords in [0, bound]
  for (;;) {
    if (lie.theta_pairing(cur) <= bound) out.push_back(cur);
    int i = r - 1;
    while (i >= 0 && cur[i] == bound) cur[i--] = 0;
    if (i < 0) break;
    ++cur[i];
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool in_level_set(const LieData& lie, int k, const Weight& w) {
  return w.dominant() && lie.theta_pairing(w) <= static_cast<std::int64_t>(k) - lie.dual_coxeter();
}

double quantum_dim(const LieData& lie, int k, const Weight& lambda) {
  if (!in_level_set(lie, k, lambda)) throw std::invalid_argument("quantum_dim: label outside level set");
  const Weight lr = lambda + lie.rho();
  double d = 1.0;
  for (int i = 0; i < static_cast<int>(lie.positive_roots().size()); ++i)
    d *= sin_pi_ratio(lie.root_pairing(i, lr), k) / sin_pi_ratio(lie.root_pairing(i, lie.rho()), k);
  return d;
}

std::int64_t weight_multiplicity(const LieData& lie, const Weight& mu, const Weight& beta) {
  return Character(lie, mu).multiplicity(beta);
}

std::int64_t weyl_dimension(const LieData& lie, const Weight& lambda) {
  const Weight lr = lambda + lie.rho();
  Rational d(1);
  for (int i = 0; i < static_cast<int>(lie.positive_roots().size()); ++i)
    d *= Rational(lie.root_pairing(i, lr), lie.root_pairing(i, lie.rho()));
  return boost::rational_cast<std::int64_t>(d);
}

std::int64_t fusion_coefficient(const LieData& lie, int k, const Character& mu, const Weight& nu,
                                const Weight& lambda) {
  if (k < lie.dual_coxeter()) throw std::invalid_argument("fusion_coefficient: k < dual Coxeter number");
  if (!in_level_set(lie, k, nu) || !in_level_set(lie, k, lambda))
    throw std::invalid_argument("fusion_coefficient: labels must lie in the level set");
  const int r = lie.rank();
  const double radius = lie.norm(mu.highest()) + lie.norm(nu) + lie.norm(lambda) + 2.0 * lie.norm(lie.rho());
  // translations x in Gamma with |k x| <= radius; coefficients bounded via the
  // smallest eigenvalue of the Cartan matrix (Gram matrix of the coroots)
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(lie.cartan().cast<double>());
  const double lam_min = es.eigenvalues().minCoeff();
  const auto nmax = static_cast<std::int64_t>(std::floor(radius / k / std::sqrt(lam_min))) + 1;
  if (nmax > 64) throw std::runtime_error("fusion_coefficient: translation window too large");

  const Weight nr = nu + lie.rho();
  std::vector<Weight> images;
  std::vector<int> signs;
  const Weight lr = lambda + lie.rho();
  for (const auto& w : lie.weyl_group()) {
    images.push_back(w.apply(lr));
    signs.push_back(w.sign);
  }

  std::int64_t total = 0;
  std::vector<std::int64_t> n(r, -nmax);
  std::int64_t visited = 0;
  for (;;) {
    Weight x = Weight::zero(r);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) x[j] += n[i] * lie.cartan()(i, j);
    const double xn = lie.norm(x) * k;
    if (xn <= radius + 1e-9) {
      for (std::size_t t = 0; t < images.size(); ++t) {
        Weight beta = nr - images[t] - static_cast<std::int64_t>(k) * x;
        std::int64_t m = mu.multiplicity(beta);
        if (m) total += signs[t] * m;
      }
    }
    if (++visited > 50'000'000) throw std::runtime_error("fusion_coefficient: enumeration bound exceeded");
    int i = r - 1;
    while (i >= 0 && n[i] == nmax) n[i--] = -nmax;
    if (i < 0) break;
    ++n[i];
  }
  if (in_level_set(lie, k, mu.highest()) && total < 0)
    throw std::logic_error("fusion_coefficient: negative coefficient for labels in the level set");
  return total;
}

std::int64_t fusion_coefficient(const LieData& lie, int k, const Weight& mu, const Weight& nu,
                                const Weight& lambda) {
  return fusion_coefficient(lie, k, Character(lie, mu), nu, lambda);
}

bool is_regular(const LieData& lie, const Eigen::VectorXd& b, double tol) {
  const Eigen::VectorXd gb = b;
  for (const auto& c : lie.positive_root_coeffs()) {
    double p = 0;
    for (int j = 0; j < lie.rank(); ++j) p += static_cast<double>(c[j]) * gb[j];
    if (std::abs(p - std::round(p)) < tol) return false;
  }
  return true;
}

bool is_regular_at_level(const LieData& lie, const Weight& lambda, int k) {
  for (int i = 0; i < static_cast<int>(lie.positive_roots().size()); ++i)
    if (mod_pos(lie.root_pairing(i, lambda), k) == 0) return false;
  return true;
}

double weyl_denominator(const LieData& lie, const Eigen::VectorXd& b) {
  double d = 1.0;
  for (const auto& c : lie.positive_root_coeffs()) {
    double p = 0;
    for (int j = 0; j < lie.rank(); ++j) p += static_cast<double>(c[j]) * b[j];
    d *= 2.0 * std::sin(std::numbers::pi * p);
  }
  return d;
}

double ad_det_k(const LieData& lie, const Eigen::VectorXd& b) {
  double d = 1.0;
  for (const auto& c : lie.positive_root_coeffs()) {
    double p = 0;
    for (int j = 0; j < lie.rank(); ++j) p += static_cast<double>(c[j]) * b[j];
    const double s = std::sin(std::numbers::pi * p);
    d *= 4.0 * s * s;
  }
  return d;
}

double weyl_denominator_at_level(const LieData& lie, const Weight& lambda, int k) {
  double d = 1.0;
  for (int i = 0; i < static_cast<int>(lie.positive_roots().size()); ++i)
    d *= 2.0 * sin_pi_ratio(lie.root_pairing(i, lambda), k);
  return d;
}

AlcovePoint alcove_decompose(const LieData& lie, int k, const Weight& lambda) {
  if (!is_regular_at_level(lie, lambda, k))
    throw std::invalid_argument("alcove_decompose: point is not regular");
  const int r = lie.rank();
  const Weight& theta = lie.highest_root();
  // v = A lambda + t after each step
  IMat A = IMat::Identity(r, r);
  Weight t = Weight::zero(r);
  Weight v = lambda;
  int sign = 1;
  const WeylElement s_theta = [&] {
    // s_theta(w) = w - <w,theta> theta
    IMat m = IMat::Identity(r, r);
    std::vector<std::int64_t> tc(r);
    for (int j = 0; j < r; ++j) {
      Weight e = Weight::zero(r);
      e[j] = 1;
      tc[j] = lie.theta_pairing(e);
    }
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) m(i, j) -= theta[i] * tc[j];
    return WeylElement{m, -1};
  }();
  for (int guard = 0;; ++guard) {
    if (guard > 100000) throw std::runtime_error("alcove_decompose: no convergence");
    int neg = -1;
    for (int i = 0; i < r; ++i)
      if (v[i] < 0) {
        neg = i;
        break;
      }
    if (neg >= 0) {
      const WeylElement s = lie.reflection(neg);
      A = s.matrix * A;
      t = s.apply(t);
      v = s.apply(v);
      sign = -sign;
      continue;
    }
    if (lie.theta_pairing(v) > k) {
      A = s_theta.matrix * A;
      t = s_theta.apply(t) + static_cast<std::int64_t>(k) * theta;
      v = s_theta.apply(v) + static_cast<std::int64_t>(k) * theta;
      sign = -sign;
      continue;
    }
    break;
  }
  for (int i = 0; i < r; ++i)
    if (v[i] <= 0) throw std::logic_error("alcove_decompose: landed on a wall");
  if (lie.theta_pairing(v) >= k) throw std::logic_error("alcove_decompose: landed on a wall");

  // lambda = A^{-1}(v - t); A is a Weyl group element, find it to get its inverse
  IMat Ainv;
  for (const auto& w : lie.weyl_group())
    if ((w.matrix * A) == IMat::Identity(r, r)) {
      Ainv = w.matrix;
      break;
    }
  if (Ainv.size() == 0) throw std::logic_error("alcove_decompose: linear part not in the Weyl group");
  AlcovePoint out;
  out.label = v - lie.rho();
  out.tau.linear = WeylElement{Ainv, sign};
  out.tau.shift = -out.tau.linear.apply(t);
  if (out.tau.apply(v) != lambda) throw std::logic_error("alcove_decompose: round trip failed");
  return out;
}

std::vector<Weight> box_points(const LieData& lie, int k, const IMat* basis) {
  const int r = lie.rank();
  IMat B(r, r);
  if (basis) {
    B = *basis;
  } else {
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) B(i, j) = lie.coroot_basis()[i][j];
  }
  const Eigen::MatrixXd Bd = B.cast<double>();
  const auto det = std::llround(Bd.determinant());
  if (det == 0) throw std::invalid_argument("box_points: degenerate basis");
  // adjugate: lambda = t B  =>  t = lambda adj(B) / det
  const Eigen::MatrixXd inv = Bd.inverse();
  IMat adj(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) adj(i, j) = std::llround(inv(i, j) * static_cast<double>(det));

  std::vector<std::int64_t> lo(r, 0), hi(r, 0);
  for (int mask = 0; mask < (1 << r); ++mask)
    for (int j = 0; j < r; ++j) {
      std::int64_t s = 0;
      for (int i = 0; i < r; ++i)
        if (mask & (1 << i)) s += static_cast<std::int64_t>(k) * B(i, j);
      lo[j] = std::min(lo[j], s);
      hi[j] = std::max(hi[j], s);
    }
  std::vector<Weight> out;
  Weight cur(lo);
  const std::int64_t adet = det < 0 ? -det : det;
  const std::int64_t sdet = det < 0 ? -1 : 1;
  for (;;) {
    bool inside = true;
    for (int j = 0; j < r && inside; ++j) {
      std::int64_t num = 0;
      for (int i = 0; i < r; ++i) num += cur[i] * adj(i, j);
      num *= sdet;  // t_j = num / adet
      if (num < 0 || num >= static_cast<std::int64_t>(k) * adet) inside = false;
    }
    if (inside) out.push_back(cur);
    int i = r - 1;
    while (i >= 0 && cur[i] == hi[i]) {
      cur[i] = lo[i];
      --i;
    }
    if (i < 0) break;
    ++cur[i];
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace shadow_wlo
