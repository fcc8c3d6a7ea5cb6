#include "shadow_wlo/statesum.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>
#include <thread>

namespace shadow_wlo {

namespace {

Rational mod2(Rational r) {
  const std::int64_t n = r.numerator(), d = r.denominator();
  std::int64_t q = n / (2 * d);
  if (n - q * 2 * d < 0) --q;
  return r - Rational(2 * q);
}

// compensated summation, real and imaginary parts separately
struct Neumaier {
  double s[2] = {0, 0}, c[2] = {0, 0};
  void add(cplx z) {
    const double x[2] = {z.real(), z.imag()};
    for (int p = 0; p < 2; ++p) {
      const double t = s[p] + x[p];
      c[p] += std::abs(s[p]) >= std::abs(x[p]) ? (s[p] - t) + x[p] : (x[p] - t) + s[p];
      s[p] = t;
    }
  }
  cplx value() const { return {s[0] + c[0], s[1] + c[1]}; }
};

// runs body(i) for i in [0, n) on up to `threads` workers
template <class F>
void parallel_for(std::size_t n, int threads, F&& body) {
  const std::size_t workers = std::min<std::size_t>(std::max(1, threads), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) body(i);
    });
}

std::vector<std::pair<Weight, int>> to_sorted(std::map<Weight, int>&& m) {
  return {m.begin(), m.end()};
}

// odometer over index vectors with the given radices
bool advance(std::vector<int>& idx, const std::vector<int>& radix) {
  for (std::size_t p = 0; p < idx.size(); ++p) {
    if (++idx[p] < radix[p]) return true;
    idx[p] = 0;
  }
  return false;
}

}  // namespace

bool term_less(const TermData& a, const TermData& b) {
  if (a.alphas != b.alphas) return a.alphas < b.alphas;
  if (a.multiplicity != b.multiplicity) return a.multiplicity < b.multiplicity;
  if (a.phase != b.phase) return a.phase < b.phase;
  return a.det_exponents < b.det_exponents;
}

bool term_regular(const LieData& lie, int k, const TermData& t) {
  return std::all_of(t.det_exponents.begin(), t.det_exponents.end(),
                     [&](const auto& p) { return is_regular_at_level(lie, p.first, k); });
}

cplx evaluate_term(const LieData& lie, int k, const TermData& t) {
  if (!term_regular(lie, k, t)) return 0.0;
  double v = static_cast<double>(t.multiplicity);
  for (const auto& [lambda, e] : t.det_exponents) v *= std::pow(weyl_denominator_at_level(lie, lambda, k), e);
  return v * std::polar(1.0, std::numbers::pi * boost::rational_cast<double>(t.phase));
}

TermSource::TermSource(const LieData& lie, int k, std::vector<Weight> colors) : lie_(&lie), k_(k) {
  for (auto& c : colors) characters_.emplace_back(lie, std::move(c));
}

std::vector<TermData> TermSource::terms(const Weight& alpha0) const {
  const int m = static_cast<int>(characters_.size());
  std::vector<int> idx(m, 0), radix;
  for (const auto& ch : characters_) radix.push_back(static_cast<int>(ch.weights().size()));
  std::vector<TermData> out;
  do {
    TermData t;
    t.alphas.push_back(alpha0);
    for (int i = 0; i < m; ++i) {
      const auto& [w, mult] = characters_[i].weights()[idx[i]];
      t.alphas.push_back(w);
      t.multiplicity *= mult;
    }
    complete(t);
    out.push_back(std::move(t));
  } while (advance(idx, radix));
  return out;
}

AbstractTerms::AbstractTerms(const LieData& lie, int k, LinkGeometry geometry)
    : TermSource(lie, k, geometry.colors), geometry_(std::move(geometry)) {}

Weight AbstractTerms::face_weight(const std::vector<Weight>& alphas, int face) const {
  Weight w = alphas[0];
  for (int j = 0; j < geometry_.num_ribbons(); ++j) w += geometry_.u[face][j] * alphas[j + 1];
  return w;
}

void AbstractTerms::complete(TermData& t) const {
  std::map<Weight, int> det;
  for (int y = 0; y < geometry_.num_faces(); ++y) det[face_weight(t.alphas, y)] += geometry_.chi[y];
  std::int64_t num = 0;
  for (int i = 0; i < geometry_.num_ribbons(); ++i) {
    const Weight sum = face_weight(t.alphas, geometry_.plus_face[i]) + face_weight(t.alphas, geometry_.minus_face[i]);
    num += geometry_.winding[i] * lie().scaled_inner(t.alphas[i + 1], sum);
  }
  t.phase = mod2(Rational(num, lie().gram_scale() * level()));
  t.det_exponents = to_sorted(std::move(det));
}

EmbeddedTerms::EmbeddedTerms(const LieData& lie, int k, EmbeddedStateData data)
    : TermSource(lie, k, data.colors), data_(std::move(data)) {}

void EmbeddedTerms::complete(TermData& t) const {
  const int m = static_cast<int>(data_.colors.size());
  std::map<Weight, int> det;
  for (const auto& [f, w] : data_.vertex_classes) {
    Weight lambda = t.alphas[0];
    for (int j = 0; j < m; ++j) lambda += f[j] * t.alphas[j + 1];
    det[lambda] += w;
  }
  std::int64_t num = 0;
  for (int i = 0; i < m; ++i) {
    Weight x = data_.time_total[i] * t.alphas[0];
    for (int j = 0; j < m; ++j) x += data_.rung_sums[i][j] * t.alphas[j + 1];
    num += lie().scaled_inner(t.alphas[i + 1], x);
  }
  t.phase = mod2(Rational(num, lie().gram_scale() * data_.N * level()));
  t.det_exponents = to_sorted(std::move(det));
}

SumResult wlo_sum(const TermSource& source, int threads) {
  const auto& lie = source.lie();
  const int k = source.level();
  const auto box = box_points(lie, k);
  struct Partial {
    cplx value;
    std::int64_t terms = 0, skipped = 0;
  };
  std::vector<Partial> partial(box.size());
  parallel_for(box.size(), threads, [&](std::size_t p) {
    Neumaier acc;
    for (const auto& t : source.terms(box[p])) {
      ++partial[p].terms;
      if (!term_regular(lie, k, t)) {
        ++partial[p].skipped;
        continue;
      }
      acc.add(evaluate_term(lie, k, t));
    }
    partial[p].value = acc.value();
  });
  SumResult out;
  Neumaier total;
  for (const auto& p : partial) {
    total.add(p.value);
    out.terms += p.terms;
    out.skipped_singular += p.skipped;
  }
  out.value = total.value();
  out.empty_label_set = level_labels(lie, k).empty();
  return out;
}

double weyl_order(const LieData& lie) { return static_cast<double>(lie.weyl_group().size()); }

SumResult shadow_invariant(const LieData& lie, int k, const LinkGeometry& g, int threads) {
  const auto labels = level_labels(lie, k);
  SumResult out;
  out.empty_label_set = labels.empty();
  if (labels.empty()) return out;
  const int nl = static_cast<int>(labels.size()), nf = g.num_faces(), m = g.num_ribbons();

  std::vector<double> qdim(nl);
  std::vector<Rational> twist(nl);  // <lambda, lambda + 2 rho> / k
  for (int a = 0; a < nl; ++a) {
    qdim[a] = quantum_dim(lie, k, labels[a]);
    twist[a] = Rational(lie.scaled_inner(labels[a], labels[a] + 2 * lie.rho()), lie.gram_scale() * k);
  }
  // fusion[i][p * nl + q] for plus-face label p and minus-face label q
  std::vector<std::vector<std::int64_t>> fusion(m, std::vector<std::int64_t>(nl * nl));
  for (int i = 0; i < m; ++i) {
    const Character ch(lie, g.colors[i]);
    for (int p = 0; p < nl; ++p)
      for (int q = 0; q < nl; ++q) fusion[i][p * nl + q] = fusion_coefficient(lie, k, ch, labels[p], labels[q]);
  }
  std::vector<int> gleam(nf);
  for (int y = 0; y < nf; ++y) gleam[y] = g.gleam(y);

  // face 0 is split across workers; the rest is an odometer
  std::vector<cplx> partial(nl);
  std::vector<std::int64_t> counts(nl, 0);
  parallel_for(nl, threads, [&](std::size_t first) {
    std::vector<int> idx(nf, 0), rest_idx(nf - 1, 0), rest_radix(nf - 1, nl);
    idx[0] = static_cast<int>(first);
    Neumaier acc;
    do {
      std::copy(rest_idx.begin(), rest_idx.end(), idx.begin() + 1);
      ++counts[first];
      std::int64_t n = 1;
      for (int i = 0; i < m && n; ++i) n *= fusion[i][idx[g.plus_face[i]] * nl + idx[g.minus_face[i]]];
      if (!n) continue;
      double v = static_cast<double>(n);
      Rational phase(0);
      for (int y = 0; y < nf; ++y) {
        v *= std::pow(qdim[idx[y]], g.chi[y]);
        phase += gleam[y] * twist[idx[y]];
      }
      acc.add(v * std::polar(1.0, std::numbers::pi * boost::rational_cast<double>(mod2(phase))));
    } while (advance(rest_idx, rest_radix));
    partial[first] = acc.value();
  });
  Neumaier total;
  for (int a = 0; a < nl; ++a) {
    total.add(partial[a]);
    out.terms += counts[a];
  }
  out.value = total.value();
  return out;
}

LinkGeometry geometry_for(const AbstractLink& link, Mode mode, int refinement, int N) {
  if (mode == Mode::abstract) return abstract_geometry(link);
  return embedded_geometry(embed_link(link, refinement, N));
}

std::unique_ptr<TermSource> make_terms(const LieData& lie, int k, const AbstractLink& link, Mode mode,
                                       int refinement, int N) {
  if (mode == Mode::abstract) return std::make_unique<AbstractTerms>(lie, k, abstract_geometry(link));
  return std::make_unique<EmbeddedTerms>(lie, k, embedded_state_data(embed_link(link, refinement, N)));
}

CompareReport compare_theorem(const LieData& lie, int k, const AbstractLink& link, const CompareOptions& opt) {
  link.validate(lie);
  AbstractLink empty;
  empty.genus = link.genus;
  CompareReport rep;
  rep.wlo_link = wlo_sum(*make_terms(lie, k, link, opt.mode, opt.refinement, opt.N), opt.threads);
  rep.wlo_empty = wlo_sum(*make_terms(lie, k, empty, opt.mode, opt.refinement, opt.N), opt.threads);
  rep.shadow_link = shadow_invariant(lie, k, abstract_geometry(link), opt.threads);
  rep.shadow_empty = shadow_invariant(lie, k, abstract_geometry(empty), opt.threads);
  rep.empty_label_set = rep.shadow_link.empty_label_set;
  if (rep.empty_label_set) {
    // no labels: both sides vanish identically
    rep.pass = std::abs(rep.wlo_link.value) <= opt.tolerance && std::abs(rep.wlo_empty.value) <= opt.tolerance;
    return rep;
  }
  rep.wlo_ratio = rep.wlo_link.value / rep.wlo_empty.value;
  rep.shadow_ratio = rep.shadow_link.value / rep.shadow_empty.value;
  rep.ratio_diff = std::abs(rep.wlo_ratio - rep.shadow_ratio) / std::max(1.0, std::abs(rep.shadow_ratio));
  const double norm = weyl_order(lie) * std::pow(weyl_denominator_at_level(lie, lie.rho(), k), 2 - 2 * link.genus);
  const cplx predicted = norm * rep.shadow_link.value;
  rep.absolute_diff = std::abs(rep.wlo_link.value - predicted) / std::max(1.0, std::abs(predicted));
  rep.pass = rep.ratio_diff <= opt.tolerance && rep.absolute_diff <= opt.tolerance;
  return rep;
}

AgreementReport mode_agreement(const LieData& lie, int k, const AbstractLink& link, int refinement, int N) {
  link.validate(lie);
  const AbstractTerms abs(lie, k, abstract_geometry(link));
  const EmbeddedTerms emb(lie, k, embedded_state_data(embed_link(link, refinement, N)));
  AgreementReport rep;
  for (const auto& a0 : box_points(lie, k)) {
    auto x = abs.terms(a0), y = emb.terms(a0);
    std::sort(x.begin(), x.end(), term_less);
    std::sort(y.begin(), y.end(), term_less);
    rep.terms += static_cast<std::int64_t>(x.size());
    if (x == y) continue;
    rep.ok = false;
    if (rep.first_difference.empty()) {
      std::ostringstream os;
      os << "alpha_0 = " << a0.str() << ": ";
      if (x.size() != y.size()) {
        os << x.size() << " abstract terms against " << y.size() << " embedded";
      } else {
        for (std::size_t i = 0; i < x.size(); ++i)
          if (!(x[i] == y[i])) {
            os << "term " << i << " phase " << x[i].phase << " vs " << y[i].phase;
            break;
          }
      }
      rep.first_difference = os.str();
    }
  }
  return rep;
}

ColoringTerm to_coloring(const AbstractTerms& source, const TermData& term) {
  const auto& lie = source.lie();
  const auto& g = source.geometry();
  const int k = source.level();
  ColoringTerm out;
  if (!term_regular(lie, k, term)) return out;
  out.regular = true;
  const double d_rho = weyl_denominator_at_level(lie, lie.rho(), k);
  std::vector<Weight> lambdas;
  for (int y = 0; y < g.num_faces(); ++y) {
    const Weight lambda = source.face_weight(term.alphas, y);
    const auto ap = alcove_decompose(lie, k, lambda);
    out.coloring.push_back(ap.label);
    out.signs.push_back(ap.tau.sign());
    const double want = ap.tau.sign() * quantum_dim(lie, k, ap.label) * d_rho;
    out.det_deviation =
        std::max(out.det_deviation, std::abs(weyl_denominator_at_level(lie, lambda, k) - want) / std::abs(d_rho));
    lambdas.push_back(lambda);
  }
  // sum_i eps_i <alpha_i, lambda_+ + lambda_-> against sum_Y gleam_Y <phi_Y, phi_Y + 2 rho>, mod 2k
  std::int64_t lhs = 0, rhs = 0;
  for (int i = 0; i < g.num_ribbons(); ++i)
    lhs += g.winding[i] * lie.scaled_inner(term.alphas[i + 1], lambdas[g.plus_face[i]] + lambdas[g.minus_face[i]]);
  for (int y = 0; y < g.num_faces(); ++y) {
    const Weight& phi = out.coloring[y];
    rhs += g.gleam(y) * lie.scaled_inner(phi, phi + 2 * lie.rho());
  }
  const Rational scale(1, lie.gram_scale() * k);
  out.phase_ok = mod2(Rational(lhs) * scale) == mod2(Rational(rhs) * scale);
  return out;
}

ColoringReport coloring_check(const LieData& lie, int k, const LinkGeometry& g) {
  const AbstractTerms source(lie, k, g);
  ColoringReport rep;
  std::map<std::vector<Weight>, std::int64_t> orbit;
  for (const auto& a0 : box_points(lie, k))
    for (const auto& t : source.terms(a0)) {
      ++rep.terms;
      const auto c = to_coloring(source, t);
      if (!c.regular) continue;
      ++rep.regular;
      rep.max_det_deviation = std::max(rep.max_det_deviation, c.det_deviation);
      if (!c.phase_ok && rep.phase_ok) {
        rep.phase_ok = false;
        rep.first_failure = "phase mismatch at alpha_0 = " + a0.str();
      }
      std::int64_t w = t.multiplicity;
      for (int y = 0; y < g.num_faces(); ++y)
        if (c.signs[y] < 0 && std::abs(g.chi[y]) % 2) w = -w;
      orbit[c.coloring] += w;
    }
  // every coloring, hit or not
  const auto labels = level_labels(lie, k);
  if (labels.empty()) return rep;
  const int nl = static_cast<int>(labels.size()), nf = g.num_faces();
  std::vector<Character> chars;
  for (const auto& c : g.colors) chars.emplace_back(lie, c);
  const auto W = static_cast<std::int64_t>(lie.weyl_group().size());
  std::vector<int> idx(nf, 0), radix(nf, nl);
  do {
    std::vector<Weight> phi;
    for (int y = 0; y < nf; ++y) phi.push_back(labels[idx[y]]);
    std::int64_t want = W;
    for (int i = 0; i < g.num_ribbons() && want; ++i)
      want *= fusion_coefficient(lie, k, chars[i], phi[g.plus_face[i]], phi[g.minus_face[i]]);
    const auto it = orbit.find(phi);
    const std::int64_t got = it == orbit.end() ? 0 : it->second;
    if (got != want && rep.orbit_ok) {
      rep.orbit_ok = false;
      std::ostringstream os;
      os << "coloring";
      for (const auto& p : phi) os << ' ' << p.str();
      os << ": signed multiplicity " << got << ", expected " << want;
      if (rep.first_failure.empty()) rep.first_failure = os.str();
    }
  } while (advance(idx, radix));
  return rep;
}

}  // namespace shadow_wlo
