#pragma once

#include "shadow_wlo/embedded.hpp"
#include "shadow_wlo/link.hpp"
#include "shadow_wlo/oscillatory.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace shadow_wlo {

enum class Mode { abstract, embedded };

// One summand of the discrete Wilson loop state sum, before evaluation.
struct TermData {
  std::vector<Weight> alphas;  // alpha_0, then one weight per ribbon
  std::int64_t multiplicity = 1;
  Rational phase;              // exponent divided by pi i, reduced to [0, 2)
  std::vector<std::pair<Weight, int>> det_exponents;  // sorted by weight; zero exponents kept

  bool operator==(const TermData&) const = default;
};
bool term_less(const TermData& a, const TermData& b);

// cplx 0 when some determinant argument is singular
bool term_regular(const LieData& lie, int k, const TermData& t);
cplx evaluate_term(const LieData& lie, int k, const TermData& t);

class TermSource {
 public:
  TermSource(const LieData& lie, int k, std::vector<Weight> colors);
  virtual ~TermSource() = default;
  TermSource(const TermSource&) = delete;
  TermSource& operator=(const TermSource&) = delete;

  const LieData& lie() const { return *lie_; }
  int level() const { return k_; }
  // every term with the given alpha_0, in a fixed order, singular ones included
  std::vector<TermData> terms(const Weight& alpha0) const;

 protected:
  // fills phase and det_exponents from the alphas
  virtual void complete(TermData& t) const = 0;

 private:
  const LieData* lie_;
  int k_;
  std::vector<Character> characters_;
};

class AbstractTerms final : public TermSource {
 public:
  AbstractTerms(const LieData& lie, int k, LinkGeometry geometry);
  const LinkGeometry& geometry() const { return geometry_; }
  // alpha_0 + sum_j u_j(Y) alpha_j
  Weight face_weight(const std::vector<Weight>& alphas, int face) const;

 protected:
  void complete(TermData& t) const override;

 private:
  LinkGeometry geometry_;
};

class EmbeddedTerms final : public TermSource {
 public:
  EmbeddedTerms(const LieData& lie, int k, EmbeddedStateData data);

 protected:
  void complete(TermData& t) const override;

 private:
  EmbeddedStateData data_;
};

struct SumResult {
  cplx value{0.0, 0.0};
  std::int64_t terms = 0;
  std::int64_t skipped_singular = 0;
  bool empty_label_set = false;  // k below the dual Coxeter number
};

// sum over alpha_0 in the box and the weights of the ribbon characters. Partial sums per
// alpha_0 are reduced in a fixed order, so the result does not depend on threads.
SumResult wlo_sum(const TermSource& source, int threads = 1);

// Turaev shadow state sum over level-k colorings of the faces
SumResult shadow_invariant(const LieData& lie, int k, const LinkGeometry& geometry, int threads = 1);
double weyl_order(const LieData& lie);

struct CompareOptions {
  Mode mode = Mode::abstract;
  int refinement = 1;
  int N = 4;
  int threads = 1;
  double tolerance = 1e-9;
};

struct CompareReport {
  SumResult wlo_link, wlo_empty, shadow_link, shadow_empty;
  cplx wlo_ratio{0.0, 0.0}, shadow_ratio{0.0, 0.0};
  double ratio_diff = 0.0;     // relative
  double absolute_diff = 0.0;  // wlo(L) against |W| D_rho^{2-2g} |L|, relative
  bool pass = false;
  bool empty_label_set = false;
};

CompareReport compare_theorem(const LieData& lie, int k, const AbstractLink& link, const CompareOptions& opt);

// geometry for a mode; embedded mode builds the chimney surface
LinkGeometry geometry_for(const AbstractLink& link, Mode mode, int refinement, int N);
std::unique_ptr<TermSource> make_terms(const LieData& lie, int k, const AbstractLink& link, Mode mode,
                                       int refinement, int N);

// term-by-term agreement of the two generators, exact
struct AgreementReport {
  bool ok = true;
  std::int64_t terms = 0;
  std::string first_difference;
};
AgreementReport mode_agreement(const LieData& lie, int k, const AbstractLink& link, int refinement, int N);

// Rewriting of one regular term as a shadow coloring.
struct ColoringTerm {
  bool regular = false;
  std::vector<Weight> coloring;  // per face
  std::vector<int> signs;        // sign of the affine Weyl element per face
  double det_deviation = 0.0;    // max over faces of |Delta(lambda/k) - sign dim_q D_rho| / D_rho
  bool phase_ok = false;
};
ColoringTerm to_coloring(const AbstractTerms& source, const TermData& term);

struct ColoringReport {
  std::int64_t terms = 0;
  std::int64_t regular = 0;
  double max_det_deviation = 0.0;
  bool phase_ok = true;
  bool orbit_ok = true;
  std::string first_failure;
  bool ok(double tol = 1e-10) const { return phase_ok && orbit_ok && max_det_deviation <= tol; }
};
// every term maps to a coloring with matching determinant and phase, and the signed
// multiplicities over each coloring add up to |W| times the fusion numbers
ColoringReport coloring_check(const LieData& lie, int k, const LinkGeometry& geometry);

}  // namespace shadow_wlo
