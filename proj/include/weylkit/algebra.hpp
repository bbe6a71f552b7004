#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "weylkit/cocycle.hpp"
#include "weylkit/groupoid.hpp"
#include "weylkit/weyl.hpp"

namespace weylkit {

using cplx = std::complex<double>;
/// Coefficients of a function on G, indexed by arrow.
using Element = Eigen::VectorXcd;

struct Tolerances {
  double spectral = 1e-8;
  double homomorphism = 1e-12;
  double positivity = 1e-10;
  double faithfulness = 1e-8;
};

/// Twisted convolution algebra C(G, w) on the basis of arrow indicators.
class TwistedAlgebra {
 public:
  TwistedAlgebra(FiniteGroupoid g, TwoCocycle omega);

  const FiniteGroupoid& groupoid() const { return g_; }
  const TwoCocycle& cocycle() const { return omega_; }
  int dim() const { return g_.size(); }

  /// delta_a * delta_b = e(w(a,b)) delta_ab, or nothing if a,b are not composable.
  std::optional<std::pair<Arrow, Phase>> product(Arrow a, Arrow b) const;
  /// delta_a^* = conj e(w(a,a^-1)) delta_{a^-1}
  std::pair<Arrow, Phase> star(Arrow a) const;

  Element multiply(const Element& f, const Element& h) const;
  Element star(const Element& f) const;
  Element delta(Arrow a) const;

  /// Matrix of z -> delta_a * z (left) or z -> z * delta_a (right) on C^G.
  Eigen::MatrixXcd left_mult(Arrow a) const;
  Eigen::MatrixXcd right_mult(Arrow a) const;

 private:
  FiniteGroupoid g_;
  TwoCocycle omega_;
};

/// pi_u on l^2(G_u); one matrix per arrow, rows and columns indexed by `basis`.
struct RegularRep {
  Arrow unit = kNone;
  std::vector<Arrow> basis;
  std::vector<Eigen::MatrixXcd> matrices;

  Eigen::MatrixXcd operator()(const Element& f) const;
};

RegularRep regular_representation(const TwistedAlgebra& alg, Arrow unit);
double reduced_norm(const TwistedAlgebra& alg, const Element& f);

/// Largest deviation of pi_u from a *-homomorphism over the given samples.
double homomorphism_defect(const TwistedAlgebra& alg, const std::vector<Element>& samples);
/// Largest |(ab)c - a(bc)| over `triples` random basis triples.
double associativity_defect(const TwistedAlgebra& alg, int triples, std::uint64_t seed);
/// Exact check that A_s A_t lies in A_{s+t}; empty when it holds.
std::string grading_violation(const TwistedAlgebra& alg, const Grading& c);

/// Orthonormal basis (columns) of the center.
Eigen::MatrixXcd center_basis(const TwistedAlgebra& alg, double tol = 1e-8);

struct WedderburnResult {
  std::vector<int> blocks;  // sorted ascending
  int dim = 0;
  int center_dim = 0;
  std::uint64_t seed = 0;
  int attempts = 0;
};

/// Throws DegenerateSample after six unlucky central elements.
WedderburnResult wedderburn_blocks(const TwistedAlgebra& alg, std::uint64_t seed, double gap = 1e-8);

struct AlgebraComparison {
  WedderburnResult left, right;
  bool dims_equal = false;
  bool centers_equal = false;
  bool blocks_equal = false;
  bool pass() const { return dims_equal && centers_equal && blocks_equal; }
};

AlgebraComparison compare_algebras(const TwistedAlgebra& a, const TwistedAlgebra& b, std::uint64_t seed,
                                   double gap = 1e-8);

struct CommutantReport {
  int a0_dim = 0;
  int d_dim = 0;
  int commutant_dim = 0;
  bool d_in_a0 = false;
  bool d_commutative = false;
  std::string witness;  // arrow outside S in the support of a commutant vector
  bool maximal_abelian() const { return d_in_a0 && d_commutative && commutant_dim == d_dim; }
};

CommutantReport commutant_check(const TwistedAlgebra& alg, const Grading& c, const Subgroupoid& s,
                                double tol = 1e-8);

struct ExpectationReport {
  int trials = 0;
  std::uint64_t seed = 0;
  int positivity_failures = 0;
  double min_value = 0;          // smallest real part of Delta(f*f) seen
  double max_imag = 0;           // largest imaginary part seen
  int faithfulness_failures = 0;
  double form_min_eigenvalue = 0;  // of f -> sum_x Delta(f*f)(x)
  double idempotence_defect = 0;   // on D, via inverse Fourier transform
  bool faithful_form = false;      // form_min_eigenvalue above the faithfulness tolerance
  bool pass() const {
    return positivity_failures == 0 && faithfulness_failures == 0 && faithful_form && idempotence_defect <= 1e-10;
  }
};

/// Random trials of positivity and faithfulness of Delta. Throws
/// ConventionMismatch if any trial produces a non-positive value.
ExpectationReport expectation_checks(const TwistedAlgebra& alg, const WeylData& w, int trials, std::uint64_t seed,
                                     const Tolerances& tol = {});

}  // namespace weylkit
