#include "weylkit/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "weylkit/error.hpp"

namespace weylkit {

namespace {

cplx e(const Phase& p) { return p.to_complex(); }

Element random_element(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> normal;
  Element f(n);
  for (int i = 0; i < n; ++i) f[i] = cplx(normal(rng), normal(rng));
  return f;
}

/// Orthonormal basis of the common kernel of the given operators.
Eigen::MatrixXcd joint_kernel(const std::vector<Eigen::MatrixXcd>& ops, int n, double tol) {
  Eigen::MatrixXcd gram = Eigen::MatrixXcd::Zero(n, n);
  for (const auto& m : ops) gram += m.adjoint() * m;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(gram);
  std::vector<int> keep;
  for (int i = 0; i < n; ++i)
    if (eig.eigenvalues()[i] < tol) keep.push_back(i);
  Eigen::MatrixXcd basis(n, static_cast<int>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k) basis.col(static_cast<int>(k)) = eig.eigenvectors().col(keep[k]);
  return basis;
}

}  // namespace

TwistedAlgebra::TwistedAlgebra(FiniteGroupoid g, TwoCocycle omega) : g_(std::move(g)), omega_(std::move(omega)) {}

std::optional<std::pair<Arrow, Phase>> TwistedAlgebra::product(Arrow a, Arrow b) const {
  if (!g_.composable(a, b)) return std::nullopt;
  return std::make_pair(g_.compose(a, b), omega_(a, b));
}

std::pair<Arrow, Phase> TwistedAlgebra::star(Arrow a) const {
  const Arrow ai = g_.inverse(a);
  return {ai, -omega_(a, ai)};
}

Element TwistedAlgebra::multiply(const Element& f, const Element& h) const {
  Element out = Element::Zero(dim());
  for (Arrow a = 0; a < dim(); ++a) {
    if (f[a] == cplx(0)) continue;
    for (Arrow b : g_.arrows_to(g_.source(a))) out[g_.compose(a, b)] += f[a] * h[b] * e(omega_(a, b));
  }
  return out;
}

Element TwistedAlgebra::star(const Element& f) const {
  Element out = Element::Zero(dim());
  for (Arrow a = 0; a < dim(); ++a) {
    const auto [ai, p] = star(a);
    out[ai] += std::conj(f[a]) * e(p);
  }
  return out;
}

Element TwistedAlgebra::delta(Arrow a) const {
  Element out = Element::Zero(dim());
  out[a] = 1.0;
  return out;
}

Eigen::MatrixXcd TwistedAlgebra::left_mult(Arrow a) const {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim(), dim());
  for (Arrow b : g_.arrows_to(g_.source(a))) m(g_.compose(a, b), b) += e(omega_(a, b));
  return m;
}

Eigen::MatrixXcd TwistedAlgebra::right_mult(Arrow a) const {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim(), dim());
  for (Arrow b : g_.arrows_from(g_.target(a))) m(g_.compose(b, a), b) += e(omega_(b, a));
  return m;
}

// ---------------------------------------------------------------------------

Eigen::MatrixXcd RegularRep::operator()(const Element& f) const {
  const int n = static_cast<int>(basis.size());
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n, n);
  for (std::size_t a = 0; a < matrices.size(); ++a)
    if (f[a] != cplx(0)) out += f[a] * matrices[a];
  return out;
}

RegularRep regular_representation(const TwistedAlgebra& alg, Arrow unit) {
  const FiniteGroupoid& g = alg.groupoid();
  RegularRep rep;
  rep.unit = unit;
  rep.basis = g.arrows_from(unit);
  std::vector<int> pos(g.size(), -1);
  for (std::size_t i = 0; i < rep.basis.size(); ++i) pos[rep.basis[i]] = static_cast<int>(i);
  const int n = static_cast<int>(rep.basis.size());
  rep.matrices.assign(g.size(), Eigen::MatrixXcd::Zero(n, n));
  for (Arrow a = 0; a < g.size(); ++a)
    for (Arrow h : rep.basis)
      if (g.composable(a, h)) rep.matrices[a](pos[g.compose(a, h)], pos[h]) += e(alg.cocycle()(a, h));
  return rep;
}

double reduced_norm(const TwistedAlgebra& alg, const Element& f) {
  double norm = 0;
  for (Arrow u : alg.groupoid().units()) {
    const Eigen::MatrixXcd m = regular_representation(alg, u)(f);
    if (m.size() == 0) continue;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    norm = std::max(norm, svd.singularValues()(0));
  }
  return norm;
}

double homomorphism_defect(const TwistedAlgebra& alg, const std::vector<Element>& samples) {
  double worst = 0;
  for (Arrow u : alg.groupoid().units()) {
    const RegularRep rep = regular_representation(alg, u);
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const Element& f = samples[i];
      const Element& h = samples[(i + 1) % samples.size()];
      const Eigen::MatrixXcd pf = rep(f);
      worst = std::max(worst, (rep(alg.multiply(f, h)) - pf * rep(h)).cwiseAbs().maxCoeff());
      worst = std::max(worst, (rep(alg.star(f)) - pf.adjoint()).cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

double associativity_defect(const TwistedAlgebra& alg, int triples, std::uint64_t seed) {
  const FiniteGroupoid& g = alg.groupoid();
  std::mt19937_64 rng(seed);
  auto pick = [&](const std::vector<Arrow>& v) {
    return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
  };
  double worst = 0;
  for (int i = 0; i < triples; ++i) {
    const Arrow a = std::uniform_int_distribution<Arrow>(0, g.size() - 1)(rng);
    const Arrow b = pick(g.arrows_to(g.source(a)));
    const Arrow c = pick(g.arrows_to(g.source(b)));
    const Element da = alg.delta(a), db = alg.delta(b), dc = alg.delta(c);
    const Element lhs = alg.multiply(alg.multiply(da, db), dc);
    const Element rhs = alg.multiply(da, alg.multiply(db, dc));
    worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
  }
  return worst;
}

std::string grading_violation(const TwistedAlgebra& alg, const Grading& c) {
  const FiniteGroupoid& g = alg.groupoid();
  for (Arrow a = 0; a < g.size(); ++a)
    for (Arrow b : g.arrows_to(g.source(a)))
      if (c.normalize(c.values[g.compose(a, b)]) != c.add(c.values[a], c.values[b]))
        return g.id(a) + "," + g.id(b);
  return {};
}

Eigen::MatrixXcd center_basis(const TwistedAlgebra& alg, double tol) {
  std::vector<Eigen::MatrixXcd> ops;
  for (Arrow a = 0; a < alg.dim(); ++a) ops.push_back(alg.left_mult(a) - alg.right_mult(a));
  return joint_kernel(ops, alg.dim(), tol);
}

WedderburnResult wedderburn_blocks(const TwistedAlgebra& alg, std::uint64_t seed, double gap) {
  const int n = alg.dim();
  const Eigen::MatrixXcd z = center_basis(alg);
  const int m = static_cast<int>(z.cols());
  std::mt19937_64 rng(seed);

  WedderburnResult out;
  out.dim = n;
  out.center_dim = m;
  out.seed = seed;
  for (int attempt = 1; attempt <= 6; ++attempt) {
    out.attempts = attempt;
    const Element coeffs = random_element(rng, m);
    Element h = z * coeffs;
    h += alg.star(h);
    Eigen::MatrixXcd lh(n, n);
    for (Arrow b = 0; b < n; ++b) lh.col(b) = alg.multiply(h, alg.delta(b));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig((lh + lh.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
    const Eigen::VectorXd& ev = eig.eigenvalues();

    std::vector<int> sizes{1};
    for (int i = 1; i < n; ++i) {
      if (ev[i] - ev[i - 1] > gap)
        sizes.push_back(1);
      else
        ++sizes.back();
    }
    std::vector<int> blocks;
    bool square = true;
    for (int s : sizes) {
      const int r = static_cast<int>(std::lround(std::sqrt(static_cast<double>(s))));
      square = square && r * r == s;
      blocks.push_back(r);
    }
    if (square && static_cast<int>(blocks.size()) == m) {
      std::sort(blocks.begin(), blocks.end());
      out.blocks = std::move(blocks);
      return out;
    }
  }
  throw Error(ErrorCode::DegenerateSample, "central element spectra kept colliding",
              "seed=" + std::to_string(seed));
}

AlgebraComparison compare_algebras(const TwistedAlgebra& a, const TwistedAlgebra& b, std::uint64_t seed,
                                   double gap) {
  AlgebraComparison cmp;
  cmp.left = wedderburn_blocks(a, seed, gap);
  cmp.right = wedderburn_blocks(b, seed, gap);
  cmp.dims_equal = cmp.left.dim == cmp.right.dim;
  cmp.centers_equal = cmp.left.center_dim == cmp.right.center_dim;
  cmp.blocks_equal = cmp.left.blocks == cmp.right.blocks;
  return cmp;
}

CommutantReport commutant_check(const TwistedAlgebra& alg, const Grading& c, const Subgroupoid& s, double tol) {
  const FiniteGroupoid& g = alg.groupoid();
  CommutantReport rep;
  std::vector<Arrow> a0;
  for (Arrow a = 0; a < g.size(); ++a)
    if (c.is_zero(c.values[a])) a0.push_back(a);
  rep.a0_dim = static_cast<int>(a0.size());
  rep.d_dim = static_cast<int>(s.members().size());
  rep.d_in_a0 = std::all_of(s.members().begin(), s.members().end(), [&](Arrow a) { return c.is_zero(c.values[a]); });

  rep.d_commutative = true;
  for (Arrow x : s.members())
    for (Arrow y : s.members()) {
      const auto xy = alg.product(x, y);
      const auto yx = alg.product(y, x);
      if (xy.has_value() != yx.has_value() || (xy && *xy != *yx)) rep.d_commutative = false;
    }

  std::vector<Eigen::MatrixXcd> ops;
  for (Arrow x : s.members()) {
    const Eigen::MatrixXcd comm = alg.left_mult(x) - alg.right_mult(x);
    Eigen::MatrixXcd restricted(g.size(), rep.a0_dim);
    for (int j = 0; j < rep.a0_dim; ++j) restricted.col(j) = comm.col(a0[j]);
    ops.push_back(std::move(restricted));
  }
  const Eigen::MatrixXcd kernel = joint_kernel(ops, rep.a0_dim, tol);
  rep.commutant_dim = static_cast<int>(kernel.cols());

  double best = 0;
  for (int j = 0; j < rep.a0_dim; ++j) {
    if (s.contains(a0[j])) continue;
    const double w = kernel.cols() ? kernel.row(j).norm() : 0.0;
    if (w > std::sqrt(tol) && w > best) {
      best = w;
      rep.witness = g.id(a0[j]);
    }
  }
  return rep;
}

ExpectationReport expectation_checks(const TwistedAlgebra& alg, const WeylData& w, int trials, std::uint64_t seed,
                                     const Tolerances& tol) {
  const int n = alg.dim();
  auto as_vector = [](const Element& f) { return std::vector<cplx>(f.data(), f.data() + f.size()); };
  auto delta_of = [&](const Element& f) { return conditional_expectation(w, as_vector(f)); };

  ExpectationReport rep;
  rep.trials = trials;
  rep.seed = seed;
  rep.min_value = INFINITY;
  std::mt19937_64 rng(seed);
  for (int t = 0; t < trials; ++t) {
    const Element f = random_element(rng, n);
    const auto values = delta_of(alg.multiply(alg.star(f), f));
    const double scale = std::max(1.0, f.squaredNorm());
    double largest = 0;
    bool positive = true;
    for (const cplx& v : values) {
      rep.min_value = std::min(rep.min_value, v.real());
      rep.max_imag = std::max(rep.max_imag, std::abs(v.imag()));
      if (v.real() < -tol.positivity * scale || std::abs(v.imag()) > tol.positivity * scale) positive = false;
      largest = std::max(largest, std::abs(v));
    }
    if (!positive) ++rep.positivity_failures;
    if (largest <= tol.faithfulness && reduced_norm(alg, f) > tol.faithfulness) ++rep.faithfulness_failures;
  }
  if (rep.positivity_failures > 0)
    throw Error(ErrorCode::ConventionMismatch,
                "Delta(f*f) is not positive in " + std::to_string(rep.positivity_failures) + " of " +
                    std::to_string(trials) + " trials",
                "seed=" + std::to_string(seed));

  // f -> sum_x Delta(f*f)(x) as a Hermitian form on C^G
  Eigen::MatrixXcd form(n, n);
  for (Arrow a = 0; a < n; ++a) {
    const Element da_star = alg.star(alg.delta(a));
    for (Arrow b = 0; b < n; ++b) {
      cplx sum = 0;
      for (const cplx& v : delta_of(alg.multiply(da_star, alg.delta(b)))) sum += v;
      form(a, b) = sum;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig((form + form.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
  rep.form_min_eigenvalue = eig.eigenvalues()[0];
  rep.faithful_form = rep.form_min_eigenvalue > tol.faithfulness;

  // Delta on D is the Fourier transform; invert it and compare.
  Element d = Element::Zero(n);
  const Element noise = random_element(rng, n);
  for (Arrow a : w.s.members()) d[a] = noise[a];
  const auto hat = delta_of(d);
  Element back = Element::Zero(n);
  for (int x = 0; x < w.dual.size(); ++x) {
    const auto& fibre = w.bundle.fibre(w.dual.base_of(x));
    for (int e : fibre)
      back[w.bundle.arrow(e)] +=
          std::conj(w.dual.pairing(x, e).to_complex()) * hat[x] / static_cast<double>(fibre.size());
  }
  rep.idempotence_defect = (back - d).cwiseAbs().maxCoeff();
  return rep;
}

}  // namespace weylkit
