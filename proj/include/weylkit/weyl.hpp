#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "weylkit/cocycle.hpp"
#include "weylkit/dual.hpp"
#include "weylkit/groupoid.hpp"

namespace weylkit {

struct HypothesisItem {
  std::string name;
  bool pass = false;
  std::string witness;
  /// Topological conditions that hold automatically for finite discrete groupoids.
  bool vacuous = false;
};

struct HypothesisReport {
  std::vector<HypothesisItem> items;

  bool all_pass() const;
  const HypothesisItem& at(const std::string& name) const;
  std::vector<std::string> failures() const;
};

struct ImmCentResult {
  bool pass = true;
  Arrow t = kNone;  // non-central element whose premise holds
  int k = 0;        // least k making the premise true for t
  Arrow s = kNone;  // element of S not commuting with t
};

/// S <= T group bundles inside G. For each t, the premise at k holds iff k is
/// at least the largest over s of the least n with t s^n = s^n t; the check
/// runs k up to the largest element order of S_{p(t)}.
ImmCentResult check_immediately_centralizing(const FiniteGroupoid& g, const Subgroupoid& s, const Subgroupoid& t);

HypothesisReport check_gamma_cartan_hypotheses(const FiniteGroupoid& g, const TwoCocycle& omega, const Grading& c,
                                               const Subgroupoid& s);

/// G, w and S together with G/S, the dual bundle and the action of G/S on
/// the dual given by
///   [g].x(a) = -w(g,g^-1) + w(g^-1,a) + w(g^-1 a,g) + x(g^-1 a g).
struct WeylData {
  FiniteGroupoid g;
  TwoCocycle omega;
  Subgroupoid s;
  Quotient q;
  GroupBundle bundle;
  CharacterBundle dual;
  std::vector<int> base_of_unit;         // arrow of G -> base index (units only)
  std::vector<std::vector<int>> action;  // [class][character] -> character, -1 off the fibre

  Arrow unit_of_base(int b) const { return g.units()[b]; }
  /// Unit of G/S over which character x lives.
  Arrow class_unit_of(int x) const { return q.class_of[unit_of_base(dual.base_of(x))]; }
  /// Character at the source unit of the class of `gamma`, evaluated through
  /// `gamma` itself (no representative check).
  Character act_with(Arrow gamma, int x) const;
};

/// Computes the action table and checks it against every representative of
/// every class (RepresentativeDisagreement on mismatch).
WeylData weyl_action(const FiniteGroupoid& g, const Subgroupoid& s, const TwoCocycle& omega);

/// The action groupoid G/S x| S^ with arrows "(<class>,<character>)".
struct WeylGroupoid {
  FiniteGroupoid groupoid;
  std::vector<int> class_part;              // arrow -> class
  std::vector<int> char_part;               // arrow -> source character
  std::vector<std::vector<Arrow>> arrow_at; // [class][character] -> arrow or kNone
};

WeylGroupoid build_weyl_groupoid(const WeylData& w);

/// Class of G/S -> chosen representative in G.
using Section = std::vector<Arrow>;

/// Least arrow id in each class; unit classes map to their unit.
Section choose_section(const WeylData& w);
/// Section given by class id -> arrow id. Throws BadSection.
Section section_from_ids(const WeylData& w, const std::map<std::string, std::string>& choice);

/// The twist cocycle on G_W:
///   C(([g],[h].x),([h],x)) = x(b) - w(s(gh), b) + w(s(g), s(h)),
///   b = s(gh)^-1 s(g) s(h).
TwoCocycle weyl_twist_cocycle(const WeylData& w, const WeylGroupoid& gw, const Section& section);

/// (Df)(x) = sum over a in S_p(x) of e^{2 pi i x(a)} f(a); f indexed by arrow.
std::vector<std::complex<double>> conditional_expectation(const WeylData& w,
                                                          const std::vector<std::complex<double>>& f);

}  // namespace weylkit
