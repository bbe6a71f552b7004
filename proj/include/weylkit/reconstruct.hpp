#pragma once

#include <optional>
#include <string>
#include <vector>

#include "weylkit/dual.hpp"
#include "weylkit/groupoid.hpp"
#include "weylkit/weyl.hpp"

namespace weylkit {

/// A groupoid H whose units form an abelian group bundle T over X, with
/// left and right T-actions and the maps lambda, rho.
///
/// Tables are dense and hold -1 where the moment maps do not match:
///   left[t][eta]   = t |> eta     (p(t) = p_r(eta))
///   right[eta][t]  = eta <| t     (p(t) = p_s(eta))
///   lambda[eta][t] = lambda_eta(t) in T_{p_r(eta)}, t in T_{p_s(eta)}
///   rho[eta][t]    = rho_eta(t) in T_{p_s(eta)},   t in T_{p_r(eta)}
struct ActionPackage {
  FiniteGroupoid h;
  GroupBundle t;
  std::vector<Arrow> unit_of_t;  // element of T -> unit of H
  std::vector<int> t_of_unit;    // arrow of H -> element of T, -1 for non-units
  std::vector<std::vector<Arrow>> left;
  std::vector<std::vector<Arrow>> right;
  std::vector<std::vector<int>> lambda;
  std::vector<std::vector<int>> rho;
  /// Optional per-arrow labels; a right orbit whose members agree on a label
  /// takes it as its name in H/T.
  std::vector<std::string> orbit_label;

  int p_of_unit(Arrow u) const { return t.base_of(t_of_unit[u]); }
  int p_r(Arrow eta) const { return p_of_unit(h.target(eta)); }
  int p_s(Arrow eta) const { return p_of_unit(h.source(eta)); }
};

struct ClauseResult {
  std::string name;
  bool pass = false;
  std::string witness;
  bool vacuous = false;
};

struct Assumption51Report {
  std::vector<ClauseResult> clauses;
  bool all_pass() const;
  const ClauseResult& at(const std::string& name) const;
};

/// Every clause of the action assumptions, freeness, and the derived
/// identities for lambda and rho. Throws MomentMapMismatch when the tables
/// do not fit H and T.
Assumption51Report verify_assumption_51(const ActionPackage& pkg);

/// Package on H = G/S x| S^ with T = S^: t |> ([g],t') = ([g], Ad_g(t) t'),
/// ([g],t') <| t = ([g], t' t), lambda_g = Ad_{g^-1}, rho_g = Ad_g, where
/// Ad_g(t)(a) = t(g a g^-1). Requires w to vanish on S.
ActionPackage derive_weyl_actions(const WeylData& w, const WeylGroupoid& gw);

/// H = T with every arrow a unit, actions by multiplication, lambda = rho = id.
ActionPackage bundle_package(const GroupBundle& t);

struct QuotientHT {
  FiniteGroupoid groupoid;
  std::vector<int> class_of;                // arrow of H -> arrow of H/T
  std::vector<std::vector<Arrow>> members;  // arrow of H/T -> arrows of H
  std::vector<int> base_of_unit;            // unit of H/T -> base index in X, -1 otherwise

  int base_of_source(Arrow cls) const { return base_of_unit[groupoid.source(cls)]; }
  int base_of_target(Arrow cls) const { return base_of_unit[groupoid.target(cls)]; }
};

/// Quotient by the right T-action. Throws AssumptionUnverified unless the
/// package passes verify_assumption_51.
QuotientHT quotient_HT(const ActionPackage& pkg);

/// [g] <> x = x o rho_g, for x in the dual of T.
struct DiamondAction {
  CharacterBundle dual;                 // dual of T
  std::vector<std::vector<int>> table;  // [class][character] -> character, -1 off the fibre

  int act(Arrow cls, int x) const { return table[cls][x]; }
};

/// Throws DescentFailure if two members of a class act differently.
DiamondAction diamond_action(const ActionPackage& pkg, const QuotientHT& q);

/// theta[c1][c2] is a character of T at p_s(c2), or -1 off composable pairs.
using ThetaDatum = std::vector<std::vector<int>>;

/// theta([g],[h]) = s(gh)^-1 s(g) s(h), carried into the dual of T = S^ by
/// the evaluation map. H/T classes are matched to G/S classes by name.
ThetaDatum theta_from_section(const WeylData& w, const Section& section, const QuotientHT& q,
                              const DiamondAction& diamond);

struct ThetaReport {
  bool unit_trivial = true;
  bool cocycle_identity = true;
  std::vector<std::string> violations;
  bool valid() const { return unit_trivial && cocycle_identity; }
};

/// theta([r(g)],[g]) trivial and
///   ([z]^-1 <> theta(g,h)) theta(gh,z) = theta(g,hz) theta(h,z)
/// over every composable triple.
ThetaReport verify_theta(const QuotientHT& q, const DiamondAction& diamond, const ThetaDatum& theta);

struct Boxtimes {
  FiniteGroupoid groupoid;
  std::vector<int> class_part;               // arrow -> class of H/T
  std::vector<int> char_part;                // arrow -> character of the dual of T
  std::vector<std::vector<Arrow>> arrow_at;  // [class][character]
};

/// Arrows ([g],x) with s([g]) = p(x);
///   ([g],x)([h],v) = ([g][h], theta([g],[h]) ([h]^-1 <> x) v),
///   ([g],x)^-1 = ([g]^-1, theta([g],[g]^-1)^-1 ([g] <> x^-1)).
/// Throws ThetaInvalid when verify_theta fails.
Boxtimes build_boxtimes(const QuotientHT& q, const DiamondAction& diamond, const ThetaDatum& theta);

struct ImmCentActionResult {
  bool pass = true;
  Arrow g = kNone;  // isotropy arrow acting nontrivially although the premise holds
  int k = 0;
  int chi = -1;     // element moved by g
};

/// For each isotropy g and k up to the largest element order of the fibre:
/// if every x has some n <= k with (g.x)^n = x^n, then g.x = x for all x.
/// action[g][x] indexes `k`; base_of_unit maps units of q to fibres of k.
ImmCentActionResult check_imm_centralizing_action(const FiniteGroupoid& q, const GroupBundle& k,
                                                  const std::vector<std::vector<int>>& action,
                                                  const std::vector<int>& base_of_unit);

/// Every stage of G -> Weyl data -> package -> H/T, <>, theta -> boxtimes -> G.
struct Reconstruction {
  WeylData weyl;
  WeylGroupoid weyl_groupoid;
  Section section;
  ActionPackage package;
  Assumption51Report assumption;
  QuotientHT quotient;
  DiamondAction diamond;
  ThetaDatum theta;
  ThetaReport theta_report;
  Boxtimes boxtimes;
  std::vector<int> t_to_s;   // character of the dual of T -> element of S
  std::vector<Arrow> phi;    // arrow of boxtimes -> arrow of G, ([g],t) -> s([g]) t
  bool phi_isomorphism = false;
  bool grading_compatible = false;
};

/// Runs the whole pipeline and verifies Phi. Throws NontrivialCocycle when
/// w != 0 and IsoCheckFailed with a witness when Phi is not an isomorphism
/// or c o Phi differs from the induced grading.
Reconstruction reconstruction_iso(const FiniteGroupoid& g, const TwoCocycle& omega, const Grading& c,
                                  const Subgroupoid& s, const std::optional<Section>& section = std::nullopt);

/// c-bar([g],x) = c(g) on the Weyl groupoid.
Grading weyl_grading(const WeylData& w, const WeylGroupoid& gw, const Grading& c);

struct Thm59Report {
  bool descends = false;
  bool effective = false;
  bool imm_cent_action = false;
  std::string witness;
  ImmCentActionResult imm;
  /// Hypothesis check on (boxtimes, w = 0, induced grading, S = arrows over unit classes).
  HypothesisReport cross_validation;
  bool hypotheses_met() const { return descends && effective && imm_cent_action; }
};

Thm59Report verify_thm59_hypotheses(const ActionPackage& pkg, const QuotientHT& q, const DiamondAction& diamond,
                                    const ThetaDatum& theta, const Grading& c_tilde);

}  // namespace weylkit
