#pragma once

#include <functional>
#include <string>
#include <vector>

#include "weylkit/cocycle.hpp"
#include "weylkit/dual.hpp"
#include "weylkit/groupoid.hpp"
#include "weylkit/weyl.hpp"

namespace weylkit {

/// Finite abelian group Z_{n1} x ... x Z_{nr}, elements numbered in
/// mixed radix with the last factor varying fastest.
class AbelianGroup {
 public:
  AbelianGroup() = default;
  explicit AbelianGroup(std::vector<std::int64_t> orders);

  const std::vector<std::int64_t>& orders() const noexcept { return orders_; }
  int size() const noexcept { return size_; }
  GroupElement element(int index) const;
  int index(const GroupElement& e) const;
  int add(int a, int b) const;
  int neg(int a) const;
  std::string name(int a) const;

 private:
  std::vector<std::int64_t> orders_;
  int size_ = 1;
};

/// H x|_beta K with a 2-cocycle. beta[k][h] is the index of beta_k(h).
struct SemidirectSpec {
  std::string name;
  std::vector<std::int64_t> h_orders;
  std::vector<std::int64_t> k_orders;
  std::vector<std::vector<int>> beta;  // empty = trivial action
  std::function<Phase(const GroupElement& h1, const GroupElement& k1, const GroupElement& h2,
                      const GroupElement& k2)>
      omega;  // empty = zero cocycle
};

struct SemidirectGroup {
  AbelianGroup h_group, k_group;
  FiniteGroupoid g;
  TwoCocycle omega;
  Grading c;          // c(h,k) = k
  Subgroupoid h;      // H x {0}
  Subgroupoid k;      // {0} x K
  std::vector<std::vector<Arrow>> arrow_of;  // [h][k]
  std::vector<int> h_of, k_of;               // arrow -> index

  Arrow at(int hi, int ki) const { return arrow_of[hi][ki]; }
};

/// (h,k)(h',k') = (h + beta_k(h'), k + k'); arrow ids "(h,k)" with factors of
/// a multi-factor group joined by ';'. Throws NotAutomorphism, CocycleInvalid.
SemidirectGroup build_semidirect(const SemidirectSpec& spec);

/// Closed-form action of K on the dual of H:
///   k.x(h) = -w((0,-k),(0,k)) + w((0,-k),(h,0)) + w((b_{-k}(h),-k),(0,k)) + x(b_{-k}(h)).
struct SemidirectAction {
  SemidirectGroup group;
  GroupBundle h_bundle;
  CharacterBundle dual;
  std::vector<std::vector<int>> table;  // [k][character] -> character
  bool k_restriction_zero = false;      // w vanishes on K x K
  /// Same table without the first term; filled when k_restriction_zero.
  std::vector<std::vector<int>> reduced_table;
};

/// Throws RestrictionNotTrivial unless w vanishes on H x H.
SemidirectAction semidirect_weyl_action(const SemidirectSpec& spec);

struct UntwistingReport {
  bool action_matches = false;   // general action table == closed form
  bool reduced_matches = true;   // closed form == reduced form (when applicable)
  bool twist_matches = false;    // C == w((0,k),(0,k'))
  bool twist_zero = false;
  int weyl_size = 0;
  int orbit_count = 0;
  bool free_action = false;
  std::string witness;

  bool pass() const { return action_matches && reduced_matches && twist_matches; }
};

/// Compares the general Weyl construction with S = H x {0} and section
/// [k] -> (0,k) against the closed forms.
UntwistingReport verify_untwisting(const SemidirectSpec& spec);

/// H = K = Z_n, trivial beta, w((h,k),(h',k')) = p k h' / n.
SemidirectSpec gen_rotation(int n, int p);

/// beta = inversion on H, as used for S3 (n = 3) and D4 (n = 4).
SemidirectSpec gen_dihedral(int n);

}  // namespace weylkit
