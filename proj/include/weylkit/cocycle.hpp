#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "weylkit/groupoid.hpp"
#include "weylkit/phase.hpp"

namespace weylkit {

/// Phase-valued function on the composable pairs of a groupoid. Pairs that
/// were never set hold the zero phase.
class TwoCocycle {
 public:
  TwoCocycle() = default;
  explicit TwoCocycle(const FiniteGroupoid& g);

  static TwoCocycle from_function(const FiniteGroupoid& g, const std::function<Phase(Arrow, Arrow)>& f);

  int arrows() const noexcept { return n_; }
  Phase operator()(Arrow a, Arrow b) const { return values_[index(a, b)]; }
  /// Throws Error(UndefinedPair) when (a, b) is not composable in g.
  void set(const FiniteGroupoid& g, Arrow a, Arrow b, Phase value);
  bool is_zero() const;

  friend bool operator==(const TwoCocycle&, const TwoCocycle&) = default;

 private:
  std::size_t index(Arrow a, Arrow b) const { return static_cast<std::size_t>(a) * n_ + b; }

  int n_ = 0;
  std::vector<Phase> values_;
};

struct CocycleReport {
  bool valid = true;
  std::size_t triples_checked = 0;
  std::size_t violation_count = 0;
  /// First few (g, h, k) with w(g,hk) + w(h,k) != w(gh,k) + w(g,h).
  std::vector<std::array<Arrow, 3>> violations;
  /// Units u with w(u,u) != 0.
  std::vector<Arrow> unnormalized;
};

/// Exhaustive check of the 2-cocycle identity over all composable triples,
/// plus the normalization w(u,u) = 0.
CocycleReport check_cocycle(const FiniteGroupoid& g, const TwoCocycle& omega, std::size_t keep = 16);

/// True iff w(a,b) = w(b,a) for all composable a, b in S.
bool check_symmetric_on(const FiniteGroupoid& g, const TwoCocycle& omega, const Subgroupoid& s,
                        std::string* witness = nullptr);

/// w(g,g^-1) = w(g^-1,g) for every g, and w(u,g) = w(g,u) = w(u,u) at the
/// relevant units. Holds for every genuine cocycle.
bool check_unit_identity(const FiniteGroupoid& g, const TwoCocycle& omega, std::string* witness = nullptr);

struct MaximalSearchOptions {
  int fibre_cap = 256;
  std::size_t subgroup_cap = 200000;
  std::size_t result_cap = 4096;
};

/// All maximal wide abelian group-bundle subgroupoids of Iso(c^-1(0)) on
/// which w is symmetric. Throws SearchCapExceeded past the configured caps.
std::vector<Subgroupoid> find_maximal_symmetric_abelian(const FiniteGroupoid& g, const TwoCocycle& omega,
                                                        const Grading& c, const MaximalSearchOptions& options = {});

}  // namespace weylkit
