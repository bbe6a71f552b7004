#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace weylkit {

using Arrow = int;
inline constexpr Arrow kNone = -1;

struct ArrowRecord {
  std::string id;
  std::string source;
  std::string target;
};

/// Unvalidated groupoid data as it comes off the wire. Units may be listed
/// among `arrows` or omitted there; compose entries involving a unit may be
/// omitted and are then implied.
struct GroupoidDescription {
  std::string name;
  std::vector<std::string> units;
  std::vector<ArrowRecord> arrows;
  std::map<std::pair<std::string, std::string>, std::string> compose;
  std::optional<std::map<std::string, std::string>> inverse;
};

/// Validated, immutable finite groupoid.
///
/// Arrows are indexed 0..size()-1 in lexicographic order of their ids; units
/// are arrows that are their own source and target. The product `compose(g, h)`
/// is defined exactly when source(g) == target(h).
class FiniteGroupoid {
 public:
  static constexpr int kMaxArrows = 4096;

  FiniteGroupoid() = default;

  const std::string& name() const noexcept { return name_; }
  int size() const noexcept { return static_cast<int>(ids_.size()); }

  const std::string& id(Arrow a) const { return ids_[a]; }
  const std::vector<std::string>& ids() const noexcept { return ids_; }
  std::optional<Arrow> find(std::string_view id) const;
  /// Like find() but throws Error(UnknownArrowId).
  Arrow at(std::string_view id) const;

  Arrow source(Arrow a) const { return source_[a]; }
  Arrow target(Arrow a) const { return target_[a]; }
  Arrow inverse(Arrow a) const { return inverse_[a]; }
  bool is_unit(Arrow a) const { return source_[a] == a; }
  bool is_isotropy(Arrow a) const { return source_[a] == target_[a]; }

  bool composable(Arrow g, Arrow h) const { return source_[g] == target_[h]; }
  /// gh, or kNone when the pair is not composable.
  Arrow compose(Arrow g, Arrow h) const { return compose_[static_cast<std::size_t>(g) * size() + h]; }

  const std::vector<Arrow>& units() const noexcept { return units_; }
  /// Arrows with source u (the fibre G_u).
  const std::vector<Arrow>& arrows_from(Arrow u) const { return from_[u]; }
  /// Arrows with target u (the fibre G^u).
  const std::vector<Arrow>& arrows_to(Arrow u) const { return to_[u]; }

  /// a^k for an isotropy arrow (k >= 0; a^0 is the unit).
  Arrow power(Arrow a, std::int64_t k) const;
  /// Least k >= 1 with a^k a unit; only meaningful for isotropy arrows.
  int order(Arrow a) const;

  GroupoidDescription describe() const;

  FiniteGroupoid renamed(std::string name) const {
    FiniteGroupoid copy = *this;
    copy.name_ = std::move(name);
    return copy;
  }

 private:
  friend FiniteGroupoid validate_groupoid(const GroupoidDescription&);

  std::string name_;
  std::vector<std::string> ids_;
  std::unordered_map<std::string, Arrow> index_;
  std::vector<Arrow> source_, target_, inverse_;
  std::vector<Arrow> compose_;
  std::vector<Arrow> units_;
  std::vector<std::vector<Arrow>> from_, to_;
};

/// Checks every groupoid axiom exhaustively and returns the validated
/// groupoid. Throws Error with MissingComposite, BadComposite,
/// AssociativityViolation, BadInverse, DanglingUnit, UnknownArrowId or
/// TooLarge; the witness names the offending arrows.
FiniteGroupoid validate_groupoid(const GroupoidDescription& description);

/// Group presented by its multiplication on `ids`; the identity is detected.
FiniteGroupoid make_group(std::string name, std::vector<std::string> ids,
                          const std::function<int(int, int)>& multiply);

/// Pair groupoid on n units "r00", "r11", ...; arrow "rij" has target i and source j.
FiniteGroupoid pair_groupoid(int n, std::string name = {});

/// Direct product; arrow ids are "(a,b)".
FiniteGroupoid direct_product(const FiniteGroupoid& left, const FiniteGroupoid& right,
                              std::string name = {});

/// Subset of a groupoid's arrows, kept sorted.
class Subgroupoid {
 public:
  Subgroupoid() = default;
  Subgroupoid(const FiniteGroupoid& g, std::vector<Arrow> members);
  static Subgroupoid from_ids(const FiniteGroupoid& g, std::span<const std::string> ids);
  static Subgroupoid units_of(const FiniteGroupoid& g);
  static Subgroupoid whole(const FiniteGroupoid& g);

  bool contains(Arrow a) const { return a >= 0 && a < static_cast<Arrow>(mask_.size()) && mask_[a]; }
  const std::vector<Arrow>& members() const noexcept { return members_; }
  int size() const noexcept { return static_cast<int>(members_.size()); }
  /// Members with source u.
  std::vector<Arrow> fibre(const FiniteGroupoid& g, Arrow u) const;

  friend bool operator==(const Subgroupoid& a, const Subgroupoid& b) { return a.members_ == b.members_; }

 private:
  std::vector<bool> mask_;
  std::vector<Arrow> members_;
};

struct PropertyReport {
  bool is_subgroupoid = false;
  bool is_wide = false;
  bool is_group_bundle = false;
  bool fibres_abelian = false;
  bool is_normal = false;
  /// flag name -> human-readable witness for each false flag
  std::map<std::string, std::string> witnesses;
};

PropertyReport subgroupoid_properties(const FiniteGroupoid& g, const Subgroupoid& s);

Subgroupoid iso_subgroupoid(const FiniteGroupoid& g);

bool check_effective(const FiniteGroupoid& g);

/// Element of a finitely generated abelian group given by cyclic orders
/// (order 0 is an infinite cyclic factor).
using GroupElement = std::vector<std::int64_t>;

/// Homomorphism-valued label c: G -> Gamma.
struct Grading {
  std::vector<std::int64_t> orders;
  std::vector<GroupElement> values;  // indexed by arrow

  GroupElement normalize(GroupElement e) const;
  GroupElement add(const GroupElement& a, const GroupElement& b) const;
  GroupElement negate(const GroupElement& a) const;
  bool is_zero(const GroupElement& a) const;
  GroupElement zero() const { return GroupElement(orders.size(), 0); }

  /// c == 0 everywhere, into the trivial group.
  static Grading trivial(const FiniteGroupoid& g);
};

/// Throws Error(NotHomomorphism) with a witness pair (or arrow) if c is not a
/// groupoid homomorphism.
void validate_grading(const FiniteGroupoid& g, const Grading& c);

/// The wide subgroupoid c^{-1}(0); validates c first.
Subgroupoid kernel_of_grading(const FiniteGroupoid& g, const Grading& c);

/// Quotient of G by a wide normal group bundle S: classes [g] = g S_{s(g)}.
struct Quotient {
  FiniteGroupoid groupoid;
  std::vector<int> class_of;               // arrow of G -> arrow of the quotient
  std::vector<std::vector<Arrow>> members; // quotient arrow -> sorted members
};

/// Throws NotBundle (S not a wide group bundle) or NotNormal.
Quotient quotient_by_bundle(const FiniteGroupoid& g, const Subgroupoid& s);

/// True when `map` (arrow of a -> arrow of b) preserves composability and
/// products in both directions and is a bijection.
bool is_isomorphism(const FiniteGroupoid& a, const FiniteGroupoid& b, std::span<const Arrow> map);

/// Exhaustive backtracking search for a groupoid isomorphism a -> b.
std::optional<std::vector<Arrow>> find_isomorphism(const FiniteGroupoid& a, const FiniteGroupoid& b);

}  // namespace weylkit
