#pragma once

#include <map>
#include <string>
#include <vector>

#include "weylkit/groupoid.hpp"
#include "weylkit/phase.hpp"

namespace weylkit {

/// Bundle of finite groups over a finite base, stored fibre by fibre.
///
/// Elements are numbered globally; each fibre keeps its elements in a fixed
/// order and a multiplication table on positions.
class GroupBundle {
 public:
  GroupBundle() = default;

  /// S as a bundle over the units of G (base index i is G.units()[i]).
  static GroupBundle from_subgroupoid(const FiniteGroupoid& g, const Subgroupoid& s);

  /// Builds from explicit fibres. `tables[b]` is the multiplication table of
  /// fibre b on positions 0..n_b-1.
  static GroupBundle from_tables(std::vector<std::string> base, std::vector<std::vector<std::string>> names,
                                 std::vector<std::vector<std::vector<int>>> tables);

  int base_size() const noexcept { return static_cast<int>(base_.size()); }
  const std::string& base_name(int b) const { return base_[b]; }
  int size() const noexcept { return static_cast<int>(names_.size()); }
  const std::string& name(int e) const { return names_[e]; }
  int base_of(int e) const { return base_of_[e]; }
  int position(int e) const { return position_[e]; }
  const std::vector<int>& fibre(int b) const { return fibres_[b]; }
  int identity(int b) const { return fibres_[b][identity_pos_[b]]; }

  int mul(int a, int b) const;
  int inv(int a) const { return inverse_[a]; }
  int power(int a, std::int64_t k) const;
  int order(int a) const;
  bool fibre_abelian(int b) const;

  /// Arrow of the parent groupoid for bundles made by from_subgroupoid.
  Arrow arrow(int e) const { return arrows_.empty() ? kNone : arrows_[e]; }
  /// Inverse of arrow(); -1 for arrows outside the bundle.
  int element_of(Arrow a) const { return a >= 0 && a < static_cast<Arrow>(element_of_.size()) ? element_of_[a] : -1; }

 private:
  void finish();

  std::vector<std::string> base_;
  std::vector<std::string> names_;
  std::vector<int> base_of_, position_;
  std::vector<std::vector<int>> fibres_;
  std::vector<std::vector<int>> tables_;  // per fibre, n*n positions
  std::vector<int> identity_pos_;
  std::vector<int> inverse_;
  std::vector<Arrow> arrows_;
  std::vector<int> element_of_;
};

/// Character of one fibre: values[i] is the phase at the fibre's i-th element.
struct Character {
  int base = 0;
  std::vector<Phase> values;
  auto operator<=>(const Character&) const = default;
};

/// Pontryagin dual of an abelian group bundle.
///
/// Characters in each fibre are sorted lexicographically by value table, so
/// the trivial character comes first. Ids are "chi<j>@<base>".
class CharacterBundle {
 public:
  const GroupBundle& group() const noexcept { return group_; }
  int size() const noexcept { return static_cast<int>(chars_.size()); }
  const Character& character(int x) const { return chars_[x]; }
  const std::vector<int>& fibre(int b) const { return fibres_[b]; }
  int trivial(int b) const { return fibres_[b].front(); }
  int base_of(int x) const { return chars_[x].base; }
  const std::string& id(int x) const { return ids_[x]; }

  /// x(a) for a character x and an element a in the same fibre.
  Phase pairing(int x, int a) const { return chars_[x].values[group_.position(a)]; }
  int mul(int x, int y) const { return mul_[x][char_pos_[y]]; }
  int inv(int x) const { return inverse_[x]; }
  /// Index of the character with this value table, or -1.
  int find(const Character& c) const;

  /// The dual as a group bundle in its own right (element names are ids).
  GroupBundle as_group_bundle() const;

  friend CharacterBundle dual_bundle(const GroupBundle& s, int fibre_cap);

 private:
  GroupBundle group_;
  std::vector<Character> chars_;
  std::vector<std::vector<int>> fibres_;
  std::vector<std::string> ids_;
  std::vector<int> char_pos_;
  std::vector<std::vector<int>> mul_;
  std::vector<int> inverse_;
  std::map<Character, int> index_;
};

/// Enumerates all characters fibrewise by assigning phases to a generating
/// sequence and extending. Throws NotAbelian or FibreTooLarge.
CharacterBundle dual_bundle(const GroupBundle& s, int fibre_cap = 256);

/// Evaluation map a -> (x -> x(a)) from S into the dual of its dual,
/// verified bijective and multiplicative. result[a] indexes `double_dual`.
std::vector<int> double_dual_iso(const CharacterBundle& dual, const CharacterBundle& double_dual);

}  // namespace weylkit
