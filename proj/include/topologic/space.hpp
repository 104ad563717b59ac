#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace topologic {

/// A subset of a finite universe of at most 64 indexed points.
///
/// Ordering is the canonical family order used everywhere a deterministic
/// iteration is needed: by cardinality, then lexicographically by the sorted
/// member list.
class PointSet {
 public:
  using Bits = std::uint64_t;
  static constexpr std::size_t kMaxPoints = 64;

  constexpr PointSet() = default;
  constexpr explicit PointSet(Bits bits) : bits_(bits) {}

  static constexpr PointSet full(std::size_t n) {
    return PointSet(n >= kMaxPoints ? ~Bits{0} : (Bits{1} << n) - 1);
  }
  static constexpr PointSet singleton(std::size_t i) { return PointSet(Bits{1} << i); }
  static PointSet of(std::initializer_list<std::size_t> members);
  static PointSet of(const std::vector<std::size_t>& members);

  constexpr Bits bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  constexpr bool contains(std::size_t i) const { return i < kMaxPoints && ((bits_ >> i) & 1U); }
  constexpr bool subset_of(PointSet other) const { return (bits_ & ~other.bits_) == 0; }
  constexpr bool proper_subset_of(PointSet other) const {
    return subset_of(other) && bits_ != other.bits_;
  }
  constexpr PointSet complement_in(PointSet universe) const {
    return PointSet(universe.bits_ & ~bits_);
  }
  std::size_t least() const { return static_cast<std::size_t>(std::countr_zero(bits_)); }
  std::vector<std::size_t> members() const;

  friend constexpr PointSet operator&(PointSet a, PointSet b) { return PointSet(a.bits_ & b.bits_); }
  friend constexpr PointSet operator|(PointSet a, PointSet b) { return PointSet(a.bits_ | b.bits_); }
  friend constexpr PointSet operator-(PointSet a, PointSet b) { return PointSet(a.bits_ & ~b.bits_); }
  friend constexpr bool operator==(PointSet a, PointSet b) = default;
  friend std::strong_ordering operator<=>(PointSet a, PointSet b);

 private:
  Bits bits_ = 0;
};

/// A finite family of point sets. Functions returning a Family return it in
/// canonical form: sorted by PointSet order, no duplicates.
using Family = std::vector<PointSet>;

Family canonical(Family family);
bool family_contains(const Family& canonical_family, PointSet s);
bool is_intersection_closed(const Family& family);
bool is_union_closed(const Family& family);

/// Least superfamily closed under pairwise intersection.
Family close_under_intersection(Family family);
/// Least superfamily closed under pairwise union.
Family close_under_union(Family family);

/// A finite subset space: named points plus a family of opens containing the
/// whole point set. Open indices refer to positions in the canonical family.
class SubsetSpace {
 public:
  std::size_t num_points() const { return point_names_.size(); }
  const std::vector<std::string>& point_names() const { return point_names_; }
  const Family& opens() const { return opens_; }
  std::size_t num_opens() const { return opens_.size(); }
  PointSet open(std::size_t index) const { return opens_[index]; }
  PointSet universe() const { return PointSet::full(point_names_.size()); }

  std::optional<std::size_t> index_of(PointSet s) const;
  std::size_t index_of_point(const std::string& name) const;  // throws InputError
  bool contains_open(PointSet s) const { return index_of(s).has_value(); }

  /// Indices of opens contained in opens()[index], the principal ideal.
  const std::vector<std::size_t>& below(std::size_t index) const { return below_[index]; }

  bool is_intersection_closed() const { return intersection_closed_; }
  bool is_union_closed() const { return union_closed_; }

  friend bool operator==(const SubsetSpace& a, const SubsetSpace& b) {
    return a.point_names_ == b.point_names_ && a.opens_ == b.opens_;
  }

 private:
  friend SubsetSpace make_space(std::vector<std::string> point_names, Family opens);

  std::vector<std::string> point_names_;
  Family opens_;
  std::vector<std::vector<std::size_t>> below_;
  bool intersection_closed_ = false;
  bool union_closed_ = false;
};

/// Validates and canonicalizes. Throws InputError if the whole point set is
/// missing from `opens`, a set mentions points outside the universe, or point
/// names repeat.
SubsetSpace make_space(std::vector<std::string> point_names, Family opens);
/// Points named "0" .. "n-1".
SubsetSpace make_space(std::size_t num_points, Family opens);

std::vector<std::string> default_point_names(std::size_t n);

/// Contains the empty set and the whole set, and is closed under pairwise
/// intersection and union.
bool is_topology(const SubsetSpace& space);

SubsetSpace generate_topology(const Family& subbasis, std::size_t num_points);

/// Largest open contained in `s`. Requires a topology.
PointSet interior(const SubsetSpace& topology, PointSet s);

/// Largest open V with V & u <= w. Computed both as a join over opens and as
/// the interior of X - (u - w); the two must agree.
PointSet heyting_implication(const SubsetSpace& topology, PointSet u, PointSet w);

/// A subset space together with an atom valuation.
class Model {
 public:
  Model(SubsetSpace space, std::map<std::string, PointSet> valuation);

  const SubsetSpace& space() const { return space_; }
  const std::map<std::string, PointSet>& valuation() const { return valuation_; }
  /// Throws InputError for atoms without an entry.
  PointSet value(const std::string& atom) const;
  bool has_atom(const std::string& atom) const { return valuation_.count(atom) != 0; }

  friend bool operator==(const Model& a, const Model& b) = default;

 private:
  SubsetSpace space_;
  std::map<std::string, PointSet> valuation_;
};

struct ClosureFamily {
  Family sets;   // F_M
  Family opens;  // its open members, equal to { S° : S in F_M }
};

/// Least family containing the values of `atom_list`, the empty set and the
/// whole set, closed under complement, intersection and interior.
ClosureFamily closure_family(const Model& model, const std::set<std::string>& atom_list);

}  // namespace topologic
