#include "topologic/space.hpp"

#include <algorithm>
#include <cstdint>
#include <set>

#include "topologic/errors.hpp"
#include "topologic/formula.hpp"

namespace topologic {

PointSet PointSet::of(std::initializer_list<std::size_t> members) {
  Bits bits = 0;
  for (std::size_t m : members) bits |= Bits{1} << m;
  return PointSet(bits);
}

PointSet PointSet::of(const std::vector<std::size_t>& members) {
  Bits bits = 0;
  for (std::size_t m : members) bits |= Bits{1} << m;
  return PointSet(bits);
}

std::vector<std::size_t> PointSet::members() const {
  std::vector<std::size_t> out;
  for (Bits b = bits_; b != 0; b &= b - 1) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(b)));
  }
  return out;
}

std::strong_ordering operator<=>(PointSet a, PointSet b) {
  if (auto c = a.size() <=> b.size(); c != 0) return c;
  if (a.bits_ == b.bits_) return std::strong_ordering::equal;
  // Equal cardinality: the set holding the least differing point sorts first.
  const PointSet::Bits diff = a.bits_ ^ b.bits_;
  const PointSet::Bits lowest = diff & (~diff + 1);
  return (a.bits_ & lowest) ? std::strong_ordering::less : std::strong_ordering::greater;
}

Family canonical(Family family) {
  std::sort(family.begin(), family.end());
  family.erase(std::unique(family.begin(), family.end()), family.end());
  return family;
}

bool family_contains(const Family& canonical_family, PointSet s) {
  return std::binary_search(canonical_family.begin(), canonical_family.end(), s);
}

bool is_intersection_closed(const Family& family) {
  const Family sorted = canonical(family);
  for (PointSet a : sorted) {
    for (PointSet b : sorted) {
      if (!family_contains(sorted, a & b)) return false;
    }
  }
  return true;
}

bool is_union_closed(const Family& family) {
  const Family sorted = canonical(family);
  for (PointSet a : sorted) {
    for (PointSet b : sorted) {
      if (!family_contains(sorted, a | b)) return false;
    }
  }
  return true;
}

namespace {

template <typename Combine>
Family close_under(Family family, Combine combine) {
  std::set<PointSet> seen(family.begin(), family.end());
  std::vector<PointSet> frontier(seen.begin(), seen.end());
  while (!frontier.empty()) {
    std::vector<PointSet> fresh;
    const std::vector<PointSet> current(seen.begin(), seen.end());
    for (PointSet a : frontier) {
      for (PointSet b : current) {
        PointSet c = combine(a, b);
        if (seen.insert(c).second) fresh.push_back(c);
      }
    }
    frontier = std::move(fresh);
  }
  return Family(seen.begin(), seen.end());
}

}  // namespace

Family close_under_intersection(Family family) {
  return close_under(std::move(family), [](PointSet a, PointSet b) { return a & b; });
}

Family close_under_union(Family family) {
  return close_under(std::move(family), [](PointSet a, PointSet b) { return a | b; });
}

std::optional<std::size_t> SubsetSpace::index_of(PointSet s) const {
  auto it = std::lower_bound(opens_.begin(), opens_.end(), s);
  if (it == opens_.end() || *it != s) return std::nullopt;
  return static_cast<std::size_t>(it - opens_.begin());
}

std::size_t SubsetSpace::index_of_point(const std::string& name) const {
  auto it = std::find(point_names_.begin(), point_names_.end(), name);
  if (it == point_names_.end()) throw InputError("unknown point: " + name);
  return static_cast<std::size_t>(it - point_names_.begin());
}

std::vector<std::string> default_point_names(std::size_t n) {
  std::vector<std::string> names;
  names.reserve(n);
  for (std::size_t i = 0; i < n; ++i) names.push_back(std::to_string(i));
  return names;
}

SubsetSpace make_space(std::vector<std::string> point_names, Family opens) {
  const std::size_t n = point_names.size();
  if (n == 0) throw InputError("a space needs at least one point");
  if (n > PointSet::kMaxPoints) throw InputError("at most 64 points are supported");
  {
    std::set<std::string> unique(point_names.begin(), point_names.end());
    if (unique.size() != n) throw InputError("duplicate point names");
  }
  const PointSet universe = PointSet::full(n);
  for (PointSet s : opens) {
    if (!s.subset_of(universe)) throw InputError("open set mentions a point outside the universe");
  }
  SubsetSpace space;
  space.point_names_ = std::move(point_names);
  space.opens_ = canonical(std::move(opens));
  if (!family_contains(space.opens_, universe)) {
    throw InputError("the whole point set must be an open (X missing)");
  }
  space.below_.resize(space.opens_.size());
  for (std::size_t i = 0; i < space.opens_.size(); ++i) {
    for (std::size_t j = 0; j < space.opens_.size(); ++j) {
      if (space.opens_[j].subset_of(space.opens_[i])) space.below_[i].push_back(j);
    }
  }
  space.intersection_closed_ = is_intersection_closed(space.opens_);
  space.union_closed_ = is_union_closed(space.opens_);
  return space;
}

SubsetSpace make_space(std::size_t num_points, Family opens) {
  return make_space(default_point_names(num_points), std::move(opens));
}

bool is_topology(const SubsetSpace& space) {
  return space.contains_open(PointSet{}) && space.is_intersection_closed() &&
         space.is_union_closed();
}

SubsetSpace generate_topology(const Family& subbasis, std::size_t num_points) {
  Family seed = subbasis;
  seed.push_back(PointSet{});
  seed.push_back(PointSet::full(num_points));
  // Union-closing an intersection-closed family keeps it intersection-closed.
  return make_space(num_points, close_under_union(close_under_intersection(std::move(seed))));
}

namespace {

void require_topology(const SubsetSpace& space, const char* op) {
  if (!is_topology(space)) throw PreconditionError(std::string(op) + " requires a topology");
}

}  // namespace

PointSet interior(const SubsetSpace& topology, PointSet s) {
  require_topology(topology, "interior");
  PointSet result;
  for (PointSet u : topology.opens()) {
    if (u.subset_of(s)) result = result | u;
  }
  return result;
}

PointSet heyting_implication(const SubsetSpace& topology, PointSet u, PointSet w) {
  require_topology(topology, "heyting_implication");
  if (!topology.contains_open(u) || !topology.contains_open(w)) {
    throw PreconditionError("heyting_implication arguments must be open");
  }
  PointSet join;
  for (PointSet v : topology.opens()) {
    if ((v & u).subset_of(w)) join = join | v;
  }
  const PointSet via_interior = interior(topology, (u - w).complement_in(topology.universe()));
  if (join != via_interior || !topology.contains_open(join) || !(join & u).subset_of(w)) {
    throw InternalError("Heyting implication characterizations disagree");
  }
  return join;
}

Model::Model(SubsetSpace space, std::map<std::string, PointSet> valuation)
    : space_(std::move(space)), valuation_(std::move(valuation)) {
  for (const auto& [atom, value] : valuation_) {
    if (is_reserved_word(atom)) throw InputError("reserved word used as atom: " + atom);
    if (!value.subset_of(space_.universe())) {
      throw InputError("valuation of " + atom + " mentions a point outside the universe");
    }
  }
}

PointSet Model::value(const std::string& atom) const {
  auto it = valuation_.find(atom);
  if (it == valuation_.end()) throw InputError("unknown atom " + atom);
  return it->second;
}

ClosureFamily closure_family(const Model& model, const std::set<std::string>& atom_list) {
  const SubsetSpace& space = model.space();
  require_topology(space, "closure_family");
  const PointSet universe = space.universe();
  std::set<PointSet> family{PointSet{}, universe};
  for (const std::string& a : atom_list) family.insert(model.value(a));

  // The powerset bounds the fixpoint; exceeding it means the loop is broken.
  const std::size_t cap = space.num_points() >= 63 ? SIZE_MAX : (std::size_t{1} << space.num_points());
  bool changed = true;
  while (changed) {
    changed = false;
    const std::vector<PointSet> current(family.begin(), family.end());
    for (PointSet s : current) {
      changed |= family.insert(s.complement_in(universe)).second;
      changed |= family.insert(interior(space, s)).second;
      for (PointSet t : current) changed |= family.insert(s & t).second;
    }
    if (family.size() > cap) throw InternalError("closure_family exceeded the powerset bound");
  }

  ClosureFamily out;
  out.sets.assign(family.begin(), family.end());
  std::set<PointSet> interiors;
  for (PointSet s : out.sets) {
    if (space.contains_open(s)) out.opens.push_back(s);
    interiors.insert(interior(space, s));
  }
  if (Family(interiors.begin(), interiors.end()) != out.opens) {
    throw InternalError("open members of F_M differ from its interiors");
  }
  return out;
}

}  // namespace topologic
