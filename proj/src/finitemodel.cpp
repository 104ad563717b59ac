#include "topologic/finitemodel.hpp"

#include <algorithm>
#include <map>

#include "topologic/errors.hpp"

namespace topologic {

bool is_basis_of(const SubsetSpace& topology, const Family& basis) {
  for (PointSet b : basis) {
    if (!topology.contains_open(b)) return false;
  }
  for (PointSet u : topology.opens()) {
    PointSet covered;
    for (PointSet b : basis) {
      if (b.subset_of(u)) covered = covered | b;
    }
    if (covered != u) return false;
  }
  return true;
}

Family minimal_neighborhood_basis(const SubsetSpace& topology) {
  Family neighborhoods;
  for (std::size_t x = 0; x < topology.num_points(); ++x) {
    PointSet meet = topology.universe();
    for (PointSet u : topology.opens()) {
      if (u.contains(x)) meet = meet & u;
    }
    neighborhoods.push_back(meet);
  }
  return close_under_union(std::move(neighborhoods));
}

namespace {

void require_union_closed_basis(const SubsetSpace& topology, const Family& basis) {
  if (!is_topology(topology)) throw PreconditionError("basis checks require a topology");
  if (!is_basis_of(topology, basis)) throw PreconditionError("family is not a basis of the topology");
  if (!is_union_closed(basis)) throw PreconditionError("basis is not closed under unions");
}

// Least basic neighborhood of x inside v, in canonical order.
PointSet basic_neighborhood(const Family& sorted_basis, std::size_t x, PointSet v) {
  for (PointSet b : sorted_basis) {
    if (b.contains(x) && b.subset_of(v)) return b;
  }
  throw InternalError("basis does not cover a point of an open");
}

}  // namespace

PointSet basis_witness(const SubsetSpace& topology, const Family& basis, const Family& f,
                       PointSet v, std::size_t x) {
  require_union_closed_basis(topology, basis);
  if (std::find(f.begin(), f.end(), v) == f.end()) {
    throw PreconditionError("basis_witness: v is not a member of F");
  }
  if (!v.contains(x)) throw PreconditionError("basis_witness: x is not in v");
  const Family sorted = canonical(basis);

  PointSet witness = basic_neighborhood(sorted, x, v);
  for (PointSet vi : f) {
    if (v.subset_of(vi)) continue;
    witness = witness | basic_neighborhood(sorted, (v - vi).least(), v);
  }
  if (!family_contains(sorted, witness) || !witness.contains(x) || !witness.subset_of(v) ||
      !in_remainder(f, v, witness)) {
    throw InternalError("basis witness failed its membership checks");
  }
  return witness;
}

BasisEquivalence basis_equivalent(const Model& topological_model, const Family& basis,
                                  std::span<const Formula> formulas) {
  const SubsetSpace& topology = topological_model.space();
  require_union_closed_basis(topology, basis);
  const Model basis_model(make_space(topology.point_names(), basis),
                          topological_model.valuation());

  BasisEquivalence result;
  for (const Formula& f : formulas) {
    const ExtensionTable full(topological_model, f);
    const ExtensionTable restricted(basis_model, f);
    const SubformulaDag& dag = full.dag();
    for (std::size_t b = 0; b < basis_model.space().num_opens(); ++b) {
      const PointSet u = basis_model.space().open(b);
      const std::size_t t = *topology.index_of(u);
      for (std::size_t x : u.members()) {
        ++result.pairs_checked;
        for (std::size_t s = 0; s < dag.size(); ++s) {
          const bool in_t = full.at(s, t).contains(x);
          const bool in_b = restricted.at(s, b).contains(x);
          if (in_t != in_b) {
            result.equivalent = false;
            result.counterexample = BasisCounterexample{dag.nodes[s], x, u, in_t, in_b};
            return result;
          }
        }
      }
    }
    const bool valid_t = model_valid(topological_model, f).valid;
    const bool valid_b = model_valid(basis_model, f).valid;
    if (valid_t != valid_b) {
      result.equivalent = false;
      result.counterexample = BasisCounterexample{f, 0, std::nullopt, valid_t, valid_b};
      return result;
    }
  }
  return result;
}

std::vector<std::vector<std::size_t>> QuotientMap::classes() const {
  std::vector<std::vector<std::size_t>> out(quotient.space().num_points());
  for (std::size_t x = 0; x < point_class.size(); ++x) out[point_class[x]].push_back(x);
  return out;
}

QuotientMap point_quotient(const Model& model, const std::set<std::string>& atom_list) {
  const SubsetSpace& space = model.space();
  std::vector<PointSet> atom_values;
  for (const std::string& a : atom_list) atom_values.push_back(model.value(a));

  // Profile: open memberships followed by atom memberships.
  std::map<std::vector<bool>, std::size_t> ids;
  std::vector<std::size_t> point_class(space.num_points());
  for (std::size_t x = 0; x < space.num_points(); ++x) {
    std::vector<bool> profile;
    for (PointSet u : space.opens()) profile.push_back(u.contains(x));
    for (PointSet v : atom_values) profile.push_back(v.contains(x));
    auto [it, fresh] = ids.emplace(std::move(profile), ids.size());
    point_class[x] = it->second;
  }
  const std::size_t n_classes = ids.size();

  auto lift = [&](PointSet s) {
    PointSet out;
    for (std::size_t x : s.members()) out = out | PointSet::singleton(point_class[x]);
    return out;
  };

  std::vector<std::string> names;
  for (std::size_t c = 0; c < n_classes; ++c) names.push_back("x" + std::to_string(c + 1));
  Family lifted;
  for (PointSet u : space.opens()) lifted.push_back(lift(u));

  std::map<std::string, PointSet> valuation;
  for (const std::string& a : atom_list) {
    const PointSet value = model.value(a);
    // i*(A) is well defined: a class lies inside or outside i(A) as a whole.
    for (std::size_t x = 0; x < space.num_points(); ++x) {
      if (value.contains(x) != lift(value).contains(point_class[x])) {
        throw InternalError("atom valuation is not constant on a point class");
      }
    }
    valuation.emplace(a, lift(value));
  }

  QuotientMap out{point_class, {}, Model(make_space(names, lifted), std::move(valuation))};
  const SubsetSpace& qspace = out.quotient.space();
  for (PointSet u : space.opens()) out.open_class.push_back(*qspace.index_of(lift(u)));
  if (qspace.num_opens() != space.num_opens()) {
    throw InternalError("distinct opens collapsed in the point quotient");
  }
  if (is_topology(space) && !is_topology(qspace)) {
    throw InternalError("quotient of a topology is not a topology");
  }
  return out;
}

Pair FiniteModel::translate(const Model& original, Pair p) const {
  const PointSet v = original.space().open(p.open);
  const PointSet rep = classify(table.root().family, v);
  return quotient.translate({p.point, *restricted.space().index_of(rep)});
}

FiniteModel extract_finite_model(const Model& model, const Formula& f) {
  SplittingTable table = build_splitting(model, f);
  Family family = table.root().family;
  family.push_back(PointSet{});
  family = close_under_union(std::move(family));
  if (!is_intersection_closed(family)) {
    throw InternalError("union-closure of the splitting lost intersection-closure");
  }
  Model restricted(make_space(model.space().point_names(), std::move(family)), model.valuation());
  QuotientMap quotient = point_quotient(restricted, atoms(f));
  return FiniteModel{std::move(table), std::move(restricted), std::move(quotient)};
}

}  // namespace topologic
