#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "topologic/formula.hpp"
#include "topologic/semantics.hpp"
#include "topologic/space.hpp"
#include "topologic/splitting.hpp"

namespace topologic {

// {{{ Basis models

/// Every member of `basis` is open and every open is a union of basis members.
bool is_basis_of(const SubsetSpace& topology, const Family& basis);

/// Union-closure of the minimal neighborhoods N_x (the meet of all opens
/// containing x). In a finite topology this is the smallest union-closed basis.
Family minimal_neighborhood_basis(const SubsetSpace& topology);

/// Some U in `basis` with x in U <= v and U in Rem_F(v). Built as the union of
/// a basic neighborhood of x inside v with, for each member v_i of F not
/// containing v, a basic neighborhood inside v of a point of v - v_i.
/// Requires `basis` to be a union-closed basis of the topology, v in F and
/// x in v.
PointSet basis_witness(const SubsetSpace& topology, const Family& basis, const Family& f,
                       PointSet v, std::size_t x);

struct BasisCounterexample {
  Formula formula;
  std::size_t point = 0;
  std::optional<PointSet> open;  // nullopt for a model-level validity mismatch
  bool topology_value = false;
  bool basis_value = false;
};

struct BasisEquivalence {
  bool equivalent = true;
  std::optional<BasisCounterexample> counterexample;
  std::size_t pairs_checked = 0;
};

/// Compares satisfaction in <X, T, i> and <X, B, i>: pointwise at every
/// (x, U) with U in B for every subformula, and whole-model validity of each
/// formula.
BasisEquivalence basis_equivalent(const Model& topological_model, const Family& basis,
                                  std::span<const Formula> formulas);

// }}}

// {{{ Quotients

/// Points identified when they lie in the same opens and the same atom values.
struct QuotientMap {
  std::vector<std::size_t> point_class;  // x -> index of x* in the quotient
  std::vector<std::size_t> open_class;   // open index -> index of U* in the quotient
  Model quotient;

  Pair translate(Pair p) const { return {point_class[p.point], open_class[p.open]}; }
  /// Members of each class, classes ordered by least member.
  std::vector<std::vector<std::size_t>> classes() const;
};

/// Quotient relative to the model's own family and the given atoms. Classes
/// are named x1, x2, ... in order of their least member. Throws InputError for
/// atoms missing from the valuation and InternalError if the quotient of a
/// topology fails to be one.
QuotientMap point_quotient(const Model& model, const std::set<std::string>& atom_list);

/// A finite model satisfying exactly what the input satisfies for a formula
/// and its subformulas: restrict to the union-closure of the formula's stable
/// splitting, then take the point quotient over the formula's atoms.
struct FiniteModel {
  SplittingTable table;
  Model restricted;  // <X, F, i> with F the union-closed splitting family
  QuotientMap quotient;

  /// Maps a pair of the original model to a pair of the quotient model with
  /// the same truth values for every subformula. The open is first replaced
  /// by its representative in the splitting.
  Pair translate(const Model& original, Pair p) const;
  const Model& model() const { return quotient.quotient; }
};

FiniteModel extract_finite_model(const Model& model, const Formula& f);

// }}}

}  // namespace topologic
