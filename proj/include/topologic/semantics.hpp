#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <vector>

#include "topologic/formula.hpp"
#include "topologic/space.hpp"

namespace topologic {

/// A point together with an open containing it. `open` indexes the space's
/// canonical family.
struct Pair {
  std::size_t point = 0;
  std::size_t open = 0;

  friend bool operator==(const Pair&, const Pair&) = default;
};

/// Every pair of the space in the deterministic search order: opens from the
/// largest canonical index down (the whole space first), then points ascending.
std::vector<Pair> pairs(const SubsetSpace& space);

/// Extensions of every subformula of a formula at every open of a model,
/// computed bottom-up over the subformula DAG.
class ExtensionTable {
 public:
  /// Throws InputError for atoms missing from the valuation.
  ExtensionTable(const Model& model, const Formula& f);

  const SubformulaDag& dag() const { return dag_; }

  /// { x in U : x, U |= sub } for U = opens()[open].
  PointSet at(std::size_t sub, std::size_t open) const { return table_[sub][open]; }
  PointSet root_extension(std::size_t open) const { return table_[dag_.root()][open]; }
  bool holds(Pair p) const { return root_extension(p.open).contains(p.point); }
  bool holds(Pair p, std::size_t sub) const { return at(sub, p.open).contains(p.point); }

 private:
  SubformulaDag dag_;
  std::vector<std::vector<PointSet>> table_;
};

/// Throws PreconditionError when p.point is not in the open.
bool satisfies(const Model& model, Pair p, const Formula& f);

PointSet extension(const Model& model, std::size_t open, const Formula& f);
PointSet extension(const Model& model, PointSet open, const Formula& f);

struct Validity {
  bool valid = true;
  std::optional<Pair> counterexample;  // least falsifying pair

  explicit operator bool() const { return valid; }
};

Validity model_valid(const Model& model, const Formula& f);

/// Metavariables of the axiom schemes: phi, psi, chi.
struct Substitution {
  std::optional<Formula> phi;
  std::optional<Formula> psi;
  std::optional<Formula> chi;
};

constexpr int kFirstScheme = 1;
constexpr int kLastScheme = 12;

/// Instance of axiom scheme 1..12. Scheme 1 (propositional tautologies) is
/// drawn from a fixed list of tautology templates selected by
/// `tautology_variant` (modulo the list size). Scheme 2 requires phi to be an
/// atom. Throws PreconditionError on bad scheme ids, missing metavariables or
/// a non-atomic scheme-2 substitution.
Formula instantiate_axiom(int scheme, const Substitution& subst,
                          std::size_t tautology_variant = 0);

std::size_t tautology_template_count();

/// Which metavariables a scheme uses (phi always).
bool scheme_uses_psi(int scheme);
bool scheme_uses_chi(int scheme);

}  // namespace topologic
