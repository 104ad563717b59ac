#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "topologic/formula.hpp"
#include "topologic/semantics.hpp"
#include "topologic/space.hpp"

namespace topologic {

// {{{ Remainder algebra over a finite family F of opens.

/// v in Rem_F(u): v <= u and v lies below no member of F that fails to
/// contain u. Works for arbitrary (not necessarily meet-closed) families.
bool in_remainder(const Family& family, PointSet u, PointSet v);

/// Rem_F(u) as a set of ambient opens. When the family is
/// intersection-closed the simplified form ↓u minus the ideals of the
/// members strictly below u is computed as well and must agree.
/// Throws PreconditionError if u is not a member of the family.
Family remainder(const SubsetSpace& ambient, const Family& family, PointSet u);

/// The simplified remainder ↓u minus the union of ↓w over members w ⊊ u.
Family remainder_simplified(const SubsetSpace& ambient, const Family& family, PointSet u);

/// Meet of the members of F containing v. Throws PreconditionError if no
/// member contains v.
PointSet classify(const Family& family, PointSet v);

/// v1 and v2 lie below exactly the same members of g.
bool same_class(const Family& g, PointSet v1, PointSet v2);

/// Assignment of every ambient open in ↓F to its remainder block.
struct RemainderPartition {
  Family family;
  /// Indexed by ambient open index; the index into `family` of the block
  /// representative, or nullopt for opens outside ↓F.
  std::vector<std::optional<std::size_t>> representative;

  /// Ambient opens assigned to family[member].
  Family block(const SubsetSpace& ambient, std::size_t member) const;
};

/// Requires an intersection-closed family.
RemainderPartition partition(const SubsetSpace& ambient, const Family& family);

/// For every point x, the truth of f at (x, V) is constant over the members
/// V of `block` that contain x.
bool is_stable(const Model& model, const Family& block, const Formula& f);
bool is_stable(const ExtensionTable& table, std::size_t sub, const SubsetSpace& space,
               const Family& block);

// }}}

/// Stable splitting for one subformula: the family F^psi and, for every
/// member U, the extension U^psi = { x in U : x, U |= psi }.
struct Splitting {
  Formula formula;
  Family family;
  std::vector<PointSet> extensions;  // parallel to family

  PointSet extension_of(PointSet member) const;
  /// { x in V : x, V |= psi } for any open V in ↓F, answered through the
  /// representative of V's remainder block.
  PointSet local_extension(PointSet v) const;
};

/// Stable splittings for a formula and all its subformulas.
class SplittingTable {
 public:
  SplittingTable(SubformulaDag dag, std::vector<Splitting> entries)
      : dag_(std::move(dag)), entries_(std::move(entries)) {}

  const SubformulaDag& dag() const { return dag_; }
  const std::vector<Splitting>& entries() const { return entries_; }
  const Splitting& at(std::size_t sub) const { return entries_[sub]; }
  const Splitting& at(const Formula& sub) const { return entries_[dag_.index_of(sub)]; }
  const Splitting& root() const { return entries_.back(); }

 private:
  SubformulaDag dag_;
  std::vector<Splitting> entries_;
};

/// Builds F^psi for every subformula psi of f by structural induction:
/// atoms and constants get {∅, X}; negation reuses the child's family;
/// conjunction closes the union of both families under intersection; K adds
/// the interiors W_i = (U_i^phi)° that fall in Rem(U_i); [] adds every
/// Heyting implication U_i => U_j. Extensions are derived from the child
/// splittings, not from direct evaluation. Requires a topology.
SplittingTable build_splitting(const Model& model, const Formula& f);

/// Truth of psi at p read off the splitting table: classify p.open in F^psi
/// and look up the representative's extension.
bool fast_satisfies(const SplittingTable& table, const Model& model, Pair p, const Formula& psi);

/// Checks every guarantee the construction promises against direct
/// evaluation. Returns human-readable failures; empty means all hold.
std::vector<std::string> verify_splitting(const Model& model, const Formula& f,
                                          const SplittingTable& table);

}  // namespace topologic
