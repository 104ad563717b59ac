#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "topologic/formula.hpp"
#include "topologic/semantics.hpp"
#include "topologic/space.hpp"

namespace topologic {

constexpr std::size_t kDefaultEnumerationCap = 4;

/// Every labeled topology on n points exactly once, built from the
/// reflexive-transitive relations on n points (opens are the up-closed sets).
/// Order follows the relation bitmask. Throws PreconditionError if n is 0 or
/// exceeds `cap`.
std::vector<SubsetSpace> enumerate_topologies(std::size_t n,
                                              std::size_t cap = kDefaultEnumerationCap);

/// Topology of a random preorder on n points.
SubsetSpace random_topology(std::size_t n, std::mt19937_64& rng);

/// Random core-syntax formula over `atom_list` of depth at most `max_depth`.
Formula random_formula(std::mt19937_64& rng, std::span<const std::string> atom_list,
                       std::size_t max_depth);

/// Valuations of `atom_list` on n points in counter order: atom k takes the
/// bits [k*n, (k+1)*n) of a running index.
std::map<std::string, PointSet> valuation_at(std::span<const std::string> atom_list,
                                             std::size_t n, std::uint64_t index);
std::uint64_t valuation_count(std::size_t n_atoms, std::size_t n);

struct SearchBound {
  std::size_t max_points = 3;
  std::vector<std::string> atoms;
  /// When false, `sampled_valuations` random valuations per space (drawn from
  /// `seed`) replace the exhaustive enumeration.
  bool enumerate_valuations = true;
  std::size_t sampled_valuations = 16;
  std::uint64_t seed = 0;
  std::size_t min_points = 1;
};

/// Calls `visit` on every model within the bound in search order: points
/// ascending, topology order, valuation order. Stops when `visit` returns
/// false.
void for_each_topological_model(const SearchBound& bound,
                                const std::function<bool(const Model&)>& visit);

struct Verdict {
  enum class Kind { kSatisfiable, kNoModelWithinBound, kValidWithinBound, kInvalid };

  Kind kind = Kind::kNoModelWithinBound;
  std::optional<Model> model;  // witness or counter model
  std::optional<Pair> pair;
  std::size_t models_examined = 0;

  bool positive() const { return kind == Kind::kSatisfiable || kind == Kind::kValidWithinBound; }
};

std::string to_string(Verdict::Kind kind);

/// Throws PreconditionError if the formula uses atoms outside bound.atoms.
Verdict decide_sat(const Formula& f, const SearchBound& bound);
Verdict decide_valid(const Formula& f, const SearchBound& bound);

struct SchemeStats {
  std::size_t instances = 0;
  std::size_t model_checks = 0;
  std::size_t violations = 0;
};

struct SweepViolation {
  int scheme = 0;
  Formula instance;
  Model model;
  Pair pair;
};

struct SweepReport {
  std::map<int, SchemeStats> schemes;
  std::vector<SweepViolation> violations;
  std::size_t models = 0;

  bool clean() const { return violations.empty(); }
};

/// Random substitution instance of a scheme. Metavariables get random formulas
/// of depth at most `depth`; scheme 2 gets a random atom.
Formula random_axiom_instance(int scheme, std::mt19937_64& rng,
                              std::span<const std::string> atom_list, std::size_t depth);

/// Checks `trials` random instances per scheme on every given model.
SweepReport axiom_sweep(std::span<const Model> models, std::span<const int> schemes,
                        std::size_t trials, std::uint64_t seed, std::size_t depth,
                        std::span<const std::string> atom_list);

/// Same, over every topological model within the bound.
SweepReport axiom_soundness_sweep(const SearchBound& bound, std::span<const int> schemes,
                                  std::size_t trials, std::uint64_t seed, std::size_t depth = 4);

struct Countermodel {
  Model model;
  Formula instance;
  Pair pair;
};

/// Small substitution candidates over `atom_list`: the atoms, top, and one
/// modal or Boolean operator applied to an atom.
std::vector<Formula> candidate_formulas(std::span<const std::string> atom_list);

/// Searches subset spaces (the whole set present, no closure conditions) of
/// up to bound.max_points points and `max_opens` opens, all valuations of
/// bound.atoms, for a falsified instance of scheme 11 or 12. Instances are
/// tried from `candidate_formulas` in order, spaces inside each instance by
/// point count, open count and canonical combination order. With
/// `topologies_only` the search is restricted to topologies.
std::optional<Countermodel> find_subset_space_countermodel(int scheme, const SearchBound& bound,
                                                           std::size_t max_opens = 4,
                                                           bool topologies_only = false);

}  // namespace topologic
