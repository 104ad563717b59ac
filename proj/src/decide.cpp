#include "topologic/decide.hpp"

#include <algorithm>
#include <set>

#include "topologic/errors.hpp"

namespace topologic {

namespace {

// Opens of a preorder: the sets closed upward along `up[i]` (successors of i).
Family up_sets(std::size_t n, const std::vector<PointSet>& up) {
  Family opens;
  for (PointSet::Bits bits = 0; bits < (PointSet::Bits{1} << n); ++bits) {
    const PointSet s(bits);
    bool closed = true;
    for (std::size_t i : s.members()) {
      if (!up[i].subset_of(s)) {
        closed = false;
        break;
      }
    }
    if (closed) opens.push_back(s);
  }
  return opens;
}

bool is_transitive(const std::vector<PointSet>& up) {
  for (std::size_t i = 0; i < up.size(); ++i) {
    for (std::size_t j : up[i].members()) {
      if (!up[j].subset_of(up[i])) return false;
    }
  }
  return true;
}

void transitive_close(std::vector<PointSet>& up) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < up.size(); ++i) {
      PointSet grown = up[i];
      for (std::size_t j : up[i].members()) grown = grown | up[j];
      if (grown != up[i]) {
        up[i] = grown;
        changed = true;
      }
    }
  }
}

}  // namespace

std::vector<SubsetSpace> enumerate_topologies(std::size_t n, std::size_t cap) {
  if (n == 0) throw PreconditionError("enumerate_topologies needs at least one point");
  if (n > cap) throw PreconditionError("enumerate_topologies: point count exceeds the cap");
  std::vector<std::pair<std::size_t, std::size_t>> off_diagonal;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) off_diagonal.emplace_back(i, j);
    }
  }
  std::vector<SubsetSpace> out;
  std::set<Family> seen;
  const std::uint64_t relations = std::uint64_t{1} << off_diagonal.size();
  for (std::uint64_t mask = 0; mask < relations; ++mask) {
    std::vector<PointSet> up(n);
    for (std::size_t i = 0; i < n; ++i) up[i] = PointSet::singleton(i);
    for (std::size_t k = 0; k < off_diagonal.size(); ++k) {
      if ((mask >> k) & 1U) {
        const auto [i, j] = off_diagonal[k];
        up[i] = up[i] | PointSet::singleton(j);
      }
    }
    if (!is_transitive(up)) continue;
    Family opens = up_sets(n, up);
    if (seen.insert(opens).second) out.push_back(make_space(n, std::move(opens)));
  }
  return out;
}

SubsetSpace random_topology(std::size_t n, std::mt19937_64& rng) {
  std::bernoulli_distribution edge(0.3);
  std::vector<PointSet> up(n);
  for (std::size_t i = 0; i < n; ++i) {
    up[i] = PointSet::singleton(i);
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && edge(rng)) up[i] = up[i] | PointSet::singleton(j);
    }
  }
  transitive_close(up);
  return make_space(n, up_sets(n, up));
}

Formula random_formula(std::mt19937_64& rng, std::span<const std::string> atom_list,
                       std::size_t max_depth) {
  auto pick = [&](std::size_t k) { return std::uniform_int_distribution<std::size_t>(0, k - 1)(rng); };
  if (max_depth == 0 || pick(4) == 0) {
    if (atom_list.empty() || pick(8) == 0) return pick(2) == 0 ? Formula::top() : Formula::bot();
    return Formula::atom(atom_list[pick(atom_list.size())]);
  }
  const std::size_t d = max_depth - 1;
  switch (pick(9)) {
    case 0:
      return Formula::negate(random_formula(rng, atom_list, d));
    case 1:
      return Formula::conj(random_formula(rng, atom_list, d), random_formula(rng, atom_list, d));
    case 2:
      return Formula::knows(random_formula(rng, atom_list, d));
    case 3:
      return Formula::box(random_formula(rng, atom_list, d));
    case 4:
      return Formula::possible(random_formula(rng, atom_list, d));
    case 5:
      return Formula::diamond(random_formula(rng, atom_list, d));
    case 6:
      return Formula::implies(random_formula(rng, atom_list, d), random_formula(rng, atom_list, d));
    case 7:
      return Formula::disj(random_formula(rng, atom_list, d), random_formula(rng, atom_list, d));
    default:
      return Formula::negate(Formula::knows(random_formula(rng, atom_list, d)));
  }
}

std::uint64_t valuation_count(std::size_t n_atoms, std::size_t n) {
  const std::size_t bits = n_atoms * n;
  if (bits >= 64) throw PreconditionError("too many valuations to enumerate");
  return std::uint64_t{1} << bits;
}

std::map<std::string, PointSet> valuation_at(std::span<const std::string> atom_list,
                                             std::size_t n, std::uint64_t index) {
  std::map<std::string, PointSet> out;
  const PointSet full = PointSet::full(n);
  for (std::size_t k = 0; k < atom_list.size(); ++k) {
    out[atom_list[k]] = PointSet(index >> (k * n)) & full;
  }
  return out;
}

void for_each_topological_model(const SearchBound& bound,
                                const std::function<bool(const Model&)>& visit) {
  if (bound.max_points == 0) throw PreconditionError("search bound needs at least one point");
  std::mt19937_64 rng(bound.seed);
  const std::size_t cap = std::max(kDefaultEnumerationCap, bound.max_points);
  for (std::size_t n = std::max<std::size_t>(1, bound.min_points); n <= bound.max_points; ++n) {
    for (const SubsetSpace& space : enumerate_topologies(n, cap)) {
      if (bound.enumerate_valuations) {
        const std::uint64_t count = valuation_count(bound.atoms.size(), n);
        for (std::uint64_t v = 0; v < count; ++v) {
          if (!visit(Model(space, valuation_at(bound.atoms, n, v)))) return;
        }
      } else {
        std::uniform_int_distribution<PointSet::Bits> bits;
        for (std::size_t k = 0; k < bound.sampled_valuations; ++k) {
          std::map<std::string, PointSet> valuation;
          for (const std::string& a : bound.atoms) valuation[a] = PointSet(bits(rng)) & space.universe();
          if (!visit(Model(space, std::move(valuation)))) return;
        }
      }
    }
  }
}

std::string to_string(Verdict::Kind kind) {
  switch (kind) {
    case Verdict::Kind::kSatisfiable:
      return "satisfiable";
    case Verdict::Kind::kNoModelWithinBound:
      return "no model within bound";
    case Verdict::Kind::kValidWithinBound:
      return "valid within bound";
    case Verdict::Kind::kInvalid:
      return "invalid";
  }
  return "?";
}

namespace {

void require_atoms(const Formula& f, const SearchBound& bound) {
  for (const std::string& a : atoms(f)) {
    if (std::find(bound.atoms.begin(), bound.atoms.end(), a) == bound.atoms.end()) {
      throw PreconditionError("atom " + a + " is not in the search bound's atom list");
    }
  }
}

}  // namespace

Verdict decide_sat(const Formula& f, const SearchBound& bound) {
  require_atoms(f, bound);
  Verdict verdict;
  for_each_topological_model(bound, [&](const Model& m) {
    ++verdict.models_examined;
    const ExtensionTable table(m, f);
    for (Pair p : pairs(m.space())) {
      if (!table.holds(p)) continue;
      if (!satisfies(m, p, f)) throw InternalError("satisfiability witness failed re-verification");
      verdict.kind = Verdict::Kind::kSatisfiable;
      verdict.model = m;
      verdict.pair = p;
      return false;
    }
    return true;
  });
  return verdict;
}

Verdict decide_valid(const Formula& f, const SearchBound& bound) {
  require_atoms(f, bound);
  Verdict verdict;
  verdict.kind = Verdict::Kind::kValidWithinBound;
  for_each_topological_model(bound, [&](const Model& m) {
    ++verdict.models_examined;
    const Validity v = model_valid(m, f);
    if (v.valid) return true;
    if (satisfies(m, *v.counterexample, f)) {
      throw InternalError("counterexample failed re-verification");
    }
    verdict.kind = Verdict::Kind::kInvalid;
    verdict.model = m;
    verdict.pair = v.counterexample;
    return false;
  });
  return verdict;
}

Formula random_axiom_instance(int scheme, std::mt19937_64& rng,
                              std::span<const std::string> atom_list, std::size_t depth) {
  Substitution subst;
  if (scheme == 2) {
    if (atom_list.empty()) throw PreconditionError("axiom scheme 2 needs an atom");
    std::uniform_int_distribution<std::size_t> pick(0, atom_list.size() - 1);
    subst.phi = Formula::atom(atom_list[pick(rng)]);
  } else {
    subst.phi = random_formula(rng, atom_list, depth);
  }
  subst.psi = random_formula(rng, atom_list, depth);
  subst.chi = random_formula(rng, atom_list, depth);
  std::uniform_int_distribution<std::size_t> variant(0, tautology_template_count() - 1);
  return instantiate_axiom(scheme, subst, variant(rng));
}

SweepReport axiom_sweep(std::span<const Model> models, std::span<const int> schemes,
                        std::size_t trials, std::uint64_t seed, std::size_t depth,
                        std::span<const std::string> atom_list) {
  SweepReport report;
  report.models = models.size();
  std::mt19937_64 rng(seed);
  for (int scheme : schemes) {
    SchemeStats& stats = report.schemes[scheme];
    for (std::size_t t = 0; t < trials; ++t) {
      const Formula instance = random_axiom_instance(scheme, rng, atom_list, depth);
      ++stats.instances;
      for (const Model& m : models) {
        ++stats.model_checks;
        const Validity v = model_valid(m, instance);
        if (!v.valid) {
          ++stats.violations;
          report.violations.push_back({scheme, instance, m, *v.counterexample});
        }
      }
    }
  }
  return report;
}

SweepReport axiom_soundness_sweep(const SearchBound& bound, std::span<const int> schemes,
                                  std::size_t trials, std::uint64_t seed, std::size_t depth) {
  std::vector<Model> models;
  for_each_topological_model(bound, [&](const Model& m) {
    models.push_back(m);
    return true;
  });
  return axiom_sweep(models, schemes, trials, seed, depth, bound.atoms);
}

std::vector<Formula> candidate_formulas(std::span<const std::string> atom_list) {
  std::vector<Formula> out;
  for (const std::string& a : atom_list) out.push_back(Formula::atom(a));
  out.push_back(Formula::top());
  for (const std::string& a : atom_list) {
    const Formula p = Formula::atom(a);
    out.push_back(Formula::negate(p));
    out.push_back(Formula::knows(p));
    out.push_back(Formula::possible(p));
    out.push_back(Formula::box(p));
    out.push_back(Formula::diamond(p));
  }
  return out;
}

namespace {

// Subset spaces on n points with exactly k opens, X included, in canonical
// combination order of the remaining opens.
void for_each_subset_space(std::size_t n, std::size_t k,
                           const std::function<bool(const SubsetSpace&)>& visit) {
  const PointSet universe = PointSet::full(n);
  Family others;
  for (PointSet::Bits b = 0; b < universe.bits(); ++b) others.push_back(PointSet(b));
  others = canonical(std::move(others));
  const std::size_t pick = k - 1;
  if (pick > others.size()) return;
  std::vector<std::size_t> idx(pick);
  for (std::size_t i = 0; i < pick; ++i) idx[i] = i;
  while (true) {
    Family opens{universe};
    for (std::size_t i : idx) opens.push_back(others[i]);
    if (!visit(make_space(n, std::move(opens)))) return;
    // Next combination.
    std::size_t i = pick;
    while (i > 0 && idx[i - 1] == others.size() - pick + (i - 1)) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < pick; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

std::optional<Countermodel> find_subset_space_countermodel(int scheme, const SearchBound& bound,
                                                           std::size_t max_opens,
                                                           bool topologies_only) {
  if (scheme != 11 && scheme != 12) {
    throw PreconditionError("countermodel search covers schemes 11 and 12");
  }
  const std::vector<Formula> candidates = candidate_formulas(bound.atoms);
  std::vector<Formula> instances;
  if (scheme == 11) {
    for (const Formula& p : candidates) instances.push_back(instantiate_axiom(11, {p, {}, {}}));
  } else {
    for (const Formula& p : candidates) {
      for (const Formula& q : candidates) {
        for (const Formula& r : candidates) instances.push_back(instantiate_axiom(12, {p, q, r}));
      }
    }
  }

  std::optional<Countermodel> found;
  for (const Formula& instance : instances) {
    for (std::size_t n = std::max<std::size_t>(1, bound.min_points); n <= bound.max_points && !found; ++n) {
      const std::uint64_t count = valuation_count(bound.atoms.size(), n);
      for (std::size_t k = 1; k <= max_opens && !found; ++k) {
        for_each_subset_space(n, k, [&](const SubsetSpace& space) {
          if (topologies_only && !is_topology(space)) return true;
          for (std::uint64_t v = 0; v < count; ++v) {
            Model m(space, valuation_at(bound.atoms, n, v));
            const Validity validity = model_valid(m, instance);
            if (validity.valid) continue;
            if (satisfies(m, *validity.counterexample, instance)) {
              throw InternalError("countermodel failed re-verification");
            }
            found = Countermodel{std::move(m), instance, *validity.counterexample};
            return false;
          }
          return true;
        });
      }
    }
    if (found) break;
  }
  return found;
}

}  // namespace topologic
