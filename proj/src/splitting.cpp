#include "topologic/splitting.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "topologic/errors.hpp"

namespace topologic {

bool in_remainder(const Family& family, PointSet u, PointSet v) {
  if (!v.subset_of(u)) return false;
  for (PointSet w : family) {
    if (!u.subset_of(w) && v.subset_of(w)) return false;
  }
  return true;
}

Family remainder_simplified(const SubsetSpace& ambient, const Family& family, PointSet u) {
  Family out;
  for (PointSet v : ambient.opens()) {
    if (!v.subset_of(u)) continue;
    const bool below_smaller = std::any_of(family.begin(), family.end(), [&](PointSet w) {
      return w.proper_subset_of(u) && v.subset_of(w);
    });
    if (!below_smaller) out.push_back(v);
  }
  return out;
}

Family remainder(const SubsetSpace& ambient, const Family& family, PointSet u) {
  if (std::find(family.begin(), family.end(), u) == family.end()) {
    throw PreconditionError("remainder: open is not a member of the family");
  }
  Family out;
  for (PointSet v : ambient.opens()) {
    if (in_remainder(family, u, v)) out.push_back(v);
  }
  if (is_intersection_closed(family) && out != remainder_simplified(ambient, family, u)) {
    throw InternalError("general and simplified remainders disagree on a meet-closed family");
  }
  return out;
}

PointSet classify(const Family& family, PointSet v) {
  bool found = false;
  PointSet meet;
  for (PointSet u : family) {
    if (!v.subset_of(u)) continue;
    meet = found ? (meet & u) : u;
    found = true;
  }
  if (!found) throw PreconditionError("classify: open lies outside the family's ideal");
  return meet;
}

bool same_class(const Family& g, PointSet v1, PointSet v2) {
  return std::all_of(g.begin(), g.end(),
                     [&](PointSet u) { return v1.subset_of(u) == v2.subset_of(u); });
}

Family RemainderPartition::block(const SubsetSpace& ambient, std::size_t member) const {
  Family out;
  for (std::size_t v = 0; v < representative.size(); ++v) {
    if (representative[v] == member) out.push_back(ambient.open(v));
  }
  return out;
}

RemainderPartition partition(const SubsetSpace& ambient, const Family& family) {
  if (!is_intersection_closed(family)) {
    throw PreconditionError("partition requires an intersection-closed family");
  }
  RemainderPartition out;
  out.family = canonical(family);
  out.representative.resize(ambient.num_opens());
  for (std::size_t v = 0; v < ambient.num_opens(); ++v) {
    const PointSet open = ambient.open(v);
    const bool covered = std::any_of(out.family.begin(), out.family.end(),
                                     [&](PointSet u) { return open.subset_of(u); });
    if (!covered) continue;
    const PointSet rep = classify(out.family, open);
    auto it = std::lower_bound(out.family.begin(), out.family.end(), rep);
    out.representative[v] = static_cast<std::size_t>(it - out.family.begin());
  }
  return out;
}

bool is_stable(const ExtensionTable& table, std::size_t sub, const SubsetSpace& space,
               const Family& block) {
  for (std::size_t x = 0; x < space.num_points(); ++x) {
    std::optional<bool> truth;
    for (PointSet v : block) {
      if (!v.contains(x)) continue;
      auto index = space.index_of(v);
      if (!index) throw PreconditionError("is_stable: block member is not an open");
      const bool here = table.at(sub, *index).contains(x);
      if (truth && *truth != here) return false;
      truth = here;
    }
  }
  return true;
}

bool is_stable(const Model& model, const Family& block, const Formula& f) {
  const ExtensionTable table(model, f);
  return is_stable(table, table.dag().root(), model.space(), block);
}

PointSet Splitting::extension_of(PointSet member) const {
  auto it = std::lower_bound(family.begin(), family.end(), member);
  if (it == family.end() || *it != member) {
    throw PreconditionError("extension_of: not a member of the splitting");
  }
  return extensions[static_cast<std::size_t>(it - family.begin())];
}

PointSet Splitting::local_extension(PointSet v) const {
  return v & extension_of(classify(family, v));
}

namespace {

Splitting make_splitting(const Formula& f, Family family, auto&& extension_at) {
  Splitting s{f, canonical(std::move(family)), {}};
  s.extensions.reserve(s.family.size());
  for (PointSet u : s.family) s.extensions.push_back(extension_at(u));
  return s;
}

}  // namespace

SplittingTable build_splitting(const Model& model, const Formula& f) {
  const SubsetSpace& space = model.space();
  if (!is_topology(space)) throw PreconditionError("build_splitting requires a topology");
  const PointSet universe = space.universe();
  SubformulaDag dag = index_subformulas(f);
  std::vector<Splitting> entries;
  entries.reserve(dag.size());

  for (std::size_t s = 0; s < dag.size(); ++s) {
    const Formula& g = dag.nodes[s];
    const auto [a, b] = dag.children[s];
    switch (g.op()) {
      case Op::kAtom: {
        const PointSet value = model.value(g.name());
        entries.push_back(make_splitting(g, {PointSet{}, universe},
                                         [&](PointSet u) { return u & value; }));
        break;
      }
      case Op::kTop:
        entries.push_back(make_splitting(g, {PointSet{}, universe}, [](PointSet u) { return u; }));
        break;
      case Op::kBot:
        entries.push_back(
            make_splitting(g, {PointSet{}, universe}, [](PointSet) { return PointSet{}; }));
        break;
      case Op::kNot: {
        const Splitting& inner = entries[a];
        entries.push_back(make_splitting(
            g, inner.family, [&](PointSet u) { return u - inner.local_extension(u); }));
        break;
      }
      case Op::kAnd: {
        const Splitting& lhs = entries[a];
        const Splitting& rhs = entries[b];
        Family joined = lhs.family;
        joined.insert(joined.end(), rhs.family.begin(), rhs.family.end());
        entries.push_back(make_splitting(g, close_under_intersection(std::move(joined)),
                                         [&](PointSet u) {
                                           return lhs.local_extension(u) & rhs.local_extension(u);
                                         }));
        break;
      }
      case Op::kKnows: {
        const Splitting& inner = entries[a];
        Family grown = inner.family;
        for (std::size_t i = 0; i < inner.family.size(); ++i) {
          const PointSet w = interior(space, inner.extensions[i]);
          if (in_remainder(inner.family, inner.family[i], w)) grown.push_back(w);
        }
        entries.push_back(make_splitting(g, close_under_intersection(std::move(grown)),
                                         [&](PointSet u) {
                                           return inner.local_extension(u) == u ? u : PointSet{};
                                         }));
        break;
      }
      case Op::kBox: {
        const Splitting& inner = entries[a];
        Family grown = inner.family;
        for (PointSet ui : inner.family) {
          for (PointSet uj : inner.family) grown.push_back(heyting_implication(space, ui, uj));
        }
        // U^{~[]phi} = U & union of V_i^{~phi} over members V_i with U & V_i in Rem(V_i).
        auto box_extension = [&](PointSet u) {
          PointSet refuted;
          for (std::size_t i = 0; i < inner.family.size(); ++i) {
            const PointSet vi = inner.family[i];
            if (classify(inner.family, u & vi) == vi) refuted = refuted | (vi - inner.extensions[i]);
          }
          return u - (u & refuted);
        };
        entries.push_back(
            make_splitting(g, close_under_intersection(std::move(grown)), box_extension));
        break;
      }
    }
  }
  return SplittingTable(std::move(dag), std::move(entries));
}

bool fast_satisfies(const SplittingTable& table, const Model& model, Pair p, const Formula& psi) {
  const SubsetSpace& space = model.space();
  if (p.open >= space.num_opens() || !space.open(p.open).contains(p.point)) {
    throw PreconditionError("invalid pair: point not in open");
  }
  const Splitting& entry = table.at(psi);
  return entry.local_extension(space.open(p.open)).contains(p.point);
}

namespace {

std::string describe(const Formula& f, const std::string& what) {
  std::ostringstream os;
  os << "[" << print(f) << "] " << what;
  return os.str();
}

void descendants(const SubformulaDag& dag, std::size_t s, std::set<std::size_t>& out) {
  if (!out.insert(s).second) return;
  for (std::ptrdiff_t c : dag.children[s]) {
    if (c >= 0) descendants(dag, static_cast<std::size_t>(c), out);
  }
}

}  // namespace

std::vector<std::string> verify_splitting(const Model& model, const Formula& f,
                                          const SplittingTable& table) {
  std::vector<std::string> failures;
  const SubsetSpace& space = model.space();
  const ExtensionTable direct(model, f);
  const SubformulaDag& dag = table.dag();
  if (dag.nodes != direct.dag().nodes) {
    failures.push_back("splitting table does not match the formula's subformulas");
    return failures;
  }
  const ClosureFamily fm = closure_family(model, atoms(f));

  for (std::size_t s = 0; s < dag.size(); ++s) {
    const Splitting& entry = table.at(s);
    const Formula& psi = dag.nodes[s];
    const Family& family = entry.family;

    if (!family_contains(family, space.universe())) failures.push_back(describe(psi, "X missing"));
    if (!is_intersection_closed(family)) {
      failures.push_back(describe(psi, "family not closed under intersection"));
      continue;
    }
    for (PointSet u : family) {
      if (!family_contains(fm.opens, u)) failures.push_back(describe(psi, "member outside F_M°"));
    }
    for (std::size_t i = 0; i < family.size(); ++i) {
      const auto u = space.index_of(family[i]);
      if (!family_contains(fm.sets, entry.extensions[i])) {
        failures.push_back(describe(psi, "extension outside F_M"));
      }
      if (entry.extensions[i] != direct.at(s, *u)) {
        failures.push_back(describe(psi, "recorded extension differs from direct evaluation"));
      }
    }

    std::set<std::size_t> below;
    descendants(dag, s, below);
    for (std::size_t d : below) {
      for (PointSet u : table.at(d).family) {
        if (!family_contains(family, u)) {
          failures.push_back(describe(psi, "does not contain the family of " + print(dag.nodes[d])));
          break;
        }
      }
    }

    // Partition laws: blocks match remainders, are disjoint, cover ↓F and are convex.
    const RemainderPartition part = partition(space, family);
    std::vector<int> hits(space.num_opens(), 0);
    for (std::size_t i = 0; i < family.size(); ++i) {
      const Family block = part.block(space, i);
      if (block != remainder(space, family, family[i])) {
        failures.push_back(describe(psi, "partition block differs from remainder"));
      }
      for (PointSet v : block) ++hits[*space.index_of(v)];
      for (PointSet lo : block) {
        for (PointSet hi : block) {
          if (!lo.subset_of(hi)) continue;
          for (PointSet mid : space.opens()) {
            if (lo.subset_of(mid) && mid.subset_of(hi) && !family_contains(block, mid)) {
              failures.push_back(describe(psi, "remainder block is not convex"));
            }
          }
        }
      }
      for (std::size_t d : below) {
        if (!is_stable(direct, d, space, block)) {
          failures.push_back(describe(psi, "block unstable for " + print(dag.nodes[d])));
        }
      }
    }
    for (std::size_t v = 0; v < space.num_opens(); ++v) {
      if (hits[v] != 1) failures.push_back(describe(psi, "open not covered exactly once"));
    }
  }
  return failures;
}

}  // namespace topologic
