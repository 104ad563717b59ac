#include "topologic/semantics.hpp"

#include <functional>
#include <string>

#include "topologic/errors.hpp"

namespace topologic {

std::vector<Pair> pairs(const SubsetSpace& space) {
  std::vector<Pair> out;
  for (std::size_t u = space.num_opens(); u-- > 0;) {
    for (std::size_t x : space.open(u).members()) out.push_back({x, u});
  }
  return out;
}

ExtensionTable::ExtensionTable(const Model& model, const Formula& f)
    : dag_(index_subformulas(f)) {
  const SubsetSpace& space = model.space();
  const std::size_t n_opens = space.num_opens();
  const PointSet universe = space.universe();
  table_.assign(dag_.size(), std::vector<PointSet>(n_opens));

  for (std::size_t s = 0; s < dag_.size(); ++s) {
    const Formula& g = dag_.nodes[s];
    const auto [a, b] = dag_.children[s];
    std::vector<PointSet>& row = table_[s];
    switch (g.op()) {
      case Op::kAtom: {
        const PointSet value = model.value(g.name());
        for (std::size_t u = 0; u < n_opens; ++u) row[u] = space.open(u) & value;
        break;
      }
      case Op::kTop:
        for (std::size_t u = 0; u < n_opens; ++u) row[u] = space.open(u);
        break;
      case Op::kBot:
        break;
      case Op::kNot:
        for (std::size_t u = 0; u < n_opens; ++u) row[u] = space.open(u) - table_[a][u];
        break;
      case Op::kAnd:
        for (std::size_t u = 0; u < n_opens; ++u) row[u] = table_[a][u] & table_[b][u];
        break;
      case Op::kKnows:
        for (std::size_t u = 0; u < n_opens; ++u) {
          row[u] = table_[a][u] == space.open(u) ? space.open(u) : PointSet{};
        }
        break;
      case Op::kBox:
        // x survives iff every open V <= U containing x has x in V's extension.
        for (std::size_t u = 0; u < n_opens; ++u) {
          PointSet keep = space.open(u);
          for (std::size_t v : space.below(u)) {
            keep = keep & (table_[a][v] | space.open(v).complement_in(universe));
          }
          row[u] = keep;
        }
        break;
    }
  }
}

namespace {

void check_pair(const SubsetSpace& space, Pair p) {
  if (p.open >= space.num_opens() || p.point >= space.num_points() ||
      !space.open(p.open).contains(p.point)) {
    throw PreconditionError("invalid pair: point not in open");
  }
}

}  // namespace

bool satisfies(const Model& model, Pair p, const Formula& f) {
  check_pair(model.space(), p);
  return ExtensionTable(model, f).holds(p);
}

PointSet extension(const Model& model, std::size_t open, const Formula& f) {
  if (open >= model.space().num_opens()) throw PreconditionError("open index out of range");
  return ExtensionTable(model, f).root_extension(open);
}

PointSet extension(const Model& model, PointSet open, const Formula& f) {
  auto index = model.space().index_of(open);
  if (!index) throw PreconditionError("not an open of the model");
  return extension(model, *index, f);
}

Validity model_valid(const Model& model, const Formula& f) {
  const ExtensionTable table(model, f);
  for (Pair p : pairs(model.space())) {
    if (!table.holds(p)) return Validity{false, p};
  }
  return Validity{};
}

// {{{ Axiom schemes

namespace {

using F = Formula;

const std::vector<std::function<Formula(const F&, const F&, const F&)>>& tautologies() {
  static const std::vector<std::function<Formula(const F&, const F&, const F&)>> list = {
      [](const F& p, const F&, const F&) { return F::implies(p, p); },
      [](const F& p, const F& q, const F&) { return F::implies(p, F::implies(q, p)); },
      [](const F& p, const F& q, const F& r) {
        return F::implies(F::implies(p, F::implies(q, r)),
                          F::implies(F::implies(p, q), F::implies(p, r)));
      },
      [](const F& p, const F& q, const F&) {
        return F::implies(F::implies(F::negate(p), F::negate(q)), F::implies(q, p));
      },
      [](const F& p, const F&, const F&) { return F::disj(p, F::negate(p)); },
      [](const F& p, const F& q, const F&) { return F::implies(F::conj(p, q), p); },
      [](const F& p, const F&, const F&) { return F::implies(F::negate(F::negate(p)), p); },
      [](const F& p, const F& q, const F&) {
        return F::implies(F::conj(p, q), F::conj(q, p));
      },
      [](const F& p, const F& q, const F& r) {
        return F::implies(F::conj(F::implies(p, q), F::implies(q, r)), F::implies(p, r));
      },
  };
  return list;
}

const Formula& require(const std::optional<Formula>& f, const char* name, int scheme) {
  if (!f) {
    throw PreconditionError("axiom scheme " + std::to_string(scheme) + " needs " + name);
  }
  return *f;
}

}  // namespace

std::size_t tautology_template_count() { return tautologies().size(); }

bool scheme_uses_psi(int scheme) { return scheme == 1 || scheme == 3 || scheme == 6 || scheme == 12; }
bool scheme_uses_chi(int scheme) { return scheme == 1 || scheme == 12; }

Formula instantiate_axiom(int scheme, const Substitution& subst, std::size_t tautology_variant) {
  if (scheme < kFirstScheme || scheme > kLastScheme) {
    throw PreconditionError("unknown axiom scheme " + std::to_string(scheme));
  }
  const F& p = require(subst.phi, "phi", scheme);
  switch (scheme) {
    case 1: {
      const F& q = require(subst.psi, "psi", scheme);
      const F& r = require(subst.chi, "chi", scheme);
      return tautologies()[tautology_variant % tautologies().size()](p, q, r);
    }
    case 2:
      if (p.op() != Op::kAtom) {
        throw PreconditionError("axiom scheme 2 only admits atomic substitutions");
      }
      return F::conj(F::implies(p, F::box(p)), F::implies(F::negate(p), F::box(F::negate(p))));
    case 3: {
      const F& q = require(subst.psi, "psi", scheme);
      return F::implies(F::box(F::implies(p, q)), F::implies(F::box(p), F::box(q)));
    }
    case 4:
      return F::implies(F::box(p), p);
    case 5:
      return F::implies(F::box(p), F::box(F::box(p)));
    case 6: {
      const F& q = require(subst.psi, "psi", scheme);
      return F::implies(F::knows(F::implies(p, q)), F::implies(F::knows(p), F::knows(q)));
    }
    case 7:
      return F::implies(F::knows(p), p);
    case 8:
      return F::implies(F::knows(p), F::knows(F::knows(p)));
    case 9:
      return F::implies(p, F::knows(F::possible(p)));
    case 10:
      return F::implies(F::knows(F::box(p)), F::box(F::knows(p)));
    case 11:
      return F::implies(F::diamond(F::box(p)), F::box(F::diamond(p)));
    case 12: {
      const F& q = require(subst.psi, "psi", scheme);
      const F& r = require(subst.chi, "chi", scheme);
      const F kp = F::knows(p);
      const F premise = F::conj(F::diamond(F::conj(kp, q)),
                                F::possible(F::diamond(F::conj(kp, r))));
      const F conclusion =
          F::diamond(F::conj(F::knows(F::diamond(p)),
                             F::conj(F::diamond(q), F::possible(F::diamond(r)))));
      return F::implies(premise, conclusion);
    }
    default:
      break;
  }
  throw PreconditionError("unknown axiom scheme " + std::to_string(scheme));
}

// }}}

}  // namespace topologic
