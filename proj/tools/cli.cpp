#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

#include "topologic/decide.hpp"
#include "topologic/errors.hpp"
#include "topologic/finitemodel.hpp"
#include "topologic/formula.hpp"
#include "topologic/model_io.hpp"
#include "topologic/semantics.hpp"
#include "topologic/splitting.hpp"

namespace topologic::cli {

namespace {

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string format_pair(const SubsetSpace& space, Pair p) {
  return "point " + space.point_names()[p.point] + ", open " + format_set(space, space.open(p.open));
}

// Formulas may only use atoms the model declares.
Formula parse_for_model(const std::string& text, const Model& model) {
  Formula f = parse(text);
  for (const std::string& a : atoms(f)) {
    if (!model.has_atom(a)) throw InputError("unknown atom " + a);
  }
  return f;
}

void require_topology(const Model& model) {
  if (!is_topology(model.space())) throw PreconditionError("not a topology");
}

struct CheckArgs {
  std::string model_path;
  std::string formula;
  std::string at;
};

int cmd_check(const CheckArgs& a, std::ostream& out) {
  const Model model = load_model(a.model_path);
  const Formula f = parse_for_model(a.formula, model);
  const SubsetSpace& space = model.space();
  if (!a.at.empty()) {
    const auto colon = a.at.find(':');
    if (colon == std::string::npos) throw InputError("--at expects POINT:OPEN, e.g. 0:0,1");
    const std::size_t x = space.index_of_point(a.at.substr(0, colon));
    const PointSet u = parse_point_list(space, a.at.substr(colon + 1));
    const auto index = space.index_of(u);
    if (!index) throw InputError("not an open of the model: " + format_set(space, u));
    if (!u.contains(x)) throw InputError("point is not in the open");
    const bool holds = satisfies(model, {x, *index}, f);
    out << (holds ? "true" : "false") << '\n';
    return holds ? kExitPositive : kExitNegative;
  }
  const Validity v = model_valid(model, f);
  if (v.valid) {
    out << "valid\n";
    return kExitPositive;
  }
  out << "counterexample: " << format_pair(space, *v.counterexample) << '\n';
  return kExitNegative;
}

struct SplitArgs {
  std::string model_path;
  std::string formula;
};

int cmd_split(const SplitArgs& a, std::ostream& out) {
  const Model model = load_model(a.model_path);
  const Formula f = parse_for_model(a.formula, model);
  require_topology(model);
  const SubsetSpace& space = model.space();
  const SplittingTable table = build_splitting(model, f);
  const ExtensionTable direct(model, f);
  const SubformulaDag& dag = table.dag();

  for (std::size_t s = 0; s < dag.size(); ++s) {
    const Splitting& entry = table.at(s);
    out << "[" << s + 1 << "] " << print(entry.formula) << '\n';
    out << "  F = " << format_family(space, entry.family) << '\n';
    const RemainderPartition part = partition(space, entry.family);
    for (std::size_t i = entry.family.size(); i-- > 0;) {
      const Family block = part.block(space, i);
      out << "  block " << format_set(space, entry.family[i]) << ": "
          << format_family(space, block) << '\n';
      out << "    extension: " << format_set(space, entry.extensions[i]) << '\n';
      out << "    stable: " << (is_stable(direct, s, space, block) ? "yes" : "NO") << '\n';
    }
  }
  const std::vector<std::string> failures = verify_splitting(model, f, table);
  if (!failures.empty()) {
    for (const std::string& fail : failures) out << "FAILED: " << fail << '\n';
    return kExitInternal;
  }
  out << "all splitting checks passed\n";
  return kExitPositive;
}

struct QuotientArgs {
  std::string model_path;
  std::string formula;
  std::string out_path;
};

int cmd_quotient(const QuotientArgs& a, std::ostream& out) {
  const Model model = load_model(a.model_path);
  const Formula f = parse_for_model(a.formula, model);
  require_topology(model);
  const FiniteModel finite = extract_finite_model(model, f);
  const SubsetSpace& original = model.space();
  const SubsetSpace& restricted = finite.restricted.space();
  const SubsetSpace& quotient = finite.model().space();

  out << "restricted family: " << format_family(original, restricted.opens()) << '\n';
  out << "class  members\n";
  const auto classes = finite.quotient.classes();
  for (std::size_t c = 0; c < classes.size(); ++c) {
    out << std::left << std::setw(7) << quotient.point_names()[c]
        << format_set(original, PointSet::of(classes[c])) << '\n';
  }
  out << "pair translation:\n";
  const ExtensionTable before(model, f);
  const ExtensionTable after(finite.model(), f);
  bool preserved = true;
  for (Pair p : pairs(original)) {
    const Pair q = finite.translate(model, p);
    const bool b = before.holds(p);
    const bool c = after.holds(q);
    preserved &= b == c;
    out << "  (" << original.point_names()[p.point] << ", "
        << format_set(original, original.open(p.open)) << ") -> (" << quotient.point_names()[q.point]
        << ", " << format_set(quotient, quotient.open(q.open)) << ")  " << (b ? "T" : "F")
        << (b == c ? "" : "  MISMATCH") << '\n';
  }
  if (a.out_path.empty()) {
    out << model_to_json(finite.model()).dump(2) << '\n';
  } else {
    save_model(finite.model(), a.out_path);
    out << "wrote " << a.out_path << '\n';
  }
  return preserved ? kExitPositive : kExitInternal;
}

struct BasisArgs {
  std::string model_path;
  std::string basis_path;
  std::vector<std::string> formulas;
  std::size_t trials = 100;
  std::size_t depth = 3;
  std::uint64_t seed = 0;
};

int cmd_basis(const BasisArgs& a, std::ostream& out) {
  const Model model = load_model(a.model_path);
  require_topology(model);
  const SubsetSpace& space = model.space();
  Family basis;
  if (a.basis_path.empty()) {
    basis = minimal_neighborhood_basis(space);
  } else {
    std::ifstream in(a.basis_path);
    if (!in) throw InputError("cannot read basis file " + a.basis_path);
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw InputError(std::string("malformed basis file: ") + e.what());
    }
    basis = canonical(family_from_json(space, doc));
  }
  std::vector<Formula> formulas;
  for (const std::string& text : a.formulas) formulas.push_back(parse_for_model(text, model));
  if (formulas.empty()) {
    std::vector<std::string> atom_list;
    for (const auto& [atom, value] : model.valuation()) atom_list.push_back(atom);
    std::mt19937_64 rng(a.seed);
    for (std::size_t t = 0; t < a.trials; ++t) formulas.push_back(random_formula(rng, atom_list, a.depth));
  }
  out << "basis: " << format_family(space, basis) << '\n';
  const BasisEquivalence result = basis_equivalent(model, basis, formulas);
  if (result.equivalent) {
    out << "equivalent (" << formulas.size() << " formulas, " << result.pairs_checked
        << " pairs)\n";
    return kExitPositive;
  }
  const BasisCounterexample& c = *result.counterexample;
  out << "counterexample: " << print(c.formula);
  if (c.open) out << " at point " << space.point_names()[c.point] << ", open " << format_set(space, *c.open);
  out << " (topology " << c.topology_value << ", basis " << c.basis_value << ")\n";
  return kExitNegative;
}

struct DecideArgs {
  std::string formula;
  std::string mode = "valid";
  std::size_t points = 3;
  std::string atoms;
  std::uint64_t seed = 0;
  std::string out_path;
};

int cmd_decide(const DecideArgs& a, std::ostream& out) {
  const Formula f = parse(a.formula);
  SearchBound bound;
  bound.max_points = a.points;
  bound.seed = a.seed;
  if (a.atoms.empty()) {
    const auto used = atoms(f);
    bound.atoms.assign(used.begin(), used.end());
  } else {
    bound.atoms = split_list(a.atoms);
  }
  Verdict v;
  if (a.mode == "sat") {
    v = decide_sat(f, bound);
  } else if (a.mode == "valid") {
    v = decide_valid(f, bound);
  } else {
    throw InputError("--mode must be sat or valid");
  }
  out << to_string(v.kind) << " (" << v.models_examined << " models, up to " << a.points
      << " points)\n";
  if (v.model) {
    out << (v.kind == Verdict::Kind::kSatisfiable ? "witness: " : "counterexample: ")
        << format_pair(v.model->space(), *v.pair) << '\n';
    if (a.out_path.empty()) {
      out << model_to_json(*v.model).dump(2) << '\n';
    } else {
      save_model(*v.model, a.out_path);
      out << "wrote " << a.out_path << '\n';
    }
  }
  return v.positive() ? kExitPositive : kExitNegative;
}

struct AxiomsArgs {
  std::string model_path;
  std::size_t enumerate = 0;
  std::size_t trials = 20;
  std::uint64_t seed = 0;
  std::size_t depth = 3;
  std::string schemes;
  std::string atoms = "A";
  int countermodel = 0;
  std::size_t points = 3;
  std::size_t max_opens = 4;
};

int cmd_axioms(const AxiomsArgs& a, std::ostream& out) {
  std::vector<int> schemes;
  if (a.schemes.empty()) {
    for (int s = kFirstScheme; s <= kLastScheme; ++s) schemes.push_back(s);
  } else {
    for (const std::string& s : split_list(a.schemes)) {
      try {
        schemes.push_back(std::stoi(s));
      } catch (const std::exception&) {
        throw InputError("bad scheme id: " + s);
      }
    }
  }

  if (a.countermodel != 0) {
    SearchBound bound;
    bound.max_points = a.points;
    bound.atoms = split_list(a.atoms);
    const auto found = find_subset_space_countermodel(a.countermodel, bound, a.max_opens);
    if (!found) {
      out << "scheme " << a.countermodel << ": no subset-space countermodel within "
          << bound.max_points << " points / " << a.max_opens << " opens\n";
      return kExitPositive;
    }
    out << "scheme " << a.countermodel << " fails: " << print(found->instance) << '\n';
    out << "at " << format_pair(found->model.space(), found->pair) << '\n';
    out << "topology: " << (is_topology(found->model.space()) ? "yes" : "no") << '\n';
    out << model_to_json(found->model).dump(2) << '\n';
    return kExitNegative;
  }

  SweepReport report;
  if (!a.model_path.empty()) {
    const Model model = load_model(a.model_path);
    std::vector<std::string> atom_list;
    for (const auto& [atom, value] : model.valuation()) atom_list.push_back(atom);
    if (atom_list.empty()) throw InputError("model declares no atoms");
    const std::vector<Model> models{model};
    report = axiom_sweep(models, schemes, a.trials, a.seed, a.depth, atom_list);
  } else {
    if (a.enumerate == 0) throw InputError("pass a model file or --enumerate N");
    SearchBound bound;
    bound.max_points = a.enumerate;
    bound.atoms = split_list(a.atoms);
    report = axiom_soundness_sweep(bound, schemes, a.trials, a.seed, a.depth);
  }
  out << "models: " << report.models << '\n';
  out << "scheme  instances  checks  violations\n";
  for (const auto& [scheme, stats] : report.schemes) {
    out << std::left << std::setw(8) << scheme << std::setw(11) << stats.instances
        << std::setw(8) << stats.model_checks << stats.violations << '\n';
  }
  const std::size_t shown = std::min<std::size_t>(report.violations.size(), 10);
  for (std::size_t i = 0; i < shown; ++i) {
    const SweepViolation& v = report.violations[i];
    out << "violation: scheme " << v.scheme << ", " << print(v.instance) << " at "
        << format_pair(v.model.space(), v.pair) << '\n';
  }
  return report.clean() ? kExitPositive : kExitNegative;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Knowledge and effort over finite subset spaces and topologies"};
  app.require_subcommand(1);

  CheckArgs check;
  auto* check_cmd = app.add_subcommand("check", "Check a formula on a model");
  check_cmd->add_option("model", check.model_path, "Model file")->required();
  check_cmd->add_option("formula", check.formula, "Formula")->required();
  check_cmd->add_option("--at", check.at, "Evaluate at one pair, POINT:OPEN (e.g. 0:0,1)");

  SplitArgs split;
  auto* split_cmd = app.add_subcommand("split", "Build and verify stable splittings");
  split_cmd->add_option("model", split.model_path, "Model file")->required();
  split_cmd->add_option("formula", split.formula, "Formula")->required();

  QuotientArgs quotient;
  auto* quotient_cmd = app.add_subcommand("quotient", "Extract a finite quotient model");
  quotient_cmd->add_option("model", quotient.model_path, "Model file")->required();
  quotient_cmd->add_option("formula", quotient.formula, "Formula")->required();
  quotient_cmd->add_option("--out", quotient.out_path, "Write the quotient model here");

  BasisArgs basis;
  auto* basis_cmd = app.add_subcommand("basis", "Compare a topology model with a basis model");
  basis_cmd->add_option("model", basis.model_path, "Model file")->required();
  basis_cmd->add_option("--basis", basis.basis_path,
                        "JSON list of opens (default: union-closed minimal neighborhoods)");
  basis_cmd->add_option("--formula", basis.formulas, "Formula to compare (repeatable)");
  basis_cmd->add_option("--trials", basis.trials, "Random formulas when none are given");
  basis_cmd->add_option("--depth", basis.depth, "Depth of random formulas");
  basis_cmd->add_option("--seed", basis.seed, "Random seed");

  DecideArgs decide;
  auto* decide_cmd = app.add_subcommand("decide", "Bounded satisfiability / validity");
  decide_cmd->add_option("formula", decide.formula, "Formula")->required();
  decide_cmd->add_option("--mode", decide.mode, "sat or valid")->check(CLI::IsMember({"sat", "valid"}));
  decide_cmd->add_option("--points", decide.points, "Largest space size searched");
  decide_cmd->add_option("--atoms", decide.atoms, "Comma-separated atom list (default: atoms of the formula)");
  decide_cmd->add_option("--seed", decide.seed, "Random seed");
  decide_cmd->add_option("--out", decide.out_path, "Write the witness or counter model here");

  AxiomsArgs axioms;
  auto* axioms_cmd = app.add_subcommand("axioms", "Soundness sweep of the axiom schemes");
  axioms_cmd->add_option("model", axioms.model_path, "Model file (instead of --enumerate)");
  axioms_cmd->add_option("--enumerate", axioms.enumerate, "Sweep all topologies up to N points");
  axioms_cmd->add_option("--trials", axioms.trials, "Random instances per scheme");
  axioms_cmd->add_option("--seed", axioms.seed, "Random seed");
  axioms_cmd->add_option("--depth", axioms.depth, "Depth of substituted formulas");
  axioms_cmd->add_option("--schemes", axioms.schemes, "Comma-separated scheme ids (default 1-12)");
  axioms_cmd->add_option("--atoms", axioms.atoms, "Atoms for --enumerate / --countermodel");
  axioms_cmd->add_option("--countermodel", axioms.countermodel,
                         "Search subset spaces for a countermodel to scheme 11 or 12");
  axioms_cmd->add_option("--points", axioms.points, "Point bound for --countermodel");
  axioms_cmd->add_option("--max-opens", axioms.max_opens, "Open bound for --countermodel");

  std::vector<const char*> argv;
  for (const std::string& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPositive : kExitInputError;
  }

  try {
    if (check_cmd->parsed()) return cmd_check(check, out);
    if (split_cmd->parsed()) return cmd_split(split, out);
    if (quotient_cmd->parsed()) return cmd_quotient(quotient, out);
    if (basis_cmd->parsed()) return cmd_basis(basis, out);
    if (decide_cmd->parsed()) return cmd_decide(decide, out);
    if (axioms_cmd->parsed()) return cmd_axioms(axioms, out);
  } catch (const InternalError& e) {
    err << "internal consistency failure: " << e.what() << '\n';
    return kExitInternal;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace topologic::cli
