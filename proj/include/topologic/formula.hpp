#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace topologic {

/// Core constructors of the bimodal language. Disjunction, implication and
/// the duals L and <> exist only in the surface syntax.
enum class Op : std::uint8_t { kAtom, kTop, kBot, kNot, kAnd, kKnows, kBox };

/// Immutable formula AST with structural equality and ordering. Copies
/// share nodes.
class Formula {
 public:
  static Formula atom(std::string name);
  static Formula top();
  static Formula bot();
  static Formula negate(Formula f);
  static Formula conj(Formula lhs, Formula rhs);
  static Formula knows(Formula f);
  static Formula box(Formula f);

  // Surface sugar, desugared on construction.
  static Formula disj(Formula lhs, Formula rhs);
  static Formula implies(Formula lhs, Formula rhs);
  static Formula possible(Formula f);  // L f  = ~K~f
  static Formula diamond(Formula f);   // <> f = ~[]~f

  Op op() const;
  const std::string& name() const;  // atoms only
  Formula child() const;            // unary nodes
  Formula left() const;             // conjunction
  Formula right() const;            // conjunction

  std::size_t depth() const;
  std::size_t hash() const;

  friend bool operator==(const Formula& a, const Formula& b);
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b);

  struct Node;  // opaque outside formula.cpp

 private:
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula make(Op op, std::string name, std::shared_ptr<const Node> lhs,
                      std::shared_ptr<const Node> rhs);

  std::shared_ptr<const Node> node_;
};

Formula parse(std::string_view text);
std::string print(const Formula& f);
std::ostream& operator<<(std::ostream& os, const Formula& f);

/// Post-order, duplicate-free; the formula itself comes last.
std::vector<Formula> subformulas(const Formula& f);

std::set<std::string> atoms(const Formula& f);

/// Subformulas as a DAG: `nodes` in post-order and, per node, the indices of
/// its children (-1 where absent). Children always precede parents.
struct SubformulaDag {
  std::vector<Formula> nodes;
  std::vector<std::array<std::ptrdiff_t, 2>> children;
  std::map<Formula, std::size_t> index;

  std::size_t size() const { return nodes.size(); }
  std::size_t root() const { return nodes.size() - 1; }
  std::size_t index_of(const Formula& f) const;  // throws if absent
};

SubformulaDag index_subformulas(const Formula& f);

bool is_reserved_word(std::string_view word);

}  // namespace topologic
