#include "topologic/formula.hpp"

#include <cctype>
#include <functional>
#include <ostream>
#include <utility>

#include "topologic/errors.hpp"

namespace topologic {

struct Formula::Node {
  Op op;
  std::string name;
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
  std::size_t hash;
  std::size_t depth;
};

namespace {

using NodePtr = std::shared_ptr<const Formula::Node>;

}  // namespace

Formula Formula::make(Op op, std::string name, std::shared_ptr<const Node> lhs,
                      std::shared_ptr<const Node> rhs) {
  std::size_t h = std::hash<std::uint8_t>{}(static_cast<std::uint8_t>(op)) * 0x9E3779B97F4A7C15ULL;
  h ^= std::hash<std::string>{}(name) + 0x9E3779B9 + (h << 6) + (h >> 2);
  std::size_t depth = 0;
  if (lhs) {
    h ^= lhs->hash + 0x9E3779B9 + (h << 6) + (h >> 2);
    depth = lhs->depth + 1;
  }
  if (rhs) {
    h = h * 31 + rhs->hash;
    depth = std::max(depth, rhs->depth + 1);
  }
  return Formula(std::make_shared<const Node>(
      Node{op, std::move(name), std::move(lhs), std::move(rhs), h, depth}));
}

Formula Formula::atom(std::string name) {
  if (is_reserved_word(name)) throw InputError("reserved word used as atom: " + name);
  return make(Op::kAtom, std::move(name), nullptr, nullptr);
}
Formula Formula::top() { return make(Op::kTop, "", nullptr, nullptr); }
Formula Formula::bot() { return make(Op::kBot, "", nullptr, nullptr); }
Formula Formula::negate(Formula f) { return make(Op::kNot, "", f.node_, nullptr); }
Formula Formula::conj(Formula lhs, Formula rhs) {
  return make(Op::kAnd, "", lhs.node_, rhs.node_);
}
Formula Formula::knows(Formula f) { return make(Op::kKnows, "", f.node_, nullptr); }
Formula Formula::box(Formula f) { return make(Op::kBox, "", f.node_, nullptr); }

Formula Formula::disj(Formula lhs, Formula rhs) {
  return negate(conj(negate(std::move(lhs)), negate(std::move(rhs))));
}
Formula Formula::implies(Formula lhs, Formula rhs) {
  return negate(conj(std::move(lhs), negate(std::move(rhs))));
}
Formula Formula::possible(Formula f) { return negate(knows(negate(std::move(f)))); }
Formula Formula::diamond(Formula f) { return negate(box(negate(std::move(f)))); }

Op Formula::op() const { return node_->op; }
const std::string& Formula::name() const { return node_->name; }
Formula Formula::child() const { return Formula(node_->lhs); }
Formula Formula::left() const { return Formula(node_->lhs); }
Formula Formula::right() const { return Formula(node_->rhs); }
std::size_t Formula::depth() const { return node_->depth; }
std::size_t Formula::hash() const { return node_->hash; }

namespace {

std::strong_ordering compare_nodes(const NodePtr& a, const NodePtr& b) {
  if (a == b) return std::strong_ordering::equal;
  if (!a) return std::strong_ordering::less;
  if (!b) return std::strong_ordering::greater;
  if (auto c = a->op <=> b->op; c != 0) return c;
  if (auto c = a->name <=> b->name; c != 0) return c;
  if (auto c = compare_nodes(a->lhs, b->lhs); c != 0) return c;
  return compare_nodes(a->rhs, b->rhs);
}

}  // namespace

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.node_->hash != b.node_->hash) return false;
  return compare_nodes(a.node_, b.node_) == 0;
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
  return compare_nodes(a.node_, b.node_);
}

bool is_reserved_word(std::string_view word) {
  return word == "K" || word == "L" || word == "top" || word == "bot";
}

// {{{ Parser

namespace {

enum class Tok { kIdent, kNot, kAnd, kOr, kImplies, kBox, kDiamond, kLParen, kRParen, kEnd };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i + 1;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Tok::kIdent, std::string(s.substr(i, j - i)), i});
      i = j;
      continue;
    }
    auto two = s.substr(i, 2);
    if (two == "->") {
      out.push_back({Tok::kImplies, "->", i});
      i += 2;
    } else if (two == "[]") {
      out.push_back({Tok::kBox, "[]", i});
      i += 2;
    } else if (two == "<>") {
      out.push_back({Tok::kDiamond, "<>", i});
      i += 2;
    } else if (c == '~') {
      out.push_back({Tok::kNot, "~", i++});
    } else if (c == '&') {
      out.push_back({Tok::kAnd, "&", i++});
    } else if (c == '|') {
      out.push_back({Tok::kOr, "|", i++});
    } else if (c == '(') {
      out.push_back({Tok::kLParen, "(", i++});
    } else if (c == ')') {
      out.push_back({Tok::kRParen, ")", i++});
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", i);
    }
  }
  out.push_back({Tok::kEnd, "", s.size()});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : tokens_(tokenize(text)) {}

  Formula parse_all() {
    Formula f = implies();
    if (peek().kind == Tok::kRParen) throw ParseError("unbalanced ')'", peek().pos);
    if (peek().kind != Tok::kEnd) {
      throw ParseError("unexpected token '" + peek().text + "'", peek().pos);
    }
    return f;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_++]; }

  Formula implies() {
    Formula lhs = disjunction();
    if (peek().kind == Tok::kImplies) {
      next();
      return Formula::implies(lhs, implies());
    }
    return lhs;
  }

  Formula disjunction() {
    Formula lhs = conjunction();
    if (peek().kind == Tok::kOr) {
      next();
      return Formula::disj(lhs, disjunction());
    }
    return lhs;
  }

  Formula conjunction() {
    Formula lhs = unary();
    if (peek().kind == Tok::kAnd) {
      next();
      return Formula::conj(lhs, conjunction());
    }
    return lhs;
  }

  Formula operand_of(const Token& op) {
    switch (peek().kind) {
      case Tok::kEnd:
      case Tok::kRParen:
      case Tok::kAnd:
      case Tok::kOr:
      case Tok::kImplies:
        throw ParseError("missing operand for '" + op.text + "'", op.pos);
      default:
        return unary();
    }
  }

  Formula unary() {
    const Token& t = next();
    switch (t.kind) {
      case Tok::kNot:
        return Formula::negate(operand_of(t));
      case Tok::kBox:
        return Formula::box(operand_of(t));
      case Tok::kDiamond:
        return Formula::diamond(operand_of(t));
      case Tok::kLParen: {
        Formula inner = implies();
        if (peek().kind != Tok::kRParen) {
          throw ParseError("unbalanced '(' (expected ')')", t.pos);
        }
        next();
        return inner;
      }
      case Tok::kIdent:
        if (t.text == "K") return Formula::knows(operand_of(t));
        if (t.text == "L") return Formula::possible(operand_of(t));
        if (t.text == "top") return Formula::top();
        if (t.text == "bot") return Formula::bot();
        return Formula::atom(t.text);
      case Tok::kEnd:
        throw ParseError("unexpected end of input", t.pos);
      default:
        throw ParseError("unexpected token '" + t.text + "'", t.pos);
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse(std::string_view text) { return Parser(text).parse_all(); }

// }}}

// {{{ Printer

namespace {

// Binding strength of the printed form; higher binds tighter.
constexpr int kImpliesLevel = 1;
constexpr int kAndLevel = 3;
constexpr int kUnaryLevel = 4;

bool is_neg_of(const Formula& f, Op inner) {
  return f.op() == Op::kNot && f.child().op() == inner && f.child().child().op() == Op::kNot;
}

bool is_implication(const Formula& f) {
  return f.op() == Op::kNot && f.child().op() == Op::kAnd && f.child().right().op() == Op::kNot;
}

int level(const Formula& f) {
  if (is_neg_of(f, Op::kKnows) || is_neg_of(f, Op::kBox)) return kUnaryLevel;
  if (is_implication(f)) return kImpliesLevel;
  if (f.op() == Op::kAnd) return kAndLevel;
  return kUnaryLevel;
}

void emit(const Formula& f, int min_level, std::string& out);

void emit_body(const Formula& f, std::string& out) {
  if (is_neg_of(f, Op::kKnows)) {
    out += "L ";
    emit(f.child().child().child(), kUnaryLevel, out);
    return;
  }
  if (is_neg_of(f, Op::kBox)) {
    out += "<> ";
    emit(f.child().child().child(), kUnaryLevel, out);
    return;
  }
  if (is_implication(f)) {
    emit(f.child().left(), kImpliesLevel + 1, out);
    out += " -> ";
    emit(f.child().right().child(), kImpliesLevel, out);
    return;
  }
  switch (f.op()) {
    case Op::kAtom:
      out += f.name();
      break;
    case Op::kTop:
      out += "top";
      break;
    case Op::kBot:
      out += "bot";
      break;
    case Op::kNot:
      out += "~";
      emit(f.child(), kUnaryLevel, out);
      break;
    case Op::kAnd:
      emit(f.left(), kUnaryLevel, out);
      out += " & ";
      emit(f.right(), kAndLevel, out);
      break;
    case Op::kKnows:
      out += "K ";
      emit(f.child(), kUnaryLevel, out);
      break;
    case Op::kBox:
      out += "[] ";
      emit(f.child(), kUnaryLevel, out);
      break;
  }
}

void emit(const Formula& f, int min_level, std::string& out) {
  if (level(f) < min_level) {
    out += '(';
    emit_body(f, out);
    out += ')';
  } else {
    emit_body(f, out);
  }
}

}  // namespace

std::string print(const Formula& f) {
  std::string out;
  emit(f, 0, out);
  return out;
}

std::ostream& operator<<(std::ostream& os, const Formula& f) { return os << print(f); }

// }}}

SubformulaDag index_subformulas(const Formula& f) {
  SubformulaDag dag;
  std::function<std::size_t(const Formula&)> visit = [&](const Formula& g) -> std::size_t {
    if (auto it = dag.index.find(g); it != dag.index.end()) return it->second;
    std::array<std::ptrdiff_t, 2> kids{-1, -1};
    switch (g.op()) {
      case Op::kNot:
      case Op::kKnows:
      case Op::kBox:
        kids[0] = static_cast<std::ptrdiff_t>(visit(g.child()));
        break;
      case Op::kAnd:
        kids[0] = static_cast<std::ptrdiff_t>(visit(g.left()));
        kids[1] = static_cast<std::ptrdiff_t>(visit(g.right()));
        break;
      default:
        break;
    }
    const std::size_t id = dag.nodes.size();
    dag.nodes.push_back(g);
    dag.children.push_back(kids);
    dag.index.emplace(g, id);
    return id;
  };
  visit(f);
  return dag;
}

std::size_t SubformulaDag::index_of(const Formula& f) const {
  auto it = index.find(f);
  if (it == index.end()) throw PreconditionError("not a subformula: " + print(f));
  return it->second;
}

std::vector<Formula> subformulas(const Formula& f) { return index_subformulas(f).nodes; }

std::set<std::string> atoms(const Formula& f) {
  std::set<std::string> out;
  for (const Formula& g : subformulas(f)) {
    if (g.op() == Op::kAtom) out.insert(g.name());
  }
  return out;
}

}  // namespace topologic
