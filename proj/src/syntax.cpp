#include "pdm/syntax.hpp"

#include <cctype>
#include <functional>

#include "pdm/error.hpp"

namespace pdm {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Formula::Formula() : Formula(falsum()) {}

Formula Formula::atom(std::string name) {
  if (!is_identifier(name)) throw InvalidInput("invalid atom name '" + name + "'");
  auto node = std::make_shared<Node>();
  node->kind = Kind::Atom;
  node->hash = mix(std::hash<std::string>{}(name), 1);
  node->name = std::move(name);
  node->size = 1;
  node->depth = 0;
  return Formula(std::move(node));
}

Formula Formula::falsum() {
  static const std::shared_ptr<const Node> bottom = [] {
    auto node = std::make_shared<Node>();
    node->kind = Kind::Falsum;
    node->size = 1;
    node->depth = 0;
    node->hash = 0x5bd1e995;
    return node;
  }();
  return Formula(bottom);
}

Formula Formula::binary(Kind kind, Formula lhs, Formula rhs) {
  auto node = std::make_shared<Node>();
  node->kind = kind;
  node->size = 1 + lhs.size() + rhs.size();
  node->depth = 1 + std::max(lhs.depth(), rhs.depth());
  node->hash = mix(mix(static_cast<std::size_t>(kind) * 0x100000001b3ULL, lhs.hash()), rhs.hash());
  node->children = std::make_unique<std::pair<Formula, Formula>>(std::move(lhs), std::move(rhs));
  return Formula(std::move(node));
}

Formula Formula::implies(Formula lhs, Formula rhs) {
  return binary(Kind::Implies, std::move(lhs), std::move(rhs));
}
Formula Formula::conj(Formula lhs, Formula rhs) {
  return binary(Kind::And, std::move(lhs), std::move(rhs));
}
Formula Formula::disj(Formula lhs, Formula rhs) {
  return binary(Kind::Or, std::move(lhs), std::move(rhs));
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.size() != b.size() || a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Formula::Kind::Atom:
      return a.name() == b.name();
    case Formula::Kind::Falsum:
      return true;
    default:
      return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.size() <=> b.size(); c != 0) return c;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  switch (a.kind()) {
    case Formula::Kind::Atom:
      return a.name().compare(b.name()) <=> 0;
    case Formula::Kind::Falsum:
      return std::strong_ordering::equal;
    default:
      if (auto c = a.lhs() <=> b.lhs(); c != 0) return c;
      return a.rhs() <=> b.rhs();
  }
}

bool is_identifier(std::string_view name) {
  if (name.empty() || name == "false") return false;
  auto head = static_cast<unsigned char>(name.front());
  if (!std::isalpha(head) && head != '_') return false;
  for (char ch : name.substr(1)) {
    auto c = static_cast<unsigned char>(ch);
    if (!std::isalnum(c) && c != '_' && c != '\'') return false;
  }
  return true;
}

// Recursive descent over the precedence levels
//   implies := disj ('->' implies)?
//   disj    := conj ('\/' conj)*
//   conj    := unary ('/\' unary)*
//   unary   := '~' unary | 'false' | ident | '(' implies ')'
namespace {

class FormulaParser {
 public:
  FormulaParser(std::string_view text, std::size_t base) : text_(text), base_(base) {}

  Formula parse_all() {
    Formula f = parse_implies();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input", "end of formula");
    return f;
  }

 private:
  Formula parse_implies() {
    Formula lhs = parse_disj();
    if (accept("->")) return Formula::implies(std::move(lhs), parse_implies());
    return lhs;
  }

  Formula parse_disj() {
    Formula f = parse_conj();
    while (accept("\\/")) f = Formula::disj(std::move(f), parse_conj());
    return f;
  }

  Formula parse_conj() {
    Formula f = parse_unary();
    while (accept("/\\")) f = Formula::conj(std::move(f), parse_unary());
    return f;
  }

  Formula parse_unary() {
    skip_space();
    if (accept("~")) return Formula::neg(parse_unary());
    if (accept("(")) {
      Formula f = parse_implies();
      if (!accept(")")) fail("unbalanced parenthesis", "')'");
      return f;
    }
    std::size_t start = pos_;
    if (pos_ < text_.size()) {
      auto c = static_cast<unsigned char>(text_[pos_]);
      if (std::isalpha(c) || c == '_') {
        ++pos_;
        while (pos_ < text_.size()) {
          auto d = static_cast<unsigned char>(text_[pos_]);
          if (!std::isalnum(d) && d != '_' && d != '\'') break;
          ++pos_;
        }
      }
    }
    if (start == pos_) fail(pos_ == text_.size() ? "unexpected end of input" : "unexpected character",
                            "atom, 'false', '~' or '('");
    std::string_view word = text_.substr(start, pos_ - start);
    if (word == "false") return Formula::falsum();
    return Formula::atom(std::string(word));
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) != token) return false;
    pos_ += token.size();
    return true;
  }

  [[noreturn]] void fail(const std::string& message, const std::string& expected) const {
    throw ParseError(message, base_ + pos_, expected);
  }

  std::string_view text_;
  std::size_t base_;
  std::size_t pos_ = 0;
};

Formula parse_formula_at(std::string_view text, std::size_t base) {
  return FormulaParser(text, base).parse_all();
}

// Binding strength used by the printer.
int level(const Formula& f) {
  if (f.is_negation()) return 4;
  switch (f.kind()) {
    case Formula::Kind::Implies:
      return 1;
    case Formula::Kind::Or:
      return 2;
    case Formula::Kind::And:
      return 3;
    default:
      return 4;
  }
}

void print(const Formula& f, int min_level, std::string& out) {
  bool parens = level(f) < min_level;
  if (parens) out += '(';
  if (f.is_negation()) {
    out += '~';
    print(f.lhs(), 4, out);
  } else {
    switch (f.kind()) {
      case Formula::Kind::Atom:
        out += f.name();
        break;
      case Formula::Kind::Falsum:
        out += "false";
        break;
      case Formula::Kind::Implies:
        print(f.lhs(), 2, out);
        out += " -> ";
        print(f.rhs(), 1, out);
        break;
      case Formula::Kind::Or:
        print(f.lhs(), 2, out);
        out += " \\/ ";
        print(f.rhs(), 3, out);
        break;
      case Formula::Kind::And:
        print(f.lhs(), 3, out);
        out += " /\\ ";
        print(f.rhs(), 4, out);
        break;
    }
  }
  if (parens) out += ')';
}

void collect_atoms(const Formula& f, std::set<std::string>& out) {
  if (f.is_atom()) {
    out.insert(f.name());
  } else if (f.is_binary()) {
    collect_atoms(f.lhs(), out);
    collect_atoms(f.rhs(), out);
  }
}

// Calls `fn(line, offset)` for each non-blank line with comments stripped.
template <typename Fn>
void for_each_content_line(std::string_view text, Fn&& fn) {
  std::size_t offset = 0;
  while (offset <= text.size()) {
    std::size_t end = text.find('\n', offset);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(offset, end - offset);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    bool blank = true;
    for (char c : line) {
      if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
    }
    if (!blank) fn(line, offset);
    offset = end + 1;
  }
}

}  // namespace

Formula parse_formula(std::string_view text) { return parse_formula_at(text, 0); }

std::string format_formula(const Formula& f) {
  std::string out;
  print(f, 1, out);
  return out;
}

bool eval(const Formula& f, const Valuation& v) {
  switch (f.kind()) {
    case Formula::Kind::Atom: {
      auto it = v.find(f.name());
      if (it == v.end()) throw MissingAtom(f.name());
      return it->second;
    }
    case Formula::Kind::Falsum:
      return false;
    case Formula::Kind::Implies:
      return !eval(f.lhs(), v) || eval(f.rhs(), v);
    case Formula::Kind::And:
      return eval(f.lhs(), v) && eval(f.rhs(), v);
    case Formula::Kind::Or:
      return eval(f.lhs(), v) || eval(f.rhs(), v);
  }
  return false;
}

std::set<std::string> atoms(const Formula& f) {
  std::set<std::string> out;
  collect_atoms(f, out);
  return out;
}

std::set<std::string> atoms(const Theory& t) {
  std::set<std::string> out;
  for (const auto& axiom : t.axioms) collect_atoms(axiom, out);
  return out;
}

Formula conjunction(const std::vector<Formula>& fs) {
  if (fs.empty()) return Formula::top();
  Formula out = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) out = Formula::conj(std::move(out), fs[i]);
  return out;
}

Formula disjunction(const std::vector<Formula>& fs) {
  if (fs.empty()) return Formula::falsum();
  Formula out = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) out = Formula::disj(std::move(out), fs[i]);
  return out;
}

Theory parse_theory(std::string_view text) {
  Theory t;
  for_each_content_line(text, [&](std::string_view line, std::size_t offset) {
    t.axioms.push_back(parse_formula_at(line, offset));
  });
  return t;
}

std::string format_theory(const Theory& t) {
  std::string out;
  for (const auto& axiom : t.axioms) {
    out += format_formula(axiom);
    out += '\n';
  }
  return out;
}

Sequent parse_sequent(std::string_view text) {
  std::size_t turnstile = text.find("|-");
  if (turnstile == std::string_view::npos) throw ParseError("missing turnstile", 0, "'|-'");
  if (text.find("|-", turnstile + 2) != std::string_view::npos)
    throw ParseError("more than one turnstile", text.find("|-", turnstile + 2));

  auto side = [&](std::size_t begin, std::size_t end) {
    std::vector<Formula> out;
    std::string_view part = text.substr(begin, end - begin);
    bool blank = true;
    for (char c : part) {
      if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
    }
    if (blank) return out;
    std::size_t start = 0;
    while (true) {
      std::size_t comma = part.find(',', start);
      std::size_t stop = comma == std::string_view::npos ? part.size() : comma;
      out.push_back(parse_formula_at(part.substr(start, stop - start), begin + start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    return out;
  };

  return Sequent{side(0, turnstile), side(turnstile + 2, text.size())};
}

std::string format_sequent(const Sequent& s) {
  auto join = [](const std::vector<Formula>& fs) {
    std::string out;
    for (std::size_t i = 0; i < fs.size(); ++i) {
      if (i > 0) out += ", ";
      out += format_formula(fs[i]);
    }
    return out;
  };
  std::string lhs = join(s.left);
  std::string rhs = join(s.right);
  std::string out = lhs;
  if (!lhs.empty()) out += ' ';
  out += "|-";
  if (!rhs.empty()) out += ' ' + rhs;
  return out;
}

}  // namespace pdm
