#include "epispace/logic.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace epispace {

namespace {

bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

}  // namespace

Signature::Signature(std::vector<std::string> atoms) : atoms_(std::move(atoms)) {
  if (atoms_.empty() || static_cast<int>(atoms_.size()) > kMaxAtoms) {
    throw Error("signature must have 1.." + std::to_string(kMaxAtoms) +
                " atoms, got " + std::to_string(atoms_.size()));
  }
  for (const auto& a : atoms_) {
    if (a.empty() || !is_ident_start(a[0]) ||
        !std::all_of(a.begin(), a.end(), is_ident_char)) {
      throw Error("atom name '" + a + "' is not an identifier");
    }
    if (a == "top" || a == "bot") {
      throw Error("atom name '" + a + "' is reserved");
    }
  }
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    for (std::size_t j = i + 1; j < atoms_.size(); ++j) {
      if (atoms_[i] == atoms_[j]) {
        throw Error("duplicate atom name '" + atoms_[i] + "'");
      }
    }
  }
}

std::optional<int> Signature::index_of(std::string_view atom) const {
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (atoms_[i] == atom) return static_cast<int>(i);
  }
  return std::nullopt;
}

WorldSet all_worlds(const Signature& sig) {
  return WorldSet{(sig.world_count() == 32)
                      ? 0xffffffffu
                      : ((1u << sig.world_count()) - 1u)};
}

// ---------------------------------------------------------------------------
// Formula construction and structural equality

Formula Formula::atom(int index) {
  return Formula(std::make_shared<Node>(Node{Kind::Atom, index, nullptr, nullptr}));
}
Formula Formula::top() {
  return Formula(std::make_shared<Node>(Node{Kind::Top, -1, nullptr, nullptr}));
}
Formula Formula::bot() {
  return Formula(std::make_shared<Node>(Node{Kind::Bot, -1, nullptr, nullptr}));
}
Formula Formula::negation(Formula f) {
  return Formula(std::make_shared<Node>(Node{Kind::Not, -1, f.node_, nullptr}));
}
Formula Formula::conj(Formula a, Formula b) {
  return Formula(std::make_shared<Node>(Node{Kind::And, -1, a.node_, b.node_}));
}
Formula Formula::disj(Formula a, Formula b) {
  return Formula(std::make_shared<Node>(Node{Kind::Or, -1, a.node_, b.node_}));
}
Formula Formula::implies(Formula a, Formula b) {
  return Formula(
      std::make_shared<Node>(Node{Kind::Implies, -1, a.node_, b.node_}));
}
Formula Formula::iff(Formula a, Formula b) {
  return Formula(std::make_shared<Node>(Node{Kind::Iff, -1, a.node_, b.node_}));
}

bool Formula::operator==(const Formula& other) const {
  struct Cmp {
    static bool eq(const Node* a, const Node* b) {
      if (a == b) return true;
      if (!a || !b) return false;
      if (a->kind != b->kind || a->atom != b->atom) return false;
      return eq(a->lhs.get(), b->lhs.get()) && eq(a->rhs.get(), b->rhs.get());
    }
  };
  return Cmp::eq(node_.get(), other.node_.get());
}

// ---------------------------------------------------------------------------
// Parser

namespace {

struct Token {
  enum Type { Ident, Top, Bot, Not, And, Or, Implies, Iff, LParen, RParen, End };
  Type type;
  std::string text;
  std::size_t offset;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) { advance(); }

  const Token& peek() const { return current_; }
  Token take() {
    Token t = current_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    std::size_t at = pos_;
    if (pos_ >= text_.size()) {
      current_ = {Token::End, "", at};
      return;
    }
    char c = text_[pos_];
    if (c == '(') { ++pos_; current_ = {Token::LParen, "(", at}; return; }
    if (c == ')') { ++pos_; current_ = {Token::RParen, ")", at}; return; }
    if (c == '!' || c == '~') { ++pos_; current_ = {Token::Not, {c}, at}; return; }
    if (c == '&') { ++pos_; current_ = {Token::And, "&", at}; return; }
    if (c == '|') { ++pos_; current_ = {Token::Or, "|", at}; return; }
    if (c == '1') { ++pos_; current_ = {Token::Top, "1", at}; return; }
    if (c == '0') { ++pos_; current_ = {Token::Bot, "0", at}; return; }
    if (text_.compare(pos_, 3, "<->") == 0) {
      pos_ += 3;
      current_ = {Token::Iff, "<->", at};
      return;
    }
    if (text_.compare(pos_, 2, "->") == 0) {
      pos_ += 2;
      current_ = {Token::Implies, "->", at};
      return;
    }
    if (is_ident_start(c)) {
      std::size_t end = pos_;
      while (end < text_.size() && is_ident_char(text_[end])) ++end;
      std::string word(text_.substr(pos_, end - pos_));
      pos_ = end;
      if (word == "top") { current_ = {Token::Top, word, at}; return; }
      if (word == "bot") { current_ = {Token::Bot, word, at}; return; }
      current_ = {Token::Ident, word, at};
      return;
    }
    throw ParseError("syntax error: unexpected character '" +
                         std::string(1, c) + "'",
                     at);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  Token current_{Token::End, "", 0};
};

class Parser {
 public:
  Parser(std::string_view text, const Signature& sig)
      : lexer_(text), sig_(sig) {}

  Formula parse() {
    Formula f = parse_iff();
    const Token& t = lexer_.peek();
    if (t.type != Token::End) {
      throw ParseError("syntax error: unexpected '" + t.text + "'", t.offset);
    }
    return f;
  }

 private:
  Formula parse_iff() {
    Formula lhs = parse_implies();
    if (lexer_.peek().type == Token::Iff) {
      lexer_.take();
      return Formula::iff(lhs, parse_iff());  // right-associative
    }
    return lhs;
  }

  Formula parse_implies() {
    Formula lhs = parse_or();
    if (lexer_.peek().type == Token::Implies) {
      lexer_.take();
      return Formula::implies(lhs, parse_implies());  // right-associative
    }
    return lhs;
  }

  Formula parse_or() {
    Formula f = parse_and();
    while (lexer_.peek().type == Token::Or) {
      lexer_.take();
      f = Formula::disj(f, parse_and());
    }
    return f;
  }

  Formula parse_and() {
    Formula f = parse_unary();
    while (lexer_.peek().type == Token::And) {
      lexer_.take();
      f = Formula::conj(f, parse_unary());
    }
    return f;
  }

  Formula parse_unary() {
    if (lexer_.peek().type == Token::Not) {
      lexer_.take();
      return Formula::negation(parse_unary());
    }
    return parse_primary();
  }

  Formula parse_primary() {
    Token t = lexer_.take();
    switch (t.type) {
      case Token::Top:
        return Formula::top();
      case Token::Bot:
        return Formula::bot();
      case Token::Ident: {
        auto idx = sig_.index_of(t.text);
        if (!idx) throw UnknownAtomError(t.text, t.offset);
        return Formula::atom(*idx);
      }
      case Token::LParen: {
        Formula f = parse_iff();
        Token close = lexer_.take();
        if (close.type != Token::RParen) {
          throw ParseError("syntax error: expected ')'", close.offset);
        }
        return f;
      }
      case Token::End:
        throw ParseError("syntax error: unexpected end of input", t.offset);
      default:
        throw ParseError("syntax error: unexpected '" + t.text + "'", t.offset);
    }
  }

  Lexer lexer_;
  const Signature& sig_;
};

}  // namespace

Formula parse_formula(std::string_view text, const Signature& sig) {
  return Parser(text, sig).parse();
}

// ---------------------------------------------------------------------------
// Printer

namespace {

// Precedence: higher binds tighter.
int prec(Formula::Kind k) {
  switch (k) {
    case Formula::Kind::Iff: return 1;
    case Formula::Kind::Implies: return 2;
    case Formula::Kind::Or: return 3;
    case Formula::Kind::And: return 4;
    case Formula::Kind::Not: return 5;
    default: return 6;
  }
}

void print_rec(const Formula& f, const Signature& sig, int parent_prec,
               std::string& out) {
  int p = prec(f.kind());
  bool parens = p < parent_prec;
  if (parens) out += '(';
  switch (f.kind()) {
    case Formula::Kind::Atom:
      out += sig.atoms()[f.atom_index()];
      break;
    case Formula::Kind::Top:
      out += "top";
      break;
    case Formula::Kind::Bot:
      out += "bot";
      break;
    case Formula::Kind::Not:
      out += '!';
      print_rec(f.lhs(), sig, p, out);
      break;
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      // left-associative: the right child needs parens at equal precedence
      print_rec(f.lhs(), sig, p, out);
      out += f.kind() == Formula::Kind::And ? " & " : " | ";
      print_rec(f.rhs(), sig, p + 1, out);
      break;
    }
    case Formula::Kind::Implies:
    case Formula::Kind::Iff: {
      // right-associative: the left child needs parens at equal precedence
      print_rec(f.lhs(), sig, p + 1, out);
      out += f.kind() == Formula::Kind::Implies ? " -> " : " <-> ";
      print_rec(f.rhs(), sig, p, out);
      break;
    }
  }
  if (parens) out += ')';
}

}  // namespace

std::string print_formula(const Formula& f, const Signature& sig) {
  std::string out;
  print_rec(f, sig, 0, out);
  return out;
}

// ---------------------------------------------------------------------------
// Semantics

bool eval(const Formula& f, Interpretation w) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      return w.value(f.atom_index());
    case Formula::Kind::Top:
      return true;
    case Formula::Kind::Bot:
      return false;
    case Formula::Kind::Not:
      return !eval(f.lhs(), w);
    case Formula::Kind::And:
      return eval(f.lhs(), w) && eval(f.rhs(), w);
    case Formula::Kind::Or:
      return eval(f.lhs(), w) || eval(f.rhs(), w);
    case Formula::Kind::Implies:
      return !eval(f.lhs(), w) || eval(f.rhs(), w);
    case Formula::Kind::Iff:
      return eval(f.lhs(), w) == eval(f.rhs(), w);
  }
  return false;
}

WorldSet models(const Formula& f, const Signature& sig) {
  WorldSet result;
  for (int w = 0; w < sig.world_count(); ++w) {
    if (eval(f, Interpretation{static_cast<unsigned>(w)})) {
      result = result | WorldSet::of(Interpretation{static_cast<unsigned>(w)});
    }
  }
  return result;
}

Formula minterm(Interpretation w, const Signature& sig) {
  Formula f = w.value(0) ? Formula::atom(0) : Formula::negation(Formula::atom(0));
  for (int i = 1; i < sig.arity(); ++i) {
    Formula lit =
        w.value(i) ? Formula::atom(i) : Formula::negation(Formula::atom(i));
    f = Formula::conj(f, lit);
  }
  return f;
}

Formula pair_formula(Interpretation w1, Interpretation w2,
                     const Signature& sig) {
  if (w1 == w2) return minterm(w1, sig);
  return Formula::disj(minterm(w1, sig), minterm(w2, sig));
}

// ---------------------------------------------------------------------------
// Minimal DNF (Quine-McCluskey over at most 4 variables)

namespace {

// An implicant fixes the atoms in `care` to the values in `val`.
struct Implicant {
  unsigned care;
  unsigned val;

  bool operator==(const Implicant&) const = default;
  auto operator<=>(const Implicant&) const = default;
};

WorldSet covered(const Implicant& imp, int world_count) {
  WorldSet s;
  for (int w = 0; w < world_count; ++w) {
    if ((static_cast<unsigned>(w) & imp.care) == (imp.val & imp.care)) {
      s = s | WorldSet::of(Interpretation{static_cast<unsigned>(w)});
    }
  }
  return s;
}

}  // namespace

Formula minimal_dnf(WorldSet s, const Signature& sig) {
  if (s.empty()) return Formula::bot();
  const int wc = sig.world_count();
  if (s == all_worlds(sig)) return Formula::top();

  const unsigned atom_mask = (1u << sig.arity()) - 1u;
  std::vector<Implicant> current;
  for (int w = 0; w < wc; ++w) {
    if (s.contains(Interpretation{static_cast<unsigned>(w)})) {
      current.push_back({atom_mask, static_cast<unsigned>(w)});
    }
  }

  // Merge implicants differing in exactly one cared atom until fixpoint.
  std::vector<Implicant> primes;
  while (!current.empty()) {
    std::vector<bool> merged(current.size(), false);
    std::vector<Implicant> next;
    for (std::size_t i = 0; i < current.size(); ++i) {
      for (std::size_t j = i + 1; j < current.size(); ++j) {
        if (current[i].care != current[j].care) continue;
        unsigned diff = (current[i].val ^ current[j].val) & current[i].care;
        if (std::popcount(diff) != 1) continue;
        Implicant m{current[i].care & ~diff, current[i].val & ~diff};
        // Keep only implicants entirely inside s.
        if (!covered(m, wc).subset_of(s)) continue;
        merged[i] = merged[j] = true;
        if (std::find(next.begin(), next.end(), m) == next.end()) {
          next.push_back(m);
        }
      }
    }
    for (std::size_t i = 0; i < current.size(); ++i) {
      if (!merged[i] &&
          std::find(primes.begin(), primes.end(), current[i]) == primes.end()) {
        primes.push_back(current[i]);
      }
    }
    current = std::move(next);
  }
  std::sort(primes.begin(), primes.end());

  // Greedy cover: most new worlds first, ties by fewer literals then order.
  std::vector<Implicant> chosen;
  WorldSet uncovered = s;
  while (!uncovered.empty()) {
    const Implicant* best = nullptr;
    int best_gain = -1;
    int best_lits = 0;
    for (const auto& p : primes) {
      int gain = (covered(p, wc) & uncovered).size();
      int lits = std::popcount(p.care);
      if (gain > best_gain || (gain == best_gain && lits < best_lits)) {
        best = &p;
        best_gain = gain;
        best_lits = lits;
      }
    }
    chosen.push_back(*best);
    uncovered = uncovered.minus(covered(*best, wc));
  }

  std::optional<Formula> result;
  for (const auto& imp : chosen) {
    std::optional<Formula> term;
    for (int i = 0; i < sig.arity(); ++i) {
      if (!((imp.care >> i) & 1u)) continue;
      Formula lit = ((imp.val >> i) & 1u)
                        ? Formula::atom(i)
                        : Formula::negation(Formula::atom(i));
      term = term ? Formula::conj(*term, lit) : lit;
    }
    if (!term) term = Formula::top();
    result = result ? Formula::disj(*result, *term) : *term;
  }
  return *result;
}

// ---------------------------------------------------------------------------
// Interpretation strings

std::string print_world(const Signature& sig, Interpretation w) {
  std::string out;
  for (int i = 0; i < sig.arity(); ++i) {
    if (!w.value(i)) out += '-';
    out += sig.atoms()[i];
  }
  return out;
}

Interpretation parse_world(const Signature& sig, std::string_view text) {
  unsigned bits = 0;
  std::size_t pos = 0;
  for (int i = 0; i < sig.arity(); ++i) {
    bool negated = false;
    if (pos < text.size() && text[pos] == '-') {
      negated = true;
      ++pos;
    }
    const std::string& atom = sig.atoms()[i];
    if (text.compare(pos, atom.size(), atom) != 0) {
      throw ParseError("expected atom '" + atom + "' in interpretation '" +
                           std::string(text) + "'",
                       pos);
    }
    pos += atom.size();
    if (!negated) bits |= 1u << i;
  }
  if (pos != text.size()) {
    throw ParseError("trailing characters in interpretation '" +
                         std::string(text) + "'",
                     pos);
  }
  return Interpretation{bits};
}

std::string print_world_set(const Signature& sig, WorldSet s) {
  std::string out = "{";
  bool first = true;
  for (int w = 0; w < sig.world_count(); ++w) {
    if (!s.contains(Interpretation{static_cast<unsigned>(w)})) continue;
    if (!first) out += ' ';
    out += print_world(sig, Interpretation{static_cast<unsigned>(w)});
    first = false;
  }
  out += '}';
  return out;
}

}  // namespace epispace
