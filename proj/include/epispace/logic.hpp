#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "epispace/errors.hpp"

namespace epispace {

// A propositional signature of 1..4 atoms. Four atoms give 16 interpretations,
// the largest universe the exhaustive machinery is meant for.
class Signature {
 public:
  static constexpr int kMaxAtoms = 4;

  explicit Signature(std::vector<std::string> atoms);

  int arity() const { return static_cast<int>(atoms_.size()); }
  int world_count() const { return 1 << arity(); }
  const std::vector<std::string>& atoms() const { return atoms_; }
  std::optional<int> index_of(std::string_view atom) const;

  bool operator==(const Signature&) const = default;

 private:
  std::vector<std::string> atoms_;
};

// One interpretation of a signature. Bit i of `index` is the truth value of
// atoms()[i]; the index doubles as the canonical integer encoding.
struct Interpretation {
  unsigned index = 0;

  bool value(int atom) const { return (index >> atom) & 1u; }
  auto operator<=>(const Interpretation&) const = default;
};

// A set of interpretations of a fixed signature, as a bit mask over world
// indices. Only the low 2^arity bits are meaningful.
struct WorldSet {
  std::uint32_t bits = 0;

  constexpr bool empty() const { return bits == 0; }
  constexpr int size() const { return std::popcount(bits); }
  constexpr bool contains(Interpretation w) const {
    return (bits >> w.index) & 1u;
  }
  constexpr bool subset_of(WorldSet other) const {
    return (bits & ~other.bits) == 0;
  }
  constexpr WorldSet minus(WorldSet other) const {
    return WorldSet{bits & ~other.bits};
  }
  static constexpr WorldSet of(Interpretation w) {
    return WorldSet{1u << w.index};
  }

  friend constexpr WorldSet operator&(WorldSet a, WorldSet b) {
    return WorldSet{a.bits & b.bits};
  }
  friend constexpr WorldSet operator|(WorldSet a, WorldSet b) {
    return WorldSet{a.bits | b.bits};
  }
  auto operator<=>(const WorldSet&) const = default;
};

WorldSet all_worlds(const Signature& sig);

// Model-set duals of the belief-set operations: entailment is inclusion of
// model sets, expansion is intersection.
inline bool entails(WorldSet a, WorldSet b) { return a.subset_of(b); }
inline WorldSet expand(WorldSet k, WorldSet a) { return k & a; }

// Immutable propositional formula over atom indices of some signature.
class Formula {
 public:
  enum class Kind : std::uint8_t { Atom, Top, Bot, Not, And, Or, Implies, Iff };

  static Formula atom(int index);
  static Formula top();
  static Formula bot();
  static Formula negation(Formula f);
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula implies(Formula a, Formula b);
  static Formula iff(Formula a, Formula b);

  Kind kind() const { return node_->kind; }
  int atom_index() const { return node_->atom; }
  Formula lhs() const { return Formula(node_->lhs); }
  Formula rhs() const { return Formula(node_->rhs); }

  // Structural equality.
  bool operator==(const Formula& other) const;

 private:
  struct Node {
    Kind kind;
    int atom = -1;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
  };

  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

// Grammar: atoms are identifiers; `!`/`~` negation, `&` conjunction, `|`
// disjunction, `->` implication (right-associative), `<->` biconditional;
// `top`/`1` and `bot`/`0` are the constants; precedence ! > & > | > -> > <->.
Formula parse_formula(std::string_view text, const Signature& sig);
std::string print_formula(const Formula& f, const Signature& sig);

bool eval(const Formula& f, Interpretation w);

// Truth-table semantics: evaluates f at every interpretation of sig.
WorldSet models(const Formula& f, const Signature& sig);

// A conjunction of literals whose sole model is w.
Formula minterm(Interpretation w, const Signature& sig);
// A formula whose models are exactly {w1, w2} (a singleton when w1 == w2).
Formula pair_formula(Interpretation w1, Interpretation w2,
                     const Signature& sig);

// A minimal-DNF formula with models(result) == s. Used for display labels.
Formula minimal_dnf(WorldSet s, const Signature& sig);

// Interpretation strings: an atom name means true, `-` before it means false,
// atoms in signature order, e.g. "a-b" over {a,b} for a true and b false.
std::string print_world(const Signature& sig, Interpretation w);
Interpretation parse_world(const Signature& sig, std::string_view text);

// "{w1 w2 ...}" with worlds ascending by index; "{}" for the empty set.
std::string print_world_set(const Signature& sig, WorldSet s);

}  // namespace epispace
