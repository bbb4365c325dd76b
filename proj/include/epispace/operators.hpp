#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "epispace/space.hpp"

namespace epispace {

// A belief change operator in canonical semantic form: a total transition
// table from (state, input model set) to states. Formula inputs are
// canonicalized to their model sets, so syntax independence holds by
// representation.
class SemanticOperator {
 public:
  SemanticOperator(SpacePtr space, std::vector<StateId> table);

  const EpistemicSpace& space() const { return *space_; }
  const SpacePtr& space_ptr() const { return space_; }

  StateId step(StateId s, WorldSet input) const {
    return table_[cell(s, input)];
  }
  // Belief set of the successor state: the model set of Bel(s ∘ input).
  WorldSet out(StateId s, WorldSet input) const {
    return space_->bel(step(s, input));
  }
  StateId apply(StateId s, const Formula& f) const;

  const std::vector<StateId>& table() const { return table_; }
  // Number of distinct input model sets: 2^|Omega|.
  int input_count() const { return 1 << space_->sig().world_count(); }

  // Table with every target replaced by the lowest-index state sharing its
  // belief set. Two operators are interchangeable for every postulate iff
  // their canonical tables agree.
  std::vector<StateId> canonical_table() const;
  bool equivalent_to(const SemanticOperator& other) const;

  bool operator==(const SemanticOperator& other) const {
    return table_ == other.table_;
  }

 private:
  std::size_t cell(StateId s, WorldSet input) const {
    return static_cast<std::size_t>(s.value) * inputs_ + input.bits;
  }

  SpacePtr space_;
  std::size_t inputs_ = 0;
  std::vector<StateId> table_;
};

// The two-state operator over signature {a}: revising by a leads to the
// a-state, revising by !a or bot leads to the inconsistent state, a
// tautological input changes nothing.
std::pair<SpacePtr, SemanticOperator> build_example1();

// The six-state operator over signature {a,b}, built from its closed-form
// case analysis: keep the consistent part of the prior beliefs if any;
// inconsistent input at the ab-state leads to the inconsistent state; an
// input covering both -ab and a-b at the -a-b-state leads to their joint
// state; otherwise fall to the least credible-input world in the fixed order
// ab, -ab, a-b, -a-b, or keep the prior state when no input world is
// credible.
std::pair<SpacePtr, SemanticOperator> build_example2();

// All (source, target) pairs realized by at least one input.
std::vector<std::pair<StateId, StateId>> edge_relation(
    const SemanticOperator& op);

// DOT digraph with one node per state. Non-self edges are labeled by
// minimal-DNF representatives of every input mapping there; a state keeping
// at least one input maps gets a single `*` self-loop standing for all
// inputs not drawn elsewhere.
std::string to_dot(const SemanticOperator& op);

// Text format, one row per (state, input) pair; every pair must be listed:
//   op for <space-name>
//   row PsiA input: -a -> PsiBot
//   row PsiA input: (empty) -> PsiBot
SemanticOperator load_operator(std::istream& in, SpacePtr space,
                               const std::string& diagnostic_name);
SemanticOperator load_operator_file(const std::string& path, SpacePtr space);
std::string format_operator(const SemanticOperator& op);

}  // namespace epispace
