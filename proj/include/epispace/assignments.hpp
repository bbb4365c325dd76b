#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "epispace/postulates.hpp"

namespace epispace {

// A total preorder on a subset of the worlds, stored as an ordered partition:
// layers_[0] is the most preferred block. Totality and transitivity hold by
// construction.
class TotalPreorder {
 public:
  TotalPreorder() = default;  // empty domain

  // Validates that the layers are non-empty and pairwise disjoint.
  static TotalPreorder from_layers(std::vector<WorldSet> layers);

  WorldSet domain() const { return domain_; }
  const std::vector<WorldSet>& layers() const { return layers_; }

  // Index of the layer holding w, or -1 when w is outside the domain.
  int layer_of(Interpretation w) const;
  bool leq(Interpretation w1, Interpretation w2) const;
  bool equiv(Interpretation w1, Interpretation w2) const;
  bool strictly_less(Interpretation w1, Interpretation w2) const;

  // Minimal elements of x: x intersected with its lowest intersecting layer.
  // Throws DomainError when x is not a subset of the domain.
  WorldSet min_of(WorldSet x) const;

  bool operator==(const TotalPreorder&) const = default;

 private:
  WorldSet domain_;
  std::vector<WorldSet> layers_;
};

inline WorldSet min_elements(WorldSet x, const TotalPreorder& ord) {
  return ord.min_of(x);
}

// Per-state component of an assignment: the credible worlds C, the preference
// order on C, and whether the inconsistent input is treated as credible
// (b = ⊥ in which case revision by bot yields the inconsistent belief set).
struct StateAssignment {
  WorldSet credible;
  TotalPreorder order;
  bool bot_credible = false;

  bool operator==(const StateAssignment&) const = default;
};

class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(std::vector<StateAssignment> per_state)
      : per_state_(std::move(per_state)) {}

  int size() const { return static_cast<int>(per_state_.size()); }
  const StateAssignment& at(StateId s) const { return per_state_[s.value]; }
  const std::vector<StateAssignment>& per_state() const { return per_state_; }

  bool operator==(const Assignment&) const = default;

 private:
  std::vector<StateAssignment> per_state_;
};

// Structural validity: one entry per state, order domain equal to C,
// Bel(state) ⊆ C, and b = ⊥ only with C = Omega. Throws ConstraintViolation.
void validate_assignment(const EpistemicSpace& sp, const Assignment& a);

// Faithfulness: at every state with consistent beliefs, the minimal layer is
// exactly the belief set. The witness carries the offending world pair as
// singleton sets.
CheckResult is_faithful(const EpistemicSpace& sp, const Assignment& a);

// The assignment fixture for the six-state example space: per-state credible
// sets, orders refining the fixed world order ab, -ab, a-b, -a-b below the
// belief sets (with -ab and a-b tied at the -a-b state), b = ⊥ only at the
// ab-state.
Assignment example2_assignment(const EpistemicSpace& sp);

struct SynthesisFailure {
  StateId state;
  WorldSet input;
  WorldSet target;
};

// Builds the operator determined by the assignment's three-case revision
// rule: minimal credible models of the input when some input world is
// credible; the inconsistent belief set for an inconsistent input with
// b = ⊥; the prior beliefs otherwise. Returns nullopt (with the failing
// triple) when the space has no state for a required target belief set.
std::optional<SemanticOperator> try_synthesize(
    const SpacePtr& sp, const Assignment& a,
    SynthesisFailure* failure = nullptr);

// Same, but throws NoSuchBeliefState naming the failing (state, input,
// target) triple.
SemanticOperator synthesize(const SpacePtr& sp, const Assignment& a);

// Reads the assignment off an operator: C collects the worlds whose minterm
// input is accepted exactly, b = ⊥ iff a consistent state maps the
// inconsistent input to the inconsistent belief set, and the order compares
// worlds through two-world inputs. Throws NotAPreorder when the pairwise
// relation has no layer form and ConstraintViolation when the result breaks
// assignment validity; both signal a non-ECL operator.
Assignment extract(const SemanticOperator& op);

// Revision-compatibility: the operator's output belief set matches the
// three-case rule at every (state, input). Witness = first failing pair.
CheckResult is_compatible(const Assignment& a, const SemanticOperator& op);

// Text format, one state per line, every state present:
//   assign for <space-name>
//   state PsiAB  b: bot  C: ab -ab a-b -a-b  order: [ab] [-ab] [a-b] [-a-b]
// Layers are listed most-preferred first and must partition C.
Assignment load_assignment(std::istream& in, const EpistemicSpace& sp,
                           const std::string& diagnostic_name);
Assignment load_assignment_file(const std::string& path,
                                const EpistemicSpace& sp);
std::string format_assignment(const EpistemicSpace& sp, const Assignment& a);

}  // namespace epispace
