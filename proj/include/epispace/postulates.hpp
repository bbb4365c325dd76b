#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "epispace/operators.hpp"

namespace epispace {

// Every postulate the checker knows. CL3wcp and ECL3 denote the same test,
// as do CL3u and ECL4; WCP is the contrapositive of CL3wcp and must agree
// with it. Faithful and RevisionCompatible identify the assignment-level
// checks that reuse CheckResult.
enum class PostulateId {
  R1, R2, R3, R4, R5, R6,
  CL1, CL2, CL3, CL4, CL5, CL6,
  ECL1, ECL2, ECL3, ECL4, ECL5, ECL6, ECL7,
  WCP, CL3wcp, CL3u,
  Faithful, RevisionCompatible,
};

std::string_view to_string(PostulateId p);
std::optional<PostulateId> postulate_from_string(std::string_view name);

// The 22 operator postulates, in declaration order.
const std::vector<PostulateId>& all_postulates();

enum class Verdict { Satisfied, Violated, HoldsByRepresentation };

std::string_view to_string(Verdict v);

// The concrete spot where a postulate failed: a state, the input model set,
// and for pair-quantified postulates a second model set.
struct Witness {
  StateId state;
  WorldSet input;
  std::optional<WorldSet> input2;

  bool operator==(const Witness&) const = default;
};

struct CheckResult {
  PostulateId postulate;
  Verdict verdict = Verdict::Satisfied;
  std::optional<Witness> witness;  // present iff verdict == Violated

  bool ok() const { return verdict != Verdict::Violated; }
};

// Pair-quantified postulates iterate 2^|Omega| x 2^|Omega| input pairs per
// state; beyond this many atoms they refuse instead of silently truncating.
struct CheckOptions {
  int max_pair_atoms = 3;
};

// Exhaustive check of one postulate over all states and input model sets.
// Iteration is deterministic: states by ascending index, masks by descending
// value (outer then inner for pairs); the first violation becomes the
// witness. Throws ScaleExceeded for pair-quantified postulates past the cap.
CheckResult check(const SemanticOperator& op, PostulateId p,
                  const CheckOptions& opts = {});

std::vector<CheckResult> check_all(const SemanticOperator& op,
                                   const CheckOptions& opts = {});

// Re-evaluates a violated result's witness against the postulate. True iff
// the witness still exhibits the violation.
bool reverify(const SemanticOperator& op, const CheckResult& result);

struct ClassMembership {
  bool in_agm_rev = false;
  bool in_cl_rev = false;
  bool in_ecl_rev = false;

  bool operator==(const ClassMembership&) const = default;
};

ClassMembership classify(const SemanticOperator& op,
                         const CheckOptions& opts = {});

std::string describe(const CheckResult& result, const EpistemicSpace& sp);

}  // namespace epispace
