#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "epispace/assignments.hpp"

namespace epispace {

struct EnumerationLimits {
  std::uint64_t max_operators = 10'000'000;    // full-scan permission bound
  std::uint64_t max_assignments = 1'000'000;   // assignment-side bound
  std::uint64_t samples = 10'000;              // fallback sample size
  std::uint64_t seed = 1;                      // fallback sampling seed
};

// Index-addressable stream of all total transition tables of a space, in
// mixed-radix order: cell (state s, input mask A) holds digit
// (index / n^(s * 2^|Omega| + A)) mod n.
class OperatorEnumeration {
 public:
  explicit OperatorEnumeration(SpacePtr space);

  // Exact table count n^(n * 2^|Omega|) when it fits 64 bits.
  std::optional<std::uint64_t> exact_count() const { return exact_count_; }
  // Exact decimal count, or an approximation like "~1.0e+75" past 64 bits.
  std::string count_string() const;

  SemanticOperator make(std::uint64_t index) const;
  // Exact count, throwing ScaleExceeded past the limit (or past 64 bits).
  std::uint64_t checked_count(const EnumerationLimits& limits) const;

 private:
  SpacePtr space_;
  int cells_ = 0;
  std::optional<std::uint64_t> exact_count_;
};

// Every ordered partition of `domain` into non-empty layers, i.e. every total
// preorder, in a deterministic order.
std::vector<TotalPreorder> all_preorders(WorldSet domain);

// All per-state assignment choices: credible sets above the belief set, total
// preorders on them (restricted to faithful ones on demand), and both b flags
// where CLA⊥ allows them.
std::vector<StateAssignment> state_options(const EpistemicSpace& sp, StateId s,
                                           bool faithful_only);

// Index-addressable stream of all valid (or all faithful) assignments of a
// space: the mixed-radix product of the per-state option lists.
class AssignmentEnumeration {
 public:
  AssignmentEnumeration(SpacePtr space, bool faithful_only);

  std::uint64_t count() const { return count_; }
  Assignment make(std::uint64_t index) const;

 private:
  SpacePtr space_;
  std::vector<std::vector<StateAssignment>> options_;
  std::uint64_t count_ = 0;
};

// Desk-scale size report for a space.
struct EnumerationScope {
  std::string operator_count;
  std::uint64_t valid_assignments = 0;
  std::uint64_t faithful_assignments = 0;
};

EnumerationScope describe_scope(const SpacePtr& space);

// min(X ∪ Y) is min(X), min(Y), or their union.
bool lemma1_property(const TotalPreorder& ord, WorldSet x, WorldSet y);

struct ClaimResult {
  std::string claim;
  bool applicable = true;
  bool pass = true;
  std::string detail;
  std::string counterexample;  // empty when none

  bool ok() const { return !applicable || pass; }
};

struct VerificationReport {
  std::string space;
  bool globally_consistent = false;
  std::string operator_count;
  std::uint64_t scanned = 0;
  bool exhaustive = true;
  std::uint64_t seed = 0;
  std::uint64_t agm_count = 0;
  std::uint64_t cl_count = 0;
  std::uint64_t ecl_count = 0;
  std::uint64_t faithful_assignments = 0;
  std::uint64_t synthesized = 0;
  std::vector<ClaimResult> claims;

  bool all_pass() const;
};

// Cross-checks the class-level claims on one space by brute force: scans all
// operators when the count is within bounds, otherwise a seeded sample plus
// every operator synthesized from a faithful assignment.
VerificationReport verify_paper_claims(const SpacePtr& space,
                                       const EnumerationLimits& limits = {});

}  // namespace epispace
