#include "epispace/modelcheck.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <set>
#include <sstream>

namespace epispace {

// ---------------------------------------------------------------------------
// Operator enumeration

OperatorEnumeration::OperatorEnumeration(SpacePtr space)
    : space_(std::move(space)) {
  const int n = space_->state_count();
  cells_ = n * (1 << space_->sig().world_count());
  std::uint64_t count = 1;
  bool overflow = false;
  for (int i = 0; i < cells_ && !overflow; ++i) {
    if (count > UINT64_MAX / static_cast<std::uint64_t>(n)) {
      overflow = true;
    } else {
      count *= static_cast<std::uint64_t>(n);
    }
  }
  if (!overflow) exact_count_ = count;
}

std::string OperatorEnumeration::count_string() const {
  if (exact_count_) return std::to_string(*exact_count_);
  const double log10count =
      cells_ * std::log10(static_cast<double>(space_->state_count()));
  const int exponent = static_cast<int>(log10count);
  const double mantissa = std::pow(10.0, log10count - exponent);
  std::ostringstream out;
  out.precision(1);
  out << "~" << std::fixed << mantissa << "e+" << exponent;
  return out.str();
}

SemanticOperator OperatorEnumeration::make(std::uint64_t index) const {
  const std::uint64_t n = space_->state_count();
  std::vector<StateId> table(cells_);
  for (int c = 0; c < cells_; ++c) {
    table[c] = StateId{static_cast<int>(index % n)};
    index /= n;
  }
  return SemanticOperator(space_, std::move(table));
}

std::uint64_t OperatorEnumeration::checked_count(
    const EnumerationLimits& limits) const {
  if (!exact_count_ || *exact_count_ > limits.max_operators) {
    throw ScaleExceeded("operator enumeration over space '" + space_->name() +
                        "' needs " + count_string() +
                        " tables, bound is " +
                        std::to_string(limits.max_operators));
  }
  return *exact_count_;
}

// ---------------------------------------------------------------------------
// Preorder and assignment enumeration

namespace {

// Non-empty submasks of `mask`, ascending.
std::vector<std::uint32_t> nonempty_submasks(std::uint32_t mask) {
  std::vector<std::uint32_t> subs;
  for (std::uint32_t s = (0u - mask) & mask; s != 0; s = (s - mask) & mask) {
    subs.push_back(s);
    if (s == mask) break;
  }
  return subs;
}

void preorders_rec(WorldSet rest, std::vector<WorldSet>& stack,
                   std::vector<TotalPreorder>& out) {
  if (rest.empty()) {
    out.push_back(TotalPreorder::from_layers(stack));
    return;
  }
  for (std::uint32_t first : nonempty_submasks(rest.bits)) {
    stack.push_back(WorldSet{first});
    preorders_rec(rest.minus(WorldSet{first}), stack, out);
    stack.pop_back();
  }
}

}  // namespace

std::vector<TotalPreorder> all_preorders(WorldSet domain) {
  std::vector<TotalPreorder> out;
  std::vector<WorldSet> stack;
  preorders_rec(domain, stack, out);
  return out;
}

std::vector<StateAssignment> state_options(const EpistemicSpace& sp, StateId s,
                                           bool faithful_only) {
  const WorldSet bel = sp.bel(s);
  const WorldSet omega = all_worlds(sp.sig());
  std::vector<StateAssignment> options;

  const std::uint32_t free = omega.minus(bel).bits;
  std::uint32_t extra = 0;
  while (true) {
    const WorldSet credible = bel | WorldSet{extra};

    std::vector<TotalPreorder> orders;
    if (faithful_only && !bel.empty()) {
      // Faithfulness pins the minimal layer to the belief set.
      for (const TotalPreorder& rest : all_preorders(credible.minus(bel))) {
        std::vector<WorldSet> layers{bel};
        layers.insert(layers.end(), rest.layers().begin(),
                      rest.layers().end());
        orders.push_back(TotalPreorder::from_layers(std::move(layers)));
      }
    } else {
      orders = all_preorders(credible);
    }

    for (const TotalPreorder& ord : orders) {
      options.push_back(StateAssignment{credible, ord, false});
      if (credible == omega) {
        options.push_back(StateAssignment{credible, ord, true});
      }
    }

    if (extra == free) break;
    extra = (extra - free) & free;
  }
  return options;
}

AssignmentEnumeration::AssignmentEnumeration(SpacePtr space, bool faithful_only)
    : space_(std::move(space)) {
  count_ = 1;
  for (int i = 0; i < space_->state_count(); ++i) {
    options_.push_back(state_options(*space_, StateId{i}, faithful_only));
    const std::uint64_t n = options_.back().size();
    if (n == 0 || count_ > UINT64_MAX / n) {
      throw ScaleExceeded("assignment enumeration over space '" +
                          space_->name() + "' does not fit 64 bits");
    }
    count_ *= n;
  }
}

Assignment AssignmentEnumeration::make(std::uint64_t index) const {
  std::vector<StateAssignment> per_state;
  per_state.reserve(options_.size());
  for (const auto& opts : options_) {
    per_state.push_back(opts[index % opts.size()]);
    index /= opts.size();
  }
  return Assignment(std::move(per_state));
}

EnumerationScope describe_scope(const SpacePtr& space) {
  EnumerationScope scope;
  scope.operator_count = OperatorEnumeration(space).count_string();
  scope.valid_assignments = AssignmentEnumeration(space, false).count();
  scope.faithful_assignments = AssignmentEnumeration(space, true).count();
  return scope;
}

// ---------------------------------------------------------------------------
// Minimal-elements trichotomy

bool lemma1_property(const TotalPreorder& ord, WorldSet x, WorldSet y) {
  const WorldSet mu = ord.min_of(x | y);
  const WorldSet mx = ord.min_of(x);
  const WorldSet my = ord.min_of(y);
  return mu == mx || mu == my || mu == (mx | my);
}

// ---------------------------------------------------------------------------
// Claim verification

namespace {

using CanonicalTable = std::vector<StateId>;

struct ClaimTracker {
  ClaimResult result;

  explicit ClaimTracker(std::string name) { result.claim = std::move(name); }

  void fail(const std::string& counterexample) {
    if (result.pass) {
      result.pass = false;
      result.counterexample = counterexample;
    }
  }
};

std::vector<StateAssignment> filter_options(
    std::vector<StateAssignment> options, bool require_full_bot,
    bool require_top) {
  std::vector<StateAssignment> out;
  for (auto& o : options) {
    if (require_full_bot && !o.bot_credible) continue;
    if (require_top && o.bot_credible) continue;
    out.push_back(std::move(o));
  }
  return out;
}

// Saturating product of the per-state option counts.
std::uint64_t choice_count(
    const std::vector<std::vector<StateAssignment>>& options) {
  std::uint64_t total = 1;
  for (const auto& o : options) {
    if (o.empty()) return 0;
    const std::uint64_t n = o.size();
    if (total > UINT64_MAX / n) return UINT64_MAX;
    total *= n;
  }
  return total;
}

// The operators synthesizable from one family of assignments: exhaustive when
// the family is small enough, a seeded sample otherwise.
struct SynthSide {
  std::set<CanonicalTable> tables;
  std::vector<SemanticOperator> ops;  // one per distinct table
  std::uint64_t assignment_count = 0;
  bool complete = true;
};

SynthSide synthesize_side(const SpacePtr& space,
                          const std::vector<std::vector<StateAssignment>>& options,
                          const EnumerationLimits& limits,
                          std::uint64_t seed_offset) {
  SynthSide side;
  side.assignment_count = choice_count(options);
  if (side.assignment_count == 0) return side;

  auto consider = [&](Assignment a) {
    if (auto op = try_synthesize(space, a)) {
      if (side.tables.insert(op->canonical_table()).second) {
        side.ops.push_back(std::move(*op));
      }
    }
  };

  if (side.assignment_count <= limits.max_assignments) {
    for (std::uint64_t i = 0; i < side.assignment_count; ++i) {
      std::uint64_t rest = i;
      std::vector<StateAssignment> per_state;
      per_state.reserve(options.size());
      for (const auto& o : options) {
        per_state.push_back(o[rest % o.size()]);
        rest /= o.size();
      }
      consider(Assignment(std::move(per_state)));
    }
  } else {
    side.complete = false;
    std::mt19937_64 rng(limits.seed + seed_offset);
    for (std::uint64_t k = 0; k < limits.samples; ++k) {
      std::vector<StateAssignment> per_state;
      per_state.reserve(options.size());
      for (const auto& o : options) per_state.push_back(o[rng() % o.size()]);
      consider(Assignment(std::move(per_state)));
    }
  }
  return side;
}

std::string set_size(const std::set<CanonicalTable>& s) {
  return std::to_string(s.size());
}

}  // namespace

bool VerificationReport::all_pass() const {
  for (const ClaimResult& c : claims) {
    if (!c.ok()) return false;
  }
  return true;
}

VerificationReport verify_paper_claims(const SpacePtr& space,
                                       const EnumerationLimits& limits) {
  VerificationReport rep;
  rep.space = space->name();
  rep.globally_consistent = space->globally_consistent();
  rep.seed = limits.seed;

  const CheckOptions copts;
  OperatorEnumeration ops(space);
  rep.operator_count = ops.count_string();
  rep.exhaustive =
      ops.exact_count() && *ops.exact_count() <= limits.max_operators;

  ClaimTracker prop1("Prop1");
  prop1.result.applicable = !rep.globally_consistent;
  ClaimTracker prop2("Prop2");
  ClaimTracker corollary("Corollary");
  ClaimTracker prop4("Prop4");
  ClaimTracker prop5("Prop5");
  ClaimTracker prop6("Prop6");
  prop6.result.applicable = rep.globally_consistent;
  ClaimTracker prop7("Prop7");
  ClaimTracker lemma1("Lemma1");
  ClaimTracker thm1_fwd("Thm1_fwd");
  ClaimTracker thm1_bwd("Thm1_bwd");

  // Faithful assignments and the operators they synthesize, plus the two
  // restricted families the report cross-checks: everything credible with
  // b = bot, and b = top throughout.
  std::vector<std::vector<StateAssignment>> all_options, p5_options,
      p6_options;
  for (int i = 0; i < space->state_count(); ++i) {
    auto all = state_options(*space, StateId{i}, /*faithful_only=*/true);
    p5_options.push_back(filter_options(all, true, false));
    p6_options.push_back(filter_options(all, false, true));
    all_options.push_back(std::move(all));
  }
  const SynthSide synth = synthesize_side(space, all_options, limits, 0);
  const SynthSide p5 = synthesize_side(space, p5_options, limits, 1);
  const SynthSide p6 = synthesize_side(space, p6_options, limits, 2);
  rep.faithful_assignments = synth.assignment_count;
  rep.synthesized = synth.tables.size();

  // Backward direction of the correspondence: every operator built from a
  // faithful assignment is an extended credibility-limited revision operator.
  for (std::size_t i = 0; i < synth.ops.size(); ++i) {
    if (!classify(synth.ops[i], copts).in_ecl_rev) {
      thm1_bwd.fail("synthesized operator #" + std::to_string(i) +
                    " fails ECL1-ECL7");
    }
  }

  // Every operator compatible with a C = Omega, b = bot assignment must be
  // AGM; every one compatible with an all-top assignment must be CL (on
  // globally consistent spaces).
  for (std::size_t i = 0; i < p5.ops.size(); ++i) {
    if (!classify(p5.ops[i], copts).in_agm_rev) {
      prop5.fail("operator from full-credibility bot assignment #" +
                 std::to_string(i) + " is not AGM");
    }
  }
  if (rep.globally_consistent) {
    for (std::size_t i = 0; i < p6.ops.size(); ++i) {
      if (!classify(p6.ops[i], copts).in_cl_rev) {
        prop6.fail("operator from all-top assignment #" + std::to_string(i) +
                   " is not CL");
      }
    }
  }

  // Forward direction for one operator: extract an assignment, check it,
  // and re-synthesize the same table.
  auto roundtrip_ok = [&](const SemanticOperator& op, std::string* why) {
    try {
      const Assignment a = extract(op);
      if (!is_faithful(op.space(), a).ok()) {
        *why = "extracted assignment not faithful";
        return false;
      }
      if (!is_compatible(a, op).ok()) {
        *why = "extracted assignment not revision-compatible";
        return false;
      }
      auto back = try_synthesize(op.space_ptr(), a);
      if (!back) {
        *why = "re-synthesis failed";
        return false;
      }
      if (!back->equivalent_to(op)) {
        *why = "re-synthesized table differs";
        return false;
      }
      return true;
    } catch (const Error& e) {
      *why = e.what();
      return false;
    }
  };

  // Operator scan: exhaustive when permitted, seeded samples otherwise.
  std::set<CanonicalTable> agm_set, cl_set, ecl_set;
  auto visit = [&](const SemanticOperator& op, const std::string& label) {
    const ClassMembership cm = classify(op, copts);
    if (cm.in_agm_rev) ++rep.agm_count;
    if (cm.in_cl_rev) ++rep.cl_count;
    if (cm.in_ecl_rev) ++rep.ecl_count;
    if (rep.exhaustive) {
      if (cm.in_agm_rev) agm_set.insert(op.canonical_table());
      if (cm.in_cl_rev) cl_set.insert(op.canonical_table());
      if (cm.in_ecl_rev) ecl_set.insert(op.canonical_table());
    }

    if (!rep.globally_consistent && cm.in_cl_rev) {
      prop1.fail(label + " satisfies CL1-CL6 on a non-globally-consistent space");
    }
    if (cm.in_agm_rev && cm.in_cl_rev) {
      prop2.fail(label + " is both AGM and CL");
      corollary.fail(label + " lies in AGMRev ∩ CLRev");
    }
    if (check(op, PostulateId::CL3, copts).ok()) {
      if (!check(op, PostulateId::CL3u, copts).ok() ||
          !check(op, PostulateId::CL3wcp, copts).ok()) {
        prop4.fail(label + " satisfies CL3 but not CL3u/CL3wcp");
      }
    }
    if ((cm.in_agm_rev || cm.in_cl_rev) && !cm.in_ecl_rev) {
      prop7.fail(label + " is AGM or CL but not ECL");
    }
    if (p5.complete && cm.in_agm_rev && !p5.tables.count(op.canonical_table())) {
      prop5.fail(label +
                 " is AGM but matches no full-credibility bot assignment");
    }
    if (p6.complete && rep.globally_consistent && cm.in_cl_rev &&
        !p6.tables.count(op.canonical_table())) {
      prop6.fail(label + " is CL but matches no all-top assignment");
    }
    if (cm.in_ecl_rev) {
      std::string why;
      if (!roundtrip_ok(op, &why)) {
        thm1_fwd.fail(label + ": " + why);
      }
    }
    ++rep.scanned;
  };

  if (rep.exhaustive) {
    const std::uint64_t total = *ops.exact_count();
    for (std::uint64_t i = 0; i < total; ++i) {
      visit(ops.make(i), "operator #" + std::to_string(i));
    }
  } else {
    std::mt19937_64 rng(limits.seed);
    const std::uint64_t n = space->state_count();
    const int cells = space->state_count() * (1 << space->sig().world_count());
    for (std::uint64_t k = 0; k < limits.samples; ++k) {
      std::vector<StateId> table(cells);
      for (int c = 0; c < cells; ++c) {
        table[c] = StateId{static_cast<int>(rng() % n)};
      }
      visit(SemanticOperator(space, std::move(table)),
            "sampled operator #" + std::to_string(k));
    }
    // The synthesized operators are known ECL members; exercise the forward
    // direction on them as well.
    for (std::size_t i = 0; i < synth.ops.size(); ++i) {
      std::string why;
      if (!roundtrip_ok(synth.ops[i], &why)) {
        thm1_fwd.fail("synthesized operator #" + std::to_string(i) + ": " + why);
      }
    }
  }

  // Set-level directions need both sides complete.
  if (rep.exhaustive) {
    if (synth.complete && ecl_set != synth.tables) {
      thm1_bwd.fail("ECL operators (" + set_size(ecl_set) +
                    ") differ from synthesizable ones (" +
                    set_size(synth.tables) + ")");
    }
    if (p5.complete && agm_set != p5.tables) {
      prop5.fail("AGM operators (" + set_size(agm_set) +
                 ") differ from full-credibility bot synthesis (" +
                 set_size(p5.tables) + ")");
    }
    if (p6.complete && rep.globally_consistent && cl_set != p6.tables) {
      prop6.fail("CL operators (" + set_size(cl_set) +
                 ") differ from all-top synthesis (" + set_size(p6.tables) + ")");
    }
    if (!rep.globally_consistent && rep.cl_count != 0) {
      prop1.fail("|CLRev| = " + std::to_string(rep.cl_count));
    }
  }

  // Trichotomy sweep over the space's worlds.
  {
    const WorldSet omega = all_worlds(space->sig());
    const int max_domain = omega.size() <= 4 ? omega.size() : 3;
    std::uint32_t d = 0;
    while (true) {
      const WorldSet domain{d};
      if (domain.size() <= max_domain) {
        for (const TotalPreorder& ord : all_preorders(domain)) {
          for (std::uint32_t x = domain.bits;; x = (x - 1) & domain.bits) {
            for (std::uint32_t y = domain.bits;; y = (y - 1) & domain.bits) {
              if (!lemma1_property(ord, WorldSet{x}, WorldSet{y})) {
                lemma1.fail("domain " +
                            print_world_set(space->sig(), domain));
              }
              if (y == 0) break;
            }
            if (x == 0) break;
          }
        }
      }
      if (d == omega.bits) break;
      d = (d - omega.bits) & omega.bits;
    }
  }

  const std::string scan_kind = rep.exhaustive ? " (exhaustive)" : " (sampled)";
  prop1.result.detail = "|CLRev| = " + std::to_string(rep.cl_count);
  prop2.result.detail = "scanned " + std::to_string(rep.scanned) + scan_kind;
  corollary.result.detail =
      "|AGMRev| = " + std::to_string(rep.agm_count) +
      ", |CLRev| = " + std::to_string(rep.cl_count);
  prop4.result.detail = "scanned " + std::to_string(rep.scanned) + scan_kind;
  prop5.result.detail = "full-credibility bot tables: " + set_size(p5.tables) +
                        (p5.complete ? "" : " (sampled)");
  prop6.result.detail =
      "all-top tables: " + set_size(p6.tables) + (p6.complete ? "" : " (sampled)");
  prop7.result.detail = "scanned " + std::to_string(rep.scanned) + scan_kind;
  lemma1.result.detail = "all preorders over world subsets of the signature";
  thm1_bwd.result.detail =
      "synthesizable tables: " + set_size(synth.tables) + " of " +
      std::to_string(rep.faithful_assignments) + " assignments" +
      (synth.complete ? "" : " (sampled)");
  thm1_fwd.result.detail = "|ECLRev| = " + std::to_string(rep.ecl_count);

  rep.claims = {prop1.result,  prop2.result, corollary.result, prop4.result,
                prop5.result,  prop6.result, prop7.result,     lemma1.result,
                thm1_fwd.result, thm1_bwd.result};
  return rep;
}

}  // namespace epispace
