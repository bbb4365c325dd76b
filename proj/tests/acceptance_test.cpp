// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion re-derives its expectations from scratch rather
// than trusting intermediate library state.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "epispace/modelcheck.hpp"
#include "fixtures.hpp"

using namespace epispace;
using namespace epispace::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::string note;

  void fail(const std::string& why) {
    pass = false;
    if (note.empty()) note = why;
  }
};

using CriterionFn = std::function<void(Outcome&)>;

bool run_criterion(int id, const std::string& what, double budget_seconds,
                   const CriterionFn& fn) {
  Outcome outcome;
  const auto start = std::chrono::steady_clock::now();
  try {
    fn(outcome);
  } catch (const std::exception& e) {
    outcome.fail(std::string("exception: ") + e.what());
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  if (budget_seconds > 0 && elapsed > budget_seconds) {
    outcome.fail("over time budget");
  }
  std::ostringstream line;
  line << "criterion " << id << ": " << (outcome.pass ? "PASS" : "FAIL")
       << " — " << what << " [" << elapsed << " s]";
  if (!outcome.note.empty()) line << " — " << outcome.note;
  std::cout << line.str() << "\n";
  return outcome.pass;
}

std::string layer_string(const EpistemicSpace& sp, const TotalPreorder& ord) {
  std::string out;
  for (const WorldSet& layer : ord.layers()) {
    out += print_world_set(sp.sig(), layer);
  }
  return out;
}

// ---------------------------------------------------------------------------

void criterion1(Outcome& o) {
  auto [sp, op] = build_example1();
  for (PostulateId p : {PostulateId::CL1, PostulateId::CL2, PostulateId::CL4,
                        PostulateId::CL5, PostulateId::CL6}) {
    if (!check(op, p).ok()) {
      o.fail(std::string(to_string(p)) + " unexpectedly violated");
    }
  }
  const CheckResult cl3 = check(op, PostulateId::CL3);
  if (cl3.verdict != Verdict::Violated || !cl3.witness ||
      sp->state_name(cl3.witness->state) != "PsiA" ||
      cl3.witness->input != WS(sp->sig(), {"-a"})) {
    o.fail("CL3 witness is not (PsiA, {-a})");
  }
  const CheckResult cl3u = check(op, PostulateId::CL3u);
  if (cl3u.verdict != Verdict::Violated || !cl3u.witness ||
      sp->state_name(cl3u.witness->state) != "PsiBot" ||
      cl3u.witness->input != WS(sp->sig(), {"a"}) ||
      cl3u.witness->input2 != WS(sp->sig(), {"a", "-a"})) {
    o.fail("CL3u witness is not (PsiBot, {a}, {a -a})");
  }
}

void criterion2(Outcome& o) {
  auto [sp, op] = build_example2();
  const Assignment a = example2_assignment(*sp);
  if (!is_faithful(*sp, a).ok()) o.fail("fixture assignment not faithful");
  const SemanticOperator built = synthesize(sp, a);
  if (!(built.equivalent_to(op) && built == op)) {
    o.fail("synthesized table differs from the closed-form operator");
  }

  std::set<std::pair<std::string, std::string>> edges;
  for (auto [src, dst] : edge_relation(op)) {
    edges.insert({sp->state_name(src), sp->state_name(dst)});
  }
  const std::set<std::pair<std::string, std::string>> figure = {
      {"PsiBot", "PsiBot"},
      {"PsiAB", "PsiAB"},         {"PsiAB", "PsiANB"},
      {"PsiAB", "PsiNAB"},        {"PsiAB", "PsiNANB"},
      {"PsiAB", "PsiBot"},
      {"PsiNAB", "PsiNAB"},
      {"PsiANB", "PsiANB"},       {"PsiANB", "PsiAB"},
      {"PsiNANB", "PsiNANB"},     {"PsiNANB", "PsiNAB"},
      {"PsiNANB", "PsiANB"},      {"PsiNANB", "PsiNABANB"},
      {"PsiNABANB", "PsiNABANB"}, {"PsiNABANB", "PsiNAB"},
      {"PsiNABANB", "PsiANB"},    {"PsiNABANB", "PsiNANB"},
  };
  if (edges != figure) o.fail("edge relation differs from the figure");

  for (PostulateId p : {PostulateId::ECL1, PostulateId::ECL2, PostulateId::ECL3,
                        PostulateId::ECL4, PostulateId::ECL5, PostulateId::ECL6,
                        PostulateId::ECL7}) {
    if (!check(op, p).ok()) {
      o.fail(std::string(to_string(p)) + " violated on example 2");
    }
  }
}

void criterion3(Outcome& o) {
  auto [sp, op] = build_example2();
  const Signature& sig = sp->sig();
  const Assignment a = extract(op);

  const std::vector<WorldSet> expected_c = {
      WorldSet{},                          // PsiBot
      all_worlds(sig),                     // PsiAB
      WS(sig, {"-ab"}),                    // PsiNAB
      WS(sig, {"ab", "a-b"}),              // PsiANB
      WS(sig, {"-ab", "a-b", "-a-b"}),     // PsiNANB (resolved listing typo)
      WS(sig, {"-ab", "a-b", "-a-b"}),     // PsiNABANB
  };
  // world sets print in index order: -a-b, a-b, -ab, ab
  const std::vector<std::string> expected_layers = {
      "",
      "{ab}{-ab}{a-b}{-a-b}",
      "{-ab}",
      "{a-b}{ab}",
      "{-a-b}{a-b -ab}",
      "{a-b -ab}{-a-b}",
  };
  for (int i = 0; i < sp->state_count(); ++i) {
    const StateId s{i};
    const StateAssignment& sa = a.at(s);
    if (sa.credible != expected_c[i]) {
      o.fail("C mismatch at " + sp->state_name(s));
    }
    if (sa.bot_credible != (sp->state_name(s) == "PsiAB")) {
      o.fail("b flag mismatch at " + sp->state_name(s));
    }
    if (layer_string(*sp, sa.order) != expected_layers[i]) {
      o.fail("layer mismatch at " + sp->state_name(s));
    }
  }
  if (!(a == example2_assignment(*sp))) {
    o.fail("extraction differs from the worked assignment");
  }
}

void criterion4(Outcome& o) {
  const SpacePtr sp = build_example1().first;
  OperatorEnumeration ops(sp);
  if (ops.exact_count() != 256) {
    o.fail("expected 256 operators");
    return;
  }

  std::set<std::vector<StateId>> ecl_tables;
  std::vector<SemanticOperator> ecl_ops;
  for (std::uint64_t i = 0; i < 256; ++i) {
    SemanticOperator op = ops.make(i);
    if (classify(op).in_ecl_rev) {
      ecl_tables.insert(op.canonical_table());
      ecl_ops.push_back(std::move(op));
    }
  }

  std::set<std::vector<StateId>> synth_tables;
  AssignmentEnumeration faithful(sp, true);
  for (std::uint64_t i = 0; i < faithful.count(); ++i) {
    if (auto op = try_synthesize(sp, faithful.make(i))) {
      synth_tables.insert(op->canonical_table());
    }
  }

  if (ecl_tables != synth_tables) {
    o.fail("ECL operators and synthesizable tables differ");
  }
  if (ecl_tables.size() != 2) {
    o.fail("expected exactly 2 ECL tables, got " +
           std::to_string(ecl_tables.size()));
  }
  for (const SemanticOperator& op : ecl_ops) {
    const Assignment a = extract(op);
    if (!is_compatible(a, op).ok()) {
      o.fail("extracted assignment not compatible");
      break;
    }
    if (!(synthesize(sp, a) == op)) {
      o.fail("roundtrip table differs");
      break;
    }
  }
}

void criterion5(Outcome& o) {
  const SpacePtr sp = three_state_space();
  OperatorEnumeration ops(sp);
  if (ops.exact_count() != 531441) {
    o.fail("expected 531441 operators");
    return;
  }

  auto scan = [&](std::uint64_t& agm, std::uint64_t& cl, std::uint64_t& ecl) {
    for (std::uint64_t i = 0; i < 531441; ++i) {
      const SemanticOperator op = ops.make(i);
      const ClassMembership cm = classify(op);
      if (cm.in_agm_rev) ++agm;
      if (cm.in_cl_rev) ++cl;
      if (cm.in_ecl_rev) ++ecl;
      if (cm.in_cl_rev && !cm.in_ecl_rev) {
        o.fail("CL operator outside ECL at index " + std::to_string(i));
      }
      if (cm.in_agm_rev && cm.in_cl_rev) {
        o.fail("operator in AGMRev ∩ CLRev at index " + std::to_string(i));
      }
      if (check(op, PostulateId::CL3).ok() &&
          (!check(op, PostulateId::CL3u).ok() ||
           !check(op, PostulateId::CL3wcp).ok())) {
        o.fail("CL3 without CL3u/CL3wcp at index " + std::to_string(i));
      }
    }
  };
  std::uint64_t agm1 = 0, cl1 = 0, ecl1 = 0;
  scan(agm1, cl1, ecl1);
  std::uint64_t agm2 = 0, cl2 = 0, ecl2 = 0;
  scan(agm2, cl2, ecl2);
  if (agm1 != agm2 || cl1 != cl2 || ecl1 != ecl2) {
    o.fail("class counts differ between runs");
  }
  // the three-state space hosts exactly four CL = ECL operators and no AGM
  // operator (it lacks an inconsistent state)
  if (agm1 != 0 || cl1 != 4 || ecl1 != 4) {
    o.fail("class counts " + std::to_string(agm1) + "/" + std::to_string(cl1) +
           "/" + std::to_string(ecl1) + ", expected 0/4/4");
  }
  o.note = "|AGMRev| = " + std::to_string(agm1) +
           ", |CLRev| = " + std::to_string(cl1) +
           ", |ECLRev| = " + std::to_string(ecl1);
}

void criterion6(Outcome& o) {
  const SpacePtr sp = build_example1().first;
  OperatorEnumeration ops(sp);
  std::uint64_t cl = 0;
  for (std::uint64_t i = 0; i < 256; ++i) {
    if (classify(ops.make(i)).in_cl_rev) ++cl;
  }
  if (cl != 0) o.fail("|CLRev| = " + std::to_string(cl) + " on E_bot_a");
  o.note = "|CLRev| = 0 over all 256 operators";
}

void criterion7(Outcome& o) {
  const SpacePtr sp = build_example1().first;

  // every faithful assignment with C = Omega and b = bot at both states
  std::vector<std::vector<StateAssignment>> options(sp->state_count());
  for (int i = 0; i < sp->state_count(); ++i) {
    for (const StateAssignment& sa :
         state_options(*sp, StateId{i}, /*faithful_only=*/true)) {
      if (sa.bot_credible && sa.credible == all_worlds(sp->sig())) {
        options[i].push_back(sa);
      }
    }
    if (options[i].empty()) {
      o.fail("no full-credibility bot option at state " + std::to_string(i));
      return;
    }
  }
  std::vector<Assignment> family;
  std::uint64_t total = 1;
  for (const auto& opts : options) total *= opts.size();
  for (std::uint64_t i = 0; i < total; ++i) {
    std::uint64_t rest = i;
    std::vector<StateAssignment> per_state;
    for (const auto& opts : options) {
      per_state.push_back(opts[rest % opts.size()]);
      rest /= opts.size();
    }
    family.push_back(Assignment(std::move(per_state)));
  }

  // cross-enumeration over all 256 operators
  OperatorEnumeration ops(sp);
  std::uint64_t agm_side = 0, compat_side = 0;
  for (std::uint64_t i = 0; i < 256; ++i) {
    const SemanticOperator op = ops.make(i);
    const ClassMembership cm = classify(op);
    bool compatible_with_some = false;
    for (const Assignment& a : family) {
      if (cm.in_ecl_rev && is_compatible(a, op).ok()) {
        compatible_with_some = true;
        break;
      }
    }
    if (cm.in_agm_rev) ++agm_side;
    if (compatible_with_some) ++compat_side;
    if (cm.in_agm_rev != compatible_with_some) {
      o.fail("operator #" + std::to_string(i) +
             " breaks the full-credibility equivalence");
    }
  }
  o.note = "|AGMRev| = " + std::to_string(agm_side) + ", compatible side = " +
           std::to_string(compat_side) + ", assignments = " +
           std::to_string(family.size());
}

void criterion8(Outcome& o) {
  Signature abc({"a", "b", "c"});
  const WorldSet omega = all_worlds(abc);
  std::uint64_t checked = 0;
  for (std::uint32_t d = 0; d <= omega.bits; ++d) {
    const WorldSet domain{d};
    if (!domain.subset_of(omega) || domain.size() > 3) continue;
    for (const TotalPreorder& ord : all_preorders(domain)) {
      // all subset pairs X, Y of the domain
      std::uint32_t x = domain.bits;
      while (true) {
        std::uint32_t y = domain.bits;
        while (true) {
          ++checked;
          if (!lemma1_property(ord, WorldSet{x}, WorldSet{y})) {
            o.fail("trichotomy fails on domain " +
                   print_world_set(abc, domain));
            return;
          }
          if (y == 0) break;
          y = (y - 1) & domain.bits;
        }
        if (x == 0) break;
        x = (x - 1) & domain.bits;
      }
    }
  }
  o.note = std::to_string(checked) + " (preorder, X, Y) triples";
}

void criterion9(Outcome& o) {
  Signature abc({"a", "b", "c"});
  const WorldSet omega = all_worlds(abc);
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 10'000; ++i) {
    const Formula f = random_formula(rng, abc, 4);
    const Formula g = random_formula(rng, abc, 3);
    const WorldSet mf = models(f, abc), mg = models(g, abc);
    if (models(Formula::conj(f, g), abc) != (mf & mg) ||
        models(Formula::disj(f, g), abc) != (mf | mg) ||
        models(Formula::negation(f), abc) != omega.minus(mf) ||
        models(Formula::implies(f, g), abc) != (omega.minus(mf) | mg) ||
        models(Formula::iff(f, g), abc) !=
            ((mf & mg) | omega.minus(mf | mg))) {
      o.fail("homomorphism law broken at iteration " + std::to_string(i));
      return;
    }
    if (!(parse_formula(print_formula(f, abc), abc) == f)) {
      o.fail("parser round-trip broken at iteration " + std::to_string(i));
      return;
    }
  }
  o.note = "10000 random trees";
}

}  // namespace

int main() {
  int failures = 0;
  auto run = [&](int id, const std::string& what, double budget,
                 const CriterionFn& fn) {
    if (!run_criterion(id, what, budget, fn)) ++failures;
  };

  run(1, "example 1 postulate report with pinned witnesses", 1.0, criterion1);
  run(2, "example 2 synthesis, figure edges, ECL1-ECL7", 1.0, criterion2);
  run(3, "extraction fidelity on example 2", 1.0, criterion3);
  run(4, "operator/assignment correspondence on the two-state space", 5.0,
      criterion4);
  run(5, "exhaustive class relations over 531441 operators", 120.0,
      criterion5);
  run(6, "CLRev empty on the non-globally-consistent space", 5.0, criterion6);
  run(7, "full-credibility cross-enumeration on the two-state space", 5.0,
      criterion7);
  run(8, "min-trichotomy sweep over three-atom domains", 10.0, criterion8);
  run(9, "logic-core homomorphism and round-trip properties", 30.0,
      criterion9);

  if (failures != 0) {
    std::cout << failures << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all acceptance criteria passed\n";
  return 0;
}
