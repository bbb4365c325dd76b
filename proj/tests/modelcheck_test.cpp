#include <doctest.h>

#include <set>

#include "epispace/modelcheck.hpp"
#include "fixtures.hpp"

using namespace epispace;
using namespace epispace::testing;

TEST_CASE("operator enumeration counts and canonical order") {
  CHECK(OperatorEnumeration(build_example1().first).exact_count() == 256);
  CHECK(OperatorEnumeration(three_state_space()).exact_count() == 531441);

  Signature sa({"a"});
  auto single = std::make_shared<EpistemicSpace>(
      "one", sa, std::vector<std::string>{"X"},
      std::vector<WorldSet>{WS(sa, {"a"})});
  CHECK(OperatorEnumeration(single).exact_count() == 1);

  // the six-state example space is far past 64 bits
  OperatorEnumeration big(build_example2().first);
  CHECK(!big.exact_count());
  CHECK(big.count_string().substr(0, 1) == "~");
  CHECK_THROWS_AS(big.checked_count(EnumerationLimits{}), ScaleExceeded);

  OperatorEnumeration ops(build_example1().first);
  std::set<std::vector<StateId>> seen;
  for (std::uint64_t i = 0; i < 256; ++i) {
    seen.insert(ops.make(i).table());
  }
  CHECK(seen.size() == 256);  // every total table exactly once
  CHECK(ops.make(0).table() == std::vector<StateId>(8, StateId{0}));
  CHECK(ops.make(255).table() == std::vector<StateId>(8, StateId{1}));
}

TEST_CASE("total preorder counts follow the ordered-partition numbers") {
  CHECK(all_preorders(WorldSet{}).size() == 1);
  CHECK(all_preorders(WorldSet{0b1}).size() == 1);
  CHECK(all_preorders(WorldSet{0b11}).size() == 3);
  CHECK(all_preorders(WorldSet{0b111}).size() == 13);
  CHECK(all_preorders(WorldSet{0b1111}).size() == 75);
}

TEST_CASE("per-state assignment options match the hand counts") {
  auto [sp, op] = build_example1();
  // consistent state over one atom: {a} alone, or Omega with top/bot flag
  CHECK(state_options(*sp, StateId{0}, true).size() == 3);
  // inconsistent state: four credible sets, all orders, bot only on Omega
  CHECK(state_options(*sp, StateId{1}, true).size() == 9);
  // without faithfulness the consistent state gains the Omega orders
  CHECK(state_options(*sp, StateId{0}, false).size() == 7);
  CHECK(state_options(*sp, StateId{1}, false).size() == 9);

  for (bool faithful : {false, true}) {
    for (const StateAssignment& o : state_options(*sp, StateId{1}, faithful)) {
      CHECK((!o.bot_credible || o.credible == all_worlds(sp->sig())));
    }
  }

  CHECK(AssignmentEnumeration(sp, true).count() == 27);
  CHECK(AssignmentEnumeration(sp, false).count() == 63);
  CHECK(AssignmentEnumeration(three_state_space(), true).count() == 18);
}

TEST_CASE("assignment enumeration yields distinct valid assignments") {
  auto [sp, op] = build_example1();
  AssignmentEnumeration faithful(sp, true);
  std::set<std::string> seen;
  for (std::uint64_t i = 0; i < faithful.count(); ++i) {
    const Assignment a = faithful.make(i);
    CHECK_NOTHROW(validate_assignment(*sp, a));
    CHECK(is_faithful(*sp, a).ok());
    seen.insert(format_assignment(*sp, a));
  }
  CHECK(seen.size() == faithful.count());
}

TEST_CASE("lemma 1 trichotomy") {
  Signature ab({"a", "b"});
  const TotalPreorder ord =
      TotalPreorder::from_layers({WS(ab, {"ab"}), WS(ab, {"-ab", "a-b"})});
  const WorldSet x = WS(ab, {"-ab"});
  CHECK(lemma1_property(ord, x, x));
  const TotalPreorder flat = TotalPreorder::from_layers({ord.domain()});
  CHECK(lemma1_property(flat, x, WS(ab, {"ab", "a-b"})));

  // exhaustive over every preorder on two-atom subsets
  const WorldSet omega = all_worlds(ab);
  for (std::uint32_t d = 0; d <= omega.bits; ++d) {
    WorldSet domain{d};
    if (!domain.subset_of(omega)) continue;
    for (const TotalPreorder& p : all_preorders(domain)) {
      for (std::uint32_t xm = 0; xm <= d; ++xm) {
        if (!WorldSet{xm}.subset_of(domain)) continue;
        for (std::uint32_t ym = 0; ym <= d; ++ym) {
          if (!WorldSet{ym}.subset_of(domain)) continue;
          CHECK(lemma1_property(p, WorldSet{xm}, WorldSet{ym}));
        }
      }
    }
  }
}

TEST_CASE("verification report on the two-state space") {
  const VerificationReport rep = verify_paper_claims(build_example1().first);
  CHECK(rep.exhaustive);
  CHECK(rep.scanned == 256);
  CHECK(!rep.globally_consistent);
  CHECK(rep.agm_count == 0);
  CHECK(rep.cl_count == 0);
  CHECK(rep.ecl_count == 2);
  CHECK(rep.faithful_assignments == 27);
  CHECK(rep.synthesized == 2);
  CHECK(rep.all_pass());
  for (const ClaimResult& c : rep.claims) {
    INFO(c.claim << ": " << c.counterexample);
    CHECK(c.ok());
  }
}

TEST_CASE("verification report on the three-state space") {
  const VerificationReport rep = verify_paper_claims(three_state_space());
  CHECK(rep.exhaustive);
  CHECK(rep.scanned == 531441);
  CHECK(rep.globally_consistent);
  CHECK(rep.agm_count == 0);
  CHECK(rep.cl_count == 4);
  CHECK(rep.ecl_count == 4);
  CHECK(rep.all_pass());
}

TEST_CASE("a space hosting every needed belief set admits AGM operators") {
  // belief sets {a}, {-a} and the inconsistent one: revision by any input
  // has a landing state, so C = Omega, b = bot assignments synthesize
  Signature sa({"a"});
  auto sp = std::make_shared<EpistemicSpace>(
      "agm", sa, std::vector<std::string>{"PsiA", "PsiNA", "PsiBot"},
      std::vector<WorldSet>{WS(sa, {"a"}), WS(sa, {"-a"}), WorldSet{}});

  const TotalPreorder a_first =
      TotalPreorder::from_layers({WS(sa, {"a"}), WS(sa, {"-a"})});
  const TotalPreorder na_first =
      TotalPreorder::from_layers({WS(sa, {"-a"}), WS(sa, {"a"})});
  const Assignment full({{all_worlds(sa), a_first, true},
                         {all_worlds(sa), na_first, true},
                         {all_worlds(sa), a_first, true}});
  REQUIRE(is_faithful(*sp, full).ok());
  const SemanticOperator op = synthesize(sp, full);
  const ClassMembership cm = classify(op);
  CHECK(cm.in_agm_rev);
  CHECK(cm.in_ecl_rev);
  CHECK(!cm.in_cl_rev);  // revision by bot yields the inconsistent state

  const VerificationReport rep = verify_paper_claims(sp);
  CHECK(rep.exhaustive);
  CHECK(rep.agm_count == 2);  // one table per strict order at the bot state
  CHECK(rep.cl_count == 0);
  CHECK(rep.all_pass());
}

TEST_CASE("sampled verification stays reproducible on the six-state space") {
  EnumerationLimits limits;
  limits.samples = 200;
  limits.max_assignments = 5'000;
  limits.seed = 42;
  const SpacePtr sp = build_example2().first;
  const VerificationReport rep = verify_paper_claims(sp, limits);
  CHECK(!rep.exhaustive);
  CHECK(rep.scanned == 200);
  CHECK(rep.all_pass());

  const VerificationReport again = verify_paper_claims(sp, limits);
  CHECK(again.agm_count == rep.agm_count);
  CHECK(again.cl_count == rep.cl_count);
  CHECK(again.ecl_count == rep.ecl_count);
  CHECK(again.synthesized == rep.synthesized);
}

TEST_CASE("scope description") {
  const EnumerationScope scope = describe_scope(build_example1().first);
  CHECK(scope.operator_count == "256");
  CHECK(scope.valid_assignments == 63);
  CHECK(scope.faithful_assignments == 27);
}
