#include <doctest.h>

#include <sstream>

#include "epispace/operators.hpp"
#include "fixtures.hpp"

using namespace epispace;
using namespace epispace::testing;

TEST_CASE("global consistency") {
  auto [ex1, op1] = build_example1();
  CHECK(!ex1->globally_consistent());  // hosts PsiBot with empty beliefs
  auto [ex2, op2] = build_example2();
  CHECK(!ex2->globally_consistent());
  CHECK(three_state_space()->globally_consistent());
}

TEST_CASE("resolve_state picks the lowest index and fails loudly") {
  auto [ex2, op2] = build_example2();
  const Signature& sig = ex2->sig();
  CHECK(ex2->state_name(ex2->resolve_state(WS(sig, {"-ab", "a-b"}))) ==
        "PsiNABANB");
  CHECK(ex2->state_name(ex2->resolve_state(WorldSet{})) == "PsiBot");

  auto [ex1, op1] = build_example1();
  CHECK_THROWS_AS(ex1->resolve_state(WS(ex1->sig(), {"-a"})),
                  NoSuchBeliefState);
  CHECK(!ex1->find_state(WS(ex1->sig(), {"-a"})));

  // duplicate belief sets resolve to the first declaration
  Signature sa({"a"});
  EpistemicSpace dup("dup", sa, {"X", "Y"}, {WS(sa, {"a"}), WS(sa, {"a"})});
  CHECK(dup.resolve_state(WS(sa, {"a"})).value == 0);
}

TEST_CASE("resolve_state round-trips every state's belief set") {
  for (const SpacePtr& sp :
       {build_example1().first, build_example2().first, three_state_space()}) {
    for (int i = 0; i < sp->state_count(); ++i) {
      StateId s{i};
      CHECK(sp->bel(sp->resolve_state(sp->bel(s))) == sp->bel(s));
    }
  }
}

TEST_CASE("space construction rejects bad shapes") {
  Signature sa({"a"});
  CHECK_THROWS_AS(EpistemicSpace("e", sa, {}, {}), Error);
  CHECK_THROWS_AS(
      EpistemicSpace("e", sa, {"X", "X"}, {WorldSet{}, WorldSet{}}), Error);
  CHECK_THROWS_AS(EpistemicSpace("e", sa, {"X"}, {WorldSet{0xff}}), Error);
}

TEST_CASE("space text format round-trips") {
  auto [ex2, op2] = build_example2();
  std::istringstream in(format_space(*ex2));
  SpacePtr back = load_space(in, "ex2", "<memory>");
  CHECK(back->state_count() == ex2->state_count());
  CHECK(back->sig() == ex2->sig());
  for (int i = 0; i < ex2->state_count(); ++i) {
    CHECK(back->state_name(StateId{i}) == ex2->state_name(StateId{i}));
    CHECK(back->bel(StateId{i}) == ex2->bel(StateId{i}));
  }
}

TEST_CASE("space loader diagnostics name file and line") {
  auto load = [](const std::string& text) {
    std::istringstream in(text);
    return load_space(in, "t", "t.space");
  };
  CHECK_NOTHROW(load("# comment\nsig a b\nstate X models: ab\n"));
  CHECK_THROWS_AS(load("state X models: a\nsig a\n"), FormatError);
  CHECK_THROWS_AS(load("sig a\nbogus X\n"), FormatError);
  CHECK_THROWS_AS(load("sig a\nstate X worlds: a\n"), FormatError);
  CHECK_THROWS_AS(load("sig a\nstate X models: q\n"), FormatError);
  CHECK_THROWS_AS(load(""), FormatError);
  try {
    load("sig a\nstate X models: a\nnope\n");
    FAIL("expected FormatError");
  } catch (const FormatError& e) {
    CHECK(e.file == "t.space");
    CHECK(e.line == 3);
  }
}
