#pragma once

#include <initializer_list>
#include <memory>
#include <random>

#include "epispace/modelcheck.hpp"

namespace epispace::testing {

inline Interpretation W(const Signature& sig, const char* text) {
  return parse_world(sig, text);
}

inline WorldSet WS(const Signature& sig,
                   std::initializer_list<const char*> worlds) {
  WorldSet s;
  for (const char* w : worlds) s = s | WorldSet::of(parse_world(sig, w));
  return s;
}

// Globally consistent space over {a} with belief sets {a}, {-a}, {a,-a}.
inline SpacePtr three_state_space() {
  Signature sig({"a"});
  return std::make_shared<EpistemicSpace>(
      "tri", sig, std::vector<std::string>{"PsiA", "PsiNA", "PsiT"},
      std::vector<WorldSet>{WS(sig, {"a"}), WS(sig, {"-a"}),
                            WS(sig, {"a", "-a"})});
}

inline Formula random_formula(std::mt19937_64& rng, const Signature& sig,
                              int depth) {
  if (depth == 0) {
    switch (rng() % 4) {
      case 0:
      case 1:
        return Formula::atom(static_cast<int>(rng() % sig.arity()));
      case 2:
        return Formula::top();
      default:
        return Formula::bot();
    }
  }
  switch (rng() % 8) {
    case 0:
      return Formula::atom(static_cast<int>(rng() % sig.arity()));
    case 1:
      return Formula::top();
    case 2:
      return Formula::bot();
    case 3:
      return Formula::negation(random_formula(rng, sig, depth - 1));
    case 4:
      return Formula::conj(random_formula(rng, sig, depth - 1),
                           random_formula(rng, sig, depth - 1));
    case 5:
      return Formula::disj(random_formula(rng, sig, depth - 1),
                           random_formula(rng, sig, depth - 1));
    case 6:
      return Formula::implies(random_formula(rng, sig, depth - 1),
                              random_formula(rng, sig, depth - 1));
    default:
      return Formula::iff(random_formula(rng, sig, depth - 1),
                          random_formula(rng, sig, depth - 1));
  }
}

// A syntactically different formula with the same models.
inline Formula equivalent_variant(std::mt19937_64& rng, const Formula& f) {
  switch (rng() % 4) {
    case 0:
      return Formula::negation(Formula::negation(f));
    case 1:
      return Formula::conj(f, Formula::top());
    case 2:
      return Formula::disj(f, Formula::bot());
    default:
      return Formula::conj(f, f);
  }
}

}  // namespace epispace::testing
