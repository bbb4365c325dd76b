#include "epispace/assignments.hpp"

#include <fstream>
#include <sstream>

namespace epispace {

// ---------------------------------------------------------------------------
// TotalPreorder

TotalPreorder TotalPreorder::from_layers(std::vector<WorldSet> layers) {
  TotalPreorder ord;
  for (const WorldSet& layer : layers) {
    if (layer.empty()) throw Error("preorder layer must be non-empty");
    if (!(layer & ord.domain_).empty()) {
      throw Error("preorder layers must be pairwise disjoint");
    }
    ord.domain_ = ord.domain_ | layer;
  }
  ord.layers_ = std::move(layers);
  return ord;
}

int TotalPreorder::layer_of(Interpretation w) const {
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    if (layers_[i].contains(w)) return static_cast<int>(i);
  }
  return -1;
}

bool TotalPreorder::leq(Interpretation w1, Interpretation w2) const {
  int l1 = layer_of(w1), l2 = layer_of(w2);
  if (l1 < 0 || l2 < 0) {
    throw DomainError("world outside the preorder domain");
  }
  return l1 <= l2;
}

bool TotalPreorder::equiv(Interpretation w1, Interpretation w2) const {
  return leq(w1, w2) && leq(w2, w1);
}

bool TotalPreorder::strictly_less(Interpretation w1, Interpretation w2) const {
  return leq(w1, w2) && !leq(w2, w1);
}

WorldSet TotalPreorder::min_of(WorldSet x) const {
  if (!x.subset_of(domain_)) {
    throw DomainError("min over a set outside the preorder domain");
  }
  for (const WorldSet& layer : layers_) {
    WorldSet hit = layer & x;
    if (!hit.empty()) return hit;
  }
  return WorldSet{};
}

// ---------------------------------------------------------------------------
// Assignment validity and faithfulness

void validate_assignment(const EpistemicSpace& sp, const Assignment& a) {
  if (a.size() != sp.state_count()) {
    throw ConstraintViolation(
        "assignment covers " + std::to_string(a.size()) + " states, space '" +
        sp.name() + "' has " + std::to_string(sp.state_count()));
  }
  const WorldSet omega = all_worlds(sp.sig());
  for (int i = 0; i < sp.state_count(); ++i) {
    const StateId s{i};
    const StateAssignment& sa = a.at(s);
    const std::string where = " at state '" + sp.state_name(s) + "'";
    if (!sa.credible.subset_of(omega)) {
      throw ConstraintViolation("credible set outside the signature" + where);
    }
    if (sa.order.domain() != sa.credible) {
      throw ConstraintViolation("preorder domain differs from C" + where);
    }
    if (!sp.bel(s).subset_of(sa.credible)) {
      throw ConstraintViolation("belief set not contained in C" + where);
    }
    if (sa.bot_credible && sa.credible != omega) {
      throw ConstraintViolation("b = bot requires C = Omega" + where);
    }
  }
}

CheckResult is_faithful(const EpistemicSpace& sp, const Assignment& a) {
  validate_assignment(sp, a);
  const int wc = sp.sig().world_count();
  for (int i = 0; i < sp.state_count(); ++i) {
    const StateId s{i};
    const WorldSet bel = sp.bel(s);
    if (bel.empty()) continue;  // no constraint on inconsistent states
    const TotalPreorder& ord = a.at(s).order;
    for (int x = 0; x < wc; ++x) {
      const Interpretation w1{static_cast<unsigned>(x)};
      if (!bel.contains(w1)) continue;
      for (int y = 0; y < wc; ++y) {
        const Interpretation w2{static_cast<unsigned>(y)};
        if (!a.at(s).credible.contains(w2)) continue;
        bool ok = bel.contains(w2) ? ord.equiv(w1, w2)
                                   : ord.strictly_less(w1, w2);
        if (!ok) {
          return CheckResult{
              PostulateId::Faithful, Verdict::Violated,
              Witness{s, WorldSet::of(w1), WorldSet::of(w2)}};
        }
      }
    }
  }
  return CheckResult{PostulateId::Faithful, Verdict::Satisfied, std::nullopt};
}

// ---------------------------------------------------------------------------
// Example 2 fixture assignment

Assignment example2_assignment(const EpistemicSpace& sp) {
  const Signature& sig = sp.sig();
  if (sig.atoms() != std::vector<std::string>{"a", "b"} ||
      sp.state_count() != 6) {
    throw Error("example2_assignment needs the six-state example space");
  }
  const WorldSet ab{0b1000}, nab{0b0100}, anb{0b0010}, nanb{0b0001};

  std::vector<StateAssignment> per_state(6);
  // PsiBot: nothing credible.
  per_state[0] = {WorldSet{}, TotalPreorder{}, false};
  // PsiAB: everything credible, inconsistent input included.
  per_state[1] = {all_worlds(sig),
                  TotalPreorder::from_layers({ab, nab, anb, nanb}), true};
  // PsiNAB: only its own world.
  per_state[2] = {nab, TotalPreorder::from_layers({nab}), false};
  // PsiANB: its world below ab.
  per_state[3] = {ab | anb, TotalPreorder::from_layers({anb, ab}), false};
  // PsiNANB: -ab and a-b tied above the belief world.
  per_state[4] = {nab | anb | nanb,
                  TotalPreorder::from_layers({nanb, nab | anb}), false};
  // PsiNABANB: belief pair below -a-b.
  per_state[5] = {nab | anb | nanb,
                  TotalPreorder::from_layers({nab | anb, nanb}), false};
  return Assignment(std::move(per_state));
}

// ---------------------------------------------------------------------------
// Synthesis (assignment -> operator)

namespace {

// The three-case revision rule: the target belief set for one input.
WorldSet compatible_target(WorldSet bel, const StateAssignment& sa,
                           WorldSet input) {
  const WorldSet credible_part = input & sa.credible;
  if (!credible_part.empty()) return sa.order.min_of(credible_part);
  if (input.empty() && sa.bot_credible) return WorldSet{};
  return bel;
}

}  // namespace

std::optional<SemanticOperator> try_synthesize(const SpacePtr& sp,
                                               const Assignment& a,
                                               SynthesisFailure* failure) {
  validate_assignment(*sp, a);
  const int inputs = 1 << sp->sig().world_count();
  std::vector<StateId> table(
      static_cast<std::size_t>(sp->state_count()) * inputs);
  for (int i = 0; i < sp->state_count(); ++i) {
    const StateId s{i};
    for (int m = 0; m < inputs; ++m) {
      const WorldSet input{static_cast<std::uint32_t>(m)};
      const WorldSet target =
          compatible_target(sp->bel(s), a.at(s), input);
      auto t = sp->find_state(target);
      if (!t) {
        if (failure) *failure = SynthesisFailure{s, input, target};
        return std::nullopt;
      }
      table[static_cast<std::size_t>(i) * inputs + m] = *t;
    }
  }
  return SemanticOperator(sp, std::move(table));
}

SemanticOperator synthesize(const SpacePtr& sp, const Assignment& a) {
  SynthesisFailure why{};
  if (auto op = try_synthesize(sp, a, &why)) return std::move(*op);
  throw NoSuchBeliefState(
      "cannot synthesize: no state with belief set " +
      print_world_set(sp->sig(), why.target) + " (needed at state '" +
      sp->state_name(why.state) + "', input " +
      print_world_set(sp->sig(), why.input) + ")");
}

// ---------------------------------------------------------------------------
// Extraction (operator -> assignment)

Assignment extract(const SemanticOperator& op) {
  const EpistemicSpace& sp = op.space();
  const int wc = sp.sig().world_count();
  std::vector<StateAssignment> per_state(sp.state_count());

  for (int i = 0; i < sp.state_count(); ++i) {
    const StateId s{i};
    const std::string where = " at state '" + sp.state_name(s) + "'";

    // C collects the worlds whose minterm input is accepted exactly.
    WorldSet credible;
    for (int w = 0; w < wc; ++w) {
      const WorldSet singleton{1u << w};
      if (op.out(s, singleton) == singleton) {
        credible = credible | singleton;
      }
    }
    if (!sp.bel(s).subset_of(credible)) {
      throw ConstraintViolation("belief set not contained in extracted C" +
                                where);
    }

    const bool bot_credible =
        !sp.bel(s).empty() && op.out(s, WorldSet{}).empty();
    if (bot_credible && credible != all_worlds(sp.sig())) {
      throw ConstraintViolation("extracted b = bot but C != Omega" + where);
    }

    // Pairwise relation on C: w1 below w2 iff revising by {w1,w2} keeps w1.
    auto leq = [&](int w1, int w2) {
      const WorldSet pair = WorldSet{1u << w1} | WorldSet{1u << w2};
      return op.out(s, pair).contains(Interpretation{static_cast<unsigned>(w1)});
    };

    // Peel minimal elements into layers, then confirm the layered order
    // reproduces the relation; any mismatch means the relation was not a
    // total preorder.
    std::vector<WorldSet> layers;
    WorldSet rest = credible;
    while (!rest.empty()) {
      WorldSet layer;
      for (int w1 = 0; w1 < wc; ++w1) {
        if (!rest.contains(Interpretation{static_cast<unsigned>(w1)})) continue;
        bool minimal = true;
        for (int w2 = 0; w2 < wc && minimal; ++w2) {
          if (!rest.contains(Interpretation{static_cast<unsigned>(w2)})) continue;
          minimal = leq(w1, w2);
        }
        if (minimal) layer = layer | WorldSet{1u << w1};
      }
      if (layer.empty()) {
        throw NotAPreorder("extracted relation has no minimal element" + where);
      }
      layers.push_back(layer);
      rest = rest.minus(layer);
    }
    TotalPreorder ord = TotalPreorder::from_layers(std::move(layers));
    for (int w1 = 0; w1 < wc; ++w1) {
      for (int w2 = 0; w2 < wc; ++w2) {
        const Interpretation i1{static_cast<unsigned>(w1)};
        const Interpretation i2{static_cast<unsigned>(w2)};
        if (!credible.contains(i1) || !credible.contains(i2)) continue;
        if (leq(w1, w2) != ord.leq(i1, i2)) {
          throw NotAPreorder("extracted relation is not total/transitive" +
                             where);
        }
      }
    }

    per_state[i] = StateAssignment{credible, std::move(ord), bot_credible};
  }
  return Assignment(std::move(per_state));
}

// ---------------------------------------------------------------------------
// Compatibility

CheckResult is_compatible(const Assignment& a, const SemanticOperator& op) {
  const EpistemicSpace& sp = op.space();
  validate_assignment(sp, a);
  const int inputs = op.input_count();
  for (int i = 0; i < sp.state_count(); ++i) {
    const StateId s{i};
    for (int m = inputs - 1; m >= 0; --m) {
      const WorldSet input{static_cast<std::uint32_t>(m)};
      if (op.out(s, input) != compatible_target(sp.bel(s), a.at(s), input)) {
        return CheckResult{PostulateId::RevisionCompatible, Verdict::Violated,
                           Witness{s, input, std::nullopt}};
      }
    }
  }
  return CheckResult{PostulateId::RevisionCompatible, Verdict::Satisfied,
                     std::nullopt};
}

// ---------------------------------------------------------------------------
// Text format

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) {
    if (tok[0] == '#') break;
    tokens.push_back(tok);
  }
  return tokens;
}

}  // namespace

Assignment load_assignment(std::istream& in, const EpistemicSpace& sp,
                           const std::string& diagnostic_name) {
  std::vector<std::optional<StateAssignment>> slots(sp.state_count());
  bool header_seen = false;

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto tokens = tokenize(line);
    if (tokens.empty()) continue;
    if (tokens[0] == "assign") {
      if (tokens.size() != 3 || tokens[1] != "for") {
        throw FormatError(diagnostic_name, lineno,
                          "expected 'assign for <space>'");
      }
      if (tokens[2] != sp.name()) {
        throw FormatError(diagnostic_name, lineno,
                          "assignment is for space '" + tokens[2] +
                              "', loaded space is '" + sp.name() + "'");
      }
      header_seen = true;
      continue;
    }
    if (tokens[0] != "state") {
      throw FormatError(diagnostic_name, lineno,
                        "unknown directive '" + tokens[0] + "'");
    }
    if (tokens.size() < 5 || tokens[2] != "b:") {
      throw FormatError(diagnostic_name, lineno,
                        "expected 'state <name> b: <top|bot> C: ... order: ...'");
    }
    auto state = sp.state_by_name(tokens[1]);
    if (!state) {
      throw FormatError(diagnostic_name, lineno,
                        "unknown state '" + tokens[1] + "'");
    }
    if (slots[state->value]) {
      throw FormatError(diagnostic_name, lineno,
                        "duplicate entry for state '" + tokens[1] + "'");
    }
    bool bot_credible;
    if (tokens[3] == "bot") {
      bot_credible = true;
    } else if (tokens[3] == "top") {
      bot_credible = false;
    } else {
      throw FormatError(diagnostic_name, lineno,
                        "b: must be 'top' or 'bot', got '" + tokens[3] + "'");
    }
    std::size_t i = 4;
    if (i >= tokens.size() || tokens[i] != "C:") {
      throw FormatError(diagnostic_name, lineno, "expected 'C:'");
    }
    ++i;
    WorldSet credible;
    while (i < tokens.size() && tokens[i] != "order:") {
      try {
        credible = credible | WorldSet::of(parse_world(sp.sig(), tokens[i]));
      } catch (const ParseError& e) {
        throw FormatError(diagnostic_name, lineno, e.what());
      }
      ++i;
    }
    if (i >= tokens.size()) {
      throw FormatError(diagnostic_name, lineno, "expected 'order:'");
    }
    ++i;
    std::vector<WorldSet> layers;
    std::optional<WorldSet> open;  // layer being read
    for (; i < tokens.size(); ++i) {
      std::string tok = tokens[i];
      if (tok.front() == '[') {
        if (open) {
          throw FormatError(diagnostic_name, lineno, "nested '[' in order");
        }
        open = WorldSet{};
        tok = tok.substr(1);
      }
      if (!open) {
        throw FormatError(diagnostic_name, lineno,
                          "stray token '" + tokens[i] + "' in order");
      }
      bool closes = !tok.empty() && tok.back() == ']';
      if (closes) tok = tok.substr(0, tok.size() - 1);
      if (!tok.empty()) {
        try {
          *open = *open | WorldSet::of(parse_world(sp.sig(), tok));
        } catch (const ParseError& e) {
          throw FormatError(diagnostic_name, lineno, e.what());
        }
      }
      if (closes) {
        if (open->empty()) {
          throw FormatError(diagnostic_name, lineno, "empty layer in order");
        }
        layers.push_back(*open);
        open.reset();
      }
    }
    if (open) {
      throw FormatError(diagnostic_name, lineno, "unterminated '[' in order");
    }
    TotalPreorder ord;
    try {
      ord = TotalPreorder::from_layers(std::move(layers));
    } catch (const Error& e) {
      throw FormatError(diagnostic_name, lineno, e.what());
    }
    if (ord.domain() != credible) {
      throw FormatError(diagnostic_name, lineno,
                        "order layers must partition C");
    }
    slots[state->value] = StateAssignment{credible, std::move(ord), bot_credible};
  }
  if (!header_seen) {
    throw FormatError(diagnostic_name, lineno,
                      "missing 'assign for <space>' line");
  }
  std::vector<StateAssignment> per_state;
  per_state.reserve(slots.size());
  for (int i = 0; i < sp.state_count(); ++i) {
    if (!slots[i]) {
      throw FormatError(diagnostic_name, lineno,
                        "missing entry for state '" +
                            sp.state_name(StateId{i}) + "'");
    }
    per_state.push_back(std::move(*slots[i]));
  }
  Assignment a(std::move(per_state));
  try {
    validate_assignment(sp, a);
  } catch (const Error& e) {
    throw FormatError(diagnostic_name, lineno, e.what());
  }
  return a;
}

Assignment load_assignment_file(const std::string& path,
                                const EpistemicSpace& sp) {
  std::ifstream in(path);
  if (!in) throw FormatError(path, 0, "cannot open file");
  return load_assignment(in, sp, path);
}

std::string format_assignment(const EpistemicSpace& sp, const Assignment& a) {
  const Signature& sig = sp.sig();
  std::string out = "assign for " + sp.name() + "\n";
  for (int i = 0; i < sp.state_count(); ++i) {
    const StateId s{i};
    const StateAssignment& sa = a.at(s);
    out += "state " + sp.state_name(s) + " b: " +
           (sa.bot_credible ? "bot" : "top") + " C:";
    for (int w = 0; w < sig.world_count(); ++w) {
      Interpretation iw{static_cast<unsigned>(w)};
      if (sa.credible.contains(iw)) out += " " + print_world(sig, iw);
    }
    out += " order:";
    for (const WorldSet& layer : sa.order.layers()) {
      out += " [";
      bool first = true;
      for (int w = 0; w < sig.world_count(); ++w) {
        Interpretation iw{static_cast<unsigned>(w)};
        if (!layer.contains(iw)) continue;
        if (!first) out += ' ';
        out += print_world(sig, iw);
        first = false;
      }
      out += "]";
    }
    out += "\n";
  }
  return out;
}

}  // namespace epispace
