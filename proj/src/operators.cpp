#include "epispace/operators.hpp"

#include <fstream>
#include <sstream>

namespace epispace {

SemanticOperator::SemanticOperator(SpacePtr space, std::vector<StateId> table)
    : space_(std::move(space)),
      inputs_(std::size_t{1} << space_->sig().world_count()),
      table_(std::move(table)) {
  const std::size_t expected = inputs_ * space_->state_count();
  if (table_.size() != expected) {
    throw Error("operator table has " + std::to_string(table_.size()) +
                " entries, expected " + std::to_string(expected));
  }
  for (StateId t : table_) {
    if (t.value < 0 || t.value >= space_->state_count()) {
      throw Error("operator table entry points outside the state set");
    }
  }
}

StateId SemanticOperator::apply(StateId s, const Formula& f) const {
  return step(s, models(f, space_->sig()));
}

std::vector<StateId> SemanticOperator::canonical_table() const {
  std::vector<StateId> canon(space_->state_count());
  for (int i = 0; i < space_->state_count(); ++i) {
    canon[i] = *space_->find_state(space_->bel(StateId{i}));
  }
  std::vector<StateId> result(table_.size());
  for (std::size_t i = 0; i < table_.size(); ++i) {
    result[i] = canon[table_[i].value];
  }
  return result;
}

bool SemanticOperator::equivalent_to(const SemanticOperator& other) const {
  return canonical_table() == other.canonical_table();
}

// ---------------------------------------------------------------------------
// Worked examples

std::pair<SpacePtr, SemanticOperator> build_example1() {
  Signature sig({"a"});
  // PsiA first: iteration order over states is part of the fixture.
  auto space = std::make_shared<EpistemicSpace>(
      "ex1", sig, std::vector<std::string>{"PsiA", "PsiBot"},
      std::vector<WorldSet>{WorldSet{0b10}, WorldSet{}});
  const StateId psi_a{0}, psi_bot{1};
  const WorldSet set_a{0b10};
  const WorldSet omega = all_worlds(sig);

  std::vector<StateId> table(2 * 4);
  for (int s = 0; s < 2; ++s) {
    for (std::uint32_t m = 0; m < 4; ++m) {
      WorldSet input{m};
      StateId target;
      if (input == set_a) {
        target = psi_a;
      } else if (input == omega) {
        target = StateId{s};
      } else {
        target = psi_bot;  // input {-a} or the empty set
      }
      table[s * 4 + m] = target;
    }
  }
  SemanticOperator op(space, std::move(table));
  return {space, std::move(op)};
}

std::pair<SpacePtr, SemanticOperator> build_example2() {
  Signature sig({"a", "b"});
  // World indices: bit 0 = a, bit 1 = b.
  const Interpretation w_ab{3}, w_nab{2}, w_anb{1}, w_nanb{0};
  const WorldSet s_ab = WorldSet::of(w_ab);
  const WorldSet s_nab = WorldSet::of(w_nab);
  const WorldSet s_anb = WorldSet::of(w_anb);
  const WorldSet s_nanb = WorldSet::of(w_nanb);

  auto space = std::make_shared<EpistemicSpace>(
      "ex2", sig,
      std::vector<std::string>{"PsiBot", "PsiAB", "PsiNAB", "PsiANB",
                               "PsiNANB", "PsiNABANB"},
      std::vector<WorldSet>{WorldSet{}, s_ab, s_nab, s_anb, s_nanb,
                            s_nab | s_anb});
  const StateId psi_bot{0}, psi_ab{1}, psi_nanb{4}, psi_nabanb{5};

  // Fixed linear world order ab << -ab << a-b << -a-b.
  const Interpretation order[] = {w_ab, w_nab, w_anb, w_nanb};
  // Credible sets, per state.
  const WorldSet credible[] = {
      WorldSet{},           // PsiBot
      all_worlds(sig),      // PsiAB
      s_nab,                // PsiNAB
      s_ab | s_anb,         // PsiANB
      s_nab | s_anb | s_nanb,  // PsiNANB
      s_nab | s_anb | s_nanb,  // PsiNABANB
  };

  const int wc = sig.world_count();
  std::vector<StateId> table(6 * (1 << wc));
  for (int s = 0; s < 6; ++s) {
    const StateId state{s};
    const WorldSet bel = space->bel(state);
    for (std::uint32_t m = 0; m < (1u << wc); ++m) {
      const WorldSet input{m};
      StateId target;
      if (!(bel & input).empty()) {
        target = space->resolve_state(bel & input);
      } else if (input.empty() && state == psi_ab) {
        target = psi_bot;
      } else if (state == psi_nanb && (s_nab | s_anb).subset_of(input)) {
        target = psi_nabanb;
      } else if (!(input & credible[s]).empty()) {
        WorldSet least;
        for (Interpretation w : order) {
          if ((input & credible[s]).contains(w)) {
            least = WorldSet::of(w);
            break;
          }
        }
        target = space->resolve_state(least);
      } else {
        target = state;
      }
      table[s * (1 << wc) + m] = target;
    }
  }
  SemanticOperator op(space, std::move(table));
  return {space, std::move(op)};
}

// ---------------------------------------------------------------------------
// Graph export

std::vector<std::pair<StateId, StateId>> edge_relation(
    const SemanticOperator& op) {
  const EpistemicSpace& sp = op.space();
  std::vector<std::pair<StateId, StateId>> edges;
  for (int s = 0; s < sp.state_count(); ++s) {
    std::vector<bool> seen(sp.state_count(), false);
    for (int m = 0; m < op.input_count(); ++m) {
      StateId t = op.step(StateId{s}, WorldSet{static_cast<std::uint32_t>(m)});
      if (!seen[t.value]) {
        seen[t.value] = true;
        edges.emplace_back(StateId{s}, t);
      }
    }
  }
  return edges;
}

std::string to_dot(const SemanticOperator& op) {
  const EpistemicSpace& sp = op.space();
  const Signature& sig = sp.sig();
  std::string out = "digraph \"" + sp.name() + "\" {\n  rankdir=LR;\n";
  for (int s = 0; s < sp.state_count(); ++s) {
    out += "  \"" + sp.state_name(StateId{s}) + "\" [shape=box];\n";
  }
  for (int s = 0; s < sp.state_count(); ++s) {
    const StateId src{s};
    bool has_self = false;
    for (int t = 0; t < sp.state_count(); ++t) {
      if (t == s) continue;
      std::string label;
      for (int m = 0; m < op.input_count(); ++m) {
        const WorldSet input{static_cast<std::uint32_t>(m)};
        if (op.step(src, input) != StateId{t}) continue;
        if (!label.empty()) label += ", ";
        label += print_formula(minimal_dnf(input, sig), sig);
      }
      if (label.empty()) continue;
      out += "  \"" + sp.state_name(src) + "\" -> \"" +
             sp.state_name(StateId{t}) + "\" [label=\"" + label + "\"];\n";
    }
    for (int m = 0; m < op.input_count() && !has_self; ++m) {
      has_self = op.step(src, WorldSet{static_cast<std::uint32_t>(m)}) == src;
    }
    if (has_self) {
      // All inputs not drawn on another edge loop back here.
      out += "  \"" + sp.state_name(src) + "\" -> \"" + sp.state_name(src) +
             "\" [label=\"*\"];\n";
    }
  }
  out += "}\n";
  return out;
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

SemanticOperator load_operator(std::istream& in, SpacePtr space,
                               const std::string& diagnostic_name) {
  const int inputs = 1 << space->sig().world_count();
  std::vector<StateId> table(
      static_cast<std::size_t>(space->state_count()) * inputs, StateId{-1});
  bool header_seen = false;

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto tokens = tokenize(line);
    if (tokens.empty()) continue;
    if (tokens[0] == "op") {
      if (tokens.size() != 3 || tokens[1] != "for") {
        throw FormatError(diagnostic_name, lineno, "expected 'op for <space>'");
      }
      if (tokens[2] != space->name()) {
        throw FormatError(diagnostic_name, lineno,
                          "operator is for space '" + tokens[2] +
                              "', loaded space is '" + space->name() + "'");
      }
      header_seen = true;
      continue;
    }
    if (tokens[0] == "row") {
      if (tokens.size() < 5 || tokens[2] != "input:") {
        throw FormatError(diagnostic_name, lineno,
                          "expected 'row <state> input: <worlds> -> <state>'");
      }
      auto src = space->state_by_name(tokens[1]);
      if (!src) {
        throw FormatError(diagnostic_name, lineno,
                          "unknown state '" + tokens[1] + "'");
      }
      std::size_t i = 3;
      WorldSet input;
      if (tokens[i] == "(empty)") {
        ++i;
      } else {
        while (i < tokens.size() && tokens[i] != "->") {
          try {
            input = input | WorldSet::of(parse_world(space->sig(), tokens[i]));
          } catch (const ParseError& e) {
            throw FormatError(diagnostic_name, lineno, e.what());
          }
          ++i;
        }
        if (input.empty()) {
          throw FormatError(diagnostic_name, lineno,
                            "empty input list; use '(empty)'");
        }
      }
      if (i + 2 != tokens.size() || tokens[i] != "->") {
        throw FormatError(diagnostic_name, lineno,
                          "expected '-> <state>' after the input list");
      }
      auto dst = space->state_by_name(tokens[i + 1]);
      if (!dst) {
        throw FormatError(diagnostic_name, lineno,
                          "unknown state '" + tokens[i + 1] + "'");
      }
      StateId& cell = table[static_cast<std::size_t>(src->value) * inputs +
                            input.bits];
      if (cell.value != -1) {
        throw FormatError(diagnostic_name, lineno,
                          "duplicate row for state '" + tokens[1] +
                              "', input " +
                              print_world_set(space->sig(), input));
      }
      cell = *dst;
      continue;
    }
    throw FormatError(diagnostic_name, lineno,
                      "unknown directive '" + tokens[0] + "'");
  }
  if (!header_seen) {
    throw FormatError(diagnostic_name, lineno, "missing 'op for <space>' line");
  }
  for (int s = 0; s < space->state_count(); ++s) {
    for (int m = 0; m < inputs; ++m) {
      if (table[static_cast<std::size_t>(s) * inputs + m].value == -1) {
        throw FormatError(
            diagnostic_name, lineno,
            "missing row for state '" + space->state_name(StateId{s}) +
                "', input " +
                print_world_set(space->sig(),
                                WorldSet{static_cast<std::uint32_t>(m)}));
      }
    }
  }
  return SemanticOperator(std::move(space), std::move(table));
}

SemanticOperator load_operator_file(const std::string& path, SpacePtr space) {
  std::ifstream in(path);
  if (!in) throw FormatError(path, 0, "cannot open file");
  return load_operator(in, std::move(space), path);
}

std::string format_operator(const SemanticOperator& op) {
  const EpistemicSpace& sp = op.space();
  std::string out = "op for " + sp.name() + "\n";
  for (int s = 0; s < sp.state_count(); ++s) {
    for (int m = 0; m < op.input_count(); ++m) {
      const WorldSet input{static_cast<std::uint32_t>(m)};
      out += "row " + sp.state_name(StateId{s}) + " input:";
      if (input.empty()) {
        out += " (empty)";
      } else {
        for (int w = 0; w < sp.sig().world_count(); ++w) {
          Interpretation iw{static_cast<unsigned>(w)};
          if (input.contains(iw)) out += " " + print_world(sp.sig(), iw);
        }
      }
      out += " -> " + sp.state_name(op.step(StateId{s}, input)) + "\n";
    }
  }
  return out;
}

}  // namespace epispace
