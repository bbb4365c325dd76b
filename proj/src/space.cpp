#include "epispace/space.hpp"

#include <fstream>
#include <sstream>

namespace epispace {

EpistemicSpace::EpistemicSpace(std::string name, Signature sig,
                               std::vector<std::string> state_names,
                               std::vector<WorldSet> beliefs)
    : name_(std::move(name)),
      sig_(std::move(sig)),
      state_names_(std::move(state_names)),
      beliefs_(std::move(beliefs)) {
  if (state_names_.empty()) {
    throw Error("epistemic space '" + name_ + "' has no states");
  }
  if (state_names_.size() != beliefs_.size()) {
    throw Error("state/belief count mismatch in space '" + name_ + "'");
  }
  for (std::size_t i = 0; i < state_names_.size(); ++i) {
    for (std::size_t j = i + 1; j < state_names_.size(); ++j) {
      if (state_names_[i] == state_names_[j]) {
        throw Error("duplicate state name '" + state_names_[i] + "'");
      }
    }
  }
  const WorldSet omega = all_worlds(sig_);
  for (WorldSet b : beliefs_) {
    if (!b.subset_of(omega)) {
      throw Error("belief set uses worlds outside the signature");
    }
  }
}

std::optional<StateId> EpistemicSpace::state_by_name(
    std::string_view name) const {
  for (std::size_t i = 0; i < state_names_.size(); ++i) {
    if (state_names_[i] == name) return StateId{static_cast<int>(i)};
  }
  return std::nullopt;
}

bool EpistemicSpace::globally_consistent() const {
  for (WorldSet b : beliefs_) {
    if (b.empty()) return false;
  }
  return true;
}

std::optional<StateId> EpistemicSpace::find_state(WorldSet target) const {
  for (std::size_t i = 0; i < beliefs_.size(); ++i) {
    if (beliefs_[i] == target) return StateId{static_cast<int>(i)};
  }
  return std::nullopt;
}

StateId EpistemicSpace::resolve_state(WorldSet target) const {
  if (auto s = find_state(target)) return *s;
  throw NoSuchBeliefState("space '" + name_ + "' has no state with belief set " +
                          print_world_set(sig_, target));
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

SpacePtr load_space(std::istream& in, const std::string& name,
                    const std::string& diagnostic_name) {
  std::optional<Signature> sig;
  std::vector<std::string> state_names;
  std::vector<WorldSet> beliefs;

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto tokens = tokenize(line);
    if (tokens.empty()) continue;
    if (tokens[0] == "sig") {
      if (sig) throw FormatError(diagnostic_name, lineno, "duplicate 'sig' line");
      if (tokens.size() < 2) {
        throw FormatError(diagnostic_name, lineno, "'sig' needs atom names");
      }
      try {
        sig.emplace(std::vector<std::string>(tokens.begin() + 1, tokens.end()));
      } catch (const Error& e) {
        throw FormatError(diagnostic_name, lineno, e.what());
      }
      continue;
    }
    if (tokens[0] == "state") {
      if (!sig) {
        throw FormatError(diagnostic_name, lineno, "'state' before 'sig'");
      }
      if (tokens.size() < 3 || tokens[2] != "models:") {
        throw FormatError(diagnostic_name, lineno,
                          "expected 'state <name> models: ...'");
      }
      WorldSet b;
      for (std::size_t i = 3; i < tokens.size(); ++i) {
        try {
          b = b | WorldSet::of(parse_world(*sig, tokens[i]));
        } catch (const ParseError& e) {
          throw FormatError(diagnostic_name, lineno, e.what());
        }
      }
      state_names.push_back(tokens[1]);
      beliefs.push_back(b);
      continue;
    }
    throw FormatError(diagnostic_name, lineno,
                      "unknown directive '" + tokens[0] + "'");
  }
  if (!sig) throw FormatError(diagnostic_name, lineno, "missing 'sig' line");
  try {
    return std::make_shared<EpistemicSpace>(name, *sig, std::move(state_names),
                                            std::move(beliefs));
  } catch (const Error& e) {
    throw FormatError(diagnostic_name, lineno, e.what());
  }
}

namespace {

std::string file_stem(const std::string& path) {
  auto slash = path.find_last_of("/\\");
  std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
  auto dot = base.find_last_of('.');
  return dot == std::string::npos ? base : base.substr(0, dot);
}

}  // namespace

SpacePtr load_space_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError(path, 0, "cannot open file");
  return load_space(in, file_stem(path), path);
}

std::string format_space(const EpistemicSpace& sp) {
  std::string out = "sig";
  for (const auto& a : sp.sig().atoms()) out += " " + a;
  out += '\n';
  for (int i = 0; i < sp.state_count(); ++i) {
    StateId s{i};
    out += "state " + sp.state_name(s) + " models:";
    WorldSet b = sp.bel(s);
    for (int w = 0; w < sp.sig().world_count(); ++w) {
      Interpretation iw{static_cast<unsigned>(w)};
      if (b.contains(iw)) out += " " + print_world(sp.sig(), iw);
    }
    out += '\n';
  }
  return out;
}

}  // namespace epispace
