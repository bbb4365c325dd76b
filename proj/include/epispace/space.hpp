#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "epispace/logic.hpp"

namespace epispace {

// Index of an epistemic state within its space. Indices are dense 0..n-1.
struct StateId {
  int value = -1;
  auto operator<=>(const StateId&) const = default;
};

// A finite epistemic space: named states plus their belief sets, held as
// model sets. Distinct states may share a belief set. Immutable after
// construction.
class EpistemicSpace {
 public:
  EpistemicSpace(std::string name, Signature sig,
                 std::vector<std::string> state_names,
                 std::vector<WorldSet> beliefs);

  const std::string& name() const { return name_; }
  const Signature& sig() const { return sig_; }
  int state_count() const { return static_cast<int>(beliefs_.size()); }
  const std::string& state_name(StateId s) const {
    return state_names_[s.value];
  }
  std::optional<StateId> state_by_name(std::string_view name) const;
  WorldSet bel(StateId s) const { return beliefs_[s.value]; }

  // True iff no state has an empty belief set.
  bool globally_consistent() const;

  // Lowest-index state whose belief set equals `target`, if any.
  std::optional<StateId> find_state(WorldSet target) const;
  // Same, but throws NoSuchBeliefState when the space lacks such a state.
  StateId resolve_state(WorldSet target) const;

 private:
  std::string name_;
  Signature sig_;
  std::vector<std::string> state_names_;
  std::vector<WorldSet> beliefs_;
};

using SpacePtr = std::shared_ptr<const EpistemicSpace>;

// Text format, one directive per line, `#` comments:
//   sig a b
//   state PsiBot  models:
//   state PsiAB   models: ab
// `models:` lists interpretation strings; an empty list is the inconsistent
// belief set. The space name is supplied by the caller (for files, the stem).
SpacePtr load_space(std::istream& in, const std::string& name,
                    const std::string& diagnostic_name);
SpacePtr load_space_file(const std::string& path);
std::string format_space(const EpistemicSpace& sp);

}  // namespace epispace
