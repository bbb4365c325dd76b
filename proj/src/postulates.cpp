#include "epispace/postulates.hpp"

#include <array>

namespace epispace {

namespace {

// Shared semantic kernels. Several postulate names denote the same test:
// CL2/ECL2 coincide with R2, CL3wcp with ECL3, CL3u with ECL4, CL5 with
// ECL6, CL6 with ECL7; R4/CL4/ECL5 hold by representation.
enum class Kernel {
  R1, R2, R3, R5, R6,
  CL1, CL3, CL5, CL6,
  WCP, CL3WCP, CL3U,
  Representation,
};

Kernel kernel_of(PostulateId p) {
  switch (p) {
    case PostulateId::R1: return Kernel::R1;
    case PostulateId::R2: return Kernel::R2;
    case PostulateId::R3: return Kernel::R3;
    case PostulateId::R4: return Kernel::Representation;
    case PostulateId::R5: return Kernel::R5;
    case PostulateId::R6: return Kernel::R6;
    case PostulateId::CL1: return Kernel::CL1;
    case PostulateId::CL2: return Kernel::R2;
    case PostulateId::CL3: return Kernel::CL3;
    case PostulateId::CL4: return Kernel::Representation;
    case PostulateId::CL5: return Kernel::CL5;
    case PostulateId::CL6: return Kernel::CL6;
    case PostulateId::ECL1: return Kernel::CL1;
    case PostulateId::ECL2: return Kernel::R2;
    case PostulateId::ECL3: return Kernel::CL3WCP;
    case PostulateId::ECL4: return Kernel::CL3U;
    case PostulateId::ECL5: return Kernel::Representation;
    case PostulateId::ECL6: return Kernel::CL5;
    case PostulateId::ECL7: return Kernel::CL6;
    case PostulateId::WCP: return Kernel::WCP;
    case PostulateId::CL3wcp: return Kernel::CL3WCP;
    case PostulateId::CL3u: return Kernel::CL3U;
    default:
      throw Error("not an operator postulate: " +
                  std::string(to_string(p)));
  }
}

bool is_pair_kernel(Kernel k) {
  switch (k) {
    case Kernel::R5:
    case Kernel::R6:
    case Kernel::CL5:
    case Kernel::CL6:
    case Kernel::CL3U:
      return true;
    default:
      return false;
  }
}

// Single-input conditions. `bel` is the prior belief set, `a` the input
// model set, `m` the posterior belief set.
bool holds_single(Kernel k, WorldSet bel, WorldSet a, WorldSet m) {
  switch (k) {
    case Kernel::R1:
      return m.subset_of(a);
    case Kernel::R2:
      return (bel & a).empty() || m == (bel & a);
    case Kernel::R3:
      return a.empty() || !m.empty();
    case Kernel::CL1:
      return m.subset_of(a) || m == bel;
    case Kernel::CL3:
      return !m.empty();
    case Kernel::WCP:
      return bel.empty() || a.empty() || !m.empty();
    case Kernel::CL3WCP:
      return !m.empty() || bel.empty() || a.empty();
    default:
      return true;
  }
}

// Pair conditions over input model sets a and b.
bool holds_pair(Kernel k, const SemanticOperator& op, StateId s, WorldSet a,
                WorldSet b) {
  switch (k) {
    case Kernel::R5: {
      // Bel(s∘(α∧β)) ⊆ Bel(s∘α)+β, dually M(s,A)∩B ⊆ M(s,A∩B).
      return (op.out(s, a) & b).subset_of(op.out(s, a & b));
    }
    case Kernel::R6: {
      WorldSet expanded = op.out(s, a) & b;
      return expanded.empty() || op.out(s, a & b).subset_of(expanded);
    }
    case Kernel::CL5: {
      WorldSet ma = op.out(s, a);
      if (!ma.subset_of(a) || !a.subset_of(b)) return true;
      return op.out(s, b).subset_of(b);
    }
    case Kernel::CL6: {
      WorldSet mu = op.out(s, a | b);
      WorldSet ma = op.out(s, a);
      WorldSet mb = op.out(s, b);
      return mu == ma || mu == mb || mu == (ma | mb);
    }
    case Kernel::CL3U: {
      if (op.out(s, a).empty() || !a.subset_of(b)) return true;
      return !op.out(s, b).empty();
    }
    default:
      return true;
  }
}

// Deterministic scan: states ascending, masks descending; the first
// violation becomes the witness.
std::optional<Witness> scan_single(const SemanticOperator& op, Kernel k) {
  const int states = op.space().state_count();
  const int inputs = op.input_count();
  for (int s = 0; s < states; ++s) {
    const StateId state{s};
    const WorldSet bel = op.space().bel(state);
    for (int m = inputs - 1; m >= 0; --m) {
      const WorldSet a{static_cast<std::uint32_t>(m)};
      if (!holds_single(k, bel, a, op.out(state, a))) {
        return Witness{state, a, std::nullopt};
      }
    }
  }
  return std::nullopt;
}

std::optional<Witness> scan_pair(const SemanticOperator& op, Kernel k) {
  const int states = op.space().state_count();
  const int inputs = op.input_count();
  for (int s = 0; s < states; ++s) {
    const StateId state{s};
    for (int ma = inputs - 1; ma >= 0; --ma) {
      const WorldSet a{static_cast<std::uint32_t>(ma)};
      for (int mb = inputs - 1; mb >= 0; --mb) {
        const WorldSet b{static_cast<std::uint32_t>(mb)};
        if (!holds_pair(k, op, state, a, b)) {
          return Witness{state, a, b};
        }
      }
    }
  }
  return std::nullopt;
}

void require_pair_scale(const SemanticOperator& op, const CheckOptions& opts) {
  if (op.space().sig().arity() > opts.max_pair_atoms) {
    throw ScaleExceeded(
        "pair-quantified postulates are capped at " +
        std::to_string(opts.max_pair_atoms) + " atoms; signature has " +
        std::to_string(op.space().sig().arity()));
  }
}

bool kernel_holds(const SemanticOperator& op, Kernel k,
                  const CheckOptions& opts) {
  if (k == Kernel::Representation) return true;
  if (is_pair_kernel(k)) {
    require_pair_scale(op, opts);
    return !scan_pair(op, k).has_value();
  }
  return !scan_single(op, k).has_value();
}

}  // namespace

std::string_view to_string(PostulateId p) {
  switch (p) {
    case PostulateId::R1: return "R1";
    case PostulateId::R2: return "R2";
    case PostulateId::R3: return "R3";
    case PostulateId::R4: return "R4";
    case PostulateId::R5: return "R5";
    case PostulateId::R6: return "R6";
    case PostulateId::CL1: return "CL1";
    case PostulateId::CL2: return "CL2";
    case PostulateId::CL3: return "CL3";
    case PostulateId::CL4: return "CL4";
    case PostulateId::CL5: return "CL5";
    case PostulateId::CL6: return "CL6";
    case PostulateId::ECL1: return "ECL1";
    case PostulateId::ECL2: return "ECL2";
    case PostulateId::ECL3: return "ECL3";
    case PostulateId::ECL4: return "ECL4";
    case PostulateId::ECL5: return "ECL5";
    case PostulateId::ECL6: return "ECL6";
    case PostulateId::ECL7: return "ECL7";
    case PostulateId::WCP: return "WCP";
    case PostulateId::CL3wcp: return "CL3wcp";
    case PostulateId::CL3u: return "CL3u";
    case PostulateId::Faithful: return "faithful";
    case PostulateId::RevisionCompatible: return "revision-compatible";
  }
  return "?";
}

std::optional<PostulateId> postulate_from_string(std::string_view name) {
  for (PostulateId p : all_postulates()) {
    std::string_view s = to_string(p);
    if (s.size() != name.size()) continue;
    bool equal = true;
    for (std::size_t i = 0; i < s.size(); ++i) {
      char a = s[i], b = name[i];
      if (a >= 'A' && a <= 'Z') a = static_cast<char>(a - 'A' + 'a');
      if (b >= 'A' && b <= 'Z') b = static_cast<char>(b - 'A' + 'a');
      if (a != b) equal = false;
    }
    if (equal) return p;
  }
  return std::nullopt;
}

const std::vector<PostulateId>& all_postulates() {
  static const std::vector<PostulateId> ids = {
      PostulateId::R1,     PostulateId::R2,   PostulateId::R3,
      PostulateId::R4,     PostulateId::R5,   PostulateId::R6,
      PostulateId::CL1,    PostulateId::CL2,  PostulateId::CL3,
      PostulateId::CL4,    PostulateId::CL5,  PostulateId::CL6,
      PostulateId::ECL1,   PostulateId::ECL2, PostulateId::ECL3,
      PostulateId::ECL4,   PostulateId::ECL5, PostulateId::ECL6,
      PostulateId::ECL7,   PostulateId::WCP,  PostulateId::CL3wcp,
      PostulateId::CL3u,
  };
  return ids;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Satisfied: return "satisfied";
    case Verdict::Violated: return "violated";
    case Verdict::HoldsByRepresentation: return "holds_by_representation";
  }
  return "?";
}

CheckResult check(const SemanticOperator& op, PostulateId p,
                  const CheckOptions& opts) {
  const Kernel k = kernel_of(p);
  if (k == Kernel::Representation) {
    return CheckResult{p, Verdict::HoldsByRepresentation, std::nullopt};
  }
  std::optional<Witness> w;
  if (is_pair_kernel(k)) {
    require_pair_scale(op, opts);
    w = scan_pair(op, k);
  } else {
    w = scan_single(op, k);
  }
  if (w) return CheckResult{p, Verdict::Violated, w};
  return CheckResult{p, Verdict::Satisfied, std::nullopt};
}

std::vector<CheckResult> check_all(const SemanticOperator& op,
                                   const CheckOptions& opts) {
  std::vector<CheckResult> results;
  results.reserve(all_postulates().size());
  for (PostulateId p : all_postulates()) results.push_back(check(op, p, opts));
  return results;
}

bool reverify(const SemanticOperator& op, const CheckResult& result) {
  if (result.verdict != Verdict::Violated || !result.witness) return false;
  const Kernel k = kernel_of(result.postulate);
  const Witness& w = *result.witness;
  if (is_pair_kernel(k)) {
    if (!w.input2) return false;
    return !holds_pair(k, op, w.state, w.input, *w.input2);
  }
  return !holds_single(k, op.space().bel(w.state), w.input,
                       op.out(w.state, w.input));
}

ClassMembership classify(const SemanticOperator& op, const CheckOptions& opts) {
  // Every class definition involves pair-quantified postulates.
  require_pair_scale(op, opts);
  std::array<std::optional<bool>, 13> memo;
  auto ok = [&](Kernel k) {
    auto& slot = memo[static_cast<std::size_t>(k)];
    if (!slot) slot = kernel_holds(op, k, opts);
    return *slot;
  };

  ClassMembership result;
  result.in_agm_rev = ok(Kernel::R1) && ok(Kernel::R2) && ok(Kernel::R3) &&
                      ok(Kernel::R5) && ok(Kernel::R6);
  result.in_cl_rev = ok(Kernel::CL1) && ok(Kernel::R2) && ok(Kernel::CL3) &&
                     ok(Kernel::CL5) && ok(Kernel::CL6);
  result.in_ecl_rev = ok(Kernel::CL1) && ok(Kernel::R2) &&
                      ok(Kernel::CL3WCP) && ok(Kernel::CL3U) &&
                      ok(Kernel::CL5) && ok(Kernel::CL6);
  return result;
}

std::string describe(const CheckResult& result, const EpistemicSpace& sp) {
  std::string out = std::string(to_string(result.postulate)) + ": " +
                    std::string(to_string(result.verdict));
  if (result.witness) {
    const Witness& w = *result.witness;
    out += " at (" + sp.state_name(w.state) + ", " +
           print_world_set(sp.sig(), w.input);
    if (w.input2) out += ", " + print_world_set(sp.sig(), *w.input2);
    out += ")";
  }
  return out;
}

}  // namespace epispace
