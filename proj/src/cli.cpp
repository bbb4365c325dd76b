#include "epispace/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "epispace/modelcheck.hpp"

namespace epispace::cli {

namespace {

using json = nlohmann::ordered_json;

json world_set_json(const Signature& sig, WorldSet s) {
  json arr = json::array();
  for (int w = 0; w < sig.world_count(); ++w) {
    Interpretation iw{static_cast<unsigned>(w)};
    if (s.contains(iw)) arr.push_back(print_world(sig, iw));
  }
  return arr;
}

json witness_json(const EpistemicSpace& sp, const std::optional<Witness>& w) {
  if (!w) return nullptr;
  json obj;
  obj["state"] = sp.state_name(w->state);
  obj["input"] = world_set_json(sp.sig(), w->input);
  obj["input2"] = w->input2 ? world_set_json(sp.sig(), *w->input2) : json();
  return obj;
}

json result_json(const EpistemicSpace& sp, const CheckResult& r) {
  json obj;
  obj["postulate"] = std::string(to_string(r.postulate));
  obj["verdict"] = std::string(to_string(r.verdict));
  obj["witness"] = witness_json(sp, r.witness);
  return obj;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << content;
}

std::uint64_t env_max_ops(std::uint64_t fallback) {
  const char* env = std::getenv("EPISPACE_MAX_OPS");
  if (!env) return fallback;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0') {
    throw Error("EPISPACE_MAX_OPS is not a number: '" + std::string(env) + "'");
  }
  return v;
}

int run_checked(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err);

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  try {
    return run_checked(args, out, err);
  } catch (const ScaleExceeded& e) {
    err << "scale exceeded: " << e.what() << "\n";
    return 3;
  } catch (const FormatError& e) {
    err << "format error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    err << "parse error at offset " << e.offset << ": " << e.what() << "\n";
    return 2;
  } catch (const NoSuchBeliefState& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const NotAPreorder& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const ConstraintViolation& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

namespace {

int run_checked(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err) {
  CLI::App app{"desk-scale laboratory for belief change over epistemic spaces"};
  app.require_subcommand(1);
  bool json_mode = false;
  app.add_flag("--json", json_mode, "machine-readable JSON output");

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "print the models of a formula");
  std::string eval_space, eval_formula;
  eval_cmd->add_option("-s,--space", eval_space, "space file")->required();
  eval_cmd->add_option("-f,--formula", eval_formula, "formula text")->required();

  // check
  auto* check_cmd =
      app.add_subcommand("check", "check postulates against an operator");
  std::string check_space, check_op;
  std::vector<std::string> check_postulates;
  check_cmd->add_option("-s,--space", check_space, "space file")->required();
  check_cmd->add_option("-o,--operator", check_op, "operator file")->required();
  check_cmd->add_option("-p,--postulate", check_postulates,
                        "postulate name (default: all)");

  // classify
  auto* classify_cmd =
      app.add_subcommand("classify", "AGM/CL/ECL class membership");
  std::string classify_space, classify_op;
  classify_cmd->add_option("-s,--space", classify_space, "space file")
      ->required();
  classify_cmd->add_option("-o,--operator", classify_op, "operator file")
      ->required();

  // synthesize
  auto* synth_cmd = app.add_subcommand(
      "synthesize", "build the operator of a faithful assignment");
  std::string synth_space, synth_assign, synth_out;
  synth_cmd->add_option("-s,--space", synth_space, "space file")->required();
  synth_cmd->add_option("-a,--assignment", synth_assign, "assignment file")
      ->required();
  synth_cmd->add_option("-o,--out", synth_out, "operator file to write")
      ->required();

  // extract
  auto* extract_cmd = app.add_subcommand(
      "extract", "read the assignment off an operator");
  std::string extract_space, extract_op, extract_out;
  extract_cmd->add_option("-s,--space", extract_space, "space file")
      ->required();
  extract_cmd->add_option("-o,--operator", extract_op, "operator file")
      ->required();
  extract_cmd->add_option("-a,--out", extract_out, "assignment file to write")
      ->required();

  // roundtrip
  auto* round_cmd = app.add_subcommand(
      "roundtrip", "extract, re-synthesize and compare tables");
  std::string round_space, round_op;
  round_cmd->add_option("-s,--space", round_space, "space file")->required();
  round_cmd->add_option("-o,--operator", round_op, "operator file")->required();

  // verify
  auto* verify_cmd =
      app.add_subcommand("verify", "verify the class-level claims by brute force");
  std::string verify_space;
  EnumerationLimits limits;
  limits.max_operators = env_max_ops(limits.max_operators);
  verify_cmd->add_option("-s,--space", verify_space, "space file")->required();
  verify_cmd->add_option("--seed", limits.seed, "sampling seed");
  verify_cmd->add_option("--samples", limits.samples, "sample count");
  verify_cmd->add_option("--max-ops", limits.max_operators,
                         "exhaustive enumeration bound");

  // enumerate
  auto* enum_cmd = app.add_subcommand("enumerate", "count or scan all operators");
  std::string enum_space;
  bool enum_count_only = false, enum_classify_all = false;
  enum_cmd->add_option("-s,--space", enum_space, "space file")->required();
  enum_cmd->add_flag("--count-only", enum_count_only, "sizes only");
  enum_cmd->add_flag("--classify-all", enum_classify_all,
                     "classify every operator");
  std::uint64_t enum_max_ops = env_max_ops(EnumerationLimits{}.max_operators);
  enum_cmd->add_option("--max-ops", enum_max_ops, "enumeration bound");

  // dot
  auto* dot_cmd = app.add_subcommand("dot", "emit a DOT graph of an operator");
  std::string dot_space, dot_op;
  dot_cmd->add_option("-s,--space", dot_space, "space file")->required();
  dot_cmd->add_option("-o,--operator", dot_op, "operator file")->required();

  // examples
  auto* examples_cmd =
      app.add_subcommand("examples", "materialize the bundled example fixtures");
  std::string examples_dir = ".";
  examples_cmd->add_option("--dir", examples_dir, "target directory");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      // --help and friends
      out << app.help();
      return 0;
    }
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  if (eval_cmd->parsed()) {
    SpacePtr sp = load_space_file(eval_space);
    Formula f = parse_formula(eval_formula, sp->sig());
    WorldSet m = models(f, sp->sig());
    if (json_mode) {
      json obj;
      obj["command"] = "eval";
      obj["space"] = sp->name();
      obj["formula"] = eval_formula;
      obj["models"] = world_set_json(sp->sig(), m);
      out << obj.dump(2) << "\n";
    } else {
      out << "models: " << print_world_set(sp->sig(), m) << "\n";
    }
    return 0;
  }

  if (check_cmd->parsed()) {
    SpacePtr sp = load_space_file(check_space);
    SemanticOperator op = load_operator_file(check_op, sp);
    std::vector<PostulateId> ids;
    if (check_postulates.empty()) {
      ids = all_postulates();
    } else {
      for (const std::string& name : check_postulates) {
        auto p = postulate_from_string(name);
        if (!p) throw Error("unknown postulate '" + name + "'");
        ids.push_back(*p);
      }
    }
    bool all_ok = true;
    json results = json::array();
    for (PostulateId p : ids) {
      CheckResult r = check(op, p);
      all_ok = all_ok && r.ok();
      if (json_mode) {
        results.push_back(result_json(*sp, r));
      } else {
        out << describe(r, *sp) << "\n";
      }
    }
    if (json_mode) {
      json obj;
      obj["command"] = "check";
      obj["space"] = sp->name();
      obj["results"] = results;
      obj["all_satisfied"] = all_ok;
      out << obj.dump(2) << "\n";
    }
    return all_ok ? 0 : 1;
  }

  if (classify_cmd->parsed()) {
    SpacePtr sp = load_space_file(classify_space);
    SemanticOperator op = load_operator_file(classify_op, sp);
    ClassMembership cm = classify(op);
    if (json_mode) {
      json obj;
      obj["command"] = "classify";
      obj["space"] = sp->name();
      obj["in_AGMRev"] = cm.in_agm_rev;
      obj["in_CLRev"] = cm.in_cl_rev;
      obj["in_ECLRev"] = cm.in_ecl_rev;
      out << obj.dump(2) << "\n";
    } else {
      out << "AGMRev: " << (cm.in_agm_rev ? "yes" : "no") << "\n"
          << "CLRev:  " << (cm.in_cl_rev ? "yes" : "no") << "\n"
          << "ECLRev: " << (cm.in_ecl_rev ? "yes" : "no") << "\n";
    }
    return 0;
  }

  if (synth_cmd->parsed()) {
    SpacePtr sp = load_space_file(synth_space);
    Assignment a = load_assignment_file(synth_assign, *sp);
    if (!is_faithful(*sp, a).ok()) {
      err << "warning: assignment is not faithful; the synthesized operator "
             "need not satisfy ECL1-ECL7\n";
    }
    SemanticOperator op = synthesize(sp, a);
    write_file(synth_out, format_operator(op));
    if (json_mode) {
      json obj;
      obj["command"] = "synthesize";
      obj["space"] = sp->name();
      obj["out"] = synth_out;
      obj["rows"] = op.table().size();
      out << obj.dump(2) << "\n";
    } else {
      out << "wrote " << synth_out << " (" << op.table().size() << " rows)\n";
    }
    return 0;
  }

  if (extract_cmd->parsed()) {
    SpacePtr sp = load_space_file(extract_space);
    SemanticOperator op = load_operator_file(extract_op, sp);
    Assignment a = extract(op);
    write_file(extract_out, format_assignment(*sp, a));
    const bool faithful = is_faithful(*sp, a).ok();
    const bool compatible = is_compatible(a, op).ok();
    if (json_mode) {
      json obj;
      obj["command"] = "extract";
      obj["space"] = sp->name();
      obj["out"] = extract_out;
      obj["faithful"] = faithful;
      obj["compatible"] = compatible;
      out << obj.dump(2) << "\n";
    } else {
      out << "wrote " << extract_out << " (faithful: " << (faithful ? "yes" : "no")
          << ", compatible: " << (compatible ? "yes" : "no") << ")\n";
    }
    return 0;
  }

  if (round_cmd->parsed()) {
    SpacePtr sp = load_space_file(round_space);
    SemanticOperator op = load_operator_file(round_op, sp);
    Assignment a = extract(op);
    const bool compatible = is_compatible(a, op).ok();
    SemanticOperator back = synthesize(sp, a);
    const bool identical = back.equivalent_to(op);
    std::string first_diff;
    if (!identical) {
      const auto ct1 = op.canonical_table();
      const auto ct2 = back.canonical_table();
      for (std::size_t i = 0; i < ct1.size(); ++i) {
        if (ct1[i] != ct2[i]) {
          const int inputs = op.input_count();
          const StateId s{static_cast<int>(i) / inputs};
          const WorldSet input{static_cast<std::uint32_t>(i % inputs)};
          first_diff = "(" + sp->state_name(s) + ", " +
                       print_world_set(sp->sig(), input) + "): " +
                       sp->state_name(ct1[i]) + " vs " +
                       sp->state_name(ct2[i]);
          break;
        }
      }
    }
    if (json_mode) {
      json obj;
      obj["command"] = "roundtrip";
      obj["space"] = sp->name();
      obj["compatible"] = compatible;
      obj["identical"] = identical;
      obj["first_difference"] = identical ? json() : json(first_diff);
      out << obj.dump(2) << "\n";
    } else {
      if (identical && compatible) {
        out << "tables identical\n";
      } else if (!compatible) {
        out << "extracted assignment is not revision-compatible\n";
      } else {
        out << "tables differ at " << first_diff << "\n";
      }
    }
    return identical && compatible ? 0 : 1;
  }

  if (verify_cmd->parsed()) {
    SpacePtr sp = load_space_file(verify_space);
    VerificationReport rep = verify_paper_claims(sp, limits);
    if (json_mode) {
      json obj;
      obj["command"] = "verify";
      obj["space"] = rep.space;
      obj["globally_consistent"] = rep.globally_consistent;
      obj["operator_count"] = rep.operator_count;
      obj["scanned"] = rep.scanned;
      obj["exhaustive"] = rep.exhaustive;
      obj["seed"] = rep.seed;
      json counts;
      counts["AGMRev"] = rep.agm_count;
      counts["CLRev"] = rep.cl_count;
      counts["ECLRev"] = rep.ecl_count;
      obj["counts"] = counts;
      obj["faithful_assignments"] = rep.faithful_assignments;
      obj["synthesized_tables"] = rep.synthesized;
      json claims = json::array();
      for (const ClaimResult& c : rep.claims) {
        json cj;
        cj["claim"] = c.claim;
        cj["applicable"] = c.applicable;
        cj["pass"] = c.pass;
        cj["detail"] = c.detail;
        cj["counterexample"] = c.counterexample.empty()
                                   ? json()
                                   : json(c.counterexample);
        claims.push_back(cj);
      }
      obj["claims"] = claims;
      obj["all_pass"] = rep.all_pass();
      out << obj.dump(2) << "\n";
    } else {
      out << "space: " << rep.space << "\n"
          << "globally consistent: "
          << (rep.globally_consistent ? "yes" : "no") << "\n"
          << "operator count: " << rep.operator_count << "\n"
          << "scanned: " << rep.scanned
          << (rep.exhaustive ? " (exhaustive)" : " (sampled)") << "\n"
          << "|AGMRev| = " << rep.agm_count << "  |CLRev| = " << rep.cl_count
          << "  |ECLRev| = " << rep.ecl_count << "\n"
          << "faithful assignments: " << rep.faithful_assignments
          << "  synthesizable tables: " << rep.synthesized << "\n";
      for (const ClaimResult& c : rep.claims) {
        out << c.claim << ": "
            << (!c.applicable ? "N/A" : (c.pass ? "PASS" : "FAIL"));
        if (!c.detail.empty()) out << " (" << c.detail << ")";
        if (!c.counterexample.empty())
          out << " counterexample: " << c.counterexample;
        out << "\n";
      }
    }
    return rep.all_pass() ? 0 : 1;
  }

  if (enum_cmd->parsed()) {
    if (enum_count_only == enum_classify_all) {
      throw Error("enumerate needs exactly one of --count-only/--classify-all");
    }
    SpacePtr sp = load_space_file(enum_space);
    if (enum_count_only) {
      EnumerationScope scope = describe_scope(sp);
      if (json_mode) {
        json obj;
        obj["command"] = "enumerate";
        obj["space"] = sp->name();
        obj["operator_count"] = scope.operator_count;
        obj["valid_assignments"] = scope.valid_assignments;
        obj["faithful_assignments"] = scope.faithful_assignments;
        out << obj.dump(2) << "\n";
      } else {
        out << "operators: " << scope.operator_count << "\n"
            << "valid assignments: " << scope.valid_assignments << "\n"
            << "faithful assignments: " << scope.faithful_assignments << "\n";
      }
      return 0;
    }
    OperatorEnumeration ops(sp);
    EnumerationLimits enum_limits;
    enum_limits.max_operators = enum_max_ops;
    const std::uint64_t total = ops.checked_count(enum_limits);
    std::uint64_t agm = 0, cl = 0, ecl = 0;
    for (std::uint64_t i = 0; i < total; ++i) {
      ClassMembership cm = classify(ops.make(i));
      if (cm.in_agm_rev) ++agm;
      if (cm.in_cl_rev) ++cl;
      if (cm.in_ecl_rev) ++ecl;
    }
    if (json_mode) {
      json obj;
      obj["command"] = "enumerate";
      obj["space"] = sp->name();
      obj["operators"] = total;
      json counts;
      counts["AGMRev"] = agm;
      counts["CLRev"] = cl;
      counts["ECLRev"] = ecl;
      obj["counts"] = counts;
      out << obj.dump(2) << "\n";
    } else {
      out << "operators: " << total << "\n"
          << "|AGMRev| = " << agm << "  |CLRev| = " << cl
          << "  |ECLRev| = " << ecl << "\n";
    }
    return 0;
  }

  if (dot_cmd->parsed()) {
    SpacePtr sp = load_space_file(dot_space);
    SemanticOperator op = load_operator_file(dot_op, sp);
    out << to_dot(op);
    return 0;
  }

  if (examples_cmd->parsed()) {
    std::filesystem::create_directories(examples_dir);
    auto path = [&](const std::string& name) {
      return (std::filesystem::path(examples_dir) / name).string();
    };
    auto [sp1, op1] = build_example1();
    auto [sp2, op2] = build_example2();
    const Assignment a2 = example2_assignment(*sp2);
    write_file(path("ex1.space"), format_space(*sp1));
    write_file(path("ex1.op"), format_operator(op1));
    write_file(path("ex2.space"), format_space(*sp2));
    write_file(path("ex2.op"), format_operator(op2));
    write_file(path("ex2.assign"), format_assignment(*sp2, a2));
    const std::vector<std::string> written = {"ex1.space", "ex1.op",
                                              "ex2.space", "ex2.op",
                                              "ex2.assign"};
    if (json_mode) {
      json obj;
      obj["command"] = "examples";
      obj["dir"] = examples_dir;
      obj["files"] = written;
      out << obj.dump(2) << "\n";
    } else {
      for (const std::string& f : written) out << "wrote " << path(f) << "\n";
    }
    return 0;
  }

  throw Error("no command dispatched");
}

}  // namespace

}  // namespace epispace::cli
