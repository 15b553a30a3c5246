#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "multiskein/expression.hpp"
#include "multiskein/invariant.hpp"
#include "multiskein/oracle.hpp"
#include "multiskein/relations.hpp"
#include "multiskein/rewrite.hpp"

using namespace multiskein;
using nlohmann::json;

namespace {

enum Exit { Ok = 0, Failed = 1, ParseError = 2, CapError = 3 };

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

json read_json(const std::string& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

struct DiagramInput {
  std::string pd, file, census;
};

MarkedDiagram load_diagram(const DiagramInput& in, std::string& label) {
  int given = !in.pd.empty() + !in.file.empty() + !in.census.empty();
  if (given != 1) throw InputError("give exactly one of --pd, --file, --census");
  if (!in.census.empty()) {
    label = in.census;
    return census_diagram(in.census);
  }
  if (!in.pd.empty()) {
    label = in.pd;
    return parse_pd(in.pd);
  }
  label = in.file;
  std::string text = read_file(in.file);
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    try {
      return parse_diagram_json(json::parse(text));
    } catch (const json::parse_error& e) {
      throw InputError(in.file + ": " + e.what());
    }
  }
  return parse_pd(text);
}

void emit(const json& j, const std::string& text, const std::string& format) {
  if (format == "json") {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << text;
  }
}

// Error messages go to stderr; the exit code says which kind.
int fail(int code, const std::string& msg) {
  std::cerr << "multiskein: " << msg << "\n";
  return code;
}

MemoMode memo_mode(const std::string& s) {
  if (s == "off") return MemoMode::Off;
  if (s == "exact") return MemoMode::Exact;
  return MemoMode::Cross;
}

SmoothingFault fault_mode(const std::string& s) {
  if (s == "vertical-as-horizontal") return SmoothingFault::VerticalAsHorizontal;
  if (s == "swap-hc-ht") return SmoothingFault::SwapHcHt;
  return SmoothingFault::None;
}

// ---- eval ----

struct EvalArgs {
  DiagramInput input;
  std::string ring = "z";
  std::string assignment;
  bool writhe_normalized = false;
  int cap = 12;
  int v_depth = 8;
  std::string format = "text";
  std::string memo = "cross";
  int resolve_at = -1;
  int trace = -1;
  bool unchecked = false;
};

template <class E>
json eval_generic(const MarkedDiagram& d, EvaluationConfig<E> cfg, const EvalArgs& a, std::string& rendered,
                  json& trace) {
  Scaled<E> v = a.writhe_normalized ? evaluate_F(d, cfg) : evaluate_f(d, cfg);
  rendered = v.to_string();
  if (a.trace >= 0) trace = Evaluator<E>(cfg).trace(d, a.trace);
  json out;
  out["denominator"] = v.den;
  out["monomials"] = v.num.to_json();
  return out;
}

int run_eval(const EvalArgs& a) {
  std::string label;
  MarkedDiagram d;
  try {
    d = load_diagram(a.input, label);
  } catch (const std::exception& e) {
    return fail(ParseError, e.what());
  }
  if (a.cap > 0 && d.crossing_count() > a.cap)
    return fail(CapError, "diagram has " + std::to_string(d.crossing_count()) + " crossings, cap is " +
                              std::to_string(a.cap));
  json j;
  j["input"] = label;
  j["ring"] = a.ring;
  j["writhe_normalized"] = a.writhe_normalized;
  j["crossings"] = d.crossing_count();
  j["components"] = d.component_count();
  j["writhe"] = writhe(d);
  std::string rendered;
  json trace;
  try {
    auto configure = [&](auto cfg) {
      cfg.memo = memo_mode(a.memo);
      cfg.crossing_cap = a.cap;
      if (a.resolve_at >= 0) {
        cfg.policy = ResolutionPolicy::SpecifiedCrossing;
        cfg.crossing = a.resolve_at;
      }
      return cfg;
    };
    if (a.ring == "z") {
      j["value_detail"] = eval_generic(d, configure(EvaluationConfig<ZElement>{z_assignment()}), a, rendered, trace);
    } else if (a.ring == "dubrovnik") {
      auto cfg = configure(EvaluationConfig<ZElement>{z_assignment()});
      ZElement z = integral(a.writhe_normalized ? evaluate_F(d, cfg) : evaluate_f(d, cfg));
      Laurent v = specialize(z, dubrovnik_images(), std::max(a.v_depth, d.component_count() + 1));
      rendered = v.to_string();
      j["value_detail"] = {{"denominator", 1}, {"monomials", v.to_json()}};
    } else if (a.ring == "homfly" || a.ring == "kauffman") {
      auto asg = a.ring == "homfly" ? homfly_assignment() : kauffman_assignment();
      j["value_detail"] = eval_generic(d, configure(EvaluationConfig<Laurent>{asg}), a, rendered, trace);
    } else if (a.ring == "custom") {
      if (a.assignment.empty()) return fail(ParseError, "--ring custom needs --assignment");
      CoefficientAssignment<Laurent> asg;
      try {
        asg = assignment_from_json(read_json(a.assignment));
      } catch (const std::exception& e) {
        return fail(ParseError, e.what());
      }
      if (!a.unchecked) {
        auto rep = verify_relations(asg, a.v_depth);
        if (!rep.ok())
          return fail(Failed, "assignment fails " + std::to_string(rep.failed.size()) + " relations, first: " +
                                  rep.failed.front().relation + " (use --unchecked to evaluate anyway)");
      }
      j["value_detail"] = eval_generic(d, configure(EvaluationConfig<Laurent>{asg}), a, rendered, trace);
    } else {
      return fail(ParseError, "unknown ring " + a.ring);
    }
  } catch (const CapExceeded& e) {
    return fail(CapError, e.what());
  } catch (const std::exception& e) {
    return fail(Failed, e.what());
  }
  j["value"] = rendered;
  if (!trace.is_null()) j["trace"] = trace;
  std::string text = rendered + "\n";
  if (!trace.is_null()) text += trace.dump(2) + "\n";
  emit(j, text, a.format);
  return Ok;
}

// ---- check-relations ----

int run_check_relations(const std::string& preset, const std::string& file, int v_depth, const std::string& format) {
  RelationReport rep;
  try {
    if (!file.empty()) {
      rep = verify_relations(assignment_from_json(read_json(file)), v_depth);
    } else if (preset == "z") {
      rep = verify_relations(z_assignment(), v_depth);
    } else if (preset == "kauffman") {
      rep = verify_relations(kauffman_assignment(), v_depth);
    } else if (preset == "homfly") {
      rep = verify_relations(homfly_assignment(), v_depth);
    } else {
      return fail(ParseError, "unknown preset " + preset);
    }
  } catch (const std::exception& e) {
    return fail(ParseError, e.what());
  }
  emit(rep.to_json(), rep.to_text(), format);
  return rep.ok() ? Ok : Failed;
}

// ---- check-confluence ----

int run_check_confluence(const std::string& system, const std::string& file, int v_depth, const std::string& format) {
  std::optional<rw::System> sys;
  try {
    if (!file.empty()) {
      sys = rw::system_from_json(read_json(file), v_depth);
    } else if (system == "quadratic") {
      sys = rw::skein_system(false, v_depth);
    } else if (system == "cubic") {
      sys = rw::skein_system(true, v_depth);
    } else {
      return fail(ParseError, "unknown system " + system + " (quadratic, cubic, or --file)");
    }
  } catch (const std::exception& e) {
    return fail(ParseError, e.what());
  }
  auto rep = rw::check_local_confluence(*sys);
  json j = rep.to_json(*sys);
  j["system"] = file.empty() ? system : file;
  emit(j, rep.to_text(*sys), format);
  return rep.confluent() ? Ok : Failed;
}

// ---- census ----

int run_census(const std::string& ring, bool evaluate, const std::string& format) {
  json arr = json::array();
  std::ostringstream text;
  EvaluationConfig<ZElement> zcfg{z_assignment()};
  Evaluator<ZElement> zev(zcfg);
  for (const auto& e : census()) {
    MarkedDiagram d = census_diagram(e.name);
    json row{{"name", e.name},
             {"pd", e.pd},
             {"crossings", d.crossing_count()},
             {"components", d.component_count()},
             {"writhe", writhe(d)}};
    text << e.name << "  " << e.pd << "  crossings " << d.crossing_count() << ", components " << d.component_count()
         << ", writhe " << writhe(d) << "\n";
    if (evaluate) {
      std::string v;
      try {
        if (ring == "z") {
          v = integral(zev.F(d)).to_string();
        } else if (ring == "dubrovnik") {
          v = specialize(integral(zev.F(d)), dubrovnik_images()).to_string();
        } else if (ring == "homfly") {
          v = evaluate_F(d, EvaluationConfig<Laurent>{homfly_assignment()}).to_string();
        } else if (ring == "kauffman") {
          v = evaluate_F(d, EvaluationConfig<Laurent>{kauffman_assignment()}).to_string();
        } else {
          return fail(ParseError, "unknown ring " + ring);
        }
      } catch (const std::exception& ex) {
        return fail(Failed, e.name + ": " + ex.what());
      }
      row["F"] = v;
      text << "  F = " << v << "\n";
    }
    arr.push_back(std::move(row));
  }
  json j{{"ring", ring}, {"entries", arr}};
  emit(j, text.str(), format);
  return Ok;
}

// ---- fuzz ----

int run_fuzz(FuzzOptions opt, const std::string& fault, const std::string& format) {
  opt.fault = fault_mode(fault);
  FuzzSummary s = fuzz(opt);
  json j = s.to_json();
  j["seed"] = opt.seed;
  j["max_crossings"] = opt.diagram.max_crossings;
  j["moves"] = opt.diagram.moves;
  j["fault"] = fault;
  emit(j, s.to_text(), format);
  return s.failures == 0 ? Ok : Failed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multi-skein link invariants: evaluation, relation and confluence checks, property suites"};
  app.require_subcommand(1);
  std::string format = "text";
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
  };

  EvalArgs ev;
  auto* eval = app.add_subcommand("eval", "evaluate f (or F) of a diagram");
  eval->add_option("--pd", ev.input.pd, "inline PD code");
  eval->add_option("--file", ev.input.file, "PD text or diagram JSON file");
  eval->add_option("--census", ev.input.census, "census diagram name");
  eval->add_option("--ring", ev.ring, "z, dubrovnik, homfly, kauffman or custom")
      ->check(CLI::IsMember({"z", "dubrovnik", "homfly", "kauffman", "custom"}));
  eval->add_option("--assignment", ev.assignment, "assignment JSON for --ring custom");
  eval->add_flag("--writhe-normalized,-w", ev.writhe_normalized, "F = A^-w f");
  eval->add_option("--crossing-cap", ev.cap, "refuse larger diagrams (0: no cap)");
  eval->add_option("--v-depth", ev.v_depth, "v-identity depth for checks and specialization");
  eval->add_option("--memo", ev.memo, "cross, exact or off")->check(CLI::IsMember({"cross", "exact", "off"}));
  eval->add_option("--resolve-at", ev.resolve_at, "resolve the root at this crossing");
  eval->add_option("--trace", ev.trace, "emit the skein tree to this depth");
  eval->add_flag("--unchecked", ev.unchecked, "skip the relation check of a custom assignment");
  add_format(eval);

  std::string preset = "z", assignment;
  int v_depth = 8;
  auto* rel = app.add_subcommand("check-relations", "check an assignment against the relation set");
  rel->add_option("--preset", preset, "z, kauffman or homfly")->check(CLI::IsMember({"z", "kauffman", "homfly"}));
  rel->add_option("--assignment", assignment, "assignment JSON file");
  rel->add_option("--v-depth", v_depth, "check the v-identity for n = 1..depth");
  add_format(rel);

  std::string system = "cubic", system_file;
  auto* conf = app.add_subcommand("check-confluence", "critical-pair check of a rewriting system");
  conf->add_option("--system", system, "quadratic (no c'^3 rule) or cubic");
  conf->add_option("--file", system_file, "rewriting system JSON file");
  conf->add_option("--v-depth", v_depth, "instantiate the v rule family for n = 1..depth");
  add_format(conf);

  std::string census_ring = "z";
  bool census_eval = false;
  auto* cen = app.add_subcommand("census", "list the built-in diagrams");
  cen->add_option("--ring", census_ring, "z, dubrovnik, homfly or kauffman")
      ->check(CLI::IsMember({"z", "dubrovnik", "homfly", "kauffman"}));
  cen->add_flag("--evaluate", census_eval, "also print F");
  add_format(cen);

  FuzzOptions fo;
  std::string fault = "none";
  auto* fz = app.add_subcommand("fuzz", "Reidemeister invariance of F on random diagrams");
  fz->add_option("--trials", fo.trials, "number of trials");
  fz->add_option("--max-crossings", fo.diagram.max_crossings, "crossing bound during the moves");
  fz->add_option("--moves", fo.diagram.moves, "random moves per trial");
  fz->add_option("--seed", fo.seed, "base seed");
  fz->add_option("--threads", fo.threads, "worker threads (default MULTISKEIN_THREADS or all cores)");
  fz->add_option("--fault", fault, "inject a smoothing convention error")
      ->check(CLI::IsMember({"none", "vertical-as-horizontal", "swap-hc-ht"}));
  add_format(fz);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? Ok : ParseError;
  }

  if (eval->parsed()) {
    ev.format = format;
    return run_eval(ev);
  }
  if (rel->parsed()) return run_check_relations(preset, assignment, v_depth, format);
  if (conf->parsed()) return run_check_confluence(system, system_file, v_depth, format);
  if (cen->parsed()) return run_census(census_ring, census_eval, format);
  if (fz->parsed()) return run_fuzz(fo, fault, format);
  return ParseError;
}
