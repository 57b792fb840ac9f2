// Copyright (c) arrival contributors.
// SPDX-License-Identifier: Apache-2.0
#include "arrival/commands.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace arrival {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

ordered_json emit_count(const Int& v) {
  if (v.fits_slong_p()) return ordered_json(static_cast<std::int64_t>(v.get_si()));
  return ordered_json(v.get_str());
}

ordered_json arrivals_json(const Instance& inst, const ArrivalVector& arrivals) {
  ordered_json out = ordered_json::object();
  for (std::size_t i = 0; i < inst.terminals.size(); ++i)
    out[inst.names[inst.terminals[i]]] = emit_count(arrivals.counts[i]);
  return out;
}

ordered_json flow_json(const Instance& inst, const SwitchingFlow& flow) {
  ordered_json edges = ordered_json::object();
  for (int v = 0; v < inst.n(); ++v) {
    ordered_json slot = ordered_json::object();
    slot["even"] = emit_count(flow.even[v]);
    slot["odd"] = emit_count(flow.odd[v]);
    edges[inst.names[v]] = std::move(slot);
  }
  return edges;
}

ordered_json trace_json(const SolveTrace& trace) {
  ordered_json out;
  out["depth"] = trace.max_recursion_depth;
  out["probes"] = trace.binary_search_probes;
  out["splits"] = trace.splitting_events;
  out["iterations"] = trace.iterations;
  out["separators"] = trace.separators_found;
  ordered_json segments = ordered_json::array();
  for (const auto& s : trace.segments)
    segments.push_back({s.separator_size, s.levels_used});
  out["segments"] = std::move(segments);
  return out;
}

StrategyOutcome run_contraction(const Instance& inst, const StrategyOptions& options) {
  Rat delta = options.delta.value_or(Rat(1, 4));
  Rat lambda = options.lambda ? *options.lambda : default_lambda(inst, delta);
  Rat eps = options.eps.value_or((Rat(1) - lambda) / 8);
  DiscountedUpdate update(inst, lambda);
  MassVector x0(inst.non_terminals().size(), Rat(0));
  IterateResult iterate = fixed_point_iterate(update, std::move(x0), eps);
  StrategyOutcome outcome;
  outcome.strategy = "contraction";
  outcome.arrivals = extract_arrivals(inst, update, iterate.fixed_point, eps);
  outcome.trace.iterations = iterate.iterations;
  outcome.lambda = lambda;
  outcome.delta = delta;
  outcome.eps = eps;
  // An integral fixed point induces an integral switching flow; report it.
  MassVector full = extend_with_tokens(inst, iterate.fixed_point);
  bool integral = true;
  auto flow = SwitchingFlow::zero(inst.n());
  for (int v = 0; v < inst.n() && integral; ++v) {
    Rat e = h0(full[v]), o = h1(full[v]);
    if (!is_integral(e) || !is_integral(o)) {
      integral = false;
      break;
    }
    flow.even[v] = e.get_num();
    flow.odd[v] = o.get_num();
  }
  if (integral && verify_switching_flow(inst, flow).valid) outcome.flow = std::move(flow);
  outcome.fixed_point = std::move(iterate.fixed_point);
  return outcome;
}

}  // namespace

const std::vector<std::string>& known_strategies() {
  static const std::vector<std::string> names{"simulate", "recursive", "separator",
                                              "fvs", "contraction"};
  return names;
}

StrategyOutcome run_strategy(const Instance& inst, const std::string& strategy,
                             const StrategyOptions& options) {
  if (strategy == "simulate") {
    SimulateOptions sim;
    sim.step_budget = options.step_budget;
    auto result = run_profile(inst, sim);
    return {strategy, std::move(result.arrivals), std::move(result.flow),
            std::move(result.trace), {}, {}, {}, {}};
  }
  if (strategy == "recursive" || strategy == "separator" || strategy == "fvs") {
    SolverOptions solver_options;
    solver_options.probe_cache = options.probe_cache;
    PivotStrategy pivot = strategy == "recursive" ? PivotStrategy::Arbitrary
                          : strategy == "separator" ? PivotStrategy::Separator
                                                    : PivotStrategy::Fvs;
    auto result = solve_with(inst, pivot, solver_options);
    return {strategy, std::move(result.arrivals), std::move(result.flow),
            std::move(result.trace), {}, {}, {}, {}};
  }
  if (strategy == "contraction") return run_contraction(inst, options);
  throw ValidationError("unknown strategy '" + strategy + "'");
}

AgreementReport crosscheck_instance(const Instance& inst,
                                    const std::vector<NamedSolver>& solvers) {
  AgreementReport report;
  std::optional<StrategyOutcome> reference;
  for (const auto& [name, solve] : solvers) {
    StrategyOutcome outcome = solve(inst);
    if (outcome.flow) {
      auto check = verify_switching_flow(inst, *outcome.flow);
      if (!check.valid || !check.bound_ok) {
        report.agree = false;
        std::string kinds;
        for (const auto& [kind, v] : check.violations) {
          if (!kinds.empty()) kinds += ", ";
          kinds += violation_name(kind) + " at '" + inst.names[v] + "'";
        }
        if (!check.bound_ok) kinds += kinds.empty() ? "flow bound" : ", flow bound";
        report.failures.push_back("strategy " + name + ": invalid flow (" + kinds + ")");
      }
    }
    if (!reference) {
      reference = std::move(outcome);
      continue;
    }
    if (!(outcome.arrivals == reference->arrivals)) {
      report.agree = false;
      for (std::size_t i = 0; i < inst.terminals.size(); ++i)
        if (outcome.arrivals.counts[i] != reference->arrivals.counts[i])
          report.failures.push_back(
              "strategies " + reference->strategy + " and " + name +
              " differ at terminal '" + inst.names[inst.terminals[i]] + "': " +
              reference->arrivals.counts[i].get_str() + " vs " +
              outcome.arrivals.counts[i].get_str());
    }
  }
  return report;
}

int cmd_solve(const std::string& instance_path, const std::string& strategy,
              const StrategyOptions& options, std::ostream& out, std::ostream& err) {
  try {
    Instance inst = parse_instance(read_file(instance_path));
    StrategyOutcome outcome = run_strategy(inst, strategy, options);
    ordered_json doc;
    doc["arrivals"] = arrivals_json(inst, outcome.arrivals);
    if (outcome.flow) doc["flow"] = flow_json(inst, *outcome.flow);
    if (outcome.lambda) doc["lambda"] = rational_string(*outcome.lambda);
    if (outcome.delta) doc["delta"] = rational_string(*outcome.delta);
    if (outcome.eps) doc["eps"] = rational_string(*outcome.eps);
    if (outcome.fixed_point) {
      ordered_json fp = ordered_json::object();
      auto nts = inst.non_terminals();
      for (std::size_t i = 0; i < nts.size(); ++i)
        fp[inst.names[nts[i]]] = rational_string((*outcome.fixed_point)[i]);
      doc["fixed_point"] = std::move(fp);
    }
    doc["trace"] = trace_json(outcome.trace);
    out << doc.dump(2) << "\n";
    return kExitOk;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
}

int cmd_verify(const std::string& instance_path, const std::string& flow_path,
               std::ostream& out, std::ostream& err) {
  try {
    Instance inst = parse_instance(read_file(instance_path));
    SwitchingFlow flow = parse_flow(inst, read_file(flow_path));
    FlowReport report = verify_switching_flow(inst, flow);
    ordered_json doc;
    doc["valid"] = report.valid;
    ordered_json violations = ordered_json::array();
    for (const auto& [kind, v] : report.violations) {
      ordered_json item;
      item["kind"] = violation_name(kind);
      item["vertex"] = inst.names[v];
      violations.push_back(std::move(item));
    }
    doc["violations"] = std::move(violations);
    doc["bound_ok"] = report.bound_ok;
    out << doc.dump(2) << "\n";
    return report.valid ? kExitOk : kExitInvalid;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
}

int cmd_gen(const GenParams& params, std::ostream& out, std::ostream& err) {
  try {
    out << serialize_instance(generate_instance(params));
    return kExitOk;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
}

int cmd_crosscheck(const CrosscheckParams& params, std::ostream& out,
                   std::ostream& err) {
  try {
    std::vector<std::string> strategies = params.strategies;
    if (strategies.empty())
      strategies = {"simulate", "recursive", "separator", "fvs"};
    std::vector<NamedSolver> solvers;
    for (const auto& name : strategies) {
      if (std::find(known_strategies().begin(), known_strategies().end(), name) ==
          known_strategies().end())
        throw ValidationError("unknown strategy '" + name + "'");
      solvers.emplace_back(name, [name, &params](const Instance& inst) {
        return run_strategy(inst, name, params.options);
      });
    }
    ordered_json failures = ordered_json::array();
    int checked = 0;
    bool all_agree = true;
    auto check_one = [&](const Instance& inst, const std::string& label) {
      AgreementReport report = crosscheck_instance(inst, solvers);
      ++checked;
      if (!report.agree) {
        all_agree = false;
        for (const auto& f : report.failures) {
          ordered_json item;
          item["instance"] = label;
          item["detail"] = f;
          failures.push_back(std::move(item));
        }
      }
    };
    if (!params.instance_path.empty()) {
      check_one(parse_instance(read_file(params.instance_path)), params.instance_path);
    } else {
      GenParams gen = params.gen;
      for (int i = 0; i < params.count; ++i) {
        gen.seed = params.gen.seed + static_cast<std::uint64_t>(i);
        check_one(generate_instance(gen), "seed " + std::to_string(gen.seed));
      }
    }
    ordered_json doc;
    doc["instances"] = checked;
    doc["all_agree"] = all_agree;
    doc["failures"] = std::move(failures);
    out << doc.dump(2) << "\n";
    return all_agree ? kExitOk : kExitInvalid;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
}

int cmd_bench(const BenchParams& params, std::ostream& out, std::ostream& err) {
  try {
    if (params.count < 1 || params.repetitions < 1)
      throw ValidationError("bench needs count >= 1 and repetitions >= 1");
    std::vector<std::string> strategies = params.strategies;
    if (strategies.empty()) strategies = known_strategies();
    for (const auto& name : strategies)
      if (std::find(known_strategies().begin(), known_strategies().end(), name) ==
          known_strategies().end())
        throw ValidationError("unknown strategy '" + name + "'");
    out << "seed,n,strategy,wall_ns,depth,probes,splits,iterations\n";
    GenParams gen = params.gen;
    for (int i = 0; i < params.count; ++i) {
      gen.seed = params.gen.seed + static_cast<std::uint64_t>(i);
      Instance inst = generate_instance(gen);
      for (const auto& name : strategies) {
        for (int rep = 0; rep < params.repetitions; ++rep) {
          auto begin = std::chrono::steady_clock::now();
          StrategyOutcome outcome = run_strategy(inst, name, params.options);
          auto end = std::chrono::steady_clock::now();
          auto ns =
              std::chrono::duration_cast<std::chrono::nanoseconds>(end - begin).count();
          out << gen.seed << ',' << inst.n() << ',' << name << ',' << ns << ','
              << outcome.trace.max_recursion_depth << ','
              << outcome.trace.binary_search_probes << ','
              << outcome.trace.splitting_events << ',' << outcome.trace.iterations
              << "\n";
        }
      }
    }
    return kExitOk;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
}

}  // namespace arrival
