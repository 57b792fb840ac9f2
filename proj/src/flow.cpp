// Copyright (c) arrival contributors.
// SPDX-License-Identifier: Apache-2.0
#include "arrival/flow.hpp"

#include "json.hpp"

namespace arrival {

namespace {

using ordered_json = nlohmann::ordered_json;

Int parse_count(const ordered_json& v, const std::string& what) {
  if (v.is_string()) {
    Int t = parse_decimal_int(v.get<std::string>(), what);
    if (t < 0) throw ValidationError(what + ": negative flow value");
    return t;
  }
  if (v.is_number_unsigned()) return Int(static_cast<unsigned long>(v.get<std::uint64_t>()));
  if (v.is_number_integer()) {
    auto s = v.get<std::int64_t>();
    if (s < 0) throw ValidationError(what + ": negative flow value");
    return Int(static_cast<long>(s));
  }
  throw ValidationError(what + ": flow value must be an integer or decimal string");
}

ordered_json emit_count(const Int& v) {
  if (v.fits_slong_p()) return ordered_json(static_cast<std::int64_t>(v.get_si()));
  return ordered_json(v.get_str());
}

}  // namespace

std::string violation_name(FlowViolation kind) {
  switch (kind) {
    case FlowViolation::NonNegative: return "negative value";
    case FlowViolation::Switching: return "switching behavior";
    case FlowViolation::Conservation: return "flow conservation";
    case FlowViolation::Source: return "source constraint";
  }
  return "unknown";
}

FlowReport verify_switching_flow(const Instance& inst, const SwitchingFlow& flow) {
  const int n = inst.n();
  if (static_cast<int>(flow.even.size()) != n || static_cast<int>(flow.odd.size()) != n)
    throw ValidationError("flow key mismatch: flow is not keyed on the instance's vertices");
  FlowReport report;
  for (int v = 0; v < n; ++v)
    if (flow.even[v] < 0 || flow.odd[v] < 0)
      report.violations.emplace_back(FlowViolation::NonNegative, v);
  for (int v = 0; v < n; ++v) {
    Int d = flow.even[v] - flow.odd[v];
    if (d != 0 && d != 1)
      report.violations.emplace_back(FlowViolation::Switching, v);
  }
  auto in = inflows(inst, flow);
  for (int v = 0; v < n; ++v) {
    if (inst.is_terminal[v]) {
      if (flow.out(v) != inst.tokens[v])
        report.violations.emplace_back(FlowViolation::Source, v);
    } else {
      if (flow.out(v) != in[v])
        report.violations.emplace_back(FlowViolation::Conservation, v);
    }
  }
  report.valid = report.violations.empty();
  Int bound = pow2(static_cast<unsigned long>(n)) * inst.total_tokens;
  report.bound_ok = true;
  for (int v = 0; v < n; ++v)
    if (flow.even[v] >= bound || flow.odd[v] >= bound) report.bound_ok = false;
  return report;
}

std::vector<Int> inflows(const Instance& inst, const SwitchingFlow& flow) {
  std::vector<Int> in(static_cast<std::size_t>(inst.n()), 0);
  for (int u = 0; u < inst.n(); ++u) {
    in[inst.s0[u]] += flow.even[u];
    in[inst.s1[u]] += flow.odd[u];
  }
  return in;
}

ArrivalVector arrivals_of(const Instance& inst, const SwitchingFlow& flow) {
  auto report = verify_switching_flow(inst, flow);
  if (!report.valid) {
    std::string detail;
    for (const auto& [kind, v] : report.violations) {
      if (!detail.empty()) detail += "; ";
      detail += violation_name(kind) + " at '" + inst.names[v] + "'";
    }
    throw ValidationError("invalid flow: " + detail);
  }
  auto in = inflows(inst, flow);
  ArrivalVector arrivals;
  arrivals.counts.reserve(inst.terminals.size());
  for (int t : inst.terminals) arrivals.counts.push_back(in[t]);
  return arrivals;
}

SwitchingFlow parse_flow(const Instance& inst, const std::string& json_text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(json_text);
  } catch (const std::exception& e) {
    throw ValidationError(std::string("flow document: not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("flow") || !doc["flow"].is_object())
    throw ValidationError("flow document: missing 'flow' object");
  auto flow = SwitchingFlow::zero(inst.n());
  std::vector<char> seen(static_cast<std::size_t>(inst.n()), 0);
  for (auto& [key, value] : doc["flow"].items()) {
    int v;
    try {
      v = inst.index_of(key);
    } catch (const ValidationError&) {
      throw ValidationError("flow key mismatch: unknown vertex '" + key + "'");
    }
    if (!value.is_object() || !value.contains("even") || !value.contains("odd"))
      throw ValidationError("flow['" + key + "']: expected {\"even\":..., \"odd\":...}");
    flow.even[v] = parse_count(value["even"], "flow['" + key + "'].even");
    flow.odd[v] = parse_count(value["odd"], "flow['" + key + "'].odd");
    seen[v] = 1;
  }
  for (int v = 0; v < inst.n(); ++v)
    if (!seen[v])
      throw ValidationError("flow key mismatch: missing vertex '" + inst.names[v] + "'");
  return flow;
}

std::string serialize_flow(const Instance& inst, const SwitchingFlow& flow) {
  if (static_cast<int>(flow.even.size()) != inst.n())
    throw ValidationError("flow key mismatch: flow is not keyed on the instance's vertices");
  ordered_json edges = ordered_json::object();
  for (int v = 0; v < inst.n(); ++v) {
    ordered_json slot = ordered_json::object();
    slot["even"] = emit_count(flow.even[v]);
    slot["odd"] = emit_count(flow.odd[v]);
    edges[inst.names[v]] = std::move(slot);
  }
  ordered_json doc;
  doc["flow"] = std::move(edges);
  return doc.dump(2) + "\n";
}

}  // namespace arrival
