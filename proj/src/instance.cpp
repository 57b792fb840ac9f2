// Copyright (c) arrival contributors.
// SPDX-License-Identifier: Apache-2.0
#include "arrival/instance.hpp"

#include <algorithm>
#include <deque>
#include <limits>

#include "json.hpp"

namespace arrival {

namespace {

using ordered_json = nlohmann::ordered_json;

// Reverse BFS from the terminal set; returns the set of vertices from which
// some terminal is reachable by directed edges. Terminals count as reached.
std::vector<char> terminal_reachable(const std::vector<int>& s0,
                                     const std::vector<int>& s1,
                                     const std::vector<char>& is_terminal) {
  const int n = static_cast<int>(s0.size());
  std::vector<std::vector<int>> rev(n);
  for (int v = 0; v < n; ++v) {
    rev[s0[v]].push_back(v);
    rev[s1[v]].push_back(v);
  }
  std::vector<char> reached(n, 0);
  std::deque<int> queue;
  for (int v = 0; v < n; ++v)
    if (is_terminal[v]) {
      reached[v] = 1;
      queue.push_back(v);
    }
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int u : rev[v])
      if (!reached[u]) {
        reached[u] = 1;
        queue.push_back(u);
      }
  }
  return reached;
}

Int token_value(const ordered_json& v, const std::string& what) {
  if (v.is_string()) {
    Int t = parse_decimal_int(v.get<std::string>(), what);
    if (t < 0) throw ValidationError(what + ": negative token count");
    return t;
  }
  if (v.is_number_unsigned()) return Int(static_cast<unsigned long>(v.get<std::uint64_t>()));
  if (v.is_number_integer()) {
    auto s = v.get<std::int64_t>();
    if (s < 0) throw ValidationError(what + ": negative token count");
    return Int(static_cast<long>(s));
  }
  throw ValidationError(what + ": token count must be an integer or decimal string");
}

ordered_json emit_count(const Int& v) {
  if (v.fits_slong_p()) return ordered_json(static_cast<std::int64_t>(v.get_si()));
  return ordered_json(v.get_str());
}

}  // namespace

int Instance::index_of(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw ValidationError("unknown vertex '" + name + "'");
  return it->second;
}

std::vector<int> Instance::non_terminals() const {
  std::vector<int> out;
  for (int v = 0; v < n(); ++v)
    if (!is_terminal[v]) out.push_back(v);
  return out;
}

Instance make_instance(std::vector<std::string> names, std::vector<int> s0,
                       std::vector<int> s1, std::vector<int> terminals,
                       std::vector<Int> tokens) {
  Instance inst;
  const int n = static_cast<int>(names.size());
  if (n == 0) throw ValidationError("vertices: empty vertex list");
  for (int v = 0; v < n; ++v) {
    auto [it, fresh] = inst.index_.emplace(names[v], v);
    (void)it;
    if (!fresh) throw ValidationError("vertices: duplicate vertex id '" + names[v] + "'");
  }
  if (static_cast<int>(s0.size()) != n || static_cast<int>(s1.size()) != n)
    throw ValidationError("s0/s1 must be total on vertices");
  for (int v = 0; v < n; ++v) {
    if (s0[v] < 0 || s0[v] >= n)
      throw ValidationError("s0: successor of '" + names[v] + "' is not a vertex");
    if (s1[v] < 0 || s1[v] >= n)
      throw ValidationError("s1: successor of '" + names[v] + "' is not a vertex");
  }
  if (terminals.empty()) throw ValidationError("terminals empty");
  inst.is_terminal.assign(n, 0);
  for (int t : terminals) {
    if (t < 0 || t >= n) throw ValidationError("terminals: not a vertex");
    if (inst.is_terminal[t])
      throw ValidationError("terminals: duplicate terminal '" + names[t] + "'");
    inst.is_terminal[t] = 1;
  }
  if (static_cast<int>(tokens.size()) != n)
    throw ValidationError("tokens: must be keyed on vertices");
  inst.total_tokens = 0;
  for (int v = 0; v < n; ++v) {
    if (tokens[v] < 0)
      throw ValidationError("tokens: negative token count at '" + names[v] + "'");
    if (tokens[v] != 0 && !inst.is_terminal[v])
      throw ValidationError("tokens: '" + names[v] + "' is not a terminal");
    inst.total_tokens += tokens[v];
  }
  if (inst.total_tokens == 0) throw ValidationError("tokens: total token count is zero");

  auto reached = terminal_reachable(s0, s1, inst.is_terminal);
  for (int v = 0; v < n; ++v)
    if (!reached[v])
      throw ValidationError("no terminal reachable from '" + names[v] + "'");

  inst.names = std::move(names);
  inst.s0 = std::move(s0);
  inst.s1 = std::move(s1);
  inst.terminals = std::move(terminals);
  inst.tokens = std::move(tokens);
  return inst;
}

Instance parse_instance(const std::string& json_text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(json_text);
  } catch (const std::exception& e) {
    throw ValidationError(std::string("instance document: not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("instance document: not a JSON object");
  for (auto& [key, value] : doc.items()) {
    (void)value;
    if (key != "vertices" && key != "s0" && key != "s1" && key != "terminals" &&
        key != "tokens")
      throw ValidationError("instance document: unknown field '" + key + "'");
  }
  if (!doc.contains("vertices") || !doc["vertices"].is_array())
    throw ValidationError("vertices: missing or not an array");
  std::vector<std::string> names;
  std::unordered_map<std::string, int> index;
  for (const auto& v : doc["vertices"]) {
    if (!v.is_string()) throw ValidationError("vertices: vertex ids must be strings");
    std::string name = v.get<std::string>();
    auto [it, fresh] = index.emplace(name, static_cast<int>(names.size()));
    (void)it;
    if (!fresh) throw ValidationError("vertices: duplicate vertex id '" + name + "'");
    names.push_back(std::move(name));
  }
  const int n = static_cast<int>(names.size());
  if (n == 0) throw ValidationError("vertices: empty vertex list");

  auto successor_map = [&](const char* field) {
    if (!doc.contains(field) || !doc[field].is_object())
      throw ValidationError(std::string(field) + ": missing or not an object");
    std::vector<int> succ(n, -1);
    for (auto& [key, value] : doc[field].items()) {
      auto it = index.find(key);
      if (it == index.end())
        throw ValidationError(std::string(field) + ": unknown vertex '" + key + "'");
      if (!value.is_string())
        throw ValidationError(std::string(field) + ": successor of '" + key +
                              "' must be a vertex id string");
      auto target = index.find(value.get<std::string>());
      if (target == index.end())
        throw ValidationError(std::string(field) + ": successor of '" + key +
                              "' references unknown vertex '" +
                              value.get<std::string>() + "'");
      succ[it->second] = target->second;
    }
    for (int v = 0; v < n; ++v)
      if (succ[v] < 0)
        throw ValidationError(std::string(field) + ": missing successor for '" +
                              names[v] + "'");
    return succ;
  };
  std::vector<int> s0 = successor_map("s0");
  std::vector<int> s1 = successor_map("s1");

  if (!doc.contains("terminals") || !doc["terminals"].is_array())
    throw ValidationError("terminals: missing or not an array");
  if (doc["terminals"].empty()) throw ValidationError("terminals empty");
  std::vector<int> terminals;
  for (const auto& t : doc["terminals"]) {
    if (!t.is_string()) throw ValidationError("terminals: vertex ids must be strings");
    auto it = index.find(t.get<std::string>());
    if (it == index.end())
      throw ValidationError("terminals: unknown vertex '" + t.get<std::string>() + "'");
    terminals.push_back(it->second);
  }

  std::vector<Int> tokens(n, 0);
  if (doc.contains("tokens")) {
    if (!doc["tokens"].is_object())
      throw ValidationError("tokens: not an object");
    for (auto& [key, value] : doc["tokens"].items()) {
      auto it = index.find(key);
      if (it == index.end())
        throw ValidationError("tokens: unknown vertex '" + key + "'");
      tokens[it->second] = token_value(value, "tokens['" + key + "']");
    }
  }

  return make_instance(std::move(names), std::move(s0), std::move(s1),
                       std::move(terminals), std::move(tokens));
}

std::string serialize_instance(const Instance& inst) {
  ordered_json doc;
  doc["vertices"] = inst.names;
  ordered_json s0 = ordered_json::object();
  ordered_json s1 = ordered_json::object();
  for (int v = 0; v < inst.n(); ++v) {
    s0[inst.names[v]] = inst.names[inst.s0[v]];
    s1[inst.names[v]] = inst.names[inst.s1[v]];
  }
  doc["s0"] = std::move(s0);
  doc["s1"] = std::move(s1);
  ordered_json terms = ordered_json::array();
  for (int t : inst.terminals) terms.push_back(inst.names[t]);
  doc["terminals"] = std::move(terms);
  ordered_json toks = ordered_json::object();
  for (int t : inst.terminals) toks[inst.names[t]] = emit_count(inst.tokens[t]);
  doc["tokens"] = std::move(toks);
  return doc.dump(2) + "\n";
}

std::size_t UndirectedView::edge_count() const {
  std::size_t twice = 0;
  for (const auto& row : adj) twice += row.size();
  return twice / 2;
}

bool UndirectedView::has_edge(int local_u, int local_v) const {
  const auto& row = adj[local_u];
  return std::binary_search(row.begin(), row.end(), local_v);
}

UndirectedView undirected_view(const Instance& inst, const std::vector<int>& keep) {
  UndirectedView view;
  view.vertices = keep;
  std::sort(view.vertices.begin(), view.vertices.end());
  std::vector<int> local(inst.n(), -1);
  for (std::size_t i = 0; i < view.vertices.size(); ++i)
    local[view.vertices[i]] = static_cast<int>(i);
  view.adj.assign(view.vertices.size(), {});
  for (int u : view.vertices)
    for (int w : {inst.s0[u], inst.s1[u]}) {
      if (w == u || local[w] < 0) continue;  // self-loops removed, outside dropped
      view.adj[local[u]].push_back(local[w]);
      view.adj[local[w]].push_back(local[u]);
    }
  for (auto& row : view.adj) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }
  return view;
}

}  // namespace arrival
