#include "infoflow/purge.hpp"

#include <algorithm>

namespace infoflow {

const Domain& MachineSpec::domain_of(const std::string& action) const {
  for (const auto& a : actions)
    if (a.name == action) return a.domain;
  throw Error("unknown action '" + action + "'");
}

std::vector<std::string> validate_machine(const MachineSpec& m) {
  std::vector<std::string> out;
  std::set<Domain> domains(m.domains.begin(), m.domains.end());
  if (domains.size() != m.domains.size()) out.push_back("duplicate domain");
  if (domains.count(kMachineLocation))
    out.push_back(std::string("domain may not be named '") + kMachineLocation + "'");
  for (const auto& d : m.domains)
    if (!m.influences(d, d)) out.push_back("influence is not reflexive at '" + d + "'");
  for (const auto& [a, b] : m.influence)
    if (!domains.count(a) || !domains.count(b))
      out.push_back("influence pair names an unknown domain");
  std::set<std::string> actions;
  for (const auto& a : m.actions) {
    if (!actions.insert(a.name).second) out.push_back("duplicate action '" + a.name + "'");
    if (!domains.count(a.domain)) out.push_back("action '" + a.name + "' has unknown domain");
  }
  std::set<std::string> states(m.states.begin(), m.states.end());
  std::set<std::string> outputs(m.outputs.begin(), m.outputs.end());
  if (!states.count(m.initial)) out.push_back("initial state is not a state");
  for (const auto& t : m.transitions) {
    if (!states.count(t.from) || !states.count(t.to))
      out.push_back("transition names an unknown state");
    if (!actions.count(t.action)) out.push_back("transition names unknown action '" + t.action + "'");
  }
  for (const auto& s : m.states)
    for (const auto& d : m.domains) {
      auto it = m.obs.find({s, d});
      if (it == m.obs.end()) out.push_back("obs(" + s + ", " + d + ") is undefined");
      else if (!outputs.count(it->second)) out.push_back("obs(" + s + ", " + d + ") is not an output");
    }
  return out;
}

Frame star_frame(const MachineSpec& m) {
  auto problems = validate_machine(m);
  if (!problems.empty()) throw Error("invalid machine: " + problems.front());

  std::set<DataValue> data;
  for (const auto& a : m.actions) data.insert(a.name);
  data.insert(m.outputs.begin(), m.outputs.end());

  std::vector<Channel> channels;
  std::vector<Location> locations;
  Lts machine{"idle:" + m.initial, {}};
  for (const auto& t : m.transitions) {
    const Domain& d = m.domain_of(t.action);
    machine.transitions.push_back(
        {"idle:" + t.from, {in_channel(d), t.action}, "pend:" + t.to + ":" + d});
  }
  for (const auto& s : m.states)
    for (const auto& d : m.domains)
      machine.transitions.push_back(
          {"pend:" + s + ":" + d, {out_channel(d), m.obs.at({s, d})}, "idle:" + s});
  locations.push_back({kMachineLocation, machine});

  for (const auto& d : m.domains) {
    channels.push_back({in_channel(d), d, kMachineLocation});
    channels.push_back({out_channel(d), kMachineLocation, d});
    Lts dom{"s", {}};
    for (const auto& a : m.actions)
      if (a.domain == d) dom.transitions.push_back({"s", {in_channel(d), a.name}, "s"});
    for (const auto& o : m.outputs) dom.transitions.push_back({"s", {out_channel(d), o}, "s"});
    locations.push_back({d, dom});
  }
  return Frame({data.begin(), data.end()}, std::move(locations), std::move(channels));
}

ChannelSet input_channels(const MachineSpec& m) {
  ChannelSet out;
  for (const auto& d : m.domains) out.insert(in_channel(d));
  return out;
}

ChannelSet visible_inputs(const MachineSpec& m, const Domain& target) {
  ChannelSet out;
  for (const auto& d : m.domains)
    if (m.influences(d, target)) out.insert(in_channel(d));
  return out;
}

ChannelSet view_channels(const Domain& target) {
  return {in_channel(target), out_channel(target)};
}

ExecutionUniverse quiescent_universe(const MachineSpec& m, std::size_t rounds) {
  Frame frame = star_frame(m);
  Bound bound = Bound::per_location(2 * rounds);
  ExecutionSet all = enumerate_executions(frame, bound);
  ChannelSet in = input_channels(m);
  ExecutionSet kept;
  for (auto& ex : all.executions) {
    std::size_t n_in = 0, n_out = 0;
    for (const auto& e : ex.system.events()) (in.count(e.channel) ? n_in : n_out)++;
    if (n_in == n_out) kept.executions.push_back(std::move(ex));
  }
  return ExecutionUniverse(std::move(frame), bound, std::move(kept));
}

std::string purge_name(PurgeKind kind) {
  switch (kind) {
    case PurgeKind::kGoguenMeseguer: return "gm";
    case PurgeKind::kHaighYoung: return "hy";
    default: return "broken";
  }
}

std::vector<Event> inputs(const EventSystem& sys, const MachineSpec& m) {
  ChannelSet in = input_channels(m);
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < sys.size(); ++i)
    if (in.count(sys.event(i).channel)) idx.push_back(i);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (!sys.comparable(a, b)) throw Error("input events are unordered");
    return sys.precedes(a, b);
  });
  std::vector<Event> out;
  for (auto i : idx) out.push_back(sys.event(i));
  return out;
}

std::string purge(const MachineSpec& m, PurgeKind kind, const Domain& target,
                  const EventSystem& execution) {
  std::vector<Event> in = inputs(execution, m);
  std::vector<bool> keep(in.size(), false);
  if (kind == PurgeKind::kGoguenMeseguer) {
    for (std::size_t k = 0; k < in.size(); ++k)
      keep[k] = m.influences(m.domain_of(in[k].message), target);
  } else if (kind == PurgeKind::kHaighYoung) {
    // Scan backwards, collecting the domains that some retained later input
    // (or the target itself) lets the current input reach.
    std::set<Domain> sinks{target};
    for (std::size_t k = in.size(); k-- > 0;) {
      const Domain& d = m.domain_of(in[k].message);
      for (const auto& s : sinks)
        if (m.influences(d, s)) {
          keep[k] = true;
          break;
        }
      if (keep[k]) sinks.insert(d);
    }
  }
  std::string out;
  for (std::size_t k = 0; k < in.size(); ++k) {
    if (!keep[k]) continue;
    if (!out.empty()) out += ' ';
    out += in[k].channel + ":" + in[k].message;
  }
  return out;
}

PurgeValidation validate_purge(const MachineSpec& m, PurgeKind kind,
                               const Domain& target, ExecutionUniverse& u) {
  PurgeValidation v;
  const auto& in = u.runs(input_channels(m));
  const auto& vis = u.runs(visible_inputs(m, target));
  std::map<int, std::pair<std::string, std::size_t>> by_input;
  std::map<std::string, std::size_t> by_purge;
  const auto& exs = u.executions().executions;
  for (std::size_t e = 0; e < exs.size(); ++e) {
    std::string p = purge(m, kind, target, exs[e].system);
    auto [it, fresh] = by_input.emplace(in.of_execution[e], std::make_pair(p, e));
    if (!fresh && it->second.first != p && v.inputs_only) {
      v.inputs_only = false;
      v.witness = {exs[it->second.second].text, exs[e].text};
    }
    auto [jt, fresh2] = by_purge.emplace(p, e);
    if (!fresh2 && vis.of_execution[jt->second] != vis.of_execution[e] && v.determines_vis) {
      v.determines_vis = false;
      if (v.inputs_only) v.witness = {exs[jt->second].text, exs[e].text};
    }
  }
  return v;
}

MachineVerdict check_NI(const MachineSpec& m, PurgeKind kind,
                        const Domain& target, ExecutionUniverse& u) {
  MachineVerdict v;
  const auto& view = u.runs(view_channels(target));
  std::map<std::string, std::size_t> first;
  const auto& exs = u.executions().executions;
  for (std::size_t e = 0; e < exs.size(); ++e) {
    auto [it, fresh] = first.emplace(purge(m, kind, target, exs[e].system), e);
    if (!fresh && view.of_execution[it->second] != view.of_execution[e]) {
      v.holds = false;
      v.witness = {exs[it->second].text, exs[e].text};
      return v;
    }
  }
  return v;
}

MachineVerdict check_ND(const MachineSpec& m, PurgeKind kind,
                        const Domain& target, ExecutionUniverse& u) {
  MachineVerdict v;
  CompatTable t = compat_table(u, view_channels(target), input_channels(m));
  const auto& exs = u.executions().executions;
  // Purge classes: their members and the IN-runs they realize.
  std::map<std::string, std::vector<std::size_t>> classes;
  for (std::size_t e = 0; e < exs.size(); ++e)
    classes[purge(m, kind, target, exs[e].system)].push_back(e);
  for (const auto& [p, members] : classes) {
    std::map<int, std::size_t> views, ins;
    for (auto e : members) {
      views.emplace(t.from->of_execution[e], e);
      ins.emplace(t.to->of_execution[e], e);
    }
    for (const auto& [view, a] : views)
      for (const auto& [run, b] : ins)
        if (!t.contains(view, run)) {
          v.holds = false;
          v.witness = {exs[a].text, exs[b].text};
          return v;
        }
  }
  return v;
}

BlurSpec purge_blur(const MachineSpec& m, PurgeKind kind, const Domain& target,
                    ExecutionUniverse& u) {
  const auto& in = u.runs(input_channels(m));
  std::map<std::string, std::string> key;
  const auto& exs = u.executions().executions;
  for (std::size_t e = 0; e < exs.size(); ++e)
    key.emplace(in.texts[static_cast<std::size_t>(in.of_execution[e])],
                purge(m, kind, target, exs[e].system));
  PartitionBlur f;
  f.name = "f^p(" + purge_name(kind) + "," + target + ")";
  f.key = [key](const CanonicalRun& r) {
    auto it = key.find(serialize(r));
    if (it == key.end()) throw Error("IN-run not realized in the universe: " + serialize(r));
    return it->second;
  };
  return f;
}

}  // namespace infoflow
