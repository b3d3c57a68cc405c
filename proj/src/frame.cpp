#include "infoflow/frame.hpp"

#include <algorithm>
#include <sstream>

namespace infoflow {

std::string to_string(const Label& label) {
  return label.channel + ":" + label.value;
}

std::string to_string(const Trace& trace) {
  if (trace.empty()) return "<>";
  std::string out = "<";
  for (std::size_t i = 0; i < trace.size(); ++i) {
    if (i) out += " ";
    out += to_string(trace[i]);
  }
  return out + ">";
}

Frame::Frame(std::vector<DataValue> data, std::vector<Location> locations,
             std::vector<Channel> channels)
    : data_(std::move(data)),
      locations_(std::move(locations)),
      channels_(std::move(channels)) {
  for (std::size_t i = 0; i < locations_.size(); ++i)
    location_index_.emplace(locations_[i].id, i);
  for (std::size_t i = 0; i < channels_.size(); ++i)
    channel_index_.emplace(channels_[i].id, i);
  data_set_.insert(data_.begin(), data_.end());
}

const Location* Frame::find_location(const LocationId& id) const {
  auto it = location_index_.find(id);
  return it == location_index_.end() ? nullptr : &locations_[it->second];
}

const Channel* Frame::find_channel(const ChannelId& id) const {
  auto it = channel_index_.find(id);
  return it == channel_index_.end() ? nullptr : &channels_[it->second];
}

std::optional<std::size_t> Frame::location_index(const LocationId& id) const {
  auto it = location_index_.find(id);
  if (it == location_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> Frame::channel_index(const ChannelId& id) const {
  auto it = channel_index_.find(id);
  if (it == channel_index_.end()) return std::nullopt;
  return it->second;
}

bool Frame::has_value(const DataValue& v) const {
  return data_set_.count(v) != 0;
}

const Location& Frame::location(const LocationId& id) const {
  const Location* loc = find_location(id);
  if (!loc) throw Error("unknown location '" + id + "'");
  return *loc;
}

const Channel& Frame::channel(const ChannelId& id) const {
  const Channel* ch = find_channel(id);
  if (!ch) throw Error("unknown channel '" + id + "'");
  return *ch;
}

ChannelSet Frame::chans(const LocationId& loc) const {
  ChannelSet out;
  for (const auto& c : channels_)
    if (c.sender == loc || c.recipient == loc) out.insert(c.id);
  return out;
}

ChannelSet Frame::chans(const LocationSet& locs) const {
  ChannelSet out;
  for (const auto& c : channels_)
    if (locs.count(c.sender) || locs.count(c.recipient)) out.insert(c.id);
  return out;
}

LocationSet Frame::pends(const ChannelSet& chans) const {
  LocationSet out;
  for (const auto& id : chans) {
    const Channel& c = channel(id);
    out.insert(c.sender);
    out.insert(c.recipient);
  }
  return out;
}

ChannelSet Frame::all_channels() const {
  ChannelSet out;
  for (const auto& c : channels_) out.insert(c.id);
  return out;
}

LocationSet Frame::all_locations() const {
  LocationSet out;
  for (const auto& l : locations_) out.insert(l.id);
  return out;
}

std::optional<LabelKind> Frame::classify(const Label& label,
                                         const LocationId& loc) const {
  const Channel* c = find_channel(label.channel);
  if (!c) return std::nullopt;
  if (c->sender == loc && c->recipient == loc) return LabelKind::kLocal;
  if (c->sender == loc) return LabelKind::kTransmission;
  if (c->recipient == loc) return LabelKind::kReception;
  return std::nullopt;
}

namespace {

void check_label(const Frame& frame, const Location& loc, const Label& label,
                 std::vector<Violation>& out) {
  if (!frame.classify(label, loc.id)) {
    out.push_back({"foreign channel", loc.id,
                   "label " + to_string(label) + " uses a channel outside chans(" +
                       loc.id + ")"});
  }
  if (!frame.has_value(label.value)) {
    out.push_back({"value outside domain", loc.id,
                   "label " + to_string(label) + " carries undeclared value"});
  }
}

}  // namespace

ValidationReport validate_frame(const Frame& frame) {
  ValidationReport report;
  auto& out = report.violations;

  std::set<DataValue> seen_values;
  for (const auto& v : frame.data())
    if (!seen_values.insert(v).second)
      out.push_back({"duplicate value", v, "data value declared twice"});

  std::set<LocationId> seen_locs;
  for (const auto& l : frame.locations())
    if (!seen_locs.insert(l.id).second)
      out.push_back({"duplicate location", l.id, "location declared twice"});

  std::map<ChannelId, const Channel*> seen_chans;
  for (const auto& c : frame.channels()) {
    auto [it, fresh] = seen_chans.emplace(c.id, &c);
    if (!fresh) {
      if (it->second->sender != c.sender ||
          it->second->recipient != c.recipient) {
        out.push_back({"duplicate endpoint ownership", c.id,
                       "channel endpoints assigned to more than one location"});
      } else {
        out.push_back({"duplicate channel", c.id, "channel declared twice"});
      }
    }
    if (!frame.find_location(c.sender))
      out.push_back({"dangling endpoint", c.id,
                     "sender '" + c.sender + "' is not a location"});
    if (!frame.find_location(c.recipient))
      out.push_back({"dangling endpoint", c.id,
                     "recipient '" + c.recipient + "' is not a location"});
  }

  for (const auto& loc : frame.locations()) {
    if (const auto* ex = std::get_if<ExplicitTraces>(&loc.behavior)) {
      std::set<Trace> members(ex->traces.begin(), ex->traces.end());
      for (const auto& t : ex->traces)
        for (const auto& label : t) check_label(frame, loc, label, out);
      if (!members.count(Trace{})) {
        out.push_back({"not prefix-closed", loc.id,
                       "explicit trace set lacks the empty trace"});
      }
      for (const auto& t : members) {
        for (std::size_t n = 1; n < t.size(); ++n) {
          Trace prefix(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(n));
          if (!members.count(prefix)) {
            out.push_back({"not prefix-closed", loc.id,
                           "prefix " + to_string(prefix) + " of " +
                               to_string(t) + " is missing"});
            break;
          }
        }
      }
    } else {
      const auto& lts = std::get<Lts>(loc.behavior);
      if (lts.initial.empty())
        out.push_back({"missing initial state", loc.id, "LTS has no initial state"});
      for (const auto& t : lts.transitions) check_label(frame, loc, t.label, out);
    }
  }
  return report;
}

void require_valid(const Frame& frame) {
  auto report = validate_frame(frame);
  if (report.ok()) return;
  std::ostringstream os;
  os << "malformed frame:";
  for (const auto& v : report.violations)
    os << " [" << v.kind << " " << v.subject << ": " << v.detail << "]";
  throw Error(os.str());
}

Graph frame_graph(const Frame& frame) {
  Graph g;
  for (const auto& l : frame.locations()) g.vertices.push_back(l.id);
  for (const auto& c : frame.channels()) g.edges.emplace(c.sender, c.recipient);
  return g;
}

Graph undirected_frame_graph(const Frame& frame) {
  Graph g;
  for (const auto& l : frame.locations()) g.vertices.push_back(l.id);
  for (const auto& c : frame.channels())
    g.edges.emplace(std::min(c.sender, c.recipient),
                    std::max(c.sender, c.recipient));
  return g;
}

LocationAutomaton::LocationAutomaton(const Location& loc) {
  if (const auto* ex = std::get_if<ExplicitTraces>(&loc.behavior)) {
    // Trie over the listed traces; state 0 is the empty prefix.
    add_state("");
    initial_ = {0};
    for (const auto& t : ex->traces) {
      std::uint32_t cur = 0;
      std::string key;
      for (const auto& label : t) {
        key += to_string(label);
        key += '\x1f';
        auto it = state_ids_.find(key);
        std::uint32_t next;
        if (it == state_ids_.end()) {
          next = add_state(key);
        } else {
          next = it->second;
        }
        auto& succ = delta_[cur][label];
        if (std::find(succ.begin(), succ.end(), next) == succ.end())
          succ.push_back(next);
        cur = next;
      }
    }
  } else {
    const auto& lts = std::get<Lts>(loc.behavior);
    initial_ = {add_state(lts.initial)};
    for (const auto& t : lts.transitions) {
      std::uint32_t from = add_state(t.from);
      std::uint32_t to = add_state(t.to);
      auto& succ = delta_[from][t.label];
      if (std::find(succ.begin(), succ.end(), to) == succ.end())
        succ.push_back(to);
    }
  }
}

std::uint32_t LocationAutomaton::add_state(const std::string& name) {
  auto it = state_ids_.find(name);
  if (it != state_ids_.end()) return it->second;
  auto id = static_cast<std::uint32_t>(delta_.size());
  state_ids_.emplace(name, id);
  delta_.emplace_back();
  return id;
}

LocationAutomaton::StateSet LocationAutomaton::step(const StateSet& from,
                                                   const Label& label) const {
  StateSet out;
  for (auto s : from) {
    auto it = delta_[s].find(label);
    if (it == delta_[s].end()) continue;
    out.insert(out.end(), it->second.begin(), it->second.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Label> LocationAutomaton::enabled(const StateSet& from) const {
  std::vector<Label> out;
  for (auto s : from)
    for (const auto& [label, succ] : delta_[s]) out.push_back(label);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool LocationAutomaton::accepts(const Trace& trace) const {
  StateSet cur = initial_;
  for (const auto& label : trace) {
    cur = step(cur, label);
    if (cur.empty()) return false;
  }
  return true;
}

std::set<Trace> location_language(const Frame& frame, const LocationId& loc,
                                  std::size_t max_len) {
  const Location& location = frame.location(loc);
  if (const auto* ex = std::get_if<ExplicitTraces>(&location.behavior)) {
    std::set<Trace> out;
    for (const auto& t : ex->traces)
      if (t.size() <= max_len) out.insert(t);
    return out;
  }
  LocationAutomaton automaton(location);
  std::set<Trace> out;
  std::vector<std::pair<Trace, LocationAutomaton::StateSet>> frontier{
      {Trace{}, automaton.initial()}};
  out.insert(Trace{});
  for (std::size_t len = 0; len < max_len; ++len) {
    std::vector<std::pair<Trace, LocationAutomaton::StateSet>> next;
    for (const auto& [trace, states] : frontier) {
      for (const auto& label : automaton.enabled(states)) {
        Trace ext = trace;
        ext.push_back(label);
        auto succ = automaton.step(states, label);
        if (out.insert(ext).second) next.emplace_back(std::move(ext), std::move(succ));
      }
    }
    frontier = std::move(next);
  }
  return out;
}

}  // namespace infoflow
