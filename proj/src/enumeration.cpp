#include "infoflow/enumeration.hpp"

#include <algorithm>
#include <unordered_set>

namespace infoflow {

std::string Bound::describe() const {
  std::string out;
  if (max_per_location) {
    out = "per-location " + std::to_string(*max_per_location);
    if (max_total_events < EventSystem::kMaxEvents)
      out += ", total " + std::to_string(max_total_events);
  } else {
    out = "total " + std::to_string(max_total_events);
  }
  return out;
}

void check_bound(const Bound& bound) {
  if (bound.max_total_events > EventSystem::kMaxEvents)
    throw Error("bound exceeds " + std::to_string(EventSystem::kMaxEvents) +
                " events");
  if (bound.max_per_location && *bound.max_per_location > bound.max_total_events)
    throw Error("per-location bound exceeds total bound");
}

namespace {

struct Config {
  EventSystem sys;
  std::vector<LocationAutomaton::StateSet> states;
  std::vector<int> last;          // last event at each location, -1 if none
  std::vector<std::size_t> count; // projection length per location
  std::string key;                // per-location label sequences
};

struct ChannelInfo {
  std::size_t sender;
  std::size_t recipient;
};

// A minimal-order execution is determined by its per-location label
// sequences, so those serve as the dedup key during the search.
std::string make_key(const std::vector<std::vector<std::uint16_t>>& traces) {
  std::string key;
  for (const auto& t : traces) {
    for (auto l : t) {
      key.push_back(static_cast<char>(l >> 8));
      key.push_back(static_cast<char>(l & 0xff));
    }
    key.push_back('\xff');
    key.push_back('\xff');
  }
  return key;
}

}  // namespace

ExecutionSet enumerate_executions(const Frame& frame, const Bound& bound) {
  require_valid(frame);
  check_bound(bound);

  const auto& locs = frame.locations();
  const auto& chans = frame.channels();
  std::vector<LocationAutomaton> automata;
  for (const auto& l : locs) automata.emplace_back(l);
  std::vector<ChannelInfo> info;
  for (const auto& c : chans)
    info.push_back({*frame.location_index(c.sender), *frame.location_index(c.recipient)});
  std::map<DataValue, std::size_t> value_index;
  for (std::size_t i = 0; i < frame.data().size(); ++i) value_index[frame.data()[i]] = i;
  const std::size_t per_loc =
      bound.max_per_location.value_or(bound.max_total_events);

  // Per-location sequences of label ids, kept beside each config.
  struct Node {
    Config cfg;
    std::vector<std::vector<std::uint16_t>> traces;
  };

  Node root;
  for (const auto& a : automata) root.cfg.states.push_back(a.initial());
  root.cfg.last.assign(locs.size(), -1);
  root.cfg.count.assign(locs.size(), 0);
  root.traces.assign(locs.size(), {});

  std::vector<EventSystem> found{root.cfg.sys};
  std::vector<Node> level{root};
  for (std::size_t depth = 0; depth < bound.max_total_events && !level.empty(); ++depth) {
    std::vector<Node> next;
    std::unordered_set<std::string> seen;
    for (const auto& node : level) {
      const Config& cfg = node.cfg;
      for (std::size_t ci = 0; ci < chans.size(); ++ci) {
        auto [s, r] = info[ci];
        if (cfg.count[s] + 1 > per_loc) continue;
        if (s != r && cfg.count[r] + 1 > per_loc) continue;
        for (const auto& label : automata[s].enabled(cfg.states[s])) {
          if (label.channel != chans[ci].id) continue;
          auto s_next = automata[s].step(cfg.states[s], label);
          LocationAutomaton::StateSet r_next;
          if (s != r) {
            r_next = automata[r].step(cfg.states[r], label);
            if (r_next.empty()) continue;
          }
          auto id = static_cast<std::uint16_t>(ci * frame.data().size() +
                                               value_index.at(label.value));
          Node child{cfg, node.traces};
          child.traces[s].push_back(id);
          if (s != r) child.traces[r].push_back(id);
          std::string key = make_key(child.traces);
          if (!seen.insert(key).second) continue;

          Config& c2 = child.cfg;
          EventSystem::Mask preds = 0;
          if (cfg.last[s] >= 0) preds |= EventSystem::Mask{1} << cfg.last[s];
          if (cfg.last[r] >= 0) preds |= EventSystem::Mask{1} << cfg.last[r];
          auto e = static_cast<int>(c2.sys.add_event({label.channel, label.value}, preds));
          c2.states[s] = std::move(s_next);
          c2.last[s] = e;
          ++c2.count[s];
          if (s != r) {
            c2.states[r] = std::move(r_next);
            c2.last[r] = e;
            ++c2.count[r];
          }
          next.push_back(std::move(child));
        }
      }
    }
    for (const auto& n : next) found.push_back(n.cfg.sys);
    level = std::move(next);
  }

  ExecutionSet out;
  out.executions.reserve(found.size());
  for (auto& sys : found) {
    CanonicalRun canonical = canonicalize(sys);
    std::string text = serialize(canonical);
    out.executions.push_back({std::move(sys), std::move(canonical), std::move(text)});
  }
  std::sort(out.executions.begin(), out.executions.end(),
            [](const Execution& a, const Execution& b) { return a.text < b.text; });
  return out;
}

std::vector<CanonicalRun> enumerate_runs(const Frame& frame,
                                         const ChannelSet& chans,
                                         const Bound& bound) {
  ExecutionUniverse universe(frame, bound);
  return universe.runs(chans).runs;
}

std::optional<int> RunTable::find(const CanonicalRun& run) const {
  return find(serialize(run));
}

std::optional<int> RunTable::find(const std::string& text) const {
  auto it = index_.find(text);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

ExecutionUniverse::ExecutionUniverse(Frame frame, Bound bound)
    : frame_(std::move(frame)), bound_(bound) {
  executions_ = enumerate_executions(frame_, bound_);
}

ExecutionUniverse::ExecutionUniverse(Frame frame, Bound bound,
                                     ExecutionSet executions)
    : frame_(std::move(frame)), bound_(bound), executions_(std::move(executions)) {}

const RunTable& ExecutionUniverse::runs(const ChannelSet& chans) {
  auto it = tables_.find(chans);
  if (it != tables_.end()) return *it->second;
  for (const auto& c : chans)
    if (!frame_.find_channel(c)) throw Error("unknown channel '" + c + "'");

  auto table = std::make_unique<RunTable>();
  table->chans = chans;
  std::vector<std::string> per_exec;
  std::map<std::string, CanonicalRun> distinct;
  for (const auto& ex : executions_.executions) {
    CanonicalRun run = canonical_restriction(ex.system, chans);
    std::string text = serialize(run);
    distinct.emplace(text, std::move(run));
    per_exec.push_back(std::move(text));
  }
  for (auto& [text, run] : distinct) {
    table->index_[text] = static_cast<int>(table->runs.size());
    table->texts.push_back(text);
    table->runs.push_back(std::move(run));
  }
  for (const auto& text : per_exec) table->of_execution.push_back(table->index_.at(text));
  return *tables_.emplace(chans, std::move(table)).first->second;
}

}  // namespace infoflow
