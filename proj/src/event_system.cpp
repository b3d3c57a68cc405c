#include "infoflow/event_system.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <map>

namespace infoflow {

namespace {

constexpr EventSystem::Mask bit(std::size_t i) {
  return EventSystem::Mask{1} << i;
}

template <typename Fn>
void for_each_bit(EventSystem::Mask m, Fn fn) {
  while (m) {
    auto i = static_cast<std::size_t>(std::countr_zero(m));
    fn(i);
    m &= m - 1;
  }
}

}  // namespace

EventSystem::EventSystem(
    std::vector<Event> events,
    const std::vector<std::pair<std::size_t, std::size_t>>& order)
    : events_(std::move(events)), below_(events_.size(), 0) {
  if (events_.size() > kMaxEvents)
    throw Error("event system exceeds " + std::to_string(kMaxEvents) + " events");
  for (auto [a, b] : order) {
    if (a >= events_.size() || b >= events_.size())
      throw Error("order pair references a missing event");
    below_[b] |= bit(a);
  }
  // Warshall closure over bitmasks.
  for (std::size_t k = 0; k < events_.size(); ++k)
    for (std::size_t j = 0; j < events_.size(); ++j)
      if (below_[j] & bit(k)) below_[j] |= below_[k];
  for (std::size_t j = 0; j < events_.size(); ++j)
    if (below_[j] & bit(j)) throw Error("event order is cyclic");
}

std::size_t EventSystem::add_event(Event e, Mask preds) {
  if (events_.size() >= kMaxEvents)
    throw Error("event system exceeds " + std::to_string(kMaxEvents) + " events");
  Mask closed = preds;
  for_each_bit(preds, [&](std::size_t i) { closed |= below_[i]; });
  events_.push_back(std::move(e));
  below_.push_back(closed);
  return events_.size() - 1;
}

std::vector<std::pair<std::size_t, std::size_t>> EventSystem::covering_pairs()
    const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t j = 0; j < events_.size(); ++j) {
    Mask indirect = 0;
    for_each_bit(below_[j], [&](std::size_t k) { indirect |= below_[k]; });
    for_each_bit(below_[j] & ~indirect,
                 [&](std::size_t i) { out.emplace_back(i, j); });
  }
  std::sort(out.begin(), out.end());
  return out;
}

EventSystem EventSystem::subsystem(Mask keep) const {
  EventSystem out;
  std::vector<std::size_t> new_index(events_.size(), 0);
  for (std::size_t i = 0; i < events_.size(); ++i) {
    if (!(keep & bit(i))) continue;
    new_index[i] = out.events_.size();
    out.events_.push_back(events_[i]);
  }
  for (std::size_t i = 0; i < events_.size(); ++i) {
    if (!(keep & bit(i))) continue;
    Mask m = 0;
    for_each_bit(below_[i] & keep, [&](std::size_t k) { m |= bit(new_index[k]); });
    out.below_.push_back(m);
  }
  return out;
}

std::size_t CanonicalRun::event_count() const {
  std::size_t n = 0;
  for (const auto& [c, vals] : channels) n += vals.size();
  return n;
}

std::string serialize(const CanonicalRun& run) {
  std::string out = "{";
  for (std::size_t i = 0; i < run.channels.size(); ++i) {
    if (i) out += ' ';
    out += run.channels[i].first;
    out += ":[";
    const auto& vals = run.channels[i].second;
    for (std::size_t k = 0; k < vals.size(); ++k) {
      if (k) out += ' ';
      out += vals[k];
    }
    out += ']';
  }
  if (!run.order.empty()) {
    out += " |";
    for (const auto& [a, b] : run.order) {
      out += ' ';
      out += run.channels[a.channel].first + "#" + std::to_string(a.ordinal);
      out += '<';
      out += run.channels[b.channel].first + "#" + std::to_string(b.ordinal);
    }
  }
  out += '}';
  return out;
}

namespace {

class RunParser {
 public:
  explicit RunParser(std::string_view text) : text_(text) {}

  CanonicalRun parse() {
    expect('{');
    std::vector<std::pair<ChannelId, std::vector<DataValue>>> channels;
    std::vector<std::pair<std::string, std::string>> raw_order;
    skip_ws();
    while (peek() != '}' && peek() != '|') {
      std::string name = token(":");
      expect(':');
      expect('[');
      std::vector<DataValue> vals;
      skip_ws();
      while (peek() != ']') {
        vals.push_back(token("]"));
        skip_ws();
      }
      expect(']');
      channels.emplace_back(std::move(name), std::move(vals));
      skip_ws();
    }
    if (peek() == '|') {
      ++pos_;
      skip_ws();
      while (peek() != '}') {
        std::string a = token("<");
        expect('<');
        std::string b = token("}");
        raw_order.emplace_back(std::move(a), std::move(b));
        skip_ws();
      }
    }
    expect('}');
    skip_ws();
    if (pos_ != text_.size()) fail("trailing characters");

    // Rebuild through an event system so the result is canonical even if
    // the text listed channels out of order or gave a non-reduced order.
    std::vector<Event> events;
    std::map<std::string, std::size_t> index;
    std::vector<std::pair<std::size_t, std::size_t>> order;
    for (const auto& [name, vals] : channels) {
      for (std::size_t k = 0; k < vals.size(); ++k) {
        index[name + "#" + std::to_string(k)] = events.size();
        if (k > 0) order.emplace_back(events.size() - 1, events.size());
        events.push_back({name, vals[k]});
      }
    }
    for (const auto& [a, b] : raw_order) {
      auto ia = index.find(a);
      auto ib = index.find(b);
      if (ia == index.end() || ib == index.end())
        fail("order pair references unknown event " + a + "<" + b);
      order.emplace_back(ia->second, ib->second);
    }
    return canonicalize(EventSystem(std::move(events), order));
  }

 private:
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }
  void expect(char c) {
    skip_ws();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  std::string token(std::string_view stops) {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
           stops.find(text_[pos_]) == std::string_view::npos &&
           text_[pos_] != '}' && text_[pos_] != ']')
      ++pos_;
    if (pos_ == start) fail("expected a name");
    return std::string(text_.substr(start, pos_ - start));
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw Error("bad run text at offset " + std::to_string(pos_) + ": " + what);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

CanonicalRun parse_run(std::string_view text) { return RunParser(text).parse(); }

EventSystem to_event_system(const CanonicalRun& run) {
  std::vector<Event> events;
  std::vector<std::size_t> base;
  std::vector<std::pair<std::size_t, std::size_t>> order;
  for (const auto& [name, vals] : run.channels) {
    base.push_back(events.size());
    for (std::size_t k = 0; k < vals.size(); ++k) {
      if (k > 0) order.emplace_back(events.size() - 1, events.size());
      events.push_back({name, vals[k]});
    }
  }
  for (const auto& [a, b] : run.order)
    order.emplace_back(base[a.channel] + a.ordinal, base[b.channel] + b.ordinal);
  return EventSystem(std::move(events), order);
}

Projection project(const EventSystem& sys, const Frame& frame,
                   const LocationId& loc) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < sys.size(); ++i) {
    const Channel& c = frame.channel(sys.event(i).channel);
    if (c.sender == loc || c.recipient == loc) idx.push_back(i);
  }
  Projection out;
  for (std::size_t a = 0; a < idx.size(); ++a) {
    for (std::size_t b = a + 1; b < idx.size(); ++b) {
      if (!sys.comparable(idx[a], idx[b])) {
        out.linear = false;
        out.incomparable = std::make_pair(idx[a], idx[b]);
        return out;
      }
    }
  }
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return sys.precedes(a, b);
  });
  for (auto i : idx) out.trace.push_back(sys.event(i).label());
  return out;
}

ExecutionCheck is_execution(const EventSystem& sys, const Frame& frame) {
  for (const auto& e : sys.events()) {
    if (!frame.find_channel(e.channel)) {
      return {false, "reference", "", "unknown channel '" + e.channel + "'"};
    }
  }
  for (const auto& loc : frame.locations()) {
    Projection p = project(sys, frame, loc.id);
    if (!p.linear) {
      return {false, "linearity", loc.id,
              "events " + std::to_string(p.incomparable->first) + " and " +
                  std::to_string(p.incomparable->second) + " are unordered"};
    }
    LocationAutomaton automaton(loc);
    if (!automaton.accepts(p.trace) ||
        (std::holds_alternative<ExplicitTraces>(loc.behavior) &&
         !location_language(frame, loc.id, p.trace.size()).count(p.trace))) {
      return {false, "trace membership", loc.id,
              to_string(p.trace) + " is not a trace"};
    }
  }
  return {};
}

EventSystem restrict(const EventSystem& sys, const ChannelSet& chans) {
  EventSystem::Mask keep = 0;
  for (std::size_t i = 0; i < sys.size(); ++i)
    if (chans.count(sys.event(i).channel)) keep |= bit(i);
  return sys.subsystem(keep);
}

CanonicalRun canonicalize(const EventSystem& sys) {
  std::map<ChannelId, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < sys.size(); ++i)
    groups[sys.event(i).channel].push_back(i);

  CanonicalRun run;
  std::vector<EventRef> ref(sys.size());
  std::uint32_t ci = 0;
  for (auto& [name, idx] : groups) {
    for (std::size_t a = 0; a < idx.size(); ++a)
      for (std::size_t b = a + 1; b < idx.size(); ++b)
        if (!sys.comparable(idx[a], idx[b]))
          throw Error("events on channel '" + name + "' are unordered");
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return sys.precedes(a, b);
    });
    std::vector<DataValue> vals;
    for (std::uint32_t k = 0; k < idx.size(); ++k) {
      ref[idx[k]] = {ci, k};
      vals.push_back(sys.event(idx[k]).message);
    }
    run.channels.emplace_back(name, std::move(vals));
    ++ci;
  }
  for (auto [a, b] : sys.covering_pairs()) {
    // Same-channel succession is implied by the ordinals.
    if (ref[a].channel == ref[b].channel) continue;
    run.order.emplace_back(ref[a], ref[b]);
  }
  std::sort(run.order.begin(), run.order.end());
  return run;
}

bool is_initial_substructure(const EventSystem& sup, EventSystem::Mask keep) {
  for (std::size_t j = 0; j < sup.size(); ++j) {
    if (!(keep & bit(j))) continue;
    if ((sup.predecessors(j) & ~keep) != 0) return false;
  }
  return true;
}

bool is_initial_substructure(const EventSystem& sub, const EventSystem& sup) {
  std::map<std::pair<ChannelId, std::size_t>, std::size_t> sup_ids;
  std::map<ChannelId, std::vector<std::size_t>> sup_groups;
  for (std::size_t i = 0; i < sup.size(); ++i)
    sup_groups[sup.event(i).channel].push_back(i);
  for (auto& [name, idx] : sup_groups) {
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return sup.precedes(a, b);
    });
    for (std::size_t k = 0; k < idx.size(); ++k) sup_ids[{name, k}] = idx[k];
  }
  std::map<ChannelId, std::vector<std::size_t>> sub_groups;
  for (std::size_t i = 0; i < sub.size(); ++i)
    sub_groups[sub.event(i).channel].push_back(i);
  std::vector<std::size_t> image(sub.size());
  EventSystem::Mask keep = 0;
  for (auto& [name, idx] : sub_groups) {
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return sub.precedes(a, b);
    });
    for (std::size_t k = 0; k < idx.size(); ++k) {
      auto it = sup_ids.find({name, k});
      if (it == sup_ids.end()) return false;
      if (sup.event(it->second).message != sub.event(idx[k]).message) return false;
      image[idx[k]] = it->second;
      keep |= bit(it->second);
    }
  }
  for (std::size_t a = 0; a < sub.size(); ++a)
    for (std::size_t b = 0; b < sub.size(); ++b)
      if (a != b && sub.precedes(a, b) != sup.precedes(image[a], image[b]))
        return false;
  return is_initial_substructure(sup, keep);
}

}  // namespace infoflow
