#ifndef INFOFLOW_EVENT_SYSTEM_HPP_
#define INFOFLOW_EVENT_SYSTEM_HPP_

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "infoflow/frame.hpp"

namespace infoflow {

struct Event {
  ChannelId channel;
  DataValue message;

  Label label() const { return {channel, message}; }
  auto operator<=>(const Event&) const = default;
};

// A finite strictly partially ordered set of events.  The order is kept
// transitively closed as one predecessor bitmask per event, so a system
// holds at most kMaxEvents events.
class EventSystem {
 public:
  static constexpr std::size_t kMaxEvents = 64;
  using Mask = std::uint64_t;

  EventSystem() = default;
  // `order` lists strict pairs (before, after); the transitive closure is
  // taken.  Throws Error on a cycle.
  EventSystem(std::vector<Event> events,
              const std::vector<std::pair<std::size_t, std::size_t>>& order);

  std::size_t size() const { return events_.size(); }
  bool empty() const { return events_.empty(); }
  const std::vector<Event>& events() const { return events_; }
  const Event& event(std::size_t i) const { return events_[i]; }

  bool precedes(std::size_t i, std::size_t j) const {
    return (below_[j] >> i) & 1U;
  }
  bool comparable(std::size_t i, std::size_t j) const {
    return i == j || precedes(i, j) || precedes(j, i);
  }
  Mask predecessors(std::size_t j) const { return below_[j]; }

  // Appends an event whose strict predecessors are `preds` plus everything
  // below them.  Returns the new index.
  std::size_t add_event(Event e, Mask preds);

  // Transitive reduction, sorted.
  std::vector<std::pair<std::size_t, std::size_t>> covering_pairs() const;
  // Induced substructure on the events selected by `keep`.
  EventSystem subsystem(Mask keep) const;

 private:
  std::vector<Event> events_;
  std::vector<Mask> below_;
};

// Identifies an event inside a CanonicalRun: the index of its channel in
// the run's sorted channel list, and its position among that channel's
// events.
struct EventRef {
  std::uint32_t channel = 0;
  std::uint32_t ordinal = 0;

  auto operator<=>(const EventRef&) const = default;
};

// Isomorphism-invariant encoding of an event system whose same-channel
// events are totally ordered.  Two such systems are isomorphic iff their
// canonical runs are equal.
struct CanonicalRun {
  std::vector<std::pair<ChannelId, std::vector<DataValue>>> channels;
  // Transitive reduction of the order, sorted.
  std::vector<std::pair<EventRef, EventRef>> order;

  bool empty() const { return channels.empty(); }
  std::size_t event_count() const;
  auto operator<=>(const CanonicalRun&) const = default;
};

// Text form: "{a:[x y] b:[z] | a#0<b#0 a#1<b#0}"; the empty run is "{}".
std::string serialize(const CanonicalRun& run);
CanonicalRun parse_run(std::string_view text);

EventSystem to_event_system(const CanonicalRun& run);

struct ExecutionCheck {
  bool ok = true;
  // "linearity", "trace membership", or "reference" when !ok.
  std::string reason;
  LocationId location;
  std::string detail;
};

ExecutionCheck is_execution(const EventSystem& sys, const Frame& frame);

struct Projection {
  bool linear = true;
  Trace trace;
  std::optional<std::pair<std::size_t, std::size_t>> incomparable;
};

Projection project(const EventSystem& sys, const Frame& frame,
                   const LocationId& loc);

EventSystem restrict(const EventSystem& sys, const ChannelSet& chans);

// Throws Error when two events on one channel are incomparable.
CanonicalRun canonicalize(const EventSystem& sys);

inline CanonicalRun canonical_restriction(const EventSystem& sys,
                                          const ChannelSet& chans) {
  return canonicalize(restrict(sys, chans));
}

// Events are identified across the two systems by (channel, ordinal).
bool is_initial_substructure(const EventSystem& sub, const EventSystem& sup);
// `keep` selects a subset of sup's events.
bool is_initial_substructure(const EventSystem& sup, EventSystem::Mask keep);

}  // namespace infoflow

#endif  // INFOFLOW_EVENT_SYSTEM_HPP_
