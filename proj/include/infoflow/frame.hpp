#ifndef INFOFLOW_FRAME_HPP_
#define INFOFLOW_FRAME_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace infoflow {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using DataValue = std::string;
using ChannelId = std::string;
using LocationId = std::string;
using ChannelSet = std::set<ChannelId>;
using LocationSet = std::set<LocationId>;

struct Channel {
  ChannelId id;
  LocationId sender;
  LocationId recipient;

  bool is_self_loop() const { return sender == recipient; }
  auto operator<=>(const Channel&) const = default;
};

enum class LabelKind { kLocal, kTransmission, kReception };

struct Label {
  ChannelId channel;
  DataValue value;

  auto operator<=>(const Label&) const = default;
};

using Trace = std::vector<Label>;

std::string to_string(const Label& label);
std::string to_string(const Trace& trace);

// A finite set of finite traces, given extensionally.
struct ExplicitTraces {
  std::vector<Trace> traces;
};

struct LtsTransition {
  std::string from;
  Label label;
  std::string to;

  auto operator<=>(const LtsTransition&) const = default;
};

// Finite labeled transition system; its trace set is the set of label
// sequences along paths from the initial state.
struct Lts {
  std::string initial;
  std::vector<LtsTransition> transitions;
};

using TraceSpec = std::variant<ExplicitTraces, Lts>;

struct Location {
  LocationId id;
  TraceSpec behavior;
};

// A static frame: locations with behaviors, channels between them, and a
// finite data domain.  Lookups are tolerant of malformed input so that
// validate_frame() can report problems as data.
class Frame {
 public:
  Frame() = default;
  Frame(std::vector<DataValue> data, std::vector<Location> locations,
        std::vector<Channel> channels);

  const std::vector<DataValue>& data() const { return data_; }
  const std::vector<Location>& locations() const { return locations_; }
  const std::vector<Channel>& channels() const { return channels_; }

  const Location* find_location(const LocationId& id) const;
  const Channel* find_channel(const ChannelId& id) const;
  std::optional<std::size_t> location_index(const LocationId& id) const;
  std::optional<std::size_t> channel_index(const ChannelId& id) const;
  bool has_value(const DataValue& v) const;

  const Location& location(const LocationId& id) const;
  const Channel& channel(const ChannelId& id) const;

  // chans(l): channels with l as sender or recipient.
  ChannelSet chans(const LocationId& loc) const;
  ChannelSet chans(const LocationSet& locs) const;
  // pends(C): locations holding an endpoint of some channel in C.
  LocationSet pends(const ChannelSet& chans) const;
  ChannelSet all_channels() const;
  LocationSet all_locations() const;

  std::optional<LabelKind> classify(const Label& label,
                                    const LocationId& loc) const;

 private:
  std::vector<DataValue> data_;
  std::vector<Location> locations_;
  std::vector<Channel> channels_;
  std::map<LocationId, std::size_t> location_index_;
  std::map<ChannelId, std::size_t> channel_index_;
  std::set<DataValue> data_set_;
};

struct Violation {
  std::string kind;
  std::string subject;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
};

ValidationReport validate_frame(const Frame& frame);

// Throws Error listing the violations when the frame is malformed.
void require_valid(const Frame& frame);

struct Graph {
  std::vector<LocationId> vertices;
  std::set<std::pair<LocationId, LocationId>> edges;
};

// Directed graph: (l1, l2) iff some channel runs from l1 to l2.
Graph frame_graph(const Frame& frame);
// Undirected graph, with each edge stored once as (min, max).
Graph undirected_frame_graph(const Frame& frame);

std::set<Trace> location_language(const Frame& frame, const LocationId& loc,
                                  std::size_t max_len);

// Nondeterministic automaton compiled from a location's trace spec.  States
// are tracked as sets so that trace membership is a deterministic walk.
class LocationAutomaton {
 public:
  using StateSet = std::vector<std::uint32_t>;

  explicit LocationAutomaton(const Location& loc);

  const StateSet& initial() const { return initial_; }
  // Empty result means the label is not enabled.
  StateSet step(const StateSet& from, const Label& label) const;
  // Labels enabled from any state in the set, sorted.
  std::vector<Label> enabled(const StateSet& from) const;
  bool accepts(const Trace& trace) const;

 private:
  std::uint32_t add_state(const std::string& name);

  std::map<std::string, std::uint32_t> state_ids_;
  std::vector<std::map<Label, std::vector<std::uint32_t>>> delta_;
  StateSet initial_;
};

}  // namespace infoflow

#endif  // INFOFLOW_FRAME_HPP_
