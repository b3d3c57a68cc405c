#ifndef INFOFLOW_ENUMERATION_HPP_
#define INFOFLOW_ENUMERATION_HPP_

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "infoflow/event_system.hpp"
#include "infoflow/frame.hpp"

namespace infoflow {

struct Bound {
  std::size_t max_total_events = 6;
  // Maximum length of any location's projection.
  std::optional<std::size_t> max_per_location;

  // Per-location bound with a total that never binds.
  static Bound per_location(std::size_t k) {
    return {EventSystem::kMaxEvents, k};
  }
  std::string describe() const;
};

void check_bound(const Bound& bound);

struct Execution {
  EventSystem system;
  CanonicalRun canonical;
  std::string text;  // serialize(canonical)
};

// Minimal-order executions up to isomorphism, sorted by serialization.
struct ExecutionSet {
  std::vector<Execution> executions;

  std::size_t size() const { return executions.size(); }
};

// Every execution whose order is the least one making each location's
// projection a chain, with at most `bound` events.
ExecutionSet enumerate_executions(const Frame& frame, const Bound& bound);

std::vector<CanonicalRun> enumerate_runs(const Frame& frame,
                                         const ChannelSet& chans,
                                         const Bound& bound);

// Distinct restrictions of a universe's executions to one channel set.
struct RunTable {
  ChannelSet chans;
  std::vector<CanonicalRun> runs;   // sorted by text
  std::vector<std::string> texts;
  std::vector<int> of_execution;    // run id of each execution

  std::optional<int> find(const CanonicalRun& run) const;
  std::optional<int> find(const std::string& text) const;

 private:
  friend class ExecutionUniverse;
  std::map<std::string, int> index_;
};

// A frame's bounded executions together with cached run tables.  Not
// thread-safe: run tables are filled lazily.
class ExecutionUniverse {
 public:
  ExecutionUniverse(Frame frame, Bound bound);
  // Adopts a given execution set, e.g. a filtered enumeration.
  ExecutionUniverse(Frame frame, Bound bound, ExecutionSet executions);

  const Frame& frame() const { return frame_; }
  const Bound& bound() const { return bound_; }
  const ExecutionSet& executions() const { return executions_; }
  std::size_t size() const { return executions_.size(); }

  const RunTable& runs(const ChannelSet& chans);

 private:
  Frame frame_;
  Bound bound_;
  ExecutionSet executions_;
  std::map<ChannelSet, std::unique_ptr<RunTable>> tables_;
};

}  // namespace infoflow

#endif  // INFOFLOW_ENUMERATION_HPP_
