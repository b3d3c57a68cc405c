#ifndef INFOFLOW_PURGE_HPP_
#define INFOFLOW_PURGE_HPP_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "infoflow/blur.hpp"

namespace infoflow {

using Domain = std::string;

struct MachineAction {
  std::string name;
  Domain domain;
};

struct MachineTransition {
  std::string from;
  std::string action;
  std::string to;
};

// A possibly nondeterministic state machine with per-domain observations.
struct MachineSpec {
  std::vector<Domain> domains;
  // (d, e) means d may influence e.  Must be reflexive.
  std::set<std::pair<Domain, Domain>> influence;
  std::vector<MachineAction> actions;
  std::vector<std::string> outputs;
  std::vector<std::string> states;
  std::string initial;
  std::vector<MachineTransition> transitions;
  std::map<std::pair<std::string, Domain>, std::string> obs;

  bool influences(const Domain& d, const Domain& e) const {
    return influence.count({d, e}) != 0;
  }
  const Domain& domain_of(const std::string& action) const;
};

// Returns human-readable problems; empty iff valid.
std::vector<std::string> validate_machine(const MachineSpec& m);

inline constexpr const char* kMachineLocation = "M";
inline std::string in_channel(const Domain& d) { return "in_" + d; }
inline std::string out_channel(const Domain& d) { return "out_" + d; }

// Star frame around the machine.  M alternates: it accepts one input
// a on in_d, moves along delta, then answers d alone on out_d with
// obs(s', d).  Domains send their own actions freely and accept any
// output.
Frame star_frame(const MachineSpec& m);

ChannelSet input_channels(const MachineSpec& m);
ChannelSet visible_inputs(const MachineSpec& m, const Domain& target);
ChannelSet view_channels(const Domain& target);  // C_i

// Star-frame executions with every input answered, for at most `rounds`
// input/output rounds.
ExecutionUniverse quiescent_universe(const MachineSpec& m, std::size_t rounds);

enum class PurgeKind { kGoguenMeseguer, kHaighYoung, kBroken };

std::string purge_name(PurgeKind kind);

// Input events of an execution in order, as (channel, action).
std::vector<Event> inputs(const EventSystem& sys, const MachineSpec& m);

// The retained input sequence, serialized as "in_a:x in_b:y".  kBroken
// retains nothing and serves as a negative control.
std::string purge(const MachineSpec& m, PurgeKind kind, const Domain& target,
                  const EventSystem& execution);

struct PurgeValidation {
  bool inputs_only = true;     // equal inputs give equal purges
  bool determines_vis = true;  // equal purges give equal vis restrictions
  std::optional<std::pair<std::string, std::string>> witness;  // executions

  bool ok() const { return inputs_only && determines_vis; }
};

PurgeValidation validate_purge(const MachineSpec& m, PurgeKind kind,
                               const Domain& target, ExecutionUniverse& u);

struct MachineVerdict {
  bool holds = true;
  std::optional<std::pair<std::string, std::string>> witness;  // executions
};

MachineVerdict check_NI(const MachineSpec& m, PurgeKind kind,
                        const Domain& target, ExecutionUniverse& u);
MachineVerdict check_ND(const MachineSpec& m, PurgeKind kind,
                        const Domain& target, ExecutionUniverse& u);

// f^p over lruns(IN) of the universe: IN-runs are related when their
// executions have equal purges.
BlurSpec purge_blur(const MachineSpec& m, PurgeKind kind, const Domain& target,
                    ExecutionUniverse& u);

}  // namespace infoflow

#endif  // INFOFLOW_PURGE_HPP_
