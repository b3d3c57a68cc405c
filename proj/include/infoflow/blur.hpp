#ifndef INFOFLOW_BLUR_HPP_
#define INFOFLOW_BLUR_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "infoflow/disclosure.hpp"

namespace infoflow {

struct AllBlur {};
struct IdentityBlur {};

// Generated by an equivalence on runs, given either as a class key or as a
// pairwise predicate.  Predicates are checked to be equivalences when the
// blur is compiled.
struct PartitionBlur {
  std::string name;
  std::function<std::string(const CanonicalRun&)> key;
  std::function<bool(const CanonicalRun&, const CanonicalRun&)> equivalent;
  // Set when the classes were given as run texts (frame files); unlisted
  // runs are singletons.  Only these partitions can be written back out.
  std::vector<std::vector<std::string>> classes;
};

// Key function for an extensional partition.
PartitionBlur partition_from_classes(std::string name,
                                     std::vector<std::vector<std::string>> classes);

// Voters' channels are renamed by permutations of the voters: under pi,
// voter l's channel carries what pi(l)'s channel carried.
struct PermutationBlur {
  std::vector<LocationId> voters;
  // Voters whose position every permutation fixes.
  std::set<LocationId> fixed;
  // Permutations stay inside blocks; empty means one block of all voters.
  std::vector<std::vector<LocationId>> blocks;
};

// Matches an event when ANY listed condition holds.
struct EventPredicate {
  std::set<DataValue> values;
  ChannelSet channels;
  LocationSet received_by;  // channel recipient, excluding self-loops
  LocationSet sent_by;      // channel sender, excluding self-loops

  bool matches(const Frame& frame, const Event& e) const;
};

// Runs are equivalent when their selected sub-posets are isomorphic.
struct SelectionBlur {
  EventPredicate select;
};

// f({a}) = table[a]; runs without an entry map to the empty set.
struct TableBlur {
  std::map<std::string, std::vector<std::string>> table;
};

using BlurSpec = std::variant<AllBlur, IdentityBlur, PartitionBlur,
                              PermutationBlur, SelectionBlur, TableBlur>;

std::string blur_kind(const BlurSpec& blur);

EventSystem select_events(const EventSystem& sys, const Frame& frame,
                          const EventPredicate& pred);

// Channel renamings realizing every permutation of the blur's group.
std::vector<std::map<ChannelId, ChannelId>> permutation_renamings(
    const PermutationBlur& blur, const Frame& frame);
CanonicalRun rename_channels(const CanonicalRun& run,
                             const std::map<ChannelId, ChannelId>& renaming);

// A blur evaluated on a finite universe of runs, with runs as ids.
class CompiledBlur {
 public:
  CompiledBlur(const BlurSpec& blur, const Frame& frame,
               std::vector<CanonicalRun> universe);

  std::size_t universe_size() const { return runs_.size(); }
  const std::vector<CanonicalRun>& runs() const { return runs_; }
  const std::string& text(int id) const { return texts_[static_cast<std::size_t>(id)]; }
  std::optional<int> id(const std::string& text) const;

  // Sorted ids.
  std::vector<int> apply(const std::vector<int>& s) const;
  std::vector<int> singleton(int a) const;
  bool partition_by_construction() const { return class_of_.has_value(); }
  // Empty when s is f-blurred, otherwise some member of f(s) \ s.
  std::optional<int> unblurred_element(const std::vector<int>& s) const;

 private:
  std::vector<CanonicalRun> runs_;
  std::vector<std::string> texts_;
  std::map<std::string, int> index_;
  std::optional<std::vector<int>> class_of_;
  std::vector<std::vector<int>> members_;  // per class, or per run for tables
};

// Throws Error on runs outside the universe.
std::vector<CanonicalRun> blur_apply(const BlurSpec& blur, const Frame& frame,
                                     const std::vector<CanonicalRun>& s,
                                     const std::vector<CanonicalRun>& universe);

struct BlurValidation {
  bool inclusion = true;
  bool idempotence = true;
  bool union_law = true;  // structural: f is defined pointwise on singletons
  bool partition_generated = false;
  std::string detail;     // first failure

  bool is_blur() const { return inclusion && idempotence && union_law; }
};

BlurValidation validate_blur(const CompiledBlur& blur, std::uint32_t seed = 1,
                             std::size_t samples = 64);

struct FlowVerdict {
  bool holds = true;
  std::optional<CanonicalRun> observed_run;
  std::optional<CanonicalRun> unblurred;
};

// The blur is compiled over lruns(source) of the universe.
FlowVerdict f_limits_flow(ExecutionUniverse& u, const ChannelSet& source,
                          const ChannelSet& observed, const BlurSpec& blur);
// Variant against an already compiled blur; source runs of `u` must all
// belong to the blur's universe.
FlowVerdict f_limits_flow(ExecutionUniverse& u, const ChannelSet& source,
                          const ChannelSet& observed, const CompiledBlur& blur);

struct CutBlurVerdict {
  FlowVerdict antecedent;  // source -> cut
  FlowVerdict consequent;  // source -> sink
  bool implication_holds() const { return !antecedent.holds || consequent.holds; }
};

// Throws Error if the triple is not a cut.
CutBlurVerdict verify_cut_blur(ExecutionUniverse& u,
                               const ChannelSetTriple& triple,
                               const BlurSpec& blur);

struct SharedCore {
  LocationSet core;
  ChannelSet left0;
  ChannelSet lcut0;
  ChannelSet right1;
  ChannelSet right2;
  bool run_inclusion = false;  // lruns_{lcut0}(F2) within lruns_{lcut0}(F1)
  std::optional<CanonicalRun> new_cut_run;
};

// Throws Error naming the location on endpoint or trace mismatch.
SharedCore build_shared_core(ExecutionUniverse& u1, ExecutionUniverse& u2,
                             const LocationSet& core);

struct CompositionVerdict {
  FlowVerdict antecedent;  // F1: source -> lcut0
  FlowVerdict consequent;  // F2: source -> observed
  // cmpt1 and cmpt2 from lcut0 into source agree on every F2 cut-run.
  bool locality = true;
  std::optional<CanonicalRun> locality_witness;

  bool implication_holds() const { return !antecedent.holds || consequent.holds; }
};

// Throws Error if the run-inclusion side condition fails or the channel
// sets are not inside LEFT0 / RIGHT2.
CompositionVerdict verify_composition(const SharedCore& core,
                                      ExecutionUniverse& u1,
                                      ExecutionUniverse& u2,
                                      const ChannelSet& source,
                                      const ChannelSet& observed,
                                      const BlurSpec& blur);

// One precinct-like stage: a permutation group acting on `left` channels
// whose only link to the rest of the frame is `cut`.
struct PermutationStage {
  ChannelSet left;
  ChannelSet cut;
  PermutationBlur blur;
};

struct JointPermutationReport {
  bool holds = true;
  std::size_t cases = 0;
  std::string detail;
};

// For every execution and every choice of one permutation per stage, the
// jointly permuted run is rebuilt by successive merges and must keep the
// observed run unchanged.
JointPermutationReport check_joint_permutation(
    ExecutionUniverse& u, const std::vector<PermutationStage>& stages,
    const ChannelSet& observed);

}  // namespace infoflow

#endif  // INFOFLOW_BLUR_HPP_
