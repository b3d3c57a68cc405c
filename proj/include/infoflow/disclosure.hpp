#ifndef INFOFLOW_DISCLOSURE_HPP_
#define INFOFLOW_DISCLOSURE_HPP_

#include <optional>
#include <string>
#include <vector>

#include "infoflow/cuts.hpp"
#include "infoflow/enumeration.hpp"

namespace infoflow {

// cmpt_{from->to} for every from-run, as sorted lists of to-run ids.
struct CompatTable {
  const RunTable* from = nullptr;
  const RunTable* to = nullptr;
  std::vector<std::vector<int>> image;

  bool contains(int from_id, int to_id) const;
};

CompatTable compat_table(ExecutionUniverse& u, const ChannelSet& from,
                         const ChannelSet& to);

struct CompatQuery {
  ChannelSet observed;
  ChannelSet source;
  CanonicalRun observed_run;
};

// Empty when observed_run is not an observed-run of the universe.
std::vector<CanonicalRun> compatible_runs(ExecutionUniverse& u,
                                          const CompatQuery& q);

struct DisclosureVerdict {
  bool holds = true;
  // On failure: a C-run and a C2-run that is not compatible with it.
  std::optional<CanonicalRun> run;
  std::optional<CanonicalRun> incompatible;
};

DisclosureVerdict no_disclosure(ExecutionUniverse& u, const ChannelSet& c,
                                const ChannelSet& c2);

struct SymmetryReport {
  DisclosureVerdict forward;   // C -> C2
  DisclosureVerdict backward;  // C2 -> C
  // B' in cmpt_{C->C2}(B) iff B in cmpt_{C2->C}(B'), for all runs.
  bool witness_symmetric = true;

  bool consistent() const {
    return witness_symmetric && forward.holds == backward.holds;
  }
};

SymmetryReport check_symmetry(ExecutionUniverse& u, const ChannelSet& c,
                              const ChannelSet& c2);

// Throws Error if b1 or b2 is not a source-run.
bool obs_equivalent(ExecutionUniverse& u, const ChannelSet& source,
                    const ChannelSet& observed, const CanonicalRun& b1,
                    const CanonicalRun& b2);

struct PropagationReport {
  // cmpt_{C1->C3}(B1) is a subset of the union through C2, for all B1.
  bool inclusion = true;
  // ... and equal to it.
  bool equality = true;
  std::optional<CanonicalRun> witness_c1;  // first B1 where a check failed
  std::optional<CanonicalRun> witness_c3;  // offending C3-run
  std::size_t strict_cases = 0;            // B1 with proper inclusion
};

PropagationReport cmpt_propagation_check(ExecutionUniverse& u,
                                         const ChannelSet& c1,
                                         const ChannelSet& c2,
                                         const ChannelSet& c3);

// Lemma cut's equality for a cut triple: propagation from the sink through
// the cut to the source.  Throws Error if the triple is not a cut.
PropagationReport cut_equality_check(ExecutionUniverse& u,
                                     const ChannelSetTriple& triple);

struct MergeResult {
  EventSystem system;
  ExecutionCheck execution;
  // The merge restricts back to both inputs.
  bool restricts_back = false;

  bool ok() const { return execution.ok && restricts_back; }
};

// Combines a run over `left` and the cut with a run over the right side and
// the cut, taking the least order extending both.  Both runs must agree on
// the cut.  The result is checked against `target`.
MergeResult merge_across_cut(const Frame& target, const ChannelSet& left,
                             const ChannelSet& cut, const CanonicalRun& left_run,
                             const CanonicalRun& right_run);

}  // namespace infoflow

#endif  // INFOFLOW_DISCLOSURE_HPP_
