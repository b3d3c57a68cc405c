#ifndef INFOFLOW_TESTS_NAIVE_ORACLE_HPP_
#define INFOFLOW_TESTS_NAIVE_ORACLE_HPP_

// A deliberately simple reimplementation used only to cross-check the main
// pipeline: interleavings, Warshall closure, brute-force isomorphism.  It
// shares nothing with the library except the Frame data types.

#include <vector>

#include "infoflow/event_system.hpp"
#include "infoflow/frame.hpp"

namespace infoflow::testing {

struct RawPoset {
  std::vector<Label> labels;
  std::vector<std::vector<char>> lt;  // lt[i][j]: event i strictly before j
};

// Executions with at most `per_location` events at each location, one
// representative per isomorphism class.
std::vector<RawPoset> naive_executions(const Frame& frame, std::size_t per_location);

RawPoset naive_restrict(const RawPoset& p, const ChannelSet& chans);
bool isomorphic(const RawPoset& a, const RawPoset& b);

// cmpt_{observed -> source}(run), as representatives.
std::vector<RawPoset> naive_compatible(const std::vector<RawPoset>& executions,
                                       const ChannelSet& observed,
                                       const ChannelSet& source,
                                       const RawPoset& observed_run);

RawPoset to_raw(const CanonicalRun& run);

// Same up to isomorphism, as sets.
bool same_classes(const std::vector<RawPoset>& a, const std::vector<RawPoset>& b);

}  // namespace infoflow::testing

#endif  // INFOFLOW_TESTS_NAIVE_ORACLE_HPP_
