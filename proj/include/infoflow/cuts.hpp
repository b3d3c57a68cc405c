#ifndef INFOFLOW_CUTS_HPP_
#define INFOFLOW_CUTS_HPP_

#include <optional>
#include <string>
#include <vector>

#include "infoflow/frame.hpp"

namespace infoflow {

struct ChannelSetTriple {
  ChannelSet source;  // lsrc
  ChannelSet cut;     // lcut
  ChannelSet sink;    // lobs
};

struct CutCheck {
  bool disjoint = true;
  bool is_cut = false;
  // When not a cut: locations from a sink endpoint to a source endpoint and
  // the channels joining them (path.size() == channels.size() + 1).
  std::vector<LocationId> path;
  std::vector<ChannelId> channels;

  bool ok() const { return disjoint && is_cut; }
};

// Throws Error on unknown channel ids.  A non-disjoint triple is reported
// with disjoint == false and is_cut == false.
CutCheck is_cut(const Frame& frame, const ChannelSetTriple& triple);

struct MinCut {
  bool possible = false;
  ChannelSet cut;
  std::string reason;  // why no cut exists
};

MinCut find_min_cut(const Frame& frame, const ChannelSet& source,
                    const ChannelSet& sink);

}  // namespace infoflow

#endif  // INFOFLOW_CUTS_HPP_
