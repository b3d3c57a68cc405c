#ifndef INFOFLOW_SCENARIOS_HPP_
#define INFOFLOW_SCENARIOS_HPP_

#include <map>
#include <string>
#include <vector>

#include "infoflow/blur.hpp"

namespace infoflow {

// A frame plus the named channel sets and blurs that analyses refer to.
struct Scenario {
  Frame frame;
  std::map<std::string, ChannelSet> sets;
  std::map<std::string, BlurSpec> blurs;
};

enum class PortClass { kWeb, kHigh, kOther };

struct Datagram {
  std::string src;
  std::string dst;
  PortClass sport = PortClass::kHigh;
  PortClass dport = PortClass::kHigh;

  // "src.dst.sport.dport", e.g. "e.www.hi.web".
  std::string name() const;
};

struct FirewallParams {
  std::vector<std::string> external = {"e"};  // addresses in i
  std::vector<std::string> n1 = {"www"};
  std::vector<std::string> n2 = {"h"};
  std::string www = "www";
  // Datagrams each region may originate (at most one per execution).
  std::map<std::string, std::vector<Datagram>> originate = {
      {"i", {{"e", "www", PortClass::kHigh, PortClass::kWeb},
             {"e", "h", PortClass::kHigh, PortClass::kHigh}}},
      {"n1", {{"www", "e", PortClass::kWeb, PortClass::kHigh}}},
      {"n2", {{"h", "e", PortClass::kHigh, PortClass::kHigh}}},
  };
  bool local_traffic = true;  // one self-loop event per region
  bool discard_all = false;   // the four filtering interfaces drop everything
};

bool is_importable(const FirewallParams& p, const Datagram& d);
bool is_exportable(const FirewallParams& p, const Datagram& d);

// Sets: chans_i, chans_n, cut.  Blurs: f_i, f_e.
Scenario build_firewall(const FirewallParams& params);

struct VotingParams {
  std::vector<std::size_t> precincts = {2};  // voters per precinct
  std::vector<std::string> candidates = {"0", "1"};
};

// Locations v<p>_<k>, BB<p>, EC, Pub; channels cv<p>_<k>, c<p>, p.
// Sets: voters, voters<p>, c<p>, p, bb<p>_core (locations are listed in
// core_locations).  Blurs: f0 (all voters), per_precinct, f_p<p>.
Scenario build_voting(const VotingParams& params);

std::vector<LocationId> precinct_voters(const VotingParams& params, std::size_t precinct);
LocationSet precinct_core(const VotingParams& params, std::size_t precinct);

}  // namespace infoflow

#endif  // INFOFLOW_SCENARIOS_HPP_
