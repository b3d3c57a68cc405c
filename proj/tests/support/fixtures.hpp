#ifndef INFOFLOW_TESTS_FIXTURES_HPP_
#define INFOFLOW_TESTS_FIXTURES_HPP_

#include <algorithm>

#include "infoflow/frame.hpp"

namespace infoflow::testing {

inline Lts loop_lts(const std::vector<Label>& labels) {
  Lts l{"s", {}};
  for (const auto& x : labels) l.transitions.push_back({"s", x, "s"});
  return l;
}

// Prefix-closed explicit traces from maximal ones.
inline ExplicitTraces prefixes(const std::vector<Trace>& maximal) {
  std::set<Trace> all{{}};
  for (const auto& t : maximal)
    for (std::size_t k = 1; k <= t.size(); ++k) all.insert(Trace(t.begin(), t.begin() + k));
  return {std::vector<Trace>(all.begin(), all.end())};
}

// A sends 0/1 on a; R echoes each value on b; B receives anything.
inline Frame relay_frame() {
  Lts r{"idle", {}};
  for (const char* v : {"0", "1"}) {
    r.transitions.push_back({"idle", {"a", v}, std::string("got") + v});
    r.transitions.push_back({std::string("got") + v, {"b", v}, "idle"});
  }
  return Frame({"0", "1"},
               {{"A", loop_lts({{"a", "0"}, {"a", "1"}})}, {"R", r},
                {"B", loop_lts({{"b", "0"}, {"b", "1"}})}},
               {{"a", "A", "R"}, {"b", "R", "B"}});
}

// Two locations, each able to fire one self-loop event.
inline Frame two_independent() {
  return Frame({"v"},
               {{"P", prefixes({{{"p", "v"}}})}, {"Q", prefixes({{{"q", "v"}}})}},
               {{"p", "P", "P"}, {"q", "Q", "Q"}});
}

// Observations o1 (at X) and o2 (at X') can only be ordered through the
// source channel s, yet the cut runs a<b also arise through l without s.
// In the minimal-order universe this breaks the "superset" half of the
// cut-equality lemma for source {s}, cut {a,b}, sink {o1,o2,l}.
inline Frame cut_counterexample() {
  Label a{"a", "v"}, b{"b", "v"}, s{"s", "v"}, l{"l", "v"}, o1{"o1", "v"}, o2{"o2", "v"};
  return Frame({"v"},
               {{"X", prefixes({{o1, a}, {a, l}})},
                {"X2", prefixes({{b, o2}, {l, b}})},
                {"Y", prefixes({{a, s}})},
                {"Y2", prefixes({{s, b}, {b}})}},
               {{"a", "X", "Y"}, {"b", "Y2", "X2"}, {"s", "Y", "Y2"}, {"l", "X", "X2"},
                {"o1", "X", "X"}, {"o2", "X2", "X2"}});
}

}  // namespace infoflow::testing

#endif  // INFOFLOW_TESTS_FIXTURES_HPP_
