#include "infoflow/disclosure.hpp"

#include <algorithm>
#include <map>

namespace infoflow {

bool CompatTable::contains(int from_id, int to_id) const {
  const auto& v = image[static_cast<std::size_t>(from_id)];
  return std::binary_search(v.begin(), v.end(), to_id);
}

CompatTable compat_table(ExecutionUniverse& u, const ChannelSet& from,
                         const ChannelSet& to) {
  CompatTable t;
  t.from = &u.runs(from);
  t.to = &u.runs(to);
  t.image.resize(t.from->runs.size());
  for (std::size_t e = 0; e < u.size(); ++e)
    t.image[static_cast<std::size_t>(t.from->of_execution[e])].push_back(t.to->of_execution[e]);
  for (auto& v : t.image) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }
  return t;
}

std::vector<CanonicalRun> compatible_runs(ExecutionUniverse& u,
                                          const CompatQuery& q) {
  CompatTable t = compat_table(u, q.observed, q.source);
  auto id = t.from->find(q.observed_run);
  if (!id) return {};
  std::vector<CanonicalRun> out;
  for (int r : t.image[static_cast<std::size_t>(*id)]) out.push_back(t.to->runs[static_cast<std::size_t>(r)]);
  return out;
}

DisclosureVerdict no_disclosure(ExecutionUniverse& u, const ChannelSet& c,
                                const ChannelSet& c2) {
  CompatTable t = compat_table(u, c, c2);
  DisclosureVerdict v;
  const int n_to = static_cast<int>(t.to->runs.size());
  for (std::size_t b = 0; b < t.image.size(); ++b) {
    const auto& img = t.image[b];
    if (static_cast<int>(img.size()) == n_to) continue;
    // img is sorted, so the first gap names a missing run.
    int missing = 0;
    while (missing < static_cast<int>(img.size()) && img[static_cast<std::size_t>(missing)] == missing) ++missing;
    v.holds = false;
    v.run = t.from->runs[b];
    v.incompatible = t.to->runs[static_cast<std::size_t>(missing)];
    return v;
  }
  return v;
}

SymmetryReport check_symmetry(ExecutionUniverse& u, const ChannelSet& c,
                              const ChannelSet& c2) {
  SymmetryReport r;
  r.forward = no_disclosure(u, c, c2);
  r.backward = no_disclosure(u, c2, c);
  CompatTable fwd = compat_table(u, c, c2);
  CompatTable bwd = compat_table(u, c2, c);
  for (std::size_t b = 0; b < fwd.image.size() && r.witness_symmetric; ++b)
    for (std::size_t b2 = 0; b2 < bwd.image.size(); ++b2)
      if (fwd.contains(static_cast<int>(b), static_cast<int>(b2)) !=
          bwd.contains(static_cast<int>(b2), static_cast<int>(b))) {
        r.witness_symmetric = false;
        break;
      }
  return r;
}

bool obs_equivalent(ExecutionUniverse& u, const ChannelSet& source,
                    const ChannelSet& observed, const CanonicalRun& b1,
                    const CanonicalRun& b2) {
  CompatTable t = compat_table(u, observed, source);
  auto i1 = t.to->find(b1);
  auto i2 = t.to->find(b2);
  if (!i1) throw Error("not a source run: " + serialize(b1));
  if (!i2) throw Error("not a source run: " + serialize(b2));
  for (std::size_t o = 0; o < t.image.size(); ++o)
    if (t.contains(static_cast<int>(o), *i1) != t.contains(static_cast<int>(o), *i2))
      return false;
  return true;
}

PropagationReport cmpt_propagation_check(ExecutionUniverse& u,
                                         const ChannelSet& c1,
                                         const ChannelSet& c2,
                                         const ChannelSet& c3) {
  CompatTable t13 = compat_table(u, c1, c3);
  CompatTable t12 = compat_table(u, c1, c2);
  CompatTable t23 = compat_table(u, c2, c3);
  PropagationReport r;
  for (std::size_t b1 = 0; b1 < t13.image.size(); ++b1) {
    std::vector<int> through;
    for (int b2 : t12.image[b1]) {
      const auto& img = t23.image[static_cast<std::size_t>(b2)];
      through.insert(through.end(), img.begin(), img.end());
    }
    std::sort(through.begin(), through.end());
    through.erase(std::unique(through.begin(), through.end()), through.end());
    const auto& direct = t13.image[b1];

    std::vector<int> diff;
    std::set_difference(direct.begin(), direct.end(), through.begin(), through.end(),
                        std::back_inserter(diff));
    if (!diff.empty() && r.inclusion) {
      r.inclusion = false;
      r.equality = false;
      r.witness_c1 = t13.from->runs[b1];
      r.witness_c3 = t13.to->runs[static_cast<std::size_t>(diff.front())];
    }
    if (direct.size() != through.size()) {
      ++r.strict_cases;
      if (r.equality) {
        r.equality = false;
        std::vector<int> extra;
        std::set_difference(through.begin(), through.end(), direct.begin(), direct.end(),
                            std::back_inserter(extra));
        r.witness_c1 = t13.from->runs[b1];
        if (!extra.empty()) r.witness_c3 = t13.to->runs[static_cast<std::size_t>(extra.front())];
      }
    }
  }
  return r;
}

PropagationReport cut_equality_check(ExecutionUniverse& u,
                                     const ChannelSetTriple& triple) {
  CutCheck check = is_cut(u.frame(), triple);
  if (!check.ok()) throw Error("channel sets do not form a cut");
  return cmpt_propagation_check(u, triple.sink, triple.cut, triple.source);
}

MergeResult merge_across_cut(const Frame& target, const ChannelSet& left,
                             const ChannelSet& cut, const CanonicalRun& left_run,
                             const CanonicalRun& right_run) {
  ChannelSet left_cut = left;
  left_cut.insert(cut.begin(), cut.end());
  EventSystem lsys = to_event_system(left_run);
  EventSystem rsys = to_event_system(right_run);
  for (const auto& e : lsys.events())
    if (!left_cut.count(e.channel))
      throw Error("left run uses channel '" + e.channel + "' outside LEFT and the cut");
  for (const auto& e : rsys.events())
    if (left.count(e.channel))
      throw Error("right run uses LEFT channel '" + e.channel + "'");
  if (canonical_restriction(lsys, cut) != canonical_restriction(rsys, cut))
    throw Error("runs disagree on the cut");

  // Index events by (channel, ordinal); cut events come from the left run.
  std::vector<Event> events;
  std::map<std::pair<ChannelId, std::size_t>, std::size_t> id;
  auto ordinals = [](const EventSystem& sys) {
    std::vector<std::size_t> ord(sys.size());
    for (std::size_t i = 0; i < sys.size(); ++i)
      for (std::size_t j = 0; j < sys.size(); ++j)
        if (sys.event(j).channel == sys.event(i).channel && sys.precedes(j, i)) ++ord[i];
    return ord;
  };
  auto lord = ordinals(lsys);
  auto rord = ordinals(rsys);
  std::vector<std::size_t> lmap(lsys.size()), rmap(rsys.size());
  for (std::size_t i = 0; i < lsys.size(); ++i) {
    lmap[i] = events.size();
    id[{lsys.event(i).channel, lord[i]}] = events.size();
    events.push_back(lsys.event(i));
  }
  for (std::size_t i = 0; i < rsys.size(); ++i) {
    auto key = std::make_pair(rsys.event(i).channel, rord[i]);
    auto it = id.find(key);
    if (it != id.end()) {
      rmap[i] = it->second;
    } else {
      rmap[i] = events.size();
      events.push_back(rsys.event(i));
    }
  }
  std::vector<std::pair<std::size_t, std::size_t>> order;
  for (auto [a, b] : lsys.covering_pairs()) order.emplace_back(lmap[a], lmap[b]);
  for (auto [a, b] : rsys.covering_pairs()) order.emplace_back(rmap[a], rmap[b]);

  MergeResult out;
  try {
    out.system = EventSystem(std::move(events), order);
  } catch (const Error&) {
    throw Error("internal invariant violated: merged order is cyclic");
  }
  out.execution = is_execution(out.system, target);
  // Compare over the channel sets each run was taken at.
  ChannelSet lchans = left_cut, rchans;
  for (const auto& c : target.all_channels())
    if (!left.count(c)) rchans.insert(c);
  out.restricts_back = canonical_restriction(out.system, lchans) == left_run &&
                       canonical_restriction(out.system, rchans) == right_run;
  return out;
}

}  // namespace infoflow
