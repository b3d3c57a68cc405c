#include "infoflow/blur.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace infoflow {

PartitionBlur partition_from_classes(std::string name,
                                     std::vector<std::vector<std::string>> classes) {
  std::map<std::string, std::string> key;
  for (std::size_t c = 0; c < classes.size(); ++c)
    for (const auto& text : classes[c]) {
      // Normalize so that differently spaced texts still match.
      auto [it, fresh] = key.emplace(serialize(parse_run(text)), "#" + std::to_string(c));
      if (!fresh) throw Error("run " + text + " is listed in two classes of '" + name + "'");
    }
  PartitionBlur f;
  f.name = std::move(name);
  f.classes = std::move(classes);
  f.key = [key](const CanonicalRun& r) {
    std::string t = serialize(r);
    auto it = key.find(t);
    return it == key.end() ? t : it->second;
  };
  return f;
}

std::string blur_kind(const BlurSpec& blur) {
  switch (blur.index()) {
    case 0: return "all";
    case 1: return "identity";
    case 2: return "partition";
    case 3: return "permutation";
    case 4: return "selection";
    default: return "table";
  }
}

bool EventPredicate::matches(const Frame& frame, const Event& e) const {
  if (values.count(e.message) || channels.count(e.channel)) return true;
  const Channel& c = frame.channel(e.channel);
  if (c.is_self_loop()) return false;
  return received_by.count(c.recipient) || sent_by.count(c.sender);
}

EventSystem select_events(const EventSystem& sys, const Frame& frame,
                          const EventPredicate& pred) {
  EventSystem::Mask keep = 0;
  for (std::size_t i = 0; i < sys.size(); ++i)
    if (pred.matches(frame, sys.event(i))) keep |= EventSystem::Mask{1} << i;
  return sys.subsystem(keep);
}

namespace {

ChannelId voter_channel(const Frame& frame, const LocationId& voter) {
  std::vector<ChannelId> out;
  for (const auto& c : frame.channels())
    if (c.sender == voter && !c.is_self_loop()) out.push_back(c.id);
  if (out.size() != 1)
    throw Error("voter '" + voter + "' must send on exactly one channel");
  return out.front();
}

}  // namespace

std::vector<std::map<ChannelId, ChannelId>> permutation_renamings(
    const PermutationBlur& blur, const Frame& frame) {
  auto blocks = blur.blocks;
  if (blocks.empty()) blocks.push_back(blur.voters);
  std::set<LocationId> voters(blur.voters.begin(), blur.voters.end());
  // Each block contributes the permutations of its movable members.
  std::vector<std::vector<std::map<ChannelId, ChannelId>>> per_block;
  for (const auto& block : blocks) {
    std::vector<LocationId> movable;
    for (const auto& v : block) {
      if (!voters.count(v)) throw Error("block member '" + v + "' is not a voter");
      if (!blur.fixed.count(v)) movable.push_back(v);
    }
    std::sort(movable.begin(), movable.end());
    std::vector<ChannelId> chan;
    for (const auto& v : movable) chan.push_back(voter_channel(frame, v));
    std::vector<std::size_t> pi(movable.size());
    std::iota(pi.begin(), pi.end(), 0);
    std::vector<std::map<ChannelId, ChannelId>> perms;
    do {
      std::map<ChannelId, ChannelId> m;
      // Voter k now carries what voter pi[k] carried.
      for (std::size_t k = 0; k < pi.size(); ++k)
        if (pi[k] != k) m[chan[pi[k]]] = chan[k];
      perms.push_back(std::move(m));
    } while (std::next_permutation(pi.begin(), pi.end()));
    per_block.push_back(std::move(perms));
  }
  std::vector<std::map<ChannelId, ChannelId>> out{{}};
  for (const auto& perms : per_block) {
    std::vector<std::map<ChannelId, ChannelId>> next;
    for (const auto& base : out)
      for (const auto& p : perms) {
        auto m = base;
        m.insert(p.begin(), p.end());
        next.push_back(std::move(m));
      }
    out = std::move(next);
  }
  return out;
}

CanonicalRun rename_channels(const CanonicalRun& run,
                             const std::map<ChannelId, ChannelId>& renaming) {
  if (renaming.empty()) return run;
  EventSystem sys = to_event_system(run);
  std::vector<Event> events = sys.events();
  for (auto& e : events) {
    auto it = renaming.find(e.channel);
    if (it != renaming.end()) e.channel = it->second;
  }
  std::vector<std::pair<std::size_t, std::size_t>> order = sys.covering_pairs();
  return canonicalize(EventSystem(std::move(events), order));
}

CompiledBlur::CompiledBlur(const BlurSpec& blur, const Frame& frame,
                           std::vector<CanonicalRun> universe)
    : runs_(std::move(universe)) {
  for (const auto& r : runs_) {
    texts_.push_back(serialize(r));
    if (!index_.emplace(texts_.back(), static_cast<int>(texts_.size() - 1)).second)
      throw Error("blur universe lists a run twice");
  }
  const std::size_t n = runs_.size();

  auto from_keys = [&](const std::function<std::string(const CanonicalRun&)>& key) {
    std::map<std::string, int> cls;
    std::vector<int> class_of(n);
    for (std::size_t i = 0; i < n; ++i) {
      auto [it, fresh] = cls.emplace(key(runs_[i]), static_cast<int>(members_.size()));
      if (fresh) members_.emplace_back();
      class_of[i] = it->second;
      members_[static_cast<std::size_t>(it->second)].push_back(static_cast<int>(i));
    }
    class_of_ = std::move(class_of);
  };

  if (std::holds_alternative<AllBlur>(blur)) {
    from_keys([](const CanonicalRun&) { return std::string(); });
  } else if (std::holds_alternative<IdentityBlur>(blur)) {
    from_keys([](const CanonicalRun& r) { return serialize(r); });
  } else if (const auto* p = std::get_if<PartitionBlur>(&blur)) {
    if (p->key) {
      from_keys(p->key);
    } else if (p->equivalent) {
      // Union-find over the predicate, then confirm it was already an
      // equivalence: the predicate must coincide with its closure.
      std::vector<std::size_t> parent(n);
      std::iota(parent.begin(), parent.end(), 0);
      std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        return parent[x] == x ? x : parent[x] = find(parent[x]);
      };
      std::vector<std::vector<char>> rel(n, std::vector<char>(n));
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
          rel[a][b] = p->equivalent(runs_[a], runs_[b]);
          if (rel[a][b]) parent[find(a)] = find(b);
        }
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          if (static_cast<bool>(rel[a][b]) != (find(a) == find(b)))
            throw Error("partition blur '" + p->name + "' is not an equivalence: " +
                        texts_[a] + " vs " + texts_[b]);
      from_keys([&](const CanonicalRun& r) {
        return std::to_string(find(static_cast<std::size_t>(index_.at(serialize(r)))));
      });
    } else {
      throw Error("partition blur '" + p->name + "' has neither key nor predicate");
    }
  } else if (const auto* p = std::get_if<PermutationBlur>(&blur)) {
    auto renamings = permutation_renamings(*p, frame);
    from_keys([&](const CanonicalRun& r) {
      std::string best;
      for (const auto& m : renamings) {
        std::string t = serialize(rename_channels(r, m));
        if (best.empty() || t < best) best = t;
      }
      return best;
    });
  } else if (const auto* p = std::get_if<SelectionBlur>(&blur)) {
    from_keys([&](const CanonicalRun& r) {
      return serialize(canonicalize(select_events(to_event_system(r), frame, p->select)));
    });
  } else {
    const auto& t = std::get<TableBlur>(blur);
    members_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      auto it = t.table.find(texts_[i]);
      if (it == t.table.end()) continue;
      for (const auto& text : it->second) {
        auto j = id(text);
        if (!j) throw Error("table blur maps to a run outside the universe: " + text);
        members_[i].push_back(*j);
      }
      std::sort(members_[i].begin(), members_[i].end());
      members_[i].erase(std::unique(members_[i].begin(), members_[i].end()), members_[i].end());
    }
  }
}

std::optional<int> CompiledBlur::id(const std::string& text) const {
  auto it = index_.find(text);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<int> CompiledBlur::singleton(int a) const {
  auto i = static_cast<std::size_t>(a);
  if (class_of_) return members_[static_cast<std::size_t>((*class_of_)[i])];
  return members_[i];
}

std::vector<int> CompiledBlur::apply(const std::vector<int>& s) const {
  std::vector<int> out;
  if (class_of_) {
    std::set<int> classes;
    for (int a : s) classes.insert((*class_of_)[static_cast<std::size_t>(a)]);
    for (int c : classes) {
      const auto& m = members_[static_cast<std::size_t>(c)];
      out.insert(out.end(), m.begin(), m.end());
    }
  } else {
    for (int a : s) {
      const auto& m = members_[static_cast<std::size_t>(a)];
      out.insert(out.end(), m.begin(), m.end());
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<int> CompiledBlur::unblurred_element(const std::vector<int>& s) const {
  std::vector<int> sorted = s;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> fs = apply(sorted);
  std::vector<int> diff;
  std::set_difference(fs.begin(), fs.end(), sorted.begin(), sorted.end(),
                      std::back_inserter(diff));
  if (diff.empty()) return std::nullopt;
  return diff.front();
}

std::vector<CanonicalRun> blur_apply(const BlurSpec& blur, const Frame& frame,
                                     const std::vector<CanonicalRun>& s,
                                     const std::vector<CanonicalRun>& universe) {
  CompiledBlur f(blur, frame, universe);
  std::vector<int> ids;
  for (const auto& r : s) {
    auto i = f.id(serialize(r));
    if (!i) throw Error("run outside the blur universe: " + serialize(r));
    ids.push_back(*i);
  }
  std::vector<CanonicalRun> out;
  for (int i : f.apply(ids)) out.push_back(f.runs()[static_cast<std::size_t>(i)]);
  return out;
}

BlurValidation validate_blur(const CompiledBlur& blur, std::uint32_t seed,
                             std::size_t samples) {
  BlurValidation v;
  const int n = static_cast<int>(blur.universe_size());
  std::vector<std::vector<int>> single(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a) {
    single[static_cast<std::size_t>(a)] = blur.singleton(a);
    const auto& fa = single[static_cast<std::size_t>(a)];
    if (v.inclusion && !std::binary_search(fa.begin(), fa.end(), a)) {
      v.inclusion = false;
      v.detail = "inclusion fails at " + blur.text(a);
    }
    if (v.idempotence && blur.apply(fa) != fa) {
      v.idempotence = false;
      if (v.detail.empty()) v.detail = "idempotence fails at {" + blur.text(a) + "}";
    }
  }
  std::mt19937 rng(seed);
  std::bernoulli_distribution coin(0.3);
  for (std::size_t k = 0; k < samples && n > 0 && v.idempotence; ++k) {
    std::vector<int> s;
    for (int a = 0; a < n; ++a)
      if (coin(rng)) s.push_back(a);
    auto fs = blur.apply(s);
    if (blur.apply(fs) != fs) {
      v.idempotence = false;
      if (v.detail.empty()) v.detail = "idempotence fails on a sampled set";
    }
  }
  if (blur.partition_by_construction()) {
    v.partition_generated = true;
  } else {
    // Partition-generated iff b in f({a}) always gives f({b}) = f({a}).
    v.partition_generated = true;
    for (int a = 0; a < n && v.partition_generated; ++a)
      for (int b : single[static_cast<std::size_t>(a)])
        if (single[static_cast<std::size_t>(b)] != single[static_cast<std::size_t>(a)]) {
          v.partition_generated = false;
          break;
        }
  }
  return v;
}

FlowVerdict f_limits_flow(ExecutionUniverse& u, const ChannelSet& source,
                          const ChannelSet& observed, const CompiledBlur& blur) {
  CompatTable t = compat_table(u, observed, source);
  std::vector<int> to_blur;
  for (const auto& text : t.to->texts) {
    auto i = blur.id(text);
    if (!i) throw Error("source run outside the blur universe: " + text);
    to_blur.push_back(*i);
  }
  FlowVerdict v;
  for (std::size_t o = 0; o < t.image.size(); ++o) {
    std::vector<int> s;
    for (int r : t.image[o]) s.push_back(to_blur[static_cast<std::size_t>(r)]);
    if (auto bad = blur.unblurred_element(s)) {
      v.holds = false;
      v.observed_run = t.from->runs[o];
      v.unblurred = blur.runs()[static_cast<std::size_t>(*bad)];
      return v;
    }
  }
  return v;
}

FlowVerdict f_limits_flow(ExecutionUniverse& u, const ChannelSet& source,
                          const ChannelSet& observed, const BlurSpec& blur) {
  CompiledBlur f(blur, u.frame(), u.runs(source).runs);
  return f_limits_flow(u, source, observed, f);
}

CutBlurVerdict verify_cut_blur(ExecutionUniverse& u,
                               const ChannelSetTriple& triple,
                               const BlurSpec& blur) {
  if (!is_cut(u.frame(), triple).ok())
    throw Error("channel sets do not form a cut");
  CompiledBlur f(blur, u.frame(), u.runs(triple.source).runs);
  CutBlurVerdict v;
  v.antecedent = f_limits_flow(u, triple.source, triple.cut, f);
  v.consequent = f_limits_flow(u, triple.source, triple.sink, f);
  return v;
}

namespace {

std::size_t language_depth(const Bound& b) {
  return b.max_per_location.value_or(b.max_total_events);
}

std::vector<Channel> channel_records(const Frame& frame, const LocationId& l) {
  std::vector<Channel> out;
  for (const auto& c : frame.channels())
    if (c.sender == l || c.recipient == l) out.push_back(c);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

SharedCore build_shared_core(ExecutionUniverse& u1, ExecutionUniverse& u2,
                             const LocationSet& core) {
  const Frame& f1 = u1.frame();
  const Frame& f2 = u2.frame();
  std::size_t depth = std::max(language_depth(u1.bound()), language_depth(u2.bound()));
  for (const auto& l : core) {
    if (!f1.find_location(l) || !f2.find_location(l))
      throw Error("core location '" + l + "' is missing from a frame");
    if (channel_records(f1, l) != channel_records(f2, l))
      throw Error("endpoint mismatch at core location '" + l + "'");
    auto lang1 = location_language(f1, l, depth);
    auto lang2 = location_language(f2, l, depth);
    if (lang1 != lang2) {
      std::vector<Trace> diff;
      std::set_symmetric_difference(lang1.begin(), lang1.end(), lang2.begin(), lang2.end(),
                                    std::back_inserter(diff));
      throw Error("trace mismatch at core location '" + l + "': " + to_string(diff.front()));
    }
  }
  SharedCore sc;
  sc.core = core;
  auto classify = [&](const Frame& f, ChannelSet& right) {
    for (const auto& c : f.channels()) {
      int inside = static_cast<int>(core.count(c.sender)) + static_cast<int>(core.count(c.recipient));
      if (inside == 2) sc.left0.insert(c.id);
      else if (inside == 1) sc.lcut0.insert(c.id);
      else right.insert(c.id);
    }
  };
  classify(f1, sc.right1);
  classify(f2, sc.right2);

  const RunTable& cut1 = u1.runs(sc.lcut0);
  const RunTable& cut2 = u2.runs(sc.lcut0);
  sc.run_inclusion = true;
  for (std::size_t i = 0; i < cut2.runs.size(); ++i)
    if (!cut1.find(cut2.texts[i])) {
      sc.run_inclusion = false;
      sc.new_cut_run = cut2.runs[i];
      break;
    }
  return sc;
}

CompositionVerdict verify_composition(const SharedCore& core,
                                      ExecutionUniverse& u1,
                                      ExecutionUniverse& u2,
                                      const ChannelSet& source,
                                      const ChannelSet& observed,
                                      const BlurSpec& blur) {
  if (!core.run_inclusion)
    throw Error("side condition fails: F2 has cut runs that F1 lacks");
  for (const auto& c : source)
    if (!core.left0.count(c)) throw Error("source channel '" + c + "' is not in LEFT0");
  for (const auto& c : observed)
    if (!core.right2.count(c)) throw Error("observed channel '" + c + "' is not in RIGHT2");

  CompiledBlur f(blur, u1.frame(), u1.runs(source).runs);
  CompositionVerdict v;
  v.antecedent = f_limits_flow(u1, source, core.lcut0, f);
  v.consequent = f_limits_flow(u2, source, observed, f);

  CompatTable t1 = compat_table(u1, core.lcut0, source);
  CompatTable t2 = compat_table(u2, core.lcut0, source);
  for (std::size_t b = 0; b < t2.from->runs.size() && v.locality; ++b) {
    std::set<std::string> s1, s2;
    int b1 = *t1.from->find(t2.from->texts[b]);
    for (int r : t1.image[static_cast<std::size_t>(b1)]) s1.insert(t1.to->texts[static_cast<std::size_t>(r)]);
    for (int r : t2.image[b]) s2.insert(t2.to->texts[static_cast<std::size_t>(r)]);
    if (s1 != s2) {
      v.locality = false;
      v.locality_witness = t2.from->runs[b];
    }
  }
  return v;
}

JointPermutationReport check_joint_permutation(
    ExecutionUniverse& u, const std::vector<PermutationStage>& stages,
    const ChannelSet& observed) {
  const Frame& frame = u.frame();
  JointPermutationReport r;
  std::vector<std::vector<std::map<ChannelId, ChannelId>>> groups;
  ChannelSet permuted;
  for (const auto& st : stages) {
    groups.push_back(permutation_renamings(st.blur, frame));
    permuted.insert(st.left.begin(), st.left.end());
  }
  CompatTable compat = compat_table(u, observed, permuted);

  std::vector<std::size_t> choice(stages.size(), 0);
  for (const auto& ex : u.executions().executions) {
    const CanonicalRun obs = canonical_restriction(ex.system, observed);
    const CanonicalRun before = canonical_restriction(ex.system, permuted);
    std::fill(choice.begin(), choice.end(), 0);
    for (;;) {
      ++r.cases;
      EventSystem cur = ex.system;
      std::map<ChannelId, ChannelId> joint;
      bool ok = true;
      for (std::size_t s = 0; s < stages.size() && ok; ++s) {
        const auto& st = stages[s];
        const auto& m = groups[s][choice[s]];
        joint.insert(m.begin(), m.end());
        ChannelSet lc = st.left;
        lc.insert(st.cut.begin(), st.cut.end());
        ChannelSet right;
        for (const auto& c : frame.all_channels())
          if (!st.left.count(c)) right.insert(c);
        CanonicalRun moved = rename_channels(canonical_restriction(cur, lc), m);
        if (!u.runs(lc).find(moved)) {
          ok = false;
          r.detail = "permuted stage run is not a local run: " + serialize(moved);
          break;
        }
        MergeResult merged =
            merge_across_cut(frame, st.left, st.cut, moved, canonical_restriction(cur, right));
        if (!merged.ok()) {
          ok = false;
          r.detail = "merge failed at " + ex.text;
          break;
        }
        cur = std::move(merged.system);
      }
      if (ok) {
        CanonicalRun after = canonical_restriction(cur, permuted);
        auto o = compat.from->find(obs);
        auto a = compat.to->find(after);
        if (canonical_restriction(cur, observed) != obs ||
            after != rename_channels(before, joint) || !o || !a ||
            !compat.contains(*o, *a)) {
          ok = false;
          r.detail = "joint permutation changes the observation at " + ex.text;
        }
      }
      if (!ok) {
        r.holds = false;
        return r;
      }
      std::size_t k = 0;
      while (k < choice.size() && ++choice[k] == groups[k].size()) choice[k++] = 0;
      if (k == choice.size()) break;
    }
  }
  return r;
}

}  // namespace infoflow
