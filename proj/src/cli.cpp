#include "infoflow/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "infoflow/cuts.hpp"
#include "infoflow/disclosure.hpp"
#include "infoflow/frame_file.hpp"

namespace infoflow {

namespace {

using json = nlohmann::ordered_json;

constexpr const char* kSchema = "infoflow-report/1";
constexpr const char* kDisclaimer =
    "verdicts cover only executions within the stated bound";

struct Options {
  bool json_out = false;
  bool timing = false;
  std::uint32_t seed = 1;
  std::optional<std::size_t> bound;
  std::optional<std::size_t> per_location;
};

// A verdict to print plus the exit status it implies.
struct Outcome {
  json report;
  int status = 0;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Scenario load_frame(const std::string& path, bool validate = true) {
  try {
    return parse_frame_file(read_file(path), validate);
  } catch (const ParseError& e) {
    throw Error(path + ": " + e.what());
  }
}

MachineSpec load_machine(const std::string& path) {
  try {
    return parse_machine_file(read_file(path));
  } catch (const ParseError& e) {
    throw Error(path + ": " + e.what());
  }
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, ',')) out.push_back(cur);
  return out;
}

// A set name from the file, "chans:L1,L2" for the channels touching those
// locations, or a comma list of channel ids.
ChannelSet resolve_set(const std::vector<const Scenario*>& docs, const std::string& spec) {
  for (const auto* d : docs) {
    auto it = d->sets.find(spec);
    if (it != d->sets.end()) return it->second;
  }
  const Frame& f = docs.front()->frame;
  if (spec.rfind("chans:", 0) == 0) {
    LocationSet locs;
    for (const auto& l : split_commas(spec.substr(6))) {
      if (!f.find_location(l)) throw Error("unknown location '" + l + "'");
      locs.insert(l);
    }
    return f.chans(locs);
  }
  ChannelSet out;
  for (const auto& c : split_commas(spec)) {
    if (!f.find_channel(c)) throw Error("'" + spec + "' is neither a set nor a channel list");
    out.insert(c);
  }
  return out;
}

const BlurSpec& resolve_blur(const std::vector<const Scenario*>& docs, const std::string& name) {
  for (const auto* d : docs) {
    auto it = d->blurs.find(name);
    if (it != d->blurs.end()) return it->second;
  }
  throw Error("unknown blur '" + name + "'");
}

Bound resolve_bound(const Options& o, std::ostream& err) {
  Bound b;
  if (!o.bound && !o.per_location) {
    err << "warning: no bound given; using " << b.max_total_events << " total events\n";
    return b;
  }
  if (o.per_location) b = Bound::per_location(*o.per_location);
  if (o.bound) b.max_total_events = *o.bound;
  check_bound(b);
  return b;
}

json run_list(const std::vector<CanonicalRun>& runs) {
  json a = json::array();
  for (const auto& r : runs) a.push_back(serialize(r));
  return a;
}

json set_json(const ChannelSet& s) { return json(std::vector<std::string>(s.begin(), s.end())); }

json opt_run(const std::optional<CanonicalRun>& r) {
  return r ? json(serialize(*r)) : json(nullptr);
}

json flow_json(const FlowVerdict& v) {
  json j;
  j["holds"] = v.holds;
  j["observed_run"] = opt_run(v.observed_run);
  j["unblurred_run"] = opt_run(v.unblurred);
  return j;
}

json pair_json(const std::optional<std::pair<std::string, std::string>>& w) {
  if (!w) return nullptr;
  return json::array({w->first, w->second});
}

std::string verdict(bool holds) { return holds ? "holds" : "fails"; }

// Text rendering carries exactly the structured content.
void render_text(const json& j, std::ostream& out, int indent) {
  std::string pad(static_cast<std::size_t>(indent), ' ');
  auto scalar = [](const json& v) {
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
  };
  for (const auto& [k, v] : j.items()) {
    if (v.is_object()) {
      out << pad << k << ":\n";
      render_text(v, out, indent + 2);
    } else if (v.is_array()) {
      if (v.empty()) {
        out << pad << k << ": []\n";
        continue;
      }
      out << pad << k << ":\n";
      for (const auto& x : v) {
        if (x.is_object()) {
          out << pad << "  -\n";
          render_text(x, out, indent + 4);
        } else if (x.is_array()) {
          std::string line;
          for (const auto& y : x) line += (line.empty() ? "" : "  ") + scalar(y);
          out << pad << "  - " << line << '\n';
        } else {
          out << pad << "  - " << scalar(x) << '\n';
        }
      }
    } else {
      out << pad << k << ": " << scalar(v) << '\n';
    }
  }
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bounded information-flow analysis of message-passing frames", "infoflow"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_flag("--json", o.json_out, "Structured (JSON) report");
  app.add_flag("--timing", o.timing, "Add elapsed time to the report");
  app.add_option("--seed", o.seed, "Seed for sampled checks")->capture_default_str();
  app.add_option("--bound", o.bound, "Maximum total events per execution");
  app.add_option("--per-location", o.per_location, "Maximum events per location");

  std::string file, file2, source, observed, cut, sink, blur, chans, run_text, core, target;
  std::string purge_kind = "gm";
  std::size_t rounds = 2, samples = 64;
  std::string output;
  bool discard_all = false, no_local = false;
  std::string precincts = "2", candidates = "0,1";

  auto frame_cmd = [&](const std::string& name, const std::string& help) {
    auto* c = app.add_subcommand(name, help);
    c->add_option("frame", file, "Frame file")->required();
    return c;
  };
  auto* validate = frame_cmd("validate", "Check a frame file");
  auto* enumerate = frame_cmd("enumerate", "List bounded executions");
  auto* runs = frame_cmd("runs", "List local runs of a channel set");
  runs->add_option("--chans", chans, "Channel set")->required();
  auto* cmpt = frame_cmd("cmpt", "Source runs compatible with an observed run");
  cmpt->add_option("--observed", observed)->required();
  cmpt->add_option("--source", source)->required();
  cmpt->add_option("--run", run_text, "Observed run, e.g. '{c:[x]}'")->required();
  auto* nodis = frame_cmd("nodisclosure", "No disclosure between two channel sets");
  nodis->add_option("--source", source)->required();
  nodis->add_option("--observed", observed)->required();
  auto* check_blur = frame_cmd("check-blur", "Blur axioms and f-limited flow");
  check_blur->add_option("--blur", blur)->required();
  check_blur->add_option("--source", source)->required();
  check_blur->add_option("--observed", observed, "Also check f-limited flow to this set");
  check_blur->add_option("--samples", samples, "Subsets sampled for the axioms")->capture_default_str();
  auto* check_cut = frame_cmd("check-cut", "Whether a channel set is a cut");
  check_cut->add_option("--source", source)->required();
  check_cut->add_option("--cut", cut)->required();
  check_cut->add_option("--sink", sink)->required();
  auto* min_cut = frame_cmd("min-cut", "Smallest cut between two channel sets");
  min_cut->add_option("--source", source)->required();
  min_cut->add_option("--sink", sink)->required();
  auto* cutblur = frame_cmd("verify-cutblur", "Cut-blur principle on a cut");
  cutblur->add_option("--source", source)->required();
  cutblur->add_option("--cut", cut)->required();
  cutblur->add_option("--sink", sink)->required();
  cutblur->add_option("--blur", blur)->required();
  auto* compose = app.add_subcommand("compose", "Blur transfer between frames sharing a core");
  compose->add_option("frame1", file, "Frame with the core")->required();
  compose->add_option("frame2", file2, "Larger frame")->required();
  compose->add_option("--core", core, "Comma list of core locations")->required();
  compose->add_option("--source", source)->required();
  compose->add_option("--observed", observed)->required();
  compose->add_option("--blur", blur)->required();
  auto machine_cmd = [&](const std::string& name, const std::string& help) {
    auto* c = app.add_subcommand(name, help);
    c->add_option("machine", file, "Machine file")->required();
    c->add_option("--target", target, "Observing domain")->required();
    c->add_option("--purge", purge_kind, "gm, hy or broken")
        ->check(CLI::IsMember({"gm", "hy", "broken"}))
        ->capture_default_str();
    c->add_option("--rounds", rounds, "Input/output rounds")->capture_default_str();
    return c;
  };
  auto* ni = machine_cmd("ni", "Purge-based noninterference");
  auto* nd = machine_cmd("nd", "Purge-based nondeducibility");
  auto* pblur = machine_cmd("purge-blur", "Nondeducibility as purge-blur limited flow");
  auto* scenario = app.add_subcommand("scenario", "Emit a scenario frame file");
  scenario->require_subcommand(1);
  auto* fw = scenario->add_subcommand("firewall", "Two-router firewall");
  fw->add_flag("--discard-all", discard_all, "Filtering interfaces drop everything");
  fw->add_flag("--no-local", no_local, "No local traffic inside regions");
  fw->add_option("-o,--output", output, "Write here instead of stdout");
  auto* vote = scenario->add_subcommand("voting", "Precinct voting");
  vote->add_option("--precincts", precincts, "Voters per precinct, comma separated")->capture_default_str();
  vote->add_option("--candidates", candidates, "Comma separated")->capture_default_str();
  vote->add_option("-o,--output", output, "Write here instead of stdout");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  auto started = std::chrono::steady_clock::now();
  Outcome r;
  try {
    auto* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    json cmd;
    cmd["name"] = name;
    cmd["args"] = args;
    r.report["schema"] = kSchema;

    if (sub == scenario) {
      Scenario s;
      if (fw->parsed()) {
        FirewallParams p;
        p.discard_all = discard_all;
        p.local_traffic = !no_local;
        s = build_firewall(p);
      } else {
        VotingParams p;
        p.precincts.clear();
        for (const auto& n : split_commas(precincts)) p.precincts.push_back(std::stoul(n));
        p.candidates = split_commas(candidates);
        s = build_voting(p);
      }
      std::string text = write_frame_file(s);
      if (output.empty()) {
        out << text;
      } else {
        std::ofstream f(output, std::ios::binary);
        if (!f) throw Error("cannot write '" + output + "'");
        f << text;
      }
      return 0;
    }

    r.report["command"] = cmd;
    r.report["input"] = file2.empty() ? json(file) : json::array({file, file2});
    if (sub == ni || sub == nd || sub == pblur) {
      MachineSpec m = load_machine(file);
      if (std::find(m.domains.begin(), m.domains.end(), target) == m.domains.end())
        throw Error("unknown domain '" + target + "'");
      PurgeKind kind = purge_kind == "gm"   ? PurgeKind::kGoguenMeseguer
                       : purge_kind == "hy" ? PurgeKind::kHaighYoung
                                            : PurgeKind::kBroken;
      if (o.bound || o.per_location)
        err << "warning: machine commands are bounded by --rounds; --bound ignored\n";
      ExecutionUniverse u = quiescent_universe(m, rounds);
      r.report["bound"] = u.bound().describe() + " (" + std::to_string(rounds) + " rounds)";
      json res2;
      res2["target"] = target;
      res2["purge"] = purge_name(kind);
      res2["executions"] = u.size();
      auto pv = validate_purge(m, kind, target, u);
      res2["purge_valid"] = pv.ok();
      if (!pv.ok()) res2["purge_witness"] = pair_json(pv.witness);
      if (sub == ni || sub == nd) {
        auto v = sub == ni ? check_NI(m, kind, target, u) : check_ND(m, kind, target, u);
        res2["verdict"] = verdict(v.holds);
        res2["witness"] = pair_json(v.witness);
        r.status = v.holds ? 0 : 1;
      } else {
        auto v = check_ND(m, kind, target, u);
        auto f = f_limits_flow(u, input_channels(m), view_channels(target),
                               purge_blur(m, kind, target, u));
        res2["nd"] = verdict(v.holds);
        res2["flow"] = flow_json(f);
        res2["verdict"] = verdict(f.holds);
        res2["agree"] = v.holds == f.holds;
        r.status = f.holds ? 0 : 1;
      }
      r.report["result"] = res2;
    } else if (sub == validate) {
      Scenario s = load_frame(file, false);
      auto rep = validate_frame(s.frame);
      json res2;
      res2["verdict"] = verdict(rep.ok());
      res2["locations"] = s.frame.locations().size();
      res2["channels"] = s.frame.channels().size();
      res2["data"] = s.frame.data().size();
      json sets = json::array(), blurs = json::array(), viol = json::array();
      for (const auto& [k, v] : s.sets) sets.push_back(k);
      for (const auto& [k, v] : s.blurs) blurs.push_back(k + " (" + blur_kind(v) + ")");
      for (const auto& v : rep.violations) viol.push_back(v.kind + ": " + v.subject + ": " + v.detail);
      res2["sets"] = sets;
      res2["blurs"] = blurs;
      res2["violations"] = viol;
      r.report["result"] = res2;
      r.status = rep.ok() ? 0 : 1;
    } else if (sub == compose) {
      Scenario s1 = load_frame(file), s2 = load_frame(file2);
      Bound b = resolve_bound(o, err);
      r.report["bound"] = b.describe();
      std::vector<const Scenario*> docs{&s2, &s1};
      ChannelSet src = resolve_set(docs, source), obs = resolve_set(docs, observed);
      const BlurSpec& f = resolve_blur(docs, blur);
      LocationSet core_set;
      for (const auto& l : split_commas(core)) core_set.insert(l);
      ExecutionUniverse u1(s1.frame, b), u2(s2.frame, b);
      SharedCore sc = build_shared_core(u1, u2, core_set);
      json res2;
      res2["core"] = json(std::vector<std::string>(core_set.begin(), core_set.end()));
      res2["lcut0"] = set_json(sc.lcut0);
      res2["run_inclusion"] = sc.run_inclusion;
      res2["new_cut_run"] = opt_run(sc.new_cut_run);
      if (!sc.run_inclusion) {
        res2["verdict"] = verdict(false);
        r.status = 1;
      } else {
        auto v = verify_composition(sc, u1, u2, src, obs, f);
        res2["antecedent"] = flow_json(v.antecedent);
        res2["consequent"] = flow_json(v.consequent);
        res2["locality"] = v.locality;
        res2["locality_witness"] = opt_run(v.locality_witness);
        res2["verdict"] = verdict(v.implication_holds());
        r.status = v.implication_holds() ? 0 : 1;
      }
      r.report["result"] = res2;
    } else {
      Scenario s = load_frame(file);
      std::vector<const Scenario*> docs{&s};
      json res2;
      if (sub == check_cut || sub == min_cut) {
        ChannelSet src = resolve_set(docs, source), snk = resolve_set(docs, sink);
        res2["source"] = set_json(src);
        res2["sink"] = set_json(snk);
        if (sub == check_cut) {
          ChannelSet ct = resolve_set(docs, cut);
          res2["cut"] = set_json(ct);
          auto c = is_cut(s.frame, {src, ct, snk});
          res2["disjoint"] = c.disjoint;
          res2["verdict"] = verdict(c.ok());
          res2["path"] = json(c.path);
          res2["path_channels"] = json(c.channels);
          r.status = c.ok() ? 0 : 1;
        } else {
          auto m = find_min_cut(s.frame, src, snk);
          res2["possible"] = m.possible;
          res2["cut"] = set_json(m.cut);
          res2["reason"] = m.reason;
          res2["verdict"] = verdict(m.possible);
          r.status = m.possible ? 0 : 1;
        }
        r.report["result"] = res2;
      } else {
        Bound b = resolve_bound(o, err);
        r.report["bound"] = b.describe();
        ExecutionUniverse u(s.frame, b);
        res2["executions"] = u.size();
        if (sub == enumerate) {
          json ex = json::array();
          for (const auto& e : u.executions().executions) ex.push_back(e.text);
          res2["list"] = ex;
        } else if (sub == runs) {
          ChannelSet c = resolve_set(docs, chans);
          res2["chans"] = set_json(c);
          const auto& t = u.runs(c);
          res2["count"] = t.runs.size();
          res2["list"] = run_list(t.runs);
        } else if (sub == cmpt) {
          CompatQuery q{resolve_set(docs, observed), resolve_set(docs, source), parse_run(run_text)};
          res2["observed"] = set_json(q.observed);
          res2["source"] = set_json(q.source);
          res2["observed_run"] = serialize(q.observed_run);
          bool realized = u.runs(q.observed).find(q.observed_run).has_value();
          res2["realized"] = realized;
          auto c = compatible_runs(u, q);
          res2["count"] = c.size();
          res2["compatible"] = run_list(c);
          r.status = realized ? 0 : 1;
        } else if (sub == nodis) {
          ChannelSet src = resolve_set(docs, source), obs = resolve_set(docs, observed);
          res2["source"] = set_json(src);
          res2["observed"] = set_json(obs);
          auto v = no_disclosure(u, obs, src);
          res2["verdict"] = verdict(v.holds);
          res2["observed_run"] = opt_run(v.run);
          res2["incompatible_run"] = opt_run(v.incompatible);
          r.status = v.holds ? 0 : 1;
        } else if (sub == check_blur) {
          ChannelSet src = resolve_set(docs, source);
          const BlurSpec& f = resolve_blur(docs, blur);
          res2["blur"] = blur + " (" + blur_kind(f) + ")";
          res2["source"] = set_json(src);
          CompiledBlur cb(f, s.frame, u.runs(src).runs);
          auto bv = validate_blur(cb, o.seed, samples);
          json ax;
          ax["inclusion"] = bv.inclusion;
          ax["idempotence"] = bv.idempotence;
          ax["union"] = bv.union_law;
          ax["partition_generated"] = bv.partition_generated;
          ax["detail"] = bv.detail;
          res2["axioms"] = ax;
          bool ok = bv.is_blur();
          if (!observed.empty()) {
            ChannelSet obs = resolve_set(docs, observed);
            res2["observed"] = set_json(obs);
            auto fv = f_limits_flow(u, src, obs, cb);
            res2["flow"] = flow_json(fv);
            ok = ok && fv.holds;
          }
          res2["verdict"] = verdict(ok);
          r.status = ok ? 0 : 1;
        } else if (sub == cutblur) {
          ChannelSetTriple t{resolve_set(docs, source), resolve_set(docs, cut), resolve_set(docs, sink)};
          res2["source"] = set_json(t.source);
          res2["cut"] = set_json(t.cut);
          res2["sink"] = set_json(t.sink);
          res2["blur"] = blur;
          auto v = verify_cut_blur(u, t, resolve_blur(docs, blur));
          res2["antecedent"] = flow_json(v.antecedent);
          res2["consequent"] = flow_json(v.consequent);
          res2["verdict"] = verdict(v.implication_holds());
          r.status = v.implication_holds() ? 0 : 1;
        }
        r.report["result"] = res2;
      }
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  r.report["disclaimer"] = kDisclaimer;
  if (o.timing)
    r.report["elapsed_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                                 std::chrono::steady_clock::now() - started)
                                 .count();
  if (o.json_out) out << r.report.dump(2) << '\n';
  else render_text(r.report, out, 0);
  return r.status;
}

int cli_main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cli_main(args, std::cout, std::cerr);
}

}  // namespace infoflow
