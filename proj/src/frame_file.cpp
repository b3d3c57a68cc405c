#include "infoflow/frame_file.hpp"

#include <algorithm>
#include <sstream>

namespace infoflow {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& msg)
    : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
      line_(line),
      column_(column) {}

namespace {

struct Token {
  std::string text;
  std::size_t column;  // 1-based
};

struct Line {
  std::size_t number;
  std::vector<Token> tokens;
  std::string raw;
};

// Whitespace-separated tokens, '#' to end of line is a comment.  A '{'
// starts a run token that extends to the matching '}'.
std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string raw(text.substr(pos, nl - pos));
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    ++number;
    Line line{number, {}, raw};
    std::size_t i = 0;
    while (i < raw.size()) {
      char c = raw[i];
      if (c == '#') break;
      if (c == ' ' || c == '\t') {
        ++i;
        continue;
      }
      std::size_t start = i;
      if (c == '{') {
        int depth = 0;
        for (; i < raw.size(); ++i) {
          if (raw[i] == '{') ++depth;
          if (raw[i] == '}' && --depth == 0) break;
        }
        if (i == raw.size()) throw ParseError(number, start + 1, "unterminated run");
        ++i;
      } else {
        while (i < raw.size() && raw[i] != ' ' && raw[i] != '\t' && raw[i] != '#') ++i;
      }
      line.tokens.push_back({raw.substr(start, i - start), start + 1});
    }
    if (!line.tokens.empty()) out.push_back(std::move(line));
    if (nl == text.size()) break;
    pos = nl + 1;
  }
  return out;
}

[[noreturn]] void fail(const Line& l, const Token& t, const std::string& msg) {
  throw ParseError(l.number, t.column, msg);
}

[[noreturn]] void fail_end(const Line& l, const std::string& msg) {
  throw ParseError(l.number, l.raw.size() + 1, msg);
}

const std::string kReserved = "{}[]|:,;=";

void check_name(const Line& l, const Token& t, const std::string& what,
                std::string_view reserved = kReserved) {
  if (t.text.find_first_of(reserved) != std::string::npos)
    fail(l, t, what + " '" + t.text + "' contains a reserved character");
}

void arity(const Line& l, std::size_t n, const std::string& usage) {
  if (l.tokens.size() < n) fail_end(l, "expected " + usage);
  if (l.tokens.size() > n) fail(l, l.tokens[n], "unexpected token; expected " + usage);
}

Label parse_label(const Line& l, const Token& t) {
  auto colon = t.text.find(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 == t.text.size())
    fail(l, t, "expected a label channel:value, got '" + t.text + "'");
  return {t.text.substr(0, colon), t.text.substr(colon + 1)};
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::string run_token(const Line& l, const Token& t) {
  if (t.text.front() != '{') fail(l, t, "expected a run in braces");
  try {
    return serialize(parse_run(t.text));
  } catch (const Error& e) {
    fail(l, t, std::string("bad run: ") + e.what());
  }
}

BlurSpec parse_blur_header(const Line& l, const std::string& kind) {
  auto options = [&](const std::set<std::string>& allowed) {
    std::map<std::string, std::string> out;
    for (std::size_t i = 3; i < l.tokens.size(); ++i) {
      const auto& t = l.tokens[i];
      auto eq = t.text.find('=');
      if (eq == std::string::npos) fail(l, t, "expected key=value");
      std::string k = t.text.substr(0, eq);
      if (!allowed.count(k)) fail(l, t, "unknown key '" + k + "' for " + kind + " blur");
      if (!out.emplace(k, t.text.substr(eq + 1)).second) fail(l, t, "duplicate key '" + k + "'");
    }
    return out;
  };
  auto list = [&](const std::map<std::string, std::string>& o, const std::string& k) {
    auto it = o.find(k);
    std::vector<std::string> out;
    if (it == o.end() || it->second.empty()) return out;
    return split(it->second, ',');
  };
  if (kind == "all" || kind == "identity") {
    options({});
    if (kind == "all") return AllBlur{};
    return IdentityBlur{};
  }
  if (kind == "selection") {
    auto o = options({"values", "channels", "received_by", "sent_by"});
    SelectionBlur b;
    for (auto& v : list(o, "values")) b.select.values.insert(v);
    for (auto& v : list(o, "channels")) b.select.channels.insert(v);
    for (auto& v : list(o, "received_by")) b.select.received_by.insert(v);
    for (auto& v : list(o, "sent_by")) b.select.sent_by.insert(v);
    return b;
  }
  if (kind == "permutation") {
    auto o = options({"voters", "fixed", "blocks"});
    PermutationBlur b;
    b.voters = list(o, "voters");
    if (b.voters.empty()) fail_end(l, "permutation blur needs voters=...");
    for (auto& v : list(o, "fixed")) b.fixed.insert(v);
    auto it = o.find("blocks");
    if (it != o.end())
      for (const auto& block : split(it->second, ';')) b.blocks.push_back(split(block, ','));
    return b;
  }
  if (kind == "table") {
    options({});
    return TableBlur{};
  }
  if (kind == "partition") {
    options({});
    return PartitionBlur{};
  }
  fail(l, l.tokens[2], "unknown blur kind '" + kind + "'");
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

template <typename Set>
std::string join_set(const Set& s, const std::string& sep) {
  return join(std::vector<std::string>(s.begin(), s.end()), sep);
}

}  // namespace

Scenario parse_frame_file(std::string_view text, bool validate) {
  auto lines = tokenize(text);
  std::vector<DataValue> data;
  std::vector<Location> locs;
  std::vector<Channel> chans;
  Scenario doc;
  std::set<std::string> loc_ids;

  for (std::size_t i = 0; i < lines.size(); ++i) {
    const Line& l = lines[i];
    const std::string& key = l.tokens[0].text;
    // Collects the body lines of a block up to "end".
    auto body = [&]() {
      std::vector<const Line*> out;
      for (++i; i < lines.size(); ++i) {
        if (lines[i].tokens[0].text == "end") {
          arity(lines[i], 1, "'end'");
          return out;
        }
        out.push_back(&lines[i]);
      }
      fail_end(l, "block is missing 'end'");
    };

    if (key == "data") {
      for (std::size_t k = 1; k < l.tokens.size(); ++k) {
        check_name(l, l.tokens[k], "value", "{}[]|,;=");
        if (std::find(data.begin(), data.end(), l.tokens[k].text) != data.end())
          fail(l, l.tokens[k], "duplicate value '" + l.tokens[k].text + "'");
        data.push_back(l.tokens[k].text);
      }
    } else if (key == "channel") {
      arity(l, 4, "channel <id> <sender> <recipient>");
      for (std::size_t k = 1; k < 4; ++k) check_name(l, l.tokens[k], "identifier");
      chans.push_back({l.tokens[1].text, l.tokens[2].text, l.tokens[3].text});
    } else if (key == "location") {
      if (l.tokens.size() < 3) fail_end(l, "expected location <id> lts <initial> | explicit");
      check_name(l, l.tokens[1], "identifier");
      if (!loc_ids.insert(l.tokens[1].text).second)
        fail(l, l.tokens[1], "duplicate location '" + l.tokens[1].text + "'");
      const std::string& kind = l.tokens[2].text;
      if (kind == "lts") {
        arity(l, 4, "location <id> lts <initial>");
        Lts lts{l.tokens[3].text, {}};
        for (const Line* b : body()) {
          arity(*b, 3, "<from> <channel>:<value> <to>");
          lts.transitions.push_back(
              {b->tokens[0].text, parse_label(*b, b->tokens[1]), b->tokens[2].text});
        }
        locs.push_back({l.tokens[1].text, lts});
      } else if (kind == "explicit") {
        arity(l, 3, "location <id> explicit");
        ExplicitTraces tr;
        for (const Line* b : body()) {
          if (b->tokens[0].text != "trace") fail(*b, b->tokens[0], "expected 'trace'");
          Trace t;
          for (std::size_t k = 1; k < b->tokens.size(); ++k) t.push_back(parse_label(*b, b->tokens[k]));
          tr.traces.push_back(std::move(t));
        }
        locs.push_back({l.tokens[1].text, tr});
      } else {
        fail(l, l.tokens[2], "unknown behavior kind '" + kind + "'");
      }
    } else if (key == "set") {
      if (l.tokens.size() < 2) fail_end(l, "expected set <name> <channel>...");
      check_name(l, l.tokens[1], "set name");
      ChannelSet s;
      for (std::size_t k = 2; k < l.tokens.size(); ++k) s.insert(l.tokens[k].text);
      if (!doc.sets.emplace(l.tokens[1].text, s).second)
        fail(l, l.tokens[1], "duplicate set '" + l.tokens[1].text + "'");
    } else if (key == "blur") {
      if (l.tokens.size() < 3) fail_end(l, "expected blur <name> <kind> ...");
      check_name(l, l.tokens[1], "blur name");
      const std::string& name = l.tokens[1].text;
      if (doc.blurs.count(name)) fail(l, l.tokens[1], "duplicate blur '" + name + "'");
      BlurSpec b = parse_blur_header(l, l.tokens[2].text);
      if (auto* t = std::get_if<TableBlur>(&b)) {
        for (const Line* r : body()) {
          if (r->tokens[0].text != "map") fail(*r, r->tokens[0], "expected 'map'");
          if (r->tokens.size() < 2) fail_end(*r, "expected map <run> <run>...");
          std::string from = run_token(*r, r->tokens[1]);
          std::vector<std::string> to;
          for (std::size_t k = 2; k < r->tokens.size(); ++k) to.push_back(run_token(*r, r->tokens[k]));
          if (!t->table.emplace(from, to).second) fail(*r, r->tokens[1], "duplicate map entry");
        }
      } else if (std::holds_alternative<PartitionBlur>(b)) {
        std::vector<std::vector<std::string>> classes;
        for (const Line* r : body()) {
          if (r->tokens[0].text != "class") fail(*r, r->tokens[0], "expected 'class'");
          classes.emplace_back();
          for (std::size_t k = 1; k < r->tokens.size(); ++k)
            classes.back().push_back(run_token(*r, r->tokens[k]));
        }
        try {
          b = partition_from_classes(name, std::move(classes));
        } catch (const Error& e) {
          fail(l, l.tokens[1], e.what());
        }
      }
      doc.blurs.emplace(name, std::move(b));
    } else {
      fail(l, l.tokens[0], "unknown directive '" + key + "'");
    }
  }

  doc.frame = Frame(std::move(data), std::move(locs), std::move(chans));
  if (validate) require_valid(doc.frame);
  for (const auto& [name, s] : doc.sets)
    for (const auto& c : s)
      if (!doc.frame.find_channel(c)) throw Error("set '" + name + "' names unknown channel '" + c + "'");
  return doc;
}

std::string write_frame_file(const Scenario& doc) {
  std::ostringstream out;
  const Frame& f = doc.frame;
  out << "data";
  for (const auto& v : f.data()) out << ' ' << v;
  out << "\n\n";
  for (const auto& c : f.channels()) out << "channel " << c.id << ' ' << c.sender << ' ' << c.recipient << '\n';
  for (const auto& l : f.locations()) {
    out << '\n';
    if (const auto* lts = std::get_if<Lts>(&l.behavior)) {
      out << "location " << l.id << " lts " << lts->initial << '\n';
      for (const auto& t : lts->transitions)
        out << "  " << t.from << ' ' << t.label.channel << ':' << t.label.value << ' ' << t.to << '\n';
    } else {
      out << "location " << l.id << " explicit\n";
      for (const auto& t : std::get<ExplicitTraces>(l.behavior).traces) {
        out << "  trace";
        for (const auto& lab : t) out << ' ' << lab.channel << ':' << lab.value;
        out << '\n';
      }
    }
    out << "end\n";
  }
  if (!doc.sets.empty()) out << '\n';
  for (const auto& [name, s] : doc.sets) {
    out << "set " << name;
    for (const auto& c : s) out << ' ' << c;
    out << '\n';
  }
  if (!doc.blurs.empty()) out << '\n';
  for (const auto& [name, b] : doc.blurs) {
    out << "blur " << name << ' ' << blur_kind(b);
    if (const auto* s = std::get_if<SelectionBlur>(&b)) {
      const auto& p = s->select;
      if (!p.values.empty()) out << " values=" << join_set(p.values, ",");
      if (!p.channels.empty()) out << " channels=" << join_set(p.channels, ",");
      if (!p.received_by.empty()) out << " received_by=" << join_set(p.received_by, ",");
      if (!p.sent_by.empty()) out << " sent_by=" << join_set(p.sent_by, ",");
      out << '\n';
    } else if (const auto* p = std::get_if<PermutationBlur>(&b)) {
      out << " voters=" << join(p->voters, ",");
      if (!p->fixed.empty()) out << " fixed=" << join_set(p->fixed, ",");
      if (!p->blocks.empty()) {
        std::vector<std::string> bl;
        for (const auto& x : p->blocks) bl.push_back(join(x, ","));
        out << " blocks=" << join(bl, ";");
      }
      out << '\n';
    } else if (const auto* t = std::get_if<TableBlur>(&b)) {
      out << '\n';
      for (const auto& [from, to] : t->table) {
        out << "  map " << from;
        for (const auto& r : to) out << ' ' << r;
        out << '\n';
      }
      out << "end\n";
    } else if (const auto* p = std::get_if<PartitionBlur>(&b)) {
      if (p->classes.empty() && (p->key || p->equivalent))
        throw Error("blur '" + name + "' is defined by a function and has no file form");
      out << '\n';
      for (const auto& c : p->classes) out << "  class " << join(c, " ") << '\n';
      out << "end\n";
    } else {
      out << '\n';
    }
  }
  return out.str();
}

MachineSpec parse_machine_file(std::string_view text) {
  MachineSpec m;
  bool have_initial = false;
  for (const Line& l : tokenize(text)) {
    const std::string& key = l.tokens[0].text;
    auto rest = [&] {
      std::vector<std::string> out;
      for (std::size_t k = 1; k < l.tokens.size(); ++k) {
        check_name(l, l.tokens[k], "name");
        out.push_back(l.tokens[k].text);
      }
      return out;
    };
    if (key == "domains") {
      for (auto& d : rest()) m.domains.push_back(d);
    } else if (key == "influence") {
      arity(l, 3, "influence <from> <to>");
      m.influence.insert({l.tokens[1].text, l.tokens[2].text});
    } else if (key == "action") {
      arity(l, 3, "action <name> <domain>");
      auto r = rest();
      m.actions.push_back({r[0], r[1]});
    } else if (key == "outputs") {
      for (auto& o : rest()) m.outputs.push_back(o);
    } else if (key == "states") {
      for (auto& s : rest()) m.states.push_back(s);
    } else if (key == "initial") {
      arity(l, 2, "initial <state>");
      if (have_initial) fail(l, l.tokens[0], "initial state given twice");
      m.initial = rest()[0];
      have_initial = true;
    } else if (key == "trans") {
      arity(l, 4, "trans <from> <action> <to>");
      auto r = rest();
      m.transitions.push_back({r[0], r[1], r[2]});
    } else if (key == "obs") {
      arity(l, 4, "obs <state> <domain> <output>");
      auto r = rest();
      if (!m.obs.emplace(std::make_pair(r[0], r[1]), r[2]).second)
        fail(l, l.tokens[1], "obs given twice");
    } else {
      fail(l, l.tokens[0], "unknown directive '" + key + "'");
    }
  }
  // Influence is reflexive by definition; files need not say so.
  for (const auto& d : m.domains) m.influence.insert({d, d});
  auto problems = validate_machine(m);
  if (!problems.empty()) throw Error("invalid machine: " + problems.front());
  return m;
}

std::string write_machine_file(const MachineSpec& m) {
  std::ostringstream out;
  out << "domains " << join(m.domains, " ") << '\n';
  for (const auto& [a, b] : m.influence)
    if (a != b) out << "influence " << a << ' ' << b << '\n';
  for (const auto& a : m.actions) out << "action " << a.name << ' ' << a.domain << '\n';
  out << "outputs " << join(m.outputs, " ") << '\n';
  out << "states " << join(m.states, " ") << '\n';
  out << "initial " << m.initial << '\n';
  for (const auto& t : m.transitions) out << "trans " << t.from << ' ' << t.action << ' ' << t.to << '\n';
  for (const auto& [k, o] : m.obs) out << "obs " << k.first << ' ' << k.second << ' ' << o << '\n';
  return out.str();
}

}  // namespace infoflow
