#include <algorithm>
#include <map>
#include <regex>
#include <sstream>

#include "smbribe/core.hpp"

namespace smbribe {

namespace {

struct Token {
  std::string text;
  int line = 0;
  int column = 0;
};

// Splits one line into tokens; ':' is always a token of its own and '#' starts a comment.
std::vector<Token> tokenize(const std::string &line, int line_no) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (c == '#') break;
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      continue;
    }
    if (c == ':') {
      out.push_back({":", line_no, static_cast<int>(i) + 1});
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r' && line[j] != ':' &&
           line[j] != '#')
      ++j;
    out.push_back({line.substr(i, j - i), line_no, static_cast<int>(i) + 1});
    i = j;
  }
  return out;
}

std::vector<std::vector<Token>> tokenize_lines(const std::string &text) {
  std::vector<std::vector<Token>> lines;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto toks = tokenize(line, line_no);
    if (!toks.empty()) lines.push_back(std::move(toks));
  }
  return lines;
}

[[noreturn]] void fail_at(ErrorCode code, const Token &t, const std::string &msg) {
  throw Error(code, "line " + std::to_string(t.line) + ", column " + std::to_string(t.column) + ": " + msg);
}

bool valid_name(const std::string &s) {
  static const std::regex re("[A-Za-z0-9_.-]+");
  return std::regex_match(s, re);
}

void check_name(const Token &t) {
  if (!valid_name(t.text)) fail_at(ErrorCode::Syntax, t, "invalid name '" + t.text + "'");
}

// Matches `<keyword> :` at the start of a token line.
bool keyword_colon(const std::vector<Token> &toks, const std::string &kw) {
  return toks.size() >= 2 && toks[0].text == kw && toks[1].text == ":";
}

void check_header(const std::vector<std::vector<Token>> &lines, std::size_t &pos, const std::string &magic) {
  if (pos < lines.size() && lines[pos][0].text == magic) {
    const auto &toks = lines[pos];
    if (toks.size() != 2 || toks[1].text != "1") fail_at(ErrorCode::Syntax, toks[0], "expected header '" + magic + " 1'");
    ++pos;
  }
}

class NameTable {
 public:
  explicit NameTable(const Instance &inst) {
    for (Side s : {Side::Man, Side::Woman})
      for (int i = 0; i < inst.count(s); ++i) names_[inst.label(AgentRef{s, i})] = AgentRef{s, i};
  }
  AgentRef lookup(const Token &t) const {
    auto it = names_.find(t.text);
    if (it == names_.end()) fail_at(ErrorCode::UnknownName, t, "unknown agent '" + t.text + "'");
    return it->second;
  }
  AgentRef lookup(const Token &t, Side side) const {
    AgentRef a = lookup(t);
    if (a.side != side)
      fail_at(ErrorCode::InvalidArgument, t, "'" + t.text + "' is not a " + (side == Side::Man ? "man" : "woman"));
    return a;
  }

 private:
  std::map<std::string, AgentRef> names_;
};

int parse_int(const Token &t) {
  if (t.text.empty() || !std::all_of(t.text.begin(), t.text.end(), [](char c) { return c >= '0' && c <= '9'; }) ||
      t.text.size() > 9)
    fail_at(ErrorCode::Syntax, t, "expected a nonnegative integer, got '" + t.text + "'");
  return std::stoi(t.text);
}

}  // namespace

std::optional<AgentRef> find_agent(const Instance &inst, const std::string &name) {
  for (Side s : {Side::Man, Side::Woman})
    for (int i = 0; i < inst.count(s); ++i)
      if (inst.label(AgentRef{s, i}) == name) return AgentRef{s, i};
  return std::nullopt;
}

Instance parse_instance(const std::string &text) {
  auto lines = tokenize_lines(text);
  std::size_t pos = 0;
  check_header(lines, pos, "smi");

  std::vector<std::string> men, women;
  bool have_men = false, have_women = false;
  std::map<std::string, AgentRef> names;
  Instance inst;
  std::vector<bool> pref_seen_men, pref_seen_women;
  bool built = false;

  auto declare = [&](const std::vector<Token> &toks, Side side, std::vector<std::string> &out) {
    for (std::size_t i = 2; i < toks.size(); ++i) {
      check_name(toks[i]);
      if (!names.emplace(toks[i].text, AgentRef{side, static_cast<int>(out.size())}).second)
        fail_at(ErrorCode::DuplicateEntry, toks[i], "agent '" + toks[i].text + "' declared twice");
      out.push_back(toks[i].text);
    }
  };
  auto ensure_built = [&](const Token &t) {
    if (!have_men || !have_women) fail_at(ErrorCode::Syntax, t, "'men:' and 'women:' must be declared first");
    if (!built) {
      built = true;
      inst = Instance(static_cast<int>(men.size()), static_cast<int>(women.size()));
      inst.men_labels = men;
      inst.women_labels = women;
      pref_seen_men.assign(men.size(), false);
      pref_seen_women.assign(women.size(), false);
    }
  };

  for (; pos < lines.size(); ++pos) {
    const auto &toks = lines[pos];
    const Token &head = toks[0];
    if (head.text == "smi") fail_at(ErrorCode::Syntax, head, "header must come first");
    if (keyword_colon(toks, "men")) {
      if (have_men) fail_at(ErrorCode::DuplicateEntry, head, "'men:' declared twice");
      if (built) fail_at(ErrorCode::Syntax, head, "declarations must precede other lines");
      declare(toks, Side::Man, men);
      have_men = true;
    } else if (keyword_colon(toks, "women")) {
      if (have_women) fail_at(ErrorCode::DuplicateEntry, head, "'women:' declared twice");
      if (built) fail_at(ErrorCode::Syntax, head, "declarations must precede other lines");
      declare(toks, Side::Woman, women);
      have_women = true;
    } else if (keyword_colon(toks, "addable-men") || keyword_colon(toks, "addable-women")) {
      ensure_built(head);
      Side side = head.text == "addable-men" ? Side::Man : Side::Woman;
      for (std::size_t i = 2; i < toks.size(); ++i) {
        check_name(toks[i]);
        auto it = names.find(toks[i].text);
        if (it == names.end() || it->second.side != side)
          fail_at(ErrorCode::UndeclaredAddable, toks[i],
                  "addable flag on undeclared " + std::string(side == Side::Man ? "man" : "woman") + " '" +
                      toks[i].text + "'");
        auto &flags = side == Side::Man ? inst.men_addable : inst.women_addable;
        if (flags[it->second.index]) fail_at(ErrorCode::DuplicateEntry, toks[i], "addable flag repeated");
        flags[it->second.index] = true;
      }
    } else if (head.text == "pref") {
      ensure_built(head);
      if (toks.size() < 3 || toks[2].text != ":") fail_at(ErrorCode::Syntax, head, "expected 'pref <name>: <names...>'");
      check_name(toks[1]);
      auto it = names.find(toks[1].text);
      if (it == names.end()) fail_at(ErrorCode::UnknownName, toks[1], "unknown agent '" + toks[1].text + "'");
      AgentRef a = it->second;
      auto &seen = a.side == Side::Man ? pref_seen_men : pref_seen_women;
      if (seen[a.index]) fail_at(ErrorCode::DuplicateEntry, toks[1], "second preference line for '" + toks[1].text + "'");
      seen[a.index] = true;
      auto &list = inst.prefs(a);
      std::vector<bool> in_list(inst.count(other(a.side)), false);
      for (std::size_t i = 3; i < toks.size(); ++i) {
        check_name(toks[i]);
        auto jt = names.find(toks[i].text);
        if (jt == names.end()) fail_at(ErrorCode::UnknownName, toks[i], "unknown agent '" + toks[i].text + "'");
        if (jt->second.side == a.side) fail_at(ErrorCode::InvalidArgument, toks[i], "'" + toks[i].text + "' is on the same side");
        if (in_list[jt->second.index])
          fail_at(ErrorCode::DuplicateEntry, toks[i], "duplicate entry '" + toks[i].text + "'");
        in_list[jt->second.index] = true;
        list.push_back(jt->second.index);
      }
    } else {
      fail_at(ErrorCode::Syntax, head, "unexpected token '" + head.text + "'");
    }
  }
  if (!have_men || !have_women) throw Error(ErrorCode::Syntax, "missing 'men:' or 'women:' declaration");
  if (!built) {
    Token t{"", 1, 1};
    ensure_built(t);
  }
  RankTable ranks(inst);
  for (int m = 0; m < inst.men_count; ++m)
    for (int w : inst.men_prefs[m])
      if (ranks.woman(w, m) < 0)
        throw Error(ErrorCode::NonMutual,
                    "non-mutual acceptability: " + inst.men_labels[m] + " lists " + inst.women_labels[w] + " but not vice versa");
  for (int w = 0; w < inst.women_count; ++w)
    for (int m : inst.women_prefs[w])
      if (ranks.man(m, w) < 0)
        throw Error(ErrorCode::NonMutual,
                    "non-mutual acceptability: " + inst.women_labels[w] + " lists " + inst.men_labels[m] + " but not vice versa");
  return inst;
}

std::string serialize_instance(const Instance &inst) {
  std::ostringstream out;
  auto names = [&](Side s, auto pred) {
    std::string line;
    for (int i = 0; i < inst.count(s); ++i)
      if (pred(i)) line += " " + inst.label(AgentRef{s, i});
    return line;
  };
  out << "smi 1\n";
  out << "men:" << names(Side::Man, [](int) { return true; }) << "\n";
  out << "women:" << names(Side::Woman, [](int) { return true; }) << "\n";
  if (std::find(inst.men_addable.begin(), inst.men_addable.end(), true) != inst.men_addable.end())
    out << "addable-men:" << names(Side::Man, [&](int i) { return inst.men_addable[i]; }) << "\n";
  if (std::find(inst.women_addable.begin(), inst.women_addable.end(), true) != inst.women_addable.end())
    out << "addable-women:" << names(Side::Woman, [&](int i) { return inst.women_addable[i]; }) << "\n";
  for (Side s : {Side::Man, Side::Woman})
    for (int i = 0; i < inst.count(s); ++i) {
      AgentRef a{s, i};
      out << "pref " << inst.label(a) << ":";
      for (int b : inst.prefs(a)) out << " " << inst.label(AgentRef{other(s), b});
      out << "\n";
    }
  return out.str();
}

Matching parse_matching(const Instance &inst, const std::string &text) {
  auto lines = tokenize_lines(text);
  std::size_t pos = 0;
  check_header(lines, pos, "smm");
  NameTable names(inst);
  RankTable ranks(inst);
  Matching m(inst.men_count, inst.women_count);
  for (; pos < lines.size(); ++pos) {
    const auto &toks = lines[pos];
    if (toks[0].text != "pair" || toks.size() != 3) fail_at(ErrorCode::Syntax, toks[0], "expected 'pair <man> <woman>'");
    AgentRef a = names.lookup(toks[1], Side::Man);
    AgentRef b = names.lookup(toks[2], Side::Woman);
    if (m.wife[a.index] >= 0) fail_at(ErrorCode::DuplicateEntry, toks[1], "agent '" + toks[1].text + "' matched twice");
    if (m.husband[b.index] >= 0) fail_at(ErrorCode::DuplicateEntry, toks[2], "agent '" + toks[2].text + "' matched twice");
    if (ranks.man(a.index, b.index) < 0)
      fail_at(ErrorCode::NonMutual, toks[0], "pair " + toks[1].text + " " + toks[2].text + " is not acceptable");
    m.add(a.index, b.index);
  }
  return m;
}

std::string serialize_matching(const Instance &inst, const Matching &m) {
  std::ostringstream out;
  out << "smm 1\n";
  for (auto [a, b] : m.pairs()) out << "pair " << inst.men_labels[a] << " " << inst.women_labels[b] << "\n";
  return out.str();
}

std::vector<Action> parse_actions(const Instance &inst, const std::string &text) {
  auto lines = tokenize_lines(text);
  std::size_t pos = 0;
  check_header(lines, pos, "sma");
  NameTable names(inst);
  std::vector<Action> out;
  for (; pos < lines.size(); ++pos) {
    const auto &toks = lines[pos];
    const std::string &kind = toks[0].text;
    if (kind == "swap" && toks.size() == 3) {
      out.push_back(SwapAction{names.lookup(toks[1]), parse_int(toks[2])});
    } else if (kind == "reorder" && toks.size() >= 3 && toks[2].text == ":") {
      AgentRef a = names.lookup(toks[1]);
      std::vector<int> list;
      for (std::size_t i = 3; i < toks.size(); ++i) list.push_back(names.lookup(toks[i], other(a.side)).index);
      out.push_back(ReorderAction{a, std::move(list)});
    } else if (kind == "accdel" && toks.size() == 3) {
      out.push_back(AccDeleteAction{names.lookup(toks[1], Side::Man).index, names.lookup(toks[2], Side::Woman).index});
    } else if (kind == "del" && toks.size() == 2) {
      out.push_back(DeleteAgentAction{names.lookup(toks[1])});
    } else if (kind == "add" && toks.size() == 2) {
      out.push_back(AddAgentAction{names.lookup(toks[1])});
    } else {
      fail_at(ErrorCode::Syntax, toks[0], "malformed action line");
    }
  }
  return out;
}

std::string serialize_action(const Instance &inst, const Action &act) {
  return std::visit(
      [&](const auto &a) -> std::string {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, SwapAction>) {
          return "swap " + inst.label(a.agent) + " " + std::to_string(a.position);
        } else if constexpr (std::is_same_v<T, ReorderAction>) {
          std::string s = "reorder " + inst.label(a.agent) + ":";
          for (int b : a.new_list) s += " " + inst.label(AgentRef{other(a.agent.side), b});
          return s;
        } else if constexpr (std::is_same_v<T, AccDeleteAction>) {
          return "accdel " + inst.men_labels[a.man] + " " + inst.women_labels[a.woman];
        } else if constexpr (std::is_same_v<T, DeleteAgentAction>) {
          return "del " + inst.label(a.agent);
        } else {
          return "add " + inst.label(a.agent);
        }
      },
      act);
}

std::string serialize_actions(const Instance &inst, const std::vector<Action> &acts) {
  std::string out;
  for (const auto &a : acts) out += serialize_action(inst, a) + "\n";
  return out;
}

}  // namespace smbribe
