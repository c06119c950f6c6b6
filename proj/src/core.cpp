#include "smbribe/core.hpp"

#include <algorithm>
#include <set>

namespace smbribe {

const char *error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::Syntax: return "syntax";
    case ErrorCode::UnknownName: return "unknown-name";
    case ErrorCode::DuplicateEntry: return "duplicate-entry";
    case ErrorCode::NonMutual: return "non-mutual";
    case ErrorCode::UndeclaredAddable: return "undeclared-addable";
    case ErrorCode::InvalidAction: return "invalid-action";
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::NotStable: return "not-stable";
    case ErrorCode::CapExceeded: return "cap-exceeded";
    case ErrorCode::Unsupported: return "unsupported";
    case ErrorCode::Internal: return "internal";
  }
  return "unknown";
}

std::vector<std::string> default_labels(Side s, int count) {
  std::vector<std::string> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) out.push_back((s == Side::Man ? "m" : "w") + std::to_string(i + 1));
  return out;
}

Instance::Instance(int men, int women)
    : men_count(men),
      women_count(women),
      men_prefs(men),
      women_prefs(women),
      men_addable(men, false),
      women_addable(women, false),
      men_labels(default_labels(Side::Man, men)),
      women_labels(default_labels(Side::Woman, women)) {}

const std::vector<int> &Instance::prefs(AgentRef a) const {
  return a.side == Side::Man ? men_prefs[a.index] : women_prefs[a.index];
}

std::vector<int> &Instance::prefs(AgentRef a) {
  return a.side == Side::Man ? men_prefs[a.index] : women_prefs[a.index];
}

bool Instance::addable(AgentRef a) const {
  return a.side == Side::Man ? men_addable[a.index] : women_addable[a.index];
}

const std::string &Instance::label(AgentRef a) const {
  return a.side == Side::Man ? men_labels[a.index] : women_labels[a.index];
}

void validate(const Instance &inst) {
  auto fail = [](const std::string &msg) { throw Error(ErrorCode::InvalidArgument, msg); };
  if (inst.men_count < 0 || inst.women_count < 0) fail("negative agent count");
  if (static_cast<int>(inst.men_prefs.size()) != inst.men_count ||
      static_cast<int>(inst.women_prefs.size()) != inst.women_count)
    fail("preference table size mismatch");
  if (static_cast<int>(inst.men_addable.size()) != inst.men_count ||
      static_cast<int>(inst.women_addable.size()) != inst.women_count)
    fail("addable table size mismatch");
  if (static_cast<int>(inst.men_labels.size()) != inst.men_count ||
      static_cast<int>(inst.women_labels.size()) != inst.women_count)
    fail("label table size mismatch");
  RankTable ranks(inst);
  for (Side s : {Side::Man, Side::Woman}) {
    int opposite = inst.count(other(s));
    for (int i = 0; i < inst.count(s); ++i) {
      AgentRef a{s, i};
      std::vector<bool> seen(opposite, false);
      for (int b : inst.prefs(a)) {
        if (b < 0 || b >= opposite) fail("preference of " + inst.label(a) + " refers outside the other side");
        if (seen[b]) fail("duplicate entry in the list of " + inst.label(a));
        seen[b] = true;
        if (ranks.of(AgentRef{other(s), b}, i) < 0)
          fail("non-mutual acceptability between " + inst.label(a) + " and " + inst.label({other(s), b}));
      }
    }
  }
}

bool is_complete(const Instance &inst) {
  if (inst.men_count != inst.women_count) return false;
  for (const auto &l : inst.men_prefs)
    if (static_cast<int>(l.size()) != inst.women_count) return false;
  for (const auto &l : inst.women_prefs)
    if (static_cast<int>(l.size()) != inst.men_count) return false;
  return true;
}

PresenceMask PresenceMask::initial(const Instance &inst) {
  PresenceMask mask;
  mask.men.resize(inst.men_count);
  mask.women.resize(inst.women_count);
  for (int i = 0; i < inst.men_count; ++i) mask.men[i] = !inst.men_addable[i];
  for (int i = 0; i < inst.women_count; ++i) mask.women[i] = !inst.women_addable[i];
  return mask;
}

PresenceMask PresenceMask::all(const Instance &inst) {
  PresenceMask mask;
  mask.men.assign(inst.men_count, true);
  mask.women.assign(inst.women_count, true);
  return mask;
}

void PresenceMask::set(AgentRef a, bool value) {
  if (a.side == Side::Man)
    men[a.index] = value;
  else
    women[a.index] = value;
}

Matching Matching::from_pairs(int men, int women, const std::vector<std::pair<int, int>> &pairs) {
  Matching m(men, women);
  for (auto [a, b] : pairs) m.add(a, b);
  return m;
}

void Matching::add(int m, int w) {
  if (m < 0 || m >= static_cast<int>(wife.size()) || w < 0 || w >= static_cast<int>(husband.size()))
    throw Error(ErrorCode::InvalidArgument, "matching pair out of range");
  if (wife[m] != -1 || husband[w] != -1) throw Error(ErrorCode::InvalidArgument, "agent matched twice");
  wife[m] = w;
  husband[w] = m;
}

void Matching::remove_agent(AgentRef a) {
  int p = partner(a);
  if (p < 0) return;
  if (a.side == Side::Man) {
    wife[a.index] = -1;
    husband[p] = -1;
  } else {
    husband[a.index] = -1;
    wife[p] = -1;
  }
}

int Matching::size() const {
  return static_cast<int>(std::count_if(wife.begin(), wife.end(), [](int w) { return w >= 0; }));
}

std::vector<std::pair<int, int>> Matching::pairs() const {
  std::vector<std::pair<int, int>> out;
  for (int m = 0; m < static_cast<int>(wife.size()); ++m)
    if (wife[m] >= 0) out.emplace_back(m, wife[m]);
  return out;
}

Matching Matching::restricted(const PresenceMask &mask) const {
  Matching out(static_cast<int>(wife.size()), static_cast<int>(husband.size()));
  for (auto [m, w] : pairs())
    if (mask.men[m] && mask.women[w]) out.add(m, w);
  return out;
}

bool Matching::is_perfect() const {
  return std::all_of(wife.begin(), wife.end(), [](int w) { return w >= 0; }) &&
         std::all_of(husband.begin(), husband.end(), [](int m) { return m >= 0; });
}

void validate(const Instance &inst, const Matching &m) {
  if (static_cast<int>(m.wife.size()) != inst.men_count || static_cast<int>(m.husband.size()) != inst.women_count)
    throw Error(ErrorCode::InvalidArgument, "matching size does not fit the instance");
  RankTable ranks(inst);
  for (auto [a, b] : m.pairs()) {
    if (m.husband[b] != a) throw Error(ErrorCode::InvalidArgument, "inconsistent matching");
    if (ranks.man(a, b) < 0)
      throw Error(ErrorCode::NonMutual,
                  "pair " + inst.men_labels[a] + " " + inst.women_labels[b] + " is not mutually acceptable");
  }
}

RankTable::RankTable(const Instance &inst)
    : men_count_(inst.men_count),
      women_count_(inst.women_count),
      men_(static_cast<std::size_t>(inst.men_count) * inst.women_count, -1),
      women_(static_cast<std::size_t>(inst.women_count) * inst.men_count, -1) {
  for (int m = 0; m < inst.men_count; ++m)
    for (int i = 0; i < static_cast<int>(inst.men_prefs[m].size()); ++i)
      men_[static_cast<std::size_t>(m) * women_count_ + inst.men_prefs[m][i]] = i;
  for (int w = 0; w < inst.women_count; ++w)
    for (int i = 0; i < static_cast<int>(inst.women_prefs[w].size()); ++i)
      women_[static_cast<std::size_t>(w) * men_count_ + inst.women_prefs[w][i]] = i;
}

std::optional<int> rank(const Instance &inst, AgentRef a, AgentRef b) {
  if (a.side == b.side) throw Error(ErrorCode::InvalidArgument, "rank query between agents of the same side");
  const auto &list = inst.prefs(a);
  auto it = std::find(list.begin(), list.end(), b.index);
  if (it == list.end()) return std::nullopt;
  return static_cast<int>(it - list.begin()) + 1;
}

namespace {

void check_agent(const Instance &inst, AgentRef a) {
  if (a.index < 0 || a.index >= inst.count(a.side)) throw Error(ErrorCode::InvalidAction, "agent index out of range");
}

void erase_value(std::vector<int> &list, int value) {
  list.erase(std::remove(list.begin(), list.end(), value), list.end());
}

}  // namespace

void apply_action_inplace(State &state, const Action &act) {
  Instance &inst = state.inst;
  PresenceMask &mask = state.mask;
  std::visit(
      [&](const auto &a) {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, SwapAction>) {
          check_agent(inst, a.agent);
          auto &list = inst.prefs(a.agent);
          if (a.position < 0 || a.position + 1 >= static_cast<int>(list.size()))
            throw Error(ErrorCode::InvalidAction, "swap position " + std::to_string(a.position) +
                                                      " invalid for the list of " + inst.label(a.agent));
          std::swap(list[a.position], list[a.position + 1]);
        } else if constexpr (std::is_same_v<T, ReorderAction>) {
          check_agent(inst, a.agent);
          auto &list = inst.prefs(a.agent);
          std::vector<int> lhs = list, rhs = a.new_list;
          std::sort(lhs.begin(), lhs.end());
          std::sort(rhs.begin(), rhs.end());
          if (lhs != rhs)
            throw Error(ErrorCode::InvalidAction, "reorder of " + inst.label(a.agent) + " is not a permutation");
          list = a.new_list;
        } else if constexpr (std::is_same_v<T, AccDeleteAction>) {
          check_agent(inst, man(a.man));
          check_agent(inst, woman(a.woman));
          auto &ml = inst.men_prefs[a.man];
          if (std::find(ml.begin(), ml.end(), a.woman) == ml.end())
            throw Error(ErrorCode::InvalidAction, "pair " + inst.men_labels[a.man] + " " +
                                                      inst.women_labels[a.woman] + " is not acceptable");
          erase_value(ml, a.woman);
          erase_value(inst.women_prefs[a.woman], a.man);
        } else if constexpr (std::is_same_v<T, DeleteAgentAction>) {
          check_agent(inst, a.agent);
          if (!mask.present(a.agent))
            throw Error(ErrorCode::InvalidAction, "cannot delete absent agent " + inst.label(a.agent));
          mask.set(a.agent, false);
        } else {
          check_agent(inst, a.agent);
          if (mask.present(a.agent))
            throw Error(ErrorCode::InvalidAction, "cannot add present agent " + inst.label(a.agent));
          if (!inst.addable(a.agent))
            throw Error(ErrorCode::InvalidAction, "agent " + inst.label(a.agent) + " is not addable");
          mask.set(a.agent, true);
        }
      },
      act);
}

State apply_action(const Instance &inst, const PresenceMask &mask, const Action &act) {
  State s{inst, mask};
  apply_action_inplace(s, act);
  return s;
}

State apply_actions(const Instance &inst, const PresenceMask &mask, const std::vector<Action> &acts) {
  State s{inst, mask};
  for (const auto &a : acts) apply_action_inplace(s, a);
  return s;
}

}  // namespace smbribe
