#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace smbribe {

enum class ErrorCode {
  Syntax,
  UnknownName,
  DuplicateEntry,
  NonMutual,
  UndeclaredAddable,
  InvalidAction,
  InvalidArgument,
  NotStable,
  CapExceeded,
  Unsupported,
  Internal,
};

const char *error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string &what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

enum class Side : std::uint8_t { Man, Woman };

inline Side other(Side s) { return s == Side::Man ? Side::Woman : Side::Man; }

struct AgentRef {
  Side side = Side::Man;
  int index = 0;

  auto operator<=>(const AgentRef &) const = default;
};

inline AgentRef man(int i) { return {Side::Man, i}; }
inline AgentRef woman(int i) { return {Side::Woman, i}; }

// Preference lists hold opposite-side indices, most preferred first.
struct Instance {
  int men_count = 0;
  int women_count = 0;
  std::vector<std::vector<int>> men_prefs;
  std::vector<std::vector<int>> women_prefs;
  std::vector<bool> men_addable;
  std::vector<bool> women_addable;
  std::vector<std::string> men_labels;
  std::vector<std::string> women_labels;

  Instance() = default;
  Instance(int men, int women);

  int count(Side s) const { return s == Side::Man ? men_count : women_count; }
  const std::vector<int> &prefs(AgentRef a) const;
  std::vector<int> &prefs(AgentRef a);
  bool addable(AgentRef a) const;
  const std::string &label(AgentRef a) const;

  bool operator==(const Instance &) const = default;
};

// Throws Error(InvalidArgument) if an invariant is broken.
void validate(const Instance &inst);
bool is_complete(const Instance &inst);
std::vector<std::string> default_labels(Side s, int count);

struct PresenceMask {
  std::vector<bool> men;
  std::vector<bool> women;

  // Original agents present, addable agents absent.
  static PresenceMask initial(const Instance &inst);
  static PresenceMask all(const Instance &inst);

  bool present(AgentRef a) const { return a.side == Side::Man ? men[a.index] : women[a.index]; }
  void set(AgentRef a, bool value);

  bool operator==(const PresenceMask &) const = default;
};

// Partner arrays; -1 means unassigned.
struct Matching {
  std::vector<int> wife;
  std::vector<int> husband;

  Matching() = default;
  Matching(int men, int women) : wife(men, -1), husband(women, -1) {}
  static Matching from_pairs(int men, int women, const std::vector<std::pair<int, int>> &pairs);

  int partner(AgentRef a) const { return a.side == Side::Man ? wife[a.index] : husband[a.index]; }
  void add(int m, int w);
  void remove_agent(AgentRef a);
  bool contains(int m, int w) const { return wife[m] == w; }
  int size() const;
  std::vector<std::pair<int, int>> pairs() const;
  // Pairs whose both endpoints are present.
  Matching restricted(const PresenceMask &mask) const;
  bool is_perfect() const;

  bool operator==(const Matching &) const = default;
};

void validate(const Instance &inst, const Matching &m);

// Rank lookup table: 0-based position, -1 when not acceptable.
class RankTable {
 public:
  explicit RankTable(const Instance &inst);
  int man(int m, int w) const { return men_[static_cast<std::size_t>(m) * women_count_ + w]; }
  int woman(int w, int m) const { return women_[static_cast<std::size_t>(w) * men_count_ + m]; }
  int of(AgentRef a, int b) const { return a.side == Side::Man ? man(a.index, b) : woman(a.index, b); }

 private:
  int men_count_;
  int women_count_;
  std::vector<int> men_;
  std::vector<int> women_;
};

// 1-based rank of b in a's list, nullopt if b is not acceptable to a.
std::optional<int> rank(const Instance &inst, AgentRef a, AgentRef b);

struct SwapAction {
  AgentRef agent;
  int position = 0;
  bool operator==(const SwapAction &) const = default;
};
struct ReorderAction {
  AgentRef agent;
  std::vector<int> new_list;
  bool operator==(const ReorderAction &) const = default;
};
struct AccDeleteAction {
  int man = 0;
  int woman = 0;
  bool operator==(const AccDeleteAction &) const = default;
};
struct DeleteAgentAction {
  AgentRef agent;
  bool operator==(const DeleteAgentAction &) const = default;
};
struct AddAgentAction {
  AgentRef agent;
  bool operator==(const AddAgentAction &) const = default;
};

using Action = std::variant<SwapAction, ReorderAction, AccDeleteAction, DeleteAgentAction, AddAgentAction>;

struct State {
  Instance inst;
  PresenceMask mask;
};

State apply_action(const Instance &inst, const PresenceMask &mask, const Action &act);
// In-place variant used by solvers on scratch copies.
void apply_action_inplace(State &state, const Action &act);
State apply_actions(const Instance &inst, const PresenceMask &mask, const std::vector<Action> &acts);

// Text formats.
Instance parse_instance(const std::string &text);
std::string serialize_instance(const Instance &inst);
Matching parse_matching(const Instance &inst, const std::string &text);
std::string serialize_matching(const Instance &inst, const Matching &m);
std::vector<Action> parse_actions(const Instance &inst, const std::string &text);
std::string serialize_action(const Instance &inst, const Action &act);
std::string serialize_actions(const Instance &inst, const std::vector<Action> &acts);
std::optional<AgentRef> find_agent(const Instance &inst, const std::string &name);

}  // namespace smbribe
