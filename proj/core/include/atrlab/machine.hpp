#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "atrlab/pairing.hpp"

namespace atrlab {

using BigNat = boost::multiprecision::cpp_int;

BigNat big_pair(const BigNat& x, const BigNat& y);
std::pair<BigNat, BigNat> big_unpair(const BigNat& z);

// Bijection between finite sequences of naturals and naturals:
// [] -> 0, [x0..xk] -> 1 + pair(k, pair(x0, pair(x1, ... pair(x_{k-1}, xk)))).
BigNat encode_sequence(const std::vector<BigNat>& xs);
std::vector<BigNat> decode_sequence(const BigNat& code);

enum class Opcode { Halt, Inc, Dec, Jz, Query, Nop };

struct Instruction {
  Opcode op = Opcode::Halt;
  BigNat reg = 0;
  BigNat target = 0;    // JZ target
  BigNat on_one = 0;    // QUERY target on answer 1
  BigNat on_zero = 0;   // QUERY target on answer 0

  static Instruction decode(const BigNat& code);
};

namespace instr {
BigNat halt();
BigNat inc(Nat r);
BigNat dec(Nat r);
BigNat jz(Nat r, Nat k);
BigNat query(Nat r, Nat on_one, Nat on_zero);
}  // namespace instr

class Program {
 public:
  Program() = default;
  explicit Program(std::vector<BigNat> codes);

  static Program decode(const BigNat& index);
  BigNat index() const;

  const std::vector<BigNat>& codes() const { return codes_; }
  const std::vector<Instruction>& instructions() const { return decoded_; }
  std::size_t size() const { return codes_.size(); }

 private:
  std::vector<BigNat> codes_;
  std::vector<Instruction> decoded_;
};

// Finite partial function from addresses to bits.
using OracleString = std::map<Nat, bool>;

struct HaltingPair {
  OracleString sigma;
  Nat steps = 0;

  auto operator<=>(const HaltingPair&) const = default;
};

enum class RunStatus { Halted, Blocked, Exhausted };

struct RunOutcome {
  RunStatus status = RunStatus::Exhausted;
  Nat steps = 0;  // steps used when halted

  bool halted() const { return status == RunStatus::Halted; }
  bool operator==(const RunOutcome&) const = default;
};

// Returns the answer at an address, or nullopt when the oracle is silent there.
using Oracle = std::function<std::optional<bool>(Nat)>;

Oracle oracle_from_string(const OracleString& sigma);
Oracle oracle_from_set(const std::set<Nat>& X);

RunOutcome run(const Program& p, const Oracle& oracle, Nat s, Nat x);
RunOutcome run(const BigNat& e, const OracleString& sigma, Nat s, Nat x);

std::vector<HaltingPair> minimal_halting_pairs(const Program& p, Nat x, Nat s_max);
std::vector<HaltingPair> minimal_halting_pairs(const BigNat& e, Nat x, Nat s_max);

bool consistent_with(const OracleString& sigma, const std::set<Nat>& X);

class JumpOperator {
 public:
  enum class Kind { Bounded, Suite, Synthetic };
  using Table = std::map<std::vector<Nat>, std::set<Nat>>;

  // Slot e < e_max runs program e on input e.
  static JumpOperator bounded(Nat e_max, Nat s_max);
  // Slot k < programs.size() runs programs[k] on input k.
  static JumpOperator suite(std::vector<Program> programs, Nat s_max);
  static JumpOperator synthetic(Table table);

  Kind kind() const { return kind_; }
  Nat slot_count() const;
  Nat step_budget() const { return s_max_; }
  // Program run at a slot; nullopt for synthetic operators and slots out of range.
  std::optional<Program> slot_program(Nat slot) const;
  const Table& table() const { return table_; }

  std::set<Nat> apply(const std::set<Nat>& X) const;
  std::string describe() const;

 private:
  Kind kind_ = Kind::Bounded;
  Nat e_max_ = 0;
  Nat s_max_ = 0;
  std::vector<Program> programs_;
  Table table_;
};

std::set<Nat> apply_jump(const JumpOperator& J, const std::set<Nat>& X);

bool jump_vs_pairs_consistency(Nat e, const std::set<Nat>& X, Nat s_max);

// Small programs with known behaviour, used by tests, demos and the default suite.
namespace programs {
Program halt_now();           // HALT
Program loop_forever();       // JZ r1 -> 0
Program query_then_halt();    // queries address 0, halts on either answer
Program halt_on_one(Nat address);   // halts iff address answers 1
Program halt_on_zero(Nat address);  // halts iff address answers 0
Program halt_on_both(Nat a1, Nat a2);  // queries a1 then a2, halts iff both answer 1
// The default suite: loop, halt, positive query on 0, negative query on 0,
// two queries on 0 and 2, query on 0 halting either way, positive query on 8.
std::vector<Program> default_suite();
}  // namespace programs

std::string to_string(const OracleString& sigma);

}  // namespace atrlab
