#include "atrlab/machine.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "atrlab/errors.hpp"

namespace atrlab {

BigNat big_pair(const BigNat& x, const BigNat& y) {
  BigNat s = x + y;
  return s * (s + 1) / 2 + y;
}

std::pair<BigNat, BigNat> big_unpair(const BigNat& z) {
  BigNat d = 8 * z + 1;
  BigNat w = (BigNat(boost::multiprecision::sqrt(d)) - 1) / 2;
  BigNat t = w * (w + 1) / 2;
  BigNat y = z - t;
  BigNat x = w - y;
  return {x, y};
}

BigNat encode_sequence(const std::vector<BigNat>& xs) {
  if (xs.empty()) return 0;
  BigNat tuple = xs.back();
  for (std::size_t i = xs.size() - 1; i-- > 0;) tuple = big_pair(xs[i], tuple);
  return 1 + big_pair(BigNat(xs.size() - 1), tuple);
}

std::vector<BigNat> decode_sequence(const BigNat& code) {
  if (code == 0) return {};
  auto [k, tuple] = big_unpair(code - 1);
  if (k > 1000000) throw std::length_error("decode_sequence: sequence too long");
  auto len = static_cast<std::size_t>(k) + 1;
  std::vector<BigNat> xs;
  xs.reserve(len);
  for (std::size_t i = 0; i + 1 < len; ++i) {
    auto [head, rest] = big_unpair(tuple);
    xs.push_back(head);
    tuple = rest;
  }
  xs.push_back(tuple);
  return xs;
}

Instruction Instruction::decode(const BigNat& code) {
  Instruction in;
  if (code == 0) return in;
  auto [op, arg] = big_unpair(code);
  if (op == 1) {
    in.op = Opcode::Inc;
    in.reg = arg;
  } else if (op == 2) {
    in.op = Opcode::Dec;
    in.reg = arg;
  } else if (op == 3) {
    auto [r, k] = big_unpair(arg);
    in.op = Opcode::Jz;
    in.reg = r;
    in.target = k;
  } else if (op == 4) {
    auto [r, rest] = big_unpair(arg);
    auto [k1, k0] = big_unpair(rest);
    in.op = Opcode::Query;
    in.reg = r;
    in.on_one = k1;
    in.on_zero = k0;
  } else {
    in.op = Opcode::Nop;
  }
  return in;
}

namespace instr {
BigNat halt() { return 0; }
BigNat inc(Nat r) { return big_pair(1, r); }
BigNat dec(Nat r) { return big_pair(2, r); }
BigNat jz(Nat r, Nat k) { return big_pair(3, big_pair(r, k)); }
BigNat query(Nat r, Nat on_one, Nat on_zero) {
  return big_pair(4, big_pair(r, big_pair(on_one, on_zero)));
}
}  // namespace instr

Program::Program(std::vector<BigNat> codes) : codes_(std::move(codes)) {
  decoded_.reserve(codes_.size());
  for (const auto& c : codes_) decoded_.push_back(Instruction::decode(c));
}

Program Program::decode(const BigNat& index) { return Program(decode_sequence(index)); }

BigNat Program::index() const { return encode_sequence(codes_); }

Oracle oracle_from_string(const OracleString& sigma) {
  return [sigma](Nat a) -> std::optional<bool> {
    auto it = sigma.find(a);
    if (it == sigma.end()) return std::nullopt;
    return it->second;
  };
}

Oracle oracle_from_set(const std::set<Nat>& X) {
  return [X](Nat a) -> std::optional<bool> { return X.count(a) > 0; };
}

namespace {

struct MachineState {
  std::size_t pc = 0;
  Nat steps = 0;
  std::map<BigNat, Nat> regs;

  Nat get(const BigNat& r) const {
    auto it = regs.find(r);
    return it == regs.end() ? 0 : it->second;
  }
};

constexpr std::size_t kNoTarget = std::numeric_limits<std::size_t>::max();

std::size_t to_pc(const BigNat& k) {
  if (k > BigNat(std::numeric_limits<std::size_t>::max() - 1)) return kNoTarget;
  return static_cast<std::size_t>(k);
}

enum class StepResult { Continue, Halted, Query, Diverged };

// Executes one non-query instruction. For QUERY returns Query without
// advancing so the caller can supply the answer.
StepResult step(const Program& p, MachineState& st) {
  if (st.pc >= p.size()) return StepResult::Diverged;
  const Instruction& in = p.instructions()[st.pc];
  switch (in.op) {
    case Opcode::Halt:
      ++st.steps;
      return StepResult::Halted;
    case Opcode::Inc: {
      Nat v = st.get(in.reg);
      if (v != std::numeric_limits<Nat>::max()) ++v;
      st.regs[in.reg] = v;
      ++st.pc;
      break;
    }
    case Opcode::Dec: {
      Nat v = st.get(in.reg);
      if (v > 0) --v;
      st.regs[in.reg] = v;
      ++st.pc;
      break;
    }
    case Opcode::Jz:
      st.pc = st.get(in.reg) == 0 ? to_pc(in.target) : st.pc + 1;
      break;
    case Opcode::Query:
      return StepResult::Query;
    case Opcode::Nop:
      ++st.pc;
      break;
  }
  ++st.steps;
  return StepResult::Continue;
}

void answer(const Program& p, MachineState& st, bool bit) {
  const Instruction& in = p.instructions()[st.pc];
  st.pc = to_pc(bit ? in.on_one : in.on_zero);
  ++st.steps;
}

}  // namespace

RunOutcome run(const Program& p, const Oracle& oracle, Nat s, Nat x) {
  MachineState st;
  st.regs[0] = x;
  while (st.steps < s) {
    StepResult r = step(p, st);
    if (r == StepResult::Halted) return {RunStatus::Halted, st.steps};
    if (r == StepResult::Diverged) return {RunStatus::Exhausted, 0};
    if (r == StepResult::Query) {
      Nat address = st.get(p.instructions()[st.pc].reg);
      auto bit = oracle(address);
      if (!bit) return {RunStatus::Blocked, 0};
      answer(p, st, *bit);
    }
  }
  return {RunStatus::Exhausted, 0};
}

RunOutcome run(const BigNat& e, const OracleString& sigma, Nat s, Nat x) {
  return run(Program::decode(e), oracle_from_string(sigma), s, x);
}

namespace {

void explore(const Program& p, MachineState st, OracleString sigma, Nat s_max,
             std::vector<HaltingPair>& out) {
  while (st.steps < s_max) {
    StepResult r = step(p, st);
    if (r == StepResult::Halted) {
      out.push_back({std::move(sigma), st.steps});
      return;
    }
    if (r == StepResult::Diverged) return;
    if (r == StepResult::Query) {
      Nat address = st.get(p.instructions()[st.pc].reg);
      auto it = sigma.find(address);
      if (it != sigma.end()) {
        answer(p, st, it->second);
        continue;
      }
      MachineState zero = st;
      OracleString sigma_zero = sigma;
      sigma_zero[address] = false;
      answer(p, zero, false);
      explore(p, std::move(zero), std::move(sigma_zero), s_max, out);
      sigma[address] = true;
      answer(p, st, true);
    }
  }
}

}  // namespace

std::vector<HaltingPair> minimal_halting_pairs(const Program& p, Nat x, Nat s_max) {
  std::vector<HaltingPair> out;
  MachineState st;
  st.regs[0] = x;
  explore(p, std::move(st), {}, s_max, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<HaltingPair> minimal_halting_pairs(const BigNat& e, Nat x, Nat s_max) {
  return minimal_halting_pairs(Program::decode(e), x, s_max);
}

bool consistent_with(const OracleString& sigma, const std::set<Nat>& X) {
  for (const auto& [a, bit] : sigma) {
    if ((X.count(a) > 0) != bit) return false;
  }
  return true;
}

JumpOperator JumpOperator::bounded(Nat e_max, Nat s_max) {
  JumpOperator J;
  J.kind_ = Kind::Bounded;
  J.e_max_ = e_max;
  J.s_max_ = s_max;
  return J;
}

JumpOperator JumpOperator::suite(std::vector<Program> programs, Nat s_max) {
  JumpOperator J;
  J.kind_ = Kind::Suite;
  J.e_max_ = programs.size();
  J.s_max_ = s_max;
  J.programs_ = std::move(programs);
  return J;
}

JumpOperator JumpOperator::synthetic(Table table) {
  JumpOperator J;
  J.kind_ = Kind::Synthetic;
  J.table_ = std::move(table);
  return J;
}

Nat JumpOperator::slot_count() const { return kind_ == Kind::Synthetic ? 0 : e_max_; }

std::optional<Program> JumpOperator::slot_program(Nat slot) const {
  if (kind_ == Kind::Synthetic || slot >= e_max_) return std::nullopt;
  if (kind_ == Kind::Suite) return programs_[slot];
  return Program::decode(BigNat(slot));
}

std::set<Nat> JumpOperator::apply(const std::set<Nat>& X) const {
  if (kind_ == Kind::Synthetic) {
    std::vector<Nat> key(X.begin(), X.end());
    auto it = table_.find(key);
    if (it == table_.end()) {
      std::ostringstream os;
      os << "synthetic jump has no entry for {";
      for (std::size_t i = 0; i < key.size(); ++i) os << (i ? "," : "") << key[i];
      os << "}";
      throw SyntheticMiss(os.str());
    }
    return it->second;
  }
  std::set<Nat> out;
  Oracle oracle = oracle_from_set(X);
  for (Nat e = 0; e < e_max_; ++e) {
    if (run(*slot_program(e), oracle, s_max_, e).halted()) out.insert(e);
  }
  return out;
}

std::string JumpOperator::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::Bounded:
      os << "bounded:" << e_max_ << "," << s_max_;
      break;
    case Kind::Suite:
      os << "suite:" << e_max_ << "," << s_max_;
      break;
    case Kind::Synthetic:
      os << "synthetic:" << table_.size();
      break;
  }
  return os.str();
}

std::set<Nat> apply_jump(const JumpOperator& J, const std::set<Nat>& X) { return J.apply(X); }

bool jump_vs_pairs_consistency(Nat e, const std::set<Nat>& X, Nat s_max) {
  Program p = Program::decode(BigNat(e));
  bool in_jump = run(p, oracle_from_set(X), s_max, e).halted();
  bool has_pair = false;
  for (const auto& hp : minimal_halting_pairs(p, e, s_max)) {
    if (hp.steps <= s_max && consistent_with(hp.sigma, X)) {
      has_pair = true;
      break;
    }
  }
  return in_jump == has_pair;
}

namespace programs {

namespace {
// Loads `address` into r1 and returns the instructions doing so.
std::vector<BigNat> load_r1(Nat address) {
  return std::vector<BigNat>(address, instr::inc(1));
}
}  // namespace

Program halt_now() { return Program({instr::halt()}); }

Program loop_forever() { return Program({instr::jz(1, 0)}); }

Program query_then_halt() { return Program({instr::query(1, 1, 1), instr::halt()}); }

Program halt_on_one(Nat address) {
  auto code = load_r1(address);
  Nat q = code.size();
  code.push_back(instr::query(1, q + 1, q + 2));
  code.push_back(instr::halt());
  code.push_back(instr::jz(2, q + 2));
  return Program(std::move(code));
}

Program halt_on_zero(Nat address) {
  auto code = load_r1(address);
  Nat q = code.size();
  code.push_back(instr::query(1, q + 2, q + 1));
  code.push_back(instr::halt());
  code.push_back(instr::jz(2, q + 2));
  return Program(std::move(code));
}

Program halt_on_both(Nat a1, Nat a2) {
  if (a2 < a1) std::swap(a1, a2);
  auto code = load_r1(a1);
  // layout: loads, Q1, loads, Q2, HALT, LOOP
  Nat q1 = code.size();
  Nat q2 = q1 + 1 + (a2 - a1);
  Nat halt_pc = q2 + 1;
  Nat loop_pc = q2 + 2;
  code.push_back(instr::query(1, q1 + 1, loop_pc));
  for (Nat i = a1; i < a2; ++i) code.push_back(instr::inc(1));
  code.push_back(instr::query(1, halt_pc, loop_pc));
  code.push_back(instr::halt());
  code.push_back(instr::jz(2, loop_pc));
  return Program(std::move(code));
}

std::vector<Program> default_suite() {
  return {loop_forever(), halt_now(),          halt_on_one(0), halt_on_zero(0),
          halt_on_both(0, 2), query_then_halt(), halt_on_one(8)};
}

}  // namespace programs

std::string to_string(const OracleString& sigma) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const auto& [a, b] : sigma) {
    os << (first ? "" : ",") << a << ":" << (b ? 1 : 0);
    first = false;
  }
  os << "}";
  return os.str();
}

}  // namespace atrlab
