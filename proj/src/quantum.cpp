// Copyright 2026 The qqa Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qqa/quantum.hpp"

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <sstream>

namespace qqa {

QuantumRunner::QuantumRunner(QuantumMachine m)
    : m_(std::move(m)), n_symbols_(m_.tape_symbol_count()), n_pairs_(m_.queue_alphabet.size() + 1) {
  validate(m_);
  index_.assign(m_.states.size() * n_symbols_ * n_pairs_ * n_pairs_, nullptr);
  for (const auto& [key, moves] : m_.table)
    if (!moves.empty()) index_[index(key.state, key.symbol, key.front, key.rear)] = &moves;
  halting_.resize(m_.states.size());
  for (StateId q = 0; q < m_.states.size(); ++q) halting_[q] = m_.is_halting(q) ? 1 : 0;
}

std::size_t QuantumRunner::index(StateId q, TapeSymbol s, QueueSymbol front, QueueSymbol rear) const noexcept {
  return ((static_cast<std::size_t>(q) * n_symbols_ + s) * n_pairs_ + static_cast<std::size_t>(front + 1)) *
             n_pairs_ +
         static_cast<std::size_t>(rear + 1);
}

const std::vector<QuantumTransition>* QuantumRunner::moves(StateId q, TapeSymbol s, QueueSymbol front,
                                                           QueueSymbol rear) const noexcept {
  if (q >= m_.states.size() || s >= n_symbols_) return nullptr;
  return index_[index(q, s, front, rear)];
}

void QuantumRunner::emit(std::vector<Superposition::Term>& out, const Configuration& c, std::complex<double> alpha,
                         TapeSymbol symbol, std::int32_t tape_len, bool check_bounds) const {
  const auto [front, rear] = front_rear(c.queue);
  const auto* row = moves(c.state, symbol, front, rear);
  if (!row) return;
  for (const auto& t : *row) {
    Configuration next{t.target, c.head + head_offset(t.direction), apply_queue_op(c.queue, t.op, t.write)};
    if (check_bounds && !halting_[t.target] && (next.head < 0 || next.head >= tape_len)) {
      throw RunFault("head leaves the tape: " + m_.states[c.state] + ' ' + m_.tape_symbol_name(symbol) + ' ' +
                     m_.queue_symbol_name(front) + ' ' + m_.queue_symbol_name(rear) + " -> " +
                     m_.states[t.target] + " at head " + std::to_string(c.head));
    }
    out.emplace_back(std::move(next), alpha * t.amplitude.value);
  }
}

Superposition QuantumRunner::evolve(const Superposition& psi, const std::vector<TapeSymbol>& tape,
                                    bool allow_overrun) const {
  const auto len = static_cast<std::int32_t>(tape.size());
  std::vector<Superposition::Term> out;
  out.reserve(psi.size() * 2);
  for (const auto& [c, alpha] : psi.terms()) {
    if (c.head < 0 || c.head >= len)
      throw RunFault("configuration in state " + m_.states[c.state] + " reads outside the tape at head " +
                     std::to_string(c.head));
    emit(out, c, alpha, tape[static_cast<std::size_t>(c.head)], len, !allow_overrun);
  }
  return Superposition::from_terms(std::move(out));
}

Superposition QuantumRunner::evolve_on(const Superposition& psi, TapeSymbol symbol) const {
  std::vector<Superposition::Term> out;
  out.reserve(psi.size() * 2);
  for (const auto& [c, alpha] : psi.terms()) emit(out, c, alpha, symbol, 0, false);
  return Superposition::from_terms(std::move(out));
}

Measurement QuantumRunner::measure(const Superposition& psi, bool strict_empty_queue) const {
  Measurement result;
  std::vector<Superposition::Term> rest;
  for (const auto& [c, alpha] : psi.terms()) {
    const double p = std::norm(alpha);
    if (m_.is_accepting(c.state)) {
      if (strict_empty_queue && !c.queue.empty()) result.p_reject += p;
      else result.p_accept += p;
    } else if (m_.is_rejecting(c.state)) {
      result.p_reject += p;
    } else {
      rest.emplace_back(c, alpha);
    }
  }
  result.residual = Superposition::from_terms(std::move(rest));
  return result;
}

RunResult QuantumRunner::run_rt(std::string_view x, const RunOptions& options) const {
  if (!m_.realtime) throw ValidationError("run_rt needs a real-time machine");
  const auto tape = m_.tape(x);
  RunResult result;
  Superposition psi(Configuration{m_.start, 0, {}});
  for (std::size_t k = 0; k < tape.size(); ++k) {
    auto meas = measure(evolve(psi, tape, true), options.strict_empty_queue);
    result.p_accept += meas.p_accept;
    result.p_reject += meas.p_reject;
    psi = std::move(meas.residual);
    ++result.steps;
    if (options.trace)
      result.trace.push_back(StepRecord{k + 1, m_.tape_symbol_name(tape[k]), psi, result.p_accept, result.p_reject});
  }
  result.p_nonhalt = psi.norm_squared();
  return result;
}

RunResult QuantumRunner::run_general(std::string_view x, std::size_t max_steps, const RunOptions& options) const {
  if (max_steps < 1) throw Error("max_steps must be at least 1");
  const auto tape = m_.tape(x);
  const auto len = static_cast<std::int32_t>(tape.size());
  RunResult result;
  Superposition psi(Configuration{m_.start, 0, {}});
  while (result.steps < max_steps) {
    if (result.p_accept + result.p_reject >= 1.0 - kStructuralTolerance) break;
    // A real-time machine is done once every surviving term has read '$'.
    if (m_.realtime && std::none_of(psi.terms().begin(), psi.terms().end(),
                                    [&](const auto& t) { return t.first.head < len; }))
      break;
    auto meas = measure(evolve(psi, tape, m_.realtime), options.strict_empty_queue);
    result.p_accept += meas.p_accept;
    result.p_reject += meas.p_reject;
    psi = std::move(meas.residual);
    ++result.steps;
    if (options.trace) result.trace.push_back(StepRecord{result.steps, "*", psi, result.p_accept, result.p_reject});
  }
  result.p_nonhalt = psi.norm_squared();
  return result;
}

Superposition evolve_step(const Superposition& psi, const QuantumMachine& m, const std::vector<TapeSymbol>& tape) {
  return QuantumRunner(m).evolve(psi, tape, m.realtime);
}

Measurement measure(const Superposition& psi, const QuantumMachine& m, bool strict_empty_queue) {
  return QuantumRunner(m).measure(psi, strict_empty_queue);
}

RunResult run_rt(const QuantumMachine& m, std::string_view x, bool want_trace) {
  return QuantumRunner(m).run_rt(x, RunOptions{want_trace, false});
}

RunResult run_general(const QuantumMachine& m, std::string_view x, std::size_t max_steps, bool want_trace) {
  return QuantumRunner(m).run_general(x, max_steps, RunOptions{want_trace, false});
}

std::string format_number(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  if (!std::strpbrk(buf, ".eEn")) std::strcat(buf, ".0");
  return buf;
}

std::string emit_trace(const RunResult& result, const QuantumMachine& m) {
  std::string out;
  for (const auto& rec : result.trace) {
    out += "step " + std::to_string(rec.step) + " sym " + rec.symbol + " p_acc " + format_number(rec.p_accept) +
           " p_rej " + format_number(rec.p_reject) + '\n';
    for (const auto& [c, alpha] : rec.residual.terms()) {
      out += m.states.at(c.state) + ' ' + std::to_string(c.head) + ' ';
      if (c.queue.empty()) {
        out += '_';
      } else {
        for (std::size_t i = 0; i < c.queue.size(); ++i) {
          if (i) out += ',';
          out += m.queue_symbol_name(c.queue[i]);
        }
      }
      out += ' ' + format_number(alpha.real()) + ' ' + format_number(alpha.imag()) + '\n';
    }
  }
  return out;
}

QuantumMachine embed_classical(const ClassicalMachine& c) {
  if (c.flavor != Flavor::deterministic) throw ValidationError("embedding needs a deterministic machine");
  for (const auto& [key, moves] : c.table)
    if (key.symbol == kLambda) throw ValidationError("embedding needs a lambda-free machine");

  QuantumMachine q;
  q.name = c.name + ".embedded";
  q.states = c.states;
  q.input_alphabet = c.input_alphabet;
  q.queue_alphabet = c.queue_alphabet;
  q.realtime = true;
  auto fresh = [&](std::string name) {
    while (q.find_state(name)) name += '\'';
    q.states.push_back(name);
    return static_cast<StateId>(q.states.size() - 1);
  };
  const StateId init = fresh("init");
  const StateId acc = fresh("acc");
  const StateId rej = fresh("rej");
  q.start = init;
  q.accept = {acc};
  q.reject = {rej};
  q.head_policy = std::vector<Direction>(q.states.size(), Direction::right);

  auto unit = [](StateId target, QueueSymbol write, QueueOp op) {
    return QuantumTransition{Amplitude{{1.0, 0.0}, "1"}, target, write, Direction::right, op};
  };
  q.table[QuantumKey{init, q.left_marker(), kBottom, kBottom}].push_back(unit(c.start, kEmptyWord, QueueOp::enqueue));
  for (const auto& [key, moves] : c.table) {
    const auto& t = moves.front();
    q.table[QuantumKey{key.state, static_cast<TapeSymbol>(key.symbol + 1), key.front, key.rear}].push_back(
        unit(t.target, t.write, t.action == QueueAction::keep ? QueueOp::enqueue : QueueOp::dequeue));
  }
  for (StateId s = 0; s < c.states.size(); ++s)
    for (auto [front, rear] : q.queue_key_pairs())
      q.table[QuantumKey{s, q.right_marker(), front, rear}].push_back(
          unit(c.is_final(s) ? acc : rej, kEmptyWord, QueueOp::enqueue));
  validate(q);
  return complete_machine(q);
}

}  // namespace qqa
