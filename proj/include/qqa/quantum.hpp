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

// Superposition evolution and measure-many observation for quantum queue
// automata.

#ifndef QQA_QUANTUM_HPP
#define QQA_QUANTUM_HPP

#include <string>
#include <string_view>
#include <vector>

#include "qqa/core.hpp"

namespace qqa {

struct Measurement {
  double p_accept = 0.0;
  double p_reject = 0.0;
  /// Non-halting part, not renormalized.
  Superposition residual;
};

struct RunOptions {
  bool trace = false;
  /// Accepting terms whose queue is not empty count as rejecting.
  bool strict_empty_queue = false;
};

/// Table lookups compiled into a dense array indexed by
/// (state, tape symbol, front, rear). Holds its own copy of the machine.
class QuantumRunner {
 public:
  explicit QuantumRunner(QuantumMachine m);

  [[nodiscard]] const QuantumMachine& machine() const noexcept { return m_; }

  /// Moves for a key, or nullptr when the row is unspecified.
  [[nodiscard]] const std::vector<QuantumTransition>* moves(StateId q, TapeSymbol s, QueueSymbol front,
                                                            QueueSymbol rear) const noexcept;

  /// One application of the evolution operator. Each term reads the tape
  /// cell under its own head. A non-halting successor off the tape raises
  /// RunFault unless `allow_overrun` is set.
  [[nodiscard]] Superposition evolve(const Superposition& psi, const std::vector<TapeSymbol>& tape,
                                     bool allow_overrun = false) const;

  /// Every term reads `symbol` and the head offsets are applied as usual.
  [[nodiscard]] Superposition evolve_on(const Superposition& psi, TapeSymbol symbol) const;

  [[nodiscard]] Measurement measure(const Superposition& psi, bool strict_empty_queue = false) const;

  [[nodiscard]] RunResult run_rt(std::string_view x, const RunOptions& options = {}) const;
  [[nodiscard]] RunResult run_general(std::string_view x, std::size_t max_steps, const RunOptions& options = {}) const;

 private:
  [[nodiscard]] std::size_t index(StateId q, TapeSymbol s, QueueSymbol front, QueueSymbol rear) const noexcept;
  void emit(std::vector<Superposition::Term>& out, const Configuration& c, std::complex<double> alpha,
            TapeSymbol symbol, std::int32_t tape_len, bool check_bounds) const;

  QuantumMachine m_;
  std::size_t n_symbols_;
  std::size_t n_pairs_;
  std::vector<const std::vector<QuantumTransition>*> index_;
  std::vector<char> halting_;
};

[[nodiscard]] Superposition evolve_step(const Superposition& psi, const QuantumMachine& m,
                                        const std::vector<TapeSymbol>& tape);
[[nodiscard]] Measurement measure(const Superposition& psi, const QuantumMachine& m, bool strict_empty_queue = false);

/// Real-time run over #x$: |x|+2 evolve-then-measure steps. Remaining
/// non-halting mass is reported as p_nonhalt.
[[nodiscard]] RunResult run_rt(const QuantumMachine& m, std::string_view x, bool want_trace = false);
[[nodiscard]] RunResult run_general(const QuantumMachine& m, std::string_view x, std::size_t max_steps,
                                    bool want_trace = false);

/// Line-oriented trace: `step k sym s p_acc a p_rej r` headers followed by
/// `state head queue re im` term lines.
[[nodiscard]] std::string emit_trace(const RunResult& result, const QuantumMachine& m);

/// %.17g, with ".0" appended to integral values.
[[nodiscard]] std::string format_number(double v);

/// Unit-amplitude real-time encoding of a lambda-free deterministic machine:
/// a fresh start state reads '#', keep/remove become enqueue/dequeue and '$'
/// sends final states to an accepting state and the rest to a rejecting
/// one. The result is sink-completed.
[[nodiscard]] QuantumMachine embed_classical(const ClassicalMachine& m);

}  // namespace qqa

#endif  // QQA_QUANTUM_HPP
