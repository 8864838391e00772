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

// Domain types shared by the classical and quantum queue automata: queue
// words, configurations, sparse superpositions, machine records and the
// queue-operation semantics both machine families agree on.

#ifndef QQA_CORE_HPP
#define QQA_CORE_HPP

#include <complex>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qqa {

inline constexpr double kStructuralTolerance = 1e-9;
inline constexpr double kProbabilityTolerance = 1e-6;
inline constexpr double kPruneThreshold = 1e-12;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A machine record violates one of its structural invariants.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// The head would leave the tape #x$ during a general (non real-time) run.
class RunFault : public Error {
 public:
  using Error::Error;
};

/// An input string uses a symbol outside the machine's input alphabet.
class InputError : public Error {
 public:
  using Error::Error;
};

using StateId = std::uint32_t;
/// Tape cell contents: 0 is the left marker '#', 1..|Sigma| the input
/// alphabet in declaration order, |Sigma|+1 the right marker '$'.
using TapeSymbol = std::uint16_t;
/// Index into a queue alphabet; negative values are the reserved spellings.
using QueueSymbol = std::int16_t;
/// Index into a classical input alphabet, or kLambda.
using InputSymbol = std::int16_t;

/// Empty-queue marker in transition keys (front/rear of an empty queue).
inline constexpr QueueSymbol kBottom = -1;
/// Empty word written to the queue (tau in quantum tables, lambda in
/// classical ones).
inline constexpr QueueSymbol kEmptyWord = -1;
/// Classical transition that reads no input.
inline constexpr InputSymbol kLambda = -1;

enum class SymbolKind { input, queue, left_marker, right_marker, empty_queue, empty_word };

/// A token together with the role it plays; used for diagnostics and the
/// textual format.
struct Symbol {
  std::string token;
  SymbolKind kind;
  bool operator==(const Symbol&) const = default;
};

/// FIFO contents, front at index 0. Symbols are stored one byte each so
/// short queues stay in the small-string buffer.
class QueueWord {
 public:
  QueueWord() = default;
  QueueWord(std::initializer_list<QueueSymbol> items);

  [[nodiscard]] bool empty() const noexcept { return items_.empty(); }
  [[nodiscard]] std::size_t size() const noexcept { return items_.size(); }
  [[nodiscard]] QueueSymbol operator[](std::size_t i) const noexcept {
    return static_cast<QueueSymbol>(static_cast<unsigned char>(items_[i]));
  }
  [[nodiscard]] QueueSymbol front() const noexcept { return (*this)[0]; }
  [[nodiscard]] QueueSymbol back() const noexcept { return (*this)[items_.size() - 1]; }

  void push_back(QueueSymbol s);
  void pop_front();
  void pop_back() { items_.pop_back(); }

  [[nodiscard]] std::vector<QueueSymbol> symbols() const;
  [[nodiscard]] const std::string& raw() const noexcept { return items_; }

  auto operator<=>(const QueueWord&) const = default;
  bool operator==(const QueueWord&) const = default;

 private:
  std::string items_;
};

/// Returns (front, rear); (kBottom, kBottom) for the empty queue.
[[nodiscard]] std::pair<QueueSymbol, QueueSymbol> front_rear(const QueueWord& queue) noexcept;

enum class QueueOp { dequeue, enqueue };

/// enqueue keeps the front and appends `write` at the rear; dequeue drops
/// the front (nothing on an empty queue) and then appends `write`. Writing
/// kEmptyWord appends nothing.
[[nodiscard]] QueueWord apply_queue_op(QueueWord queue, QueueOp op, QueueSymbol write);

enum class Direction { left, stay, right };

[[nodiscard]] constexpr int head_offset(Direction d) noexcept {
  return d == Direction::left ? -1 : (d == Direction::stay ? 0 : 1);
}

/// A basis configuration: control state, head index into #x$ and the queue.
/// Ordering is state, then head, then queue (lexicographic).
struct Configuration {
  StateId state = 0;
  std::int32_t head = 0;
  QueueWord queue;

  auto operator<=>(const Configuration&) const = default;
  bool operator==(const Configuration&) const = default;
};

/// A transition amplitude. The source text is kept only so serialization can
/// reproduce it; equality is on the numeric value.
struct Amplitude {
  std::complex<double> value{1.0, 0.0};
  std::string source;

  bool operator==(const Amplitude& other) const { return value == other.value; }
};

/// Finite amplitude map over configurations, stored sorted by configuration
/// with terms below kPruneThreshold in magnitude removed.
class Superposition {
 public:
  using Term = std::pair<Configuration, std::complex<double>>;

  Superposition() = default;
  explicit Superposition(Configuration basis);

  /// Sorts, sums amplitudes at equal configurations and prunes.
  [[nodiscard]] static Superposition from_terms(std::vector<Term> terms);

  [[nodiscard]] const std::vector<Term>& terms() const noexcept { return terms_; }
  [[nodiscard]] bool empty() const noexcept { return terms_.empty(); }
  [[nodiscard]] std::size_t size() const noexcept { return terms_.size(); }
  [[nodiscard]] double norm_squared() const noexcept;
  [[nodiscard]] std::complex<double> amplitude(const Configuration& c) const;

  [[nodiscard]] Superposition scaled(std::complex<double> factor) const;
  [[nodiscard]] friend Superposition operator+(const Superposition& a, const Superposition& b);

 private:
  std::vector<Term> terms_;
};

[[nodiscard]] std::complex<double> inner_product(const Superposition& a, const Superposition& b);

struct QuantumKey {
  StateId state = 0;
  TapeSymbol symbol = 0;
  QueueSymbol front = kBottom;
  QueueSymbol rear = kBottom;

  auto operator<=>(const QuantumKey&) const = default;
  bool operator==(const QuantumKey&) const = default;
};

struct QuantumTransition {
  Amplitude amplitude;
  StateId target = 0;
  QueueSymbol write = kEmptyWord;
  Direction direction = Direction::right;
  QueueOp op = QueueOp::enqueue;

  bool operator==(const QuantumTransition&) const = default;
};

enum class Completion { none, sink };

/// Quantum queue automaton. States are split into accepting, rejecting and
/// (implicitly) non-halting ones; the table maps (state, tape symbol, front,
/// rear) to an amplitude-weighted list of moves.
struct QuantumMachine {
  std::string name;
  std::vector<std::string> states;
  /// Single-character tokens; '#' and '$' are never members.
  std::vector<std::string> input_alphabet;
  std::vector<std::string> queue_alphabet;
  StateId start = 0;
  std::set<StateId> accept;
  std::set<StateId> reject;
  std::map<QuantumKey, std::vector<QuantumTransition>> table;
  /// Simplified form: the head direction is a function of the target state.
  std::optional<std::vector<Direction>> head_policy;
  bool realtime = true;
  Completion completion = Completion::none;

  bool operator==(const QuantumMachine&) const = default;

  [[nodiscard]] std::size_t tape_symbol_count() const noexcept { return input_alphabet.size() + 2; }
  [[nodiscard]] TapeSymbol left_marker() const noexcept { return 0; }
  [[nodiscard]] TapeSymbol right_marker() const noexcept {
    return static_cast<TapeSymbol>(input_alphabet.size() + 1);
  }
  [[nodiscard]] bool is_accepting(StateId s) const { return accept.contains(s); }
  [[nodiscard]] bool is_rejecting(StateId s) const { return reject.contains(s); }
  [[nodiscard]] bool is_halting(StateId s) const { return is_accepting(s) || is_rejecting(s); }

  [[nodiscard]] std::optional<StateId> find_state(std::string_view name) const;
  [[nodiscard]] std::optional<TapeSymbol> find_tape_symbol(std::string_view token) const;
  [[nodiscard]] std::optional<QueueSymbol> find_queue_symbol(std::string_view token) const;
  [[nodiscard]] std::string tape_symbol_name(TapeSymbol s) const;
  [[nodiscard]] std::string queue_symbol_name(QueueSymbol s) const;

  /// Encodes #x$; throws InputError on symbols outside the input alphabet.
  [[nodiscard]] std::vector<TapeSymbol> tape(std::string_view input) const;

  /// All front/rear pairs a queue over this alphabet can present.
  [[nodiscard]] std::vector<std::pair<QueueSymbol, QueueSymbol>> queue_key_pairs() const;
};

/// Throws ValidationError when an invariant of the record is broken.
void validate(const QuantumMachine& m);

/// Name of the rejecting sink that completion attaches to `state`.
[[nodiscard]] std::string sink_name(std::string_view state);

/// Fills every unspecified (state, symbol, front, rear) row of a non-halting
/// state with a unit-amplitude move to that state's own rejecting sink.
/// Existing rows are untouched; completing a completed machine is a no-op.
[[nodiscard]] QuantumMachine complete_machine(const QuantumMachine& m);

struct ClassicalKey {
  StateId state = 0;
  InputSymbol symbol = kLambda;
  QueueSymbol front = kBottom;
  QueueSymbol rear = kBottom;

  auto operator<=>(const ClassicalKey&) const = default;
  bool operator==(const ClassicalKey&) const = default;
};

enum class QueueAction { keep, remove };

struct ClassicalTransition {
  StateId target = 0;
  QueueSymbol write = kEmptyWord;
  QueueAction action = QueueAction::keep;

  auto operator<=>(const ClassicalTransition&) const = default;
  bool operator==(const ClassicalTransition&) const = default;
};

enum class Flavor { deterministic, nondeterministic };

/// Classical queue automaton (Q, Sigma, Gamma, delta, q0, bottom, F) with
/// keep/remove moves and optional lambda moves.
struct ClassicalMachine {
  std::string name;
  std::vector<std::string> states;
  std::vector<std::string> input_alphabet;
  std::vector<std::string> queue_alphabet;
  StateId start = 0;
  std::set<StateId> final_states;
  std::map<ClassicalKey, std::vector<ClassicalTransition>> table;
  Flavor flavor = Flavor::deterministic;

  bool operator==(const ClassicalMachine&) const = default;

  [[nodiscard]] bool is_final(StateId s) const { return final_states.contains(s); }
  [[nodiscard]] std::optional<StateId> find_state(std::string_view name) const;
  [[nodiscard]] std::optional<InputSymbol> find_input_symbol(std::string_view token) const;
  [[nodiscard]] std::optional<QueueSymbol> find_queue_symbol(std::string_view token) const;
  [[nodiscard]] std::string input_symbol_name(InputSymbol s) const;
  [[nodiscard]] std::string queue_symbol_name(QueueSymbol s) const;
  [[nodiscard]] std::vector<InputSymbol> encode(std::string_view input) const;
};

void validate(const ClassicalMachine& m);

/// Post-measurement snapshot after one evolution step.
struct StepRecord {
  std::size_t step = 0;
  std::string symbol;
  Superposition residual;
  double p_accept = 0.0;
  double p_reject = 0.0;
};

struct RunResult {
  double p_accept = 0.0;
  double p_reject = 0.0;
  double p_nonhalt = 0.0;
  std::size_t steps = 0;
  std::vector<StepRecord> trace;

  /// Mass lost on configurations without an applicable transition.
  [[nodiscard]] double leaked() const noexcept { return 1.0 - p_accept - p_reject - p_nonhalt; }
};

}  // namespace qqa

#endif  // QQA_CORE_HPP
