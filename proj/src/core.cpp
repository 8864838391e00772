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

#include "qqa/core.hpp"

#include <algorithm>
#include <unordered_set>

namespace qqa {

namespace {

constexpr std::size_t kMaxQueueSymbols = 255;

bool is_reserved_token(std::string_view t) {
  return t == "_" || t == "-" || t == "~" || t == "->";
}

void check_unique(const std::vector<std::string>& names, const char* what) {
  std::unordered_set<std::string> seen;
  for (const auto& n : names) {
    if (n.empty()) throw ValidationError(std::string("empty ") + what + " name");
    if (!seen.insert(n).second) throw ValidationError(std::string("duplicate ") + what + " '" + n + "'");
  }
}

void check_input_alphabet(const std::vector<std::string>& sigma) {
  check_unique(sigma, "input symbol");
  for (const auto& s : sigma) {
    if (s.size() != 1) throw ValidationError("input symbol '" + s + "' must be a single character");
    if (s == "#" || s == "$") throw ValidationError("end-marker '" + s + "' cannot be an input symbol");
    if (is_reserved_token(s)) throw ValidationError("reserved token '" + s + "' cannot be an input symbol");
  }
}

void check_queue_alphabet(const std::vector<std::string>& gamma) {
  check_unique(gamma, "queue symbol");
  if (gamma.size() > kMaxQueueSymbols) throw ValidationError("queue alphabet too large");
  for (const auto& s : gamma) {
    if (is_reserved_token(s)) throw ValidationError("reserved token '" + s + "' cannot be a queue symbol");
  }
}

void check_key_pair(QueueSymbol front, QueueSymbol rear, std::size_t gamma) {
  auto in_range = [gamma](QueueSymbol s) { return s >= 0 && static_cast<std::size_t>(s) < gamma; };
  if (front == kBottom || rear == kBottom) {
    if (front != rear) throw ValidationError("illegal empty-queue pair");
    return;
  }
  if (!in_range(front) || !in_range(rear)) throw ValidationError("queue symbol out of range in key");
}

template <typename Names>
std::optional<std::uint32_t> index_of(const Names& names, std::string_view token) {
  auto it = std::find(names.begin(), names.end(), token);
  if (it == names.end()) return std::nullopt;
  return static_cast<std::uint32_t>(it - names.begin());
}

}  // namespace

QueueWord::QueueWord(std::initializer_list<QueueSymbol> items) {
  for (auto s : items) push_back(s);
}

void QueueWord::push_back(QueueSymbol s) {
  items_.push_back(static_cast<char>(static_cast<unsigned char>(s)));
}

void QueueWord::pop_front() {
  if (!items_.empty()) items_.erase(items_.begin());
}

std::vector<QueueSymbol> QueueWord::symbols() const {
  std::vector<QueueSymbol> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) out.push_back((*this)[i]);
  return out;
}

std::pair<QueueSymbol, QueueSymbol> front_rear(const QueueWord& queue) noexcept {
  if (queue.empty()) return {kBottom, kBottom};
  return {queue.front(), queue.back()};
}

QueueWord apply_queue_op(QueueWord queue, QueueOp op, QueueSymbol write) {
  if (op == QueueOp::dequeue) queue.pop_front();
  if (write != kEmptyWord) queue.push_back(write);
  return queue;
}

// Superposition ------------------------------------------------------------

Superposition::Superposition(Configuration basis) {
  terms_.emplace_back(std::move(basis), std::complex<double>{1.0, 0.0});
}

Superposition Superposition::from_terms(std::vector<Term> terms) {
  std::stable_sort(terms.begin(), terms.end(),
                   [](const Term& a, const Term& b) { return a.first < b.first; });
  Superposition out;
  out.terms_.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.terms_.empty() && out.terms_.back().first == t.first) {
      out.terms_.back().second += t.second;
    } else {
      out.terms_.push_back(std::move(t));
    }
  }
  std::erase_if(out.terms_, [](const Term& t) { return std::abs(t.second) < kPruneThreshold; });
  return out;
}

double Superposition::norm_squared() const noexcept {
  double n = 0.0;
  for (const auto& [c, a] : terms_) n += std::norm(a);
  return n;
}

std::complex<double> Superposition::amplitude(const Configuration& c) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), c,
                             [](const Term& t, const Configuration& key) { return t.first < key; });
  if (it == terms_.end() || it->first != c) return {};
  return it->second;
}

Superposition Superposition::scaled(std::complex<double> factor) const {
  std::vector<Term> out = terms_;
  for (auto& t : out) t.second *= factor;
  return from_terms(std::move(out));
}

Superposition operator+(const Superposition& a, const Superposition& b) {
  std::vector<Superposition::Term> all = a.terms_;
  all.insert(all.end(), b.terms_.begin(), b.terms_.end());
  return Superposition::from_terms(std::move(all));
}

std::complex<double> inner_product(const Superposition& a, const Superposition& b) {
  std::complex<double> sum{};
  auto ia = a.terms().begin();
  auto ib = b.terms().begin();
  while (ia != a.terms().end() && ib != b.terms().end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      sum += std::conj(ia->second) * ib->second;
      ++ia;
      ++ib;
    }
  }
  return sum;
}

// QuantumMachine -----------------------------------------------------------

std::optional<StateId> QuantumMachine::find_state(std::string_view n) const { return index_of(states, n); }

std::optional<TapeSymbol> QuantumMachine::find_tape_symbol(std::string_view token) const {
  if (token == "#") return left_marker();
  if (token == "$") return right_marker();
  if (auto i = index_of(input_alphabet, token)) return static_cast<TapeSymbol>(*i + 1);
  return std::nullopt;
}

std::optional<QueueSymbol> QuantumMachine::find_queue_symbol(std::string_view token) const {
  if (auto i = index_of(queue_alphabet, token)) return static_cast<QueueSymbol>(*i);
  return std::nullopt;
}

std::string QuantumMachine::tape_symbol_name(TapeSymbol s) const {
  if (s == left_marker()) return "#";
  if (s == right_marker()) return "$";
  return input_alphabet.at(s - 1u);
}

std::string QuantumMachine::queue_symbol_name(QueueSymbol s) const {
  if (s == kBottom) return "_";
  return queue_alphabet.at(static_cast<std::size_t>(s));
}

std::vector<TapeSymbol> QuantumMachine::tape(std::string_view input) const {
  std::vector<TapeSymbol> out;
  out.reserve(input.size() + 2);
  out.push_back(left_marker());
  for (char ch : input) {
    auto s = index_of(input_alphabet, std::string_view(&ch, 1));
    if (!s) throw InputError(std::string("symbol '") + ch + "' is not in the input alphabet");
    out.push_back(static_cast<TapeSymbol>(*s + 1));
  }
  out.push_back(right_marker());
  return out;
}

std::vector<std::pair<QueueSymbol, QueueSymbol>> QuantumMachine::queue_key_pairs() const {
  std::vector<std::pair<QueueSymbol, QueueSymbol>> pairs{{kBottom, kBottom}};
  const auto n = static_cast<QueueSymbol>(queue_alphabet.size());
  for (QueueSymbol f = 0; f < n; ++f)
    for (QueueSymbol r = 0; r < n; ++r) pairs.emplace_back(f, r);
  return pairs;
}

void validate(const QuantumMachine& m) {
  if (m.states.empty()) throw ValidationError("machine has no states");
  check_unique(m.states, "state");
  check_input_alphabet(m.input_alphabet);
  check_queue_alphabet(m.queue_alphabet);
  const auto n_states = m.states.size();
  if (m.start >= n_states) throw ValidationError("start state out of range");
  for (auto s : m.accept)
    if (s >= n_states) throw ValidationError("accept state out of range");
  for (auto s : m.reject) {
    if (s >= n_states) throw ValidationError("reject state out of range");
    if (m.accept.contains(s)) throw ValidationError("state '" + m.states[s] + "' is both accepting and rejecting");
  }
  if (m.head_policy && m.head_policy->size() != n_states)
    throw ValidationError("head policy must assign a direction to every state");

  for (const auto& [key, moves] : m.table) {
    if (key.state >= n_states) throw ValidationError("transition source out of range");
    if (key.symbol >= m.tape_symbol_count()) throw ValidationError("transition symbol out of range");
    check_key_pair(key.front, key.rear, m.queue_alphabet.size());
    for (const auto& t : moves) {
      if (t.target >= n_states) throw ValidationError("transition target out of range");
      if (t.write != kEmptyWord && (t.write < 0 || static_cast<std::size_t>(t.write) >= m.queue_alphabet.size()))
        throw ValidationError("written queue symbol out of range");
      if (m.realtime && t.direction != Direction::right)
        throw ValidationError("real-time machine moves the head other than right from state '" +
                              m.states[key.state] + "'");
      if (m.head_policy && (*m.head_policy)[t.target] != t.direction)
        throw ValidationError("direction into '" + m.states[t.target] + "' disagrees with the head policy");
      if (std::abs(t.amplitude.value) > 1.0 + kStructuralTolerance)
        throw ValidationError("transition amplitude exceeds 1 in magnitude");
    }
  }
}

std::string sink_name(std::string_view state) { return "sink_" + std::string(state); }

QuantumMachine complete_machine(const QuantumMachine& m) {
  QuantumMachine out = m;
  out.completion = Completion::sink;
  const auto pairs = m.queue_key_pairs();
  const auto n_original = static_cast<StateId>(m.states.size());
  const Direction sink_dir = m.realtime ? Direction::right : Direction::stay;

  for (StateId q = 0; q < n_original; ++q) {
    if (m.is_halting(q)) continue;
    std::optional<StateId> sink;
    for (TapeSymbol sym = 0; sym < m.tape_symbol_count(); ++sym) {
      for (auto [front, rear] : pairs) {
        QuantumKey key{q, sym, front, rear};
        if (out.table.contains(key)) continue;
        if (!sink) {
          const auto name = sink_name(m.states[q]);
          if (auto existing = out.find_state(name)) {
            const bool is_plain_sink = out.is_rejecting(*existing) &&
                                       std::none_of(out.table.begin(), out.table.end(),
                                                    [&](const auto& kv) { return kv.first.state == *existing; });
            if (!is_plain_sink) throw ValidationError("state '" + name + "' collides with a completion sink");
            sink = *existing;
          } else {
            sink = static_cast<StateId>(out.states.size());
            out.states.push_back(name);
            out.reject.insert(*sink);
            if (out.head_policy) out.head_policy->push_back(sink_dir);
          }
        }
        out.table[key].push_back(QuantumTransition{Amplitude{{1.0, 0.0}, "1"}, *sink, kEmptyWord, sink_dir,
                                                   QueueOp::enqueue});
      }
    }
  }
  return out;
}

// ClassicalMachine ---------------------------------------------------------

std::optional<StateId> ClassicalMachine::find_state(std::string_view n) const { return index_of(states, n); }

std::optional<InputSymbol> ClassicalMachine::find_input_symbol(std::string_view token) const {
  if (auto i = index_of(input_alphabet, token)) return static_cast<InputSymbol>(*i);
  return std::nullopt;
}

std::optional<QueueSymbol> ClassicalMachine::find_queue_symbol(std::string_view token) const {
  if (auto i = index_of(queue_alphabet, token)) return static_cast<QueueSymbol>(*i);
  return std::nullopt;
}

std::string ClassicalMachine::input_symbol_name(InputSymbol s) const {
  if (s == kLambda) return "~";
  return input_alphabet.at(static_cast<std::size_t>(s));
}

std::string ClassicalMachine::queue_symbol_name(QueueSymbol s) const {
  if (s == kBottom) return "_";
  return queue_alphabet.at(static_cast<std::size_t>(s));
}

std::vector<InputSymbol> ClassicalMachine::encode(std::string_view input) const {
  std::vector<InputSymbol> out;
  out.reserve(input.size());
  for (char ch : input) {
    auto s = find_input_symbol(std::string_view(&ch, 1));
    if (!s) throw InputError(std::string("symbol '") + ch + "' is not in the input alphabet");
    out.push_back(*s);
  }
  return out;
}

void validate(const ClassicalMachine& m) {
  if (m.states.empty()) throw ValidationError("machine has no states");
  check_unique(m.states, "state");
  check_input_alphabet(m.input_alphabet);
  check_queue_alphabet(m.queue_alphabet);
  const auto n_states = m.states.size();
  if (m.start >= n_states) throw ValidationError("start state out of range");
  for (auto s : m.final_states)
    if (s >= n_states) throw ValidationError("final state out of range");

  for (const auto& [key, moves] : m.table) {
    if (key.state >= n_states) throw ValidationError("transition source out of range");
    if (key.symbol != kLambda && (key.symbol < 0 || static_cast<std::size_t>(key.symbol) >= m.input_alphabet.size()))
      throw ValidationError("transition symbol out of range");
    check_key_pair(key.front, key.rear, m.queue_alphabet.size());
    if (moves.empty()) throw ValidationError("empty transition row");
    for (const auto& t : moves) {
      if (t.target >= n_states) throw ValidationError("transition target out of range");
      if (t.write != kEmptyWord && (t.write < 0 || static_cast<std::size_t>(t.write) >= m.queue_alphabet.size()))
        throw ValidationError("written queue symbol out of range");
    }
    if (m.flavor == Flavor::deterministic) {
      if (moves.size() > 1)
        throw ValidationError("deterministic machine has conflicting rows for state '" + m.states[key.state] + "'");
      // lambda-determinism: a (state, front, rear) triple carries either a
      // lambda row or symbol rows, never both.
      if (key.symbol != kLambda && m.table.contains(ClassicalKey{key.state, kLambda, key.front, key.rear}))
        throw ValidationError("deterministic machine mixes lambda and symbol rows in state '" +
                              m.states[key.state] + "'");
    }
  }
}

}  // namespace qqa
