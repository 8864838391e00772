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

// Test-side oracles kept apart from the library: a naive path-sum
// simulator, language generators, toy machines and random isometric
// machines.

#ifndef QQA_TESTS_SUPPORT_HPP
#define QQA_TESTS_SUPPORT_HPP

#include <cmath>
#include <complex>
#include <map>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "qqa/core.hpp"
#include "qqa/format.hpp"

namespace qqa::testing {

inline constexpr double kProb = 1e-6;
inline constexpr double kStruct = 1e-9;

// Path-sum reference: configurations as plain tuples, table looked up row by
// row, queue semantics written out again.
struct RefStep {
  double p_accept = 0.0;  // cumulative
  double p_reject = 0.0;  // cumulative
  double residual = 0.0;  // squared norm, not renormalized
};

struct RefRun {
  double p_accept = 0.0;
  double p_reject = 0.0;
  double p_nonhalt = 0.0;
  std::vector<RefStep> steps;
};

inline RefRun reference_run(const QuantumMachine& m, const std::string& x) {
  using Key = std::tuple<StateId, int, std::vector<int>>;
  std::vector<int> tape{0};
  for (char ch : x) {
    int idx = -1;
    for (std::size_t i = 0; i < m.input_alphabet.size(); ++i)
      if (m.input_alphabet[i] == std::string(1, ch)) idx = static_cast<int>(i) + 1;
    if (idx < 0) throw std::runtime_error("symbol outside alphabet");
    tape.push_back(idx);
  }
  tape.push_back(static_cast<int>(m.input_alphabet.size()) + 1);

  std::map<Key, std::complex<double>> psi{{Key{m.start, 0, {}}, 1.0}};
  RefRun run;
  for (std::size_t step = 0; step < tape.size(); ++step) {
    std::map<Key, std::complex<double>> next;
    for (const auto& [cfg, amp] : psi) {
      const auto& [q, h, queue] = cfg;
      if (h < 0 || h >= static_cast<int>(tape.size())) continue;
      const int front = queue.empty() ? -1 : queue.front();
      const int rear = queue.empty() ? -1 : queue.back();
      QuantumKey key{q, static_cast<TapeSymbol>(tape[h]), static_cast<QueueSymbol>(front),
                     static_cast<QueueSymbol>(rear)};
      auto it = m.table.find(key);
      if (it == m.table.end()) continue;
      for (const auto& t : it->second) {
        std::vector<int> w = queue;
        if (t.op == QueueOp::dequeue && !w.empty()) w.erase(w.begin());
        if (t.write >= 0) w.push_back(t.write);
        const int dh = t.direction == Direction::left ? -1 : (t.direction == Direction::stay ? 0 : 1);
        next[Key{t.target, h + dh, w}] += amp * t.amplitude.value;
      }
    }
    psi.clear();
    double rest = 0.0;
    for (const auto& [cfg, amp] : next) {
      const double p = std::norm(amp);
      const StateId q = std::get<0>(cfg);
      if (m.accept.count(q)) {
        run.p_accept += p;
      } else if (m.reject.count(q)) {
        run.p_reject += p;
      } else if (p > 0.0) {
        psi.emplace(cfg, amp);
        rest += p;
      }
    }
    run.steps.push_back(RefStep{run.p_accept, run.p_reject, rest});
  }
  run.p_nonhalt = run.steps.empty() ? 1.0 : run.steps.back().residual;
  return run;
}

// All words over `alphabet` of length <= n, generated by counting.
inline std::vector<std::string> all_words(const std::string& alphabet, std::size_t n) {
  std::vector<std::string> out{""};
  std::vector<std::string> layer{""};
  for (std::size_t len = 1; len <= n; ++len) {
    std::vector<std::string> grown;
    for (const auto& w : layer)
      for (char c : alphabet) grown.push_back(w + c);
    out.insert(out.end(), grown.begin(), grown.end());
    layer = std::move(grown);
  }
  return out;
}

inline std::set<std::string> generate_L1(std::size_t max_len) {
  std::set<std::string> out;
  for (std::size_t n = 0; 2 * n + 3 <= max_len; ++n)
    out.insert("b" + std::string(n, 'a') + "c" + std::string(n, 'a') + "b");
  return out;
}

// Block sequences b a^n1 ... b a^ni followed by c a^ni b.
inline std::set<std::string> generate_L3(std::size_t max_len) {
  std::set<std::string> out;
  std::vector<std::pair<std::string, std::size_t>> prefixes;
  for (std::size_t n = 0; n + 1 <= max_len; ++n) prefixes.push_back({"b" + std::string(n, 'a'), n});
  while (!prefixes.empty()) {
    std::vector<std::pair<std::string, std::size_t>> longer;
    for (const auto& [p, last] : prefixes) {
      const std::string w = p + "c" + std::string(last, 'a') + "b";
      if (w.size() <= max_len) out.insert(w);
      for (std::size_t n = 0; p.size() + 1 + n <= max_len; ++n)
        longer.push_back({p + "b" + std::string(n, 'a'), n});
    }
    prefixes = std::move(longer);
  }
  return out;
}

// x y c y x with x over {a,b}, y over {0,1}; `proper` keeps |x|,|y| >= 1.
inline std::set<std::string> generate_Lxy(std::size_t max_len, bool proper) {
  std::set<std::string> out;
  for (const auto& x : all_words("ab", max_len))
    for (const auto& y : all_words("01", max_len)) {
      if (proper && (x.empty() || y.empty())) continue;
      if (2 * (x.size() + y.size()) + 1 <= max_len) out.insert(x + y + "c" + y + x);
    }
  return out;
}

// a^n b^n or a^n b^2n.
inline bool anbn_or_anb2n(const std::string& w) {
  const auto na = w.find_first_not_of('a');
  const std::size_t n = na == std::string::npos ? w.size() : na;
  const std::string rest = w.substr(n);
  if (rest.find_first_not_of('b') != std::string::npos) return false;
  return rest.size() == n || rest.size() == 2 * n;
}

// Nondeterministic real-time machine for a^n b^n u a^n b^2n: it guesses the
// branch and marks the last a with B.
inline const char* kAnbnText = R"(classical nondeterministic anbn
states q0 p1 p2 r1 e2 o2 f
input a b
queue A B
start q0
final q0 f
transitions
q0 a _ _ -> p1 A keep
q0 a _ _ -> p2 A keep
q0 a _ _ -> r1 B keep
q0 a _ _ -> e2 B keep
p1 a A A -> p1 A keep
p1 a A A -> r1 B keep
p2 a A A -> p2 A keep
p2 a A A -> e2 B keep
r1 b A B -> r1 ~ remove
r1 b B B -> f ~ remove
e2 b A B -> o2 ~ keep
e2 b B B -> o2 ~ keep
o2 b A B -> e2 ~ remove
o2 b B B -> f ~ remove
)";

// Two lambda moves, then a^*.
inline const char* kPrologueText = R"(classical deterministic prologue
states s0 s1 s2
input a
queue A
start s0
final s2
transitions
s0 ~ _ _ -> s1 ~ keep
s1 ~ _ _ -> s2 ~ keep
s2 a _ _ -> s2 ~ keep
)";

// a^n b followed by n lambda moves that drain the queue.
inline const char* kDrainText = R"(classical deterministic drain
states r d
input a b
queue A
start r
final d
transitions
r a _ _ -> r A keep
r a A A -> r A keep
r b A A -> d ~ keep
d ~ A A -> d ~ remove
)";

// Two paths merge into s2 after the same label.
inline const char* kMergeText = R"(classical deterministic merge
states s0 s1 s2
input a b
queue A
start s0
final s2
transitions
s0 a _ _ -> s1 ~ keep
s0 b _ _ -> s2 ~ keep
s1 a _ _ -> s2 ~ keep
s2 a _ _ -> s2 ~ keep
)";

// General machine that halts half of its residual per step while stationary
// on 'a'.
inline const char* kStationaryText = R"(quantum general stationary
states q0 r q1 acc rej
input a
queue A
start q0
accept acc
reject rej
policy q0:R r:R q1:S acc:R rej:R
transitions
q0 # _ _ -> r - R enq 1
r a _ _ -> q1 - S enq 1
q1 a _ _ -> q1 - S enq 1/sqrt(2)
q1 a _ _ -> acc - R enq 1/sqrt(2)
)";

// Moves left off the tape from '#'.
inline const char* kLeftFaultText = R"(quantum general leftfault
states q0 q1 acc
input a
queue A
start q0
accept acc
reject
policy q0:L q1:L acc:R
transitions
q0 # _ _ -> q1 - L enq 1
)";

// Gram-Schmidt on random complex vectors.
inline std::vector<std::vector<std::complex<double>>> random_unitary(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<std::vector<std::complex<double>>> cols;
  while (cols.size() < n) {
    std::vector<std::complex<double>> v(n);
    for (auto& z : v) z = {g(rng), g(rng)};
    for (const auto& c : cols) {
      std::complex<double> dot = 0.0;
      for (std::size_t i = 0; i < n; ++i) dot += std::conj(c[i]) * v[i];
      for (std::size_t i = 0; i < n; ++i) v[i] -= dot * c[i];
    }
    double norm = 0.0;
    for (const auto& z : v) norm += std::norm(z);
    norm = std::sqrt(norm);
    if (norm < 1e-6) continue;
    for (auto& z : v) z /= norm;
    cols.push_back(std::move(v));
  }
  return cols;
}

// Real-time machine with no halting states and every key specified. For
// each (symbol, front, rear) the states mix through a random unitary, every
// move goes right and enqueues a nonempty symbol chosen per (key, target),
// so the image queue determines its preimage.
inline QuantumMachine random_isometric_machine(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> states_d(2, 4), input_d(1, 2), queue_d(1, 2);
  QuantumMachine m;
  m.name = "random";
  const int ns = states_d(rng), ni = input_d(rng), nq = queue_d(rng);
  for (int i = 0; i < ns; ++i) m.states.push_back("s" + std::to_string(i));
  for (int i = 0; i < ni; ++i) m.input_alphabet.push_back(std::string(1, static_cast<char>('a' + i)));
  for (int i = 0; i < nq; ++i) m.queue_alphabet.push_back("Q" + std::to_string(i));
  m.start = 0;
  m.realtime = true;
  m.head_policy = std::vector<Direction>(ns, Direction::right);
  std::uniform_int_distribution<int> write_d(0, nq - 1);
  for (std::size_t sym = 0; sym < m.tape_symbol_count(); ++sym)
    for (auto [front, rear] : m.queue_key_pairs()) {
      const auto u = random_unitary(ns, rng);
      std::vector<QueueSymbol> writes(ns);
      for (auto& w : writes) w = static_cast<QueueSymbol>(write_d(rng));
      for (int q = 0; q < ns; ++q) {
        auto& row = m.table[QuantumKey{static_cast<StateId>(q), static_cast<TapeSymbol>(sym), front, rear}];
        for (int t = 0; t < ns; ++t)
          row.push_back(QuantumTransition{Amplitude{u[q][t], ""}, static_cast<StateId>(t), writes[t],
                                          Direction::right, QueueOp::enqueue});
      }
    }
  validate(m);
  return m;
}

// Random normalized superposition over configurations of `m` on a tape of
// `tape_len` cells with queues of length <= 3.
inline Superposition random_superposition(const QuantumMachine& m, std::size_t tape_len, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::uniform_int_distribution<int> terms_d(1, 8), len_d(0, 3);
  std::uniform_int_distribution<std::size_t> state_d(0, m.states.size() - 1), head_d(0, tape_len - 1),
      sym_d(0, m.queue_alphabet.size() - 1);
  std::vector<Superposition::Term> terms;
  const int n = terms_d(rng);
  for (int i = 0; i < n; ++i) {
    Configuration c{static_cast<StateId>(state_d(rng)), static_cast<std::int32_t>(head_d(rng)), {}};
    const int len = len_d(rng);
    for (int k = 0; k < len; ++k) c.queue.push_back(static_cast<QueueSymbol>(sym_d(rng)));
    terms.push_back({c, {g(rng), g(rng)}});
  }
  auto psi = Superposition::from_terms(std::move(terms));
  return psi.scaled(1.0 / std::sqrt(psi.norm_squared()));
}

}  // namespace qqa::testing

#endif  // QQA_TESTS_SUPPORT_HPP
