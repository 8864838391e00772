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

#include "qqa/classical.hpp"

#include <deque>
#include <set>
#include <sstream>

namespace qqa {

namespace {

constexpr std::size_t kMaxExplored = 2'000'000;

const std::vector<ClassicalTransition>* row(const ClassicalMachine& m, StateId q, InputSymbol s,
                                            const QueueWord& queue) {
  const auto [front, rear] = front_rear(queue);
  auto it = m.table.find(ClassicalKey{q, s, front, rear});
  return it == m.table.end() || it->second.empty() ? nullptr : &it->second;
}

ClassicalConfig apply(const ClassicalConfig& c, const ClassicalTransition& t, bool reads) {
  ClassicalConfig next{t.target, c.consumed + (reads ? 1 : 0), c.queue};
  if (t.action == QueueAction::remove) next.queue.pop_front();
  if (t.write != kEmptyWord) next.queue.push_back(t.write);
  return next;
}

void require_deterministic(const ClassicalMachine& m) {
  if (m.flavor != Flavor::deterministic) throw ValidationError("operation needs a deterministic machine");
}

std::string rule_text(const ClassicalMachine& m, const ClassicalKey& k, const ClassicalTransition& t) {
  std::ostringstream out;
  out << m.states[k.state] << ' ' << m.input_symbol_name(k.symbol) << ' ' << m.queue_symbol_name(k.front) << ' '
      << m.queue_symbol_name(k.rear) << " -> " << m.states[t.target] << ' '
      << (t.write == kEmptyWord ? std::string("~") : m.queue_symbol_name(t.write)) << ' '
      << (t.action == QueueAction::keep ? "keep" : "remove");
  return out.str();
}

}  // namespace

std::string describe(const ClassicalMachine& m, const ClassicalConfig& c) {
  std::ostringstream out;
  out << '(' << m.states[c.state] << ", " << c.consumed << ", [";
  for (std::size_t i = 0; i < c.queue.size(); ++i) out << (i ? "," : "") << m.queue_symbol_name(c.queue[i]);
  out << "])";
  return out.str();
}

std::optional<ClassicalConfig> dqa_step(const ClassicalConfig& c, const ClassicalMachine& m,
                                        const std::vector<InputSymbol>& input) {
  require_deterministic(m);
  if (const auto* r = row(m, c.state, kLambda, c.queue)) return apply(c, r->front(), false);
  if (c.consumed >= input.size()) return std::nullopt;
  if (const auto* r = row(m, c.state, input[c.consumed], c.queue)) return apply(c, r->front(), true);
  return std::nullopt;
}

std::optional<ClassicalConfig> dqa_step(const ClassicalConfig& c, const ClassicalMachine& m, std::string_view input) {
  return dqa_step(c, m, m.encode(input));
}

DqaResult dqa_run(const ClassicalMachine& m, std::string_view x, std::size_t lambda_budget) {
  require_deterministic(m);
  const auto input = m.encode(x);
  DqaResult result;
  ClassicalConfig c{m.start, 0, {}};
  while (auto next = dqa_step(c, m, input)) {
    if (next->consumed == c.consumed && ++result.lambda_steps > lambda_budget) {
      result.status = RunStatus::budget_exhausted;
      result.final_config = c;
      return result;
    }
    ++result.steps;
    c = std::move(*next);
  }
  result.final_config = c;
  result.status = c.consumed == input.size() && m.is_final(c.state) ? RunStatus::accepted : RunStatus::rejected;
  return result;
}

NdqaResult ndqa_search(const ClassicalMachine& m, std::string_view x, bool realtime, std::size_t step_cap) {
  const auto input = m.encode(x);
  if (realtime) {
    for (const auto& [key, moves] : m.table)
      if (key.symbol == kLambda) throw ValidationError("real-time search on a machine with lambda rows");
  }
  const std::size_t cap = realtime ? input.size() : (step_cap ? step_cap : 10 * (input.size() + 1));

  NdqaResult result;
  std::set<ClassicalConfig> seen;
  std::vector<ClassicalConfig> frontier{{m.start, 0, {}}};
  seen.insert(frontier.front());
  for (std::size_t depth = 0;; ++depth) {
    std::vector<ClassicalConfig> next;
    for (const auto& c : frontier) {
      ++result.explored;
      const auto* lambda = row(m, c.state, kLambda, c.queue);
      if (!lambda && c.consumed == input.size() && m.is_final(c.state)) {
        result.accepted = true;
        return result;
      }
      std::vector<ClassicalConfig> succ;
      if (lambda)
        for (const auto& t : *lambda) succ.push_back(apply(c, t, false));
      if (c.consumed < input.size())
        if (const auto* r = row(m, c.state, input[c.consumed], c.queue))
          for (const auto& t : *r) succ.push_back(apply(c, t, true));
      for (auto& s : succ) {
        if (depth >= cap) {
          result.cap_hit = true;
          break;
        }
        if (seen.insert(s).second) next.push_back(std::move(s));
      }
    }
    if (next.empty() || result.explored > kMaxExplored) {
      if (!next.empty()) result.cap_hit = true;
      return result;
    }
    frontier = std::move(next);
  }
}

bool ndqa_accepts(const ClassicalMachine& m, std::string_view x, bool realtime) {
  return ndqa_search(m, x, realtime).accepted;
}

RealtimeReport check_realtime(const ClassicalMachine& m) {
  RealtimeReport report;
  for (const auto& [key, moves] : m.table) {
    if (key.symbol != kLambda) continue;
    report.pass = false;
    for (const auto& t : moves) report.lambda_rules.push_back(rule_text(m, key, t));
  }
  return report;
}

LambdaCountReport count_lambda_steps(const ClassicalMachine& m, const std::vector<std::string>& inputs,
                                     std::size_t lambda_budget) {
  require_deterministic(m);
  LambdaCountReport report;
  for (const auto& x : inputs) {
    const auto r = dqa_run(m, x, lambda_budget);
    if (r.status == RunStatus::budget_exhausted) report.budget_hit = true;
    report.max_steps = std::max(report.max_steps, r.lambda_steps);
    auto& slot = report.max_by_length[x.size()];
    slot = std::max(slot, r.lambda_steps);
  }
  if (report.max_by_length.size() > 1) {
    const std::size_t longest = report.max_by_length.rbegin()->second;
    std::size_t shorter = 0;
    for (auto it = report.max_by_length.begin(); std::next(it) != report.max_by_length.end(); ++it)
      shorter = std::max(shorter, it->second);
    if (longest > shorter) report.constant_on_sample = false;
  }
  if (report.budget_hit) report.constant_on_sample = false;
  return report;
}

ReversibilityReport check_reversible_empirical(const ClassicalMachine& m, std::size_t max_len) {
  require_deterministic(m);
  ReversibilityReport report;
  const ClassicalConfig start{m.start, 0, {}};
  std::set<ClassicalConfig> seen{start};
  std::deque<ClassicalConfig> work{start};
  std::map<std::pair<ClassicalConfig, InputSymbol>, ClassicalConfig> predecessor;

  auto record = [&](const ClassicalConfig& from, ClassicalConfig to, InputSymbol label) {
    auto [it, fresh] = predecessor.emplace(std::make_pair(to, label), from);
    if (!fresh && it->second != from && !report.witness) {
      report.pass = false;
      report.witness = describe(m, it->second) + " and " + describe(m, from) + " both step to " + describe(m, to) +
                       " on " + m.input_symbol_name(label);
    }
    if (seen.insert(to).second) work.push_back(std::move(to));
  };

  while (!work.empty()) {
    if (seen.size() > kMaxExplored) {
      report.truncated = true;
      break;
    }
    const ClassicalConfig c = std::move(work.front());
    work.pop_front();
    if (const auto* lambda = row(m, c.state, kLambda, c.queue)) {
      record(c, apply(c, lambda->front(), false), kLambda);
      continue;
    }
    if (c.consumed >= max_len) continue;
    for (InputSymbol s = 0; s < static_cast<InputSymbol>(m.input_alphabet.size()); ++s)
      if (const auto* r = row(m, c.state, s, c.queue)) record(c, apply(c, r->front(), true), s);
  }
  report.configurations = seen.size();
  return report;
}

}  // namespace qqa
