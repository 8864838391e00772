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

// Deterministic and nondeterministic classical queue automata: stepping,
// acceptance, real-time scans and empirical reversibility.

#ifndef QQA_CLASSICAL_HPP
#define QQA_CLASSICAL_HPP

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qqa/core.hpp"

namespace qqa {

struct ClassicalConfig {
  StateId state = 0;
  std::size_t consumed = 0;
  QueueWord queue;

  auto operator<=>(const ClassicalConfig&) const = default;
  bool operator==(const ClassicalConfig&) const = default;
};

/// One deterministic move. A lambda row for (state, front, rear) wins over
/// the row for the next unread symbol; std::nullopt means the machine halts.
/// Throws ValidationError for nondeterministic machines.
[[nodiscard]] std::optional<ClassicalConfig> dqa_step(const ClassicalConfig& c, const ClassicalMachine& m,
                                                      const std::vector<InputSymbol>& input);
[[nodiscard]] std::optional<ClassicalConfig> dqa_step(const ClassicalConfig& c, const ClassicalMachine& m,
                                                      std::string_view input);

enum class RunStatus { accepted, rejected, budget_exhausted };

struct DqaResult {
  RunStatus status = RunStatus::rejected;
  std::size_t lambda_steps = 0;
  std::size_t steps = 0;
  ClassicalConfig final_config;

  [[nodiscard]] bool accepted() const noexcept { return status == RunStatus::accepted; }
};

inline constexpr std::size_t kDefaultLambdaBudget = 4096;

/// Runs until no move applies. Accepts iff all input was consumed and the
/// last state is final; exceeding `lambda_budget` lambda moves is reported
/// as budget_exhausted.
[[nodiscard]] DqaResult dqa_run(const ClassicalMachine& m, std::string_view x,
                                std::size_t lambda_budget = kDefaultLambdaBudget);

struct NdqaResult {
  bool accepted = false;
  bool cap_hit = false;
  std::size_t explored = 0;
};

/// Breadth-first search over configurations. Acceptance needs the input
/// consumed, a final state and no applicable lambda move. In real-time mode
/// lambda rows are a ValidationError; otherwise the search depth is capped at
/// `step_cap` (0 selects 10 * (|x| + 1)).
[[nodiscard]] NdqaResult ndqa_search(const ClassicalMachine& m, std::string_view x, bool realtime,
                                     std::size_t step_cap = 0);
[[nodiscard]] bool ndqa_accepts(const ClassicalMachine& m, std::string_view x, bool realtime);

struct RealtimeReport {
  bool pass = true;
  std::vector<std::string> lambda_rules;
};

[[nodiscard]] RealtimeReport check_realtime(const ClassicalMachine& m);

struct LambdaCountReport {
  std::size_t max_steps = 0;
  std::map<std::size_t, std::size_t> max_by_length;
  bool constant_on_sample = true;
  bool budget_hit = false;

  [[nodiscard]] std::string flag() const { return constant_on_sample ? "constant on sample" : "not constant on sample"; }
};

/// Maximum lambda moves over the sample. The count is flagged as not
/// constant when the longest inputs need more lambda moves than any shorter
/// ones, or when some run exhausts the budget.
[[nodiscard]] LambdaCountReport count_lambda_steps(const ClassicalMachine& m, const std::vector<std::string>& inputs,
                                                   std::size_t lambda_budget = kDefaultLambdaBudget);

struct ReversibilityReport {
  bool pass = true;
  std::size_t configurations = 0;
  bool truncated = false;
  /// Two distinct configurations with the same successor under the same label.
  std::optional<std::string> witness;
};

/// Explores every configuration reachable from the initial one over inputs
/// of length at most `max_len` and checks that the labelled successor map is
/// injective. Labels are the consumed symbol or lambda.
[[nodiscard]] ReversibilityReport check_reversible_empirical(const ClassicalMachine& m, std::size_t max_len);

[[nodiscard]] std::string describe(const ClassicalMachine& m, const ClassicalConfig& c);

}  // namespace qqa

#endif  // QQA_CLASSICAL_HPP
