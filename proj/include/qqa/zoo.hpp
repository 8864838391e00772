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

// Reference languages, built-in machines and exhaustive corpus sweeps.

#ifndef QQA_ZOO_HPP
#define QQA_ZOO_HPP

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qqa/format.hpp"

namespace qqa {

/// b a^n c a^n b, n >= 0.
[[nodiscard]] bool in_L1(std::string_view x);
/// b a^n b a^m c a^m b, n, m >= 0.
[[nodiscard]] bool in_L2(std::string_view x);
/// b a^n1 b a^n2 ... b a^ni c a^ni b, i >= 1.
[[nodiscard]] bool in_L3(std::string_view x);
/// x y c y x with x over {a,b} and y over {0,1}.
[[nodiscard]] bool in_Lxy(std::string_view w);
/// The unique (x, y) split of an Lxy member.
[[nodiscard]] std::optional<std::pair<std::string, std::string>> lxy_split(std::string_view w);

struct LanguageOracle {
  std::string name;
  std::string alphabet;
  std::string description;
  std::function<bool(std::string_view)> contains;
};

[[nodiscard]] const std::vector<LanguageOracle>& oracles();
[[nodiscard]] const LanguageOracle* find_oracle(std::string_view name);

enum class Variant { table, corrected };

[[nodiscard]] QuantumMachine build_mL3(Variant v);
[[nodiscard]] QuantumMachine build_mLxy(Variant v);
[[nodiscard]] ClassicalMachine build_rt_rdqa_L1();
[[nodiscard]] QuantumMachine build_thm1_counterexample();

struct ZooEntry {
  std::string name;
  std::string description;
  std::function<Machine()> build;
};

[[nodiscard]] const std::vector<ZooEntry>& zoo();
/// Accepts the registered names plus the aliases mL3 and mLxy for the
/// corrected variants.
[[nodiscard]] std::optional<Machine> find_zoo_machine(std::string_view name);

inline constexpr std::size_t kMaxCorpusLength = 12;

/// All strings of length 0..max_len in length-lex order over the alphabet's
/// character order. Throws Error when max_len exceeds kMaxCorpusLength.
[[nodiscard]] std::vector<std::string> enumerate_strings(std::string_view alphabet, std::size_t max_len);

struct CorpusRow {
  std::string input;
  bool member = false;
  double p_accept = 0.0;
  double p_reject = 0.0;
  double p_nonhalt = 0.0;
};

/// Acceptance bound registered for an oracle. `holds` is true for rows the
/// bound ignores.
struct CorpusBound {
  std::string description;
  std::function<bool(const CorpusRow&, double tolerance)> holds;
};

[[nodiscard]] const CorpusBound& corpus_bound(std::string_view oracle);

class AlphabetMismatch : public Error {
 public:
  using Error::Error;
};

struct CorpusSummary {
  std::string oracle;
  std::size_t strings = 0;
  std::size_t members = 0;
  double min_member_p_accept = 1.0;
  double max_member_p_accept = 0.0;
  double max_nonmember_p_accept = 0.0;
  double min_nonmember_p_reject = 1.0;
  std::size_t violations = 0;
  std::optional<CorpusRow> first_violation;
  std::string bound;

  [[nodiscard]] bool bound_ok() const noexcept { return violations == 0; }
};

/// Runs the machine on every string up to max_len and checks the oracle's
/// bound. Rows reach `sink` in enumeration order. Real-time quantum
/// machines share prefix evolution across strings and fan out over
/// `threads` workers (0 picks the hardware concurrency).
CorpusSummary corpus_sweep(const Machine& m, const LanguageOracle& oracle, std::size_t max_len, double tolerance,
                           const std::function<void(const CorpusRow&)>& sink = {}, unsigned threads = 0);

[[nodiscard]] std::string corpus_tsv_header();
[[nodiscard]] std::string corpus_tsv_row(const CorpusRow& row);
[[nodiscard]] std::string render_corpus_summary(const CorpusSummary& s);

}  // namespace qqa

#endif  // QQA_ZOO_HPP
