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

// Well-formedness of quantum transition tables: per-key local conditions
// and configuration-level isometry diagnostics.

#ifndef QQA_WELLFORMED_HPP
#define QQA_WELLFORMED_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "qqa/core.hpp"

namespace qqa {

struct CheckOptions {
  double tolerance = kStructuralTolerance;
  /// Sink-complete the machine first so every key of a non-halting state
  /// is checked.
  bool completed = false;
};

struct Verdict {
  std::string name;
  bool pass = true;
  bool applicable = true;
  double residual = 0.0;
  std::optional<std::string> witness;
  std::string note;
};

struct WellformedReport {
  Verdict local_probability;
  Verdict orthogonality;
  Verdict separability_I;
  Verdict separability_II;
  Verdict separability_III;
  Verdict simplified_isometry;
  std::vector<std::string> warnings;

  [[nodiscard]] std::vector<const Verdict*> verdicts() const;
  [[nodiscard]] bool all_pass() const;
};

/// sum over specified moves of |amplitude|^2 equals 1 for every key.
[[nodiscard]] Verdict check_local_probability(const QuantumMachine& m, const CheckOptions& opt = {});

/// Rows of distinct states at the same (symbol, front, rear) are
/// orthogonal as vectors over (target, write, direction, op).
[[nodiscard]] Verdict check_orthogonality(const QuantumMachine& m, const CheckOptions& opt = {});

/// Conditions I, II and III, in that order.
[[nodiscard]] std::array<Verdict, 3> check_separability(const QuantumMachine& m, const CheckOptions& opt = {});

/// Needs a head policy: per (symbol, front, rear) the Gram matrix of the
/// rows over (target, write, op) is the identity on specified rows.
[[nodiscard]] Verdict check_simplified_isometry(const QuantumMachine& m, const CheckOptions& opt = {});

[[nodiscard]] WellformedReport check_wellformed(const QuantumMachine& m, const CheckOptions& opt = {});

struct IsometryReport {
  std::size_t inputs = 0;
  std::size_t reached = 0;
  std::size_t domain = 0;
  bool truncated = false;
  bool isometry_pass = true;
  double isometry_residual = 0.0;
  std::optional<std::string> isometry_witness;
  bool coisometry_pass = true;
  double coisometry_residual = 0.0;
  std::optional<std::string> coisometry_witness;
};

/// For each input, collects every configuration that appears during the
/// run. Images of the reached non-halting on-tape configurations must be
/// orthonormal (isometry). Every reached configuration must also have unit
/// preimage weight over the whole configuration space of that tape
/// (co-isometry diagnostic).
[[nodiscard]] IsometryReport check_config_isometry(const QuantumMachine& m, const std::vector<std::string>& inputs,
                                                   double tolerance = kStructuralTolerance);

[[nodiscard]] std::string render_report(const WellformedReport& r);
[[nodiscard]] std::string render_summary(const WellformedReport& r);
[[nodiscard]] std::string render_isometry(const IsometryReport& r);

[[nodiscard]] std::string describe(const QuantumMachine& m, const Configuration& c);

}  // namespace qqa

#endif  // QQA_WELLFORMED_HPP
