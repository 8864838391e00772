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

// The `.qa` machine-description format. See docs/machine-format.md for the
// grammar. One transition per line, ';' starts a comment, the empty queue is
// spelled "_", the empty word "-" (quantum) or "~" (classical).

#ifndef QQA_FORMAT_HPP
#define QQA_FORMAT_HPP

#include <string>
#include <string_view>
#include <variant>

#include "qqa/core.hpp"

namespace qqa {

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message);

  [[nodiscard]] std::size_t line() const noexcept { return line_; }
  [[nodiscard]] std::size_t column() const noexcept { return column_; }
  [[nodiscard]] const std::string& message() const noexcept { return message_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

using Machine = std::variant<QuantumMachine, ClassicalMachine>;

/// amp := term {('+'|'-') term}; term := ['-'] factor {('*'|'/') factor};
/// factor := number | 'sqrt(' int ')' | 'i'.
/// The source text is stored verbatim on the result. Errors carry a 1-based
/// column on line 1.
[[nodiscard]] Amplitude parse_amplitude(std::string_view text);

/// Canonical text for an amplitude: its source when present, otherwise the
/// value printed with 17 significant digits.
[[nodiscard]] std::string format_amplitude(const Amplitude& a);

[[nodiscard]] Machine parse_machine(std::string_view text);
[[nodiscard]] QuantumMachine parse_quantum_machine(std::string_view text);
[[nodiscard]] ClassicalMachine parse_classical_machine(std::string_view text);

[[nodiscard]] std::string serialize_machine(const QuantumMachine& m);
[[nodiscard]] std::string serialize_machine(const ClassicalMachine& m);
[[nodiscard]] std::string serialize_machine(const Machine& m);

}  // namespace qqa

#endif  // QQA_FORMAT_HPP
