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

#include "qqa/format.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <optional>
#include <set>
#include <sstream>

namespace qqa {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column),
      message_(message) {}

namespace {

// Amplitudes ---------------------------------------------------------------

class AmplitudeParser {
 public:
  explicit AmplitudeParser(std::string_view text) : text_(text) {}

  std::complex<long double> parse() {
    if (text_.empty()) fail("empty amplitude");
    auto value = term();
    while (pos_ < text_.size()) {
      const char op = text_[pos_];
      if (op != '+' && op != '-') fail("expected '+', '-', '*' or '/'");
      ++pos_;
      auto rhs = term();
      value = op == '+' ? value + rhs : value - rhs;
    }
    return value;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(1, pos_ + 1, msg); }

  bool consume(std::string_view lit) {
    if (text_.substr(pos_, lit.size()) == lit) {
      pos_ += lit.size();
      return true;
    }
    return false;
  }

  std::complex<long double> term() {
    long double sign = 1.0L;
    if (consume("-")) sign = -1.0L;
    std::complex<long double> value = factor();
    for (;;) {
      if (consume("*")) {
        value *= factor();
      } else if (consume("/")) {
        const std::size_t at = pos_;
        const auto d = factor();
        if (d == std::complex<long double>{}) throw ParseError(1, at + 1, "division by zero");
        value /= d;
      } else {
        return sign * value;
      }
    }
  }

  std::complex<long double> factor() {
    if (consume("i")) return {0.0L, 1.0L};
    if (consume("sqrt(")) return {std::sqrt(radicand()), 0.0L};
    return {number(), 0.0L};
  }

  long double radicand() {
    const std::size_t start = pos_;
    const long double n = integer();
    if (n == 0.0L) throw ParseError(1, start + 1, "zero radicand");
    if (!consume(")")) fail("expected ')'");
    return n;
  }

  long double integer() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == start) fail("expected integer");
    return std::stold(std::string(text_.substr(start, pos_ - start)));
  }

  long double number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      const std::size_t from = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return pos_ > from;
    };
    if (!digits()) fail("expected number");
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      if (!digits()) fail("expected digits after '.'");
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (!digits()) fail("expected exponent digits");
    }
    return std::stold(std::string(text_.substr(start, pos_ - start)));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Machine files ------------------------------------------------------------

struct Token {
  std::string text;
  std::size_t column;
};

struct Line {
  std::size_t number;
  std::vector<Token> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    ++line_no;
    if (auto c = raw.find(';'); c != std::string_view::npos) raw = raw.substr(0, c);
    Line line{line_no, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
      const std::size_t start = i;
      while (i < raw.size() && !std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
      if (i > start) line.tokens.push_back(Token{std::string(raw.substr(start, i - start)), start + 1});
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    if (end == text.size()) break;
    pos = end + 1;
  }
  return lines;
}

bool is_reserved(std::string_view t) {
  return t == "_" || t == "-" || t == "~" || t == "->" || t == "#" || t == "$";
}

struct Header {
  bool quantum = true;
  bool realtime = true;
  Flavor flavor = Flavor::deterministic;
  std::string name;
};

struct Declarations {
  std::optional<std::vector<Token>> states, input, queue, start, accept, reject, final_states, policy, completion;
};

class FileParser {
 public:
  explicit FileParser(std::string_view text) : lines_(tokenize(text)) {}

  Machine parse() {
    if (lines_.empty()) throw ParseError(1, 1, "empty machine file");
    parse_header(lines_[0]);
    std::size_t i = 1;
    for (; i < lines_.size(); ++i) {
      const auto& line = lines_[i];
      if (line.tokens[0].text == "transitions") {
        if (line.tokens.size() != 1) fail(line, line.tokens[1], "unexpected token after 'transitions'");
        break;
      }
      parse_declaration(line);
    }
    const std::size_t transitions_line = i < lines_.size() ? lines_[i].number : (lines_.back().number + 1);
    if (i == lines_.size()) throw ParseError(transitions_line, 1, "missing 'transitions' section");
    std::vector<const Line*> rows;
    for (++i; i < lines_.size(); ++i) rows.push_back(&lines_[i]);
    if (header_.quantum) return build_quantum(rows);
    return build_classical(rows);
  }

 private:
  [[noreturn]] static void fail(const Line& line, const Token& tok, const std::string& msg) {
    throw ParseError(line.number, tok.column, msg);
  }

  void parse_header(const Line& line) {
    const auto& t = line.tokens;
    if (t.size() != 3) fail(line, t[0], "header must be '<quantum|classical> <mode> <name>'");
    if (t[0].text == "quantum") {
      header_.quantum = true;
      if (t[1].text == "realtime") header_.realtime = true;
      else if (t[1].text == "general") header_.realtime = false;
      else fail(line, t[1], "quantum mode must be 'realtime' or 'general'");
    } else if (t[0].text == "classical") {
      header_.quantum = false;
      if (t[1].text == "deterministic") header_.flavor = Flavor::deterministic;
      else if (t[1].text == "nondeterministic") header_.flavor = Flavor::nondeterministic;
      else fail(line, t[1], "classical mode must be 'deterministic' or 'nondeterministic'");
    } else {
      fail(line, t[0], "machine kind must be 'quantum' or 'classical'");
    }
    header_.name = t[2].text;
  }

  void parse_declaration(const Line& line) {
    const auto& kw = line.tokens[0];
    std::vector<Token> items(line.tokens.begin() + 1, line.tokens.end());
    auto assign = [&](std::optional<std::vector<Token>>& slot) {
      if (slot) fail(line, kw, "duplicate '" + kw.text + "' declaration");
      slot = std::move(items);
      decl_lines_[kw.text] = line.number;
    };
    if (kw.text == "states") assign(decls_.states);
    else if (kw.text == "input") assign(decls_.input);
    else if (kw.text == "queue") assign(decls_.queue);
    else if (kw.text == "start") assign(decls_.start);
    else if (header_.quantum && kw.text == "accept") assign(decls_.accept);
    else if (header_.quantum && kw.text == "reject") assign(decls_.reject);
    else if (header_.quantum && kw.text == "policy") assign(decls_.policy);
    else if (header_.quantum && kw.text == "completion") assign(decls_.completion);
    else if (!header_.quantum && kw.text == "final") assign(decls_.final_states);
    else fail(line, kw, "unknown declaration '" + kw.text + "'");
  }

  std::size_t decl_line(const char* kw) const {
    auto it = decl_lines_.find(kw);
    return it == decl_lines_.end() ? 1 : it->second;
  }

  template <typename M>
  void fill_common(M& m) {
    m.name = header_.name;
    if (!decls_.states || decls_.states->empty()) throw ParseError(decl_line("states"), 1, "missing 'states' declaration");
    for (const auto& t : *decls_.states) {
      if (is_reserved(t.text) || t.text.find(':') != std::string::npos)
        throw ParseError(decl_line("states"), t.column, "illegal state name '" + t.text + "'");
      if (std::find(m.states.begin(), m.states.end(), t.text) != m.states.end())
        throw ParseError(decl_line("states"), t.column, "duplicate state '" + t.text + "'");
      m.states.push_back(t.text);
    }
    if (decls_.input) {
      for (const auto& t : *decls_.input) {
        if (t.text.size() != 1 || is_reserved(t.text))
          throw ParseError(decl_line("input"), t.column, "illegal input symbol '" + t.text + "'");
        if (std::find(m.input_alphabet.begin(), m.input_alphabet.end(), t.text) != m.input_alphabet.end())
          throw ParseError(decl_line("input"), t.column, "duplicate input symbol '" + t.text + "'");
        m.input_alphabet.push_back(t.text);
      }
    }
    if (decls_.queue) {
      for (const auto& t : *decls_.queue) {
        const bool marker = t.text == "#" || t.text == "$";
        if (!marker && is_reserved(t.text))
          throw ParseError(decl_line("queue"), t.column, "illegal queue symbol '" + t.text + "'");
        if (std::find(m.queue_alphabet.begin(), m.queue_alphabet.end(), t.text) != m.queue_alphabet.end())
          throw ParseError(decl_line("queue"), t.column, "duplicate queue symbol '" + t.text + "'");
        m.queue_alphabet.push_back(t.text);
      }
    }
    if (!decls_.start || decls_.start->size() != 1)
      throw ParseError(decl_line("start"), 1, "'start' must name exactly one state");
    m.start = state_ref(m, decl_line("start"), decls_.start->front());
  }

  template <typename M>
  StateId state_ref(const M& m, std::size_t line, const Token& t) const {
    auto s = m.find_state(t.text);
    if (!s) throw ParseError(line, t.column, "undeclared identifier '" + t.text + "'");
    return *s;
  }

  template <typename M>
  std::set<StateId> state_set(const M& m, const char* kw, const std::optional<std::vector<Token>>& toks) const {
    std::set<StateId> out;
    if (!toks) return out;
    for (const auto& t : *toks) {
      if (!out.insert(state_ref(m, decl_line(kw), t)).second)
        throw ParseError(decl_line(kw), t.column, "duplicate state '" + t.text + "'");
    }
    return out;
  }

  template <typename M>
  std::pair<QueueSymbol, QueueSymbol> key_pair(const M& m, const Line& line, const Token& front,
                                               const Token& rear) const {
    auto one = [&](const Token& t) -> QueueSymbol {
      if (t.text == "_") return kBottom;
      auto q = m.find_queue_symbol(t.text);
      if (!q) fail(line, t, "undeclared identifier '" + t.text + "'");
      return *q;
    };
    const QueueSymbol f = one(front);
    const QueueSymbol r = one(rear);
    if ((f == kBottom) != (r == kBottom)) fail(line, front, "illegal empty-queue pair");
    return {f, r};
  }

  Machine build_quantum(const std::vector<const Line*>& rows) {
    QuantumMachine m;
    m.realtime = header_.realtime;
    fill_common(m);
    m.accept = state_set(m, "accept", decls_.accept);
    m.reject = state_set(m, "reject", decls_.reject);
    for (auto s : m.reject)
      if (m.accept.contains(s))
        throw ParseError(decl_line("reject"), 1, "state '" + m.states[s] + "' is both accepting and rejecting");
    if (decls_.completion) {
      const auto& c = *decls_.completion;
      if (c.size() != 1 || (c[0].text != "none" && c[0].text != "sink"))
        throw ParseError(decl_line("completion"), 1, "completion must be 'none' or 'sink'");
      m.completion = c[0].text == "sink" ? Completion::sink : Completion::none;
    }
    if (decls_.policy) {
      std::vector<std::optional<Direction>> policy(m.states.size());
      for (const auto& t : *decls_.policy) {
        const auto colon = t.text.rfind(':');
        if (colon == std::string::npos)
          throw ParseError(decl_line("policy"), t.column, "policy entries are written state:L|S|R");
        const auto s = state_ref(m, decl_line("policy"), Token{t.text.substr(0, colon), t.column});
        const auto d = direction(t.text.substr(colon + 1));
        if (!d) throw ParseError(decl_line("policy"), t.column, "direction must be L, S or R");
        if (policy[s]) throw ParseError(decl_line("policy"), t.column, "duplicate policy entry");
        policy[s] = *d;
      }
      std::vector<Direction> full;
      for (std::size_t s = 0; s < policy.size(); ++s) {
        if (!policy[s]) throw ParseError(decl_line("policy"), 1, "policy misses state '" + m.states[s] + "'");
        full.push_back(*policy[s]);
      }
      m.head_policy = std::move(full);
    }

    std::set<std::vector<std::string>> seen;
    for (const Line* line : rows) {
      const auto& t = line->tokens;
      if (t.size() >= 5 && t[4].text != "->") fail(*line, t[4], "expected '->'");
      if (t.size() < 9) fail(*line, t.back(), "quantum transition needs 'q s z1 zl -> q' z' D op amp'");
      if (t.size() == 9) fail(*line, t.back(), "quantum transition missing amplitude");
      if (t.size() > 10) fail(*line, t[10], "unexpected token after amplitude");
      check_duplicate(seen, *line);

      QuantumKey key;
      key.state = state_ref(m, line->number, t[0]);
      if (t[1].text == "~") fail(*line, t[1], "lambda is not allowed in quantum tables");
      auto sym = m.find_tape_symbol(t[1].text);
      if (!sym) fail(*line, t[1], "undeclared identifier '" + t[1].text + "'");
      key.symbol = *sym;
      std::tie(key.front, key.rear) = key_pair(m, *line, t[2], t[3]);

      QuantumTransition tr;
      tr.target = state_ref(m, line->number, t[5]);
      if (t[6].text == "~") fail(*line, t[6], "lambda is not allowed in quantum tables");
      if (t[6].text == "-") {
        tr.write = kEmptyWord;
      } else {
        auto w = m.find_queue_symbol(t[6].text);
        if (!w) fail(*line, t[6], "undeclared identifier '" + t[6].text + "'");
        tr.write = *w;
      }
      auto d = direction(t[7].text);
      if (!d) fail(*line, t[7], "direction must be L, S or R");
      tr.direction = *d;
      if (m.realtime && tr.direction != Direction::right)
        fail(*line, t[7], "real-time machine may only move right");
      if (m.head_policy && (*m.head_policy)[tr.target] != tr.direction)
        fail(*line, t[7], "direction disagrees with the head policy of '" + t[5].text + "'");
      if (t[8].text == "enq") tr.op = QueueOp::enqueue;
      else if (t[8].text == "deq") tr.op = QueueOp::dequeue;
      else fail(*line, t[8], "queue operation must be 'enq' or 'deq'");
      try {
        tr.amplitude = parse_amplitude(t[9].text);
      } catch (const ParseError& e) {
        throw ParseError(line->number, t[9].column + e.column() - 1, e.message());
      }

      auto& row = m.table[key];
      for (const auto& existing : row) {
        if (existing.target == tr.target && existing.write == tr.write && existing.direction == tr.direction &&
            existing.op == tr.op)
          fail(*line, t[5], "duplicate transition target");
      }
      row.push_back(std::move(tr));
    }
    try {
      validate(m);
    } catch (const ValidationError& e) {
      throw ParseError(rows.empty() ? 1 : rows.front()->number, 1, e.what());
    }
    if (m.completion == Completion::sink) {
      try {
        return complete_machine(m);
      } catch (const ValidationError& e) {
        throw ParseError(decl_line("completion"), 1, e.what());
      }
    }
    return m;
  }

  Machine build_classical(const std::vector<const Line*>& rows) {
    ClassicalMachine m;
    m.flavor = header_.flavor;
    fill_common(m);
    m.final_states = state_set(m, "final", decls_.final_states);

    std::set<std::vector<std::string>> seen;
    for (const Line* line : rows) {
      const auto& t = line->tokens;
      if (t.size() >= 5 && t[4].text != "->") fail(*line, t[4], "expected '->'");
      if (t.size() != 8) fail(*line, t.back(), "classical transition needs 'q s z1 zl -> q' z' keep|remove'");
      check_duplicate(seen, *line);

      ClassicalKey key;
      key.state = state_ref(m, line->number, t[0]);
      if (t[1].text == "-") fail(*line, t[1], "tau is not allowed in classical tables; use '~'");
      if (t[1].text == "~") {
        key.symbol = kLambda;
      } else {
        auto s = m.find_input_symbol(t[1].text);
        if (!s) fail(*line, t[1], "undeclared identifier '" + t[1].text + "'");
        key.symbol = *s;
      }
      std::tie(key.front, key.rear) = key_pair(m, *line, t[2], t[3]);

      ClassicalTransition tr;
      tr.target = state_ref(m, line->number, t[5]);
      if (t[6].text == "-") fail(*line, t[6], "tau is not allowed in classical tables; use '~'");
      if (t[6].text == "~") {
        tr.write = kEmptyWord;
      } else {
        auto w = m.find_queue_symbol(t[6].text);
        if (!w) fail(*line, t[6], "undeclared identifier '" + t[6].text + "'");
        tr.write = *w;
      }
      if (t[7].text == "keep") tr.action = QueueAction::keep;
      else if (t[7].text == "remove") tr.action = QueueAction::remove;
      else fail(*line, t[7], "queue action must be 'keep' or 'remove'");

      auto& row = m.table[key];
      if (m.flavor == Flavor::deterministic && !row.empty())
        fail(*line, t[0], "deterministic machine has conflicting rows");
      if (m.flavor == Flavor::deterministic) {
        const bool clash = key.symbol == kLambda
                               ? std::any_of(m.table.begin(), m.table.end(),
                                             [&](const auto& kv) {
                                               return kv.first.state == key.state && kv.first.front == key.front &&
                                                      kv.first.rear == key.rear && kv.first.symbol != kLambda &&
                                                      !kv.second.empty();
                                             })
                               : m.table.contains(ClassicalKey{key.state, kLambda, key.front, key.rear});
        if (clash) fail(*line, t[1], "deterministic machine has conflicting rows (lambda and symbol moves)");
      }
      row.push_back(tr);
    }
    try {
      validate(m);
    } catch (const ValidationError& e) {
      throw ParseError(rows.empty() ? 1 : rows.front()->number, 1, e.what());
    }
    return m;
  }

  static std::optional<Direction> direction(std::string_view t) {
    if (t == "L") return Direction::left;
    if (t == "S") return Direction::stay;
    if (t == "R") return Direction::right;
    return std::nullopt;
  }

  static void check_duplicate(std::set<std::vector<std::string>>& seen, const Line& line) {
    std::vector<std::string> words;
    for (const auto& t : line.tokens) words.push_back(t.text);
    if (!seen.insert(std::move(words)).second) fail(line, line.tokens[0], "duplicate transition line");
  }

  std::vector<Line> lines_;
  Header header_;
  Declarations decls_;
  std::map<std::string, std::size_t> decl_lines_;
};

char direction_letter(Direction d) {
  switch (d) {
    case Direction::left: return 'L';
    case Direction::stay: return 'S';
    case Direction::right: return 'R';
  }
  return 'R';
}

void write_list(std::ostringstream& out, const char* kw, const std::vector<std::string>& items) {
  out << kw;
  for (const auto& s : items) out << ' ' << s;
  out << '\n';
}

void write_set(std::ostringstream& out, const char* kw, const std::set<StateId>& ids,
               const std::vector<std::string>& names) {
  out << kw;
  for (auto s : ids) out << ' ' << names[s];
  out << '\n';
}

}  // namespace

Amplitude parse_amplitude(std::string_view text) {
  const auto v = AmplitudeParser(text).parse();
  return Amplitude{{static_cast<double>(v.real()), static_cast<double>(v.imag())}, std::string(text)};
}

std::string format_amplitude(const Amplitude& a) {
  if (!a.source.empty()) return a.source;
  const double re = a.value.real();
  const double im = a.value.imag();
  if (im == 0.0) return format_double(re);
  if (re == 0.0) return format_double(im) + "*i";
  const std::string imag = format_double(std::abs(im)) + "*i";
  return format_double(re) + (im < 0 ? "-" : "+") + imag;
}

Machine parse_machine(std::string_view text) { return FileParser(text).parse(); }

QuantumMachine parse_quantum_machine(std::string_view text) {
  auto m = parse_machine(text);
  if (auto* q = std::get_if<QuantumMachine>(&m)) return std::move(*q);
  throw ParseError(1, 1, "expected a quantum machine");
}

ClassicalMachine parse_classical_machine(std::string_view text) {
  auto m = parse_machine(text);
  if (auto* c = std::get_if<ClassicalMachine>(&m)) return std::move(*c);
  throw ParseError(1, 1, "expected a classical machine");
}

std::string serialize_machine(const QuantumMachine& m) {
  std::ostringstream out;
  out << "quantum " << (m.realtime ? "realtime" : "general") << ' ' << (m.name.empty() ? "unnamed" : m.name) << '\n';
  write_list(out, "states", m.states);
  write_list(out, "input", m.input_alphabet);
  write_list(out, "queue", m.queue_alphabet);
  out << "start " << m.states.at(m.start) << '\n';
  write_set(out, "accept", m.accept, m.states);
  write_set(out, "reject", m.reject, m.states);
  if (m.head_policy) {
    out << "policy";
    for (std::size_t s = 0; s < m.states.size(); ++s)
      out << ' ' << m.states[s] << ':' << direction_letter((*m.head_policy)[s]);
    out << '\n';
  }
  if (m.completion == Completion::sink) out << "completion sink\n";
  out << "transitions\n";
  for (const auto& [key, moves] : m.table) {
    for (const auto& t : moves) {
      out << m.states[key.state] << ' ' << m.tape_symbol_name(key.symbol) << ' ' << m.queue_symbol_name(key.front)
          << ' ' << m.queue_symbol_name(key.rear) << " -> " << m.states[t.target] << ' '
          << (t.write == kEmptyWord ? std::string("-") : m.queue_symbol_name(t.write)) << ' '
          << direction_letter(t.direction) << ' ' << (t.op == QueueOp::enqueue ? "enq" : "deq") << ' '
          << format_amplitude(t.amplitude) << '\n';
    }
  }
  return out.str();
}

std::string serialize_machine(const ClassicalMachine& m) {
  std::ostringstream out;
  out << "classical " << (m.flavor == Flavor::deterministic ? "deterministic" : "nondeterministic") << ' '
      << (m.name.empty() ? "unnamed" : m.name) << '\n';
  write_list(out, "states", m.states);
  write_list(out, "input", m.input_alphabet);
  write_list(out, "queue", m.queue_alphabet);
  out << "start " << m.states.at(m.start) << '\n';
  write_set(out, "final", m.final_states, m.states);
  out << "transitions\n";
  for (const auto& [key, moves] : m.table) {
    for (const auto& t : moves) {
      out << m.states[key.state] << ' ' << m.input_symbol_name(key.symbol) << ' ' << m.queue_symbol_name(key.front)
          << ' ' << m.queue_symbol_name(key.rear) << " -> " << m.states[t.target] << ' '
          << (t.write == kEmptyWord ? std::string("~") : m.queue_symbol_name(t.write)) << ' '
          << (t.action == QueueAction::keep ? "keep" : "remove") << '\n';
    }
  }
  return out.str();
}

std::string serialize_machine(const Machine& m) {
  return std::visit([](const auto& x) { return serialize_machine(x); }, m);
}

}  // namespace qqa
