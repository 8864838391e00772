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

#include "qqa/zoo.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <iterator>
#include <set>
#include <sstream>
#include <thread>

#include "qqa/classical.hpp"
#include "qqa/quantum.hpp"

namespace qqa {

namespace {

bool all_of(std::string_view s, std::string_view allowed) {
  return s.find_first_not_of(allowed) == std::string_view::npos;
}

// a^k b for some k; returns k.
std::optional<std::size_t> a_run_then_b(std::string_view s) {
  if (s.empty() || s.back() != 'b') return std::nullopt;
  s.remove_suffix(1);
  if (!all_of(s, "a")) return std::nullopt;
  return s.size();
}

// Expands each '*' queue field into every queue symbol.
std::vector<std::string> expand(const std::vector<std::string>& lines, const std::vector<std::string>& queue) {
  std::vector<std::string> out;
  for (const auto& line : lines) {
    std::istringstream in(line);
    std::vector<std::string> tok{std::istream_iterator<std::string>(in), {}};
    std::vector<std::vector<std::string>> partial{{}};
    for (std::size_t i = 0; i < tok.size(); ++i) {
      const bool wild = tok[i] == "*" && (i == 2 || i == 3);
      std::vector<std::vector<std::string>> grown;
      for (const auto& p : partial) {
        for (const auto& choice : wild ? queue : std::vector<std::string>{tok[i]}) {
          grown.push_back(p);
          grown.back().push_back(choice);
        }
      }
      partial = std::move(grown);
    }
    for (const auto& p : partial) {
      std::string joined;
      for (const auto& t : p) joined += (joined.empty() ? "" : " ") + t;
      out.push_back(joined);
    }
  }
  return out;
}

std::string assemble(const std::string& header, const std::vector<std::string>& rows) {
  std::string text = header + "transitions\n";
  for (const auto& r : rows) text += r + '\n';
  return text;
}

}  // namespace

bool in_L1(std::string_view x) {
  if (x.size() < 3 || x.front() != 'b') return false;
  const auto c = x.find('c');
  if (c == std::string_view::npos) return false;
  const auto pre = x.substr(1, c - 1);
  const auto k = a_run_then_b(x.substr(c + 1));
  return all_of(pre, "a") && k && *k == pre.size();
}

bool in_L2(std::string_view x) {
  if (x.empty() || x.front() != 'b') return false;
  const auto c = x.find('c');
  if (c == std::string_view::npos) return false;
  const auto pre = x.substr(1, c - 1);
  const auto second_b = pre.find('b');
  if (second_b == std::string_view::npos) return false;
  const auto first = pre.substr(0, second_b);
  const auto last = pre.substr(second_b + 1);
  const auto k = a_run_then_b(x.substr(c + 1));
  return all_of(first, "a") && all_of(last, "a") && k && *k == last.size();
}

bool in_L3(std::string_view x) {
  if (x.empty() || x.front() != 'b') return false;
  const auto c = x.find('c');
  if (c == std::string_view::npos) return false;
  const auto pre = x.substr(0, c);
  if (!all_of(pre, "ab")) return false;
  const auto last_b = pre.rfind('b');
  const auto k = a_run_then_b(x.substr(c + 1));
  return k && *k == pre.size() - last_b - 1;
}

std::optional<std::pair<std::string, std::string>> lxy_split(std::string_view w) {
  const auto c = w.find('c');
  if (c == std::string_view::npos || w.find('c', c + 1) != std::string_view::npos) return std::nullopt;
  const auto left = w.substr(0, c);
  const auto right = w.substr(c + 1);
  const auto cut = left.find_first_not_of("ab");
  const auto x = left.substr(0, cut == std::string_view::npos ? left.size() : cut);
  const auto y = left.substr(x.size());
  if (!all_of(y, "01")) return std::nullopt;
  if (right.size() != left.size() || right.substr(0, y.size()) != y || right.substr(y.size()) != x)
    return std::nullopt;
  return std::make_pair(std::string(x), std::string(y));
}

bool in_Lxy(std::string_view w) { return lxy_split(w).has_value(); }

const std::vector<LanguageOracle>& oracles() {
  static const std::vector<LanguageOracle> list{
      {"L1", "abc", "b a^n c a^n b", in_L1},
      {"L2", "abc", "b a^n b a^m c a^m b", in_L2},
      {"L3", "abc", "b a^n1 b a^n2 ... b a^ni c a^ni b", in_L3},
      {"Lxy", "ab01c", "x y c y x, x over {a,b}, y over {0,1}", in_Lxy},
  };
  return list;
}

const LanguageOracle* find_oracle(std::string_view name) {
  for (const auto& o : oracles())
    if (o.name == name) return &o;
  return nullptr;
}

QuantumMachine build_mL3(Variant v) {
  const bool fixed = v == Variant::corrected;
  std::string header = std::string("quantum realtime ") + (fixed ? "mL3.corrected" : "mL3.table") +
                       "\nstates q0 q1 q2 q3 q4 q5 q_acc1 q_acc2 q_rej1\n"
                       "input a b c\nqueue A\nstart q0\naccept q_acc1 q_acc2\nreject q_rej1\n"
                       "policy q0:R q1:R q2:R q3:R q4:R q5:R q_acc1:R q_acc2:R q_rej1:R\n";
  if (fixed) header += "completion sink\n";
  std::vector<std::string> rows{
      "q0 # _ _ -> q0 - R enq 1",
      "q0 b _ _ -> q1 - R enq 1/sqrt(2)",
      "q0 b _ _ -> q2 - R enq 1/sqrt(2)",
      "q1 a _ _ -> q1 A R enq 1",
      "q1 a A A -> q1 A R enq 1",
      "q1 b A A -> q_rej1 - R enq 1",
      "q1 c A A -> q3 - R enq 1",
      "q2 a _ _ -> q2 - R enq 1",
      "q2 b _ _ -> q1 - R enq 1/sqrt(2)",
      "q2 b _ _ -> q2 - R enq 1/sqrt(2)",
      "q2 c _ _ -> q4 - R enq 1",
      "q3 a A A -> q3 - R deq 1",
      "q3 a _ _ -> q_rej1 - R deq 1",
      "q3 b A A -> q_rej1 - R deq 1",
      "q3 b _ _ -> q5 - R enq 1",
      "q4 a _ _ -> q4 - R enq 1",
      "q4 b _ _ -> q4 - R enq 1",
      "q5 $ _ _ -> q_acc1 - R enq 1",
      "q4 $ _ _ -> q_acc2 - R enq 1",
  };
  if (fixed) rows.push_back("q1 c _ _ -> q3 - R enq 1");
  return parse_quantum_machine(assemble(header, rows));
}

QuantumMachine build_mLxy(Variant v) {
  const bool fixed = v == Variant::corrected;
  std::string header = std::string("quantum realtime ") + (fixed ? "mLxy.corrected" : "mLxy.table") +
                       "\nstates q0 q1 q2 q3 q4 q_acc1 q_acc2 q_r\n"
                       "input a b 0 1 c\nqueue A B\nstart q0\naccept q_acc1 q_acc2\nreject q_r\n"
                       "policy q0:R q1:R q2:R q3:R q4:R q_acc1:R q_acc2:R q_r:R\n";
  if (fixed) header += "completion sink\n";
  std::vector<std::string> rows{
      "q0 # _ _ -> q1 - R enq 1/sqrt(3)",
      "q0 # _ _ -> q2 - R enq 1/sqrt(3)",
      "q0 # _ _ -> q_r - R enq 1/sqrt(3)",
      "q1 a _ _ -> q1 A R enq 1",
      "q1 b _ _ -> q1 B R enq 1",
      "q1 a * * -> q1 A R enq 1",
      "q1 b * * -> q1 B R enq 1",
      "q1 0 * * -> q1 - R enq 1",
      "q1 1 * * -> q1 - R enq 1",
      "q1 c * * -> q3 - R enq 1",
      "q3 0 * * -> q3 - R enq 1",
      "q3 1 * * -> q3 - R enq 1",
      "q3 a A * -> q3 - R deq 1",
      "q3 b B * -> q3 - R deq 1",
      "q3 a B * -> q_r - R deq 1",
      "q3 b A * -> q_r - R deq 1",
      "q3 $ _ _ -> q_acc1 - R deq 1",
      "q2 a _ _ -> q2 - R enq 1",
      "q2 b _ _ -> q2 - R enq 1",
      "q2 0 _ _ -> q2 A R enq 1",
      "q2 1 _ _ -> q2 B R enq 1",
      "q2 0 * * -> q2 A R enq 1",
      "q2 1 * * -> q2 B R enq 1",
      "q2 c * * -> q4 - R enq 1",
      "q4 0 A * -> q4 - R deq 1",
      "q4 1 B * -> q4 - R deq 1",
      "q4 0 B * -> q_r - R deq 1",
      "q4 1 A * -> q_r - R deq 1",
      "q4 a _ _ -> q4 - R deq 1",
      "q4 b _ _ -> q4 - R deq 1",
      "q4 $ _ _ -> q_acc2 - R deq 1",
  };
  if (fixed) {
    rows.push_back("q1 c _ _ -> q3 - R enq 1");
    rows.push_back("q2 c _ _ -> q4 - R enq 1");
  }
  return parse_quantum_machine(assemble(header, expand(rows, {"A", "B"})));
}

ClassicalMachine build_rt_rdqa_L1() {
  return parse_classical_machine(assemble("classical deterministic rdqaL1\nstates q0 q1 q2 q3\ninput a b c\n"
                                          "queue A\nstart q0\nfinal q3\n",
                                          {
                                              "q0 b _ _ -> q1 ~ keep",
                                              "q1 a _ _ -> q1 A keep",
                                              "q1 a A A -> q1 A keep",
                                              "q1 c _ _ -> q2 ~ keep",
                                              "q1 c A A -> q2 ~ keep",
                                              "q2 a A A -> q2 ~ remove",
                                              "q2 b _ _ -> q3 ~ keep",
                                          }));
}

QuantumMachine build_thm1_counterexample() {
  return parse_quantum_machine(assemble("quantum realtime thm1-counterexample\nstates q\ninput a\nqueue A0 $\n"
                                        "start q\naccept\nreject\npolicy q:R\n",
                                        {
                                            "q # _ _ -> q A0 R enq 1",
                                            "q # A0 A0 -> q A0 R enq 1",
                                            "q a A0 A0 -> q A0 R enq 1",
                                            "q $ A0 A0 -> q $ R enq 1",
                                        }));
}

const std::vector<ZooEntry>& zoo() {
  static const std::vector<ZooEntry> list{
      {"mL3.table", "L3 recognizer, rows as tabulated", [] { return Machine{build_mL3(Variant::table)}; }},
      {"mL3.corrected", "L3 recognizer with the empty-queue c row and sink completion",
       [] { return Machine{build_mL3(Variant::corrected)}; }},
      {"mLxy.table", "Lxy recognizer, rows as tabulated", [] { return Machine{build_mLxy(Variant::table)}; }},
      {"mLxy.corrected", "Lxy recognizer with empty-queue c rows and sink completion",
       [] { return Machine{build_mLxy(Variant::corrected)}; }},
      {"rdqaL1", "reversible real-time deterministic queue automaton for L1",
       [] { return Machine{build_rt_rdqa_L1()}; }},
      {"thm1-counterexample", "single-state isometry that is not unitary",
       [] { return Machine{build_thm1_counterexample()}; }},
  };
  return list;
}

std::optional<Machine> find_zoo_machine(std::string_view name) {
  if (name == "mL3") name = "mL3.corrected";
  if (name == "mLxy") name = "mLxy.corrected";
  for (const auto& e : zoo())
    if (e.name == name) return e.build();
  return std::nullopt;
}

std::vector<std::string> enumerate_strings(std::string_view alphabet, std::size_t max_len) {
  if (max_len > kMaxCorpusLength)
    throw Error("corpus length " + std::to_string(max_len) + " exceeds the limit of " +
                std::to_string(kMaxCorpusLength));
  std::vector<std::string> out{""};
  if (alphabet.empty()) return out;
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    const std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i)
      for (char ch : alphabet) out.push_back(out[i] + ch);
    begin = end;
  }
  return out;
}

const CorpusBound& corpus_bound(std::string_view oracle) {
  static const CorpusBound exact{
      "members p_acc = 1, non-members p_acc = 0",
      [](const CorpusRow& r, double tol) { return r.member ? std::abs(r.p_accept - 1.0) <= tol : r.p_accept <= tol; }};
  static const CorpusBound l3{
      "members p_acc = 1, non-members p_acc <= 1/2",
      [](const CorpusRow& r, double tol) {
        return r.member ? std::abs(r.p_accept - 1.0) <= tol : r.p_accept <= 0.5 + tol;
      }};
  static const CorpusBound lxy{
      "members with |x|,|y| >= 1 p_acc = 2/3, non-members p_rej >= 2/3",
      [](const CorpusRow& r, double tol) {
        if (!r.member) return r.p_reject >= 2.0 / 3.0 - tol;
        const auto split = lxy_split(r.input);
        if (split->first.empty() || split->second.empty()) return true;
        return std::abs(r.p_accept - 2.0 / 3.0) <= tol;
      }};
  if (oracle == "L3") return l3;
  if (oracle == "Lxy") return lxy;
  return exact;
}

namespace {

struct Probabilities {
  double acc = 0.0;
  double rej = 0.0;
  double non = 0.0;
};

class PrefixSweep {
 public:
  PrefixSweep(const QuantumRunner& runner, std::vector<TapeSymbol> symbols, std::size_t max_len)
      : runner_(runner), symbols_(std::move(symbols)), max_len_(max_len) {
    offsets_.push_back(0);
    std::size_t width = 1;
    for (std::size_t len = 0; len <= max_len; ++len) {
      offsets_.push_back(offsets_.back() + width);
      width *= symbols_.size();
    }
    results_.resize(offsets_.back());
  }

  void run(unsigned threads) {
    const auto& m = runner_.machine();
    auto first = runner_.measure(runner_.evolve_on(Superposition(Configuration{m.start, 0, {}}), m.left_marker()));
    finish(first.residual, first.p_accept, first.p_reject, 0, 0);
    if (max_len_ == 0) return;
    std::vector<std::future<void>> jobs;
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
      auto task = [&, i] {
        descend(first.residual, first.p_accept, first.p_reject, 0, 0, i);
      };
      if (threads > 1) jobs.push_back(std::async(std::launch::async, task));
      else task();
    }
    for (auto& j : jobs) j.get();
  }

  [[nodiscard]] const std::vector<Probabilities>& results() const noexcept { return results_; }

 private:
  void descend(const Superposition& psi, double acc, double rej, std::size_t depth, std::size_t rank,
               std::size_t choice) {
    auto meas = runner_.measure(runner_.evolve_on(psi, symbols_[choice]));
    const double a = acc + meas.p_accept;
    const double r = rej + meas.p_reject;
    const std::size_t next_rank = rank * symbols_.size() + choice;
    finish(meas.residual, a, r, depth + 1, next_rank);
    if (depth + 1 == max_len_) return;
    for (std::size_t i = 0; i < symbols_.size(); ++i) descend(meas.residual, a, r, depth + 1, next_rank, i);
  }

  void finish(const Superposition& psi, double acc, double rej, std::size_t depth, std::size_t rank) {
    auto meas = runner_.measure(runner_.evolve_on(psi, runner_.machine().right_marker()));
    results_[offsets_[depth] + rank] = {acc + meas.p_accept, rej + meas.p_reject, meas.residual.norm_squared()};
  }

  const QuantumRunner& runner_;
  std::vector<TapeSymbol> symbols_;
  std::size_t max_len_;
  std::vector<std::size_t> offsets_;
  std::vector<Probabilities> results_;
};

std::vector<std::string> sorted_chars(std::string_view s) {
  std::vector<std::string> out;
  for (char c : s) out.emplace_back(1, c);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

CorpusSummary corpus_sweep(const Machine& machine, const LanguageOracle& oracle, std::size_t max_len,
                           double tolerance, const std::function<void(const CorpusRow&)>& sink, unsigned threads) {
  if (max_len > kMaxCorpusLength)
    throw Error("corpus length " + std::to_string(max_len) + " exceeds the limit of " +
                std::to_string(kMaxCorpusLength));
  const auto& sigma = std::visit([](const auto& m) -> const std::vector<std::string>& { return m.input_alphabet; },
                                 machine);
  auto machine_sigma = sigma;
  std::sort(machine_sigma.begin(), machine_sigma.end());
  if (machine_sigma != sorted_chars(oracle.alphabet))
    throw AlphabetMismatch("machine and oracle '" + oracle.name + "' have different input alphabets");
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());

  const auto& bound = corpus_bound(oracle.name);
  CorpusSummary summary;
  summary.oracle = oracle.name;
  summary.bound = bound.description;
  auto take = [&](CorpusRow row) {
    row.member = oracle.contains(row.input);
    ++summary.strings;
    if (row.member) {
      ++summary.members;
      summary.min_member_p_accept = std::min(summary.min_member_p_accept, row.p_accept);
      summary.max_member_p_accept = std::max(summary.max_member_p_accept, row.p_accept);
    } else {
      summary.max_nonmember_p_accept = std::max(summary.max_nonmember_p_accept, row.p_accept);
      summary.min_nonmember_p_reject = std::min(summary.min_nonmember_p_reject, row.p_reject);
    }
    if (!bound.holds(row, tolerance)) {
      if (!summary.first_violation) summary.first_violation = row;
      ++summary.violations;
    }
    if (sink) sink(row);
  };

  const auto inputs = enumerate_strings(oracle.alphabet, max_len);
  if (const auto* q = std::get_if<QuantumMachine>(&machine); q && q->realtime) {
    const QuantumRunner runner(*q);
    std::vector<TapeSymbol> symbols;
    for (char ch : oracle.alphabet) symbols.push_back(*q->find_tape_symbol(std::string_view(&ch, 1)));
    PrefixSweep sweep(runner, symbols, max_len);
    sweep.run(threads);
    const auto& results = sweep.results();
    for (std::size_t i = 0; i < inputs.size(); ++i)
      take(CorpusRow{inputs[i], false, results[i].acc, results[i].rej, results[i].non});
  } else if (q) {
    const QuantumRunner runner(*q);
    for (const auto& x : inputs) {
      const auto r = runner.run_general(x, 16 * (x.size() + 2));
      take(CorpusRow{x, false, r.p_accept, r.p_reject, r.p_nonhalt});
    }
  } else {
    const auto& c = std::get<ClassicalMachine>(machine);
    const bool realtime = check_realtime(c).pass;
    for (const auto& x : inputs) {
      bool accepted = false;
      double non = 0.0;
      if (c.flavor == Flavor::deterministic) {
        const auto r = dqa_run(c, x);
        accepted = r.accepted();
        if (r.status == RunStatus::budget_exhausted) non = 1.0;
      } else {
        const auto r = ndqa_search(c, x, realtime);
        accepted = r.accepted;
        if (!accepted && r.cap_hit) non = 1.0;
      }
      const double acc = accepted ? 1.0 : 0.0;
      take(CorpusRow{x, false, acc, 1.0 - acc - non, non});
    }
  }
  return summary;
}

std::string corpus_tsv_header() { return "input\toracle\tp_acc\tp_rej\tp_non\n"; }

std::string corpus_tsv_row(const CorpusRow& row) {
  return row.input + '\t' + (row.member ? "1" : "0") + '\t' + format_number(row.p_accept) + '\t' +
         format_number(row.p_reject) + '\t' + format_number(row.p_nonhalt) + '\n';
}

std::string render_corpus_summary(const CorpusSummary& s) {
  std::ostringstream out;
  out << "oracle " << s.oracle << '\n';
  out << "strings " << s.strings << " members " << s.members << '\n';
  out << "min member p_acc " << format_number(s.members ? s.min_member_p_accept : 0.0) << '\n';
  out << "max member p_acc " << format_number(s.max_member_p_accept) << '\n';
  out << "max non-member p_acc " << format_number(s.max_nonmember_p_accept) << '\n';
  out << "min non-member p_rej " << format_number(s.strings > s.members ? s.min_nonmember_p_reject : 1.0) << '\n';
  out << "bound " << s.bound << ": " << (s.bound_ok() ? "ok" : "violated") << '\n';
  if (s.first_violation)
    out << "violations " << s.violations << ", first '" << s.first_violation->input << "' p_acc "
        << format_number(s.first_violation->p_accept) << " p_rej " << format_number(s.first_violation->p_reject)
        << '\n';
  return out.str();
}

}  // namespace qqa
