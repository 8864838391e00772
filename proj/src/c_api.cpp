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

#include "qqa/qqa.h"

#include <cstdlib>
#include <cstring>
#include <sstream>
#include <string>

#include "qqa/classical.hpp"
#include "qqa/format.hpp"
#include "qqa/quantum.hpp"
#include "qqa/wellformed.hpp"
#include "qqa/zoo.hpp"

struct qqa_machine {
  qqa::Machine machine;
};

namespace {

thread_local std::string last_error;

qqa_status fail(qqa_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <typename F>
qqa_status guarded(F&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const qqa::ParseError& e) {
    return fail(QQA_ERR_PARSE, e.what());
  } catch (const qqa::ValidationError& e) {
    return fail(QQA_ERR_VALIDATION, e.what());
  } catch (const qqa::InputError& e) {
    return fail(QQA_ERR_INPUT, e.what());
  } catch (const qqa::RunFault& e) {
    return fail(QQA_ERR_RUN_FAULT, e.what());
  } catch (const qqa::AlphabetMismatch& e) {
    return fail(QQA_ERR_ALPHABET, e.what());
  } catch (const qqa::Error& e) {
    return fail(QQA_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(QQA_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(QQA_ERR_INTERNAL, "unknown error");
  }
}

char* duplicate(const std::string& s) {
  auto* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void put(char** out, const std::string& s) {
  if (out) *out = duplicate(s);
}

std::string input_chars(const std::vector<std::string>& sigma) {
  std::string out;
  for (const auto& s : sigma) out += s;
  return out;
}

std::string validate_quantum(const qqa::QuantumMachine& m, const qqa_validate_options& opt, int& all_pass) {
  qqa::CheckOptions check;
  check.completed = opt.completed != 0;
  if (opt.tolerance > 0) check.tolerance = opt.tolerance;
  const auto report = qqa::check_wellformed(m, check);
  all_pass = report.all_pass() ? 1 : 0;
  std::string text = "machine " + m.name + " (quantum, " + (m.realtime ? "real-time" : "general") + ")\n";
  text += qqa::render_report(report);
  const auto target = check.completed ? qqa::complete_machine(m) : m;
  const auto inputs = qqa::enumerate_strings(input_chars(m.input_alphabet), opt.max_len);
  text += qqa::render_isometry(qqa::check_config_isometry(target, inputs, check.tolerance));
  text += std::string("result: ") + (all_pass ? "pass" : "FAIL") + '\n';
  return text;
}

std::string validate_classical(const qqa::ClassicalMachine& m, const qqa_validate_options& opt, int& all_pass) {
  std::ostringstream out;
  const bool det = m.flavor == qqa::Flavor::deterministic;
  out << "machine " << m.name << " (classical, " << (det ? "deterministic" : "nondeterministic") << ")\n";
  out << "determinism: " << (det ? "pass" : "not claimed") << '\n';
  bool ok = true;
  const auto rt = qqa::check_realtime(m);
  out << "realtime: " << (rt.pass ? "pass" : "FAIL") << '\n';
  for (const auto& r : rt.lambda_rules) out << "  lambda rule " << r << '\n';
  ok = ok && rt.pass;
  if (det) {
    const auto inputs = qqa::enumerate_strings(input_chars(m.input_alphabet), opt.max_len);
    const auto lambda = qqa::count_lambda_steps(m, inputs);
    out << "lambda_steps: max " << lambda.max_steps << " over " << inputs.size() << " inputs, " << lambda.flag()
        << (lambda.budget_hit ? " (budget hit)" : "") << '\n';
    ok = ok && lambda.constant_on_sample;
    const auto rev = qqa::check_reversible_empirical(m, opt.max_len);
    out << "reversible (max_len " << opt.max_len << "): " << (rev.pass ? "pass" : "FAIL") << " over "
        << rev.configurations << " configurations" << (rev.truncated ? " (truncated)" : "") << '\n';
    if (rev.witness) out << "  witness " << *rev.witness << '\n';
    ok = ok && rev.pass;
  }
  all_pass = ok ? 1 : 0;
  out << "result: " << (ok ? "pass" : "FAIL") << '\n';
  return out.str();
}

}  // namespace

extern "C" {

QQA_API const char* qqa_version(void) { return "1.0.0"; }

QQA_API const char* qqa_last_error(void) { return last_error.c_str(); }

QQA_API const char* qqa_status_name(qqa_status status) {
  switch (status) {
    case QQA_OK: return "ok";
    case QQA_ERR_INVALID_ARGUMENT: return "invalid argument";
    case QQA_ERR_PARSE: return "parse error";
    case QQA_ERR_VALIDATION: return "validation error";
    case QQA_ERR_INPUT: return "input error";
    case QQA_ERR_RUN_FAULT: return "run fault";
    case QQA_ERR_NOT_FOUND: return "not found";
    case QQA_ERR_ALPHABET: return "alphabet mismatch";
    case QQA_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

QQA_API void qqa_string_free(char* s) { std::free(s); }

QQA_API qqa_status qqa_machine_parse(const char* text, qqa_machine** out) {
  if (!text || !out) return fail(QQA_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new qqa_machine{qqa::parse_machine(text)};
    return QQA_OK;
  });
}

QQA_API qqa_status qqa_machine_from_zoo(const char* name, qqa_machine** out) {
  if (!name || !out) return fail(QQA_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    auto m = qqa::find_zoo_machine(name);
    if (!m) return fail(QQA_ERR_NOT_FOUND, std::string("unknown zoo machine '") + name + "'");
    *out = new qqa_machine{std::move(*m)};
    return QQA_OK;
  });
}

QQA_API void qqa_machine_free(qqa_machine* m) { delete m; }

QQA_API int qqa_machine_is_quantum(const qqa_machine* m) {
  return m && std::holds_alternative<qqa::QuantumMachine>(m->machine) ? 1 : 0;
}

QQA_API qqa_status qqa_machine_name(const qqa_machine* m, char** out) {
  if (!m || !out) return fail(QQA_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    put(out, std::visit([](const auto& x) { return x.name; }, m->machine));
    return QQA_OK;
  });
}

QQA_API qqa_status qqa_machine_serialize(const qqa_machine* m, char** out) {
  if (!m || !out) return fail(QQA_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    put(out, qqa::serialize_machine(m->machine));
    return QQA_OK;
  });
}

QQA_API qqa_status qqa_machine_complete(const qqa_machine* m, qqa_machine** out) {
  if (!m || !out) return fail(QQA_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const auto* q = std::get_if<qqa::QuantumMachine>(&m->machine);
    if (!q) return fail(QQA_ERR_INVALID_ARGUMENT, "completion applies to quantum machines");
    *out = new qqa_machine{qqa::complete_machine(*q)};
    return QQA_OK;
  });
}

QQA_API int qqa_machine_equal(const qqa_machine* a, const qqa_machine* b) {
  return a && b && a->machine == b->machine ? 1 : 0;
}

QQA_API qqa_status qqa_run(const qqa_machine* m, const char* input, const qqa_run_options* options,
                           qqa_run_result* result, char** trace_out) {
  if (!m || !input || !result) return fail(QQA_ERR_INVALID_ARGUMENT, "null argument");
  const qqa_run_options opt = options ? *options : qqa_run_options{0, 0, 0};
  return guarded([&] {
    const std::string x = input;
    if (const auto* q = std::get_if<qqa::QuantumMachine>(&m->machine)) {
      const qqa::QuantumRunner runner(*q);
      const qqa::RunOptions run_opt{opt.trace != 0 && trace_out, opt.strict_empty_queue != 0};
      const auto r = q->realtime ? runner.run_rt(x, run_opt)
                                 : runner.run_general(x, opt.max_steps ? opt.max_steps : 16 * (x.size() + 2), run_opt);
      *result = qqa_run_result{r.p_accept, r.p_reject, r.p_nonhalt, r.steps};
      if (opt.trace && trace_out) put(trace_out, qqa::emit_trace(r, *q));
      return QQA_OK;
    }
    if (opt.trace) return fail(QQA_ERR_INVALID_ARGUMENT, "traces are available for quantum machines only");
    const auto& c = std::get<qqa::ClassicalMachine>(m->machine);
    if (c.flavor == qqa::Flavor::deterministic) {
      const auto r = qqa::dqa_run(c, x);
      const double non = r.status == qqa::RunStatus::budget_exhausted ? 1.0 : 0.0;
      const double acc = r.accepted() ? 1.0 : 0.0;
      *result = qqa_run_result{acc, 1.0 - acc - non, non, r.steps};
    } else {
      const auto r = qqa::ndqa_search(c, x, qqa::check_realtime(c).pass);
      const double acc = r.accepted ? 1.0 : 0.0;
      const double non = !r.accepted && r.cap_hit ? 1.0 : 0.0;
      *result = qqa_run_result{acc, 1.0 - acc - non, non, r.explored};
    }
    return QQA_OK;
  });
}

QQA_API qqa_status qqa_validate(const qqa_machine* m, const qqa_validate_options* options, int* all_pass,
                                char** report_out) {
  if (!m || !all_pass) return fail(QQA_ERR_INVALID_ARGUMENT, "null argument");
  const qqa_validate_options opt = options ? *options : qqa_validate_options{0, 0.0, 4};
  return guarded([&] {
    int pass = 0;
    std::string text;
    if (const auto* q = std::get_if<qqa::QuantumMachine>(&m->machine)) text = validate_quantum(*q, opt, pass);
    else text = validate_classical(std::get<qqa::ClassicalMachine>(m->machine), opt, pass);
    *all_pass = pass;
    put(report_out, text);
    return QQA_OK;
  });
}

QQA_API qqa_status qqa_corpus(const qqa_machine* m, const char* oracle, size_t max_len, double tolerance,
                              int* bound_ok, char** tsv_out, char** summary_out) {
  if (!m || !oracle || !bound_ok) return fail(QQA_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const auto* o = qqa::find_oracle(oracle);
    if (!o) return fail(QQA_ERR_NOT_FOUND, std::string("unknown oracle '") + oracle + "'");
    std::string tsv;
    if (tsv_out) tsv = qqa::corpus_tsv_header();
    auto sink = [&](const qqa::CorpusRow& row) { tsv += qqa::corpus_tsv_row(row); };
    const auto summary = qqa::corpus_sweep(m->machine, *o, max_len, tolerance > 0 ? tolerance : qqa::kProbabilityTolerance,
                                           tsv_out ? std::function<void(const qqa::CorpusRow&)>(sink)
                                                   : std::function<void(const qqa::CorpusRow&)>());
    *bound_ok = summary.bound_ok() ? 1 : 0;
    put(tsv_out, tsv);
    put(summary_out, qqa::render_corpus_summary(summary));
    return QQA_OK;
  });
}

QQA_API qqa_status qqa_zoo_list(char** out) {
  if (!out) return fail(QQA_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    std::string text;
    for (const auto& e : qqa::zoo()) text += e.name + '\t' + e.description + '\n';
    put(out, text);
    return QQA_OK;
  });
}

QQA_API qqa_status qqa_oracle_list(char** out) {
  if (!out) return fail(QQA_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    std::string text;
    for (const auto& o : qqa::oracles()) text += o.name + '\t' + o.description + '\n';
    put(out, text);
    return QQA_OK;
  });
}

QQA_API qqa_status qqa_oracle_contains(const char* oracle, const char* input, int* member) {
  if (!oracle || !input || !member) return fail(QQA_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const auto* o = qqa::find_oracle(oracle);
    if (!o) return fail(QQA_ERR_NOT_FOUND, std::string("unknown oracle '") + oracle + "'");
    *member = o->contains(input) ? 1 : 0;
    return QQA_OK;
  });
}

}  // extern "C"
