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

// qqa: command-line front end over the C API.
//
// Exit codes: 0 success/accept, 1 check failure/reject, 2 inconclusive,
// 64 usage error, 65 parse error.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "qqa/qqa.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitUsage = 64;
constexpr int kExitParse = 65;

struct MachineDeleter {
  void operator()(qqa_machine* m) const { qqa_machine_free(m); }
};
using MachinePtr = std::unique_ptr<qqa_machine, MachineDeleter>;

struct StringDeleter {
  void operator()(char* s) const { qqa_string_free(s); }
};
using OwnedString = std::unique_ptr<char, StringDeleter>;

struct Exit {
  int code;
};

[[noreturn]] void die(int code, const std::string& message) {
  std::cerr << "qqa: " << message << '\n';
  throw Exit{code};
}

int exit_for(qqa_status s) {
  switch (s) {
    case QQA_OK: return kExitOk;
    case QQA_ERR_PARSE:
    case QQA_ERR_VALIDATION: return kExitParse;
    case QQA_ERR_RUN_FAULT: return kExitInconclusive;
    case QQA_ERR_INTERNAL: return kExitFail;
    default: return kExitUsage;
  }
}

void check(qqa_status s) {
  if (s != QQA_OK) die(exit_for(s), std::string(qqa_status_name(s)) + ": " + qqa_last_error());
}

std::string format_number(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string out = buf;
  if (out.find_first_of(".en") == std::string::npos) out += ".0";
  return out;
}

MachinePtr load(const std::string& ref) {
  qqa_machine* raw = nullptr;
  if (ref.rfind("zoo:", 0) == 0) {
    check(qqa_machine_from_zoo(ref.substr(4).c_str(), &raw));
    return MachinePtr(raw);
  }
  std::ifstream in(ref, std::ios::binary);
  if (!in) die(kExitUsage, "cannot read '" + ref + "'");
  std::ostringstream text;
  text << in.rdbuf();
  check(qqa_machine_parse(text.str().c_str(), &raw));
  return MachinePtr(raw);
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) die(kExitUsage, "cannot write '" + path + "'");
  out << text;
}

std::optional<double> env_tolerance() {
  const char* v = std::getenv("QA_TOLERANCE");
  if (!v || !*v) return std::nullopt;
  char* end = nullptr;
  const double t = std::strtod(v, &end);
  if (*end != '\0' || !(t > 0)) die(kExitUsage, std::string("QA_TOLERANCE must be a positive number, got '") + v + "'");
  return t;
}

int run_cli(int argc, char** argv) {
  CLI::App app{"Simulate and validate classical and quantum queue automata"};
  app.require_subcommand(1);

  std::string machine_ref, input, out_path, oracle, zoo_name;
  bool completed = false, trace = false, strict = false;
  double tolerance = 0.0;
  std::size_t max_len = 4, corpus_len = 7, max_steps = 0;

  auto* validate = app.add_subcommand("validate", "check well-formedness of a machine");
  validate->add_option("machine", machine_ref, "machine file or zoo:NAME")->required();
  validate->add_flag("--completed", completed, "sink-complete before the per-key checks");
  validate->add_option("--tolerance", tolerance, "structural tolerance");
  validate->add_option("--max-len", max_len, "input length for the empirical checks");

  auto* run = app.add_subcommand("run", "run a machine on one input");
  run->add_option("machine", machine_ref, "machine file or zoo:NAME")->required();
  run->add_option("input", input, "input string (may be empty)")->required();
  run->add_flag("--trace", trace, "print the step trace before the result");
  run->add_flag("--strict-empty-queue", strict, "accepting terms with a nonempty queue reject");
  run->add_option("--max-steps", max_steps, "step budget for general machines");

  auto* trace_cmd = app.add_subcommand("trace", "print the step trace of a run");
  trace_cmd->add_option("machine", machine_ref, "machine file or zoo:NAME")->required();
  trace_cmd->add_option("input", input, "input string (may be empty)")->required();
  trace_cmd->add_option("--out", out_path, "output file");
  trace_cmd->add_flag("--strict-empty-queue", strict, "accepting terms with a nonempty queue reject");
  trace_cmd->add_option("--max-steps", max_steps, "step budget for general machines");

  auto* corpus = app.add_subcommand("corpus", "sweep every input up to a length against an oracle");
  corpus->add_option("machine", machine_ref, "machine file or zoo:NAME")->required();
  corpus->add_option("--oracle", oracle, "oracle name")->required();
  corpus->add_option("--max-len", corpus_len, "longest input");
  corpus->add_option("--out", out_path, "TSV output file");
  corpus->add_option("--tolerance", tolerance, "probability tolerance");

  auto* zoo = app.add_subcommand("zoo", "built-in machines");
  zoo->require_subcommand(1);
  auto* zoo_list = zoo->add_subcommand("list", "list machines and oracles");
  auto* zoo_export = zoo->add_subcommand("export", "write a machine file");
  zoo_export->add_option("name", zoo_name, "machine name")->required();
  zoo_export->add_option("--out", out_path, "output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (*validate) {
    auto m = load(machine_ref);
    qqa_validate_options opt{completed ? 1 : 0, tolerance > 0 ? tolerance : env_tolerance().value_or(0.0), max_len};
    int pass = 0;
    char* report = nullptr;
    check(qqa_validate(m.get(), &opt, &pass, &report));
    OwnedString owned(report);
    std::cout << report;
    return pass ? kExitOk : kExitFail;
  }

  if (*run || *trace_cmd) {
    auto m = load(machine_ref);
    const bool want_trace = *trace_cmd || trace;
    qqa_run_options opt{want_trace ? 1 : 0, strict ? 1 : 0, max_steps};
    qqa_run_result r{};
    char* text = nullptr;
    check(qqa_run(m.get(), input.c_str(), &opt, &r, want_trace ? &text : nullptr));
    OwnedString owned(text);
    if (*trace_cmd) {
      write_output(out_path, text ? text : "");
      return kExitOk;
    }
    if (text) std::cout << text;
    std::cout << format_number(r.p_accept) << ' ' << format_number(r.p_reject) << ' ' << format_number(r.p_nonhalt)
              << ' ' << r.steps << '\n';
    const double tol = env_tolerance().value_or(1e-6);
    if (r.p_accept > 0.5 + tol) return kExitOk;
    if (r.p_reject >= 0.5 - tol) return kExitFail;
    return kExitInconclusive;
  }

  if (*corpus) {
    auto m = load(machine_ref);
    const double tol = tolerance > 0 ? tolerance : env_tolerance().value_or(0.0);
    int ok = 0;
    char* tsv = nullptr;
    char* summary = nullptr;
    check(qqa_corpus(m.get(), oracle.c_str(), corpus_len, tol, &ok, out_path.empty() ? nullptr : &tsv, &summary));
    OwnedString owned_tsv(tsv), owned_summary(summary);
    if (tsv) write_output(out_path, tsv);
    std::cout << summary;
    return ok ? kExitOk : kExitFail;
  }

  if (*zoo_list) {
    char* machines = nullptr;
    char* oracles = nullptr;
    check(qqa_zoo_list(&machines));
    OwnedString owned_m(machines);
    check(qqa_oracle_list(&oracles));
    OwnedString owned_o(oracles);
    std::cout << "machines:\n";
    std::istringstream ms(machines);
    for (std::string line; std::getline(ms, line);) std::cout << "  " << line << '\n';
    std::cout << "oracles:\n";
    std::istringstream os(oracles);
    for (std::string line; std::getline(os, line);) std::cout << "  " << line << '\n';
    return kExitOk;
  }

  if (*zoo_export) {
    qqa_machine* raw = nullptr;
    check(qqa_machine_from_zoo(zoo_name.c_str(), &raw));
    MachinePtr m(raw);
    char* text = nullptr;
    check(qqa_machine_serialize(m.get(), &text));
    OwnedString owned(text);
    write_output(out_path, text);
    return kExitOk;
  }
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const Exit& e) {
    return e.code;
  }
}
