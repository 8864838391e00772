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

#include "qqa/wellformed.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "qqa/quantum.hpp"

namespace qqa {

namespace {

using Row = std::vector<QuantumTransition>;
using Match = std::function<bool(const QuantumTransition&, const QuantumTransition&)>;

// sum over pairs (a in r1, b in r2) accepted by `match` of conj(a) * b.
std::complex<double> cross(const Row& r1, const Row& r2, const Match& match) {
  std::complex<double> sum{};
  for (const auto& a : r1)
    for (const auto& b : r2)
      if (a.target == b.target && a.write == b.write && match(a, b))
        sum += std::conj(a.amplitude.value) * b.amplitude.value;
  return sum;
}

struct Shape {
  QueueSymbol front;
  QueueSymbol rear;
  auto operator<=>(const Shape&) const = default;
};

QuantumMachine prepared(const QuantumMachine& m, const CheckOptions& opt) {
  return opt.completed ? complete_machine(m) : m;
}

std::map<Shape, std::vector<std::pair<QuantumKey, const Row*>>> by_shape(const QuantumMachine& m) {
  std::map<Shape, std::vector<std::pair<QuantumKey, const Row*>>> out;
  for (const auto& [key, row] : m.table)
    if (!row.empty()) out[Shape{key.front, key.rear}].emplace_back(key, &row);
  return out;
}

std::string key_text(const QuantumMachine& m, const QuantumKey& k) {
  return "(" + m.states[k.state] + "," + m.tape_symbol_name(k.symbol) + "," + m.queue_symbol_name(k.front) + "," +
         m.queue_symbol_name(k.rear) + ")";
}

std::string pair_text(const QuantumMachine& m, const QuantumKey& a, const QuantumKey& b) {
  if (a.symbol == b.symbol)
    return "(" + m.states[a.state] + "," + m.states[b.state] + "," + m.tape_symbol_name(a.symbol) + "," +
           m.queue_symbol_name(a.front) + "," + m.queue_symbol_name(a.rear) + ")";
  return "(" + m.states[a.state] + "," + m.tape_symbol_name(a.symbol) + "," + m.states[b.state] + "," +
         m.tape_symbol_name(b.symbol) + "," + m.queue_symbol_name(a.front) + "," + m.queue_symbol_name(a.rear) + ")";
}

// Records a residual; the witness is the worst offender.
void observe(Verdict& v, double residual, double tol, const std::function<std::string()>& witness) {
  if (residual > v.residual) {
    v.residual = residual;
    if (residual > tol) v.witness = witness();
  }
  if (residual > tol) v.pass = false;
}

Verdict named(std::string name) {
  Verdict v;
  v.name = std::move(name);
  return v;
}

bool is_eps(const QuantumTransition& t) { return t.op == QueueOp::dequeue; }
bool is_omega(const QuantumTransition& t) { return t.op == QueueOp::enqueue; }

std::string format_residual(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

}  // namespace

std::string describe(const QuantumMachine& m, const Configuration& c) {
  std::string out = "(" + m.states.at(c.state) + "," + std::to_string(c.head) + ",";
  if (c.queue.empty()) out += "_";
  for (std::size_t i = 0; i < c.queue.size(); ++i) out += (i ? " " : "") + m.queue_symbol_name(c.queue[i]);
  return out + ")";
}

std::vector<const Verdict*> WellformedReport::verdicts() const {
  return {&local_probability, &orthogonality, &separability_I, &separability_II, &separability_III,
          &simplified_isometry};
}

bool WellformedReport::all_pass() const {
  for (const auto* v : verdicts())
    if (!v->pass) return false;
  return true;
}

Verdict check_local_probability(const QuantumMachine& machine, const CheckOptions& opt) {
  const auto m = prepared(machine, opt);
  Verdict v = named("local_probability");
  for (const auto& [key, row] : m.table) {
    if (row.empty()) continue;
    double sum = 0.0;
    for (const auto& t : row) sum += std::norm(t.amplitude.value);
    observe(v, std::abs(sum - 1.0), opt.tolerance, [&] { return key_text(m, key); });
  }
  return v;
}

Verdict check_orthogonality(const QuantumMachine& machine, const CheckOptions& opt) {
  const auto m = prepared(machine, opt);
  Verdict v = named("orthogonality");
  const Match same = [](const auto& a, const auto& b) { return a.direction == b.direction && a.op == b.op; };
  for (const auto& [shape, rows] : by_shape(m)) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (std::size_t j = i + 1; j < rows.size(); ++j) {
        const auto& [k1, r1] = rows[i];
        const auto& [k2, r2] = rows[j];
        if (k1.symbol != k2.symbol) continue;
        observe(v, std::abs(cross(*r1, *r2, same)), opt.tolerance, [&] { return pair_text(m, k1, k2); });
      }
    }
  }
  return v;
}

std::array<Verdict, 3> check_separability(const QuantumMachine& machine, const CheckOptions& opt) {
  const auto m = prepared(machine, opt);
  Verdict one = named("separability_I");
  Verdict two = named("separability_II");
  Verdict three = named("separability_III");
  one.note = "first equation sums the dequeue/enqueue cross term and the dequeue/dequeue term together";

  const Match eps_omega_same_d = [](const auto& a, const auto& b) {
    return a.direction == b.direction && is_eps(a) && is_omega(b);
  };
  const Match eps_eps_same_d = [](const auto& a, const auto& b) {
    return a.direction == b.direction && is_eps(a) && is_eps(b);
  };
  const Match right_vs_stay = [](const auto& a, const auto& b) {
    return a.direction == Direction::right && b.direction == Direction::stay && a.op == b.op;
  };
  const std::array<Direction, 3> dirs{Direction::left, Direction::stay, Direction::right};

  for (const auto& [shape, rows] : by_shape(m)) {
    for (const auto& [k1, r1] : rows) {
      for (const auto& [k2, r2] : rows) {
        if (k1 == k2) continue;
        auto witness = [&, &k1 = k1, &k2 = k2] { return pair_text(m, k1, k2); };
        if (k1.symbol == k2.symbol) {
          const auto cross_term = cross(*r1, *r2, eps_omega_same_d);
          const auto eps_term = cross(*r1, *r2, eps_eps_same_d);
          observe(one, std::abs(cross_term + eps_term), opt.tolerance, witness);
          observe(one, std::abs(cross_term), opt.tolerance, witness);
        }
        observe(two, std::abs(cross(*r1, *r2, right_vs_stay)), opt.tolerance, witness);
        for (auto d1 : dirs) {
          for (auto d2 : dirs) {
            if (d1 == d2) continue;
            const auto eps_omega = cross(*r1, *r2, [=](const auto& a, const auto& b) {
              return a.direction == d1 && b.direction == d2 && is_eps(a) && is_omega(b);
            });
            const auto omega_eps = cross(*r1, *r2, [=](const auto& a, const auto& b) {
              return a.direction == d1 && b.direction == d2 && is_omega(a) && is_eps(b);
            });
            observe(three, std::abs(eps_omega), opt.tolerance, witness);
            observe(three, std::abs(omega_eps), opt.tolerance, witness);
          }
        }
        observe(three, std::abs(cross(*r1, *r2, eps_omega_same_d)), opt.tolerance, witness);
      }
    }
  }
  return {one, two, three};
}

Verdict check_simplified_isometry(const QuantumMachine& machine, const CheckOptions& opt) {
  Verdict v = named("simplified_isometry");
  if (!machine.head_policy) {
    v.applicable = false;
    v.note = "no head policy";
    return v;
  }
  const auto m = prepared(machine, opt);
  const Match same_op = [](const auto& a, const auto& b) { return a.op == b.op; };
  for (const auto& [shape, rows] : by_shape(m)) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (std::size_t j = i; j < rows.size(); ++j) {
        const auto& [k1, r1] = rows[i];
        const auto& [k2, r2] = rows[j];
        if (k1.symbol != k2.symbol) continue;
        const auto g = cross(*r1, *r2, same_op);
        const double expected = i == j ? 1.0 : 0.0;
        observe(v, std::abs(g - expected), opt.tolerance,
                [&] { return i == j ? key_text(m, k1) : pair_text(m, k1, k2); });
      }
    }
  }
  return v;
}

WellformedReport check_wellformed(const QuantumMachine& machine, const CheckOptions& opt) {
  const auto m = prepared(machine, opt);
  CheckOptions inner = opt;
  inner.completed = false;
  WellformedReport r;
  r.local_probability = check_local_probability(m, inner);
  r.orthogonality = check_orthogonality(m, inner);
  auto sep = check_separability(m, inner);
  r.separability_I = std::move(sep[0]);
  r.separability_II = std::move(sep[1]);
  r.separability_III = std::move(sep[2]);
  r.simplified_isometry = check_simplified_isometry(m, inner);
  std::set<StateId> warned;
  for (const auto& [key, row] : m.table)
    if (!row.empty() && m.is_halting(key.state) && warned.insert(key.state).second)
      r.warnings.push_back("halting state '" + m.states[key.state] + "' has outgoing transitions");
  return r;
}

IsometryReport check_config_isometry(const QuantumMachine& m, const std::vector<std::string>& inputs,
                                     double tolerance) {
  const QuantumRunner runner(m);
  IsometryReport report;
  report.inputs = inputs.size();

  std::vector<std::vector<std::pair<QuantumKey, const QuantumTransition*>>> into(m.states.size());
  for (const auto& [key, row] : m.table)
    for (const auto& t : row) into[t.target].emplace_back(key, &t);

  for (const auto& x : inputs) {
    const auto tape = m.tape(x);
    const auto len = static_cast<std::int32_t>(tape.size());
    const std::size_t max_steps = m.realtime ? tape.size() : 4 * tape.size() + 16;

    std::set<Configuration> reached;
    Superposition psi(Configuration{m.start, 0, {}});
    reached.insert(psi.terms().front().first);
    for (std::size_t step = 0; step < max_steps && !psi.empty(); ++step) {
      auto next = runner.evolve(psi, tape, true);
      for (const auto& [c, a] : next.terms()) reached.insert(c);
      std::vector<Superposition::Term> keep;
      const auto meas = runner.measure(next);
      for (const auto& term : meas.residual.terms())
        if (term.first.head >= 0 && term.first.head < len) keep.push_back(term);
      psi = Superposition::from_terms(std::move(keep));
      if (step + 1 == max_steps && !psi.empty() && !m.realtime) report.truncated = true;
    }
    report.reached += reached.size();

    // Isometry: Gram matrix of the images of the readable non-halting part.
    std::vector<Configuration> domain;
    for (const auto& c : reached)
      if (!m.is_halting(c.state) && c.head >= 0 && c.head < len) domain.push_back(c);
    report.domain += domain.size();
    std::map<Configuration, std::vector<std::pair<std::size_t, std::complex<double>>>> columns;
    for (std::size_t i = 0; i < domain.size(); ++i) {
      const auto image = runner.evolve(Superposition(domain[i]), tape, true);
      const double norm_dev = std::abs(image.norm_squared() - 1.0);
      if (norm_dev > report.isometry_residual) {
        report.isometry_residual = norm_dev;
        if (norm_dev > tolerance)
          report.isometry_witness = "|U" + describe(m, domain[i]) + "|^2 = " + format_number(image.norm_squared()) +
                                    " on input '" + x + "'";
      }
      for (const auto& [c, a] : image.terms()) columns[c].emplace_back(i, a);
    }
    std::map<std::pair<std::size_t, std::size_t>, std::complex<double>> gram;
    for (const auto& [c, entries] : columns)
      for (std::size_t p = 0; p < entries.size(); ++p)
        for (std::size_t q = p + 1; q < entries.size(); ++q)
          gram[{entries[p].first, entries[q].first}] += std::conj(entries[p].second) * entries[q].second;
    for (const auto& [ij, g] : gram) {
      const double dev = std::abs(g);
      if (dev > report.isometry_residual) {
        report.isometry_residual = dev;
        if (dev > tolerance)
          report.isometry_witness = "<U" + describe(m, domain[ij.first]) + ", U" + describe(m, domain[ij.second]) +
                                    "> = " + format_number(dev) + " on input '" + x + "'";
      }
    }

    // Co-isometry: preimage weight of every reached configuration.
    for (const auto& target : reached) {
      std::map<Configuration, std::complex<double>> pre;
      for (const auto& [key, t] : into[target.state]) {
        const std::int32_t head = target.head - head_offset(t->direction);
        if (head < 0 || head >= len || tape[static_cast<std::size_t>(head)] != key.symbol) continue;
        QueueWord q = target.queue;
        if (t->write != kEmptyWord) {
          if (q.empty() || q.back() != t->write) continue;
          q.pop_back();
        }
        if (t->op == QueueOp::dequeue) {
          if (key.front == kBottom) {
            if (!q.empty()) continue;
          } else {
            QueueWord restored{key.front};
            for (std::size_t i = 0; i < q.size(); ++i) restored.push_back(q[i]);
            q = std::move(restored);
          }
        }
        if (front_rear(q) != std::make_pair(key.front, key.rear)) continue;
        pre[Configuration{key.state, head, std::move(q)}] += t->amplitude.value;
      }
      double weight = 0.0;
      for (const auto& [c, a] : pre) weight += std::norm(a);
      const double dev = std::abs(weight - 1.0);
      if (dev > report.coisometry_residual) {
        report.coisometry_residual = dev;
        if (dev > tolerance)
          report.coisometry_witness = "preimage weight of " + describe(m, target) + " is " + format_number(weight) +
                                      " on input '" + x + "'";
      }
    }
  }
  report.isometry_pass = report.isometry_residual <= tolerance;
  report.coisometry_pass = report.coisometry_residual <= tolerance;
  return report;
}

std::string render_report(const WellformedReport& r) {
  std::ostringstream out;
  for (const auto* v : r.verdicts()) {
    out << v->name << ": " << (!v->applicable ? "skipped" : (v->pass ? "pass" : "FAIL")) << " (residual "
        << format_residual(v->residual) << ")";
    if (v->witness) out << " witness " << *v->witness;
    out << '\n';
    if (!v->note.empty()) out << "  note: " << v->note << '\n';
  }
  for (const auto& w : r.warnings) out << "warning: " << w << '\n';
  return out.str();
}

std::string render_summary(const WellformedReport& r) {
  std::ostringstream out;
  for (const auto* v : r.verdicts())
    out << v->name << '\t' << (!v->applicable ? "skip" : (v->pass ? "pass" : "fail")) << '\t'
        << format_number(v->residual) << '\t' << v->witness.value_or("-") << '\n';
  return out.str();
}

std::string render_isometry(const IsometryReport& r) {
  std::ostringstream out;
  out << "configurations: " << r.reached << " reached, " << r.domain << " in domain over " << r.inputs
      << " inputs" << (r.truncated ? " (truncated)" : "") << '\n';
  out << "config_isometry: " << (r.isometry_pass ? "pass" : "FAIL") << " (residual "
      << format_residual(r.isometry_residual) << ")";
  if (r.isometry_witness) out << " witness " << *r.isometry_witness;
  out << '\n';
  out << "co_isometry (diagnostic): " << (r.coisometry_pass ? "pass" : "flagged") << " (residual "
      << format_residual(r.coisometry_residual) << ")";
  if (r.coisometry_witness) out << " witness " << *r.coisometry_witness;
  out << '\n';
  return out.str();
}

}  // namespace qqa
