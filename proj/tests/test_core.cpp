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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qqa/core.hpp"
#include "qqa/zoo.hpp"

using namespace qqa;

namespace {

QuantumMachine tiny() {
  QuantumMachine m;
  m.name = "tiny";
  m.states = {"q", "acc"};
  m.input_alphabet = {"a"};
  m.queue_alphabet = {"A"};
  m.start = 0;
  m.accept = {1};
  m.table[QuantumKey{0, 0, kBottom, kBottom}].push_back(
      QuantumTransition{Amplitude{{1.0, 0.0}, "1"}, 0, 0, Direction::right, QueueOp::enqueue});
  return m;
}

}  // namespace

TEST_CASE("queue word front and rear") {
  QueueWord w;
  CHECK(front_rear(w) == std::pair<QueueSymbol, QueueSymbol>{kBottom, kBottom});
  w.push_back(2);
  w.push_back(0);
  CHECK(front_rear(w) == std::pair<QueueSymbol, QueueSymbol>{2, 0});
  CHECK(w.size() == 2);
  w.pop_front();
  CHECK(w == QueueWord{0});
}

TEST_CASE("queue operations") {
  const QueueWord empty;
  CHECK(apply_queue_op(empty, QueueOp::enqueue, 1) == QueueWord{1});
  CHECK(apply_queue_op(empty, QueueOp::dequeue, 1) == QueueWord{1});
  CHECK(apply_queue_op(empty, QueueOp::dequeue, kEmptyWord).empty());
  const QueueWord ab{0, 1};
  CHECK(apply_queue_op(ab, QueueOp::enqueue, kEmptyWord) == ab);
  CHECK(apply_queue_op(ab, QueueOp::enqueue, 2) == QueueWord{0, 1, 2});
  CHECK(apply_queue_op(ab, QueueOp::dequeue, kEmptyWord) == QueueWord{1});
  CHECK(apply_queue_op(ab, QueueOp::dequeue, 2) == QueueWord{1, 2});
}

TEST_CASE("superposition merges and prunes") {
  Configuration c1{0, 1, {}}, c2{1, 1, {0}};
  auto psi = Superposition::from_terms({{c2, 0.5}, {c1, 0.25}, {c1, 0.25}, {c2, -0.5}, {c1, 1e-14}});
  REQUIRE(psi.size() == 1);
  CHECK(psi.terms().front().first == c1);
  CHECK(psi.amplitude(c1).real() == doctest::Approx(0.5));
  CHECK(psi.amplitude(c2) == std::complex<double>{});
  CHECK(psi.norm_squared() == doctest::Approx(0.25));
}

TEST_CASE("inner product is conjugate linear in the first argument") {
  Configuration c1{0, 0, {}}, c2{0, 1, {}};
  auto a = Superposition::from_terms({{c1, {0.0, 1.0}}, {c2, 1.0}});
  auto b = Superposition::from_terms({{c1, 1.0}});
  CHECK(inner_product(a, b) == std::complex<double>{0.0, -1.0});
  CHECK(inner_product(a, a).real() == doctest::Approx(2.0));
  const auto sum = a + b.scaled(2.0);
  CHECK(sum.amplitude(c1) == std::complex<double>{2.0, 1.0});
}

TEST_CASE("tape encoding") {
  const auto m = tiny();
  CHECK(m.tape("aa") == std::vector<TapeSymbol>{0, 1, 1, 2});
  CHECK(m.tape("") == std::vector<TapeSymbol>{0, 2});
  CHECK_THROWS_AS((void)m.tape("ab"), InputError);
}

TEST_CASE("validate rejects broken records") {
  CHECK_NOTHROW(validate(tiny()));
  auto m = tiny();
  m.start = 5;
  CHECK_THROWS_AS(validate(m), ValidationError);
  m = tiny();
  m.reject = {1};
  CHECK_THROWS_AS(validate(m), ValidationError);
  m = tiny();
  m.table.begin()->second.front().target = 9;
  CHECK_THROWS_AS(validate(m), ValidationError);
  m = tiny();
  m.input_alphabet = {"#"};
  CHECK_THROWS_AS(validate(m), ValidationError);
}

TEST_CASE("completion fills every key of non-halting states") {
  const auto c = complete_machine(tiny());
  CHECK(c.completion == Completion::sink);
  const auto sink = c.find_state(sink_name("q"));
  REQUIRE(sink);
  CHECK(c.is_rejecting(*sink));
  CHECK(!c.find_state(sink_name("acc")));
  // q over 3 tape symbols and 2 key pairs; the sink itself is halting.
  std::size_t q_rows = 0;
  for (const auto& [key, moves] : c.table) {
    if (key.state == 0) ++q_rows;
    CHECK(!c.is_halting(key.state));
  }
  CHECK(q_rows == 6);
  CHECK(c.table.at(QuantumKey{0, 0, kBottom, kBottom}) == tiny().table.at(QuantumKey{0, 0, kBottom, kBottom}));
  CHECK(complete_machine(c) == c);
}

TEST_CASE("queue key pairs") {
  auto m = tiny();
  m.queue_alphabet = {"A", "B"};
  const auto pairs = m.queue_key_pairs();
  CHECK(pairs.size() == 5);
  CHECK(pairs.front() == std::pair<QueueSymbol, QueueSymbol>{kBottom, kBottom});
}

TEST_CASE("classical record validation") {
  auto m = build_rt_rdqa_L1();
  CHECK_NOTHROW(validate(m));
  CHECK(m.encode("bacab") == std::vector<InputSymbol>{1, 0, 2, 0, 1});
  CHECK_THROWS_AS((void)m.encode("x"), InputError);
  m.final_states.insert(17);
  CHECK_THROWS_AS(validate(m), ValidationError);
}
