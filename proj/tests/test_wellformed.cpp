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

#include <cmath>
#include <random>

#include "qqa/format.hpp"
#include "qqa/quantum.hpp"
#include "qqa/wellformed.hpp"
#include "qqa/zoo.hpp"
#include "support.hpp"

using namespace qqa;

namespace {

const std::string kOneState = R"(quantum realtime one
states q acc
input a
queue A
start q
accept acc
reject
policy q:R acc:R
transitions
)";

}  // namespace

TEST_CASE("local probability") {
  CHECK(check_local_probability(build_mL3(Variant::table)).pass);
  CHECK(check_local_probability(build_mLxy(Variant::table)).pass);
  const auto bad = parse_quantum_machine(kOneState + "q a _ _ -> q A R enq 0.6\nq a _ _ -> acc - R enq 0.6\n");
  const auto v = check_local_probability(bad);
  CHECK(!v.pass);
  CHECK(v.residual == doctest::Approx(0.28));
  REQUIRE(v.witness);
}

TEST_CASE("orthogonality witness for the tabulated L3 machine") {
  const auto v = check_orthogonality(build_mL3(Variant::table));
  CHECK(!v.pass);
  REQUIRE(v.witness);
  CHECK(*v.witness == "(q0,q2,b,_,_)");
}

TEST_CASE("orthogonality counts direction and operation") {
  const std::string two = R"(quantum realtime two
states p q r
input a
queue A
start p
accept r
reject
transitions
)";
  const auto same = parse_quantum_machine(two + "p a _ _ -> r - R enq 1\nq a _ _ -> r - R enq 1\n");
  CHECK(!check_orthogonality(same).pass);
  const auto split = parse_quantum_machine(two + "p a _ _ -> r - R enq 1\nq a _ _ -> r - R deq 1\n");
  CHECK(check_orthogonality(split).pass);
  const auto hadamard = parse_quantum_machine(two +
                                              "p a _ _ -> p - R enq 1/sqrt(2)\np a _ _ -> q - R enq 1/sqrt(2)\n"
                                              "q a _ _ -> p - R enq 1/sqrt(2)\nq a _ _ -> q - R enq -1/sqrt(2)\n");
  CHECK(check_orthogonality(hadamard).pass);
}

TEST_CASE("simplified isometry needs a policy") {
  const auto v = check_simplified_isometry(parse_quantum_machine(R"(quantum realtime np
states q
input a
queue A
start q
accept
reject
transitions
q a _ _ -> q - R enq 1
)"));
  CHECK(!v.applicable);
  CHECK(v.pass);
}

TEST_CASE("report structure") {
  const auto r = check_wellformed(build_mL3(Variant::table));
  CHECK(r.verdicts().size() == 6);
  CHECK(!r.all_pass());
  const auto summary = render_summary(r);
  CHECK(summary.find("orthogonality\tfail") != std::string::npos);
  CHECK(summary.find("local_probability\tpass") != std::string::npos);
}

TEST_CASE("completed check covers every key") {
  const auto table = build_mL3(Variant::table);
  CHECK(check_local_probability(table, CheckOptions{kStructuralTolerance, true}).pass);
}

TEST_CASE("counterexample machine") {
  const auto m = build_thm1_counterexample();
  CHECK(check_wellformed(m).all_pass());
  for (const std::string x : {"a", "aa"}) {
    CAPTURE(x);
    const auto iso = check_config_isometry(m, {x});
    CHECK(iso.isometry_pass);
    CHECK(!iso.coisometry_pass);
    CHECK(iso.coisometry_witness);
  }
}

TEST_CASE("config isometry catches a leak") {
  const auto r = check_config_isometry(build_mL3(Variant::table), {""});
  CHECK(!r.isometry_pass);
  REQUIRE(r.isometry_witness);
  CHECK(r.isometry_witness->find("(q0,1,_)") != std::string::npos);
}

TEST_CASE("config isometry of the corrected machines") {
  CHECK(check_config_isometry(build_mL3(Variant::corrected), enumerate_strings("abc", 5)).isometry_pass);
  CHECK(check_config_isometry(build_mLxy(Variant::corrected), enumerate_strings("ab01c", 4)).isometry_pass);
}

TEST_CASE("random isometric machines") {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 10; ++k) {
    const auto m = testing::random_isometric_machine(rng);
    const auto r = check_wellformed(m);
    for (const auto* v : r.verdicts()) {
      CAPTURE(v->name);
      CHECK(v->pass);
    }
    std::string alphabet;
    for (const auto& a : m.input_alphabet) alphabet += a;
    CHECK(check_config_isometry(m, enumerate_strings(alphabet, 3)).isometry_pass);
  }
}

TEST_CASE("per-key conditions do not imply norm preservation") {
  // The empty-word dequeue from AA lands on the image of the empty queue.
  const auto m = parse_quantum_machine(R"(quantum realtime collide
states q
input a
queue A
start q
accept
reject
policy q:R
transitions
q a _ _ -> q A R enq 1
q a A A -> q - R deq 1
)");
  CHECK(check_local_probability(m).pass);
  CHECK(check_orthogonality(m).pass);
  const auto tape = m.tape("a");
  const auto psi = Superposition::from_terms(
      {{Configuration{0, 1, {}}, std::sqrt(0.5)}, {Configuration{0, 1, QueueWord{0, 0}}, std::sqrt(0.5)}});
  const auto out = evolve_step(psi, m, tape);
  CHECK(out.norm_squared() == doctest::Approx(2.0));
}
