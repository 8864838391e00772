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

#include "qqa/classical.hpp"
#include "qqa/format.hpp"
#include "qqa/quantum.hpp"
#include "qqa/zoo.hpp"
#include "support.hpp"

using namespace qqa;
using testing::kProb;

TEST_CASE("run_rt matches the path-sum reference") {
  for (const auto& m : {build_mL3(Variant::corrected), build_mL3(Variant::table)}) {
    CAPTURE(m.name);
    for (const auto& x : testing::all_words("abc", 5)) {
      CAPTURE(x);
      const auto r = run_rt(m, x, true);
      const auto ref = testing::reference_run(m, x);
      CHECK(r.p_accept == doctest::Approx(ref.p_accept).epsilon(1e-12));
      CHECK(r.p_reject == doctest::Approx(ref.p_reject).epsilon(1e-12));
      CHECK(r.p_nonhalt == doctest::Approx(ref.p_nonhalt).epsilon(1e-12));
      REQUIRE(r.trace.size() == ref.steps.size());
      for (std::size_t k = 0; k < r.trace.size(); ++k)
        CHECK(r.trace[k].residual.norm_squared() == doctest::Approx(ref.steps[k].residual).epsilon(1e-12));
    }
  }
  const auto lxy = build_mLxy(Variant::corrected);
  for (const auto& x : testing::all_words("ab01c", 4)) {
    const auto r = run_rt(lxy, x);
    const auto ref = testing::reference_run(lxy, x);
    CHECK(r.p_accept == doctest::Approx(ref.p_accept).epsilon(1e-12));
    CHECK(r.p_reject == doctest::Approx(ref.p_reject).epsilon(1e-12));
  }
}

TEST_CASE("worked examples") {
  const auto m = build_mL3(Variant::corrected);
  const auto bcb = run_rt(m, "bcb");
  CHECK(std::abs(bcb.p_accept - 1.0) <= kProb);
  CHECK(bcb.steps == 5);
  const auto bacb = run_rt(m, "bacb");
  CHECK(std::abs(bacb.p_reject - 0.5) <= kProb);
  CHECK(bacb.steps == 6);
}

TEST_CASE("measurement removes halting terms without renormalizing") {
  const auto m = build_mL3(Variant::corrected);
  const auto acc = *m.find_state("q_acc1");
  const auto rej = *m.find_state("q_rej1");
  const auto psi = Superposition::from_terms({{Configuration{acc, 3, {}}, 0.6},
                                              {Configuration{rej, 3, {}}, std::complex<double>{0.0, 0.6}},
                                              {Configuration{0, 3, {}}, std::sqrt(0.28)}});
  const auto meas = measure(psi, m);
  CHECK(meas.p_accept == doctest::Approx(0.36));
  CHECK(meas.p_reject == doctest::Approx(0.36));
  CHECK(meas.residual.norm_squared() == doctest::Approx(0.28));
  CHECK(meas.residual.size() == 1);
}

TEST_CASE("strict empty queue reclassifies accepting terms") {
  const auto m = build_mL3(Variant::corrected);
  const auto acc = *m.find_state("q_acc1");
  const auto psi = Superposition::from_terms({{Configuration{acc, 3, QueueWord{0}}, 1.0}});
  CHECK(measure(psi, m).p_accept == doctest::Approx(1.0));
  const auto strict = measure(psi, m, true);
  CHECK(strict.p_accept == 0.0);
  CHECK(strict.p_reject == doctest::Approx(1.0));
}

TEST_CASE("uncompleted table leaks mass") {
  const auto r = run_rt(build_mL3(Variant::table), "");
  CHECK(r.leaked() == doctest::Approx(1.0));
}

TEST_CASE("stationary general machine") {
  const auto m = parse_quantum_machine(testing::kStationaryText);
  const auto r = run_general(m, "a", 100);
  // Two setup steps, then each step halts half of the residual.
  const std::size_t halving = r.steps - 2;
  CHECK(r.p_accept == doctest::Approx(1.0 - std::ldexp(1.0, -static_cast<int>(halving))).epsilon(1e-12));
  CHECK(r.p_accept >= 1.0 - kStructuralTolerance);
  CHECK(r.steps == 32);
  const auto capped = run_general(m, "a", 6);
  CHECK(capped.p_nonhalt == doctest::Approx(1.0 / 16.0));
  CHECK_THROWS_AS((void)run_rt(m, "a"), ValidationError);
}

TEST_CASE("leaving the tape is a run fault") {
  const auto m = parse_quantum_machine(testing::kLeftFaultText);
  CHECK_THROWS_AS((void)run_general(m, "a", 4), RunFault);
}

TEST_CASE("general runs of real-time machines agree with run_rt") {
  const auto m = build_mL3(Variant::corrected);
  for (const auto& x : testing::all_words("abc", 4)) {
    const auto a = run_rt(m, x);
    const auto b = run_general(m, x, 64);
    CHECK(a.p_accept == doctest::Approx(b.p_accept).epsilon(1e-12));
    CHECK(a.p_reject == doctest::Approx(b.p_reject).epsilon(1e-12));
    CHECK(b.steps <= a.steps);
  }
}

TEST_CASE("trace text") {
  const auto m = build_mL3(Variant::corrected);
  const auto text = emit_trace(run_rt(m, "bcb", true), m);
  CHECK(text.rfind("step 1 sym # p_acc 0.0 p_rej 0.0\nq0 1 _ 1.0 0.0\n", 0) == 0);
  CHECK(text.find("step 5 sym $") != std::string::npos);
  CHECK(text == emit_trace(run_rt(m, "bcb", true), m));
}

TEST_CASE("number formatting") {
  CHECK(format_number(1.0) == "1.0");
  CHECK(format_number(0.0) == "0.0");
  CHECK(format_number(0.5) == "0.5");
  CHECK(format_number(2.0 / 3.0) == "0.66666666666666663");
  CHECK(format_number(1e-20) == "9.9999999999999995e-21");
}

TEST_CASE("classical embedding") {
  const auto c = build_rt_rdqa_L1();
  const auto q = embed_classical(c);
  for (const auto& x : testing::all_words("abc", 6)) {
    const auto r = run_rt(q, x);
    CAPTURE(x);
    CHECK(r.p_accept == (dqa_run(c, x).accepted() ? 1.0 : 0.0));
    CHECK(r.p_accept + r.p_reject == 1.0);
  }
  CHECK_THROWS_AS((void)embed_classical(parse_classical_machine(testing::kDrainText)), ValidationError);
}

TEST_CASE("evolve_on applies one symbol to every term") {
  const auto m = build_mL3(Variant::corrected);
  QuantumRunner runner(m);
  const auto out = runner.evolve_on(Superposition(Configuration{0, 0, {}}), m.left_marker());
  REQUIRE(out.size() == 1);
  CHECK(out.terms().front().first == Configuration{0, 1, {}});
}
