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

#include <set>

#include "qqa/quantum.hpp"
#include "qqa/zoo.hpp"
#include "support.hpp"

using namespace qqa;

TEST_CASE("oracles against generated languages") {
  const auto l1 = testing::generate_L1(9);
  const auto l3 = testing::generate_L3(9);
  std::set<std::string> l2;
  for (std::size_t n = 0; n <= 5; ++n)
    for (std::size_t k = 0; 2 * k + n + 4 <= 9; ++k)
      l2.insert("b" + std::string(n, 'a') + "b" + std::string(k, 'a') + "c" + std::string(k, 'a') + "b");
  for (const auto& x : testing::all_words("abc", 9)) {
    CAPTURE(x);
    CHECK(in_L1(x) == (l1.count(x) > 0));
    CHECK(in_L2(x) == (l2.count(x) > 0));
    CHECK(in_L3(x) == (l3.count(x) > 0));
  }
  const auto lxy = testing::generate_Lxy(7, false);
  for (const auto& w : testing::all_words("ab01c", 7)) {
    CAPTURE(w);
    CHECK(in_Lxy(w) == (lxy.count(w) > 0));
  }
}

TEST_CASE("lxy split") {
  const auto s = lxy_split("ab01c01ab");
  REQUIRE(s);
  CHECK(s->first == "ab");
  CHECK(s->second == "01");
  CHECK(!lxy_split("ab01c10ab"));
  CHECK(lxy_split("c"));
}

TEST_CASE("registry") {
  std::set<std::string> names;
  for (const auto& e : zoo()) names.insert(e.name);
  CHECK(names == std::set<std::string>{"mL3.table", "mL3.corrected", "mLxy.table", "mLxy.corrected", "rdqaL1",
                                       "thm1-counterexample"});
  CHECK(find_zoo_machine("mL3"));
  CHECK(std::get<QuantumMachine>(*find_zoo_machine("mL3")) == build_mL3(Variant::corrected));
  CHECK(!find_zoo_machine("nope"));
  CHECK(find_oracle("Lxy"));
  CHECK(!find_oracle("L4"));
}

TEST_CASE("enumeration order and size") {
  const auto s = enumerate_strings("abc", 7);
  CHECK(s.size() == 3280);
  CHECK(s[0] == "");
  CHECK(s[1] == "a");
  CHECK(s[4] == "aa");
  CHECK(s.back() == "ccccccc");
  CHECK(enumerate_strings("ab01c", 9).size() == 2441406);
  CHECK_THROWS_AS((void)enumerate_strings("ab", kMaxCorpusLength + 1), Error);
}

TEST_CASE("corpus sweep matches single runs") {
  const Machine m = build_mLxy(Variant::corrected);
  const auto& q = std::get<QuantumMachine>(m);
  std::vector<CorpusRow> rows;
  const auto summary = corpus_sweep(m, *find_oracle("Lxy"), 5, kProbabilityTolerance,
                                    [&](const CorpusRow& r) { rows.push_back(r); }, 3);
  const auto inputs = enumerate_strings("ab01c", 5);
  REQUIRE(rows.size() == inputs.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].input == inputs[i]);
    const auto r = run_rt(q, inputs[i]);
    CHECK(rows[i].p_accept == r.p_accept);
    CHECK(rows[i].p_reject == r.p_reject);
  }
  CHECK(summary.strings == inputs.size());
  CHECK(summary.bound_ok());
}

TEST_CASE("corpus bounds") {
  const auto& l3 = corpus_bound("L3");
  CHECK(l3.holds(CorpusRow{"bcb", true, 1.0, 0.0, 0.0}, 1e-6));
  CHECK(!l3.holds(CorpusRow{"bbcb", true, 0.5, 0.5, 0.0}, 1e-6));
  CHECK(!l3.holds(CorpusRow{"bacb", false, 0.6, 0.4, 0.0}, 1e-6));
  const auto& lxy = corpus_bound("Lxy");
  CHECK(lxy.holds(CorpusRow{"c", true, 0.0, 1.0, 0.0}, 1e-6));
  CHECK(!lxy.holds(CorpusRow{"a0c0a", true, 0.5, 0.5, 0.0}, 1e-6));
}

TEST_CASE("alphabet mismatch") {
  const Machine m = build_mL3(Variant::corrected);
  CHECK_THROWS_AS(corpus_sweep(m, *find_oracle("Lxy"), 2, 1e-6), AlphabetMismatch);
}

TEST_CASE("classical corpus") {
  const Machine m = build_rt_rdqa_L1();
  const auto s = corpus_sweep(m, *find_oracle("L1"), 7, 1e-6);
  CHECK(s.bound_ok());
  CHECK(s.members == testing::generate_L1(7).size());
}

TEST_CASE("tsv rows") {
  CHECK(corpus_tsv_header() == "input\toracle\tp_acc\tp_rej\tp_non\n");
  CHECK(corpus_tsv_row(CorpusRow{"bcb", true, 1.0, 0.0, 0.0}) == "bcb\t1\t1.0\t0.0\t0.0\n");
}
