// Copyright 2026 The Cyclebell Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <map>
#include <set>

#include "cyclebell/stabilizer.hpp"
#include "cyclebell/rng.hpp"
#include "table3_oracle.hpp"

using namespace cyclebell;

namespace {

/// Phase-tracked product prod_j S_j^{x_j}, the slow route the closed form
/// must match.
PauliOperator generator_product(const StabilizerGroup& g, const BinaryVector& x) {
  PauliOperator p = PauliOperator::identity(g.num_qubits());
  for (int j = 0; j < x.size(); ++j)
    if (x.get(j)) p = p * g.generators()[static_cast<size_t>(j)];
  return p;
}

}  // namespace

TEST_CASE("cycle generators are S_j = Z_{j-1} X_j Z_{j+1}") {
  auto g = StabilizerGroup::cycle(CycleGraph(6));
  CHECK(g.generators()[5].str() == "+ZIIIZX");
  CHECK(g.generators()[1].str() == "+ZXZIII");
  CHECK(g.generators()[0].str() == "+XZIIIZ");
}

TEST_CASE("generators pairwise commute for several cycle sizes") {
  for (int n : {3, 4, 5, 6, 9, 12}) {
    auto g = StabilizerGroup::cycle(CycleGraph(n));
    for (size_t i = 0; i < g.generators().size(); ++i)
      for (size_t j = i + 1; j < g.generators().size(); ++j)
        CHECK(g.generators()[i].commutes_with(g.generators()[j]));
  }
}

TEST_CASE("invalid cycles are rejected") {
  CHECK_THROWS_AS(CycleGraph(2), std::invalid_argument);
  CHECK_THROWS_AS(cycle_stabilizer(2, BinaryVector(2)), std::invalid_argument);
}

TEST_CASE("closed form matches the Table III oracle on all 63 rows") {
  for (auto [input, expected] : cyclebell::testing::kC6Stabilizers) {
    BinaryVector x = BinaryVector::from_string(input);
    CHECK(cycle_stabilizer(6, x).str() == expected);
  }
  CHECK(cycle_stabilizer(6, BinaryVector(6)) == PauliOperator::identity(6));
}

TEST_CASE("sign lemma: closed form equals phase-tracked generator products") {
  for (int n = 3; n <= 10; ++n) {
    auto g = StabilizerGroup::cycle(CycleGraph(n));
    for (uint64_t bits = 0; bits < (uint64_t{1} << n); ++bits) {
      BinaryVector x(n, bits);
      CHECK(cycle_stabilizer(n, x) == generator_product(g, x));
    }
  }
  for (int n : {11, 12}) {
    auto g = StabilizerGroup::cycle(CycleGraph(n));
    RngStream rng(42 + static_cast<uint64_t>(n));
    for (int trial = 0; trial < 20000; ++trial) {
      BinaryVector x(n, rng.next_u64());
      CHECK(cycle_stabilizer(n, x) == generator_product(g, x));
    }
  }
}

TEST_CASE("connected-strings characterization of g_n") {
  // (-1)^{g_n(x)} = (-1)^{sum_j x_j x_{j+1}} * i^{sum_j x_j (x_{j-1} xor x_{j+1})},
  // and the i-exponent is twice the number of cyclic runs of 1s that have
  // length >= 2 and a boundary (the all-ones string has none).
  for (int n = 3; n <= 12; ++n)
    for (uint64_t bits = 0; bits < (uint64_t{1} << n); ++bits) {
      BinaryVector x(n, bits);
      int icount = 0, adjacent = 0, run_ends = 0;
      for (int j = 0; j < n; ++j) {
        bool prev = x.get((j + n - 1) % n), next = x.get((j + 1) % n);
        icount += x.get(j) && (prev ^ next);
        adjacent += x.get(j) && next;
        run_ends += x.get(j) && prev && !next;  // right boundary of a run of length >= 2
      }
      CHECK(icount % 2 == 0);
      CHECK(icount == 2 * run_ends);
      int rhs = (icount + 2 * adjacent) % 4;
      int lhs = cubic_sign_function(x) ? 2 : 0;
      CHECK(lhs == rhs);
    }
}

TEST_CASE("group closure: S_x S_y = S_{x xor y} including signs") {
  RngStream rng(5);
  for (int n : {3, 6, 7, 12}) {
    for (int trial = 0; trial < 500; ++trial) {
      BinaryVector x(n, rng.next_u64()), y(n, rng.next_u64());
      CHECK(cycle_stabilizer(n, x) * cycle_stabilizer(n, y) == cycle_stabilizer(n, x ^ y));
    }
  }
}

TEST_CASE("membership examples from Table III") {
  auto g = StabilizerGroup::cycle(CycleGraph(6));
  CHECK(g.membership_with_sign(PauliOperator::from_string("+IXIXIX")) == Membership::Plus);
  CHECK(g.membership_with_sign(PauliOperator::from_string("+XIYXYI")) == Membership::Minus);
  CHECK(g.membership_with_sign(PauliOperator::from_string("-XIYXYI")) == Membership::Plus);
  CHECK(g.membership_with_sign(PauliOperator::from_string("ZIIIII")) == Membership::NotMember);
  // Non-Hermitian operators are representable but never members.
  CHECK(g.membership_with_sign(PauliOperator::from_string("+iXXXXXX")) == Membership::NotMember);
}

TEST_CASE("membership agrees with the exhaustive scan") {
  RngStream rng(99);
  for (int n : {3, 5, 6, 8, 10}) {
    auto g = StabilizerGroup::cycle(CycleGraph(n));
    std::map<std::string, int> table;  // body -> sign of the group element
    for (uint64_t bits = 0; bits < (uint64_t{1} << n); ++bits) {
      PauliOperator s = cycle_stabilizer(n, BinaryVector(n, bits));
      table[s.body()] = s.sign();
    }
    // Every closed-form element and its negation classify correctly.
    for (uint64_t bits = 0; bits < (uint64_t{1} << n); ++bits) {
      PauliOperator s = cycle_stabilizer(n, BinaryVector(n, bits));
      CHECK(g.membership_with_sign(s) == Membership::Plus);
      PauliOperator neg(s.xbits(), s.zbits(), s.phase_exp() + 2);
      CHECK(g.membership_with_sign(neg) == Membership::Minus);
    }
    // Random Hermitian Paulis agree with the scan.
    for (int trial = 0; trial < 300; ++trial) {
      PauliOperator p(BinaryVector(n, rng.next_u64()), BinaryVector(n, rng.next_u64()),
                      2 * static_cast<int>(rng.next_u64() % 2));
      auto it = table.find(p.body());
      Membership want = Membership::NotMember;
      if (it != table.end()) want = (it->second == p.sign()) ? Membership::Plus : Membership::Minus;
      CHECK(g.membership_with_sign(p) == want);
    }
  }
}

TEST_CASE("submeasurements of the all-X global operator") {
  auto g6 = StabilizerGroup::cycle(CycleGraph(6));
  auto px = stabilizer_submeasurements(g6, BinaryVector(6));
  REQUIRE(px.size() == 4);
  CHECK(px[0].first == PauliOperator::identity(6));
  CHECK(px[0].second == +1);
  std::set<std::string> bodies;
  for (const auto& [p, sign] : px) {
    bodies.insert(p.body());
    CHECK(sign == +1);
  }
  CHECK(bodies == std::set<std::string>{"IIIIII", "XIXIXI", "IXIXIX", "XXXXXX"});

  // Odd cycle: the only nontrivial all-X submeasurement is the full product
  // S_0 S_1 S_2 = -XXX (sign fixed by the dense-matrix product oracle).
  auto g3 = StabilizerGroup::cycle(CycleGraph(3));
  auto p3 = stabilizer_submeasurements(g3, BinaryVector(3));
  REQUIRE(p3.size() == 2);
  CHECK(p3[1].first.body() == "XXX");
  CHECK(p3[1].second == -1);
}

TEST_CASE("submeasurement sets match Appendix B for the two-ones inputs") {
  auto g = StabilizerGroup::cycle(CycleGraph(6));
  auto px = stabilizer_submeasurements(g, BinaryVector::from_string("001010"));
  std::map<std::string, int> got;
  for (const auto& [p, sign] : px) got[p.body()] = sign;
  std::map<std::string, int> want{
      {"IIIIII", +1}, {"IXIXIX", +1}, {"XIYXYI", -1}, {"XXYIYX", -1}};
  CHECK(got == want);

  px = stabilizer_submeasurements(g, BinaryVector::from_string("101000"));
  got.clear();
  for (const auto& [p, sign] : px) got[p.body()] = sign;
  want = {{"IIIIII", +1}, {"IXIXIX", +1}, {"YXYIXI", -1}, {"YIYXXX", -1}};
  CHECK(got == want);
}

TEST_CASE("submeasurements agree with brute force for small cycles") {
  RngStream rng(1234);
  for (int n : {3, 4, 5, 6, 7, 8}) {
    auto g = StabilizerGroup::cycle(CycleGraph(n));
    for (int trial = 0; trial < 20; ++trial) {
      BinaryVector x(n, rng.next_u64());
      auto fast = stabilizer_submeasurements(g, x);
      // Brute force: every one of the 2^n submeasurements of E(1, x).
      std::set<std::string> expected;
      for (uint64_t q = 0; q < (uint64_t{1} << n); ++q) {
        BinaryVector qv(n, q);
        PauliOperator sub = PauliOperator::weyl(qv, qv & x);
        if (g.membership_with_sign(sub) != Membership::NotMember) expected.insert(sub.body());
      }
      std::set<std::string> got;
      for (const auto& [p, sign] : fast) {
        got.insert(p.body());
        CHECK(g.membership_with_sign(p) == (sign > 0 ? Membership::Plus : Membership::Minus));
        // Sign also matches the closed-form cycle sign of the support.
        CHECK(sign == (cubic_sign_function(p.xbits()) ? -1 : +1));
      }
      CHECK(got == expected);
      // Power-of-two cardinality.
      CHECK((fast.size() & (fast.size() - 1)) == 0);
    }
  }
}
