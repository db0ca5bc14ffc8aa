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

#include "cyclebell/stabilizer.hpp"

#include <algorithm>
#include <bit>

#include "cyclebell/f2.hpp"

namespace cyclebell {

StabilizerGroup::StabilizerGroup(std::vector<PauliOperator> generators) : gens_(std::move(generators)) {
  if (gens_.empty()) throw std::invalid_argument("StabilizerGroup: no generators");
  n_ = gens_[0].num_qubits();
  for (const auto& g : gens_) {
    if (g.num_qubits() != n_) throw std::invalid_argument("StabilizerGroup: mixed qubit counts");
    if (!g.is_hermitian()) throw std::invalid_argument("StabilizerGroup: non-Hermitian generator");
  }
  for (size_t i = 0; i < gens_.size(); ++i)
    for (size_t j = i + 1; j < gens_.size(); ++j)
      if (!gens_[i].commutes_with(gens_[j]))
        throw std::invalid_argument("StabilizerGroup: generators do not commute");

  // Eliminate generator rows into reduced echelon form over the 2n
  // symplectic columns, tracking which generators fold into each row.
  std::vector<Row> work;
  work.reserve(gens_.size());
  for (size_t i = 0; i < gens_.size(); ++i)
    work.push_back({gens_[i].xbits().bits(), gens_[i].zbits().bits(), uint64_t{1} << i});
  size_t rank = 0;
  for (uint64_t col = 0; col < 128 && rank < work.size(); ++col) {
    size_t p = rank;
    while (p < work.size() && !bit_of(work[p], col)) ++p;
    if (p == work.size()) continue;
    std::swap(work[p], work[rank]);
    for (size_t r = 0; r < work.size(); ++r)
      if (r != rank && bit_of(work[r], col)) {
        work[r].x ^= work[rank].x;
        work[r].z ^= work[rank].z;
        work[r].combo ^= work[rank].combo;
      }
    ++rank;
  }
  rows_.assign(work.begin(), work.begin() + static_cast<long>(rank));
}

uint64_t StabilizerGroup::lowest_bit(const Row& r) {
  // Symplectic column index: x-part columns come first, then z-part.
  return r.x ? static_cast<uint64_t>(std::countr_zero(r.x))
             : 64 + static_cast<uint64_t>(std::countr_zero(r.z));
}

bool StabilizerGroup::bit_of(const Row& r, uint64_t col) {
  return col < 64 ? (r.x >> col) & 1u : (r.z >> (col - 64)) & 1u;
}

StabilizerGroup::Row StabilizerGroup::reduce(uint64_t x, uint64_t z) const {
  Row r{x, z, 0};
  for (const Row& base : rows_) {
    if (bit_of(r, lowest_bit(base))) {
      r.x ^= base.x;
      r.z ^= base.z;
      r.combo ^= base.combo;
    }
  }
  return r;
}

StabilizerGroup StabilizerGroup::cycle(const CycleGraph& g) {
  std::vector<PauliOperator> gens;
  gens.reserve(static_cast<size_t>(g.n));
  for (int j = 0; j < g.n; ++j) {
    BinaryVector a = BinaryVector::unit(g.n, j);
    BinaryVector b = BinaryVector::unit(g.n, (j + g.n - 1) % g.n) ^ BinaryVector::unit(g.n, (j + 1) % g.n);
    gens.emplace_back(a, b);
  }
  return StabilizerGroup(std::move(gens));
}

PauliOperator StabilizerGroup::element(const BinaryVector& coords) const {
  if (coords.size() != static_cast<int>(gens_.size()))
    throw std::invalid_argument("StabilizerGroup::element: coordinate length mismatch");
  PauliOperator p = PauliOperator::identity(n_);
  for (size_t i = 0; i < gens_.size(); ++i)
    if (coords.get(static_cast<int>(i))) p = p * gens_[i];
  return p;
}

Membership StabilizerGroup::membership_with_sign(const PauliOperator& p) const {
  if (p.num_qubits() != n_) throw std::invalid_argument("StabilizerGroup: dimension mismatch");
  if (!p.is_hermitian()) return Membership::NotMember;
  Row r = reduce(p.xbits().bits(), p.zbits().bits());
  if (r.x != 0 || r.z != 0) return Membership::NotMember;
  PauliOperator q = element(BinaryVector(static_cast<int>(gens_.size()), r.combo));
  int d = (p.phase_exp() - q.phase_exp() + 4) % 4;
  return d == 0 ? Membership::Plus : Membership::Minus;
}

PauliOperator cycle_stabilizer(int n, const BinaryVector& x) {
  if (n < 3) throw std::invalid_argument("cycle_stabilizer: need at least 3 vertices");
  if (x.size() != n) throw std::invalid_argument("cycle_stabilizer: input length mismatch");
  int phase = cubic_sign_function(x) ? 2 : 0;
  return PauliOperator(x, neighbor_parity(x), phase);
}

std::vector<std::pair<PauliOperator, int>> stabilizer_submeasurements(const StabilizerGroup& group,
                                                                      const BinaryVector& x) {
  int n = group.num_qubits();
  if (x.size() != n) throw std::invalid_argument("stabilizer_submeasurements: input length mismatch");

  // A submeasurement of E(1, x) with support q is E(q, q & x). It lies in
  // +-S iff its symplectic vector reduces to zero, and the residual map
  // q -> reduce(q | q & x) is linear in q. Solve for its kernel.
  std::vector<StabilizerGroup::Row> residuals;
  residuals.reserve(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) {
    uint64_t ej = uint64_t{1} << j;
    residuals.push_back(group.reduce(ej, x.get(j) ? ej : 0));
  }
  F2Matrix m(2 * n, n);
  for (int j = 0; j < n; ++j)
    for (int row = 0; row < 2 * n; ++row) {
      uint64_t word = row < n ? residuals[static_cast<size_t>(j)].x : residuals[static_cast<size_t>(j)].z;
      int bit = row < n ? row : row - n;
      if ((word >> bit) & 1u) m.set(row, j, true);
    }
  std::vector<uint64_t> basis = m.kernel_basis();
  if (basis.size() > 20)
    throw std::runtime_error("stabilizer_submeasurements: solution space too large to enumerate");

  std::vector<uint64_t> supports;
  supports.reserve(size_t{1} << basis.size());
  supports.push_back(0);
  for (uint64_t b : basis) {
    size_t sz = supports.size();
    for (size_t i = 0; i < sz; ++i) supports.push_back(supports[i] ^ b);
  }
  std::sort(supports.begin(), supports.end());

  std::vector<std::pair<PauliOperator, int>> out;
  out.reserve(supports.size());
  for (uint64_t q : supports) {
    BinaryVector qv(n, q);
    PauliOperator p = PauliOperator::weyl(qv, qv & x);
    Membership mem = group.membership_with_sign(p);
    if (mem == Membership::NotMember)
      throw std::logic_error("stabilizer_submeasurements: kernel element not in +-S");
    out.emplace_back(std::move(p), mem == Membership::Plus ? +1 : -1);
  }
  return out;
}

}  // namespace cyclebell
