// Copyright 2026 The qforge Authors
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

#include <doctest.h>

#include <cmath>
#include <random>
#include <string>

#include "qforge/encoders.hpp"
#include "qforge/error.hpp"
#include "qforge/schedule.hpp"
#include "qforge/simulator.hpp"
#include "support.hpp"

using namespace qforge;
using namespace qforge::testing;

namespace {

// Oracle for the fixed-point layout: exact binary expansion digit by digit.
std::string reference_bits(double x, int n, int k, bool half_up) {
  double mag = std::abs(x);
  if (half_up) mag += std::ldexp(0.5, -k);
  std::string bits = x < 0 ? "1" : "0";
  for (int e = n; e >= -k; --e) {
    const double place = std::ldexp(1.0, e);
    if (mag >= place) {
      bits += '1';
      mag -= place;
    } else {
      bits += '0';
    }
  }
  return bits;
}

double max_amp_error(const std::vector<Complex>& a, const std::vector<Complex>& target) {
  double worst = 0;
  for (std::size_t i = 0; i < target.size(); ++i) worst = std::max(worst, std::abs(a[i] - target[i]));
  return worst;
}

double max_amp_error(const StateVector& s, const std::vector<Complex>& target) {
  return max_amp_error(s.amplitudes(), target);
}

std::vector<Complex> random_unit(std::mt19937_64& rng, std::size_t dim) {
  std::normal_distribution<double> g;
  std::vector<Complex> v(dim);
  double norm = 0;
  for (auto& a : v) {
    a = Complex(g(rng), g(rng));
    norm += std::norm(a);
  }
  for (auto& a : v) a /= std::sqrt(norm);
  return v;
}

}  // namespace

TEST_CASE("basis encoding examples") {
  const FixedPointFormat f03{0, 3};
  CHECK(encode_basis(-0.7, f03).bits == "10101");
  CHECK(encode_basis(-0.7, FixedPointFormat{0, 3, Rounding::HalfUp}).bits == "10110");
  CHECK(encode_basis(2.5, FixedPointFormat{1, 1}).bits == "0101");
  const auto zero = encode_basis(0.0, FixedPointFormat{2, 2});
  CHECK(zero.bits == "000000");
  CHECK(zero.circuit.empty());
  const double ones[] = {1.0, 1.0};
  CHECK(encode_basis_vector(ones, FixedPointFormat{0, 0}).bits == "0101");
  CHECK(encode_basis_vector(std::span<const double>{}, f03).bits.empty());
  const double sample[] = {-0.7, 0.1, 0.2};
  CHECK(encode_basis_vector(sample, f03).bits.size() == 15);
  try {
    encode_basis(4.0, FixedPointFormat{1, 2});
    FAIL("expected overflow");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Overflow);
  }
}

TEST_CASE("basis encoding matches the binary-expansion oracle") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = static_cast<int>(rng() % 4), k = static_cast<int>(rng() % 5);
    std::uniform_real_distribution<double> d(-std::ldexp(1.0, n + 1) + 0.5, std::ldexp(1.0, n + 1) - 0.5);
    const double x = d(rng);
    const auto enc = encode_basis(x, FixedPointFormat{n, k});
    CHECK(enc.bits == reference_bits(x, n, k, false));
    CHECK(enc.bits.size() == static_cast<std::size_t>(n + k + 2));
    const StateVector s = statevector(enc.circuit);
    CHECK(std::abs(s[bitstring_to_index(enc.bits)] - 1.0) < 1e-9);
  }
}

TEST_CASE("dataset superposition") {
  const std::string one[] = {"0"};
  CHECK(std::abs(dataset_superposition(one)[0] - 1.0) < 1e-12);
  const std::string bell[] = {"00", "11"};
  const StateVector b = dataset_superposition(bell);
  CHECK(std::abs(b[0] - 1 / std::sqrt(2.0)) < 1e-12);
  CHECK(std::abs(b[3] - 1 / std::sqrt(2.0)) < 1e-12);
  const std::string all[] = {"00", "01", "10", "11"};
  Circuit hh(2);
  hh.h(0).h(1);
  CHECK(fidelity(dataset_superposition(all), statevector(hh)) > 1 - 1e-12);
  const std::string dup[] = {"01", "01"};
  const std::string ragged[] = {"01", "1"};
  try {
    dataset_superposition(dup);
    FAIL("expected duplicate");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DuplicateElement);
  }
  try {
    dataset_superposition(ragged);
    FAIL("expected length mismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::LengthMismatch);
  }
}

TEST_CASE("angle encoding is a product state of depth 1") {
  const double pair[] = {kPi / 4, kPi / 6};
  const StateVector s = statevector(encode_angle(pair));
  const double c4 = std::cos(kPi / 4), s4 = std::sin(kPi / 4), c6 = std::cos(kPi / 6), s6 = std::sin(kPi / 6);
  CHECK(max_amp_error(s, {c4 * c6, c4 * s6, s4 * c6, s4 * s6}) < 1e-12);
  const double half[] = {kPi / 2};
  CHECK(std::abs(statevector(encode_angle(half))[1] - 1.0) < 1e-12);

  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> d(-kPi, kPi);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> xs(1 + rng() % 6);
    for (double& x : xs) x = d(rng);
    const Circuit c = encode_angle(xs);
    CHECK(depth(c) == 1);
    std::vector<Complex> target{1.0};
    for (double x : xs) {
      std::vector<Complex> next;
      for (const Complex& a : target) {
        next.push_back(a * std::cos(x));
        next.push_back(a * std::sin(x));
      }
      target = next;
    }
    CHECK(max_amp_error(statevector(c), target) < 1e-9);
  }
}

TEST_CASE("amplitude encoding") {
  const double unit[] = {1, 0, 0, 0};
  CHECK(std::abs(statevector(encode_amplitude(unit))[0] - 1.0) < 1e-12);
  const double flat[] = {1, 1, 1, 1};
  CHECK(max_amp_error(statevector(encode_amplitude(flat)), {0.5, 0.5, 0.5, 0.5}) < 1e-12);
  const double pyth[] = {3, 4};
  CHECK(max_amp_error(statevector(encode_amplitude(pyth)), {0.6, 0.8}) < 1e-12);
  const double zero[] = {0, 0};
  CHECK_THROWS_AS(encode_amplitude(zero), Error);

  std::mt19937_64 rng(41);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> xs(1 + rng() % 20);
    for (double& x : xs) x = g(rng);
    if (trial % 7 == 0) xs[0] = 0;
    const Circuit c = encode_amplitude(xs);
    std::size_t qubits = 1;
    while ((std::size_t{1} << qubits) < xs.size()) ++qubits;
    CHECK(c.num_qubits() == qubits);
    double norm = 0;
    for (double x : xs) norm += x * x;
    std::vector<Complex> target(std::size_t{1} << qubits, 0.0);
    for (std::size_t i = 0; i < xs.size(); ++i) target[i] = xs[i] / std::sqrt(norm);
    CHECK(max_amp_error(statevector(c), target) < 1e-9);
  }
}

TEST_CASE("Schmidt decomposition") {
  const std::vector<Complex> product{0, 1, 0, 0};
  const auto p = schmidt_decompose(product, 2, 2);
  CHECK(p.rank == 1);
  CHECK_FALSE(p.entangled());
  CHECK(std::abs(p.alphas[0] - 1.0) < 1e-12);

  const double r = 1 / std::sqrt(2.0);
  const std::vector<Complex> bell{r, 0, 0, r};
  const auto b = schmidt_decompose(bell, 2, 2);
  CHECK(b.rank == 2);
  CHECK(std::abs(b.alphas[0] - r) < 1e-12);
  CHECK(std::abs(b.alphas[1] - r) < 1e-12);

  try {
    schmidt_decompose(bell, 3, 2);
    FAIL("expected shape mismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ShapeMismatch);
  }
  const std::vector<Complex> unnormalized{1, 1, 0, 0};
  try {
    schmidt_decompose(unnormalized, 2, 2);
    FAIL("expected not normalized");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotNormalized);
  }

  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t m1 = 1 + rng() % 4, m2 = 1 + rng() % 4;
    const auto x = random_unit(rng, m1 * m2);
    const auto sd = schmidt_decompose(x, m1, m2);
    double sum_sq = 0;
    for (std::size_t i = 0; i < sd.alphas.size(); ++i) {
      sum_sq += sd.alphas[i] * sd.alphas[i];
      if (i > 0) CHECK(sd.alphas[i] <= sd.alphas[i - 1]);
    }
    CHECK(std::abs(sum_sq - 1.0) < 1e-9);
    CHECK(max_amp_error(sd.reconstruct(), x) < 1e-9);
    for (std::size_t i = 0; i < sd.u.size(); ++i) {
      for (std::size_t j = 0; j < sd.u.size(); ++j) {
        Complex ip = 0, iv = 0;
        for (std::size_t a = 0; a < m1; ++a) ip += std::conj(sd.u[i][a]) * sd.u[j][a];
        for (std::size_t a = 0; a < m2; ++a) iv += std::conj(sd.v[i][a]) * sd.v[j][a];
        CHECK(std::abs(ip - (i == j ? 1.0 : 0.0)) < 1e-9);
        CHECK(std::abs(iv - (i == j ? 1.0 : 0.0)) < 1e-9);
      }
    }
    // Random product states have rank exactly 1.
    const auto a = random_unit(rng, m1), bb = random_unit(rng, m2);
    std::vector<Complex> prod;
    for (const auto& ai : a) {
      for (const auto& bj : bb) prod.push_back(ai * bj);
    }
    CHECK(schmidt_decompose(prod, m1, m2).rank == 1);
  }
}

TEST_CASE("Schmidt preparation circuit") {
  const std::vector<Complex> zero{1, 0, 0, 0};
  CHECK(fidelity(statevector(schmidt_prepare_circuit(zero)), StateVector::from_amplitudes(zero)) >
        1 - 1e-12);
  const double r = 1 / std::sqrt(2.0);
  const std::vector<Complex> bell{r, 0, 0, r};
  CHECK(fidelity(statevector(schmidt_prepare_circuit(bell)), StateVector::from_amplitudes(bell)) >
        1 - 1e-12);
  const std::vector<Complex> three{1, 0, 0, 0, 0, 0, 0, 0};
  try {
    schmidt_prepare_circuit(three);
    FAIL("expected unsupported size");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnsupportedSize);
  }

  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 100; ++trial) {
    const auto x = random_unit(rng, 4);
    const Circuit c = schmidt_prepare_circuit(x);
    for (const Gate& g : c) {
      CHECK((g.type == GateType::RY || g.type == GateType::RZ || g.type == GateType::CNOT));
    }
    CHECK(fidelity(statevector(c), StateVector::from_amplitudes(x)) >= 1 - 1e-9);
  }
}
