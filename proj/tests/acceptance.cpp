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


// Acceptance runner: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qforge/encoders.hpp"
#include "qforge/error.hpp"
#include "qforge/mapper.hpp"
#include "qforge/oracles.hpp"
#include "qforge/provenance.hpp"
#include "qforge/qec.hpp"
#include "qforge/readout.hpp"
#include "qforge/rewriter.hpp"
#include "qforge/schedule.hpp"
#include "qforge/simulator.hpp"
#include "support.hpp"

using namespace qforge;
using namespace qforge::testing;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Collects failed sub-checks for one criterion.
class Report {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }
  void note(const std::string& s) { notes_ += (notes_.empty() ? "" : "; ") + s; }
  bool ok() const { return failures_.empty(); }
  std::string detail() const {
    if (ok()) return notes_;
    std::string out = "failed: ";
    for (std::size_t i = 0; i < failures_.size() && i < 3; ++i) out += (i ? "; " : "") + failures_[i];
    if (failures_.size() > 3) out += "; +" + std::to_string(failures_.size() - 3) + " more";
    return out;
  }

 private:
  std::vector<std::string> failures_;
  std::string notes_;
};

std::string fmt(double x, int precision = 6) {
  std::ostringstream s;
  s.precision(precision);
  s << x;
  return s.str();
}

// Largest entry-wise error after removing the global phase of `a` relative
// to `target`.
double phase_aligned_error(const std::vector<Complex>& a, const std::vector<Complex>& target) {
  Complex overlap = 0;
  for (std::size_t i = 0; i < target.size(); ++i) overlap += std::conj(a[i]) * target[i];
  const Complex phase = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : Complex(1.0);
  double worst = 0;
  for (std::size_t i = 0; i < target.size(); ++i) worst = std::max(worst, std::abs(a[i] * phase - target[i]));
  return worst;
}

double plain_error(const std::vector<Complex>& a, const std::vector<Complex>& target) {
  double worst = 0;
  for (std::size_t i = 0; i < target.size(); ++i) worst = std::max(worst, std::abs(a[i] - target[i]));
  return worst;
}

// ------------------------------------------------------------------ 1

void leveling(Report& r) {
  LeveledCircuit drawn;
  drawn.num_qubits = 3;
  drawn.levels = {{gates::h(0)}, {gates::x(1), gates::x(2)}, {gates::z(0)}, {gates::y(1), gates::y(2)}};
  r.expect(drawn.depth() == 4, "fixture drawn depth != 4");
  const std::size_t compact = compact_levels(drawn).depth();
  r.expect(compact == 2, "fixture compacts to depth " + std::to_string(compact));

  std::mt19937_64 rng(1001);
  const auto t0 = Clock::now();
  std::size_t bad = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + rng() % 8;
    const Circuit c = random_circuit(rng, n, rng() % 41);
    const LeveledCircuit lc = schedule_asap(c);
    bool ok = lc.depth() == reference_depth(c);
    for (const auto& level : lc.levels) {
      std::vector<int> used(n, 0);
      for (const Gate& g : level) {
        for (Qubit q : g.qubits) ok = ok && ++used[q] == 1;
      }
    }
    const Circuit flat = lc.flatten();
    for (Qubit q = 0; q < n && ok; ++q) {
      std::vector<Gate> a, b;
      auto touches = [q](const Gate& g) { return std::find(g.qubits.begin(), g.qubits.end(), q) != g.qubits.end(); };
      std::copy_if(c.begin(), c.end(), std::back_inserter(a), touches);
      std::copy_if(flat.begin(), flat.end(), std::back_inserter(b), touches);
      ok = a == b;
    }
    bad += !ok;
  }
  const double secs = seconds_since(t0);
  r.expect(bad == 0, std::to_string(bad) + "/1000 random circuits wrong");
  r.expect(secs < 5.0, "random suite took " + fmt(secs) + " s");
  r.note("drawn 4->" + std::to_string(compact) + ", 1000 random ok in " + fmt(secs, 3) + " s");
}

// ------------------------------------------------------------------ 2

void feasibility_rule(Report& r) {
  const std::size_t boundary = boundary_depth(50, 1e-3);
  r.expect(boundary == 20, "boundary depth " + std::to_string(boundary));
  const Feasibility at20 = feasibility(20, 50, 1e-3);
  r.expect(at20.verdict == Verdict::Infeasible, "d=20 not Infeasible");
  r.expect(at20.ratio == 1.0, "d=20 ratio " + fmt(at20.ratio, 17));
  r.expect(feasibility(19, 50, 1e-3).verdict != Verdict::Infeasible, "d=19 Infeasible");
  r.expect(feasibility(1, 50, 1e-3).verdict == Verdict::Feasible, "d=1 not Feasible");
  r.note("boundary " + std::to_string(boundary) + ", r(20)=" + fmt(at20.ratio));
}

// ------------------------------------------------------------------ 3

CouplingGraph weighted_ring() {
  // q1..q8 stored as 0..7; rate i joins q(i+1) and q(i+2).
  CouplingGraph g(8);
  const double rates[] = {0.5, 0.3, 0.8, 0.8, 0.9, 0.9, 0.7, 0.9};
  for (Qubit i = 0; i < 8; ++i) g.add_edge(i, (i + 1) % 8, rates[i]);
  return g;
}

void routing_arithmetic(Report& r) {
  const InteractionPath p = best_interaction_path(weighted_ring(), 0, 2);
  const double expected = 0.8 * 0.8 * 0.9 * 0.9 * 0.7 * 0.9;
  r.expect(std::abs(p.success - expected) < 1e-9, "success " + fmt(p.success, 12));
  r.expect(p.nodes == std::vector<Qubit>{0, 7, 6, 5, 4, 3, 2}, "unexpected node sequence");
  r.expect(0.3 * 0.5 < p.success, "direct path not beaten");
  r.note("q1->q3 success " + fmt(p.success, 9) + " via " + std::to_string(p.nodes.size() - 1) +
         " hops (direct 0.15)");
}

// ------------------------------------------------------------------ 4

void allocation(Report& r) {
  Circuit two_cnot(3);
  two_cnot.cx(0, 1).cx(2, 1);
  CouplingGraph g(8);
  for (Qubit i = 0; i < 8; ++i) g.add_edge(i, (i + 1) % 8, 0.6);
  g.add_edge(4, 5, 0.99);
  g.add_edge(5, 6, 0.98);
  const AllocationResult a = initial_allocation(two_cnot, g);
  r.expect(a.allocation == Allocation{4, 5, 6}, "allocation differs from Q0->q5, Q1->q6, Q2->q7");
  r.expect(a.exhaustive, "search not exhaustive");
  r.note("Q0->q" + std::to_string(*a.allocation[0] + 1) + ", Q1->q" + std::to_string(*a.allocation[1] + 1) +
         ", Q2->q" + std::to_string(*a.allocation[2] + 1) + ", weight " + fmt(a.weight));
}

// ------------------------------------------------------------------ 5

void routing_soundness(Report& r) {
  std::mt19937_64 rng(505);
  const auto t0 = Clock::now();
  std::size_t bad = 0, swaps = 0;
  double worst = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const Circuit c = random_circuit(rng, 4, 25, false);
    const CouplingGraph g = trial % 2 ? CouplingGraph::ring(4, 0.9) : CouplingGraph::line(4, 0.9);
    const RoutedCircuit routed = route(c, g, initial_allocation(c, g).allocation);
    const Circuit lowered = lower_swaps(routed.circuit);
    const Matrix pin = permutation_unitary(as_permutation(routed.initial, 4));
    const Matrix pout = permutation_unitary(as_permutation(routed.final_placement, 4));
    const Matrix got = pout.adjoint() * unitary_of(lowered) * pin;
    const double err = (got - reference_unitary(c)).cwiseAbs().maxCoeff();
    worst = std::max(worst, err);
    bool ok = err < 1e-9;
    for (const Gate& gt : lowered) {
      ok = ok && gt.type != GateType::SWAP && (gt.qubits.size() < 2 || g.adjacent(gt.qubits[0], gt.qubits[1]));
    }
    bad += !ok;
    swaps += routed.swaps_inserted;
  }
  const double secs = seconds_since(t0);
  r.expect(bad == 0, std::to_string(bad) + "/50 routed circuits wrong");
  r.expect(secs < 30.0, "took " + fmt(secs) + " s");
  r.note("50 circuits, " + std::to_string(swaps) + " swaps, max err " + fmt(worst, 3) + ", " + fmt(secs, 3) + " s");
}

// ------------------------------------------------------------------ 6

void adder(Report& r) {
  double worst_p = 1.0;
  for (std::size_t n = 1; n <= 3; ++n) {
    const Circuit add = draper_adder(n);
    const std::size_t mod = std::size_t{1} << n;
    for (std::size_t x = 0; x < mod; ++x) {
      for (std::size_t y = 0; y < mod; ++y) {
        const StateVector s = statevector(add, StateVector::basis(2 * n, (x << n) | y));
        const double p = std::norm(s[(x << n) | ((x + y) % mod)]);
        worst_p = std::min(worst_p, p);
        r.expect(p >= 1 - 1e-9, "n=" + std::to_string(n) + " x=" + std::to_string(x) + " y=" + std::to_string(y));
      }
    }
  }
  double worst_id = 0;
  for (std::size_t n = 1; n <= 6; ++n) {
    Circuit both = qft_circuit(n);
    both.append(iqft_circuit(n));
    const Matrix u = unitary_of(both);
    worst_id = std::max(worst_id, (u - Matrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff());
  }
  r.expect(worst_id < 1e-9, "QFT*iQFT deviates by " + fmt(worst_id));
  r.note("min outcome prob " + fmt(worst_p, 12) + ", QFT*iQFT err " + fmt(worst_id, 3));
}

// ------------------------------------------------------------------ 7

void lowering(Report& r) {
  Circuit h(1);
  h.h(0);
  Circuit x(1);
  x.x(0);
  const Gate hl = to_native_basis(h).gates().front();
  const Gate xl = to_native_basis(x).gates().front();
  r.expect(hl.type == GateType::U2 && hl.params == std::vector<double>{0.0, kPi}, "H lowering");
  r.expect(xl.type == GateType::U3 && xl.params == std::vector<double>{kPi, 0.0, kPi}, "X lowering");

  std::mt19937_64 rng(707);
  const CouplingGraph g = CouplingGraph::complete_graph(3, 0.95);
  const NativeBasis basis;
  std::size_t bad = 0;
  double worst = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 3;
    const Circuit c = random_circuit(rng, n, 1 + rng() % 20);
    const PipelineResult p = rewrite_pipeline(c, g, basis);
    const Matrix pin = permutation_unitary(as_permutation(p.routed.initial, 3));
    const Matrix pout = permutation_unitary(as_permutation(p.routed.final_placement, 3));
    const Matrix got = pout.adjoint() * unitary_of(p.routed.circuit) * pin;
    Circuit wide(3);
    for (const Gate& gt : c) wide.append(gt);
    const double d = phase_distance(got, reference_unitary(wide));
    worst = std::max(worst, d);
    bool ok = d < 1e-6;
    for (const Gate& gt : p.routed.circuit) ok = ok && basis.allows(gt.type);
    bad += !ok;
  }
  r.expect(bad == 0, std::to_string(bad) + "/200 pipeline results differ");
  r.note("H->u2(0,pi), X->u3(pi,0,pi); 200 pipelines max dist " + fmt(worst, 3));
}

// ------------------------------------------------------------------ 8

void unfolding(Report& r) {
  NoiseModel noise;
  noise.readout.assign(3, ReadoutConfusion::symmetric(0.05));
  noise.seed = 808;
  const CalibrationMatrix cal = calibrate(3, 100000, noise);
  const double c00 = cal.C(0, 0);
  r.expect(std::abs(c00 - 0.857) <= 0.01, "C[000,000] = " + fmt(c00));

  NoiseModel two = noise;
  two.readout.resize(2);
  const CalibrationMatrix cal2 = calibrate(2, 100000, two);
  Circuit bell(2, 2);
  bell.h(0).cx(0, 1).measure(0, 0).measure(1, 1);
  two.seed = 809;
  const auto measured = counts_to_vector(run(bell, 100000, two), 2);
  const std::vector<double> ideal{0.5, 0, 0, 0.5};
  const double tv_raw = total_variation(measured, ideal);
  const double tv = total_variation(unfold(measured, cal2, UnfoldMode::ClipRenormalize), ideal);
  r.expect(tv < 0.02, "Bell TV " + fmt(tv));

  std::mt19937_64 rng(810);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng() % 3;
    const Eigen::Index dim = Eigen::Index{1} << n;
    CalibrationMatrix c{n, Eigen::MatrixXd(dim, dim), {}};
    for (Eigen::Index j = 0; j < dim; ++j) {
      for (Eigen::Index i = 0; i < dim; ++i) c.C(i, j) = (i == j ? 1.0 : 0.0) + 0.1 * u(rng);
      c.C.col(j) /= c.C.col(j).sum();
    }
    Eigen::VectorXd t(dim);
    for (Eigen::Index i = 0; i < dim; ++i) t(i) = u(rng);
    t /= t.sum();
    const Eigen::VectorXd m = c.C * t;
    const auto back = unfold(std::vector<double>(m.data(), m.data() + dim), c);
    for (Eigen::Index i = 0; i < dim; ++i) worst = std::max(worst, std::abs(back[static_cast<std::size_t>(i)] - t(i)));
  }
  r.expect(worst < 1e-9, "unfold round trip error " + fmt(worst));
  r.note("C[000,000]=" + fmt(c00, 4) + ", Bell TV " + fmt(tv_raw, 3) + "->" + fmt(tv, 3) + ", round trip " +
         fmt(worst, 3));
}

// ------------------------------------------------------------------ 9

// Five qubits d0 d1 d2 a0 a1: encode |input>, X on `errors`, recover.
Circuit qec_experiment(bool input, const std::vector<Qubit>& errors, bool measure) {
  const LogicalQubitLayout layout{};
  Circuit c(5, 5);
  if (input) c.x(0);
  c.append(encode3_circuit(layout, 5));
  for (Qubit q : errors) c.x(q);
  c.append(syndrome_recover_circuit(layout, 5));
  if (measure) {
    for (Qubit q = 0; q < 3; ++q) c.measure(q, q);
  }
  return c;
}

void qec(Report& r) {
  // Data qubits land in c0..c2 of a 5-bit register; the vendor display
  // prints c4 first, so "11100" here is "00111" there.
  const StateVector s = statevector(qec_experiment(true, {1}, false));
  const double p = std::norm(s[bitstring_to_index("11111")]);
  r.expect(p >= 1 - 1e-9, "encode-1 + X(d1) outcome probability " + fmt(p, 12));
  const Counts counts = run(qec_experiment(true, {1}, true), 4096, NoiseModel{{}, 0.0, 909});
  std::string display = "11100";
  std::reverse(display.begin(), display.end());
  r.expect(counts.count("11100") == 4096 && display == "00111", "sampled outcome not 00111");

  const char* syndromes[] = {"10", "11", "01"};
  for (Qubit q = 0; q < 3; ++q) {
    for (bool input : {false, true}) {
      const StateVector e = statevector(qec_experiment(input, {q}, false));
      const std::string expect = std::string(input ? "111" : "000") + syndromes[q];
      r.expect(std::norm(e[bitstring_to_index(expect)]) >= 1 - 1e-9, "flip on d" + std::to_string(q));
    }
  }

  const Circuit logical = qec_experiment(true, {1}, true);
  const DeviceProfile dev = synth_device(15, Topology::Line, 3);
  const PipelineResult t = rewrite_pipeline(logical, dev.coupling, dev.basis);
  const std::size_t shots = 20000;
  const Counts clean = run(t.routed.circuit, 2000, NoiseModel{{}, 0.0, 910});
  r.expect(clean.count("11100") == 2000, "noiseless transpiled circuit loses the outcome");
  const double p_logical = run(logical, shots, NoiseModel{{}, 0.01, 911}).frequency("11100");
  const double p_device = run(t.routed.circuit, shots, NoiseModel{{}, 0.01, 912}).frequency("11100");
  // 3 sigma of the difference of two binomial estimates.
  const double sigma = std::sqrt((p_logical * (1 - p_logical) + p_device * (1 - p_device)) / shots);
  r.expect(p_device + 3 * sigma < p_logical,
           "transpiled " + fmt(p_device) + " not below untranspiled " + fmt(p_logical));
  r.note("\"00111\" p=" + fmt(p, 12) + ", 3 flips corrected, p_g=0.01: untranspiled " + fmt(p_logical, 4) +
         " vs transpiled " + fmt(p_device, 4) + " (depth " + std::to_string(t.depth_before) + "->" +
         std::to_string(t.depth_after) + ")");
}

// ------------------------------------------------------------------ 10

void encoders(Report& r) {
  std::mt19937_64 rng(1010);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  std::normal_distribution<double> gauss;
  double worst_basis = 0, worst_angle = 0, worst_amp = 0, worst_schmidt = 0;

  for (int trial = 0; trial < 100; ++trial) {
    const int n = static_cast<int>(rng() % 4), k = static_cast<int>(rng() % 5);
    std::vector<double> xs(1 + rng() % 2);
    std::uniform_real_distribution<double> d(-std::ldexp(1.0, n), std::ldexp(1.0, n));
    for (double& x : xs) x = d(rng);
    const BasisEncoding enc = encode_basis_vector(xs, FixedPointFormat{n, k});
    std::vector<Complex> target(std::size_t{1} << enc.bits.size(), 0.0);
    target[bitstring_to_index(enc.bits)] = 1.0;
    worst_basis = std::max(worst_basis, plain_error(statevector(enc.circuit).amplitudes(), target));
  }
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> xs(1 + rng() % 6);
    for (double& x : xs) x = angle(rng);
    std::vector<Complex> target{1.0};
    for (double x : xs) {
      std::vector<Complex> next;
      for (const Complex& a : target) {
        next.push_back(a * std::cos(x));
        next.push_back(a * std::sin(x));
      }
      target = next;
    }
    worst_angle = std::max(worst_angle, plain_error(statevector(encode_angle(xs)).amplitudes(), target));
  }
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> xs(1 + rng() % 20);
    for (double& x : xs) x = gauss(rng);
    double norm = 0;
    for (double x : xs) norm += x * x;
    const Circuit c = encode_amplitude(xs);
    std::vector<Complex> target(std::size_t{1} << c.num_qubits(), 0.0);
    for (std::size_t i = 0; i < xs.size(); ++i) target[i] = xs[i] / std::sqrt(norm);
    worst_amp = std::max(worst_amp, plain_error(statevector(c).amplitudes(), target));
  }
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Complex> x(4);
    double norm = 0;
    for (auto& a : x) {
      a = Complex(gauss(rng), gauss(rng));
      norm += std::norm(a);
    }
    for (auto& a : x) a /= std::sqrt(norm);
    worst_schmidt =
        std::max(worst_schmidt, phase_aligned_error(statevector(schmidt_prepare_circuit(x)).amplitudes(), x));
  }
  r.expect(worst_basis < 1e-9, "basis error " + fmt(worst_basis));
  r.expect(worst_angle < 1e-9, "angle error " + fmt(worst_angle));
  r.expect(worst_amp < 1e-9, "amplitude error " + fmt(worst_amp));
  r.expect(worst_schmidt < 1e-9, "Schmidt error " + fmt(worst_schmidt));

  std::size_t product_rank = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const double a = angle(rng), b = angle(rng);
    const Complex pa(std::cos(a), 0), qa(std::sin(a) * std::cos(b), std::sin(a) * std::sin(b));
    const double c = angle(rng);
    const std::vector<Complex> prod{pa * std::cos(c), pa * std::sin(c), qa * std::cos(c), qa * std::sin(c)};
    product_rank = std::max(product_rank, schmidt_decompose(prod, 2, 2).rank);
  }
  const double h = 1 / std::sqrt(2.0);
  const std::vector<Complex> bell{h, 0, 0, h};
  const std::size_t bell_rank = schmidt_decompose(bell, 2, 2).rank;
  r.expect(product_rank == 1, "product-state rank " + std::to_string(product_rank));
  r.expect(bell_rank == 2, "Bell rank " + std::to_string(bell_rank));
  r.note("max errors basis " + fmt(worst_basis, 2) + ", angle " + fmt(worst_angle, 2) + ", amplitude " +
         fmt(worst_amp, 2) + ", Schmidt " + fmt(worst_schmidt, 2) + "; ranks 1/2");
}

// ------------------------------------------------------------------ 11

void device_dependence(Report& r) {
  Circuit c(4);
  c.h(0).cx(0, 1).cx(0, 2).cx(0, 3).cx(1, 3).cx(2, 3);
  const PipelineResult complete = rewrite_pipeline(c, CouplingGraph::complete_graph(4, 0.9));
  const PipelineResult line = rewrite_pipeline(c, CouplingGraph::line(4, 0.9));
  r.expect(complete.depth_after != line.depth_after, "depths equal");
  r.note("complete depth " + std::to_string(complete.depth_after) + ", line depth " +
         std::to_string(line.depth_after) + " (" + std::to_string(line.swaps_inserted) + " swaps)");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Report&)>>> criteria{
      {"leveling", leveling},
      {"feasibility rule", feasibility_rule},
      {"routing arithmetic", routing_arithmetic},
      {"allocation", allocation},
      {"routing soundness", routing_soundness},
      {"adder and QFT", adder},
      {"native-basis lowering", lowering},
      {"readout unfolding", unfolding},
      {"bit-flip code", qec},
      {"encoders", encoders},
      {"device dependence", device_dependence},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Report r;
    try {
      criteria[i].second(r);
    } catch (const std::exception& e) {
      r.expect(false, std::string("exception: ") + e.what());
    }
    failed += !r.ok();
    std::printf("%s %2zu %-22s %s\n", r.ok() ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), r.detail().c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed;
}
