// Copyright 2026 The Telecomp Authors
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

/**
 * @file
 * Dense state-vector simulation of registers of two-state particles.
 *
 * Basis ordering: site 0 is the most significant bit of the basis index, so
 * the basis string "s0 s1 ... s(n-1)" read as a binary number is the index.
 * This convention is used by every module in the library.
 */

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <span>
#include <variant>
#include <vector>

#include "telecomp/random.hpp"

namespace telecomp::qsim {

using Amplitude = std::complex<double>;

inline constexpr std::size_t kDefaultMaxSites = 20;
inline constexpr double kNormTolerance = 1e-10;

/// A control condition: the gate acts only where `site` holds `value`.
struct Control {
    std::size_t site;
    bool value = true;
};

/// The "fair coin flip" (1/sqrt 2)[[1, 1], [1, -1]] on one site.
struct MGate {
    std::size_t site;
};

struct CnotGate {
    std::size_t control;
    std::size_t target;
};

/// Multiplies the amplitude of one basis state of the sub-register `sites` by
/// e^{i angle}. With `sites` empty this is a global phase (index must be 0).
struct BasisPhaseGate {
    std::vector<std::size_t> sites;
    std::uint64_t index = 0;
    double angle = 0.0;
};

/// Diagonal phase over the sub-register `sites`: basis state j of that
/// register gains e^{i angles[j]}. `angles` is dense (size 2^|sites|).
struct DiagonalPhaseGate {
    std::vector<std::size_t> sites;
    std::vector<double> angles;
    std::vector<Amplitude> factors;  // e^{i angles[j]}, filled by diagonal_phase()
};

struct Gate {
    std::variant<MGate, CnotGate, BasisPhaseGate, DiagonalPhaseGate> op;
    std::vector<Control> controls;
};

/// Sites the gate's operation touches, excluding its controls.
std::vector<std::size_t> acted_sites(const Gate &gate);

/// Elementary step count of a gate: one per single-site gate application,
/// one per CNOT, one per selective basis-state rotation. A diagonal phase over
/// a k-site register is 2^k selective rotations.
std::uint64_t gate_cost(const Gate &gate);

class Circuit {
  public:
    Circuit() = default;
    Circuit(std::initializer_list<Gate> gates);

    Circuit &push(Gate gate);
    Circuit &append(const Circuit &other);

    const std::vector<Gate> &gates() const noexcept { return gates_; }
    std::size_t size() const noexcept { return gates_.size(); }
    bool empty() const noexcept { return gates_.empty(); }

    std::uint64_t cost() const;
    /// One past the highest site index referenced (including controls).
    std::size_t site_extent() const;

  private:
    std::vector<Gate> gates_;
    std::size_t extent_ = 0;
};

Gate m_gate(std::size_t site);
Gate cnot(std::size_t control, std::size_t target);
Gate basis_phase(std::vector<std::size_t> sites, std::uint64_t index, double angle);
Gate global_phase(double angle);
Gate diagonal_phase(std::vector<std::size_t> sites, std::vector<double> angles);
/// M on every listed site in sequence.
Circuit wh(const std::vector<std::size_t> &sites);

/// Adds a control condition. Throws if the control overlaps the gate's sites.
Gate controlled(Gate gate, Control control);
Circuit controlled(const Circuit &circuit, Control control);
/// Re-maps every site s (and control) to s + offset.
Circuit shifted(const Circuit &circuit, std::size_t offset);

struct MeasurementOutcome;

/// Dense complex amplitude vector over 2^n basis states.
///
/// Gates are applied in place. Operations never renormalize; a norm drift
/// beyond kNormTolerance after a circuit is reported as an error. Measurement
/// posteriors are renormalized by construction.
class StateVector {
  public:
    /// The all-zero basis state |0...0> on `num_sites` sites.
    explicit StateVector(std::size_t num_sites = 0, std::size_t max_sites = kDefaultMaxSites);

    static StateVector basis_state(std::size_t num_sites, std::uint64_t index,
                                   std::size_t max_sites = kDefaultMaxSites);
    /// Validates length (a power of two), finiteness and unit norm.
    static StateVector from_amplitudes(std::vector<Amplitude> amps, std::size_t max_sites = kDefaultMaxSites);

    std::size_t num_sites() const noexcept { return num_sites_; }
    std::uint64_t dim() const noexcept { return amps_.size(); }
    std::span<const Amplitude> amplitudes() const noexcept { return amps_; }
    Amplitude amplitude(std::uint64_t index) const;
    double norm() const;

    /// Bit of the basis index that holds `site`.
    std::uint64_t site_mask(std::size_t site) const;

    StateVector &apply_m(std::size_t site);
    StateVector &apply_wh(const std::vector<std::size_t> &sites);
    StateVector &rotate_basis_phase(std::uint64_t basis_index, double angle);
    StateVector &apply_diagonal_phase(const std::map<std::uint64_t, double> &angles);
    StateVector &apply_cnot(std::size_t control, std::size_t target);
    StateVector &apply(const Gate &gate);
    StateVector &apply(const Circuit &circuit);

    double probability_of(std::uint64_t basis_index) const;
    /// Probability that `sites` read `bits`.
    double probability_of_bits(const std::vector<std::size_t> &sites, const std::vector<int> &bits) const;

    /// Probability of every outcome pattern of `sites` in one pass; pattern k
    /// reads the first site as its most significant bit.
    std::vector<double> outcome_distribution(const std::vector<std::size_t> &sites) const;

    /// Projective measurement of `sites` with Born-rule sampling.
    MeasurementOutcome measure_sites(const std::vector<std::size_t> &sites, RandomStream &rng) const;
    /// Deterministic projection onto `bits`. Throws if that branch has zero
    /// probability.
    MeasurementOutcome project_sites(const std::vector<std::size_t> &sites, const std::vector<int> &bits) const;

    void check_normalized(double tolerance = kNormTolerance) const;

  private:
    void check_site(std::size_t site) const;
    void apply_unchecked(const Gate &gate);

    std::size_t num_sites_;
    std::vector<Amplitude> amps_;
};

struct MeasurementOutcome {
    std::vector<std::size_t> sites;
    std::vector<int> bits;
    StateVector posterior;
    /// Pre-measurement probability of `bits`.
    double probability = 0.0;

    bool all_zero() const;
};

/// Index into `weights` drawn with probability proportional to its entry,
/// consuming exactly one uniform from `rng`. Zero-weight entries are never
/// returned.
std::size_t sample_index(const std::vector<double> &weights, RandomStream &rng);

/// Tensor product; the sites of `high` come first (more significant).
StateVector kron(const StateVector &high, const StateVector &low);
/// Drops `site`, keeping the slice where it reads `bit`. The other slice must
/// be empty to `tolerance`.
StateVector remove_site(const StateVector &state, std::size_t site, int bit, double tolerance = 1e-10);
/// <a|b>
Amplitude inner(const StateVector &a, const StateVector &b);
double max_abs_diff(const StateVector &a, const StateVector &b);

}  // namespace telecomp::qsim
