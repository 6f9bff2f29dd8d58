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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "telecomp/error.hpp"
#include "telecomp/qsim.hpp"

namespace telecomp::qsim {

namespace {

constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// Local index of basis state `i` on the sub-register whose site masks are
// `masks` (first mask = most significant local bit).
std::uint64_t gather(std::uint64_t i, const std::vector<std::uint64_t> &masks) {
    std::uint64_t local = 0;
    for (auto m : masks) {
        local = (local << 1) | ((i & m) != 0 ? 1U : 0U);
    }
    return local;
}

bool is_power_of_two(std::uint64_t x) { return x != 0 && (x & (x - 1)) == 0; }

// Plain product; std::complex's operator* takes the slow Annex G path.
inline Amplitude cmul(Amplitude a, Amplitude b) {
    return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

}  // namespace

bool MeasurementOutcome::all_zero() const {
    return std::all_of(bits.begin(), bits.end(), [](int b) { return b == 0; });
}

StateVector::StateVector(std::size_t num_sites, std::size_t max_sites) : num_sites_(num_sites) {
    if (num_sites > max_sites) fail(ErrorCode::kOutOfRange,
            "register of " + std::to_string(num_sites) + " sites exceeds the limit of " +
                std::to_string(max_sites));
    amps_.assign(std::uint64_t{1} << num_sites, Amplitude{0.0, 0.0});
    amps_[0] = 1.0;
}

StateVector StateVector::basis_state(std::size_t num_sites, std::uint64_t index, std::size_t max_sites) {
    StateVector s(num_sites, max_sites);
    require(index < s.dim(), ErrorCode::kOutOfRange, "basis_state: index out of range");
    s.amps_[0] = 0.0;
    s.amps_[index] = 1.0;
    return s;
}

StateVector StateVector::from_amplitudes(std::vector<Amplitude> amps, std::size_t max_sites) {
    require(is_power_of_two(amps.size()), ErrorCode::kInvalidArgument,
            "from_amplitudes: length must be a power of two");
    std::size_t n = 0;
    while ((std::uint64_t{1} << n) < amps.size()) {
        ++n;
    }
    for (const auto &a : amps) {
        require(std::isfinite(a.real()) && std::isfinite(a.imag()), ErrorCode::kInvalidArgument,
                "from_amplitudes: non-finite amplitude");
    }
    StateVector s(n, max_sites);
    s.amps_ = std::move(amps);
    s.check_normalized();
    return s;
}

Amplitude StateVector::amplitude(std::uint64_t index) const {
    require(index < dim(), ErrorCode::kOutOfRange, "amplitude: index out of range");
    return amps_[index];
}

double StateVector::norm() const {
    double total = 0.0;
    for (const auto &a : amps_) {
        total += std::norm(a);
    }
    return std::sqrt(total);
}

std::uint64_t StateVector::site_mask(std::size_t site) const {
    check_site(site);
    return std::uint64_t{1} << (num_sites_ - 1 - site);
}

void StateVector::check_site(std::size_t site) const {
    if (site >= num_sites_) fail(ErrorCode::kOutOfRange,
            "site " + std::to_string(site) + " out of range for " + std::to_string(num_sites_) + " sites");
}

void StateVector::check_normalized(double tolerance) const {
    const double n = norm();
    if (!(std::abs(n - 1.0) <= tolerance)) fail(ErrorCode::kInternal,
            "norm invariant violated: |psi| = " + std::to_string(n));
}

StateVector &StateVector::apply_m(std::size_t site) { return apply(m_gate(site)); }

StateVector &StateVector::apply_wh(const std::vector<std::size_t> &sites) {
    std::vector<std::size_t> sorted = sites;
    std::sort(sorted.begin(), sorted.end());
    require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(), ErrorCode::kInvalidArgument,
            "apply_wh: duplicate site");
    for (auto s : sites) {
        check_site(s);
    }
    return apply(wh(sites));
}

StateVector &StateVector::rotate_basis_phase(std::uint64_t basis_index, double angle) {
    require(basis_index < dim(), ErrorCode::kOutOfRange, "rotate_basis_phase: index out of range");
    amps_[basis_index] *= std::polar(1.0, angle);
    return *this;
}

StateVector &StateVector::apply_diagonal_phase(const std::map<std::uint64_t, double> &angles) {
    for (const auto &[index, angle] : angles) {
        require(index < dim(), ErrorCode::kOutOfRange, "apply_diagonal_phase: index out of range");
    }
    for (const auto &[index, angle] : angles) {
        amps_[index] *= std::polar(1.0, angle);
    }
    return *this;
}

StateVector &StateVector::apply_cnot(std::size_t control, std::size_t target) { return apply(cnot(control, target)); }

StateVector &StateVector::apply(const Gate &gate) {
    // Bitmask over sites; no allocation on this path.
    std::uint64_t seen = 0;
    auto mark = [&](std::size_t site) {
        check_site(site);
        const std::uint64_t m = std::uint64_t{1} << site;
        require((seen & m) == 0, ErrorCode::kInvalidArgument, "gate references a site more than once");
        seen |= m;
    };
    std::visit(Overloaded{
                   [&](const MGate &g) { mark(g.site); },
                   [&](const CnotGate &g) {
                       mark(g.control);
                       mark(g.target);
                   },
                   [&](const BasisPhaseGate &g) {
                       for (auto x : g.sites) mark(x);
                   },
                   [&](const DiagonalPhaseGate &g) {
                       for (auto x : g.sites) mark(x);
                   },
               },
               gate.op);
    for (const auto &c : gate.controls) mark(c.site);
    apply_unchecked(gate);
    return *this;
}

StateVector &StateVector::apply(const Circuit &circuit) {
    for (const auto &g : circuit.gates()) {
        apply(g);
    }
    check_normalized();
    return *this;
}

void StateVector::apply_unchecked(const Gate &gate) {
    std::uint64_t cmask = 0;
    std::uint64_t cval = 0;
    for (const auto &c : gate.controls) {
        const auto m = site_mask(c.site);
        cmask |= m;
        if (c.value) {
            cval |= m;
        }
    }
    const std::uint64_t d = dim();
    auto *amps = amps_.data();

    std::visit(
        Overloaded{
            [&](const MGate &g) {
                const std::uint64_t bit = site_mask(g.site);
                // Interleaved re/im pairs.
                double *raw = reinterpret_cast<double *>(amps);
                for (std::uint64_t base = 0; base < d; base += 2 * bit) {
                    for (std::uint64_t i = base; i < base + bit; ++i) {
                        if (cmask != 0 && (i & cmask) != cval) continue;
                        double *x = raw + 2 * i;
                        double *y = raw + 2 * (i | bit);
                        const double ar = x[0], ai = x[1], br = y[0], bi = y[1];
                        x[0] = (ar + br) * kInvSqrt2;
                        x[1] = (ai + bi) * kInvSqrt2;
                        y[0] = (ar - br) * kInvSqrt2;
                        y[1] = (ai - bi) * kInvSqrt2;
                    }
                }
            },
            [&](const CnotGate &g) {
                const std::uint64_t cm = cmask | site_mask(g.control);
                const std::uint64_t cv = cval | site_mask(g.control);
                const std::uint64_t bit = site_mask(g.target);
                for (std::uint64_t base = 0; base < d; base += 2 * bit) {
                    for (std::uint64_t i = base; i < base + bit; ++i) {
                        if ((i & cm) != cv) continue;
                        std::swap(amps[i], amps[i | bit]);
                    }
                }
            },
            [&](const BasisPhaseGate &g) {
                const std::size_t k = g.sites.size();
                require(g.index < (std::uint64_t{1} << k), ErrorCode::kOutOfRange, "basis phase index out of range");
                std::uint64_t smask = 0;
                std::uint64_t sval = 0;
                for (std::size_t b = 0; b < k; ++b) {
                    const auto m = site_mask(g.sites[b]);
                    smask |= m;
                    if ((g.index >> (k - 1 - b)) & 1U) sval |= m;
                }
                const std::uint64_t cm = cmask | smask;
                const std::uint64_t cv = cval | sval;
                const Amplitude f = std::polar(1.0, g.angle);
                for (std::uint64_t i = 0; i < d; ++i) {
                    if ((i & cm) == cv) amps[i] = cmul(amps[i], f);
                }
            },
            [&](const DiagonalPhaseGate &g) {
                const std::size_t k = g.sites.size();
                require(g.angles.size() == (std::uint64_t{1} << k), ErrorCode::kInvalidArgument,
                        "diagonal phase needs 2^k angles");
                std::vector<Amplitude> computed;
                const std::vector<Amplitude> *factors = &g.factors;
                if (g.factors.size() != g.angles.size()) {
                    computed.resize(g.angles.size());
                    for (std::size_t j = 0; j < g.angles.size(); ++j) computed[j] = std::polar(1.0, g.angles[j]);
                    factors = &computed;
                }
                const Amplitude *f = factors->data();
                bool contiguous = k > 0;
                for (std::size_t b = 1; b < k; ++b) contiguous = contiguous && g.sites[b] == g.sites[0] + b;
                if (k == 0) {
                    for (std::uint64_t i = 0; i < d; ++i)
                        if ((i & cmask) == cval) amps[i] = cmul(amps[i], f[0]);
                } else if (contiguous) {
                    const std::size_t shift = num_sites_ - g.sites[0] - k;
                    const std::uint64_t lmask = (std::uint64_t{1} << k) - 1;
                    for (std::uint64_t i = 0; i < d; ++i)
                        if ((i & cmask) == cval) amps[i] = cmul(amps[i], f[(i >> shift) & lmask]);
                } else {
                    std::vector<std::uint64_t> masks;
                    for (auto s : g.sites) masks.push_back(site_mask(s));
                    for (std::uint64_t i = 0; i < d; ++i)
                        if ((i & cmask) == cval) amps[i] = cmul(amps[i], f[gather(i, masks)]);
                }
            },
        },
        gate.op);
}

double StateVector::probability_of(std::uint64_t basis_index) const {
    require(basis_index < dim(), ErrorCode::kOutOfRange, "probability_of: index out of range");
    return std::norm(amps_[basis_index]);
}

double StateVector::probability_of_bits(const std::vector<std::size_t> &sites, const std::vector<int> &bits) const {
    require(sites.size() == bits.size(), ErrorCode::kInvalidArgument, "sites/bits length mismatch");
    std::uint64_t cm = 0;
    std::uint64_t cv = 0;
    for (std::size_t k = 0; k < sites.size(); ++k) {
        const auto m = site_mask(sites[k]);
        require((cm & m) == 0, ErrorCode::kInvalidArgument, "duplicate measured site");
        cm |= m;
        if (bits[k] != 0) cv |= m;
    }
    double p = 0.0;
    for (std::uint64_t i = 0; i < dim(); ++i) {
        if ((i & cm) == cv) p += std::norm(amps_[i]);
    }
    return p;
}

MeasurementOutcome StateVector::project_sites(const std::vector<std::size_t> &sites, const std::vector<int> &bits) const {
    const double p = probability_of_bits(sites, bits);
    require(p > 0.0, ErrorCode::kInternal, "projection onto a zero-probability branch");
    std::uint64_t cm = 0;
    std::uint64_t cv = 0;
    for (std::size_t k = 0; k < sites.size(); ++k) {
        cm |= site_mask(sites[k]);
        if (bits[k] != 0) cv |= site_mask(sites[k]);
    }
    StateVector post = *this;
    const double scale = 1.0 / std::sqrt(p);
    for (std::uint64_t i = 0; i < dim(); ++i) {
        post.amps_[i] = (i & cm) == cv ? amps_[i] * scale : Amplitude{0.0, 0.0};
    }
    return MeasurementOutcome{sites, bits, std::move(post), p};
}

std::vector<double> StateVector::outcome_distribution(const std::vector<std::size_t> &sites) const {
    require(sites.size() <= num_sites_, ErrorCode::kInvalidArgument, "outcome_distribution: too many sites");
    std::vector<std::uint64_t> masks;
    for (auto s : sites) masks.push_back(site_mask(s));
    std::vector<double> probs(std::uint64_t{1} << sites.size(), 0.0);
    for (std::uint64_t i = 0; i < dim(); ++i) {
        probs[gather(i, masks)] += std::norm(amps_[i]);
    }
    return probs;
}

std::size_t sample_index(const std::vector<double> &weights, RandomStream &rng) {
    double total = 0.0;
    for (double w : weights) total += w;
    const double u = rng.uniform() * total;
    std::size_t pick = weights.size();
    double acc = 0.0;
    for (std::size_t k = 0; k < weights.size(); ++k) {
        if (weights[k] <= 0.0) continue;
        pick = k;
        acc += weights[k];
        if (u < acc) break;
    }
    require(pick < weights.size(), ErrorCode::kInternal, "sample_index: no outcome has positive probability");
    return pick;
}

MeasurementOutcome StateVector::measure_sites(const std::vector<std::size_t> &sites, RandomStream &rng) const {
    const std::uint64_t pick = sample_index(outcome_distribution(sites), rng);
    std::vector<int> bits(sites.size());
    for (std::size_t b = 0; b < sites.size(); ++b) {
        bits[b] = static_cast<int>((pick >> (sites.size() - 1 - b)) & 1U);
    }
    return project_sites(sites, bits);
}

StateVector kron(const StateVector &high, const StateVector &low) {
    StateVector out(high.num_sites() + low.num_sites());
    std::vector<Amplitude> amps(out.dim());
    const auto h = high.amplitudes();
    const auto l = low.amplitudes();
    for (std::uint64_t i = 0; i < h.size(); ++i) {
        for (std::uint64_t j = 0; j < l.size(); ++j) {
            amps[i * l.size() + j] = h[i] * l[j];
        }
    }
    return StateVector::from_amplitudes(std::move(amps));
}

StateVector remove_site(const StateVector &state, std::size_t site, int bit, double tolerance) {
    const std::uint64_t mask = state.site_mask(site);
    const std::size_t n = state.num_sites();
    const auto amps = state.amplitudes();
    std::vector<Amplitude> kept(state.dim() / 2);
    double stray = 0.0;
    for (std::uint64_t i = 0; i < state.dim(); ++i) {
        const bool on = (i & mask) != 0;
        if (on != (bit != 0)) {
            stray += std::norm(amps[i]);
            continue;
        }
        // Squeeze out the removed bit.
        const std::uint64_t hi = (i >> (n - site)) << (n - site - 1);
        const std::uint64_t lo = i & (mask - 1);
        kept[hi | lo] = amps[i];
    }
    if (!(std::sqrt(stray) <= tolerance)) fail(ErrorCode::kContract,
            "remove_site: site " + std::to_string(site) + " is not in a definite state");
    return StateVector::from_amplitudes(std::move(kept));
}

Amplitude inner(const StateVector &a, const StateVector &b) {
    require(a.dim() == b.dim(), ErrorCode::kInvalidArgument, "inner: dimension mismatch");
    Amplitude acc{0.0, 0.0};
    const auto x = a.amplitudes();
    const auto y = b.amplitudes();
    for (std::uint64_t i = 0; i < x.size(); ++i) {
        acc += std::conj(x[i]) * y[i];
    }
    return acc;
}

double max_abs_diff(const StateVector &a, const StateVector &b) {
    require(a.dim() == b.dim(), ErrorCode::kInvalidArgument, "max_abs_diff: dimension mismatch");
    double m = 0.0;
    for (std::uint64_t i = 0; i < a.dim(); ++i) {
        m = std::max(m, std::abs(a.amplitudes()[i] - b.amplitudes()[i]));
    }
    return m;
}

}  // namespace telecomp::qsim
