// Copyright 2026 The telecost Authors
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

#include "telecost/protocol.h"

#include <cmath>
#include <numbers>
#include <string>

#include "telecost/errors.h"

namespace telecost {

namespace {

const double kHalfRoot = 1.0 / std::numbers::sqrt2;

// Bell vectors on (input, alice): coefficient of |i a⟩ at [k][2 i + a].
constexpr std::array<std::array<double, 4>, 4> kBell{{
    {1, 0, 0, 1},   // Φ⁺
    {1, 0, 0, -1},  // Φ⁻
    {0, 1, 1, 0},   // Ψ⁺
    {0, 1, -1, 0},  // Ψ⁻
}};

// Bob's unnormalized state after Alice projects her pair half onto `alice`.
std::array<Complex, 2> project_alice(const TwoQubitState& pair, const PureQubit& alice) {
    std::array<Complex, 2> bob{};
    for (int b = 0; b < 2; b++) {
        bob[b] = std::conj(alice.a0) * pair.amp(0, b) + std::conj(alice.a1) * pair.amp(1, b);
    }
    return bob;
}

PureQubit normalize_or_placeholder(const std::array<Complex, 2>& v, double probability) {
    if (probability <= 0.0) {
        return PureQubit::up();
    }
    return PureQubit::normalized(v[0], v[1]);
}

struct ProbeCounts {
    std::array<std::uint64_t, 3> shots{};
    std::array<std::uint64_t, 3> plus{};

    ProbeCounts& operator+=(const ProbeCounts& o) {
        for (int k = 0; k < 3; k++) {
            shots[k] += o.shots[k];
            plus[k] += o.plus[k];
        }
        return *this;
    }
};

DensityOp from_bloch(const std::array<double, 3>& r) {
    DensityOp rho;
    rho.m(0, 0) = 0.5 * (1.0 + r[2]);
    rho.m(1, 1) = 0.5 * (1.0 - r[2]);
    rho.m(0, 1) = Complex{0.5 * r[0], -0.5 * r[1]};
    rho.m(1, 0) = Complex{0.5 * r[0], 0.5 * r[1]};
    return rho;
}

}  // namespace

EprResource EprResource::from_state(const TwoQubitState& joint) {
    validate(joint);
    return EprResource(joint);
}

bool EprResource::is_singlet() const {
    Complex overlap{};
    auto singlet = TwoQubitState::singlet();
    for (size_t k = 0; k < 4; k++) {
        overlap += std::conj(singlet.c[k]) * joint_.c[k];
    }
    return std::norm(overlap) >= 1.0 - kAlgebraTol;
}

TwoQubitState EprResource::consume() {
    if (consumed_) {
        throw ProtocolError("EprResource: pair already consumed by an earlier run");
    }
    consumed_ = true;
    return joint_;
}

void validate(const ClassicalMessage& msg) {
    std::size_t expected = msg.protocol == Protocol::QT ? 2 : 1;
    if (msg.bits.size() != expected) {
        throw ValidationError(std::string("ClassicalMessage: ") + to_string(msg.protocol) + " message needs " +
                              std::to_string(expected) + " bits, got " + std::to_string(msg.bits.size()));
    }
    for (int b : msg.bits) {
        if (b != 0 && b != 1) {
            throw ValidationError("ClassicalMessage: bit value " + std::to_string(b));
        }
    }
}

ClassicalMessage encode_bell_outcome(int outcome) {
    if (outcome < 0 || outcome > 3) {
        throw ValidationError("encode_bell_outcome: outcome " + std::to_string(outcome));
    }
    return {Protocol::QT, {outcome >> 1, outcome & 1}};
}

int decode_bell_outcome(const ClassicalMessage& msg) {
    if (msg.protocol != Protocol::QT) {
        throw ValidationError("decode_bell_outcome: not a QT message");
    }
    validate(msg);
    return 2 * msg.bits[0] + msg.bits[1];
}

PureQubit haar_random_state(Rng& rng) {
    // |a0|² is uniform on [0, 1] under the Haar measure.
    double u = rng.uniform01();
    double phase = 2.0 * std::numbers::pi * rng.uniform01();
    return {Complex{std::sqrt(1.0 - u)}, std::polar(std::sqrt(u), phase)};
}

Operator2 preparation_unitary(const GridPoint& g) {
    validate(g);
    if (g.spec.mode == GridMode::RealRotation) {
        return rotation_y(2.0 * half_angle(g));
    }
    // Columns (a0, a1) and (-conj a1, a0) with a0 real.
    PureQubit s = dequantize(g);
    return {Matrix2{{s.a0, -std::conj(s.a1), s.a1, std::conj(s.a0)}}};
}

PureQubit prepare(const GridPoint& g) { return apply(preparation_unitary(g), reference_state()); }

std::array<Branch, 4> bell_branches(const PureQubit& input, const TwoQubitState& pair) {
    validate(input);
    validate(pair);
    const std::array<Complex, 2> psi{input.a0, input.a1};
    std::array<Branch, 4> out;
    for (int k = 0; k < 4; k++) {
        std::array<Complex, 2> bob{};
        for (int b = 0; b < 2; b++) {
            for (int i = 0; i < 2; i++) {
                for (int a = 0; a < 2; a++) {
                    bob[b] += kBell[k][2 * i + a] * kHalfRoot * psi[i] * pair.amp(a, b);
                }
            }
        }
        double p = std::norm(bob[0]) + std::norm(bob[1]);
        out[k] = {p, normalize_or_placeholder(bob, p)};
    }
    return out;
}

std::size_t sample_index(std::span<const double> probabilities, Rng& rng) {
    double u = rng.uniform01();
    double cumulative = 0.0;
    std::size_t last_nonzero = 0;
    for (std::size_t k = 0; k < probabilities.size(); k++) {
        if (probabilities[k] <= 0.0) {
            continue;
        }
        cumulative += probabilities[k];
        last_nonzero = k;
        if (u < cumulative) {
            return k;
        }
    }
    // u landed in the rounding slack above the final cumulative sum.
    return last_nonzero;
}

BellMeasurement bell_measure(const PureQubit& input, EprResource& resource, Rng& rng) {
    TwoQubitState pair = resource.consume();
    auto branches = bell_branches(input, pair);
    std::array<double, 4> p{};
    for (int k = 0; k < 4; k++) {
        p[k] = branches[k].probability;
    }
    auto k = static_cast<int>(sample_index(p, rng));
    return {k, branches[k].bob_conditional};
}

Operator2 bell_correction(int outcome) {
    switch (outcome) {
        case kPhiPlus:
            return Operator2::pauli_y();
        case kPhiMinus:
            return Operator2::pauli_x();
        case kPsiPlus:
            return Operator2::pauli_z();
        case kPsiMinus:
            return Operator2::identity();
        default:
            throw ValidationError("bell_correction: outcome " + std::to_string(outcome));
    }
}

PureQubit qt_correct(const PureQubit& bob_conditional, const ClassicalMessage& msg) {
    return apply(bell_correction(decode_bell_outcome(msg)), bob_conditional);
}

RspFamily rsp_family(const PureQubit& eta) {
    validate(eta);
    if (std::abs(std::norm(eta.a0) - 0.5) <= kValidationTol) {
        return RspFamily::Equatorial;
    }
    if (std::abs((std::conj(eta.a0) * eta.a1).imag()) <= kValidationTol) {
        return RspFamily::RealGreatCircle;
    }
    throw DomainError("rsp_family: " + to_string(eta) +
                      " is neither equatorial nor real; one-bit remote preparation does not apply");
}

PureQubit orthogonal(const PureQubit& s) { return {-std::conj(s.a1), std::conj(s.a0)}; }

std::array<RspBranch, 2> rsp_branches(const PureQubit& eta, const TwoQubitState& pair) {
    validate(eta);
    validate(pair);
    std::array<RspBranch, 2> out;
    const std::array<PureQubit, 2> basis{eta, orthogonal(eta)};
    for (int k = 0; k < 2; k++) {
        auto bob = project_alice(pair, basis[k]);
        double p = std::norm(bob[0]) + std::norm(bob[1]);
        out[k] = {p, normalize_or_placeholder(bob, p), 0};
    }
    // Singlet anti-correlation: finding η leaves Bob with η⊥, which the
    // family's π rotation maps back to η.
    out[0].correction_bit = 1;
    out[1].correction_bit = 0;
    return out;
}

PureQubit rsp_correct(const PureQubit& bob_conditional, RspFamily family, const ClassicalMessage& msg) {
    if (msg.protocol != Protocol::RSP) {
        throw ValidationError("rsp_correct: not an RSP message");
    }
    validate(msg);
    if (msg.bits[0] == 0) {
        return apply(Operator2::identity(), bob_conditional);
    }
    return apply(family == RspFamily::Equatorial ? Operator2::pauli_z() : Operator2::pauli_y(), bob_conditional);
}

std::int64_t equatorial_extent(int m) {
    validate(PrecisionSpec{m, GridMode::RealRotation});
    return static_cast<std::int64_t>(std::ceil(2.0 * std::numbers::pi / (2.0 * phi_min(m))));
}

PureQubit equatorial_state(int m, std::int64_t k) {
    if (k < 0 || k >= equatorial_extent(m)) {
        throw ValidationError("equatorial_state: index out of range");
    }
    double azimuth = 2.0 * phi_min(m) * static_cast<double>(k);
    return {Complex{kHalfRoot}, kHalfRoot * std::polar(1.0, azimuth)};
}

RunRecord teleport(const GridPoint& g, EprResource& resource, Rng& rng) {
    if (!resource.is_singlet()) {
        throw ProtocolError("teleport: resource is not the |Psi-> pair the corrections assume");
    }
    RunRecord run;
    run.protocol = Protocol::QT;
    run.prep_bits = g.spec.m;
    run.prepared = g;
    run.input = prepare(g);
    auto measured = bell_measure(run.input, resource, rng);
    run.outcome = measured.outcome;
    run.message = encode_bell_outcome(measured.outcome);
    run.bob_conditional = measured.bob_conditional;
    run.bob_final = qt_correct(measured.bob_conditional, run.message);
    run.ledger = account(run);
    return run;
}

RunRecord rsp_run(const PureQubit& eta, int prep_bits, EprResource& resource, Rng& rng) {
    RspFamily family = rsp_family(eta);
    if (!resource.is_singlet()) {
        throw ProtocolError("rsp_run: resource is not the |Psi-> pair the corrections assume");
    }
    TwoQubitState pair = resource.consume();
    auto branches = rsp_branches(eta, pair);
    std::array<double, 2> p{branches[0].probability, branches[1].probability};
    auto k = static_cast<int>(sample_index(p, rng));

    RunRecord run;
    run.protocol = Protocol::RSP;
    run.prep_bits = prep_bits;
    run.input = eta;
    run.outcome = k;
    run.message = {Protocol::RSP, {branches[k].correction_bit}};
    run.bob_conditional = branches[k].bob_conditional;
    run.bob_final = rsp_correct(branches[k].bob_conditional, family, run.message);
    run.ledger = account(run);
    return run;
}

RunRecord rsp_run(const GridPoint& g, EprResource& resource, Rng& rng) {
    if (g.spec.mode != GridMode::RealRotation) {
        throw DomainError("rsp_run: grid points must come from the RealRotation grid");
    }
    RunRecord run = rsp_run(prepare(g), g.spec.m, resource, rng);
    run.prepared = g;
    return run;
}

DensityOp bob_marginal(const TwoQubitState& pair, const PureQubit& alice_basis0) {
    validate(pair);
    validate(alice_basis0);
    DensityOp rho{Matrix2{}};
    for (const auto& v : {alice_basis0, orthogonal(alice_basis0)}) {
        auto bob = project_alice(pair, v);
        for (int r = 0; r < 2; r++) {
            for (int c = 0; c < 2; c++) {
                rho.m(r, c) += bob[r] * std::conj(bob[c]);
            }
        }
    }
    return rho;
}

ProbeResult no_signaling_probe(const EprResource& resource, const PureQubit& alice_basis0, std::uint64_t n_runs,
                               Rng& rng) {
    const TwoQubitState& pair = resource.joint();
    ProbeResult result;
    if (n_runs == 0) {
        result.bob = bob_marginal(pair, alice_basis0);
        const std::array<Operator2, 3> paulis{Operator2::pauli_x(), Operator2::pauli_y(), Operator2::pauli_z()};
        for (int k = 0; k < 3; k++) {
            result.bloch[k] = (paulis[k].m * result.bob.m).trace().real();
        }
        return result;
    }

    validate(alice_basis0);
    std::array<std::array<Complex, 2>, 2> bob{project_alice(pair, alice_basis0),
                                              project_alice(pair, orthogonal(alice_basis0))};
    std::array<double, 2> p{};
    std::array<PureQubit, 2> conditional;
    for (int k = 0; k < 2; k++) {
        p[k] = std::norm(bob[k][0]) + std::norm(bob[k][1]);
        conditional[k] = normalize_or_placeholder(bob[k], p[k]);
    }
    // P(+1) for Bob's σ_x, σ_y, σ_z measurement on each conditional state.
    std::array<std::array<double, 3>, 2> p_plus{};
    const std::array<Operator2, 3> paulis{Operator2::pauli_x(), Operator2::pauli_y(), Operator2::pauli_z()};
    for (int k = 0; k < 2; k++) {
        for (int b = 0; b < 3; b++) {
            p_plus[k][b] = 0.5 * (1.0 + expectation(paulis[b], conditional[k]));
        }
    }

    auto counts = run_trial_blocks<ProbeCounts>(n_runs, rng.next_u64(),
                                                [&](Rng& r, std::uint64_t begin, std::uint64_t end) {
                                                    ProbeCounts c;
                                                    for (std::uint64_t t = begin; t < end; t++) {
                                                        auto k = sample_index(p, r);
                                                        int basis = static_cast<int>(t % 3);
                                                        c.shots[basis]++;
                                                        if (r.uniform01() < p_plus[k][basis]) {
                                                            c.plus[basis]++;
                                                        }
                                                    }
                                                    return c;
                                                });

    result.runs = n_runs;
    for (int b = 0; b < 3; b++) {
        if (counts.shots[b] == 0) {
            continue;
        }
        auto shots = static_cast<double>(counts.shots[b]);
        double r = 2.0 * static_cast<double>(counts.plus[b]) / shots - 1.0;
        result.bloch[b] = r;
        result.bloch_sigma[b] = std::sqrt(std::max(0.0, 1.0 - r * r) / shots);
    }
    // Sampling noise can push the estimate just outside the Bloch ball.
    std::array<double, 3> clipped = result.bloch;
    double len = std::sqrt(clipped[0] * clipped[0] + clipped[1] * clipped[1] + clipped[2] * clipped[2]);
    if (len > 1.0) {
        for (auto& v : clipped) {
            v /= len;
        }
    }
    result.bob = from_bloch(clipped);
    return result;
}

ProbeResult no_signaling_probe(const EprResource& resource, double alice_basis_angle, std::uint64_t n_runs,
                               Rng& rng) {
    return no_signaling_probe(resource, apply(rotation_y(alice_basis_angle), reference_state()), n_runs, rng);
}

}  // namespace telecost
