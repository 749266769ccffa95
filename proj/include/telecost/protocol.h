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

#ifndef TELECOST_PROTOCOL_H
#define TELECOST_PROTOCOL_H

// Teleportation and remote state preparation over a shared singlet.
//
// Slot conventions: the input qubit and Alice's half of the pair are measured
// jointly; Bob holds the second half. Bell outcomes are indexed
//
//     0: Φ⁺  1: Φ⁻  2: Ψ⁺  3: Ψ⁻
//
// and with the |Ψ⁻⟩ resource Bob's conditional state is σ_k|ψ⟩ up to phase
// with σ_k = (σ_y, σ_x, σ_z, I). The correction is the same Pauli.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "telecost/ledger.h"
#include "telecost/precision.h"
#include "telecost/qmath.h"
#include "telecost/rng.h"

namespace telecost {

enum BellOutcome : int { kPhiPlus = 0, kPhiMinus = 1, kPsiPlus = 2, kPsiMinus = 3 };

/// One shared pair. Initialized to |Ψ⁻⟩ unless built from an explicit state;
/// a protocol run consumes it exactly once.
class EprResource {
   public:
    static EprResource singlet() { return EprResource(TwoQubitState::singlet()); }
    /// Arbitrary pair state, e.g. a product state for the no-signaling probe.
    static EprResource from_state(const TwoQubitState& joint);

    const TwoQubitState& joint() const { return joint_; }
    bool consumed() const { return consumed_; }
    bool is_singlet() const;

    /// Hands out the pair state and marks the resource used. Throws ProtocolError on reuse.
    TwoQubitState consume();

   private:
    explicit EprResource(const TwoQubitState& joint) : joint_(joint) {}

    TwoQubitState joint_;
    bool consumed_ = false;
};

struct ClassicalMessage {
    Protocol protocol = Protocol::QT;
    std::vector<int> bits;

    friend bool operator==(const ClassicalMessage&, const ClassicalMessage&) = default;
};

/// Length 2 for QT, 1 for RSP, entries in {0, 1}.
void validate(const ClassicalMessage& msg);

ClassicalMessage encode_bell_outcome(int outcome);
int decode_bell_outcome(const ClassicalMessage& msg);

/// Haar-random pure state.
PureQubit haar_random_state(Rng& rng);

/// The agreed starting state |ref⟩ = |↑⟩.
inline PureQubit reference_state() { return PureQubit::up(); }

/// Unitary that takes |ref⟩ to the grid point's state.
Operator2 preparation_unitary(const GridPoint& g);

/// Charlie's preparation: preparation_unitary(g) applied to |ref⟩.
PureQubit prepare(const GridPoint& g);

struct Branch {
    double probability = 0.0;
    PureQubit bob_conditional;
};

/// All four Bell-measurement branches for `input` against the pair state.
/// Branches with zero probability carry |↑⟩ as a placeholder.
std::array<Branch, 4> bell_branches(const PureQubit& input, const TwoQubitState& pair);

/// Index of the sampled category by inverse CDF over `probabilities`.
std::size_t sample_index(std::span<const double> probabilities, Rng& rng);

struct BellMeasurement {
    int outcome = 0;
    PureQubit bob_conditional;
};

/// Samples Alice's Bell measurement; consumes the resource.
BellMeasurement bell_measure(const PureQubit& input, EprResource& resource, Rng& rng);

/// Pauli that undoes Bell outcome k.
Operator2 bell_correction(int outcome);

/// Bob's correction after receiving a QT message. Throws ValidationError for an RSP message.
PureQubit qt_correct(const PureQubit& bob_conditional, const ClassicalMessage& msg);

/// Great circles on which one classical bit suffices.
enum class RspFamily {
    Equatorial,      ///< |a0| = |a1|; Bob corrects with σ_z
    RealGreatCircle  ///< real amplitudes up to phase; Bob corrects with σ_y
};

/// Family of a transmissible state; DomainError when it is in neither.
RspFamily rsp_family(const PureQubit& eta);

/// η⊥ = (-conj a1, conj a0).
PureQubit orthogonal(const PureQubit& s);

struct RspBranch {
    double probability = 0.0;
    PureQubit bob_conditional;
    /// Value of the 1-bit message Alice sends for this branch.
    int correction_bit = 0;
};

/// Alice's measurement in the basis (η, η⊥) on her half of the pair.
/// Branch 0 is the η outcome, branch 1 the η⊥ outcome.
std::array<RspBranch, 2> rsp_branches(const PureQubit& eta, const TwoQubitState& pair);

/// Bob's correction after a 1-bit RSP message.
PureQubit rsp_correct(const PureQubit& bob_conditional, RspFamily family, const ClassicalMessage& msg);

/// Equatorial state (|↑⟩ + e^{iφ}|↓⟩)/√2 on the m-bit azimuth grid, φ = k 2^{1-m/2};
/// neighbouring k are 2^{-m/2} apart in Fubini-Study angle.
PureQubit equatorial_state(int m, std::int64_t k);
std::int64_t equatorial_extent(int m);

struct RunRecord {
    Protocol protocol = Protocol::QT;
    int prep_bits = 0;
    int truncated_bits = 0;
    /// Grid point Charlie prepared from, when the input came from a grid.
    std::optional<GridPoint> prepared;
    PureQubit input;
    /// Bell outcome (QT) or Alice's basis outcome (RSP); -1 until measured.
    int outcome = -1;
    ClassicalMessage message;
    /// Bob's state after Alice's measurement, before he applies the correction.
    std::optional<PureQubit> bob_conditional;
    std::optional<PureQubit> bob_final;
    std::optional<LedgerRecord> ledger;
};

/// Full teleportation of a grid-prepared state: prepare, Bell measurement,
/// 2-bit message, correction, ledger.
RunRecord teleport(const GridPoint& g, EprResource& resource, Rng& rng);

/// Full remote preparation of a known state carrying `prep_bits` of precision.
RunRecord rsp_run(const PureQubit& eta, int prep_bits, EprResource& resource, Rng& rng);
/// Remote preparation of a RealRotation grid point.
RunRecord rsp_run(const GridPoint& g, EprResource& resource, Rng& rng);

struct ProbeResult {
    DensityOp bob;
    /// Estimated (or exact) ⟨σ_x⟩, ⟨σ_y⟩, ⟨σ_z⟩ of Bob's marginal.
    std::array<double, 3> bloch{};
    /// Binomial standard errors of `bloch`; zero on the analytic path.
    std::array<double, 3> bloch_sigma{};
    std::uint64_t runs = 0;
};

/// Bob's state averaged over Alice's outcomes when she measures in the basis
/// (basis0, basis0⊥), with the message withheld.
DensityOp bob_marginal(const TwoQubitState& pair, const PureQubit& alice_basis0);

/// Reconstructs Bob's marginal from n_runs fresh copies of the resource's
/// pair state: Alice measures in (basis0, basis0⊥), Bob measures σ_x, σ_y or
/// σ_z in rotation and never sees her outcome. n_runs = 0 returns the exact
/// marginal. The resource itself is only read.
ProbeResult no_signaling_probe(const EprResource& resource, const PureQubit& alice_basis0, std::uint64_t n_runs,
                               Rng& rng);
/// Alice's basis vector R_y(angle)|↑⟩.
ProbeResult no_signaling_probe(const EprResource& resource, double alice_basis_angle, std::uint64_t n_runs, Rng& rng);

}  // namespace telecost

#endif
