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

#ifndef TELECOST_LEDGER_H
#define TELECOST_LEDGER_H

// Information accounting for teleportation and remote state preparation runs.
//
// Each run moves a state carrying m bits of preparation information while the
// classical channel carries c bits (2 for teleportation, 1 for equatorial
// remote preparation). The ledger attributes the m bits to the shared pair and
// reports m - c as the hidden cost. The two rejected attributions, m - c and
// m + c bits over the pair, are carried as comparison columns only.

#include <cstdint>
#include <string>

namespace telecost {

enum class Protocol { QT, RSP };

const char* to_string(Protocol p);

/// Classical bits per run for the implemented protocols.
int classical_bits_for(Protocol p);

struct LedgerRecord {
    Protocol protocol = Protocol::QT;
    int classical_bits_c = 0;
    int prep_bits_m = 0;
    int truncated_bits_n = 0;
    int epr_pairs_consumed = 0;
    int epr_channel_bits = 0;
    int verified_bits = 0;

    int hidden_cost() const { return epr_channel_bits - classical_bits_c; }
    /// m = c: nothing left for the pair to carry.
    bool degenerate() const { return prep_bits_m == classical_bits_c; }
    /// Comparison columns for the rejected attributions.
    int epr_bits_if_m_minus_c() const { return prep_bits_m - classical_bits_c; }
    int epr_bits_if_m_plus_c() const { return prep_bits_m + classical_bits_c; }

    friend bool operator==(const LedgerRecord&, const LedgerRecord&) = default;
};

/// Throws ValidationError if the record breaks the protocol's accounting rules.
void validate(const LedgerRecord& rec);

struct RunRecord;

/// Ledger entry for a completed run. Throws ValidationError when the run has
/// no final Bob state or its message does not match the protocol.
LedgerRecord account(const RunRecord& run);

/// Ensemble totals; merging is associative and commutative.
struct LedgerSummary {
    std::uint64_t runs = 0;
    std::uint64_t qt_runs = 0;
    std::uint64_t rsp_runs = 0;
    std::uint64_t classical_bits = 0;
    std::uint64_t prep_bits = 0;
    std::uint64_t epr_pairs = 0;
    std::int64_t hidden_bits = 0;

    void add(const LedgerRecord& rec);
    LedgerSummary& operator+=(const LedgerSummary& other);
    friend bool operator==(const LedgerSummary&, const LedgerSummary&) = default;
};

/// 2 S(ρ) bits.
double classical_cost_bound(double rho_entropy_bits);

/// Phase-space volume in units of ħ³; its floor is the number of cells.
struct CvPhaseSpace {
    double volume_in_hbar3 = 1.0;
};

/// (N - 1) m bits for N = ⌊volume⌋ cells. Throws ValidationError when N < 1 or m < 0.
std::int64_t cv_prep_info(const CvPhaseSpace& space, std::int64_t m);

/// Header and row in the ledger CSV layout: protocol,c,m,n,hidden_cost,epr_pairs,verified_bits
std::string ledger_csv_header();
std::string ledger_csv_row(const LedgerRecord& rec);

}  // namespace telecost

#endif
