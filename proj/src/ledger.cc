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

#include "telecost/ledger.h"

#include <cmath>

#include "telecost/errors.h"
#include "telecost/precision.h"
#include "telecost/protocol.h"

namespace telecost {

const char* to_string(Protocol p) { return p == Protocol::QT ? "QT" : "RSP"; }

int classical_bits_for(Protocol p) { return p == Protocol::QT ? 2 : 1; }

void validate(const LedgerRecord& rec) {
    if (rec.classical_bits_c != classical_bits_for(rec.protocol)) {
        throw ValidationError(std::string("LedgerRecord: ") + to_string(rec.protocol) + " run with c = " +
                              std::to_string(rec.classical_bits_c));
    }
    if (rec.epr_channel_bits != rec.prep_bits_m) {
        throw ValidationError("LedgerRecord: pair must be credited with exactly the preparation bits");
    }
    if (rec.verified_bits > rec.prep_bits_m || rec.verified_bits < 0) {
        throw ValidationError("LedgerRecord: verified bits outside [0, m]");
    }
}

LedgerRecord account(const RunRecord& run) {
    if (!run.bob_final.has_value() || run.outcome < 0) {
        throw ValidationError("account: run has not completed");
    }
    if (run.message.protocol != run.protocol) {
        throw ValidationError("account: message protocol does not match the run");
    }
    validate(run.message);
    if (run.truncated_bits < 0 || run.truncated_bits > run.prep_bits) {
        throw ValidationError("account: truncated bits outside [0, m]");
    }
    LedgerRecord rec;
    rec.protocol = run.protocol;
    rec.classical_bits_c = static_cast<int>(run.message.bits.size());
    rec.prep_bits_m = static_cast<int>(prep_info(2, run.prep_bits));
    rec.truncated_bits_n = run.truncated_bits;
    rec.epr_pairs_consumed = 1;
    rec.epr_channel_bits = rec.prep_bits_m;
    rec.verified_bits = rec.prep_bits_m - run.truncated_bits;
    validate(rec);
    return rec;
}

void LedgerSummary::add(const LedgerRecord& rec) {
    runs++;
    (rec.protocol == Protocol::QT ? qt_runs : rsp_runs)++;
    classical_bits += static_cast<std::uint64_t>(rec.classical_bits_c);
    prep_bits += static_cast<std::uint64_t>(rec.prep_bits_m);
    epr_pairs += static_cast<std::uint64_t>(rec.epr_pairs_consumed);
    hidden_bits += rec.hidden_cost();
}

LedgerSummary& LedgerSummary::operator+=(const LedgerSummary& o) {
    runs += o.runs;
    qt_runs += o.qt_runs;
    rsp_runs += o.rsp_runs;
    classical_bits += o.classical_bits;
    prep_bits += o.prep_bits;
    epr_pairs += o.epr_pairs;
    hidden_bits += o.hidden_bits;
    return *this;
}

double classical_cost_bound(double rho_entropy_bits) { return 2.0 * rho_entropy_bits; }

std::int64_t cv_prep_info(const CvPhaseSpace& space, std::int64_t m) {
    if (!std::isfinite(space.volume_in_hbar3) || space.volume_in_hbar3 < 1.0) {
        throw ValidationError("cv_prep_info: phase space holds fewer than one cell");
    }
    if (m < 0) {
        throw ValidationError("cv_prep_info: precision must be non-negative");
    }
    auto cells = static_cast<std::int64_t>(std::floor(space.volume_in_hbar3));
    return cells == 1 ? 0 : prep_info(cells, m);
}

std::string ledger_csv_header() { return "protocol,c,m,n,hidden_cost,epr_pairs,verified_bits"; }

std::string ledger_csv_row(const LedgerRecord& rec) {
    return std::string(to_string(rec.protocol)) + "," + std::to_string(rec.classical_bits_c) + "," +
           std::to_string(rec.prep_bits_m) + "," + std::to_string(rec.truncated_bits_n) + "," +
           std::to_string(rec.hidden_cost()) + "," + std::to_string(rec.epr_pairs_consumed) + "," +
           std::to_string(rec.verified_bits);
}

}  // namespace telecost
