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

#include <gtest/gtest.h>

#include <random>

#include "telecost/errors.h"
#include "telecost/ledger.h"
#include "telecost/protocol.h"

namespace telecost {
namespace {

RunRecord qt_run(int m, std::uint64_t seed) {
    Rng rng(seed);
    auto pair = EprResource::singlet();
    return teleport(random_grid_point({m, GridMode::RealRotation}, rng), pair, rng);
}

RunRecord rsp_equatorial_run(int m, std::uint64_t seed) {
    Rng rng(seed);
    auto pair = EprResource::singlet();
    return rsp_run(equatorial_state(m, 3), m, pair, rng);
}

TEST(Ledger, TeleportationCosts) {
    const double s = von_neumann_entropy(partial_trace_A(TwoQubitState::singlet()));
    EXPECT_NEAR(classical_cost_bound(s), 2.0, 1e-12);
    for (int m : {2, 8, 16, 32}) {
        auto rec = account(qt_run(m, static_cast<std::uint64_t>(m)));
        EXPECT_EQ(rec.protocol, Protocol::QT);
        EXPECT_EQ(rec.classical_bits_c, 2);
        EXPECT_EQ(rec.prep_bits_m, m);
        EXPECT_EQ(rec.epr_channel_bits, m);
        EXPECT_EQ(rec.epr_pairs_consumed, 1);
        EXPECT_EQ(rec.hidden_cost(), m - 2);
        EXPECT_EQ(rec.verified_bits, m);
        EXPECT_EQ(rec.epr_bits_if_m_minus_c(), m - 2);
        EXPECT_EQ(rec.epr_bits_if_m_plus_c(), m + 2);
        EXPECT_EQ(rec.degenerate(), m == 2);
    }
}

TEST(Ledger, RemotePreparationCosts) {
    for (int m : {2, 8, 16}) {
        auto rec = account(rsp_equatorial_run(m, 7));
        EXPECT_EQ(rec.protocol, Protocol::RSP);
        EXPECT_EQ(rec.classical_bits_c, 1);
        EXPECT_EQ(rec.hidden_cost(), m - 1);
    }
}

TEST(Ledger, TruncationLowersVerifiedBits) {
    auto run = qt_run(16, 1);
    run.truncated_bits = 6;
    auto rec = account(run);
    EXPECT_EQ(rec.truncated_bits_n, 6);
    EXPECT_EQ(rec.verified_bits, 10);
    EXPECT_EQ(rec.hidden_cost(), 14);
    run.truncated_bits = 17;
    EXPECT_THROW(account(run), ValidationError);
}

TEST(Ledger, IncompleteRunsRejected) {
    RunRecord fresh;
    EXPECT_THROW(account(fresh), ValidationError);
    auto run = qt_run(8, 2);
    run.message.protocol = Protocol::RSP;
    EXPECT_THROW(account(run), ValidationError);
    run = qt_run(8, 2);
    run.bob_final.reset();
    EXPECT_THROW(account(run), ValidationError);
}

TEST(Ledger, ValidateRules) {
    LedgerRecord rec{Protocol::QT, 2, 16, 0, 1, 16, 16};
    EXPECT_NO_THROW(validate(rec));
    auto bad = rec;
    bad.classical_bits_c = 1;
    EXPECT_THROW(validate(bad), ValidationError);
    bad = rec;
    bad.epr_channel_bits = 14;
    EXPECT_THROW(validate(bad), ValidationError);
    bad = rec;
    bad.verified_bits = 17;
    EXPECT_THROW(validate(bad), ValidationError);
}

TEST(Summary, MergeIsAssociativeAndCommutative) {
    std::mt19937_64 eng(61);
    std::vector<LedgerRecord> recs;
    for (int i = 0; i < 60; i++) {
        int m = std::uniform_int_distribution<int>(2, 32)(eng);
        recs.push_back(i % 3 == 0 ? account(rsp_equatorial_run(m, i)) : account(qt_run(m, i)));
    }
    LedgerSummary all;
    for (const auto& r : recs) {
        all.add(r);
    }
    for (int trial = 0; trial < 20; trial++) {
        std::shuffle(recs.begin(), recs.end(), eng);
        std::size_t cut1 = std::uniform_int_distribution<std::size_t>(0, recs.size())(eng);
        std::size_t cut2 = std::uniform_int_distribution<std::size_t>(cut1, recs.size())(eng);
        LedgerSummary a, b, c;
        for (std::size_t i = 0; i < recs.size(); i++) {
            (i < cut1 ? a : i < cut2 ? b : c).add(recs[i]);
        }
        LedgerSummary left = a;
        left += b;
        left += c;
        LedgerSummary bc = b;
        bc += c;
        LedgerSummary right = bc;
        right += a;
        EXPECT_EQ(left, all);
        EXPECT_EQ(right, all);
    }
    EXPECT_EQ(all.runs, 60u);
    EXPECT_EQ(all.rsp_runs, 20u);
    EXPECT_EQ(all.classical_bits, 2 * 40u + 20u);
    EXPECT_EQ(static_cast<std::int64_t>(all.prep_bits) - static_cast<std::int64_t>(all.classical_bits),
              all.hidden_bits);
}

TEST(ContinuousVariable, PrepInfo) {
    EXPECT_EQ(cv_prep_info({10.0}, 16), 144);
    EXPECT_EQ(cv_prep_info({10.9}, 16), 144);
    EXPECT_EQ(cv_prep_info({1.0}, 16), 0);
    EXPECT_EQ(cv_prep_info({2.0}, 16), 16);
    EXPECT_THROW(cv_prep_info({0.5}, 16), ValidationError);
    EXPECT_THROW(cv_prep_info({10.0}, -1), ValidationError);
}

TEST(Csv, Layout) {
    EXPECT_EQ(ledger_csv_header(), "protocol,c,m,n,hidden_cost,epr_pairs,verified_bits");
    EXPECT_EQ(ledger_csv_row(LedgerRecord{Protocol::RSP, 1, 16, 2, 1, 16, 14}), "RSP,1,16,2,15,1,14");
    EXPECT_STREQ(to_string(Protocol::QT), "QT");
    EXPECT_EQ(classical_bits_for(Protocol::RSP), 1);
}

}  // namespace
}  // namespace telecost
