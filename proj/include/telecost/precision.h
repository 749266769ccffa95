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

#ifndef TELECOST_PRECISION_H
#define TELECOST_PRECISION_H

// m-bit discretization of the qubit's projective state space.
//
// Two grids are offered:
//
//  * RealRotation: states (cos ψ, sin ψ) with the half-angle ψ on a uniform
//    grid of step 2^{-m/2} over [0, π). Adjacent points are exactly one
//    minimum-resolvable Fubini-Study angle apart. One index k in [0, ⌈π 2^{m/2}⌉).
//
//  * General: a1 = x + iy with x and y signed fixed-point numbers of m/2 bits
//    each on [-1, 1), a0 = sqrt(1 - |a1|²) real. Index pairs (i, j) in
//    [0, 2^{m/2})², value (i - R)/R with R = 2^{m/2 - 1}; points with |a1| > 1
//    are excluded, so the realized cardinality is roughly π/4 · 2^m.

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "telecost/qmath.h"

namespace telecost {

enum class GridMode { RealRotation, General };

/// Largest precision a grid may be built at.
inline constexpr int kMaxGridBits = 32;

struct PrecisionSpec {
    int m = 16;
    GridMode mode = GridMode::RealRotation;

    friend bool operator==(const PrecisionSpec&, const PrecisionSpec&) = default;
};

/// m in [2, kMaxGridBits]; even m in General mode.
void validate(const PrecisionSpec& spec);

struct GridPoint {
    PrecisionSpec spec;
    /// RealRotation uses indices[0] only; indices[1] stays 0.
    std::array<std::int64_t, 2> indices{0, 0};

    friend bool operator==(const GridPoint&, const GridPoint&) = default;
};

void validate(const GridPoint& g);

struct ResolutionReport {
    int m = 0;
    double phi_min = 0.0;        ///< 2^{-m/2} rad, drives every success bound
    double sphere_size = 0.0;    ///< 2^{-m} π rad, reported only
    double overlap_bound = 0.0;  ///< 1 - 2^{-m}
};

/// Preparation information (D - 1) m in bits. Throws for D < 2 or m < 0.
std::int64_t prep_info(std::int64_t dimension, std::int64_t m);

/// -Σ p log₂ p over the given distribution, 0 log 0 = 0.
double preparation_entropy(std::span<const double> probabilities);

ResolutionReport resolution(int m);
inline ResolutionReport resolution(const PrecisionSpec& spec) { return resolution(spec.m); }

/// Minimum resolvable angle 2^{-m/2}.
double phi_min(int m);

/// Number of admissible grid points (realized, after any exclusions).
std::int64_t grid_cardinality(const PrecisionSpec& spec);

/// Exclusive upper bound of each index (the second entry is 1 in RealRotation mode).
std::array<std::int64_t, 2> index_extent(const PrecisionSpec& spec);

bool is_valid(const GridPoint& g);

/// Half-angle ψ = k 2^{-m/2} of a RealRotation point; the state is R_y(2ψ)|↑⟩.
double half_angle(const GridPoint& g);

PureQubit dequantize(const GridPoint& g);

/// Nearest grid point under the Fubini-Study distance, ties to the lower index.
/// In RealRotation mode the state must be real up to global phase, else DomainError.
GridPoint quantize(const PureQubit& s, const PrecisionSpec& spec);

/// Cell of the (m - n)-bit grid that contains g. n = 0 returns g.
/// Throws ValidationError when m - n < 2, or for odd n in General mode.
GridPoint truncate(const GridPoint& g, int n);

/// Every admissible point in index order.
std::vector<GridPoint> enumerate_grid(const PrecisionSpec& spec);

class Rng;

/// One point drawn uniformly over the admissible grid.
GridPoint random_grid_point(const PrecisionSpec& spec, Rng& rng);

/// `size` i.i.d. uniform draws, deterministic in `seed`. size = 0 gives an empty list.
std::vector<GridPoint> uniform_ensemble(const PrecisionSpec& spec, std::size_t size, std::uint64_t seed);

const char* to_string(GridMode mode);

}  // namespace telecost

#endif
