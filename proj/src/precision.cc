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

#include "telecost/precision.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "telecost/errors.h"
#include "telecost/rng.h"

namespace telecost {

namespace {

constexpr double kPi = std::numbers::pi;

// Fixed-point scale of the General grid: value = (index - R) / R.
std::int64_t general_radius(int m) { return std::int64_t{1} << (m / 2 - 1); }

std::int64_t isqrt(std::int64_t v) {
    if (v <= 0) {
        return 0;
    }
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(v)));
    while (r * r > v) {
        r--;
    }
    while ((r + 1) * (r + 1) <= v) {
        r++;
    }
    return r;
}

// Strictly inside the unit disk, plus (-1, 0) as the one representative of |↓⟩;
// other points on the rim would duplicate it up to global phase.
bool general_admissible(std::int64_t i, std::int64_t j, std::int64_t radius) {
    std::int64_t x = i - radius;
    std::int64_t y = j - radius;
    return x * x + y * y < radius * radius || (x == -radius && y == 0);
}

GridPoint quantize_real(const PureQubit& s, const PrecisionSpec& spec) {
    // Strip the global phase using the larger amplitude as reference.
    Complex ref = std::abs(s.a0) >= std::abs(s.a1) ? s.a0 : s.a1;
    Complex phase = std::conj(ref) / std::abs(ref);
    Complex b0 = s.a0 * phase;
    Complex b1 = s.a1 * phase;
    if (std::abs(b0.imag()) > kValidationTol || std::abs(b1.imag()) > kValidationTol) {
        throw DomainError("quantize: RealRotation grid needs a state with real amplitudes up to global phase, got " +
                          to_string(s));
    }
    double psi = std::atan2(b1.real(), b0.real());
    if (psi < 0.0) {
        psi += kPi;
    }
    if (psi >= kPi) {
        psi -= kPi;
    }
    const double step = phi_min(spec.m);
    const std::int64_t count = index_extent(spec)[0];
    auto lower = static_cast<std::int64_t>(std::floor(psi / step));
    lower = std::clamp<std::int64_t>(lower, 0, count - 1);
    auto circular = [&](std::int64_t k) {
        double d = std::abs(psi - static_cast<double>(k) * step);
        return std::min(d, kPi - d);
    };
    std::int64_t best = lower;
    double best_d = circular(lower);
    std::int64_t upper = lower + 1 < count ? lower + 1 : 0;
    double d = circular(upper);
    if (d < best_d || (d == best_d && upper < best)) {
        best = upper;
    }
    return GridPoint{spec, {best, 0}};
}

// Nearest General-grid point. With ψ = asin|a1| and φ = arg a1 (after fixing
// a0 real and non-negative), the Fubini-Study distance d between two states
// satisfies
//     sin² d = sin² Δψ + sin 2ψ₁ sin 2ψ₂ sin²(Δφ / 2),
// so any point closer than a known candidate lies in an annulus |Δψ| ≤ d and,
// away from the poles, in an angular wedge around φ. Only grid points inside
// the bounding box of that annular sector are examined.
GridPoint quantize_general(const PureQubit& s, const PrecisionSpec& spec) {
    const std::int64_t radius = general_radius(spec.m);
    const auto scale = static_cast<double>(radius);
    const std::int64_t extent = 2 * radius;

    double abs0 = std::abs(s.a0);
    Complex z = abs0 > 0.0 ? s.a1 * (std::conj(s.a0) / abs0) : s.a1;
    const PureQubit target{Complex{abs0}, z};

    auto distance = [&](std::int64_t i, std::int64_t j) {
        return fs_angle(target, dequantize(GridPoint{spec, {i, j}}));
    };

    GridPoint best{spec, {radius, radius}};
    double best_d = distance(radius, radius);
    auto consider = [&](std::int64_t i, std::int64_t j) {
        if (i < 0 || j < 0 || i >= extent || j >= extent || !general_admissible(i, j, radius)) {
            return;
        }
        double d = distance(i, j);
        if (d < best_d || (d == best_d && std::make_pair(i, j) < std::make_pair(best.indices[0], best.indices[1]))) {
            best_d = d;
            best.indices = {i, j};
        }
    };

    // Seed candidates: componentwise rounding and truncation toward zero.
    consider(radius + std::llround(z.real() * scale), radius + std::llround(z.imag() * scale));
    consider(radius + static_cast<std::int64_t>(std::trunc(z.real() * scale)),
             radius + static_cast<std::int64_t>(std::trunc(z.imag() * scale)));

    const double bound = best_d + 1e-12;
    const double psi = std::asin(std::min(1.0, std::abs(z)));
    const double psi_lo = std::max(0.0, psi - bound);
    const double psi_hi = std::min(kPi / 2, psi + bound);
    const double r_lo = std::sin(psi_lo);
    const double r_hi = std::sin(psi_hi);

    double half_width = kPi;
    double min_sin2 = std::min(std::sin(2 * psi_lo), std::sin(2 * psi_hi));
    double denom = std::sin(2 * psi) * min_sin2;
    if (denom > 0.0) {
        double ratio = std::sin(bound) * std::sin(bound) / denom;
        if (ratio < 1.0) {
            half_width = 2 * std::asin(std::sqrt(ratio));
        }
    }

    double x_min = -r_hi, x_max = r_hi, y_min = -r_hi, y_max = r_hi;
    if (half_width < kPi) {
        const double phi = std::arg(z);
        x_min = y_min = 2.0;
        x_max = y_max = -2.0;
        auto include = [&](double r, double angle) {
            x_min = std::min(x_min, r * std::cos(angle));
            x_max = std::max(x_max, r * std::cos(angle));
            y_min = std::min(y_min, r * std::sin(angle));
            y_max = std::max(y_max, r * std::sin(angle));
        };
        for (double angle : {phi - half_width, phi + half_width}) {
            include(r_lo, angle);
            include(r_hi, angle);
        }
        // Axis crossings inside the wedge extend the box to r_hi.
        for (int q = -4; q <= 4; q++) {
            double axis = q * kPi / 2;
            if (axis > phi - half_width && axis < phi + half_width) {
                include(r_hi, axis);
            }
        }
    }

    auto to_index_lo = [&](double v) {
        return std::max<std::int64_t>(0, static_cast<std::int64_t>(std::floor(v * scale)) + radius - 1);
    };
    auto to_index_hi = [&](double v) {
        return std::min<std::int64_t>(extent - 1, static_cast<std::int64_t>(std::ceil(v * scale)) + radius + 1);
    };
    const std::int64_t i_lo = to_index_lo(x_min), i_hi = to_index_hi(x_max);
    const std::int64_t j_lo = to_index_lo(y_min), j_hi = to_index_hi(y_max);
    const double r_lo_sq = r_lo * r_lo * (1.0 - 1e-9);
    const double r_hi_sq = r_hi * r_hi * (1.0 + 1e-9);

    for (std::int64_t i = i_lo; i <= i_hi; i++) {
        const double x = static_cast<double>(i - radius) / scale;
        const double outer = r_hi_sq - x * x;
        if (outer < 0.0) {
            continue;
        }
        // |y| ≤ sqrt(outer), and |y| ≥ sqrt(inner) when the inner circle reaches this row.
        const double y_out = std::sqrt(outer);
        const double inner = r_lo_sq - x * x;
        const double y_in = inner > 0.0 ? std::sqrt(inner) : 0.0;
        auto scan = [&](double y_a, double y_b) {
            std::int64_t a = std::max(j_lo, static_cast<std::int64_t>(std::floor(y_a * scale)) + radius - 1);
            std::int64_t b = std::min(j_hi, static_cast<std::int64_t>(std::ceil(y_b * scale)) + radius + 1);
            for (std::int64_t j = a; j <= b; j++) {
                consider(i, j);
            }
        };
        if (y_in == 0.0) {
            scan(-y_out, y_out);
        } else {
            scan(-y_out, -y_in);
            scan(y_in, y_out);
        }
    }
    return best;
}

}  // namespace

void validate(const PrecisionSpec& spec) {
    if (spec.m < 2 || spec.m > kMaxGridBits) {
        throw ValidationError("PrecisionSpec: m = " + std::to_string(spec.m) + " outside [2, " +
                              std::to_string(kMaxGridBits) + "]");
    }
    if (spec.mode == GridMode::General && spec.m % 2 != 0) {
        throw ValidationError("PrecisionSpec: General mode needs even m, got " + std::to_string(spec.m));
    }
}

void validate(const GridPoint& g) {
    validate(g.spec);
    if (!is_valid(g)) {
        throw ValidationError("GridPoint: indices out of range for the grid");
    }
}

std::int64_t prep_info(std::int64_t dimension, std::int64_t m) {
    if (dimension < 2) {
        throw ValidationError("prep_info: dimension must be at least 2");
    }
    if (m < 0) {
        throw ValidationError("prep_info: precision must be non-negative");
    }
    return (dimension - 1) * m;
}

double preparation_entropy(std::span<const double> probabilities) {
    double h = 0.0;
    for (double p : probabilities) {
        if (p < 0.0) {
            throw ValidationError("preparation_entropy: negative probability");
        }
        if (p > 0.0) {
            h -= p * std::log2(p);
        }
    }
    return h;
}

double phi_min(int m) { return std::exp2(-0.5 * m); }

ResolutionReport resolution(int m) {
    if (m < 0) {
        throw ValidationError("resolution: precision must be non-negative");
    }
    return {m, phi_min(m), std::exp2(-m) * kPi, 1.0 - std::exp2(-m)};
}

std::array<std::int64_t, 2> index_extent(const PrecisionSpec& spec) {
    validate(spec);
    if (spec.mode == GridMode::RealRotation) {
        return {static_cast<std::int64_t>(std::ceil(kPi / phi_min(spec.m))), 1};
    }
    std::int64_t side = 2 * general_radius(spec.m);
    return {side, side};
}

std::int64_t grid_cardinality(const PrecisionSpec& spec) {
    auto extent = index_extent(spec);
    if (spec.mode == GridMode::RealRotation) {
        return extent[0];
    }
    const std::int64_t radius = general_radius(spec.m);
    std::int64_t total = 1;
    for (std::int64_t x = -radius + 1; x < radius; x++) {
        total += 2 * isqrt(radius * radius - x * x - 1) + 1;
    }
    return total;
}

bool is_valid(const GridPoint& g) {
    auto extent = index_extent(g.spec);
    if (g.indices[0] < 0 || g.indices[0] >= extent[0] || g.indices[1] < 0 || g.indices[1] >= extent[1]) {
        return false;
    }
    if (g.spec.mode == GridMode::General) {
        return general_admissible(g.indices[0], g.indices[1], general_radius(g.spec.m));
    }
    return true;
}

double half_angle(const GridPoint& g) {
    if (g.spec.mode != GridMode::RealRotation) {
        throw DomainError("half_angle: only defined on the RealRotation grid");
    }
    return static_cast<double>(g.indices[0]) * phi_min(g.spec.m);
}

PureQubit dequantize(const GridPoint& g) {
    validate(g);
    if (g.spec.mode == GridMode::RealRotation) {
        double psi = half_angle(g);
        return {Complex{std::cos(psi)}, Complex{std::sin(psi)}};
    }
    const auto scale = static_cast<double>(general_radius(g.spec.m));
    double x = static_cast<double>(g.indices[0]) / scale - 1.0;
    double y = static_cast<double>(g.indices[1]) / scale - 1.0;
    double a0 = std::sqrt(std::max(0.0, 1.0 - (x * x + y * y)));
    return PureQubit::normalized(Complex{a0}, Complex{x, y});
}

GridPoint quantize(const PureQubit& s, const PrecisionSpec& spec) {
    validate(spec);
    validate(s);
    if (spec.mode == GridMode::RealRotation) {
        return quantize_real(s, spec);
    }
    return quantize_general(s, spec);
}

GridPoint truncate(const GridPoint& g, int n) {
    validate(g);
    if (n < 0) {
        throw ValidationError("truncate: negative bit count");
    }
    if (n >= g.spec.m) {
        throw ValidationError("truncate: cannot drop " + std::to_string(n) + " of " + std::to_string(g.spec.m) +
                              " bits");
    }
    if (n == 0) {
        return g;
    }
    PrecisionSpec coarse{g.spec.m - n, g.spec.mode};
    if (coarse.m < 2) {
        throw ValidationError("truncate: coarse grid would have fewer than 2 bits");
    }
    if (coarse.mode == GridMode::General && n % 2 != 0) {
        throw ValidationError("truncate: General mode drops bits in real/imaginary pairs, n must be even");
    }
    return quantize(dequantize(g), coarse);
}

std::vector<GridPoint> enumerate_grid(const PrecisionSpec& spec) {
    auto extent = index_extent(spec);
    std::vector<GridPoint> out;
    out.reserve(static_cast<std::size_t>(grid_cardinality(spec)));
    for (std::int64_t i = 0; i < extent[0]; i++) {
        for (std::int64_t j = 0; j < extent[1]; j++) {
            GridPoint g{spec, {i, j}};
            if (is_valid(g)) {
                out.push_back(g);
            }
        }
    }
    return out;
}

GridPoint random_grid_point(const PrecisionSpec& spec, Rng& rng) {
    auto extent = index_extent(spec);
    if (spec.mode == GridMode::RealRotation) {
        return GridPoint{spec, {static_cast<std::int64_t>(rng.uniform_index(extent[0])), 0}};
    }
    const std::int64_t radius = general_radius(spec.m);
    while (true) {
        auto i = static_cast<std::int64_t>(rng.uniform_index(extent[0]));
        auto j = static_cast<std::int64_t>(rng.uniform_index(extent[1]));
        if (general_admissible(i, j, radius)) {
            return GridPoint{spec, {i, j}};
        }
    }
}

std::vector<GridPoint> uniform_ensemble(const PrecisionSpec& spec, std::size_t size, std::uint64_t seed) {
    validate(spec);
    Rng rng(seed);
    std::vector<GridPoint> out;
    out.reserve(size);
    for (std::size_t k = 0; k < size; k++) {
        out.push_back(random_grid_point(spec, rng));
    }
    return out;
}

const char* to_string(GridMode mode) {
    return mode == GridMode::RealRotation ? "RealRotation" : "General";
}

}  // namespace telecost
