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

#include "telecost/qmath.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "telecost/errors.h"

namespace telecost {

namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

bool all_finite(const Matrix2& m) {
    return std::all_of(m.e.begin(), m.e.end(), finite);
}

}  // namespace

PureQubit PureQubit::normalized(Complex a0, Complex a1) {
    if (!finite(a0) || !finite(a1)) {
        throw ValidationError("PureQubit::normalized: non-finite amplitude");
    }
    double n = std::sqrt(std::norm(a0) + std::norm(a1));
    if (n == 0.0) {
        throw ValidationError("PureQubit::normalized: zero vector");
    }
    return {a0 / n, a1 / n};
}

Matrix2 Matrix2::adjoint() const {
    Matrix2 r;
    for (int i = 0; i < 2; i++) {
        for (int j = 0; j < 2; j++) {
            r(i, j) = std::conj((*this)(j, i));
        }
    }
    return r;
}

double Matrix2::max_abs_diff(const Matrix2& other) const {
    double d = 0.0;
    for (size_t k = 0; k < 4; k++) {
        d = std::max(d, std::abs(e[k] - other.e[k]));
    }
    return d;
}

Matrix2 operator*(const Matrix2& x, const Matrix2& y) {
    Matrix2 r;
    for (int i = 0; i < 2; i++) {
        for (int j = 0; j < 2; j++) {
            r(i, j) = x(i, 0) * y(0, j) + x(i, 1) * y(1, j);
        }
    }
    return r;
}

Operator2 Operator2::identity() { return {Matrix2{{1.0, 0.0, 0.0, 1.0}}}; }
Operator2 Operator2::pauli_x() { return {Matrix2{{0.0, 1.0, 1.0, 0.0}}}; }
Operator2 Operator2::pauli_y() {
    return {Matrix2{{Complex{0.0}, Complex{0.0, -1.0}, Complex{0.0, 1.0}, Complex{0.0}}}};
}
Operator2 Operator2::pauli_z() { return {Matrix2{{1.0, 0.0, 0.0, -1.0}}}; }

Operator2 Operator2::observable(const Matrix2& m) {
    Operator2 op{m};
    if (!all_finite(m) || !op.is_hermitian()) {
        throw ValidationError("Operator2::observable: matrix is not Hermitian");
    }
    return op;
}

Operator2 Operator2::unitary(const Matrix2& m) {
    Operator2 op{m};
    if (!all_finite(m) || !op.is_unitary()) {
        throw ValidationError("Operator2::unitary: matrix is not unitary");
    }
    return op;
}

bool Operator2::is_hermitian(double tol) const { return m.max_abs_diff(m.adjoint()) <= tol; }

bool Operator2::is_unitary(double tol) const {
    return (m.adjoint() * m).max_abs_diff(identity().m) <= tol;
}

TwoQubitState TwoQubitState::singlet() {
    const double h = 1.0 / std::sqrt(2.0);
    TwoQubitState s;
    s.c = {Complex{0.0}, Complex{h}, Complex{-h}, Complex{0.0}};
    return s;
}

TwoQubitState TwoQubitState::product(const PureQubit& alice, const PureQubit& bob) {
    TwoQubitState s;
    s.c = {alice.a0 * bob.a0, alice.a0 * bob.a1, alice.a1 * bob.a0, alice.a1 * bob.a1};
    return s;
}

double TwoQubitState::norm_squared() const {
    double t = 0.0;
    for (const auto& z : c) {
        t += std::norm(z);
    }
    return t;
}

DensityOp DensityOp::pure(const PureQubit& s) {
    DensityOp r;
    r.m(0, 0) = s.a0 * std::conj(s.a0);
    r.m(0, 1) = s.a0 * std::conj(s.a1);
    r.m(1, 0) = s.a1 * std::conj(s.a0);
    r.m(1, 1) = s.a1 * std::conj(s.a1);
    return r;
}

DensityOp DensityOp::maximally_mixed() { return {Matrix2{{0.5, 0.0, 0.0, 0.5}}}; }

DensityOp DensityOp::from_matrix(const Matrix2& m) {
    DensityOp r{m};
    validate(r);
    return r;
}

std::pair<double, double> DensityOp::eigenvalues() const {
    // Hermitian 2x2: λ = (a+d)/2 ± sqrt(((a-d)/2)² + |b|²)
    double a = m(0, 0).real();
    double d = m(1, 1).real();
    Complex b = 0.5 * (m(0, 1) + std::conj(m(1, 0)));
    double mean = 0.5 * (a + d);
    double half_gap = std::hypot(0.5 * (a - d), std::abs(b));
    return {mean - half_gap, mean + half_gap};
}

void validate(const PureQubit& s) {
    if (!finite(s.a0) || !finite(s.a1)) {
        throw ValidationError("PureQubit: non-finite amplitude");
    }
    double drift = std::abs(s.norm_squared() - 1.0);
    if (drift > kValidationTol) {
        std::ostringstream msg;
        msg << "PureQubit: normalization drift " << drift << " exceeds " << kValidationTol;
        throw ValidationError(msg.str());
    }
}

void validate(const TwoQubitState& s) {
    for (const auto& z : s.c) {
        if (!finite(z)) {
            throw ValidationError("TwoQubitState: non-finite amplitude");
        }
    }
    double drift = std::abs(s.norm_squared() - 1.0);
    if (drift > kValidationTol) {
        std::ostringstream msg;
        msg << "TwoQubitState: normalization drift " << drift << " exceeds " << kValidationTol;
        throw ValidationError(msg.str());
    }
}

void validate(const DensityOp& r) {
    if (!all_finite(r.m)) {
        throw ValidationError("DensityOp: non-finite entry");
    }
    if (r.m.max_abs_diff(r.m.adjoint()) > kAlgebraTol) {
        throw ValidationError("DensityOp: not Hermitian");
    }
    if (std::abs(r.m.trace() - 1.0) > kAlgebraTol) {
        throw ValidationError("DensityOp: trace differs from 1");
    }
    if (r.eigenvalues().first < -kAlgebraTol) {
        throw ValidationError("DensityOp: negative eigenvalue");
    }
}

Complex inner(const PureQubit& x, const PureQubit& y) {
    return std::conj(x.a0) * y.a0 + std::conj(x.a1) * y.a1;
}

double fidelity(const PureQubit& x, const PureQubit& y) {
    validate(x);
    validate(y);
    return std::min(1.0, std::norm(inner(x, y)));
}

double fs_angle(const PureQubit& x, const PureQubit& y) {
    validate(x);
    validate(y);
    double along = std::abs(inner(x, y));
    double across = std::abs(x.a0 * y.a1 - x.a1 * y.a0);
    return std::atan2(across, along);
}

DensityOp partial_trace_A(const TwoQubitState& s) {
    validate(s);
    DensityOp r;
    for (int b = 0; b < 2; b++) {
        for (int bp = 0; bp < 2; bp++) {
            Complex t{};
            for (int a = 0; a < 2; a++) {
                t += s.amp(a, b) * std::conj(s.amp(a, bp));
            }
            r.m(b, bp) = t;
        }
    }
    return r;
}

double von_neumann_entropy(const DensityOp& r) {
    validate(r);
    auto [lo, hi] = r.eigenvalues();
    double s = 0.0;
    for (double lambda : {lo, hi}) {
        if (lambda > 0.0) {
            s -= lambda * std::log2(lambda);
        }
    }
    return std::clamp(s, 0.0, 1.0);
}

PureQubit apply(const Operator2& op, const PureQubit& s) {
    if (!op.is_unitary(kValidationTol)) {
        throw ValidationError("apply: operator is not unitary");
    }
    validate(s);
    return {op.m(0, 0) * s.a0 + op.m(0, 1) * s.a1, op.m(1, 0) * s.a0 + op.m(1, 1) * s.a1};
}

double expectation(const Operator2& op, const PureQubit& s) {
    Complex v0 = op.m(0, 0) * s.a0 + op.m(0, 1) * s.a1;
    Complex v1 = op.m(1, 0) * s.a0 + op.m(1, 1) * s.a1;
    return (std::conj(s.a0) * v0 + std::conj(s.a1) * v1).real();
}

Operator2 rotation_y(double angle) {
    double c = std::cos(0.5 * angle);
    double s = std::sin(0.5 * angle);
    return {Matrix2{{c, -s, s, c}}};
}

std::string to_string(const PureQubit& s) {
    std::ostringstream out;
    out.precision(17);
    out << "(" << s.a0.real() << (s.a0.imag() < 0 ? "-" : "+") << std::abs(s.a0.imag()) << "i, "
        << s.a1.real() << (s.a1.imag() < 0 ? "-" : "+") << std::abs(s.a1.imag()) << "i)";
    return out.str();
}

}  // namespace telecost
