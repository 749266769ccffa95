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

#ifndef TELECOST_QMATH_H
#define TELECOST_QMATH_H

// Dense complex linear algebra for one and two qubits.
//
// The value types here are plain aggregates. Operations that need a valid
// state (normalized, Hermitian, unitary...) check it on entry and throw
// ValidationError, so a caller can hold a half-built or drifted value
// without tripping anything until it is actually used.

#include <array>
#include <complex>
#include <string>
#include <utility>

namespace telecost {

using Complex = std::complex<double>;

/// Tolerance for algebraic identities (normalization preserved, R_y(a)R_y(b)=R_y(a+b), ...).
inline constexpr double kAlgebraTol = 1e-12;
/// Tolerance for rejecting inputs at operation boundaries.
inline constexpr double kValidationTol = 1e-9;

/// Amplitudes of |↑⟩ and |↓⟩. Global phase is never canonicalized here.
struct PureQubit {
    Complex a0{1.0, 0.0};
    Complex a1{0.0, 0.0};

    static PureQubit up() { return {Complex{1.0}, Complex{0.0}}; }
    static PureQubit down() { return {Complex{0.0}, Complex{1.0}}; }
    /// Rescales (a0, a1) to unit norm. Throws ValidationError on a zero or non-finite vector.
    static PureQubit normalized(Complex a0, Complex a1);

    double norm_squared() const { return std::norm(a0) + std::norm(a1); }
};

/// Row-major 2x2 complex matrix.
struct Matrix2 {
    std::array<Complex, 4> e{};

    Complex& operator()(int r, int c) { return e[2 * r + c]; }
    const Complex& operator()(int r, int c) const { return e[2 * r + c]; }

    Matrix2 adjoint() const;
    Complex trace() const { return e[0] + e[3]; }
    /// Largest elementwise modulus of (*this - other).
    double max_abs_diff(const Matrix2& other) const;

    friend Matrix2 operator*(const Matrix2& x, const Matrix2& y);
    friend bool operator==(const Matrix2&, const Matrix2&) = default;
};

/// Single-qubit operator: an observable or an evolution depending on how it was built.
struct Operator2 {
    Matrix2 m;

    static Operator2 identity();
    static Operator2 pauli_x();
    static Operator2 pauli_y();
    static Operator2 pauli_z();
    /// Checked constructor for observables (Hermitian within kAlgebraTol).
    static Operator2 observable(const Matrix2& m);
    /// Checked constructor for evolutions (unitary within kAlgebraTol).
    static Operator2 unitary(const Matrix2& m);

    bool is_hermitian(double tol = kAlgebraTol) const;
    bool is_unitary(double tol = kAlgebraTol) const;

    friend Operator2 operator*(const Operator2& x, const Operator2& y) { return {x.m * y.m}; }
};

/// Joint Alice/Bob amplitudes; index = 2 * alice + bob, 0 = ↑, 1 = ↓.
struct TwoQubitState {
    std::array<Complex, 4> c{Complex{1.0}, Complex{}, Complex{}, Complex{}};

    Complex& amp(int alice, int bob) { return c[2 * alice + bob]; }
    const Complex& amp(int alice, int bob) const { return c[2 * alice + bob]; }

    /// (|↑↓⟩ - |↓↑⟩)/√2
    static TwoQubitState singlet();
    static TwoQubitState product(const PureQubit& alice, const PureQubit& bob);

    double norm_squared() const;
};

struct DensityOp {
    Matrix2 m;

    static DensityOp pure(const PureQubit& s);
    static DensityOp maximally_mixed();
    /// Checked constructor: Hermitian, unit trace, positive semidefinite.
    static DensityOp from_matrix(const Matrix2& m);

    /// Closed-form eigenvalues of the Hermitian part, ascending.
    std::pair<double, double> eigenvalues() const;
};

// Validation gates. Each throws ValidationError with a description of the violation.
void validate(const PureQubit& s);
void validate(const TwoQubitState& s);
void validate(const DensityOp& r);

/// ⟨x|y⟩
Complex inner(const PureQubit& x, const PureQubit& y);

/// |⟨x|y⟩|², in [0, 1]; phase-insensitive.
double fidelity(const PureQubit& x, const PureQubit& y);

/// Fubini-Study angle arccos|⟨x|y⟩| in [0, π/2].
///
/// Evaluated as atan2(|x0 y1 - x1 y0|, |⟨x|y⟩|), which keeps full relative
/// precision for nearly parallel states where arccos is ill-conditioned.
double fs_angle(const PureQubit& x, const PureQubit& y);

/// Reduced density operator of the second (Bob) slot.
DensityOp partial_trace_A(const TwoQubitState& s);

/// Entropy in bits, with 0 log 0 = 0.
double von_neumann_entropy(const DensityOp& r);

/// Matrix-vector product. Throws if op is not unitary within kValidationTol.
PureQubit apply(const Operator2& op, const PureQubit& s);

/// ⟨s|op|s⟩ (real part; op is expected Hermitian).
double expectation(const Operator2& op, const PureQubit& s);

/// exp(-i angle σ_y / 2)
Operator2 rotation_y(double angle);

std::string to_string(const PureQubit& s);

}  // namespace telecost

#endif
