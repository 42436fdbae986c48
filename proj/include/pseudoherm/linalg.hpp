#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace pseudoherm {

using Complex = std::complex<double>;
using Vec2 = std::array<Complex, 2>;
using CVector = std::vector<Complex>;

/// Dense complex matrix, row-major. Every entry is finite; the constructors
/// reject NaN and infinities.
class CMatrix {
public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols);
    CMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
    CMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static CMatrix identity(std::size_t n);
    static CMatrix zeros(std::size_t rows, std::size_t cols) { return CMatrix(rows, cols); }
    static CMatrix diagonal(std::span<const Complex> diag);
    /// |u><v| for column vectors u, v.
    static CMatrix outer(std::span<const Complex> u, std::span<const Complex> v);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }
    std::span<const Complex> entries() const noexcept { return data_; }

    Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    CMatrix adjoint() const;
    Complex trace() const;

    /// Largest entry modulus.
    double max_abs() const noexcept;
    /// Maximum absolute row sum (induced infinity norm).
    double inf_norm() const noexcept;
    double frobenius_norm() const noexcept;

    CMatrix& operator+=(const CMatrix& rhs);
    CMatrix& operator-=(const CMatrix& rhs);
    CMatrix& operator*=(Complex s);

    friend bool operator==(const CMatrix&, const CMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

CMatrix operator+(CMatrix lhs, const CMatrix& rhs);
CMatrix operator-(CMatrix lhs, const CMatrix& rhs);
CMatrix operator*(const CMatrix& lhs, const CMatrix& rhs);
CMatrix operator*(Complex s, CMatrix m);
CVector operator*(const CMatrix& m, std::span<const Complex> v);
Vec2 operator*(const CMatrix& m, const Vec2& v);

/// max_ij |a_ij - b_ij|
double max_abs_diff(const CMatrix& a, const CMatrix& b);

/// Dirac pairing u^dagger v.
Complex dirac_inner(std::span<const Complex> u, std::span<const Complex> v);
double dirac_norm(std::span<const Complex> v);

/// Gauss-Jordan inverse with partial pivoting. Throws SingularOperatorError
/// when a pivot falls below 1e-14 times the matrix scale.
CMatrix inverse(const CMatrix& m);

// Pauli matrices in the standard representation.
const CMatrix& sigma_x();
const CMatrix& sigma_y();
const CMatrix& sigma_z();
const CMatrix& sigma_plus();   // [[0,1],[0,0]]
const CMatrix& sigma_minus();  // [[0,0],[1,0]]

/// M = c0 I + m . sigma, coefficients complex.
struct PauliDecomposition {
    Complex c0{};
    std::array<Complex, 3> m{};

    CMatrix reconstruct() const;
    /// Complex (bilinear) square length m . m; not the Hermitian norm.
    Complex m_dot_m() const noexcept { return m[0] * m[0] + m[1] * m[1] + m[2] * m[2]; }
};

PauliDecomposition pauli_decompose(const CMatrix& m);

/// e^{sM} for a 2x2 matrix from its Pauli form:
///   e^{s c0} [cosh(s b) I + sinh(s b)/b (m . sigma)],  b^2 = m . m.
/// The square root branch is irrelevant since both cosh and sinh(x)/x are
/// even; b -> 0 takes the limit I + s (m . sigma).
CMatrix exp_2x2(const CMatrix& m, Complex s);

/// e^{sM} by scaling and squaring a truncated Taylor series, accumulated in
/// long double. The scaled matrix has infinity norm <= 0.5 and the series
/// stops once a term's norm drops below 1e-22.
CMatrix exp_series(const CMatrix& m, Complex s);

struct Eigen2x2 {
    Vec2 values{};
    std::array<Vec2, 2> vectors{};  // unit Dirac norm
    bool defective = false;
};

/// Closed-form eigensystem of a 2x2 matrix. A coalesced pair (gap below
/// 1e-10 |M| and eigenvector angle below 1e-8 rad) sets `defective` and
/// repeats the single eigenvector.
Eigen2x2 eig_2x2(const CMatrix& m);

/// Principal angle in [0, pi/2] between the rays spanned by u and v.
double principal_angle(const Vec2& u, const Vec2& v);

}  // namespace pseudoherm
