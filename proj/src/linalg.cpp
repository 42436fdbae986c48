#include "pseudoherm/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "pseudoherm/errors.hpp"

namespace pseudoherm {

namespace {

void require_finite(std::span<const Complex> entries) {
    for (const auto& z : entries) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw std::invalid_argument("non-finite matrix entry");
        }
    }
}

void require_2x2(const CMatrix& m, const char* op) {
    if (m.rows() != 2 || m.cols() != 2) {
        throw DimensionError(std::string(op) + ": expected a 2x2 matrix, got " + std::to_string(m.rows()) +
                             "x" + std::to_string(m.cols()));
    }
}

void require_same_shape(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError("matrix shapes differ");
    }
}

// sinh(x)/x with the removable singularity filled in.
Complex sinhc(Complex x) {
    if (std::abs(x) < 1e-4) {
        const Complex x2 = x * x;
        return 1.0 + x2 / 6.0 * (1.0 + x2 / 20.0 * (1.0 + x2 / 42.0));
    }
    return std::sinh(x) / x;
}

}  // namespace

CMatrix::CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

CMatrix::CMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_) {
        throw DimensionError("entry count " + std::to_string(data_.size()) + " does not match " +
                             std::to_string(rows_) + "x" + std::to_string(cols_));
    }
    require_finite(data_);
}

CMatrix::CMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_) throw DimensionError("ragged matrix literal");
        data_.insert(data_.end(), row.begin(), row.end());
    }
    require_finite(data_);
}

CMatrix CMatrix::identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::diagonal(std::span<const Complex> diag) {
    CMatrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    require_finite(m.data_);
    return m;
}

CMatrix CMatrix::outer(std::span<const Complex> u, std::span<const Complex> v) {
    CMatrix m(u.size(), v.size());
    for (std::size_t r = 0; r < u.size(); ++r)
        for (std::size_t c = 0; c < v.size(); ++c) m(r, c) = u[r] * std::conj(v[c]);
    return m;
}

CMatrix CMatrix::adjoint() const {
    CMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
}

Complex CMatrix::trace() const {
    if (!is_square()) throw DimensionError("trace of a non-square matrix");
    Complex t{};
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

double CMatrix::max_abs() const noexcept {
    double m = 0.0;
    for (const auto& z : data_) m = std::max(m, std::abs(z));
    return m;
}

double CMatrix::inf_norm() const noexcept {
    double best = 0.0;
    for (std::size_t r = 0; r < rows_; ++r) {
        double s = 0.0;
        for (std::size_t c = 0; c < cols_; ++c) s += std::abs((*this)(r, c));
        best = std::max(best, s);
    }
    return best;
}

double CMatrix::frobenius_norm() const noexcept {
    double s = 0.0;
    for (const auto& z : data_) s += std::norm(z);
    return std::sqrt(s);
}

CMatrix& CMatrix::operator+=(const CMatrix& rhs) {
    require_same_shape(*this, rhs);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
    return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& rhs) {
    require_same_shape(*this, rhs);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
    return *this;
}

CMatrix& CMatrix::operator*=(Complex s) {
    for (auto& z : data_) z *= s;
    return *this;
}

CMatrix operator+(CMatrix lhs, const CMatrix& rhs) { return lhs += rhs; }
CMatrix operator-(CMatrix lhs, const CMatrix& rhs) { return lhs -= rhs; }
CMatrix operator*(Complex s, CMatrix m) { return m *= s; }

CMatrix operator*(const CMatrix& lhs, const CMatrix& rhs) {
    if (lhs.cols() != rhs.rows()) {
        throw DimensionError("cannot multiply " + std::to_string(lhs.rows()) + "x" + std::to_string(lhs.cols()) +
                             " by " + std::to_string(rhs.rows()) + "x" + std::to_string(rhs.cols()));
    }
    CMatrix out(lhs.rows(), rhs.cols());
    for (std::size_t r = 0; r < lhs.rows(); ++r) {
        for (std::size_t k = 0; k < lhs.cols(); ++k) {
            const Complex a = lhs(r, k);
            if (a == Complex{}) continue;
            for (std::size_t c = 0; c < rhs.cols(); ++c) out(r, c) += a * rhs(k, c);
        }
    }
    return out;
}

CVector operator*(const CMatrix& m, std::span<const Complex> v) {
    if (m.cols() != v.size()) {
        throw DimensionError("matrix has " + std::to_string(m.cols()) + " columns, vector has " +
                             std::to_string(v.size()) + " entries");
    }
    CVector out(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out[r] += m(r, c) * v[c];
    return out;
}

Vec2 operator*(const CMatrix& m, const Vec2& v) {
    require_2x2(m, "matrix-vector product");
    return {m(0, 0) * v[0] + m(0, 1) * v[1], m(1, 0) * v[0] + m(1, 1) * v[1]};
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
    require_same_shape(a, b);
    double d = 0.0;
    const auto ea = a.entries();
    const auto eb = b.entries();
    for (std::size_t i = 0; i < ea.size(); ++i) d = std::max(d, std::abs(ea[i] - eb[i]));
    return d;
}

Complex dirac_inner(std::span<const Complex> u, std::span<const Complex> v) {
    if (u.size() != v.size()) throw DimensionError("inner product of vectors of different length");
    Complex s{};
    for (std::size_t i = 0; i < u.size(); ++i) s += std::conj(u[i]) * v[i];
    return s;
}

double dirac_norm(std::span<const Complex> v) { return std::sqrt(dirac_inner(v, v).real()); }

CMatrix inverse(const CMatrix& m) {
    if (!m.is_square()) throw DimensionError("inverse of a non-square matrix");
    const std::size_t n = m.rows();
    CMatrix a = m;
    CMatrix inv = CMatrix::identity(n);
    const double scale = std::max(m.max_abs(), 1e-300);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
        if (std::abs(a(pivot, col)) < 1e-14 * scale) throw SingularOperatorError("matrix is singular");
        if (pivot != col) {
            for (std::size_t c = 0; c < n; ++c) {
                std::swap(a(pivot, c), a(col, c));
                std::swap(inv(pivot, c), inv(col, c));
            }
        }
        const Complex p = a(col, col);
        for (std::size_t c = 0; c < n; ++c) {
            a(col, c) /= p;
            inv(col, c) /= p;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const Complex f = a(r, col);
            if (f == Complex{}) continue;
            for (std::size_t c = 0; c < n; ++c) {
                a(r, c) -= f * a(col, c);
                inv(r, c) -= f * inv(col, c);
            }
        }
    }
    return inv;
}

const CMatrix& sigma_x() {
    static const CMatrix m{{0.0, 1.0}, {1.0, 0.0}};
    return m;
}
const CMatrix& sigma_y() {
    static const CMatrix m{{0.0, Complex(0.0, -1.0)}, {Complex(0.0, 1.0), 0.0}};
    return m;
}
const CMatrix& sigma_z() {
    static const CMatrix m{{1.0, 0.0}, {0.0, -1.0}};
    return m;
}
const CMatrix& sigma_plus() {
    static const CMatrix m{{0.0, 1.0}, {0.0, 0.0}};
    return m;
}
const CMatrix& sigma_minus() {
    static const CMatrix m{{0.0, 0.0}, {1.0, 0.0}};
    return m;
}

CMatrix PauliDecomposition::reconstruct() const {
    const Complex i(0.0, 1.0);
    return CMatrix{{c0 + m[2], m[0] - i * m[1]}, {m[0] + i * m[1], c0 - m[2]}};
}

PauliDecomposition pauli_decompose(const CMatrix& m) {
    require_2x2(m, "pauli_decompose");
    const Complex i(0.0, 1.0);
    // tr(sigma_k M) / 2 written out entrywise
    PauliDecomposition p;
    p.c0 = 0.5 * (m(0, 0) + m(1, 1));
    p.m[0] = 0.5 * (m(0, 1) + m(1, 0));
    p.m[1] = 0.5 * i * (m(0, 1) - m(1, 0));
    p.m[2] = 0.5 * (m(0, 0) - m(1, 1));
    return p;
}

CMatrix exp_2x2(const CMatrix& m, Complex s) {
    const PauliDecomposition p = pauli_decompose(m);
    const Complex b = std::sqrt(p.m_dot_m());
    const Complex sb = s * b;
    const Complex ch = std::cosh(sb);
    const Complex sh_over_b = s * sinhc(sb);  // sinh(s b) / b
    PauliDecomposition q;
    q.c0 = ch;
    for (int k = 0; k < 3; ++k) q.m[k] = sh_over_b * p.m[k];
    return std::exp(s * p.c0) * q.reconstruct();
}

namespace {

// Extended-precision scratch matrix for the series; the squaring phase
// amplifies rounding by roughly the norm of the result.
using XComplex = std::complex<long double>;

struct XMatrix {
    std::size_t n;
    std::vector<XComplex> a;

    explicit XMatrix(std::size_t size) : n(size), a(size * size) {}
    XComplex& operator()(std::size_t r, std::size_t c) { return a[r * n + c]; }
    const XComplex& operator()(std::size_t r, std::size_t c) const { return a[r * n + c]; }

    XMatrix operator*(const XMatrix& o) const {
        XMatrix out(n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t k = 0; k < n; ++k) {
                const XComplex x = (*this)(r, k);
                if (x == XComplex{}) continue;
                for (std::size_t c = 0; c < n; ++c) out(r, c) += x * o(k, c);
            }
        return out;
    }

    long double inf_norm() const {
        long double best = 0.0L;
        for (std::size_t r = 0; r < n; ++r) {
            long double row = 0.0L;
            for (std::size_t c = 0; c < n; ++c) row += std::abs((*this)(r, c));
            best = std::max(best, row);
        }
        return best;
    }
};

}  // namespace

CMatrix exp_series(const CMatrix& m, Complex s) {
    if (!m.is_square()) throw DimensionError("exp_series of a non-square matrix");
    const std::size_t n = m.rows();
    XMatrix a(n);
    const XComplex xs(s.real(), s.imag());
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) a(r, c) = xs * XComplex(m(r, c).real(), m(r, c).imag());

    int squarings = 0;
    long double norm = a.inf_norm();
    while (norm > 0.5L) {
        norm *= 0.5L;
        ++squarings;
    }
    const long double scale = std::ldexp(1.0L, -squarings);
    for (auto& x : a.a) x *= scale;

    XMatrix result(n);
    XMatrix term(n);
    for (std::size_t i = 0; i < n; ++i) result(i, i) = term(i, i) = 1.0L;
    for (int k = 1; k <= 200; ++k) {
        term = term * a;
        for (auto& x : term.a) x /= static_cast<long double>(k);
        for (std::size_t i = 0; i < result.a.size(); ++i) result.a[i] += term.a[i];
        if (term.inf_norm() < 1e-22L) break;
    }
    for (int i = 0; i < squarings; ++i) result = result * result;

    CMatrix out(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            const XComplex x = result(r, c);
            out(r, c) = Complex(static_cast<double>(x.real()), static_cast<double>(x.imag()));
        }
    return out;
}

double principal_angle(const Vec2& u, const Vec2& v) {
    const double nu = dirac_norm(u);
    const double nv = dirac_norm(v);
    if (nu == 0.0 || nv == 0.0) throw DomainError("principal angle with a zero vector");
    const Vec2 uh{u[0] / nu, u[1] / nu};
    const Vec2 vh{v[0] / nv, v[1] / nv};
    const Complex ip = dirac_inner(uh, vh);
    const Vec2 perp{vh[0] - uh[0] * ip, vh[1] - uh[1] * ip};
    return std::atan2(dirac_norm(perp), std::abs(ip));
}

Eigen2x2 eig_2x2(const CMatrix& m) {
    require_2x2(m, "eig_2x2");
    const Complex a = m(0, 0), b = m(0, 1), c = m(1, 0), d = m(1, 1);
    const double scale = m.frobenius_norm();
    const Complex half_trace = 0.5 * (a + d);
    const Complex half_gap = 0.5 * (a - d);
    const Complex root = std::sqrt(half_gap * half_gap + b * c);

    Eigen2x2 out;
    out.values = {half_trace + root, half_trace - root};

    // Scalar matrices: every vector is an eigenvector.
    if (std::abs(b) <= 1e-15 * scale && std::abs(c) <= 1e-15 * scale && std::abs(half_gap) <= 1e-15 * scale) {
        out.vectors = {Vec2{1.0, 0.0}, Vec2{0.0, 1.0}};
        return out;
    }

    for (int k = 0; k < 2; ++k) {
        const Complex lambda = out.values[k];
        const Vec2 from_row0{b, lambda - a};
        const Vec2 from_row1{lambda - d, c};
        Vec2 v = dirac_norm(from_row0) >= dirac_norm(from_row1) ? from_row0 : from_row1;
        const double n = dirac_norm(v);
        v = {v[0] / n, v[1] / n};
        out.vectors[k] = v;
    }

    const double gap = std::abs(out.values[0] - out.values[1]);
    if (gap < 1e-10 * scale && principal_angle(out.vectors[0], out.vectors[1]) < 1e-8) {
        out.defective = true;
        out.values = {half_trace, half_trace};
        out.vectors[1] = out.vectors[0];
    }
    return out;
}

}  // namespace pseudoherm
