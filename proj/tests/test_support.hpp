#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "pseudoherm/blocks.hpp"
#include "pseudoherm/linalg.hpp"
#include "pseudoherm/model.hpp"

namespace pseudoherm::testing {

// Property tests carry their own seeds; nothing in the library is random.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : engine_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
    std::size_t index(std::size_t lo, std::size_t hi) {
        return std::uniform_int_distribution<std::size_t>(lo, hi)(engine_);
    }
    Complex complex(double bound) { return {uniform(-bound, bound), uniform(-bound, bound)}; }

    CMatrix matrix(std::size_t rows, std::size_t cols, double bound) {
        CMatrix m(rows, cols);
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c) m(r, c) = complex(bound);
        return m;
    }

    /// Parameters strictly inside the reality domain of block n, alpha drawn
    /// uniformly from [0, alpha_max].
    ModelParams valid_params(std::size_t n, double alpha_max = 1.5) {
        const double hw = uniform(0.5, 2.0);
        const double eps = uniform(-1.0, hw - 0.05);
        const double alpha = uniform(0.0, alpha_max);
        return {eps, hw, blocks::rho_for_alpha(alpha, n, hw, eps)};
    }

private:
    std::mt19937_64 engine_;
};

inline double vec_residual(const CMatrix& m, const Vec2& v, Complex lambda) {
    const Vec2 mv = m * v;
    return std::hypot(std::abs(mv[0] - lambda * v[0]), std::abs(mv[1] - lambda * v[1]));
}

}  // namespace pseudoherm::testing
