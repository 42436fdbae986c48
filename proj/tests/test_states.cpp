#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "pseudoherm/errors.hpp"
#include "pseudoherm/metric.hpp"
#include "pseudoherm/states.hpp"
#include "test_support.hpp"

namespace pseudoherm::states {
namespace {

constexpr double pi = std::numbers::pi;

double diff2(const Vec2& a, const Vec2& b) { return std::max(std::abs(a[0] - b[0]), std::abs(a[1] - b[1])); }

metric::MetricOperator discrimination_metric(double eps) {
    return metric::metric_closed_form(discrimination_alpha(eps));
}

TEST(PsiPairs, DegenerateAtZeroSeparation) {
    const ThetaEps te{0.8, 0.0};
    const auto [p1, p2] = make_psi_pair_12(te);
    const auto [p3, p4] = make_psi_pair_34(te);
    EXPECT_EQ(p1.vec(), p2.vec());
    EXPECT_EQ(p3.vec(), p4.vec());
    EXPECT_EQ(p3.c_a, p1.c_b);
    EXPECT_EQ(p3.c_b, p1.c_a);
}

TEST(PsiPairs, DiracOverlaps) {
    const auto te = ThetaEps::from_eps(0.1);
    const auto [p1, p2] = make_psi_pair_12(te);
    const auto [p3, p4] = make_psi_pair_34(te);
    EXPECT_NEAR(std::norm(dirac_inner(p1.vec(), p2.vec())), 0.990033288920620815562, 1e-15);
    EXPECT_NEAR(dirac_inner(p3.vec(), p4.vec()).real(), std::cos(0.1), 1e-15);
    for (const auto& s : {p1, p2, p3, p4}) EXPECT_NEAR(dirac_norm(s.vec()), 1.0, 1e-15);
}

TEST(PsiPairs, SmallSeparationExpansion) {
    for (double eps : {0.01, 0.05, 0.1}) {
        const auto [p1, p2] = make_psi_pair_12(ThetaEps::from_eps(eps));
        const double ov2 = std::norm(dirac_inner(p1.vec(), p2.vec()));
        EXPECT_NEAR(ov2, std::pow(std::cos(eps), 2), 1e-15);
        EXPECT_LE(std::abs(ov2 - (1.0 - eps * eps)), eps * eps * eps * eps);
    }
}

TEST(PsiPairs, ThirdStateCoincidesWithSecond) {
    for (double eps : {0.02, 0.1, 0.4}) {
        const auto te = ThetaEps::from_eps(eps);
        EXPECT_LE(diff2(make_psi_pair_12(te).second.vec(), make_psi_pair_34(te).first.vec()), 1e-15);
    }
}

TEST(ThetaEps, RegimeFlag) {
    EXPECT_FALSE(ThetaEps::from_eps(0.1).outside_small_eps_regime());
    EXPECT_TRUE(ThetaEps::from_eps(0.31).outside_small_eps_regime());
    EXPECT_DOUBLE_EQ(ThetaEps::from_eps(0.1).theta, pi / 2 - 0.1);
}

TEST(Embed4d, BasisExamplesAndIsometry) {
    const double r = 1.0 / std::sqrt(2.0);
    const auto a = embed_4d({1.0, 0.0}).amplitudes;
    EXPECT_NEAR(std::abs(a[0] - r) + std::abs(a[1] - r) + std::abs(a[2]) + std::abs(a[3]), 0.0, 1e-15);
    const auto b = embed_4d({0.0, 1.0}).amplitudes;
    EXPECT_NEAR(std::abs(b[0]) + std::abs(b[1]) + std::abs(b[2] - r) + std::abs(b[3] - r), 0.0, 1e-15);

    testing::Gen gen(44);
    const CMatrix e = embedding_isometry();
    EXPECT_LE(max_abs_diff(e.adjoint() * e, CMatrix::identity(2)), 1e-15);
    for (int trial = 0; trial < 1000; ++trial) {
        const SectorState u{gen.complex(1.0), gen.complex(1.0)};
        const SectorState v{gen.complex(1.0), gen.complex(1.0)};
        const auto eu = embed_4d(u).amplitudes;
        const auto ev = embed_4d(v).amplitudes;
        EXPECT_NEAR(std::abs(dirac_inner(eu, ev) - dirac_inner(u.vec(), v.vec())), 0.0, 1e-15);
        EXPECT_LE(diff2(to_sector(embed_4d(u)).vec(), u.vec()), 1e-15);
        const CVector via_matrix = e * std::span<const Complex>(u.vec());
        for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(std::abs(via_matrix[k] - eu[k]), 0.0, 1e-16);
    }
}

TEST(DiscriminationAlpha, Examples) {
    EXPECT_NEAR(discrimination_alpha(0.1), 1.47079632679489661923, 1e-15);
    EXPECT_NEAR(discrimination_alpha(1e-9), pi / 2, 1e-8);
    EXPECT_NEAR(discrimination_alpha(pi / 2), 0.0, 1e-15);
    EXPECT_THROW(discrimination_alpha(0.0), DomainError);
    EXPECT_THROW(discrimination_alpha(-0.1), DomainError);
    EXPECT_THROW(discrimination_alpha(1.6), DomainError);
}

TEST(DiscriminationAlpha, RealizedByBlockParams) {
    const double alpha = discrimination_alpha(0.1);
    const ModelParams p0{0.0, 1.0, blocks::rho_for_alpha(alpha, 0, 1.0, 0.0)};
    EXPECT_TRUE(realizes_alpha(0, p0, alpha));
    EXPECT_FALSE(realizes_alpha(1, p0, alpha));  // block 1 is broken for these params
    const ModelParams p2{0.2, 1.5, blocks::rho_for_alpha(alpha, 2, 1.5, 0.2)};
    EXPECT_TRUE(realizes_alpha(2, p2, alpha));
    EXPECT_FALSE(realizes_alpha(0, p2, alpha));
}

TEST(EtaOverlap12, Examples) {
    EXPECT_NEAR(eta_overlap_12(ThetaEps::from_eps(0.1), metric::metric_closed_form(0.0)).raw.real(), std::cos(0.1),
                1e-15);
    EXPECT_NEAR(eta_overlap_12(ThetaEps::from_eps(0.2), metric::metric_closed_form(1.3)).raw.real(),
                0.0165083924240486664228, 1e-15);
}

TEST(EtaOverlap12, VanishesAtDiscriminationPoint) {
    for (int k = 0; k < 50; ++k) {
        const double eps = 0.01 + (0.5 - 0.01) * k / 49.0;
        const auto r = eta_overlap_12(ThetaEps::from_eps(eps), discrimination_metric(eps));
        EXPECT_LE(std::abs(r.raw), 1e-12) << eps;
        EXPECT_LE(std::abs(r.normalized), 1e-10) << eps;
    }
}

TEST(EtaOverlap34, Examples) {
    const double eps = 0.1;
    const auto r = eta_overlap_34(ThetaEps::from_eps(eps), discrimination_metric(eps));
    EXPECT_NEAR(r.raw.real(), 0.0198338380762098732266, 1e-15);
    EXPECT_NEAR(r.normalized.real(), 0.893528124408786882795, 1e-13);
    // raw overlap vanishes like 2 eps^2
    for (double e : {1e-2, 1e-3}) {
        const double raw = eta_overlap_34(ThetaEps::from_eps(e), discrimination_metric(e)).raw.real();
        EXPECT_NEAR(raw / (2.0 * e * e), 1.0, 2.0 * e * e);
    }
}

TEST(EtaOverlaps, ClosedFormsMatchBruteForce) {
    testing::Gen gen(7);
    for (int trial = 0; trial < 1000; ++trial) {
        const double eps = gen.uniform(0.01, 0.5);
        const double alpha = gen.uniform(0.0, 1.5);
        const auto te = ThetaEps::from_eps(eps);
        const auto eta = metric::metric_closed_form(alpha);
        const auto [p1, p2] = make_psi_pair_12(te);
        const auto [p3, p4] = make_psi_pair_34(te);
        // plain component arithmetic, no library inner product
        const double s = std::sin(alpha);
        auto brute = [s](const SectorState& u, const SectorState& v) {
            return std::conj(u.c_a) * (v.c_a - s * v.c_b) + std::conj(u.c_b) * (v.c_b - s * v.c_a);
        };
        EXPECT_NEAR(std::abs(eta_overlap_12(te, eta).raw - brute(p1, p2)), 0.0, 1e-15);
        EXPECT_NEAR(std::abs(eta_overlap_34(te, eta).raw - brute(p3, p4)), 0.0, 1e-15);
        EXPECT_NEAR(eta_overlap_12(te, eta).raw.real(), std::cos(eps) - s, 1e-13);
        EXPECT_NEAR(eta_overlap_34(te, eta).raw.real(), std::cos(eps) - s * std::cos(2.0 * eps), 1e-13);
    }
}

TEST(EtaOverlap, NullStateRejected) {
    EXPECT_THROW(eta_overlap({1.0, 1.0}, {1.0, 0.0}, metric::metric_closed_form(pi / 2)), DegenerateNormError);
}

TEST(EtaBra, HermitianLimitIsConjugateTranspose) {
    const SectorState s{Complex(0.6, 0.0), Complex(0.0, 0.8)};
    const Vec2 b = eta_bra(s, metric::metric_closed_form(0.0));
    EXPECT_LE(diff2(b, Vec2{Complex(0.6, 0.0), Complex(0.0, -0.8)}), 1e-16);
}

TEST(EtaBra, DualPairings) {
    for (double eps : {0.05, 0.1, 0.3}) {
        const auto te = ThetaEps::from_eps(eps);
        const auto eta = discrimination_metric(eps);
        const auto [p1, p2] = make_psi_pair_12(te);
        const Vec2 b1 = eta_bra(p1, eta);
        auto pair = [](const Vec2& bra, const Vec2& ket) { return bra[0] * ket[0] + bra[1] * ket[1]; };
        EXPECT_NEAR(std::abs(pair(b1, p2.vec())), 0.0, 1e-12);
        EXPECT_NEAR(std::abs(pair(b1, metric::eta_normalize(p1.vec(), eta)) - 1.0), 0.0, 1e-13);
        // against the Dirac-normalised ket it gives the eta-norm, sin eps
        EXPECT_NEAR(pair(b1, p1.vec()).real(), std::sin(eps), 1e-13);
    }
    EXPECT_THROW(eta_bra({1.0, 1.0}, metric::metric_closed_form(pi / 2)), DegenerateNormError);
}

TEST(EtaBra, ExplicitTrigonometricBras) {
    for (double eps : {0.02, 0.1, 0.25}) {
        const auto te = ThetaEps::from_eps(eps);
        const auto eta = discrimination_metric(eps);
        const auto [p1, p2] = make_psi_pair_12(te);
        const Vec4 b1 = eta_bra_4d(p1, eta);
        const Vec4 b2 = eta_bra_4d(p2, eta);
        const Vec4 x1 = explicit_bra_12(1, eps);
        const Vec4 x2 = explicit_bra_12(2, eps);
        // The psi1 coefficients are the dual of psi1. The printed psi2 row has
        // (pi + 2eps)/4 = pi/2 - (pi - 2eps)/4, so it repeats the psi1 row; the
        // dual of psi2 has its two coefficients exchanged.
        for (std::size_t k = 0; k < 4; ++k) {
            EXPECT_NEAR(std::abs(b1[k] - x1[k]), 0.0, 1e-12);
            EXPECT_NEAR(std::abs(x2[k] - x1[k]), 0.0, 1e-12);
            EXPECT_NEAR(std::abs(b2[k] - x2[(k + 2) % 4]), 0.0, 1e-12);
        }
        const auto e2 = embed_4d(p2).amplitudes;
        Complex s{};
        for (std::size_t k = 0; k < 4; ++k) s += x1[k] * e2[k];
        EXPECT_NEAR(std::abs(s), 0.0, 1e-12);
    }
    EXPECT_THROW(explicit_bra_12(3, 0.1), std::out_of_range);
}

TEST(Projectors, DiscriminationPointProperties) {
    for (double eps : {0.03, 0.1, 0.15, 0.4}) {
        const auto te = ThetaEps::from_eps(eps);
        const auto eta = discrimination_metric(eps);
        const auto [p1, p2] = make_psi_pair_12(te);
        const auto [p3, p4] = make_psi_pair_34(te);
        const std::array<SectorState, 4> psi{p1, p2, p3, p4};
        for (int i = 1; i <= 4; ++i) {
            const CMatrix p = projector(i, te, eta);
            EXPECT_LE(max_abs_diff(p * p, p), 1e-12) << i;
            EXPECT_LE(diff2(p * psi[i - 1].vec(), psi[i - 1].vec()), 1e-12) << i;
        }
        const CMatrix pr1 = projector(1, te, eta);
        const CMatrix pr2 = projector(2, te, eta);
        EXPECT_LE(dirac_norm(pr1 * p2.vec()), 1e-12);
        EXPECT_LE(dirac_norm(pr2 * p1.vec()), 1e-12);
        EXPECT_LE(max_abs_diff(pr1 + pr2, CMatrix::identity(2)), 1e-12);
    }
    EXPECT_THROW(projector(0, ThetaEps::from_eps(0.1), discrimination_metric(0.1)), std::out_of_range);
}

TEST(Projectors, SecondPairIsNotDiscriminated) {
    const double eps = 0.1;
    const auto te = ThetaEps::from_eps(eps);
    const auto eta = discrimination_metric(eps);
    const auto [p3, p4] = make_psi_pair_34(te);
    // psi3 = psi2, so P3 = P2, and P3 psi4 has Dirac norm 2 cos eps
    EXPECT_LE(max_abs_diff(projector(3, te, eta), projector(2, te, eta)), 1e-12);
    EXPECT_NEAR(dirac_norm(projector(3, te, eta) * p4.vec()), 2.0 * std::cos(eps), 1e-11);
    EXPECT_GT(max_abs_diff(projector(4, te, eta), projector(1, te, eta)), 0.1);
}

TEST(AbcdOperators, StructuralIdentities) {
    const auto ops = abcd_operators();
    EXPECT_EQ(ops.c.adjoint(), ops.d);
    const CMatrix e = embedding_isometry();
    EXPECT_LE(max_abs_diff(e.adjoint() * (0.5 * (ops.a + ops.b)) * e, CMatrix::identity(2)), 1e-15);
    for (const auto* m : {&ops.a, &ops.b}) {
        const CMatrix half = 0.5 * *m;
        EXPECT_LE(max_abs_diff(half * half, half), 1e-15);
    }
    // A x = 2 <e_A|x> e_A
    testing::Gen gen(3);
    Vec4 x{gen.complex(1.0), gen.complex(1.0), gen.complex(1.0), gen.complex(1.0)};
    const auto ea = embed_4d({1.0, 0.0}).amplitudes;
    const Complex proj = dirac_inner(ea, x);
    const CVector ax = ops.a * std::span<const Complex>(x);
    for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(std::abs(ax[k] - 2.0 * proj * ea[k]), 0.0, 1e-15);
}

TEST(TabulatedProjectors, AgreeWithStateProjectorsForFirstPair) {
    for (double eps : {0.05, 0.1, 0.15, 0.3}) {
        const auto te = ThetaEps::from_eps(eps);
        const auto eta = discrimination_metric(eps);
        for (int i : {1, 2}) {
            const CMatrix state = projector(i, te, eta);
            EXPECT_LE(max_abs_diff(tabulated_projector(i, eps), state), 1e-12);
            EXPECT_LE(max_abs_diff(tabulated_projector_4d(i, eps), lift_to_4d(state)), 1e-12);
        }
        EXPECT_EQ(tabulated_projector_4d(1, eps), tabulated_projector_4d(4, eps));
        EXPECT_EQ(tabulated_projector_4d(2, eps), tabulated_projector_4d(3, eps));
    }
}

TEST(CompletenessReport, RecordsBothReadings) {
    for (double eps : {0.05, 0.1, 0.15, 0.2, 0.3}) {
        const auto r = completeness_report(eps);
        EXPECT_NEAR(r.alpha, discrimination_alpha(eps), 0.0);
        EXPECT_LE(r.tabulated.pair_12_minus_identity, 1e-12);
        EXPECT_LE(r.tabulated.pair_34_minus_identity, 1e-12);
        EXPECT_LE(r.tabulated.sum_minus_double_identity, 1e-12);
        EXPECT_EQ(r.tabulated.p1_minus_p4, 0.0);
        EXPECT_EQ(r.tabulated.p2_minus_p3, 0.0);
        EXPECT_LE(r.tabulated.max_idempotency, 1e-12);
        EXPECT_LE(r.tabulated_vs_states_12, 1e-12);

        EXPECT_LE(r.from_states.pair_12_minus_identity, 1e-12);
        EXPECT_LE(r.from_states.max_idempotency, 1e-12);
        EXPECT_LE(r.from_states.p2_minus_p3, 1e-12);
        EXPECT_GT(r.from_states.p1_minus_p4, 0.1);
        EXPECT_GT(r.from_states.pair_34_minus_identity, 0.1);

        EXPECT_LE(r.p1_on_psi2, 1e-12);
        EXPECT_LE(r.p2_on_psi1, 1e-12);
        EXPECT_NEAR(r.p3_on_psi4, 2.0 * std::cos(eps), 1e-10);
        EXPECT_LE(r.tabulated_p4_on_psi3, 1e-12);
        EXPECT_NEAR(r.tabulated_p4_on_psi4, 1.0, 1e-12);
    }
}

}  // namespace
}  // namespace pseudoherm::states
