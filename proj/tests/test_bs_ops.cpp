#include "support.hpp"

#include "gsvi/black_scholes.hpp"
#include "gsvi/errors.hpp"
#include "gsvi/operator_l.hpp"
#include "gsvi/oracles.hpp"
#include "gsvi/smile_slice.hpp"

#include <gtest/gtest.h>

namespace gsvi {
namespace {

using testing::close_rel;

TEST(BlackScholes, DPairSpotValues) {
    const auto a = d_pm(0.0, 4.0);
    EXPECT_DOUBLE_EQ(a.plus, 1.0);
    EXPECT_DOUBLE_EQ(a.minus, -1.0);
    const auto b = d_pm(1.0, 1.0);
    EXPECT_DOUBLE_EQ(b.plus, -0.5);
    EXPECT_DOUBLE_EQ(b.minus, -1.5);
    EXPECT_THROW(d_pm(0.0, 0.0), DomainError);
    EXPECT_THROW(d_pm(0.0, -1.0), DomainError);
}

TEST(BlackScholes, DMinusIsDPlusLessRootVariance) {
    testing::Draw draw(11);
    for (int i = 0; i < 500; ++i) {
        const double k = draw.uniform(-20.0, 20.0);
        const double w = draw.log_uniform(1e-6, 1e3);
        const auto d = d_pm(k, w);
        EXPECT_DOUBLE_EQ(d.minus, d.plus - std::sqrt(w));
    }
}

TEST(BlackScholes, GaussianTails) {
    EXPECT_TRUE(close_rel(norm_cdf(-30.0), 4.906713927148187e-198, 1e-12));
    EXPECT_TRUE(close_rel(norm_cdf(-8.0), 6.220960574271784e-16, 1e-12));
    EXPECT_NEAR(norm_cdf(0.0), 0.5, 1e-16);
    EXPECT_NEAR(norm_cdf(1.0) + norm_cdf(-1.0), 1.0, 1e-16);
}

TEST(BlackScholes, CallSpotValues) {
    EXPECT_EQ(call_bs(1.0, 0.0), 0.0);
    EXPECT_EQ(call_bs(0.5, 0.0), 0.5);
    EXPECT_NEAR(call_bs(1.0, 4.0), 0.682689492137086, 1e-14);
    EXPECT_NEAR(call_bs(1.0, 1e6), 1.0, 1e-3);
    EXPECT_NEAR(call_bs(2.0, 0.25), 0.026138699288011, 1e-14);
    EXPECT_NEAR(put_bs(2.0, 0.25), 1.026138699288011, 1e-14);
    EXPECT_THROW(call_bs(0.0, 1.0), DomainError);
    EXPECT_THROW(call_bs(1.0, -0.1), DomainError);
}

TEST(BlackScholes, PriceBoundsAndParity) {
    testing::Draw draw(12);
    for (int i = 0; i < 1000; ++i) {
        const double K = draw.log_uniform(1e-3, 1e3);
        const double w = draw.log_uniform(1e-8, 1e2);
        const double c = call_bs(K, w);
        EXPECT_GE(c, std::max(1.0 - K, 0.0) - 1e-15);
        EXPECT_LE(c, 1.0);
        EXPECT_NEAR(c - put_bs(K, w), 1.0 - K, 1e-12 * std::max(1.0, K));
    }
}

TEST(BlackScholes, WingAsymptoticsFollowAmGm) {
    const std::vector<GenSurface> surfaces{testing::example_kink(), testing::example_power(3.5, 1.0),
                                           testing::symmetric_svi(catalog::exp_ratio(1.0))};
    for (const auto& s : surfaces) {
        for (double t : {0.5, 2.0}) {
            for (double k : {10.0, 100.0}) {
                EXPECT_LE(d_pm(k, s.total_variance(k, t)).minus, -std::sqrt(2.0 * k) + 1e-12);
                EXPECT_GE(d_pm(-k, s.total_variance(-k, t)).plus, std::sqrt(2.0 * k) - 1e-12);
            }
        }
    }
}

TEST(BlackScholes, LargeMoneynessDPlusDecreases) {
    for (const auto& s : {testing::example_kink(), testing::example_power(2.0, 1.3)}) {
        const double a = d_pm(1e3, s.total_variance(1e3, 1.0)).plus;
        const double b = d_pm(1e4, s.total_variance(1e4, 1.0)).plus;
        EXPECT_LT(b, a);
        EXPECT_LT(b, -10.0);
    }
}

TEST(OperatorL, FlatPointOfSymmetricSvi) {
    const auto s = GenSurface(catalog::svi(0.0), catalog::constant(1.0), catalog::linear(1.0));
    for (double t : {0.5, 1.0, 3.0}) {
        // Psi'(0) = 0 and Psi''(0) = 1/2, so L = 1 + theta phi^2 / 4
        EXPECT_NEAR(apply_l(s, 0.0, t).pointwise(), 1.0 + t / 4.0, 1e-14);
    }
}

TEST(OperatorL, ExampleKinkAtom) {
    const auto s = testing::example_kink();
    const auto r = apply_l(s, 0.0, 1.0);
    EXPECT_TRUE(r.at_knot);
    EXPECT_THROW(r.pointwise(), KnotError);
    ASSERT_EQ(r.atoms.size(), 1u);
    EXPECT_EQ(r.atoms[0].k, 0.0);
    // half the kink of v' = theta phi * 5/2
    EXPECT_NEAR(r.atoms[0].mass, 0.790150698535697, 1e-13);
    for (double t : {0.1, 2.0}) {
        const double thph = 1.0 - std::exp(-t);
        const auto atoms = l_atoms(SmileSlice::from_surface(s, t));
        ASSERT_EQ(atoms.size(), 1u);
        EXPECT_NEAR(atoms[0].mass, 1.25 * thph, 1e-14);
    }
}

TEST(OperatorL, ExampleKinkIsNonNegativeOffTheKnot) {
    const auto s = testing::example_kink();
    for (double t : {0.1, 1.0, 5.0}) {
        for (int i = 0; i <= 2000; ++i) {
            const double k = -10.0 + 0.01 * i;
            const auto r = apply_l(s, k, t);
            EXPECT_GE(r.worst(), 0.0) << "k=" << k << " t=" << t;
        }
    }
}

TEST(OperatorL, AtomPositionsFollowTheRescaling) {
    const auto s = GenSurface(catalog::sqrt_kink(), catalog::heston_like(1.0), catalog::linear(2.0));
    for (double t : {0.3, 1.7}) {
        const auto slice = SmileSlice::from_surface(s, t);
        ASSERT_EQ(slice.knots().size(), 1u);
        EXPECT_EQ(slice.knots()[0], 0.0 / s.phi().value(s.theta().value(t)));
    }
    const auto none = SmileSlice::from_surface(GenSurface(catalog::svi(0.2), catalog::exp_ratio(1.0), catalog::linear(1.0)), 1.0);
    EXPECT_TRUE(l_atoms(none).empty());
}

TEST(OperatorL, KFormAndZFormAgree) {
    testing::Draw draw(13);
    const std::vector<GenSurface> surfaces{testing::example_kink(), testing::example_power(3.5, 1.0),
                                           GenSurface(catalog::svi(-0.4), catalog::heston_like(0.7), catalog::power_law(1.2, 0.7))};
    for (const auto& s : surfaces) {
        for (int i = 0; i < 200; ++i) {
            const double k = draw.uniform(-6.0, 6.0);
            const double t = draw.log_uniform(0.05, 8.0);
            const auto p = s.partials(k, t);
            const double kform = l_kform(k, p.w, p.dk, p.dkk);
            const double zform = apply_l(s, k, t).pointwise();
            EXPECT_NEAR(kform, zform, 1e-10 * std::max(1.0, std::abs(zform)));
        }
    }
}

TEST(OperatorL, NumericPartialsReproduceZForm) {
    testing::Draw draw(14);
    const std::vector<GenSurface> surfaces{testing::example_kink(), testing::example_power(2.0, 1.3),
                                           testing::symmetric_svi(catalog::exp_ratio(1.0))};
    for (const auto& s : surfaces) {
        for (int i = 0; i < 100; ++i) {
            const double k = (draw.coin() ? 1.0 : -1.0) * draw.uniform(0.1, 5.0);
            const double t = draw.log_uniform(0.1, 5.0);
            const auto w = [&](double x) { return s.total_variance(x, t); };
            const double h = 1e-4;
            const double wk = (w(k + h) - w(k - h)) / (2 * h);
            const double wkk = (w(k + h) - 2 * w(k) + w(k - h)) / (h * h);
            const double numeric = l_kform(k, w(k), wk, wkk);
            const double exact = apply_l(s, k, t).pointwise();
            EXPECT_TRUE(close_rel(numeric, exact, 1e-6, 1e-9)) << s.psi().name() << " k=" << k << " t=" << t;
        }
    }
}

TEST(LocalVariance, AtTheMoneySymmetric) {
    const auto s = GenSurface(catalog::svi(0.0), catalog::constant(1.0), catalog::linear(1.0));
    for (double t : {0.5, 2.0}) {
        const auto lv = dupire_local_var(s, 0.0, t);
        EXPECT_NEAR(lv.value, 1.0 / apply_l(s, 0.0, t).pointwise(), 1e-15);
    }
}

TEST(LocalVariance, NonNegativeOnExampleKink) {
    const auto s = testing::example_kink();
    for (double t : {0.1, 0.5, 1.0, 2.0}) {
        for (double k = -2.0; k <= 2.0; k += 0.05) {
            if (std::abs(k) < 1e-12) continue;
            const auto lv = dupire_local_var(s, k, t);
            EXPECT_GE(lv.numerator, 0.0);
            EXPECT_GE(lv.value, 0.0);
        }
    }
    EXPECT_THROW(dupire_local_var(s, 0.0, 1.0), KnotError);
}

TEST(LocalVariance, DecreasingThetaGivesNegativeNumeratorEverywhere) {
    const auto s = GenSurface(catalog::svi(0.0), catalog::exp_ratio(1.0), catalog::decaying(1.0, 1.0));
    for (double k = -3.0; k <= 3.0; k += 0.25) {
        EXPECT_LT(dupire_local_var(s, k, 1.0).numerator, 0.0) << k;
    }
}

TEST(LocalVariance, NonPositiveDenominatorIsArbitrage) {
    const auto s = testing::example_power(3.5, 3.0);
    bool thrown = false;
    for (double k = -6.0; k <= 6.0 && !thrown; k += 0.01) {
        try {
            dupire_local_var(s, k, 1.0);
        } catch (const ArbitrageError&) {
            thrown = true;
        }
    }
    EXPECT_TRUE(thrown);
}

TEST(Oracles, ConvexityOnArbitrageFreeExamples) {
    const auto r1 = convexity_oracle(testing::example_kink(), 1.0, default_strike_grid());
    EXPECT_TRUE(r1.passed(1e-10)) << r1.min_margin;
    EXPECT_EQ(r1.grid_n, 2001u);
    EXPECT_EQ(r1.witness_name, "K");
    const auto r2 = convexity_oracle(testing::example_power(3.5, 1.0), 1.0, default_strike_grid());
    EXPECT_TRUE(r2.passed(1e-10)) << r2.min_margin;
}

TEST(Oracles, ConvexityFlagsOversizedScale) {
    const auto grid = default_strike_grid();
    const auto r = convexity_oracle(testing::example_power(3.5, 3.0), 1.0, grid);
    EXPECT_FALSE(r.passed());
    EXPECT_TRUE(grid.contains(r.witness));
}

TEST(Oracles, MonotonicityFlagsDecreasingTheta) {
    const auto s = GenSurface(catalog::svi(0.0), catalog::exp_ratio(1.0), catalog::decaying(1.0, 1.0));
    const auto times = Grid::linear(0.1, 5.0, 50);
    const auto r = monotonicity_oracle(s, 0.0, times);
    EXPECT_LT(r.min_margin, 0.0);
    EXPECT_TRUE(times.contains(r.witness_t));
    EXPECT_EQ(r.witness_name, "k");
    EXPECT_EQ(r.grid_variable, "t");
    EXPECT_TRUE(monotonicity_oracle(testing::example_kink(), 0.0, times).passed());
}

TEST(Oracles, ConvexityAgreesWithPointwiseSign) {
    // negative L at some log-strike shows up as a negative second difference nearby, and conversely
    struct Case {
        GenSurface surface;
        bool free;
    };
    const std::vector<Case> cases{{testing::example_kink(), true},
                                  {testing::example_power(2.0, 1.3), true},
                                  {testing::example_power(2.0, 3.0), false},
                                  {GenSurface(catalog::svi(0.0), catalog::constant(8.0), catalog::linear(1.0)), false}};
    const auto grid = default_strike_grid();
    for (const auto& c : cases) {
        double min_l = 1e300;
        for (double K : grid.points()) min_l = std::min(min_l, apply_l(c.surface, std::log(K), 1.0).worst());
        const bool oracle = convexity_oracle(c.surface, 1.0, grid).passed(1e-8);
        EXPECT_EQ(min_l >= -1e-8, c.free);
        EXPECT_EQ(oracle, c.free);
    }
}

TEST(Oracles, SlopeJumpMatchesAtomProbability) {
    const auto s = testing::example_kink();
    const double v = s.total_variance(0.0, 1.0);
    const double atom = apply_l(s, 0.0, 1.0).atoms[0].mass;
    const double prob = atom * norm_pdf(d_pm(0.0, v).minus) / std::sqrt(v);
    EXPECT_NEAR(prob, 0.278184663873010, 1e-12);
    EXPECT_NEAR(price_slope_jump(s, 1.0, 0.0), prob, 1e-6);
    EXPECT_NEAR(price_slope_jump(testing::example_power(3.5, 1.0), 1.0, 0.0), 0.0, 1e-6);
}

}  // namespace
}  // namespace gsvi
