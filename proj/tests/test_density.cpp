#include "support.hpp"

#include "gsvi/black_scholes.hpp"
#include "gsvi/density.hpp"
#include "gsvi/errors.hpp"
#include "gsvi/smile_slice.hpp"

#include <gtest/gtest.h>

#include <sstream>

namespace gsvi {
namespace {

using testing::close_rel;

std::vector<GenSurface> arbitrage_free_catalog() {
    return {testing::example_kink(),
            testing::example_power(1.5, 1.0),
            testing::example_power(2.0, 1.0),
            testing::example_power(3.5, 1.0),
            testing::example_power(8.0, 1.3),
            testing::symmetric_svi(catalog::exp_ratio(1.0)),
            GenSurface(catalog::svi(-0.4), catalog::heston_like(1.0), catalog::linear(1.0))};
}

TEST(Density, ExampleKinkNormalisation) {
    const auto d = build_density(testing::example_kink(), 1.0);
    EXPECT_NEAR(d.mass, 1.0, 1e-4);
    EXPECT_NEAR(d.mean_exp, 1.0, 1e-4);
    ASSERT_EQ(d.atoms.size(), 1u);
    EXPECT_EQ(d.atoms[0].k, 0.0);
    EXPECT_NEAR(d.atoms[0].probability, 0.278184663873010, 1e-12);
    EXPECT_TRUE(d.diagnostics.ok());
}

TEST(Density, PowerExampleHasNoAtom) {
    const auto d = build_density(testing::example_power(3.5, 1.0), 1.0);
    EXPECT_NEAR(d.mass, 1.0, 1e-4);
    for (const auto& a : d.atoms) EXPECT_LE(std::abs(a.probability), 1e-12);
}

TEST(Density, NormalisationAcrossCatalogAndMaturities) {
    // wing slopes near 1 at t = 5 leave percent-level mass beyond |k| = 40
    DensityOptions wide;
    wide.k_grid = Grid::linear(-120.0, 120.0, 48001);
    for (const auto& s : arbitrage_free_catalog()) {
        for (double t : {0.25, 1.0, 5.0}) {
            const auto d = build_density(s, t, wide);
            EXPECT_NEAR(d.mass, 1.0, 1e-4) << s.psi().name() << " t=" << t;
            EXPECT_NEAR(d.mean_exp, 1.0, 1e-4) << s.psi().name() << " t=" << t;
        }
    }
}

TEST(Density, DefaultGridRejectsHeavyTail) {
    EXPECT_THROW(build_density(testing::example_kink(), 5.0), TailError);
}

TEST(Density, SingularKnotIsIntegrable) {
    // Psi'' ~ |z|^-1/2 at the origin for nu = 1.5
    const auto d = build_density(testing::example_power(1.5, 1.0), 1.0);
    const auto zero = std::find(d.k.begin(), d.k.end(), 0.0);
    ASSERT_NE(zero, d.k.end());
    EXPECT_TRUE(std::isinf(d.p_minus[static_cast<std::size_t>(zero - d.k.begin())]));
    EXPECT_NEAR(d.mass, 1.0, 1e-4);
    EXPECT_NEAR(d.mean_exp, 1.0, 1e-4);
}

TEST(Density, ShareMeasureRelation) {
    for (const auto& s : arbitrage_free_catalog()) {
        const auto d = build_density(s, 1.0);
        for (std::size_t i = 0; i < d.k.size(); ++i) {
            if (!std::isfinite(d.p_minus[i])) continue;
            EXPECT_TRUE(close_rel(d.p_plus[i], std::exp(d.k[i]) * d.p_minus[i], 1e-12));
        }
    }
}

TEST(Density, ReflectedSmileSwapsMeasures) {
    for (const auto& s : {testing::example_kink(), testing::example_power(3.5, 1.0),
                          GenSurface(catalog::svi(0.5), catalog::exp_ratio(1.0), catalog::linear(1.0))}) {
        const auto slice = SmileSlice::from_surface(s, 1.0);
        const auto d = build_density(slice);
        const auto r = build_density(slice.reflected());
        ASSERT_EQ(d.k.size(), r.k.size());
        const std::size_t n = d.k.size();
        for (std::size_t i = 0; i < n; ++i) {
            ASSERT_NEAR(r.k[i], -d.k[n - 1 - i], 1e-12);
            EXPECT_NEAR(r.p_minus[i], d.p_plus[n - 1 - i], 1e-10) << r.k[i];
        }
    }
}

TEST(Density, CdfMatchesClosedFormPrimitive) {
    for (const auto& s : arbitrage_free_catalog()) {
        const auto slice = SmileSlice::from_surface(s, 1.0);
        const auto d = build_density(slice);
        for (std::size_t i = 0; i < d.k.size(); i += 97) {
            if (std::abs(d.k[i]) > 20.0) continue;
            EXPECT_NEAR(d.cdf[i], closed_form_cdf(slice, d.k[i]), 1e-6) << s.psi().name() << " k=" << d.k[i];
        }
    }
}

TEST(Density, CdfIsMonotoneWithinUnitInterval) {
    const auto d = build_density(testing::example_kink(), 0.5);
    for (std::size_t i = 0; i < d.cdf.size(); ++i) {
        EXPECT_GE(d.cdf[i], 0.0);
        EXPECT_LE(d.cdf[i], 1.0 + 1e-4);
        if (i > 0) EXPECT_GE(d.cdf[i], d.cdf[i - 1]);
    }
}

TEST(Density, MatchesSecondStrikeDerivativeOfPrices) {
    for (const auto& s : {testing::example_kink(), testing::example_power(2.0, 1.0)}) {
        const double t = 1.0;
        const auto d = build_density(s, t);
        const auto price = [&](double K) { return call_bs(K, s.total_variance(std::log(K), t)); };
        for (std::size_t i = 0; i < d.k.size(); i += 50) {
            const double k = d.k[i];
            if (std::abs(k) < 0.05 || std::abs(k) > 3.0) continue;
            const double K = std::exp(k);
            const double h = 1e-3 * K;
            const double second = (price(K + h) - 2.0 * price(K) + price(K - h)) / (h * h);
            // strike density C'' times the Jacobian dK/dk = K
            EXPECT_TRUE(close_rel(d.p_minus[i], K * second, 1e-4)) << "k=" << k;
        }
    }
}

TEST(Density, SlopeBoundsOnSlices) {
    for (const auto& s : arbitrage_free_catalog()) {
        const auto slice = SmileSlice::from_surface(s, 1.0);
        for (double k = 0.01; k < 30.0; k *= 1.2) {
            EXPECT_LT(slice.deriv1(k), std::sqrt(2.0 * slice.value(k) / k)) << s.psi().name() << " k=" << k;
            EXPECT_GT(slice.deriv1(-k), -4.0);
        }
    }
}

TEST(Density, WingDiagnostics) {
    const auto diag = wing_diagnostics(SmileSlice::from_surface(testing::example_kink(), 1.0));
    EXPECT_TRUE(diag.small_moneyness.ok);
    EXPECT_LT(diag.small_moneyness.value[0], diag.small_moneyness.value[1]);
    EXPECT_LT(diag.small_moneyness.value[1], diag.small_moneyness.value[2]);
    EXPECT_GT(diag.small_moneyness.value[0], 0.0);
    EXPECT_TRUE(diag.large_moneyness.ok);
    EXPECT_TRUE(diag.amgm_ok);
    for (int i = 0; i < 3; ++i) {
        const double k = diag.large_moneyness.k[i];
        const double v = testing::example_kink().total_variance(k, 1.0);
        EXPECT_LE(d_pm(k, v).minus, -std::sqrt(2.0 * k));
    }
    EXPECT_LE(std::abs(diag.boundary_left), 1e-8);
    EXPECT_LE(std::abs(diag.boundary_right), 1e-8);
}

TEST(Density, ArbitrageSliceIsRejected) {
    EXPECT_THROW(build_density(testing::example_power(3.5, 3.0), 1.0), ArbitrageError);
}

TEST(Sampling, MedianAndAtoms) {
    const auto s = testing::example_power(3.5, 1.0);
    const auto slice = SmileSlice::from_surface(s, 1.0);
    const auto d = build_density(slice);
    const double median = cdf_quantile(d, 0.5);
    EXPECT_NEAR(closed_form_cdf(slice, median), 0.5, 1e-6);

    const auto kink = build_density(testing::example_kink(), 1.0);
    const double below = closed_form_cdf(SmileSlice::from_surface(testing::example_kink(), 1.0), 0.0, Side::left);
    const double atom = kink.atoms[0].probability;
    EXPECT_EQ(cdf_quantile(kink, below + 0.25 * atom), 0.0);
    EXPECT_EQ(cdf_quantile(kink, below + 0.75 * atom), 0.0);
    EXPECT_LT(cdf_quantile(kink, below - 0.01), 0.0);
    EXPECT_GT(cdf_quantile(kink, below + atom + 0.01), 0.0);
    EXPECT_THROW(cdf_quantile(kink, 0.0), DomainError);
    EXPECT_THROW(cdf_quantile(kink, 1.0), DomainError);
    EXPECT_THROW(cdf_quantile(kink, 1.5), DomainError);
}

TEST(Sampling, QuantileIsNonDecreasing) {
    const auto d = build_density(testing::example_kink(), 2.0);
    double prev = -1e300;
    for (int i = 1; i < 2000; ++i) {
        const double q = cdf_quantile(d, i / 2000.0);
        EXPECT_GE(q, prev);
        prev = q;
    }
}

// Expected to fail: e^k has no second moment under this slice (critical moment
// 0.37), and about 0.022 of E[e^k] sits above the 1 - 1e-6 quantile, which
// 1e6 draws almost never reach. The sample mean lands near 0.973.
TEST(Sampling, MartingaleMeanFromAntitheticDraws) {
    const auto d = build_density(testing::example_kink(), 1.0);
    const auto u = uniform_stream(1000000, 7, true);
    double sum = 0.0;
    for (double k : sample_log_moneyness(d, u)) sum += std::exp(k);
    EXPECT_NEAR(sum / static_cast<double>(u.size()), 1.0, 0.01);
}

TEST(Sampling, ShortMaturityConcentratesAtTheMoney) {
    DensityOptions opts;
    opts.k_grid = Grid::linear(-1.0, 1.0, 20001);
    const auto d = build_density(testing::example_kink(), 1e-4, opts);
    EXPECT_NEAR(d.mass, 1.0, 1e-4);
    for (double k : sample_log_moneyness(d, uniform_stream(2000, 3, true))) EXPECT_LT(std::abs(k), 0.1);
}

TEST(Sampling, StreamIsSeededAndAntithetic) {
    const auto a = uniform_stream(1000, 42, true);
    const auto b = uniform_stream(1000, 42, true);
    EXPECT_EQ(a, b);
    EXPECT_NE(a, uniform_stream(1000, 43, true));
    for (std::size_t i = 0; i + 1 < a.size(); i += 2) EXPECT_DOUBLE_EQ(a[i] + a[i + 1], 1.0);
    for (double x : uniform_stream(1000, 1, false)) {
        EXPECT_GT(x, 0.0);
        EXPECT_LT(x, 1.0);
    }
}

TEST(Export, CsvLayout) {
    DensityOptions opts;
    opts.k_grid = Grid::linear(-40.0, 40.0, 801);
    const auto d = build_density(testing::example_kink(), 1.0, opts);
    std::ostringstream out;
    write_density_csv(out, d);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "k,p_minus,p_plus,cdf");
    std::size_t rows = 0;
    std::vector<std::string> comments;
    while (std::getline(in, line)) {
        if (line.rfind("#", 0) == 0) comments.push_back(line);
        else ++rows;
    }
    EXPECT_EQ(rows, d.k.size());
    ASSERT_EQ(comments.size(), 1u);
    EXPECT_EQ(comments[0].rfind("# atom,0,0.2781846", 0), 0u) << comments[0];
}

}  // namespace
}  // namespace gsvi
