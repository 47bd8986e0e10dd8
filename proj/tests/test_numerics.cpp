#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "support.hpp"

using namespace pathint;
using testing_support::kUnit;

TEST(Grid, ThreePointsOnUnitInterval) {
    const auto g = make_grid_1d(-1, 1, 3);
    ASSERT_EQ(g.size(), 3u);
    EXPECT_EQ(g.point(0)[0], -1.0);
    EXPECT_EQ(g.point(1)[0], 0.0);
    EXPECT_EQ(g.point(2)[0], 1.0);
    EXPECT_EQ(g.spacing(0), 1.0);
}

TEST(Grid, Spacing) { EXPECT_EQ(make_grid_1d(-10, 10, 5).spacing(0), 5.0); }

TEST(Grid, TensorProductRowMajor) {
    const double lo[] = {-1, 0}, hi[] = {1, 2};
    const std::size_t n[] = {3, 3};
    const auto g = make_grid(lo, hi, n);
    EXPECT_EQ(g.size(), 9u);
    EXPECT_EQ(g.spacing(0), 1.0);
    EXPECT_EQ(g.spacing(1), 1.0);
    EXPECT_EQ(g.point(1), (Point{-1, 1}));
    EXPECT_EQ(g.point(3), (Point{0, 0}));
    EXPECT_EQ(g.point(8), (Point{1, 2}));
}

TEST(Grid, LastSampleIsUpperBound) {
    const auto g = make_grid_1d(-16, 16, 2048);
    EXPECT_EQ(g.point(2047)[0], 16.0);
}

TEST(Grid, RejectsBadAxes) {
    EXPECT_THROW(make_grid_1d(1, -1, 10), DomainError);
    EXPECT_THROW(make_grid_1d(0, 1, 1), DomainError);
    EXPECT_THROW(make_grid_1d(0, INFINITY, 4), DomainError);
}

TEST(Params, Validation) {
    EXPECT_THROW((PhysicalParams{0.0, 1.0, 1.0}.validate()), DomainError);
    EXPECT_THROW((PhysicalParams{1.0, -1.0, 1.0}.validate()), DomainError);
    EXPECT_THROW(SlicingConfig::from(kUnit, 0), DomainError);
    EXPECT_THROW(SlicingConfig::from(kUnit.with_time(0.0), 4), DomainError);
    EXPECT_DOUBLE_EQ(SlicingConfig::from(kUnit, 8).epsilon, 0.5 / 8);
}

TEST(Region, Membership) {
    const ExcisedRegion open{{{-5}, {5}}, {}};
    const ExcisedRegion holed{{{-5}, {5}}, {ExcisionBox::symmetric({0}, 1)}};
    EXPECT_TRUE(region_membership(open, {0}));
    EXPECT_FALSE(region_membership(holed, {0.5}));
    EXPECT_TRUE(region_membership(holed, {2}));
    EXPECT_FALSE(region_membership(holed, {1.0}));
    EXPECT_TRUE(region_membership(holed, {5.0}));
    EXPECT_FALSE(region_membership(holed, {5.5}));
}

TEST(Region, AsymmetricHole) {
    const ExcisedRegion r{{{-5}, {5}}, {ExcisionBox{{0}, {0.5}, {2.0}}}};
    EXPECT_TRUE(region_membership(r, {-0.75}));
    EXPECT_FALSE(region_membership(r, {-0.25}));
    EXPECT_FALSE(region_membership(r, {1.5}));
    EXPECT_TRUE(region_membership(r, {2.5}));
}

TEST(Region, RejectsMalformed) {
    EXPECT_THROW(ExcisionBox::symmetric({0}, 0.0).validate(), DomainError);
    EXPECT_THROW((ExcisedRegion{{{1}, {-1}}, {}}.validate()), DomainError);
    const ExcisedRegion wide{{{-20}, {20}}, {}};
    EXPECT_THROW(require_covers(make_grid_1d(-10, 10, 11), wide), DomainError);
}

TEST(Mask, FullBoxHoleAndIdempotence) {
    const auto g = make_grid_1d(-5, 5, 101);
    const auto one = sample_function(g, [](const Point&) { return 1.0; });
    EXPECT_EQ(max_abs_difference(apply_mask(one, full_region(g)), one), 0.0);
    const ExcisedRegion holed{bounding_box(g), {ExcisionBox::symmetric({0}, 1)}};
    const auto once = apply_mask(one, holed);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double x = g.point(i)[0];
        if (std::abs(x) < 1 - 1e-9) {
            EXPECT_EQ(once[i], Complex{}) << x;
        } else if (std::abs(x) > 1 + 1e-9) {
            EXPECT_EQ(once[i], Complex(1.0)) << x;
        }
    }
    EXPECT_EQ(max_abs_difference(apply_mask(once, holed), once), 0.0);
}

TEST(Norm, ConstantOnUnitInterval) {
    const auto g = make_grid_1d(0, 1, 101);
    EXPECT_NEAR(l2_norm(sample_function(g, [](const Point&) { return 1.0; })), 1.0, 1e-12);
}

TEST(Norm, BilinearLinearity) {
    const auto g = make_grid_1d(-4, 4, 201);
    const auto psi = sample_function(g, [](const Point& x) { return std::exp(-x[0] * x[0]) * (1 + x[0]); });
    const auto phi = combine(Complex(0, 1), psi, 0.0, psi);
    const double n = l2_norm(psi);
    const Complex p = bilinear_pair(phi, psi);
    EXPECT_NEAR(p.real(), 0.0, 1e-14);
    EXPECT_NEAR(p.imag(), n * n, 1e-12);
}

TEST(Norm, BilinearHasNoConjugation) {
    const auto g = make_grid_1d(-6, 6, 241);
    const auto psi = StateSpec::gaussian(1.0, {0.0}, {2.0}).sample(g, 1.0);
    EXPECT_LT(std::abs(bilinear_pair(conjugate(psi), psi) - 1.0), 1e-10);
    EXPECT_GT(std::abs(bilinear_pair(psi, psi) - 1.0), 0.5);
}

TEST(Norm, AnalyticGaussian) {
    // (pi sigma^2)^{-1/4} exp(-x^2/(2 sigma^2)) has unit norm.
    const auto g = make_grid_1d(-12, 12, 2049);
    const double c = std::pow(std::numbers::pi, -0.25);
    const auto psi = sample_function(g, [&](const Point& x) { return c * std::exp(-x[0] * x[0] / 2); });
    EXPECT_NEAR(l2_norm(psi), 1.0, 1e-10);
}

TEST(Norm, RelativeErrorAndCombine) {
    const auto g = make_grid_1d(-1, 1, 21);
    const auto a = sample_function(g, [](const Point& x) { return 1.0 + x[0]; });
    const auto b = combine(1.01, a, 0.0, a);
    EXPECT_NEAR(relative_l2_error(b, a), 0.01, 1e-14);
    EXPECT_THROW(relative_l2_error(a, Wavefunction::zeros(make_grid_1d(-1, 1, 22))), DomainError);
}

TEST(Potential, Values) {
    EXPECT_EQ(PotentialSpec::zero()({3.0}), 0.0);
    EXPECT_DOUBLE_EQ(PotentialSpec::harmonic(2.0)({1.5}), 0.5 * 4.0 * 2.25);
    EXPECT_DOUBLE_EQ(PotentialSpec::harmonic(1.0, 3.0)({2.0}), 0.5 * 3.0 * 4.0);
    const auto step = PotentialSpec::step(1.0, 0.0);
    EXPECT_EQ(step({-0.1}), 0.0);
    EXPECT_EQ(step({0.1}), 1.0);
    EXPECT_EQ(PotentialSpec::constant(0.7)({-123.0}), 0.7);
    const auto tab = PotentialSpec::tabulated({0, 1, 2}, {0, 2, 0});
    EXPECT_DOUBLE_EQ(tab({0.5}), 1.0);
    EXPECT_DOUBLE_EQ(tab({1.5}), 1.0);
    EXPECT_DOUBLE_EQ(tab({-4.0}), 0.0);
}

TEST(Potential, SingularPointsRefused) {
    const auto coul = PotentialSpec::inverse_distance(-1.0, {0.0});
    EXPECT_DOUBLE_EQ(coul({2.0}), -0.5);
    EXPECT_TRUE(coul.is_singular_at({0.0}));
    EXPECT_THROW(coul({0.0}), DomainError);
    EXPECT_THROW(PotentialSpec::harmonic(NAN), DomainError);
    EXPECT_THROW(PotentialSpec::tabulated({1, 0}, {0, 0}), DomainError);
}

TEST(States, GaussianSampleNormalized) {
    const auto g = make_grid_1d(-12, 12, 1024);
    const auto psi = StateSpec::gaussian(1.3, {0.4}, {0.8}).sample(g, 1.0);
    EXPECT_NEAR(l2_norm(psi), 1.0, 1e-10);
    const auto c = StateSpec::gaussian(1.3, {0.4}, {0.8}).conjugate().sample(g, 1.0);
    EXPECT_EQ(max_abs_difference(c, conjugate(psi)), 0.0);
}

TEST(States, BoxStateDeclaresEdges) {
    const StateSpec box(BoxState{-1.0, 1.0, 1.0});
    const auto sing = box.singular_points();
    ASSERT_EQ(sing.size(), 2u);
    const auto psi = box.sample(make_grid_1d(-2, 2, 41), 1.0);
    EXPECT_EQ(psi.singular_points().size(), 2u);
    EXPECT_EQ(psi[20], Complex(1.0));
    EXPECT_EQ(psi[0], Complex(0.0));
}
