#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "ginient/empirical.hpp"
#include "ginient/error.hpp"

using namespace ginient;

namespace {

Sample S(std::vector<double> v) { return make_sample(v); }

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "expected an Error";
    return ErrorCode::bad_parameter;
}

}  // namespace

TEST(MakeSample, SortsAndKeepsTies) {
    const auto s = S({3, 1, 2});
    ASSERT_EQ(s.size(), 3u);
    EXPECT_EQ(s[0], 1.0);
    EXPECT_EQ(s[1], 2.0);
    EXPECT_EQ(s[2], 3.0);
    EXPECT_DOUBLE_EQ(s.mean(), 2.0);

    const auto z = S({0, 0});
    EXPECT_EQ(z.min(), 0.0);
    EXPECT_EQ(z.max(), 0.0);
}

TEST(MakeSample, RejectsBadInput) {
    EXPECT_EQ(code_of([] { S({1, -1}); }), ErrorCode::negative_value);
    EXPECT_EQ(code_of([] { S({1}); }), ErrorCode::too_few);
    EXPECT_EQ(code_of([] { S({}); }), ErrorCode::too_few);
    EXPECT_EQ(code_of([] { S({1, std::nan("")}); }), ErrorCode::non_finite);
    EXPECT_EQ(code_of([] { S({1, std::numeric_limits<double>::infinity()}); }), ErrorCode::non_finite);
}

TEST(PlottingPositions, Conventions) {
    EXPECT_DOUBLE_EQ(plotting_position(EcdfConvention::hazen, 2, 3), 0.5);
    EXPECT_DOUBLE_EQ(plotting_position(EcdfConvention::naive, 2, 3), 2.0 / 3.0);
    EXPECT_DOUBLE_EQ(plotting_position(EcdfConvention::mean_rank, 2, 3), 0.5);

    for (auto conv : {EcdfConvention::hazen, EcdfConvention::naive, EcdfConvention::mean_rank}) {
        const auto u = plotting_positions(conv, 17);
        EXPECT_GT(u.front(), 0.0);
        for (std::size_t i = 1; i < u.size(); ++i) EXPECT_LT(u[i - 1], u[i]);
        if (conv == EcdfConvention::naive) {
            EXPECT_DOUBLE_EQ(u.back(), 1.0);
        } else {
            EXPECT_LT(u.back(), 1.0);
        }
    }
}

TEST(PlottingPositions, ParseRoundTrip) {
    for (auto conv : {EcdfConvention::hazen, EcdfConvention::naive, EcdfConvention::mean_rank}) {
        EXPECT_EQ(parse_convention(to_string(conv)), conv);
    }
    EXPECT_THROW(parse_convention("weibull"), Error);
}

TEST(Ecdf, StepValues) {
    const auto s = S({1, 2, 3});
    EXPECT_DOUBLE_EQ(ecdf_at(s, EcdfConvention::naive, 2.0), 2.0 / 3.0);
    EXPECT_DOUBLE_EQ(ecdf_at(s, EcdfConvention::hazen, 2.0), 0.5);
    EXPECT_DOUBLE_EQ(ecdf_at(s, EcdfConvention::naive, 2.5), 2.0 / 3.0);
    for (auto conv : {EcdfConvention::hazen, EcdfConvention::naive, EcdfConvention::mean_rank}) {
        EXPECT_EQ(ecdf_at(s, conv, 0.5), 0.0);
    }
    // a tie block takes the position of its last rank
    EXPECT_DOUBLE_EQ(ecdf_at(S({1, 2, 2, 3}), EcdfConvention::naive, 2.0), 0.75);
}

TEST(ConditionalMeans, HandValues) {
    const auto s = S({1, 2, 3});
    EXPECT_DOUBLE_EQ(conditional_mean_above(s, 1.5), 1.0);
    EXPECT_DOUBLE_EQ(conditional_mean_above(s, 0.0), 2.0);
    EXPECT_DOUBLE_EQ(conditional_mean_below(s, 3.0), 1.0);
    // strict inequality above, inclusive below
    EXPECT_DOUBLE_EQ(conditional_mean_above(s, 2.0), 1.0);
    EXPECT_DOUBLE_EQ(conditional_mean_below(s, 1.0), 0.0);
}

TEST(ConditionalMeans, EmptyTail) {
    const auto s = S({1, 2, 3});
    EXPECT_EQ(code_of([&] { conditional_mean_above(s, 3.0); }), ErrorCode::empty_tail);
    EXPECT_EQ(code_of([&] { conditional_mean_below(s, 0.5); }), ErrorCode::empty_tail);
}

TEST(StepEcdfIntegral, MatchesHandIntegration) {
    // integral of (1 - F_n) over [0, max] is the sample mean
    const auto s = S({0.5, 2, 4});
    EXPECT_NEAR(step_ecdf_integral(s, 0, [](double F) { return 1.0 - F; }), s.mean(), 1e-15);
    // with x weight: integral of x (1 - F_n) dx = E(X^2) / 2
    const double m2 = (0.25 + 4 + 16) / 3.0;
    EXPECT_NEAR(step_ecdf_integral(s, 1, [](double F) { return 1.0 - F; }), m2 / 2.0, 1e-14);
}

TEST(Digest, OrderFreeAndSensitive) {
    EXPECT_EQ(digest(S({3, 1, 2})), digest(S({1, 2, 3})));
    EXPECT_NE(digest(S({1, 2, 3})), digest(S({1, 2, 3.0000001})));
}
