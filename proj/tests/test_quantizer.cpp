#include <blmac/firdesign.hpp>
#include <blmac/quantizer.hpp>

#include <gtest/gtest.h>

#include <cstdlib>
#include <random>

using namespace blmac;

TEST(ConvergentRound, TiesToEven) {
    EXPECT_EQ(convergent_round(12.5), 12);
    EXPECT_EQ(convergent_round(13.5), 14);
    EXPECT_EQ(convergent_round(-2.5), -2);
    EXPECT_EQ(convergent_round(-3.5), -4);
    EXPECT_EQ(convergent_round(0.5), 0);
    EXPECT_EQ(convergent_round(-0.5), 0);
    EXPECT_EQ(convergent_round(2.4999999), 2);
    EXPECT_EQ(convergent_round(2.5000001), 3);
    EXPECT_EQ(convergent_round(-7.2), -7);
    EXPECT_EQ(convergent_round(-7.7), -8);
}

TEST(Quantize, HandCheckedExponents) {
    const double a[] = {0.5, -0.25, 0.125};
    auto q = quantize(a);
    EXPECT_EQ(q.scale_exp, 15);
    EXPECT_EQ(q.coeffs, (std::vector<std::int32_t>{16384, -8192, 4096}));

    const double b[] = {0.9, 0.1};
    q = quantize(b);
    EXPECT_EQ(q.scale_exp, 15);
    EXPECT_EQ(q.coeffs, (std::vector<std::int32_t>{29491, 3277}));

    const double c[] = {0.4, 0.2};
    q = quantize(c);
    EXPECT_EQ(q.scale_exp, 16);
    EXPECT_EQ(q.coeffs, (std::vector<std::int32_t>{26214, 13107}));
}

TEST(Quantize, ExponentAboveSixteenForSmallPeaks) {
    const double small[] = {0.01, -0.003};
    const auto q = quantize(small);
    // 0.01 * 2^21 = 20971.52 fits, 2^22 would not
    EXPECT_EQ(q.scale_exp, 21);
    EXPECT_EQ(q.coeffs, (std::vector<std::int32_t>{20972, -6291}));
}

TEST(Quantize, RoundingPushesOverLimit) {
    // 32767.5 / 2^15 rounds to 32768 at e = 15, so e = 14 is the largest fit
    const double edge[] = {32767.5 / 32768.0};
    const auto q = quantize(edge);
    EXPECT_EQ(q.scale_exp, 14);
    EXPECT_EQ(q.coeffs[0], 16384);
}

TEST(Quantize, DegenerateInput) {
    const double zeros[] = {0.0, 0.0, 0.0};
    EXPECT_THROW(quantize(zeros), ValidationError);
    EXPECT_THROW(quantize(std::span<const double>{}), ValidationError);
}

TEST(Quantize, InvariantsOnDesignedFilters) {
    for (const auto& spec : sweep(12, 127, Window::hamming())) {
        const auto real = design(spec);
        const auto q = quantize(real);
        int peak = 0;
        for (std::size_t j = 0; j < q.coeffs.size(); ++j) {
            const int c = q.coeffs[j];
            ASSERT_LE(std::abs(c), kCoeffLimit);
            ASSERT_EQ(c, q.coeffs[q.coeffs.size() - 1 - j]);
            peak = std::max(peak, std::abs(c));
        }
        ASSERT_GE(peak, 16384);
        bool overflow = false;
        for (double c : real.coeffs)
            overflow |= std::llabs(convergent_round(std::ldexp(c, q.scale_exp + 1))) > kCoeffLimit;
        ASSERT_TRUE(overflow);
    }
}

TEST(Quantize, PowerOfTwoScalingOnlyShiftsExponent) {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> c(9);
        for (auto& v : c)
            v = dist(rng);
        const auto base = quantize(c);
        for (int k : {-7, -1, 3, 10}) {
            std::vector<double> scaled(c);
            for (auto& v : scaled)
                v = std::ldexp(v, k);
            const auto q = quantize(scaled);
            ASSERT_EQ(q.coeffs, base.coeffs);
            ASSERT_EQ(q.scale_exp, base.scale_exp - k);
        }
    }
}

TEST(Quantize, HalfView) {
    const double c[] = {0.1, 0.2, 0.5, 0.2, 0.1};
    const auto q = quantize(c);
    ASSERT_EQ(q.half().size(), 3u);
    EXPECT_EQ(q.half()[2], q.coeffs[2]);
}
