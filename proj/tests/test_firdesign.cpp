#include <blmac/firdesign.hpp>

#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace blmac;

TEST(Design, LowPassSymmetricWithUnitDcGain) {
    const auto f = design({FilterKind::LowPass, 55, 0.5, 0.0, Window::hamming()});
    ASSERT_EQ(f.coeffs.size(), 55u);
    double sum = 0.0;
    for (std::size_t j = 0; j < 55; ++j) {
        EXPECT_EQ(f.coeffs[j], f.coeffs[54 - j]);
        sum += f.coeffs[j];
    }
    EXPECT_NEAR(sum, 1.0, 1e-12);
}

TEST(Design, HighPassUnitGainAtNyquist) {
    const auto f = design({FilterKind::HighPass, 55, 0.5, 0.0, Window::hamming()});
    double s = 0.0;
    for (std::size_t j = 0; j < f.coeffs.size(); ++j)
        s += f.coeffs[j] * ((j % 2) ? -1.0 : 1.0);
    EXPECT_NEAR(std::fabs(s), 1.0, 1e-9);
}

// Reference coefficients produced by a widely used windowed-sinc designer
// (scipy.signal.firwin) for the same specifications.
TEST(Design, MatchesReferenceDesigner) {
    const auto lp = design({FilterKind::LowPass, 55, 0.5, 0.0, Window::hamming()});
    EXPECT_NEAR(lp.coeffs[0], -0.0009440004052065334, 1e-12);
    EXPECT_NEAR(lp.coeffs[26], 0.3176091770890694, 1e-12);
    EXPECT_NEAR(lp.coeffs[27], 0.5004559245345689, 1e-12);

    const auto bp = design({FilterKind::BandPass, 55, 0.2, 0.6, Window::kaiser(8.6)});
    EXPECT_NEAR(bp.coeffs[0], 2.417390724537008e-05, 1e-12);
    EXPECT_NEAR(bp.coeffs[20], 0.05309411637606534, 1e-12);
    EXPECT_NEAR(bp.coeffs[27], 0.3999951577133478, 1e-12);
}

TEST(Design, SpectralShapePerKind) {
    for (auto window : {Window::hamming(), Window::kaiser()}) {
        const auto lp = design({FilterKind::LowPass, 127, 0.3, 0.0, window});
        EXPECT_NEAR(oracle::magnitude(lp.coeffs, 0.0), 1.0, 1e-12);
        EXPECT_LT(oracle::magnitude(lp.coeffs, 1.0), 0.05);
        EXPECT_LT(oracle::magnitude(lp.coeffs, 0.6), 0.05);

        const auto hp = design({FilterKind::HighPass, 127, 0.3, 0.0, window});
        EXPECT_NEAR(oracle::magnitude(hp.coeffs, 1.0), 1.0, 1e-9);
        EXPECT_LT(oracle::magnitude(hp.coeffs, 0.0), 0.05);

        const auto bp = design({FilterKind::BandPass, 127, 0.3, 0.6, window});
        EXPECT_NEAR(oracle::magnitude(bp.coeffs, 0.45), 1.0, 1e-9);
        EXPECT_LT(oracle::magnitude(bp.coeffs, 0.05), 0.05);
        EXPECT_LT(oracle::magnitude(bp.coeffs, 0.9), 0.05);

        const auto bs = design({FilterKind::BandStop, 127, 0.3, 0.6, window});
        EXPECT_NEAR(oracle::magnitude(bs.coeffs, 0.0), 1.0, 1e-9);
        EXPECT_LT(oracle::magnitude(bs.coeffs, 0.45), 0.05);
        EXPECT_NEAR(oracle::magnitude(bs.coeffs, 1.0), 1.0, 0.05);
    }
}

TEST(Design, RejectsInvalidSpecs) {
    EXPECT_THROW(design({FilterKind::LowPass, 54, 0.5, 0.0, Window::hamming()}), ValidationError);
    EXPECT_THROW(design({FilterKind::LowPass, 55, 0.0, 0.0, Window::hamming()}), ValidationError);
    EXPECT_THROW(design({FilterKind::LowPass, 55, 1.0, 0.0, Window::hamming()}), ValidationError);
    EXPECT_THROW(design({FilterKind::BandPass, 55, 0.5, 0.4, Window::hamming()}), ValidationError);
    EXPECT_THROW(design({FilterKind::BandStop, 55, 0.5, 1.0, Window::hamming()}), ValidationError);
    EXPECT_THROW(design({FilterKind::LowPass, 55, 0.5, 0.0, Window::kaiser(0.0)}), ValidationError);
}

TEST(Window, HammingAndKaiserShape) {
    const auto h = window_coefficients(5, Window::hamming());
    EXPECT_NEAR(h[0], 0.08, 1e-15);
    EXPECT_NEAR(h[2], 1.0, 1e-15);
    EXPECT_NEAR(h[1], 0.54, 1e-15);
    const auto k = window_coefficients(55, Window::kaiser(8.6));
    EXPECT_NEAR(k[27], 1.0, 1e-15);
    EXPECT_NEAR(k[0], 1.0 / bessel_i0(8.6), 1e-15);
    for (std::size_t j = 0; j < 55; ++j)
        EXPECT_EQ(k[j], k[54 - j]);
}

TEST(Window, BesselI0) {
    EXPECT_DOUBLE_EQ(bessel_i0(0.0), 1.0);
    // I0(1) and I0(5) to double precision
    EXPECT_NEAR(bessel_i0(1.0), 1.2660658777520082, 1e-15);
    EXPECT_NEAR(bessel_i0(5.0) / 27.239871823604442, 1.0, 1e-14);
}

TEST(Sweep, Counts) {
    EXPECT_EQ(sweep(100, 55, Window::hamming()).size(), 9900u);
    EXPECT_EQ(sweep(10, 55, Window::hamming()).size(), 90u);
    const auto three = sweep(3, 127, Window::hamming());
    ASSERT_EQ(three.size(), 6u);
    EXPECT_EQ(three[0].kind, FilterKind::LowPass);
    EXPECT_DOUBLE_EQ(three[0].f1, 1.0 / 3.0);
    EXPECT_DOUBLE_EQ(three[1].f1, 2.0 / 3.0);
    EXPECT_EQ(three[2].kind, FilterKind::HighPass);
    EXPECT_EQ(three[4].kind, FilterKind::BandPass);
    EXPECT_DOUBLE_EQ(three[4].f2, 2.0 / 3.0);
    EXPECT_EQ(three[5].kind, FilterKind::BandStop);

    for (int n : {3, 4, 10, 57, 100})
        EXPECT_EQ(2 * (n - 1) + 2 * (n - 1) * (n - 2) / 2, n * (n - 1));

    const auto taps = odd_taps(55, 255);
    EXPECT_EQ(taps.size(), 101u);
    EXPECT_EQ(taps.front(), 55);
    EXPECT_EQ(taps.back(), 255);
    EXPECT_EQ(sweep(100, taps, Window::kaiser()).size(), 101u * 9900u);
    EXPECT_THROW(sweep(2, 55, Window::hamming()), ValidationError);
}

TEST(Sweep, EverySpecValidAndBandsOrdered) {
    for (const auto& s : sweep(20, 55, Window::hamming())) {
        EXPECT_NO_THROW(validate(s));
        if (is_band(s.kind))
            EXPECT_LT(s.f1, s.f2);
    }
}

TEST(Names, RoundTrip) {
    for (auto k : {FilterKind::LowPass, FilterKind::HighPass, FilterKind::BandPass, FilterKind::BandStop})
        EXPECT_EQ(parse_filter_kind(to_string(k)), k);
    EXPECT_EQ(parse_window_type("kaiser"), WindowType::Kaiser);
    EXPECT_THROW(parse_filter_kind("notch"), ValidationError);
    EXPECT_THROW(parse_window_type("blackman"), ValidationError);
}
