#include <blmac/io.hpp>
#include <blmac/machine.hpp>

#include <gtest/gtest.h>

#include <sstream>

using namespace blmac;

TEST(RealFilterFile, HeaderAndCoefficients) {
    const auto f = design({FilterKind::BandStop, 55, 0.2, 0.7, Window::kaiser(8.6)});
    std::stringstream ss;
    io::write_real_filter(ss, f);
    std::string header;
    std::getline(std::istringstream(ss.str()), header);
    EXPECT_EQ(header, "bandstop 55 0.20000000000000001 0.69999999999999996 kaiser 8.5999999999999996");
    const auto back = io::read_real_filter(ss);
    EXPECT_EQ(back.spec, f.spec);
    EXPECT_EQ(back.coeffs, f.coeffs);
}

TEST(RealFilterFile, ShortHeaders) {
    std::stringstream lp("lowpass 3 0.5 hamming\n0.25\n0.5\n0.25\n");
    const auto f = io::read_real_filter(lp);
    EXPECT_EQ(f.spec.kind, FilterKind::LowPass);
    EXPECT_EQ(f.coeffs.size(), 3u);
    std::stringstream bad("lowpass 3 0.5 hamming\n0.25\n0.5\n");
    EXPECT_THROW(io::read_real_filter(bad), io::FormatError);
    std::stringstream nobeta("lowpass 1 0.5 kaiser\n1\n");
    EXPECT_THROW(io::read_real_filter(nobeta), io::FormatError);
}

TEST(QuantizedFile, Format) {
    QuantizedFilter q;
    q.coeffs = {-3, 32767, -3};
    q.scale_exp = 17;
    std::stringstream ss;
    io::write_quantized(ss, q);
    EXPECT_EQ(ss.str(), "3 17\n-3\n32767\n-3\n");
    const auto back = io::read_quantized(ss);
    EXPECT_EQ(back.coeffs, q.coeffs);
    EXPECT_EQ(back.scale_exp, 17);
    std::stringstream big("1 0\n32768\n");
    EXPECT_THROW(io::read_quantized(big), io::FormatError);
    std::stringstream shortf("3 0\n1\n2\n");
    EXPECT_THROW(io::read_quantized(shortf), io::FormatError);
}

TEST(Samples, Parse) {
    std::stringstream ok("1\n-2\n 3\n");
    EXPECT_EQ(io::read_samples(ok), (std::vector<std::int64_t>{1, -2, 3}));
    std::stringstream bad("1\nx\n");
    EXPECT_THROW(io::read_samples(bad), io::FormatError);
}

TEST(ImageFile, RawBytes) {
    const std::vector<std::uint8_t> img{0x00, 0x45, 0x80, 0x3F};
    std::stringstream ss;
    io::write_image(ss, img);
    EXPECT_EQ(ss.str().size(), 4u);
    EXPECT_EQ(io::read_image(ss), img);
}
