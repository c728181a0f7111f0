#pragma once

// Text and binary interchange files used by the command line tool.
//
//   real filter:      `kind taps f1 [f2] window [beta]` then one coefficient
//                     per line, printed with 17 significant digits
//   quantized filter: `taps scale_exp` then taps signed integers, one per line
//   samples:          signed decimal integers, one per line
//   weight image:     raw packed code bytes (see rlc_codec.hpp)

#include <blmac/errors.hpp>
#include <blmac/firdesign.hpp>
#include <blmac/quantizer.hpp>

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <istream>
#include <iterator>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace blmac::io {

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline void write_real_filter(std::ostream& out, const RealFilter& f) {
    const auto& s = f.spec;
    out << to_string(s.kind) << ' ' << s.taps << ' ' << std::setprecision(17) << s.f1;
    if (is_band(s.kind))
        out << ' ' << s.f2;
    out << ' ' << to_string(s.window.type);
    if (s.window.type == WindowType::Kaiser)
        out << ' ' << s.window.beta;
    out << '\n';
    for (double c : f.coeffs)
        out << c << '\n';
}

inline RealFilter read_real_filter(std::istream& in) {
    std::string header;
    if (!std::getline(in, header))
        throw FormatError("real filter: missing header");
    std::istringstream hs(header);
    std::string kind, window;
    RealFilter f;
    if (!(hs >> kind >> f.spec.taps >> f.spec.f1))
        throw FormatError("real filter: bad header '" + header + "'");
    f.spec.kind = parse_filter_kind(kind);
    if (is_band(f.spec.kind) && !(hs >> f.spec.f2))
        throw FormatError("real filter: band kind needs f2");
    if (!(hs >> window))
        throw FormatError("real filter: missing window");
    f.spec.window.type = parse_window_type(window);
    if (f.spec.window.type == WindowType::Kaiser) {
        if (!(hs >> f.spec.window.beta))
            throw FormatError("real filter: kaiser window needs beta");
    } else {
        f.spec.window.beta = 0.0;
    }
    double c;
    while (in >> c)
        f.coeffs.push_back(c);
    if (!in.eof())
        throw FormatError("real filter: bad coefficient");
    if (f.coeffs.size() != static_cast<std::size_t>(f.spec.taps))
        throw FormatError("real filter: expected " + std::to_string(f.spec.taps) + " coefficients, got " +
                          std::to_string(f.coeffs.size()));
    return f;
}

inline void write_quantized(std::ostream& out, const QuantizedFilter& q) {
    out << q.taps() << ' ' << q.scale_exp << '\n';
    for (auto c : q.coeffs)
        out << c << '\n';
}

inline QuantizedFilter read_quantized(std::istream& in) {
    QuantizedFilter q;
    int taps = 0;
    if (!(in >> taps >> q.scale_exp))
        throw FormatError("quantized filter: bad header");
    if (taps < 1)
        throw FormatError("quantized filter: taps must be positive");
    q.coeffs.reserve(static_cast<std::size_t>(taps));
    for (int j = 0; j < taps; ++j) {
        std::int64_t v;
        if (!(in >> v))
            throw FormatError("quantized filter: expected " + std::to_string(taps) + " coefficients");
        if (v < -kCoeffLimit || v > kCoeffLimit)
            throw FormatError("quantized filter: coefficient " + std::to_string(v) + " out of range");
        q.coeffs.push_back(static_cast<std::int32_t>(v));
    }
    q.spec.taps = taps;
    return q;
}

inline std::vector<std::int64_t> read_samples(std::istream& in) {
    std::vector<std::int64_t> v;
    std::int64_t x;
    while (in >> x)
        v.push_back(x);
    if (!in.eof())
        throw FormatError("samples: expected one signed integer per line");
    return v;
}

inline void write_image(std::ostream& out, const std::vector<std::uint8_t>& image) {
    out.write(reinterpret_cast<const char*>(image.data()), static_cast<std::streamsize>(image.size()));
}

inline std::vector<std::uint8_t> read_image(std::istream& in) {
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline std::ifstream open_in(const std::string& path, bool binary = false) {
    std::ifstream f(path, binary ? std::ios::binary : std::ios::in);
    if (!f)
        throw FormatError("cannot open '" + path + "'");
    return f;
}

inline std::ofstream open_out(const std::string& path, bool binary = false) {
    std::ofstream f(path, binary ? std::ios::binary | std::ios::trunc : std::ios::trunc);
    if (!f)
        throw FormatError("cannot create '" + path + "'");
    return f;
}

} // namespace blmac::io
