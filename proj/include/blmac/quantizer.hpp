#pragma once

// Power-of-two scaling and convergent rounding of real coefficients to
// signed 16-bit words.

#include <blmac/errors.hpp>
#include <blmac/firdesign.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <span>
#include <vector>

namespace blmac {

inline constexpr std::int32_t kCoeffLimit = 32767;

/// Round to nearest, ties to the even neighbour.
inline std::int64_t convergent_round(double x) {
    const double fl = std::floor(x);
    const double diff = x - fl;
    auto r = static_cast<std::int64_t>(fl);
    if (diff > 0.5 || (diff == 0.5 && (r & 1) != 0))
        ++r;
    return r;
}

struct QuantizedFilter {
    std::vector<std::int32_t> coeffs;
    int scale_exp = 0; // coeffs ~= real * 2^scale_exp
    FilterSpec spec;

    int taps() const { return static_cast<int>(coeffs.size()); }

    /// First taps/2 + 1 coefficients: the ones a symmetric evaluation uses.
    std::span<const std::int32_t> half() const {
        return std::span<const std::int32_t>(coeffs).first(coeffs.size() / 2 + 1);
    }
};

namespace detail {

inline bool fits_at(std::span<const double> coeffs, int e) {
    for (double c : coeffs)
        if (std::llabs(convergent_round(std::ldexp(c, e))) > kCoeffLimit)
            return false;
    return true;
}

} // namespace detail

/// Largest exponent e whose rounded scaled coefficients all lie in
/// [-32767, 32767]. The fit test is applied after rounding.
inline int max_scale_exponent(std::span<const double> coeffs) {
    double peak = 0.0;
    for (double c : coeffs)
        peak = std::max(peak, std::fabs(c));
    if (peak == 0.0 || !std::isfinite(peak))
        throw ValidationError("quantize: coefficients must be finite and not all zero");
    // peak * 2^(15 - ilogb(peak)) >= 2^15, so no larger exponent can fit
    int e = 15 - std::ilogb(peak);
    while (!detail::fits_at(coeffs, e))
        --e;
    return e;
}

inline QuantizedFilter quantize(std::span<const double> coeffs, const FilterSpec& spec = {}) {
    QuantizedFilter q;
    q.spec = spec;
    q.scale_exp = max_scale_exponent(coeffs);
    q.coeffs.reserve(coeffs.size());
    for (double c : coeffs)
        q.coeffs.push_back(static_cast<std::int32_t>(convergent_round(std::ldexp(c, q.scale_exp))));
    return q;
}

inline QuantizedFilter quantize(const RealFilter& filter) {
    return quantize(filter.coeffs, filter.spec);
}

} // namespace blmac
