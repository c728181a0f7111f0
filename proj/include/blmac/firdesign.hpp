#pragma once

// Windowed-sinc design of type I (odd length, symmetric) FIR filters and the
// cutoff/tap-count sweep that produces the benchmark population.

#include <blmac/errors.hpp>

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace blmac {

enum class FilterKind { LowPass, HighPass, BandPass, BandStop };
enum class WindowType { Hamming, Kaiser };

/// Kaiser beta used when none is given; chosen by `calibrate-kaiser`.
inline constexpr double kDefaultKaiserBeta = 8.6;

struct Window {
    WindowType type = WindowType::Hamming;
    double beta = kDefaultKaiserBeta; // Kaiser only

    static Window hamming() { return {WindowType::Hamming, 0.0}; }
    static Window kaiser(double beta = kDefaultKaiserBeta) { return {WindowType::Kaiser, beta}; }

    bool operator==(const Window&) const = default;
};

/// Cutoffs are in units of the Nyquist frequency: 0 < f < 1.
struct FilterSpec {
    FilterKind kind = FilterKind::LowPass;
    int taps = 55;
    double f1 = 0.5;
    double f2 = 0.0; // band kinds only
    Window window = Window::hamming();

    bool operator==(const FilterSpec&) const = default;
};

inline bool is_band(FilterKind k) { return k == FilterKind::BandPass || k == FilterKind::BandStop; }

inline std::string_view to_string(FilterKind k) {
    switch (k) {
    case FilterKind::LowPass: return "lowpass";
    case FilterKind::HighPass: return "highpass";
    case FilterKind::BandPass: return "bandpass";
    case FilterKind::BandStop: return "bandstop";
    }
    return "?";
}

inline std::string_view to_string(WindowType w) {
    return w == WindowType::Hamming ? "hamming" : "kaiser";
}

inline FilterKind parse_filter_kind(std::string_view s) {
    if (s == "lowpass") return FilterKind::LowPass;
    if (s == "highpass") return FilterKind::HighPass;
    if (s == "bandpass") return FilterKind::BandPass;
    if (s == "bandstop") return FilterKind::BandStop;
    throw ValidationError("unknown filter kind '" + std::string(s) + "'");
}

inline WindowType parse_window_type(std::string_view s) {
    if (s == "hamming") return WindowType::Hamming;
    if (s == "kaiser") return WindowType::Kaiser;
    throw ValidationError("unknown window '" + std::string(s) + "'");
}

inline void validate(const FilterSpec& spec) {
    if (spec.taps < 1 || spec.taps % 2 == 0)
        throw ValidationError("type I filter needs an odd, positive tap count, got " +
                              std::to_string(spec.taps));
    if (!(spec.f1 > 0.0 && spec.f1 < 1.0))
        throw ValidationError("cutoff f1 must lie in (0, 1)");
    if (is_band(spec.kind) && !(spec.f2 > spec.f1 && spec.f2 < 1.0))
        throw ValidationError("band filter needs f1 < f2 < 1");
    if (spec.window.type == WindowType::Kaiser && !(spec.window.beta > 0.0))
        throw ValidationError("Kaiser beta must be positive");
}

struct RealFilter {
    std::vector<double> coeffs;
    FilterSpec spec;
};

/// Modified Bessel function of the first kind, order 0, by its power series.
inline double bessel_i0(double x) {
    const double q = x * x / 4.0;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 1000; ++k) {
        term *= q / (static_cast<double>(k) * static_cast<double>(k));
        sum += term;
        if (term < 1e-16 * sum)
            break;
    }
    return sum;
}

/// Symmetric window of length `taps`.
inline std::vector<double> window_coefficients(int taps, const Window& window) {
    if (taps < 1)
        throw ValidationError("window length must be positive");
    const auto n = static_cast<std::size_t>(taps);
    std::vector<double> w(n, 1.0);
    if (taps == 1)
        return w;
    const double span = static_cast<double>(taps - 1);
    const std::size_t half = n / 2;
    if (window.type == WindowType::Hamming) {
        for (std::size_t j = 0; j <= half; ++j)
            w[j] = 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * static_cast<double>(j) / span);
    } else {
        const double norm = bessel_i0(window.beta);
        for (std::size_t j = 0; j <= half; ++j) {
            const double r = 2.0 * static_cast<double>(j) / span - 1.0;
            w[j] = bessel_i0(window.beta * std::sqrt(1.0 - r * r)) / norm;
        }
    }
    for (std::size_t j = 0; j < half; ++j)
        w[n - 1 - j] = w[j];
    return w;
}

namespace detail {

inline double sinc(double x) {
    if (x == 0.0)
        return 1.0;
    const double px = std::numbers::pi * x;
    return std::sin(px) / px;
}

// Ideal passbands [lo, hi] in Nyquist units, plus the frequency at which the
// windowed response is normalized to unit magnitude.
struct Bands {
    std::pair<double, double> band[2];
    int count = 1;
    double scale_freq = 0.0;
};

inline Bands bands_of(const FilterSpec& spec) {
    Bands b;
    switch (spec.kind) {
    case FilterKind::LowPass:
        b.band[0] = {0.0, spec.f1};
        b.scale_freq = 0.0;
        break;
    case FilterKind::HighPass:
        b.band[0] = {spec.f1, 1.0};
        b.scale_freq = 1.0;
        break;
    case FilterKind::BandPass:
        b.band[0] = {spec.f1, spec.f2};
        b.scale_freq = 0.5 * (spec.f1 + spec.f2);
        break;
    case FilterKind::BandStop:
        b.band[0] = {0.0, spec.f1};
        b.band[1] = {spec.f2, 1.0};
        b.count = 2;
        b.scale_freq = 0.0;
        break;
    }
    return b;
}

} // namespace detail

/// Design with a precomputed window (must have spec.taps entries). Only the
/// first half is computed; the second half is an exact mirror.
inline RealFilter design(const FilterSpec& spec, std::span<const double> window) {
    validate(spec);
    if (window.size() != static_cast<std::size_t>(spec.taps))
        throw ValidationError("window length does not match tap count");

    const auto n = static_cast<std::size_t>(spec.taps);
    const std::size_t half = n / 2;
    const auto bands = detail::bands_of(spec);

    RealFilter out{std::vector<double>(n, 0.0), spec};
    auto& h = out.coeffs;
    double gain = 0.0;
    for (std::size_t j = 0; j <= half; ++j) {
        const double m = static_cast<double>(j) - static_cast<double>(half);
        double v = 0.0;
        for (int k = 0; k < bands.count; ++k) {
            const auto [lo, hi] = bands.band[k];
            v += hi * detail::sinc(hi * m);
            if (lo > 0.0)
                v -= lo * detail::sinc(lo * m);
        }
        v *= window[j];
        h[j] = v;
        const double c = std::cos(std::numbers::pi * m * bands.scale_freq);
        gain += (j == half ? 1.0 : 2.0) * v * c;
    }
    for (std::size_t j = 0; j <= half; ++j)
        h[j] /= gain;
    for (std::size_t j = 0; j < half; ++j)
        h[n - 1 - j] = h[j];
    return out;
}

inline RealFilter design(const FilterSpec& spec) {
    validate(spec);
    const auto w = window_coefficients(spec.taps, spec.window);
    return design(spec, w);
}

/// Every spec on a grid of `grid_n` divisions for each tap count: lowpass,
/// highpass, then bandpass and bandstop over all pairs f_i < f_j.
inline std::vector<FilterSpec> sweep(int grid_n, std::span<const int> taps_list, const Window& window) {
    if (grid_n < 3)
        throw ValidationError("sweep grid needs at least 3 divisions");
    std::vector<FilterSpec> specs;
    const auto per_taps = static_cast<std::size_t>(grid_n) * static_cast<std::size_t>(grid_n - 1);
    specs.reserve(per_taps * taps_list.size());
    const double g = static_cast<double>(grid_n);
    for (int taps : taps_list) {
        for (int k = 1; k < grid_n; ++k)
            specs.push_back({FilterKind::LowPass, taps, k / g, 0.0, window});
        for (int k = 1; k < grid_n; ++k)
            specs.push_back({FilterKind::HighPass, taps, k / g, 0.0, window});
        for (auto kind : {FilterKind::BandPass, FilterKind::BandStop})
            for (int a = 1; a < grid_n; ++a)
                for (int b = a + 1; b < grid_n; ++b)
                    specs.push_back({kind, taps, a / g, b / g, window});
    }
    return specs;
}

inline std::vector<FilterSpec> sweep(int grid_n, int taps, const Window& window) {
    const int list[] = {taps};
    return sweep(grid_n, list, window);
}

/// Odd tap counts in [lo, hi].
inline std::vector<int> odd_taps(int lo, int hi) {
    std::vector<int> taps;
    for (int t = lo | 1; t <= hi; t += 2)
        taps.push_back(t);
    return taps;
}

} // namespace blmac
