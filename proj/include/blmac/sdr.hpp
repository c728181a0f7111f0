#pragma once

// Minimal-pulse signed-digit (ternary) recoding of integer weights.

#include <blmac/errors.hpp>

#include <cstdint>
#include <cstdlib>
#include <string>
#include <vector>

namespace blmac {

inline constexpr std::int64_t kRecodeLimit = std::int64_t{1} << 24;

/// Signed-digit representation of one integer: digit i carries weight 2^i and
/// is one of -1, 0, +1. Produced by recode() in non-adjacent form.
struct TritVector {
    std::vector<std::int8_t> digits;

    std::int64_t value() const {
        std::int64_t v = 0;
        for (std::size_t i = digits.size(); i-- > 0;)
            v = 2 * v + digits[i];
        return v;
    }

    int pulses() const {
        int n = 0;
        for (auto d : digits)
            n += d != 0;
        return n;
    }

    bool operator==(const TritVector&) const = default;
};

namespace detail {

inline void check_recode_range(std::int64_t value) {
    if (value <= -kRecodeLimit || value >= kRecodeLimit)
        throw RangeError("recode: |" + std::to_string(value) + "| must be < 2^24");
}

} // namespace detail

/// Non-adjacent form of `value`. Trailing zero digits are never stored, so
/// recode(0) is empty and the top digit of a nonzero result is nonzero.
inline TritVector recode(std::int64_t value) {
    detail::check_recode_range(value);
    TritVector t;
    std::int64_t v = value;
    while (v != 0) {
        std::int8_t d = 0;
        if (v & 1) {
            // v mod 4 in {1, 3} -> digit 2 - (v mod 4) in {+1, -1}
            d = static_cast<std::int8_t>(2 - (v & 3));
            v -= d;
        }
        t.digits.push_back(d);
        v /= 2;
    }
    return t;
}

inline int pulse_count(std::int64_t value) {
    detail::check_recode_range(value);
    std::uint64_t v = static_cast<std::uint64_t>(std::llabs(value));
    int n = 0;
    while (v != 0) {
        if (v & 1) {
            ++n;
            v = (v & 2) ? v + 1 : v - 1;
        }
        v >>= 1;
    }
    return n;
}

/// Pulse counts for every magnitude a signed n_bits weight can take, indexed
/// by absolute value: 2^(n_bits-1) entries.
inline std::vector<std::uint8_t> build_ntrits_table(int n_bits) {
    if (n_bits < 1 || n_bits > 17)
        throw RangeError("build_ntrits_table: n_bits must be in [1, 17]");
    const std::size_t size = std::size_t{1} << (n_bits - 1);
    std::vector<std::uint8_t> table(size);
    for (std::size_t k = 0; k < size; ++k)
        table[k] = static_cast<std::uint8_t>(pulse_count(static_cast<std::int64_t>(k)));
    return table;
}

struct PulseStats {
    int n_bits = 0;
    double avg = 0.0;
    int max = 0;
};

/// Mean and maximum pulse count over every integer in [0, 2^n_bits - 1].
inline PulseStats pulse_stats(int n_bits) {
    if (n_bits < 1 || n_bits > 24)
        throw RangeError("pulse_stats: n_bits must be in [1, 24]");
    const std::int64_t count = std::int64_t{1} << n_bits;
    std::int64_t total = 0;
    int max = 0;
    for (std::int64_t v = 0; v < count; ++v) {
        const int p = pulse_count(v);
        total += p;
        if (p > max)
            max = p;
    }
    return {n_bits, static_cast<double>(total) / static_cast<double>(count), max};
}

/// Plain two's-complement bit rows of a weight. The top row (index n_bits-1)
/// is the sign layer and is weighted -2^(n_bits-1).
struct TwosComplementLayers {
    int n_bits = 0;
    std::vector<std::uint8_t> bits; // bits[i] is the digit of row i

    int sign_layer() const { return n_bits - 1; }

    std::int64_t evaluate() const {
        std::int64_t v = 0;
        for (int i = n_bits - 1; i >= 0; --i) {
            const std::int64_t d = bits[static_cast<std::size_t>(i)];
            v = 2 * v + (i == sign_layer() ? -d : d);
        }
        return v;
    }

    int ones() const {
        int n = 0;
        for (auto b : bits)
            n += b;
        return n;
    }
};

inline TwosComplementLayers recode_twos_complement(std::int64_t value, int n_bits) {
    if (n_bits < 1 || n_bits > 62)
        throw RangeError("recode_twos_complement: n_bits must be in [1, 62]");
    const std::int64_t lo = -(std::int64_t{1} << (n_bits - 1));
    const std::int64_t hi = (std::int64_t{1} << (n_bits - 1)) - 1;
    if (value < lo || value > hi)
        throw RangeError("recode_twos_complement: " + std::to_string(value) +
                         " does not fit in " + std::to_string(n_bits) + " bits");
    TwosComplementLayers t;
    t.n_bits = n_bits;
    t.bits.resize(static_cast<std::size_t>(n_bits));
    const auto u = static_cast<std::uint64_t>(value);
    for (int i = 0; i < n_bits; ++i)
        t.bits[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>((u >> i) & 1U);
    return t;
}

} // namespace blmac
