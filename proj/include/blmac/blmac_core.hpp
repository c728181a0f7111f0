#pragma once

// Bit-exact reference models of the bit layer multiply accumulator.
//
// A weight vector is viewed as a matrix of signed digits d[i][j] (bit layer i,
// weight j). The dot product is evaluated one layer at a time with nothing but
// add/subtract and shift:
//
//   left shift:  acc = 2 * acc + sum_j d[i][j] x[j]   for i = top .. 0
//   right shift: acc = acc + sum_j d[i][j] x[j]; emit acc & 1; acc >>= 1
//                                                     for i = 0 .. top
//
// The right-shift variant retires one result bit per layer, so its register
// only holds the part of the result that is still undetermined.

#include <blmac/errors.hpp>
#include <blmac/sdr.hpp>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace blmac {

/// Number of bit layers used for 16-bit quantized coefficients.
inline constexpr int kWeightLayers = 16;

struct Pulse {
    std::size_t index = 0;
    std::int8_t sign = 1; // +1 adds x[index], -1 subtracts it

    bool operator==(const Pulse&) const = default;
};

/// Sparse bit layers of a weight vector; layer i holds the nonzero digits of
/// weight 2^i in ascending index order.
class LayerMatrix {
public:
    LayerMatrix() = default;
    explicit LayerMatrix(int n_layers) : layers_(static_cast<std::size_t>(n_layers)) {}

    /// Ternary (non-adjacent form) layers. Weights needing more than
    /// n_layers digits are rejected.
    template <typename Int>
    static LayerMatrix from_weights(std::span<const Int> weights, int n_layers = kWeightLayers) {
        LayerMatrix m(n_layers);
        for (std::size_t j = 0; j < weights.size(); ++j) {
            const auto t = recode(static_cast<std::int64_t>(weights[j]));
            if (t.digits.size() > static_cast<std::size_t>(n_layers))
                throw RangeError("weight " + std::to_string(weights[j]) + " needs more than " +
                                 std::to_string(n_layers) + " layers");
            for (std::size_t i = 0; i < t.digits.size(); ++i)
                if (t.digits[i] != 0)
                    m.layers_[i].push_back({j, t.digits[i]});
        }
        return m;
    }

    /// Plain binary layers of non-negative weights.
    template <typename Int>
    static LayerMatrix from_binary(std::span<const Int> weights, int n_layers) {
        LayerMatrix m(n_layers);
        for (std::size_t j = 0; j < weights.size(); ++j) {
            const auto w = static_cast<std::int64_t>(weights[j]);
            if (w < 0 || (n_layers < 63 && w >= (std::int64_t{1} << n_layers)))
                throw RangeError("binary layers need 0 <= w < 2^n_layers");
            for (int i = 0; i < n_layers; ++i)
                if ((w >> i) & 1)
                    m.layers_[static_cast<std::size_t>(i)].push_back({j, 1});
        }
        return m;
    }

    /// Two's-complement layers; pulses in the top (sign) layer subtract.
    template <typename Int>
    static LayerMatrix from_twos_complement(std::span<const Int> weights, int n_bits) {
        LayerMatrix m(n_bits);
        for (std::size_t j = 0; j < weights.size(); ++j) {
            const auto t = recode_twos_complement(static_cast<std::int64_t>(weights[j]), n_bits);
            for (int i = 0; i < n_bits; ++i)
                if (t.bits[static_cast<std::size_t>(i)])
                    m.layers_[static_cast<std::size_t>(i)].push_back(
                        {j, static_cast<std::int8_t>(i == t.sign_layer() ? -1 : 1)});
        }
        return m;
    }

    int n_layers() const { return static_cast<int>(layers_.size()); }

    const std::vector<Pulse>& layer(int i) const { return layers_.at(static_cast<std::size_t>(i)); }
    std::vector<Pulse>& layer(int i) { return layers_.at(static_cast<std::size_t>(i)); }

    std::int64_t total_pulses() const {
        std::int64_t n = 0;
        for (const auto& l : layers_)
            n += static_cast<std::int64_t>(l.size());
        return n;
    }

    /// Reconstructs sum_i d[i][j] 2^i for j in [0, n).
    std::vector<std::int64_t> weights(std::size_t n) const {
        std::vector<std::int64_t> w(n, 0);
        for (std::size_t i = 0; i < layers_.size(); ++i)
            for (const auto& p : layers_[i]) {
                if (p.index >= n)
                    throw RangeError("pulse index outside weight vector");
                w[p.index] += static_cast<std::int64_t>(p.sign) * (std::int64_t{1} << i);
            }
        return w;
    }

    bool operator==(const LayerMatrix&) const = default;

private:
    std::vector<std::vector<Pulse>> layers_;
};

/// Ground truth: sum_j w[j] x[j].
template <typename W, typename X>
std::int64_t mac_oracle(std::span<const W> weights, std::span<const X> samples) {
    if (weights.size() != samples.size())
        throw ValidationError("mac_oracle: weight and sample lengths differ");
    std::int64_t acc = 0;
    for (std::size_t j = 0; j < weights.size(); ++j)
        acc += static_cast<std::int64_t>(weights[j]) * static_cast<std::int64_t>(samples[j]);
    return acc;
}

struct LeftShiftResult {
    std::int64_t result = 0;
    std::int64_t adds = 0;
    std::int64_t shifts = 0;
    std::vector<std::int64_t> after_layer; // after_layer[i]: acc once layer i is done
};

namespace detail {

inline std::int64_t layer_sum(const std::vector<Pulse>& pulses, std::span<const std::int64_t> x, int layer,
                              std::int64_t& adds, std::int64_t acc, int acc_width) {
    const std::int64_t hi = acc_width >= 63 ? INT64_MAX : (std::int64_t{1} << (acc_width - 1)) - 1;
    const std::int64_t lo = acc_width >= 63 ? INT64_MIN : -(std::int64_t{1} << (acc_width - 1));
    for (const auto& p : pulses) {
        if (p.index >= x.size())
            throw RangeError("pulse index " + std::to_string(p.index) + " outside sample vector");
        acc += p.sign > 0 ? x[p.index] : -x[p.index];
        ++adds;
        if (acc > hi || acc < lo)
            throw OverflowError("accumulator overflow at " + std::to_string(acc_width) + " bits in layer " +
                                    std::to_string(layer),
                                layer);
    }
    return acc;
}

} // namespace detail

/// MSB layer first, doubling between layers. No shift precedes the top layer.
inline LeftShiftResult blmac_left(const LayerMatrix& layers, std::span<const std::int64_t> samples,
                                  int acc_width = 63) {
    LeftShiftResult r;
    const int n = layers.n_layers();
    r.after_layer.assign(static_cast<std::size_t>(n), 0);
    std::int64_t acc = 0;
    for (int i = n - 1; i >= 0; --i) {
        if (i != n - 1) {
            acc *= 2;
            ++r.shifts;
        }
        acc = detail::layer_sum(layers.layer(i), samples, i, r.adds, acc, acc_width);
        r.after_layer[static_cast<std::size_t>(i)] = acc;
    }
    r.result = acc;
    return r;
}

struct RightShiftResult {
    std::int64_t result = 0;         // (acc << n_layers) + emitted bits
    std::int64_t acc = 0;            // register content after the last shift
    std::vector<std::uint8_t> emitted; // emitted[i]: bit i of the result
    std::int64_t adds = 0;
    std::int64_t shifts = 0;
    std::vector<std::int64_t> before_shift; // before_shift[i]: acc when layer i is summed
};

/// LSB layer first. After each layer the register LSB is retired as the next
/// result bit and the register is arithmetic-shifted right. Throws
/// OverflowError if any partial sum leaves a signed acc_width-bit register.
inline RightShiftResult blmac_right(const LayerMatrix& layers, std::span<const std::int64_t> samples,
                                    int acc_width = 63) {
    if (acc_width < 2 || acc_width > 63)
        throw RangeError("acc_width must be in [2, 63]");
    RightShiftResult r;
    const int n = layers.n_layers();
    r.emitted.reserve(static_cast<std::size_t>(n));
    r.before_shift.reserve(static_cast<std::size_t>(n));
    std::int64_t acc = 0;
    for (int i = 0; i < n; ++i) {
        acc = detail::layer_sum(layers.layer(i), samples, i, r.adds, acc, acc_width);
        r.before_shift.push_back(acc);
        r.emitted.push_back(static_cast<std::uint8_t>(acc & 1));
        acc >>= 1; // arithmetic on two's complement targets
        ++r.shifts;
    }
    r.acc = acc;
    std::int64_t low = 0;
    for (int i = 0; i < n; ++i)
        low |= static_cast<std::int64_t>(r.emitted[static_cast<std::size_t>(i)]) << i;
    r.result = acc * (std::int64_t{1} << n) + low;
    return r;
}

/// Folds an odd-length window around its centre: x[j] + x[N-1-j] for
/// j < N/2, then the unpaired centre sample.
template <typename X>
std::vector<std::int64_t> symmetric_preadd(std::span<const X> samples, std::int64_t* preadds = nullptr) {
    if (samples.size() % 2 == 0)
        throw ValidationError("symmetric_preadd: window length must be odd");
    const std::size_t n = samples.size();
    const std::size_t half = n / 2;
    std::vector<std::int64_t> folded(half + 1);
    for (std::size_t j = 0; j < half; ++j)
        folded[j] = static_cast<std::int64_t>(samples[j]) + static_cast<std::int64_t>(samples[n - 1 - j]);
    folded[half] = static_cast<std::int64_t>(samples[half]);
    if (preadds)
        *preadds = static_cast<std::int64_t>(half);
    return folded;
}

/// Additions needed to apply a type I filter: taps/2 pre-adds plus one add
/// per pulse of each of the taps/2 + 1 distinct coefficients.
template <typename W>
std::int64_t count_filter_additions(std::span<const W> half_weights, int taps) {
    if (taps < 1 || taps % 2 == 0)
        throw ValidationError("count_filter_additions: taps must be odd");
    if (half_weights.size() != static_cast<std::size_t>(taps / 2 + 1))
        throw ValidationError("count_filter_additions: expected taps/2 + 1 coefficients");
    std::int64_t total = taps / 2;
    for (auto w : half_weights)
        total += pulse_count(static_cast<std::int64_t>(w));
    return total;
}

/// Faster form for bulk use with a prebuilt absolute-value table.
template <typename W>
std::int64_t count_filter_additions(std::span<const W> half_weights, int taps,
                                    std::span<const std::uint8_t> ntrits) {
    std::int64_t total = taps / 2;
    for (auto w : half_weights)
        total += ntrits[static_cast<std::size_t>(w < 0 ? -static_cast<std::int64_t>(w) : w)];
    return total;
}

/// Cycles a bit-serial shift-and-add multiplier spends on one weight: one
/// per binary digit position.
inline int serial_mac_cycles(std::int64_t weight) {
    std::uint64_t v = static_cast<std::uint64_t>(weight < 0 ? -weight : weight);
    int n = 0;
    while (v) {
        ++n;
        v >>= 1;
    }
    return n;
}

} // namespace blmac
