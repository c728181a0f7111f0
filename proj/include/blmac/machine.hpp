#pragma once

// Cycle-accurate model of a run-length coded, right-shift BLMAC dot product
// machine for type I FIR filters.
//
// Datapath per Pulse code (one cycle): expand the zero run to a coefficient
// position j, fetch sample_mem[j] and sample_mem[taps-1-j], pre-add them
// (the centre position takes its sample once), then add or subtract the sum.
// Per EOR code (one cycle): retire the accumulator LSB into the result shift
// register and shift the accumulator right.

#include <blmac/blmac_core.hpp>
#include <blmac/errors.hpp>
#include <blmac/quantizer.hpp>
#include <blmac/rlc_codec.hpp>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace blmac {

struct MachineConfig {
    int taps = 127;
    int sample_bits = 8;
    int weight_bits = kWeightLayers;
    std::size_t code_capacity = kCodeCapacity;
    int acc_width = 17;
    // Fold the last add of each non-empty layer into the EOR shift cycle.
    bool merge_last_add = false;

    void validate() const {
        if (taps < 1 || taps % 2 == 0)
            throw ValidationError("machine: taps must be odd");
        if (sample_bits < 2 || sample_bits > 32)
            throw ValidationError("machine: sample_bits must be in [2, 32]");
        if (weight_bits < 1 || weight_bits > 31)
            throw ValidationError("machine: weight_bits must be in [1, 31]");
        if (acc_width < 2 || acc_width > 63)
            throw ValidationError("machine: acc_width must be in [2, 63]");
    }

    std::size_t positions() const { return static_cast<std::size_t>(taps / 2 + 1); }
};

struct TraceRow {
    std::int64_t cycle = 0;
    Code code;
    std::size_t position = 0; // pulses only
    std::int64_t fetched = 0; // pre-added sample pair, pulses only
    std::int64_t acc = 0;     // accumulator after this cycle
};

using TraceSink = std::function<void(const TraceRow&)>;

struct RunResult {
    std::int64_t output = 0;
    std::int64_t cycles = 0;
    std::int64_t acc = 0;
    std::uint32_t result_sr = 0;
};

class Machine {
public:
    explicit Machine(MachineConfig config = {}) : config_(config) {
        config_.validate();
        samples_.assign(static_cast<std::size_t>(config_.taps), 0);
        sample_min_ = -(std::int64_t{1} << (config_.sample_bits - 1));
        sample_max_ = (std::int64_t{1} << (config_.sample_bits - 1)) - 1;
        acc_min_ = -(std::int64_t{1} << (config_.acc_width - 1));
        acc_max_ = (std::int64_t{1} << (config_.acc_width - 1)) - 1;
    }

    const MachineConfig& config() const { return config_; }

    void load_weights(std::span<const std::uint8_t> image) {
        if (image.size() > config_.code_capacity)
            throw CapacityError("load_weights: image of " + std::to_string(image.size()) +
                                " codes exceeds capacity " + std::to_string(config_.code_capacity));
        weights_.assign(image.begin(), image.end());
        loaded_ = true;
    }

    /// Shifts one sample into the window, discarding the oldest.
    void push_sample(std::int64_t x) {
        if (x < sample_min_ || x > sample_max_)
            throw RangeError("push_sample: " + std::to_string(x) + " does not fit " +
                             std::to_string(config_.sample_bits) + "-bit signed");
        std::shift_left(samples_.begin(), samples_.end(), 1);
        samples_.back() = x;
        ++pushed_;
    }

    void clear_samples() {
        std::fill(samples_.begin(), samples_.end(), 0);
        pushed_ = 0;
    }

    std::span<const std::int64_t> window() const { return samples_; }
    std::int64_t acc() const { return acc_; }
    std::uint32_t result_sr() const { return result_sr_; }
    std::int64_t cycle_count() const { return total_cycles_; }
    std::int64_t runs() const { return runs_; }

    RunResult run_once(const TraceSink& trace = {}) {
        if (!loaded_)
            throw ValidationError("run_once: no weights loaded");
        const std::size_t center = config_.positions() - 1;
        const auto last = static_cast<std::size_t>(config_.taps - 1);
        const int top_bit = config_.weight_bits - 1;

        acc_ = 0;
        result_sr_ = 0;
        std::int64_t cycles = 0;
        int layer = 0;
        std::size_t pos = 0;
        bool pulse_pending = false;

        for (auto byte : weights_) {
            const Code code = unpack_code(byte);
            if (layer >= config_.weight_bits)
                throw CodecError("run_once: codes after the final EOR");
            TraceRow row;
            row.code = code;
            if (code.eor) {
                if (!(config_.merge_last_add && pulse_pending))
                    ++cycles;
                result_sr_ = (result_sr_ >> 1) | (static_cast<std::uint32_t>(acc_ & 1) << top_bit);
                acc_ >>= 1;
                ++layer;
                pos = 0;
                pulse_pending = false;
            } else {
                pos += code.zrun;
                if (pos > center)
                    throw CodecError("run_once: position " + std::to_string(pos) + " overflows layer " +
                                     std::to_string(layer));
                const std::int64_t fetched = samples_[pos] + (pos == center ? 0 : samples_[last - pos]);
                acc_ += code.sign > 0 ? fetched : -fetched;
                if (acc_ > acc_max_ || acc_ < acc_min_)
                    throw OverflowError("run_once: accumulator overflow at " + std::to_string(config_.acc_width) +
                                            " bits in layer " + std::to_string(layer),
                                        layer);
                ++cycles;
                row.position = pos;
                row.fetched = fetched;
                ++pos;
                pulse_pending = true;
            }
            if (trace) {
                row.cycle = cycles;
                row.acc = acc_;
                trace(row);
            }
        }
        if (layer != config_.weight_bits)
            throw CodecError("run_once: stream has " + std::to_string(layer) + " EOR codes, expected " +
                             std::to_string(config_.weight_bits));

        total_cycles_ += cycles;
        ++runs_;
        RunResult r;
        r.acc = acc_;
        r.result_sr = result_sr_;
        r.output = acc_ * (std::int64_t{1} << config_.weight_bits) + static_cast<std::int64_t>(result_sr_);
        r.cycles = cycles;
        return r;
    }

    /// Primes the window with the first taps-1 samples, then produces one
    /// output per further sample.
    template <typename X>
    std::vector<std::int64_t> stream(std::span<const X> input) {
        const auto taps = static_cast<std::size_t>(config_.taps);
        if (input.size() < taps)
            throw ValidationError("stream: need at least taps samples");
        std::vector<std::int64_t> out;
        out.reserve(input.size() - taps + 1);
        for (std::size_t k = 0; k < input.size(); ++k) {
            push_sample(static_cast<std::int64_t>(input[k]));
            if (k + 1 >= taps)
                out.push_back(run_once().output);
        }
        return out;
    }

private:
    MachineConfig config_;
    std::vector<std::uint8_t> weights_;
    std::vector<std::int64_t> samples_;
    bool loaded_ = false;
    std::int64_t acc_ = 0;
    std::uint32_t result_sr_ = 0;
    std::int64_t total_cycles_ = 0;
    std::int64_t runs_ = 0;
    std::int64_t pushed_ = 0;
    std::int64_t sample_min_, sample_max_, acc_min_, acc_max_;
};

/// Run-length code stream for the distinct coefficients of a type I filter.
inline CodeStream filter_code_stream(const QuantizedFilter& filter, int weight_bits = kWeightLayers) {
    const auto half = filter.half();
    return encode(LayerMatrix::from_weights(half, weight_bits), half.size());
}

inline std::vector<std::uint8_t> weight_image(const QuantizedFilter& filter,
                                              std::size_t capacity = kCodeCapacity,
                                              int weight_bits = kWeightLayers) {
    return pack_memory_image(filter_code_stream(filter, weight_bits), capacity);
}

struct CycleStats {
    std::int64_t filters = 0;
    std::int64_t loadable = 0;
    std::int64_t excluded = 0;
    std::int64_t total_cycles = 0;
    std::int64_t min_cycles = 0;
    std::int64_t max_cycles = 0;

    double mean() const { return loadable ? static_cast<double>(total_cycles) / static_cast<double>(loadable) : 0.0; }
    double excluded_fraction() const {
        return filters ? static_cast<double>(excluded) / static_cast<double>(filters) : 0.0;
    }

    void merge(const CycleStats& o) {
        if (o.loadable) {
            min_cycles = loadable ? std::min(min_cycles, o.min_cycles) : o.min_cycles;
            max_cycles = loadable ? std::max(max_cycles, o.max_cycles) : o.max_cycles;
        }
        filters += o.filters;
        loadable += o.loadable;
        excluded += o.excluded;
        total_cycles += o.total_cycles;
    }
};

/// Cycles of one run_once per filter. Filters whose stream exceeds the code
/// capacity are counted as excluded. The cycle count does not depend on the
/// sample values, so each run uses an all-zero window.
inline CycleStats measure_cycles(std::span<const QuantizedFilter> filters, const MachineConfig& config = {}) {
    CycleStats s;
    Machine m(config);
    for (const auto& f : filters) {
        ++s.filters;
        const auto stream = filter_code_stream(f, config.weight_bits);
        if (stream.codes.size() > config.code_capacity) {
            ++s.excluded;
            continue;
        }
        m.load_weights(pack_memory_image(stream, config.code_capacity));
        const auto c = m.run_once().cycles;
        s.min_cycles = s.loadable ? std::min(s.min_cycles, c) : c;
        s.max_cycles = s.loadable ? std::max(s.max_cycles, c) : c;
        ++s.loadable;
        s.total_cycles += c;
    }
    return s;
}

} // namespace blmac
