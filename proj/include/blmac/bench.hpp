#pragma once

// Population benchmark: design, quantize and count additions for every filter
// of a cutoff sweep, aggregated per tap count.

#include <blmac/blmac_core.hpp>
#include <blmac/firdesign.hpp>
#include <blmac/machine.hpp>
#include <blmac/quantizer.hpp>
#include <blmac/sdr.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <limits>
#include <map>
#include <ostream>
#include <span>
#include <sstream>
#include <thread>
#include <vector>

namespace blmac {

struct SweepOptions {
    int grid_n = 100;
    unsigned workers = 0; // 0: hardware concurrency
};

namespace detail {

inline unsigned worker_count(unsigned requested, std::size_t items) {
    unsigned w = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
    return static_cast<unsigned>(std::min<std::size_t>(w, std::max<std::size_t>(items, 1)));
}

// Splits [0, n) into contiguous chunks, one per worker, and runs
// fn(worker, begin, end). Results must be merged by the caller in worker
// order so output does not depend on scheduling.
template <typename Fn>
void parallel_chunks(std::size_t n, unsigned workers, Fn&& fn) {
    if (workers <= 1) {
        fn(0u, std::size_t{0}, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::size_t b = std::min(n, chunk * w);
        const std::size_t e = std::min(n, b + chunk);
        pool.emplace_back([&fn, w, b, e] { fn(w, b, e); });
    }
    for (auto& t : pool)
        t.join();
}

inline const std::vector<std::uint8_t>& ntrits16() {
    static const auto table = build_ntrits_table(16);
    return table;
}

} // namespace detail

/// Designs and quantizes every filter of the sweep for one tap count and
/// calls fn(index, filter) on it. Filters are generated, handed over and
/// dropped; nothing is retained. fn must be safe to call concurrently when
/// more than one worker is used.
template <typename Fn>
void for_each_quantized(const Window& window, int taps, const SweepOptions& opt, Fn&& fn) {
    const auto specs = sweep(opt.grid_n, taps, window);
    const auto win = window_coefficients(taps, window);
    detail::parallel_chunks(specs.size(), detail::worker_count(opt.workers, specs.size()),
                            [&](unsigned, std::size_t b, std::size_t e) {
                                for (std::size_t k = b; k < e; ++k)
                                    fn(k, quantize(design(specs[k], win)));
                            });
}

struct AdditionStats {
    Window window;
    int taps = 0;
    std::int64_t count = 0;
    std::int64_t sum = 0;
    std::int64_t sum_sq = 0;
    std::int64_t min = 0;
    std::int64_t max = 0;

    void add(std::int64_t v) {
        min = count ? std::min(min, v) : v;
        max = count ? std::max(max, v) : v;
        ++count;
        sum += v;
        sum_sq += v * v;
    }

    void merge(const AdditionStats& o) {
        if (!o.count)
            return;
        min = count ? std::min(min, o.min) : o.min;
        max = count ? std::max(max, o.max) : o.max;
        count += o.count;
        sum += o.sum;
        sum_sq += o.sum_sq;
    }

    double mean() const { return count ? static_cast<double>(sum) / static_cast<double>(count) : 0.0; }

    /// Population standard deviation.
    double stddev() const {
        if (!count)
            return 0.0;
        // count * sum_sq - sum^2 is exact in integers for any sweep size here
        const long double n = static_cast<long double>(count);
        const long double var =
            (n * static_cast<long double>(sum_sq) - static_cast<long double>(sum) * static_cast<long double>(sum)) /
            (n * n);
        return static_cast<double>(std::sqrt(std::max(var, 0.0L)));
    }

    /// Additions per distinct coefficient once the pre-adds are removed.
    double adds_per_coeff() const { return (mean() - taps / 2) / (taps / 2 + 1); }
    double adds_per_tap() const { return mean() / taps; }
};

struct DerivedRatios {
    int taps = 0;
    double adds_per_coeff = 0.0;
    double adds_per_tap = 0.0;
};

inline std::vector<DerivedRatios> derived_ratios(std::span<const AdditionStats> stats) {
    std::vector<DerivedRatios> out;
    out.reserve(stats.size());
    for (const auto& s : stats)
        out.push_back({s.taps, s.adds_per_coeff(), s.adds_per_tap()});
    return out;
}

inline AdditionStats sweep_additions(const Window& window, int taps, const SweepOptions& opt = {}) {
    const auto& ntrits = detail::ntrits16();
    const auto specs = sweep(opt.grid_n, taps, window);
    const auto win = window_coefficients(taps, window);
    const unsigned workers = detail::worker_count(opt.workers, specs.size());
    std::vector<AdditionStats> partial(workers);
    detail::parallel_chunks(specs.size(), workers, [&](unsigned w, std::size_t b, std::size_t e) {
        auto& acc = partial[w];
        for (std::size_t k = b; k < e; ++k) {
            const auto q = quantize(design(specs[k], win));
            acc.add(count_filter_additions(q.half(), taps, std::span<const std::uint8_t>(ntrits)));
        }
    });
    AdditionStats total;
    total.window = window;
    total.taps = taps;
    for (const auto& p : partial)
        total.merge(p);
    return total;
}

inline std::vector<AdditionStats> run_sweep(const Window& window, std::span<const int> taps_list,
                                            const SweepOptions& opt = {}) {
    std::vector<AdditionStats> out;
    out.reserve(taps_list.size());
    for (int t : taps_list)
        out.push_back(sweep_additions(window, t, opt));
    return out;
}

/// Additions of a classical symmetric evaluation, counting each 16-bit
/// multiply as 15 additions: 15 (N/2 + 1) + N - 1.
inline std::int64_t classical_equivalent_adds(int taps) {
    if (taps < 1 || taps % 2 == 0)
        throw ValidationError("classical_equivalent_adds: taps must be odd");
    return 15 * static_cast<std::int64_t>(taps / 2 + 1) + taps - 1;
}

inline std::string window_label(const Window& w) {
    return std::string(to_string(w.type));
}

inline void write_csv_header(std::ostream& out) {
    out << "window,taps,count,mean_adds,stddev,min,max,adds_per_coeff,adds_per_tap\n";
}

inline void write_csv_row(std::ostream& out, const AdditionStats& s) {
    std::ostringstream row;
    row << window_label(s.window) << ',' << s.taps << ',' << s.count << ',' << std::fixed << std::setprecision(1)
        << s.mean() << ',' << s.stddev() << ',' << s.min << ',' << s.max << ',' << std::setprecision(3)
        << s.adds_per_coeff() << ',' << s.adds_per_tap() << '\n';
    out << row.str();
}

inline void write_csv(std::ostream& out, std::span<const AdditionStats> stats) {
    write_csv_header(out);
    for (const auto& s : stats)
        write_csv_row(out, s);
}

struct MachineStudy {
    Window window;
    int taps = 0;
    CycleStats capacity_limited; // 256-code weight memory
    CycleStats unlimited;        // same machine, memory large enough for every filter
    CycleStats merged;           // unlimited memory, last add folded into the shift
    std::int64_t cycle_mismatches = 0; // filters where cycles != additions - taps/2 + layers
};

/// Runs the machine cycle model over the whole sweep population for one tap
/// count.
inline MachineStudy machine_study(const Window& window = Window::hamming(), int taps = 127,
                                  const SweepOptions& opt = {}, MachineConfig config = {}) {
    config.taps = taps;
    MachineConfig wide = config;
    wide.code_capacity = std::numeric_limits<std::size_t>::max();
    MachineConfig merged = wide;
    merged.merge_last_add = true;

    const auto specs = sweep(opt.grid_n, taps, window);
    const auto win = window_coefficients(taps, window);
    const unsigned workers = detail::worker_count(opt.workers, specs.size());
    struct Partial {
        CycleStats limited, unlimited, merged;
        std::int64_t mismatches = 0;
    };
    std::vector<Partial> partial(workers);
    detail::parallel_chunks(specs.size(), workers, [&](unsigned w, std::size_t b, std::size_t e) {
        auto& p = partial[w];
        for (std::size_t k = b; k < e; ++k) {
            const auto q = quantize(design(specs[k], win));
            const std::span<const QuantizedFilter> one(&q, 1);
            const auto lim = measure_cycles(one, config);
            const auto unl = measure_cycles(one, wide);
            p.limited.merge(lim);
            p.unlimited.merge(unl);
            p.merged.merge(measure_cycles(one, merged));
            const auto adds = count_filter_additions(q.half(), taps);
            if (unl.total_cycles != adds - taps / 2 + config.weight_bits)
                ++p.mismatches;
        }
    });
    MachineStudy s;
    s.window = window;
    s.taps = taps;
    for (const auto& p : partial) {
        s.capacity_limited.merge(p.limited);
        s.unlimited.merge(p.unlimited);
        s.merged.merge(p.merged);
        s.cycle_mismatches += p.mismatches;
    }
    return s;
}

inline void write_machine_csv(std::ostream& out, const MachineStudy& s) {
    out << "window,taps,filters,loadable,excluded_fraction,mean_cycles_loadable,min_cycles,max_cycles,"
           "mean_cycles_all,mean_cycles_all_merged\n";
    std::ostringstream row;
    row << window_label(s.window) << ',' << s.taps << ',' << s.capacity_limited.filters << ','
        << s.capacity_limited.loadable << ',' << std::fixed << std::setprecision(4)
        << s.capacity_limited.excluded_fraction() << ',' << std::setprecision(1) << s.capacity_limited.mean() << ','
        << s.capacity_limited.min_cycles << ',' << s.capacity_limited.max_cycles << ',' << s.unlimited.mean() << ','
        << s.merged.mean() << '\n';
    out << row.str();
}

inline constexpr double kKaiserTargetLow = 123.3;   // mean additions, 55 taps
inline constexpr double kKaiserTargetHigh = 474.7;  // mean additions, 255 taps
inline constexpr double kKaiserTolerance = 0.10;

struct KaiserCalibration {
    double beta = 0.0;
    double mean_low = 0.0;
    double mean_high = 0.0;
    double rel_err_low = 0.0;
    double rel_err_high = 0.0;

    double worst_error() const { return std::max(std::fabs(rel_err_low), std::fabs(rel_err_high)); }
    bool within(double tol = kKaiserTolerance) const { return worst_error() <= tol; }
};

inline std::vector<KaiserCalibration> calibrate_kaiser(std::span<const double> betas, int taps_low = 55,
                                                       int taps_high = 255, double target_low = kKaiserTargetLow,
                                                       double target_high = kKaiserTargetHigh,
                                                       const SweepOptions& opt = {}) {
    std::vector<KaiserCalibration> out;
    for (double beta : betas) {
        KaiserCalibration c;
        c.beta = beta;
        c.mean_low = sweep_additions(Window::kaiser(beta), taps_low, opt).mean();
        c.mean_high = sweep_additions(Window::kaiser(beta), taps_high, opt).mean();
        c.rel_err_low = (c.mean_low - target_low) / target_low;
        c.rel_err_high = (c.mean_high - target_high) / target_high;
        out.push_back(c);
    }
    return out;
}

inline const KaiserCalibration* best_calibration(std::span<const KaiserCalibration> results) {
    const KaiserCalibration* best = nullptr;
    for (const auto& c : results)
        if (!best || c.worst_error() < best->worst_error())
            best = &c;
    return best;
}

} // namespace blmac
