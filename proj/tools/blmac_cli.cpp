// Command line front end for the BLMAC filtering toolkit.

#include <blmac/blmac.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace blmac;

// Writes to the named file, or stdout when the name is empty or "-".
class Output {
public:
    explicit Output(const std::string& path, bool binary = false) {
        if (!path.empty() && path != "-")
            file_ = std::make_unique<std::ofstream>(io::open_out(path, binary));
    }
    std::ostream& get() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

Window make_window(const std::string& name, std::optional<double> beta) {
    if (parse_window_type(name) == WindowType::Hamming)
        return Window::hamming();
    return Window::kaiser(beta.value_or(kDefaultKaiserBeta));
}

int cmd_table3(int max_bits) {
    std::cout << "n_bits,avg,max\n";
    for (int n = 1; n <= max_bits; ++n) {
        const auto s = pulse_stats(n);
        std::cout << n << ',' << std::fixed << std::setprecision(2) << s.avg << ',' << s.max << '\n';
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multiplierless FIR filtering with bit layer multiply accumulators"};
    app.require_subcommand(1);

    int max_bits = 24;
    auto* table3 = app.add_subcommand("table3", "Average and maximum pulse counts per integer bit width");
    table3->add_option("--max-bits", max_bits, "Largest bit width")->check(CLI::Range(1, 24));

    std::string kind = "lowpass", window = "hamming", out_path;
    int taps = 127;
    double f1 = 0.5, f2 = 0.0;
    std::optional<double> beta;
    auto* gen = app.add_subcommand("gen", "Design one type I FIR filter");
    gen->add_option("--kind", kind, "lowpass|highpass|bandpass|bandstop");
    gen->add_option("--taps", taps, "Odd tap count");
    gen->add_option("--f1", f1, "Cutoff in Nyquist units")->required();
    gen->add_option("--f2", f2, "Upper cutoff for band kinds");
    gen->add_option("--window", window, "hamming|kaiser");
    gen->add_option("--beta", beta, "Kaiser beta");
    gen->add_option("--out", out_path, "Output file (default stdout)");

    std::string in_path;
    auto* quant = app.add_subcommand("quantize", "Quantize a real filter to 16-bit coefficients");
    quant->add_option("--in", in_path, "Real filter file")->required();
    quant->add_option("--out", out_path, "Output file (default stdout)");

    bool disasm = false;
    auto* enc = app.add_subcommand("encode", "Run-length code a quantized filter into a weight memory image");
    enc->add_option("--in", in_path, "Quantized filter file")->required();
    enc->add_option("--out", out_path, "Image file")->required();
    enc->add_flag("--disasm", disasm, "Print the code listing to stdout");

    std::string image_path, samples_path;
    int acc_width = 17;
    bool merge = false, trace = false;
    auto* run = app.add_subcommand("run", "Stream samples through the dot product machine");
    run->add_option("--image", image_path, "Weight memory image")->required();
    run->add_option("--samples", samples_path, "Sample file")->required();
    run->add_option("--taps", taps, "Filter tap count");
    run->add_option("--acc-width", acc_width, "Accumulator width in bits");
    run->add_flag("--merge", merge, "Fold the last add of each layer into its shift");
    run->add_flag("--trace", trace, "Per-cycle trace on stderr");

    int taps_min = 55, taps_max = 255, grid = 100;
    unsigned workers = 0;
    auto* sw = app.add_subcommand("sweep", "Addition statistics over a cutoff sweep");
    sw->add_option("--window", window, "hamming|kaiser");
    sw->add_option("--beta", beta, "Kaiser beta");
    sw->add_option("--taps-min", taps_min);
    sw->add_option("--taps-max", taps_max);
    sw->add_option("--grid", grid, "Cutoff grid divisions")->check(CLI::Range(3, 100000));
    sw->add_option("--workers", workers, "Worker threads (0: all cores)");
    sw->add_option("--out", out_path, "CSV file (default stdout)");

    auto* ms = app.add_subcommand("machine-study", "Cycle statistics of the dot product machine");
    ms->add_option("--window", window, "hamming|kaiser");
    ms->add_option("--beta", beta, "Kaiser beta");
    ms->add_option("--taps", taps);
    ms->add_option("--grid", grid)->check(CLI::Range(3, 100000));
    ms->add_option("--workers", workers);
    ms->add_option("--out", out_path, "CSV file (default stdout)");

    std::vector<double> betas{5.0, 8.6, 14.0};
    auto* cal = app.add_subcommand("calibrate-kaiser", "Mean additions at the tap range ends for several betas");
    cal->add_option("--betas", betas)->delimiter(',');
    cal->add_option("--taps-min", taps_min);
    cal->add_option("--taps-max", taps_max);
    cal->add_option("--grid", grid)->check(CLI::Range(3, 100000));
    cal->add_option("--workers", workers);
    cal->add_option("--out", out_path, "CSV file (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*table3)
            return cmd_table3(max_bits);

        if (*gen) {
            FilterSpec spec{parse_filter_kind(kind), taps, f1, f2, make_window(window, beta)};
            Output out(out_path);
            io::write_real_filter(out.get(), design(spec));
            return 0;
        }

        if (*quant) {
            auto in = io::open_in(in_path);
            const auto q = quantize(io::read_real_filter(in));
            Output out(out_path);
            io::write_quantized(out.get(), q);
            return 0;
        }

        if (*enc) {
            auto in = io::open_in(in_path);
            const auto q = io::read_quantized(in);
            const auto stream = filter_code_stream(q);
            const auto image = pack_memory_image(stream);
            Output out(out_path, true);
            io::write_image(out.get(), image);
            if (disasm)
                std::cout << disassemble(stream);
            std::cerr << image.size() << " codes (" << stream.pulses() << " pulses)\n";
            return 0;
        }

        if (*run) {
            auto img = io::open_in(image_path, true);
            auto smp = io::open_in(samples_path);
            MachineConfig cfg;
            cfg.taps = taps;
            cfg.acc_width = acc_width;
            cfg.merge_last_add = merge;
            Machine m(cfg);
            m.load_weights(io::read_image(img));
            const auto samples = io::read_samples(smp);
            if (samples.size() < static_cast<std::size_t>(taps))
                throw ValidationError("run: need at least " + std::to_string(taps) + " samples");
            TraceSink sink;
            if (trace) {
                std::cerr << "cycle,code,j,fetched,acc\n";
                sink = [](const TraceRow& r) {
                    std::cerr << r.cycle << ',';
                    if (r.code.eor)
                        std::cerr << "EOR,-,-,";
                    else
                        std::cerr << (r.code.sign > 0 ? '+' : '-') << int(r.code.zrun) << ',' << r.position << ','
                                  << r.fetched << ',';
                    std::cerr << r.acc << '\n';
                };
            }
            std::int64_t cycles = 0, outputs = 0;
            for (std::size_t k = 0; k < samples.size(); ++k) {
                m.push_sample(samples[k]);
                if (k + 1 < static_cast<std::size_t>(taps))
                    continue;
                const auto r = m.run_once(sink);
                std::cout << r.output << '\n';
                cycles += r.cycles;
                ++outputs;
            }
            std::cout << "cycles_total " << cycles << " cycles_mean " << std::fixed << std::setprecision(1)
                      << static_cast<double>(cycles) / static_cast<double>(outputs) << '\n';
            return 0;
        }

        if (*sw) {
            const auto w = make_window(window, beta);
            const auto list = odd_taps(taps_min, taps_max);
            Output out(out_path);
            write_csv_header(out.get());
            for (int t : list) {
                write_csv_row(out.get(), sweep_additions(w, t, {grid, workers}));
                out.get().flush();
            }
            return 0;
        }

        if (*ms) {
            const auto s = machine_study(make_window(window, beta), taps, {grid, workers});
            Output out(out_path);
            write_machine_csv(out.get(), s);
            if (s.cycle_mismatches)
                std::cerr << "warning: " << s.cycle_mismatches << " filters disagree with the addition count\n";
            return 0;
        }

        if (*cal) {
            const auto results = calibrate_kaiser(betas, taps_min, taps_max, kKaiserTargetLow, kKaiserTargetHigh,
                                                  {grid, workers});
            Output out(out_path);
            auto& o = out.get();
            o << "beta,mean_adds_" << taps_min << ",mean_adds_" << taps_max << ",rel_err_" << taps_min
              << ",rel_err_" << taps_max << ",within_tolerance\n";
            for (const auto& c : results)
                o << std::setprecision(4) << c.beta << ',' << std::fixed << std::setprecision(1) << c.mean_low << ','
                  << c.mean_high << ',' << std::setprecision(4) << c.rel_err_low << ',' << c.rel_err_high << ','
                  << (c.within() ? "yes" : "no") << '\n'
                  << std::defaultfloat;
            if (const auto* best = best_calibration(results))
                std::cerr << "best beta " << best->beta << " (worst relative error " << best->worst_error()
                          << ")\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
