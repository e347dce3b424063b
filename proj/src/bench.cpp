#include "dkde/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "dkde/qp.hpp"
#include "dkde/quadrature.hpp"

namespace dkde {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string format_double(double v) {
    char buf[32];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) {
        throw std::runtime_error("format_double: conversion failed");
    }
    return std::string(buf, end);
}

/// Runs fn(0..n-1) on a small worker pool. Slot-indexed results and
/// index-ordered error propagation keep the outcome independent of scheduling.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
    std::size_t workers = threads > 0 ? static_cast<std::size_t>(threads)
                                      : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, n);
    std::vector<std::exception_ptr> errors(n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            try {
                fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < n; i = next++) {
                    try {
                        fn(i);
                    } catch (...) {
                        errors[i] = std::current_exception();
                    }
                }
            });
        }
        for (auto& t : pool) {
            t.join();
        }
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

struct SweepCell {
    WeightScheme scheme;
    double value;
};

std::vector<SweepSummary> run_sweep(const std::vector<std::uint64_t>& seeds,
                                    const std::string& variable,
                                    const std::vector<double>& values, const SweepConfig& cfg,
                                    const std::function<TrackerConfig(WeightScheme, double)>& make) {
    if (seeds.empty() || values.empty()) {
        throw std::domain_error("sweep: seeds and swept values must be non-empty");
    }
    std::vector<SweepCell> cells;
    for (WeightScheme scheme : kAllSchemes) {
        for (double value : values) {
            cells.push_back({scheme, value});
        }
    }

    // errors[seed][cell]: per-run time-averaged ISE
    std::vector<std::vector<double>> errors(seeds.size(), std::vector<double>(cells.size()));
    parallel_for(seeds.size(), cfg.threads, [&](std::size_t si) {
        GeneratorConfig gen = cfg.generator;
        gen.seed = seeds[si];
        const Dataset dataset = generate(gen);
        for (std::size_t ci = 0; ci < cells.size(); ++ci) {
            try {
                const TrackerConfig tc = make(cells[ci].scheme, cells[ci].value);
                errors[si][ci] =
                    mean_ise_after_warmup(run_tracking(dataset, tc), tc.window);
            } catch (const std::exception& e) {
                throw std::runtime_error("seed " + std::to_string(seeds[si]) + ", scheme " +
                                         to_string(cells[ci].scheme) + ", " + variable + " " +
                                         format_double(cells[ci].value) + ": " + e.what());
            }
        }
    });

    std::vector<SweepSummary> out;
    out.reserve(cells.size());
    const auto runs = static_cast<double>(seeds.size());
    for (std::size_t ci = 0; ci < cells.size(); ++ci) {
        double mean = 0.0;
        for (std::size_t si = 0; si < seeds.size(); ++si) {
            mean += errors[si][ci];
        }
        mean /= runs;
        double ss = 0.0;
        for (std::size_t si = 0; si < seeds.size(); ++si) {
            const double d = errors[si][ci] - mean;
            ss += d * d;
        }
        const double std_dev = seeds.size() > 1 ? std::sqrt(ss / (runs - 1.0)) : 0.0;
        out.push_back({to_string(cells[ci].scheme), variable, cells[ci].value, mean, std_dev,
                       static_cast<int>(seeds.size())});
    }
    return out;
}

}  // namespace

std::vector<StepRecord> run_tracking(const Dataset& dataset, const TrackerConfig& cfg) {
    cfg.validate();
    if (dataset.batches.empty()) {
        throw std::domain_error("run_tracking: dataset is empty");
    }
    Tracker tracker(cfg);
    std::vector<StepRecord> records;
    records.reserve(dataset.batches.size());
    for (const Batch& batch : dataset.batches) {
        if (!batch.true_params) {
            throw std::domain_error("run_tracking: batch " + std::to_string(batch.t) +
                                    " has no true parameters to score against");
        }
        try {
            const auto start = std::chrono::steady_clock::now();
            tracker.push(batch);
            // In oracle mode the ring's last summary is the true (mu_t, gamma_t);
            // in plugin mode it is the current batch's sample estimate.
            const auto summaries = tracker.summaries();
            const WeightVector alpha = tracker.weights_for(summaries.back());
            const double ise = closed_form_ise(tracker.current_mixture(alpha), *batch.true_params);
            std::optional<double> exact;
            if (cfg.param_mode == ParamMode::oracle) {
                exact = exact_mise(build_components(summaries, *batch.true_params, cfg.bandwidth),
                                   alpha);
            }
            const auto stop = std::chrono::steady_clock::now();
            records.push_back(
                {batch.t, to_string(cfg.scheme), static_cast<int>(cfg.window), cfg.bandwidth,
                 std::max(ise, 0.0), exact, alpha,
                 std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count()});
        } catch (const std::domain_error& e) {
            throw std::domain_error("batch " + std::to_string(batch.t) + ": " + e.what());
        } catch (const ConvergenceError& e) {
            throw std::runtime_error("batch " + std::to_string(batch.t) + ": " + e.what());
        }
    }
    return records;
}

double mean_ise_after_warmup(const std::vector<StepRecord>& records, std::size_t window) {
    if (records.empty()) {
        throw std::domain_error("mean_ise_after_warmup: no records");
    }
    const std::size_t start = records.size() > window ? window : 0;
    double sum = 0.0;
    for (std::size_t i = start; i < records.size(); ++i) {
        sum += records[i].ise;
    }
    return sum / static_cast<double>(records.size() - start);
}

std::vector<SweepSummary> sweep_window(const std::vector<std::uint64_t>& seeds,
                                       const std::vector<int>& windows, const SweepConfig& cfg,
                                       double bandwidth) {
    std::vector<double> values;
    values.reserve(windows.size());
    for (int w : windows) {
        if (w < 1) {
            throw std::domain_error("sweep_window: windows must be >= 1");
        }
        values.push_back(static_cast<double>(w));
    }
    return run_sweep(seeds, "window", values, cfg, [&](WeightScheme scheme, double value) {
        return TrackerConfig{static_cast<std::size_t>(value), bandwidth, scheme, cfg.beta,
                             cfg.mode};
    });
}

std::vector<SweepSummary> sweep_bandwidth(const std::vector<std::uint64_t>& seeds,
                                          const std::vector<double>& bandwidths,
                                          const SweepConfig& cfg, int window) {
    if (window < 1) {
        throw std::domain_error("sweep_bandwidth: window must be >= 1");
    }
    return run_sweep(seeds, "bandwidth", bandwidths, cfg, [&](WeightScheme scheme, double value) {
        return TrackerConfig{static_cast<std::size_t>(window), value, scheme, cfg.beta, cfg.mode};
    });
}

double quadrature_ise(const MixtureDensity& h, const GaussianParams& target, int points) {
    if (h.components.empty()) {
        throw std::domain_error("quadrature_ise: empty mixture");
    }
    double lo = target.mu;
    double hi = target.mu;
    double max_sigma = target.sigma;
    for (const auto& [weight, params] : h.components) {
        lo = std::min(lo, params.mu);
        hi = std::max(hi, params.mu);
        max_sigma = std::max(max_sigma, params.sigma);
    }
    const auto integrand = [&](double x) {
        const double d = h.pdf(x) - phi(target.sigma, x - target.mu);
        return d * d;
    };
    return simpson(integrand, lo - 10.0 * max_sigma, hi + 10.0 * max_sigma, points);
}

EmitFormat parse_format(const std::string& name) {
    if (name == "csv") return EmitFormat::csv;
    if (name == "json") return EmitFormat::json;
    throw std::domain_error("unknown output format: " + name);
}

namespace {

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("emit_results: cannot open " + path.string());
    }
    return out;
}

void finish_output(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) {
        throw std::runtime_error("emit_results: write failed for " + path.string());
    }
}

}  // namespace

void emit_results(const std::vector<StepRecord>& records, EmitFormat format,
                  const std::filesystem::path& path) {
    auto out = open_output(path);
    if (format == EmitFormat::csv) {
        out << "t,scheme,window,bandwidth,ise,exact_mise,wall_nanos\n";
        for (const auto& r : records) {
            out << r.t << ',' << r.scheme << ',' << r.window << ',' << format_double(r.bandwidth)
                << ',' << format_double(r.ise) << ','
                << (r.exact_mise ? format_double(*r.exact_mise) : "") << ',' << r.wall_nanos
                << '\n';
        }
    } else {
        ordered_json arr = ordered_json::array();
        for (const auto& r : records) {
            ordered_json j;
            j["t"] = r.t;
            j["scheme"] = r.scheme;
            j["window"] = r.window;
            j["bandwidth"] = r.bandwidth;
            j["ise"] = r.ise;
            j["exact_mise"] = r.exact_mise ? ordered_json(*r.exact_mise) : ordered_json(nullptr);
            j["wall_nanos"] = r.wall_nanos;
            arr.push_back(std::move(j));
        }
        out << arr.dump(2) << '\n';
    }
    finish_output(out, path);
}

void emit_results(const std::vector<SweepSummary>& summaries, EmitFormat format,
                  const std::filesystem::path& path) {
    auto out = open_output(path);
    if (format == EmitFormat::csv) {
        out << "scheme,sweep_variable,sweep_value,mean_error,std_error,runs\n";
        for (const auto& s : summaries) {
            out << s.scheme << ',' << s.sweep_variable << ',' << format_double(s.sweep_value)
                << ',' << format_double(s.mean_error) << ',' << format_double(s.std_error) << ','
                << s.runs << '\n';
        }
    } else {
        ordered_json arr = ordered_json::array();
        for (const auto& s : summaries) {
            ordered_json j;
            j["scheme"] = s.scheme;
            j["sweep_variable"] = s.sweep_variable;
            j["sweep_value"] = s.sweep_value;
            j["mean_error"] = s.mean_error;
            j["std_error"] = s.std_error;
            j["runs"] = s.runs;
            arr.push_back(std::move(j));
        }
        out << arr.dump(2) << '\n';
    }
    finish_output(out, path);
}

}  // namespace dkde
