#pragma once

#include <thread>
#include <vector>

#include "frontier_lab/rng.hpp"
#include "frontier_lab/stats.hpp"

namespace flab {

// Requested <= 0 resolves FRONTIER_LAB_THREADS, then hardware concurrency.
int resolve_workers(int requested);

// Deterministic sample-parallel map: fn(index, rng) -> Record, with one rng
// stream per sample derived from (base_seed, scale_tag, index).  Results land
// in index order, so any later reduction is independent of the worker count.
template <class Record, class Fn>
std::vector<Record> run_samples(uint64_t n, int workers, uint64_t base_seed, uint64_t scale_tag,
                                Fn&& fn) {
    std::vector<Record> records(n);
    int w = resolve_workers(workers);
    if (n < 64 || w <= 1) {
        for (uint64_t i = 0; i < n; ++i) {
            Rng rng = make_rng(base_seed, mix_stream(scale_tag, i));
            records[i] = fn(i, rng);
        }
        return records;
    }
    std::vector<std::thread> pool;
    pool.reserve(w);
    for (int t = 0; t < w; ++t) {
        pool.emplace_back([&, t]() {
            for (uint64_t i = uint64_t(t); i < n; i += uint64_t(w)) {
                Rng rng = make_rng(base_seed, mix_stream(scale_tag, i));
                records[i] = fn(i, rng);
            }
        });
    }
    for (auto& th : pool) th.join();
    return records;
}

enum class Outcome : uint8_t { kFailure = 0, kSuccess = 1, kAborted = 2 };

struct ProbabilityEstimate {
    uint64_t samples = 0;
    uint64_t successes = 0;
    uint64_t aborts = 0;
    WilsonInterval wilson;
    bool valid = true;  // abort fraction <= 1e-3

    double p_hat() const { return samples ? double(successes) / double(samples) : 0.0; }
};

// Monte Carlo probability of a pure event evaluator.  Aggregation is a plain
// sum over per-sample outcomes, so the result is worker-count independent.
template <class Evaluator>
ProbabilityEstimate estimate_probability(Evaluator&& ev, uint64_t n_samples, int workers,
                                         uint64_t base_seed, uint64_t scale_tag) {
    auto recs = run_samples<Outcome>(n_samples, workers, base_seed, scale_tag,
                                     [&](uint64_t i, Rng& rng) { return ev(i, rng); });
    ProbabilityEstimate est;
    est.samples = n_samples;
    for (Outcome o : recs) {
        if (o == Outcome::kSuccess) ++est.successes;
        if (o == Outcome::kAborted) ++est.aborts;
    }
    est.wilson = wilson_interval(est.successes, est.samples);
    est.valid = double(est.aborts) <= 1e-3 * double(est.samples);
    return est;
}

}  // namespace flab
