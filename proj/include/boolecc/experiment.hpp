#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <string>
#include <memory>
#include <thread>
#include <vector>

#include "boolecc/json_io.hpp"
#include "boolecc/oracle.hpp"

namespace boolecc {

/// Scenario run request. `params` carries the scenario-specific knobs; the
/// scenarios fill documented defaults for anything omitted.
struct ExperimentConfig {
    std::string scenario;      // unique-correct | base-reduce | subcube-reduce |
                               // list-correct | decode-equivalence | sampling-check | maj-list
    std::uint64_t seed = 1;
    std::uint32_t threads = 0;  // 0: $BOOLECC_THREADS, else hardware concurrency
    json params = json::object();
};

/// Machine-readable result. `doc` has a stable field order; reruns with the
/// same config and seed are byte-identical except for wall_ms.
struct ExperimentReport {
    json doc;
    bool passed = true;

    std::string to_json_string(int indent = 2) const { return doc.dump(indent); }
    std::string to_csv() const;
};

ExperimentReport run_experiment(const ExperimentConfig& cfg);

std::uint32_t resolve_threads(std::uint32_t requested);

/// Deterministic parallel map over trial indices; results land in trial
/// order regardless of scheduling.
template <typename R>
std::vector<R> run_trials(std::uint64_t trials, std::uint32_t threads,
                          const std::function<R(std::uint64_t)>& fn) {
    // plain array, one object per trial: vector<bool> packs bits and would
    // race under concurrent writes
    std::unique_ptr<R[]> buf(new R[trials]());
    threads = static_cast<std::uint32_t>(
        std::min<std::uint64_t>(resolve_threads(threads), trials ? trials : 1));
    if (threads <= 1) {
        for (std::uint64_t t = 0; t < trials; ++t) buf[t] = fn(t);
    } else {
        std::atomic<std::uint64_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (std::uint32_t w = 0; w < threads; ++w) {
            pool.emplace_back([&]() {
                for (;;) {
                    const std::uint64_t t = next.fetch_add(1);
                    if (t >= trials) return;
                    buf[t] = fn(t);
                }
            });
        }
        for (auto& th : pool) th.join();
    }
    return std::vector<R>(buf.get(), buf.get() + trials);
}

/// Empirical check of the subcube sampling lemma: the frequency, over random
/// k-dimensional embeddings, of |density(T on C) - density(T)| >= eps.
struct SamplingStats {
    std::uint64_t trials = 0;
    std::uint64_t tail_count = 0;
    Rat predicate_density;  // exact density of T
    double tail_frequency = 0;
};

SamplingStats sampling_check(const std::vector<bool>& predicate, std::uint32_t n,
                             std::uint32_t k, std::uint64_t trials, const Rat& eps,
                             std::uint64_t seed, std::uint32_t threads = 0);

/// Keyed pseudorandom subset of {0,1}^n with marginal density mu.
std::vector<bool> random_predicate(std::uint32_t n, const Rat& mu, std::uint64_t key);

/// Uniformly random degree-<=1 polynomial over cyclic(m).
MultilinearPoly random_linear_poly(std::uint32_t n, const GroupSpecPtr& group, Rng& rng);
PointN random_point(std::uint32_t n, Rng& rng);

}  // namespace boolecc
