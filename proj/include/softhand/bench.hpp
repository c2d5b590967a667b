#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "softhand/closure.hpp"

namespace softhand {

struct BenchOptions {
    int trials = 5;
    double jitter_mm = 5.0;    // uniform +/- translation in the palm plane
    double jitter_deg = 10.0;  // uniform +/- yaw about the vertical axis
    std::uint64_t seed = 0;
    ClosureOptions closure;
};

struct BenchRow {
    std::string object;
    double mean_contacts = 0.0;  // mean fingers_in_contact over trials
    int successes = 0;
    int trials = 0;
    double mean_holding_N = 0.0;
};

struct BenchResult {
    std::vector<BenchRow> rows;
    int total_trials = 0;
    int total_successes = 0;
    double success_rate = 0.0;
};

// Top-down grasp bench: each trial re-poses the object with jitter keyed by
// (seed, object, trial) and runs a full closure. Trials execute on a worker
// pool (capped by SOFTHAND_SIM_THREADS); results are deterministic and
// independent of the thread count.
BenchResult run_bench(const HandConfig& config, const std::vector<GraspObject>& corpus,
                      const BenchOptions& options = {});

// Worker count for a task batch: hardware concurrency capped by the
// SOFTHAND_SIM_THREADS environment variable (malformed values are ignored).
unsigned bench_thread_count(size_t tasks);

}  // namespace softhand
