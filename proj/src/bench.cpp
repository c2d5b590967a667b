#include "softhand/bench.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

#include "softhand/errors.hpp"
#include "softhand/rng.hpp"

namespace softhand {

unsigned bench_thread_count(size_t tasks) {
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("SOFTHAND_SIM_THREADS")) {
        char* end = nullptr;
        const long cap = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && cap >= 1)
            n = std::min<unsigned>(n, static_cast<unsigned>(cap));
    }
    return std::min<unsigned>(n, static_cast<unsigned>(std::max<size_t>(1, tasks)));
}

BenchResult run_bench(const HandConfig& config, const std::vector<GraspObject>& corpus,
                      const BenchOptions& options) {
    validate(config);
    if (corpus.empty()) throw ValidationError("bench corpus is empty");
    if (options.trials < 1) throw ValidationError("bench trials must be >= 1");
    if (options.jitter_mm < 0.0 || options.jitter_deg < 0.0)
        throw ValidationError("bench jitter must be non-negative");
    for (const auto& obj : corpus) validate(obj);

    struct Trial {
        int contacts = 0;
        bool success = false;
        double holding_N = 0.0;
    };
    const size_t total = corpus.size() * static_cast<size_t>(options.trials);
    std::vector<Trial> trials(total);

    std::atomic<size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&]() {
        for (size_t k = next.fetch_add(1); k < total; k = next.fetch_add(1)) {
            try {
                const size_t oi = k / static_cast<size_t>(options.trials);
                const size_t ti = k % static_cast<size_t>(options.trials);
                const double dx =
                    detail::symmetric(detail::mix_key(options.seed, oi, ti, 0), options.jitter_mm);
                const double dy =
                    detail::symmetric(detail::mix_key(options.seed, oi, ti, 1), options.jitter_mm);
                const double yaw =
                    detail::symmetric(detail::mix_key(options.seed, oi, ti, 2), options.jitter_deg);
                const GraspObject posed = transformed(corpus[oi], dx, dy, yaw);
                GraspReport report = close_hand(config, &posed, options.closure);
                trials[k] = {report.fingers_in_contact, report.success, report.holding_force_N};
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(total);
                return;
            }
        }
    };

    const unsigned n_threads = bench_thread_count(total);
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);

    BenchResult result;
    for (size_t oi = 0; oi < corpus.size(); ++oi) {
        BenchRow row;
        row.object = corpus[oi].name;
        row.trials = options.trials;
        for (int ti = 0; ti < options.trials; ++ti) {
            const Trial& t = trials[oi * static_cast<size_t>(options.trials) +
                                    static_cast<size_t>(ti)];
            row.mean_contacts += t.contacts;
            row.mean_holding_N += t.holding_N;
            if (t.success) ++row.successes;
        }
        row.mean_contacts /= options.trials;
        row.mean_holding_N /= options.trials;
        result.total_trials += row.trials;
        result.total_successes += row.successes;
        result.rows.push_back(std::move(row));
    }
    result.success_rate =
        static_cast<double>(result.total_successes) / static_cast<double>(result.total_trials);
    return result;
}

}  // namespace softhand
