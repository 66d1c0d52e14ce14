#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "randset/errors.hpp"

namespace randset {

struct ExperimentConfig {
    std::uint64_t master_seed = 0;
    std::vector<long long> sample_sizes;
    long long replications = 1;
    /// Worker threads; 0 means RANDSET_THREADS or the hardware concurrency.
    int threads = 0;

    void validate() const {
        if (replications < 1) throw InvalidArgument("replications must be at least 1");
        if (sample_sizes.empty()) throw InvalidArgument("at least one sample size is required");
        for (std::size_t i = 0; i < sample_sizes.size(); ++i) {
            if (sample_sizes[i] < 1) throw InvalidArgument("sample sizes must be positive");
            if (i > 0 && sample_sizes[i] <= sample_sizes[i - 1]) {
                throw InvalidArgument("sample sizes must be strictly increasing");
            }
        }
        if (threads < 0) throw InvalidArgument("thread count must be nonnegative");
    }

    long long max_size() const { return sample_sizes.back(); }
};

/// One statistic vector for replication `replication` at sample size `n`.
struct Record {
    long long replication;
    long long n;
    std::vector<double> stats;
};

struct Metric {
    std::string name;
    double value;
};

struct Verdict {
    std::string name;
    bool passed;
    std::string detail;
};

struct Parameter {
    std::string name;
    std::vector<double> values;
};

struct ExperimentReport {
    std::string kind;
    ExperimentConfig config;
    std::vector<Parameter> parameters;
    std::vector<std::string> stat_names;
    std::vector<Record> records;  // replication-major, then increasing N
    std::vector<Metric> metrics;
    std::vector<Verdict> verdicts;
    long long discarded = 0;
    double duration_seconds = 0.0;

    bool passed() const {
        return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.passed; });
    }

    /// Statistic component `index` of every record with sample size n.
    std::vector<double> column(long long n, std::size_t index = 0) const {
        std::vector<double> out;
        for (const auto& r : records) {
            if (r.n == n) out.push_back(r.stats.at(index));
        }
        return out;
    }

    const Metric* metric(const std::string& name) const {
        for (const auto& m : metrics) {
            if (m.name == name) return &m;
        }
        return nullptr;
    }
};

inline int resolve_thread_count(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("RANDSET_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

/// Runs `body(replication)` for every replication, possibly in parallel, and
/// returns the results indexed by replication so the output does not depend
/// on scheduling. The first exception thrown by any worker is rethrown.
template <typename Result, typename Fn>
std::vector<Result> run_replications(long long replications, int threads, Fn&& body) {
    std::vector<Result> results(static_cast<std::size_t>(replications));
    const int workers = std::min<long long>(resolve_thread_count(threads), replications);
    std::atomic<long long> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        while (true) {
            const long long r = next.fetch_add(1);
            if (r >= replications) return;
            try {
                results[static_cast<std::size_t>(r)] = body(r);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(replications);
                return;
            }
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (int i = 0; i < workers; ++i) pool.emplace_back(work);
    }
    if (failure) std::rethrow_exception(failure);
    return results;
}

}  // namespace randset
