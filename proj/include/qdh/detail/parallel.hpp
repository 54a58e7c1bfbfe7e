// parallel.hpp — chunked parallel loops with deterministic reductions

#pragma once

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace qdh::detail {

/// Resolve worker count: explicit request > DISCORD_WORKERS env > hardware.
inline int resolve_workers(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("DISCORD_WORKERS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

/// Max-reduce eval(i) over [0, n). Ties and float determinism: every index is
/// evaluated identically regardless of scheduling, and the merge prefers the
/// strictly greater value, then the lower index, so the result is
/// scheduling-independent.
template <typename Eval>
std::pair<double, long> parallel_argmax(long n, int workers, Eval&& eval) {
    workers = std::min<long>(resolve_workers(workers), std::max<long>(n, 1));
    if (n <= 0) return {0.0, -1};

    std::vector<std::pair<double, long>> best(workers, {-1.0, -1});
    auto run = [&](int w) {
        const long lo = n * w / workers, hi = n * (w + 1) / workers;
        double bv = -1.0;
        long bi = -1;
        for (long i = lo; i < hi; ++i) {
            const double v = eval(i);
            if (v > bv) {
                bv = v;
                bi = i;
            }
        }
        best[w] = {bv, bi};
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) pool.emplace_back(run, w);
        for (auto& t : pool) t.join();
    }
    std::pair<double, long> out{-1.0, -1};
    for (const auto& b : best) {
        if (b.second < 0) continue;
        if (b.first > out.first || (b.first == out.first && b.second < out.second) || out.second < 0)
            out = b;
    }
    return out;
}

/// Top-k values of eval(i) over [0, n), ordered by value descending then
/// index ascending. Deterministic for the same reason as parallel_argmax.
template <typename Eval>
std::vector<std::pair<double, long>> parallel_topk(long n, int k, int workers, Eval&& eval) {
    workers = std::min<long>(resolve_workers(workers), std::max<long>(n, 1));
    if (n <= 0 || k <= 0) return {};
    k = static_cast<int>(std::min<long>(k, n));

    auto better = [](const std::pair<double, long>& a, const std::pair<double, long>& b) {
        return a.first > b.first || (a.first == b.first && a.second < b.second);
    };
    std::vector<std::vector<std::pair<double, long>>> tops(workers);
    auto run = [&](int w) {
        const long lo = n * w / workers, hi = n * (w + 1) / workers;
        auto& top = tops[w];
        for (long i = lo; i < hi; ++i) {
            std::pair<double, long> cand{eval(i), i};
            if (static_cast<int>(top.size()) < k) {
                top.insert(std::upper_bound(top.begin(), top.end(), cand, better), cand);
            } else if (better(cand, top.back())) {
                top.pop_back();
                top.insert(std::upper_bound(top.begin(), top.end(), cand, better), cand);
            }
        }
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) pool.emplace_back(run, w);
        for (auto& t : pool) t.join();
    }
    std::vector<std::pair<double, long>> merged;
    for (auto& t : tops) merged.insert(merged.end(), t.begin(), t.end());
    std::sort(merged.begin(), merged.end(), better);
    if (static_cast<int>(merged.size()) > k) merged.resize(k);
    return merged;
}

/// Apply fn(i) over [0, n) in parallel, results collected in index order.
template <typename T, typename Fn>
std::vector<T> parallel_map(long n, int workers, Fn&& fn) {
    workers = std::min<long>(resolve_workers(workers), std::max<long>(n, 1));
    std::vector<T> out(static_cast<size_t>(std::max<long>(n, 0)));
    if (n <= 0) return out;
    auto run = [&](int w) {
        for (long i = w; i < n; i += workers) out[static_cast<size_t>(i)] = fn(i);
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) pool.emplace_back(run, w);
        for (auto& t : pool) t.join();
    }
    return out;
}

}  // namespace qdh::detail
