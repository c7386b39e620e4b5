#ifndef MODELTH_PARALLEL_HPP
#define MODELTH_PARALLEL_HPP

#include <atomic>
#include <thread>
#include <vector>

namespace modelth {

/// Applies fn to 0..count-1 with up to `jobs` worker threads and returns the
/// results in index order, so the output is independent of the parallelism
/// degree. fn must not throw.
template <typename Result, typename Fn>
std::vector<Result> parallel_map(int count, int jobs, Fn fn) {
    std::vector<Result> out(count);
    if (jobs <= 1 || count <= 1) {
        for (int i = 0; i < count; i++) out[i] = fn(i);
        return out;
    }
    std::atomic<int> next{0};
    auto worker = [&]() {
        while (true) {
            int i = next.fetch_add(1);
            if (i >= count) return;
            out[i] = fn(i);
        }
    };
    std::vector<std::thread> pool;
    int threads = std::min(jobs, count);
    pool.reserve(threads);
    for (int t = 0; t < threads; t++) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    return out;
}

} // namespace modelth

#endif
