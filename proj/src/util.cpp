#include "tropint/util.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace tropint {

namespace {

std::atomic<int> g_threads{0};

int initial_threads() {
    if (const char* env = std::getenv("TROPINT_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
    return 1;
}

}  // namespace

int max_threads() {
    int t = g_threads.load();
    if (t == 0) {
        t = initial_threads();
        g_threads.store(t);
    }
    return t;
}

void set_max_threads(int n) { g_threads.store(n >= 1 ? n : 1); }

void parallel_for(size_t n, const std::function<void(size_t)>& fn) {
    int workers = max_threads();
    if (workers <= 1 || n <= 1) {
        for (size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<size_t> next{0};
    auto run = [&]() {
        for (size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
    };
    std::vector<std::thread> pool;
    size_t count = std::min<size_t>(static_cast<size_t>(workers), n);
    for (size_t w = 1; w < count; ++w) pool.emplace_back(run);
    run();
    for (auto& t : pool) t.join();
}

}  // namespace tropint
