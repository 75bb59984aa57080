#include "svort/parallel.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace svort {

void run_blocks(int blocks, const std::function<void(int)>& fn, unsigned threads) {
    if (blocks <= 0) return;
    unsigned want = threads ? threads : std::thread::hardware_concurrency();
    if (want == 0) want = 1;
    if (want > static_cast<unsigned>(blocks)) want = static_cast<unsigned>(blocks);

    if (want == 1) {
        for (int b = 0; b < blocks; ++b) fn(b);
        return;
    }

    std::atomic<int> next{0};
    std::exception_ptr first_error;
    std::mutex error_mu;

    auto worker = [&] {
        for (;;) {
            const int b = next.fetch_add(1, std::memory_order_relaxed);
            if (b >= blocks) return;
            try {
                fn(b);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mu);
                if (!first_error) first_error = std::current_exception();
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(want);
    for (unsigned i = 0; i < want; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace svort
