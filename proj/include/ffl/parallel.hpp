#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace ffl {

// Runs fn(begin, end) on contiguous blocks of [0, n). Results must be written per index,
// so the outcome does not depend on the worker count.
template <class Fn>
void parallel_blocks(std::size_t n, int workers, Fn fn) {
    std::size_t w = static_cast<std::size_t>(std::max(1, workers));
    w = std::min(w, std::max<std::size_t>(n, 1));
    if (w == 1) {
        fn(std::size_t{0}, n);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(w);
    for (std::size_t t = 0; t < w; ++t) {
        std::size_t b = n * t / w, e = n * (t + 1) / w;
        pool.emplace_back([&, t, b, e] {
            try {
                fn(b, e);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& err : errors)
        if (err) std::rethrow_exception(err);
}

}  // namespace ffl
