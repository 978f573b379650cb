#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace crispec {

// f(i) for i in [0, n), strided over `threads` workers; f must only write its own slots.
template <class F>
void parallel_for(std::size_t n, unsigned threads, F f)
{
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
    if (threads == 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&, t] {
            for (std::size_t i = t; i < n; i += threads) f(i);
        });
    for (auto& th : pool) th.join();
}

}  // namespace crispec
