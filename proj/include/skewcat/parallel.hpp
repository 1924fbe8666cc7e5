#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace skewcat {

/// Worker count used by the builders; 1 means run inline.
inline std::size_t& default_threads()
{
    static std::size_t n = 1;
    return n;
}

/// Runs body(begin, end) over contiguous chunks of [0, n). Each chunk
/// owns its output slots, so results do not depend on scheduling. The
/// first exception thrown by a chunk is rethrown here.
template <class Body>
void parallel_for(std::size_t n, Body&& body, std::size_t threads = default_threads())
{
    threads = std::max<std::size_t>(1, std::min(threads, n));
    if (threads <= 1) {
        if (n) body(std::size_t{0}, n);
        return;
    }
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    const std::size_t step = (n + threads - 1) / threads;
    for (std::size_t w = 0; w < threads; ++w) {
        const std::size_t b = w * step, e = std::min(n, b + step);
        if (b >= e) break;
        pool.emplace_back([&, w, b, e] {
            try {
                body(b, e);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

} // namespace skewcat
