#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <optional>
#include <thread>
#include <vector>

namespace amitsur {

// Evaluates f on [0, count) split into `jobs` contiguous ranges and returns
// the non-empty results in index order, independent of the worker count.
template <class T, class F>
std::vector<T> parallel_collect(std::uint64_t count, unsigned jobs, F&& f) {
    jobs = std::max(1u, jobs);
    if (jobs == 1 || count < 2 * jobs) {
        std::vector<T> out;
        for (std::uint64_t i = 0; i < count; ++i)
            if (auto v = f(i)) out.push_back(std::move(*v));
        return out;
    }
    std::vector<std::vector<T>> parts(jobs);
    std::vector<std::exception_ptr> errors(jobs);
    std::vector<std::thread> workers;
    const std::uint64_t chunk = (count + jobs - 1) / jobs;
    for (unsigned w = 0; w < jobs; ++w) {
        workers.emplace_back([&, w] {
            try {
                const std::uint64_t lo = w * chunk, hi = std::min(count, lo + chunk);
                for (std::uint64_t i = lo; i < hi; ++i)
                    if (auto v = f(i)) parts[w].push_back(std::move(*v));
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : workers) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    std::vector<T> out;
    for (auto& p : parts)
        for (auto& v : p) out.push_back(std::move(v));
    return out;
}

}  // namespace amitsur
