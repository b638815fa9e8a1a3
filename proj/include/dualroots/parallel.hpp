#ifndef DUALROOTS_PARALLEL_HPP
#define DUALROOTS_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <exception>
#include <optional>
#include <thread>
#include <type_traits>
#include <vector>

namespace dualroots {

/**
 * Applies fn to every item on up to `jobs` threads. Results come back in input
 * order, and the first exception by input index is rethrown, so the outcome
 * does not depend on the thread count or on scheduling.
 */
template <class In, class Fn>
auto parallel_map(const std::vector<In>& items, Fn&& fn, int jobs = 1)
    -> std::vector<std::invoke_result_t<Fn&, const In&>>
{
    using Out = std::invoke_result_t<Fn&, const In&>;
    const std::size_t count = items.size();
    std::vector<std::optional<Out>> slots(count);
    std::vector<std::exception_ptr> errors(count);

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                slots[i].emplace(fn(items[i]));
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };

    const std::size_t threads = std::min<std::size_t>(static_cast<std::size_t>(std::max(1, jobs)), count);
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (std::size_t t = 0; t < threads; ++t)
            pool.emplace_back(worker);
        for (auto& th : pool)
            th.join();
    }

    for (const auto& e : errors)
        if (e)
            std::rethrow_exception(e);
    std::vector<Out> out;
    out.reserve(count);
    for (auto& s : slots)
        out.push_back(std::move(*s));
    return out;
}

} // namespace dualroots

#endif // DUALROOTS_PARALLEL_HPP
