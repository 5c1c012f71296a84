#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace zzc {

/// Thrown when an enumeration exceeds its node budget.
class BudgetExceeded : public std::runtime_error
{
  public:
    explicit BudgetExceeded(const std::string &what) : std::runtime_error(what) {}
};

/// Global node budget, overridable through ZZC_BUDGET.
inline std::size_t default_budget()
{
    if (const char *env = std::getenv("ZZC_BUDGET"))
    {
        try
        {
            return static_cast<std::size_t>(std::stoull(env));
        }
        catch (const std::exception &)
        {
        }
    }
    return 20'000'000;
}

/// Splits [0, n) into contiguous chunks and runs fn(begin, end, chunk) on up
/// to `jobs` threads. Chunk boundaries depend only on n and the chunk count,
/// so callers that merge per-chunk results in chunk order are deterministic.
template <class Fn>
void parallel_chunks(std::size_t n, unsigned jobs, std::size_t chunks, Fn &&fn)
{
    if (n == 0)
        return;
    chunks = std::max<std::size_t>(1, std::min(chunks, n));
    auto bound = [&](std::size_t c) { return n * c / chunks; };
    if (jobs <= 1 || chunks == 1)
    {
        for (std::size_t c = 0; c < chunks; ++c)
            fn(bound(c), bound(c + 1), c);
        return;
    }
    std::vector<std::exception_ptr> errors(chunks);
    std::vector<std::thread> pool;
    std::size_t workers = std::min<std::size_t>(jobs, chunks);
    std::vector<std::vector<std::size_t>> assignment(workers);
    for (std::size_t c = 0; c < chunks; ++c)
        assignment[c % workers].push_back(c);
    for (std::size_t w = 0; w < workers; ++w)
    {
        pool.emplace_back([&, w] {
            for (auto c : assignment[w])
            {
                try
                {
                    fn(bound(c), bound(c + 1), c);
                }
                catch (...)
                {
                    errors[c] = std::current_exception();
                }
            }
        });
    }
    for (auto &t : pool)
        t.join();
    for (auto &e : errors)
        if (e)
            std::rethrow_exception(e);
}

/// Number of chunks used by the engines; fixed so that output never depends
/// on the worker count.
inline constexpr std::size_t kWorkChunks = 64;

} // namespace zzc
