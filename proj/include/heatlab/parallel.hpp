#ifndef HEATLAB_PARALLEL_HPP
#define HEATLAB_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace heatlab
{

/// Worker cap for embarrassingly parallel loops. 0 = hardware concurrency.
struct Parallelism
{
  unsigned threads = 1;

  unsigned resolved() const
  {
    if (threads > 0)
      return threads;
    unsigned const hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
  }
};

/// Calls fn(i) for i in [0, count). Work is handed out dynamically; results
/// must be written to per-index slots so the outcome is independent of the
/// thread count. The first exception thrown by any worker is rethrown.
template <typename Fn>
void parallel_for(std::size_t count, Parallelism par, Fn &&fn)
{
  unsigned const workers = std::min<std::size_t>(par.resolved(), count);
  if (workers <= 1)
  {
    for (std::size_t i = 0; i < count; ++i)
      fn(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&]() {
    for (;;)
    {
      std::size_t const i = next.fetch_add(1);
      if (i >= count)
        return;
      try
      {
        fn(i);
      }
      catch (...)
      {
        std::lock_guard lock(failure_mutex);
        if (!failure)
          failure = std::current_exception();
        next = count;
        return;
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (unsigned w = 1; w < workers; ++w)
    pool.emplace_back(work);
  work();
  for (auto &t : pool)
    t.join();
  if (failure)
    std::rethrow_exception(failure);
}

} // namespace heatlab

#endif // HEATLAB_PARALLEL_HPP
