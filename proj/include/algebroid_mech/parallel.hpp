#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace algebroid_mech
{

/// Worker count for sweeps. Reads ALGEBROID_MECH_THREADS (0 or unset = hardware concurrency).
unsigned sweepThreads();

/// Runs body(i) for i in [0, n). Each index is written by exactly one worker, so callers
/// store per-index results and reduce afterwards in index order.
template <class Body>
void parallel_for(std::size_t n, Body&& body)
{
  const unsigned workers = std::min<std::size_t>(sweepThreads(), std::max<std::size_t>(n, 1));
  if (workers <= 1 || n < 2)
  {
    for (std::size_t i = 0; i < n; ++i)
    {
      body(i);
    }
    return;
  }

  std::exception_ptr failure;
  std::mutex failureMutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w)
  {
    pool.emplace_back([&, w] {
      try
      {
        for (std::size_t i = w; i < n; i += workers)
        {
          body(i);
        }
      }
      catch (...)
      {
        std::lock_guard<std::mutex> lock(failureMutex);
        if (!failure)
        {
          failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool)
  {
    t.join();
  }
  if (failure)
  {
    std::rethrow_exception(failure);
  }
}

}  // namespace algebroid_mech
