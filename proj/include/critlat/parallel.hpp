#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace critlat {

  //! Runs body(i) for i in [0, n) on up to `threads` workers. Each index is
  //! visited exactly once; callers write results into slot i so the output is
  //! independent of scheduling. The first exception (by index) is rethrown.
  template <typename Body>
  void parallel_for(std::size_t n, unsigned threads, Body&& body) {
    unsigned const workers
        = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
    if (workers <= 1) {
      for (std::size_t i = 0; i < n; ++i) {
        body(i);
      }
      return;
    }
    std::atomic<std::size_t> next{0};
    std::mutex               mtx;
    std::exception_ptr       error;
    std::size_t              error_index = n;
    auto work = [&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mtx);
          if (i < error_index) {
            error_index = i;
            error       = std::current_exception();
          }
        }
      }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) {
      pool.emplace_back(work);
    }
    work();
    for (auto& t : pool) {
      t.join();
    }
    if (error) {
      std::rethrow_exception(error);
    }
  }

}  // namespace critlat
