#pragma once

#include <atomic>
#include <cstddef>
#include <utility>

// Fork-join task pool with per-worker deques and work stealing.
//
// Entry points submitted via run() execute on pool workers; the caller
// blocks until completion. fork_join() and parallel_for() may only do real
// forking from inside the pool, so public algorithms wrap themselves in
// run() once at the top and fork freely below. All decomposition depends
// only on the input sizes, never on scheduling, so results are identical
// for any worker count.

namespace ist::par {

inline constexpr std::size_t default_grain = 2048;

namespace detail {

struct task_frame {
  void (*invoke)(task_frame*) = nullptr;
  std::atomic<bool> done{false};
};

template <class F>
struct closure_frame final : task_frame {
  F fn;
  explicit closure_frame(F f) : fn(std::move(f)) {
    invoke = [](task_frame* base) {
      auto* self = static_cast<closure_frame*>(base);
      self->fn();
      self->done.store(true, std::memory_order_release);
    };
  }
};

bool in_worker() noexcept;
void push_frame(task_frame* t);
// Pops t back off the local deque; false means a thief took it.
bool unpush_frame(task_frame* t) noexcept;
// Helps execute other tasks until t completes. Pool threads only.
void help_until_done(task_frame* t) noexcept;
void submit_blocking(task_frame* t);

}  // namespace detail

// Number of worker threads in the global pool (>= 1).
std::size_t worker_count() noexcept;

// Tears down the global pool and restarts it with n workers. Throws
// std::invalid_argument for n == 0. Must not race with in-flight work.
void set_workers(std::size_t n);

// Executes fn to completion. Off-pool callers block while the pool runs fn;
// calls from inside a worker, or with a single-worker pool, run inline.
template <class F>
void run(F&& fn) {
  if (detail::in_worker() || worker_count() <= 1) {
    fn();
    return;
  }
  detail::closure_frame frame{[&fn] { fn(); }};
  detail::submit_blocking(&frame);
}

// Runs both closures, potentially in parallel; returns after both finish.
template <class L, class R>
void fork_join(L&& left, R&& right) {
  if (worker_count() <= 1 || !detail::in_worker()) {
    left();
    right();
    return;
  }
  detail::closure_frame rhs{[&right] { right(); }};
  detail::push_frame(&rhs);
  left();
  if (detail::unpush_frame(&rhs)) {
    right();
  } else {
    detail::help_until_done(&rhs);
  }
}

namespace detail {

template <class F>
void pfor_impl(std::size_t lo, std::size_t hi, const F& body, std::size_t grain) {
  if (hi - lo <= grain) {
    for (std::size_t i = lo; i < hi; ++i) body(i);
    return;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  fork_join([&] { pfor_impl(lo, mid, body, grain); },
            [&] { pfor_impl(mid, hi, body, grain); });
}

}  // namespace detail

// Invokes body(i) exactly once for every i in [lo, hi); body invocations
// for distinct indices must be independent. Returns after all complete.
template <class F>
void parallel_for(std::size_t lo, std::size_t hi, F&& body,
                  std::size_t grain = default_grain) {
  if (lo >= hi) return;
  if (grain == 0) grain = 1;
  const F& ref = body;
  if (hi - lo <= grain || worker_count() <= 1) {
    for (std::size_t i = lo; i < hi; ++i) ref(i);
    return;
  }
  run([&] { detail::pfor_impl(lo, hi, ref, grain); });
}

}  // namespace ist::par
