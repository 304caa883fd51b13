#include "ist/parallel.hpp"

#include <condition_variable>
#include <deque>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <vector>

namespace ist::par {
namespace detail {
namespace {

struct WorkerQueue {
  std::mutex mu;
  std::deque<task_frame*> tasks;
};

class Pool {
 public:
  explicit Pool(std::size_t n) : queues_(n) {
    for (auto& q : queues_) q = std::make_unique<WorkerQueue>();
    threads_.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
      threads_.emplace_back([this, i] { worker_main(i); });
  }

  ~Pool() {
    stop_.store(true, std::memory_order_release);
    {
      std::lock_guard<std::mutex> lk(idle_mu_);
      idle_cv_.notify_all();
    }
    for (auto& t : threads_) t.join();
  }

  std::size_t size() const noexcept { return queues_.size(); }

  void push_local(std::size_t idx, task_frame* t) {
    {
      std::lock_guard<std::mutex> lk(queues_[idx]->mu);
      queues_[idx]->tasks.push_back(t);
    }
    pending_.fetch_add(1, std::memory_order_release);
    wake_one();
  }

  bool unpush_local(std::size_t idx, task_frame* t) noexcept {
    std::lock_guard<std::mutex> lk(queues_[idx]->mu);
    auto& q = queues_[idx]->tasks;
    if (!q.empty() && q.back() == t) {
      q.pop_back();
      pending_.fetch_sub(1, std::memory_order_relaxed);
      return true;
    }
    return false;
  }

  void inject(task_frame* t) {
    {
      std::lock_guard<std::mutex> lk(inject_mu_);
      injected_.push_back(t);
    }
    pending_.fetch_add(1, std::memory_order_release);
    wake_one();
  }

  task_frame* find_task(std::size_t self) noexcept {
    {
      std::lock_guard<std::mutex> lk(queues_[self]->mu);
      auto& q = queues_[self]->tasks;
      if (!q.empty()) {
        task_frame* t = q.back();
        q.pop_back();
        pending_.fetch_sub(1, std::memory_order_relaxed);
        return t;
      }
    }
    {
      std::lock_guard<std::mutex> lk(inject_mu_);
      if (!injected_.empty()) {
        task_frame* t = injected_.front();
        injected_.pop_front();
        pending_.fetch_sub(1, std::memory_order_relaxed);
        return t;
      }
    }
    const std::size_t n = queues_.size();
    for (std::size_t k = 1; k < n; ++k) {
      const std::size_t victim = (self + k) % n;
      std::lock_guard<std::mutex> lk(queues_[victim]->mu);
      auto& q = queues_[victim]->tasks;
      if (!q.empty()) {
        task_frame* t = q.front();
        q.pop_front();
        pending_.fetch_sub(1, std::memory_order_relaxed);
        return t;
      }
    }
    return nullptr;
  }

  void help_one_or_yield(std::size_t self) noexcept {
    if (task_frame* t = find_task(self))
      t->invoke(t);
    else
      std::this_thread::yield();
  }

 private:
  void wake_one() {
    std::lock_guard<std::mutex> lk(idle_mu_);
    idle_cv_.notify_one();
  }

  void worker_main(std::size_t idx);

  std::vector<std::unique_ptr<WorkerQueue>> queues_;
  std::vector<std::thread> threads_;
  std::mutex inject_mu_;
  std::deque<task_frame*> injected_;
  std::atomic<std::size_t> pending_{0};
  std::atomic<bool> stop_{false};
  std::mutex idle_mu_;
  std::condition_variable idle_cv_;
};

thread_local Pool* tl_pool = nullptr;
thread_local std::size_t tl_index = 0;

void Pool::worker_main(std::size_t idx) {
  tl_pool = this;
  tl_index = idx;
  int misses = 0;
  while (!stop_.load(std::memory_order_acquire)) {
    if (task_frame* t = find_task(idx)) {
      misses = 0;
      t->invoke(t);
      continue;
    }
    if (++misses < 64) {
      std::this_thread::yield();
      continue;
    }
    std::unique_lock<std::mutex> lk(idle_mu_);
    idle_cv_.wait(lk, [this] {
      return stop_.load(std::memory_order_acquire) ||
             pending_.load(std::memory_order_acquire) > 0;
    });
    misses = 0;
  }
}

std::mutex g_pool_mu;
std::unique_ptr<Pool> g_pool;

Pool& global_pool() {
  std::lock_guard<std::mutex> lk(g_pool_mu);
  if (!g_pool) {
    std::size_t n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    g_pool = std::make_unique<Pool>(n);
  }
  return *g_pool;
}

}  // namespace

bool in_worker() noexcept { return tl_pool != nullptr; }

void push_frame(task_frame* t) { tl_pool->push_local(tl_index, t); }

bool unpush_frame(task_frame* t) noexcept {
  return tl_pool->unpush_local(tl_index, t);
}

void help_until_done(task_frame* t) noexcept {
  while (!t->done.load(std::memory_order_acquire))
    tl_pool->help_one_or_yield(tl_index);
}

void submit_blocking(task_frame* t) {
  struct Sync {
    std::mutex mu;
    std::condition_variable cv;
    bool finished = false;
  } sync;

  struct Envelope final : task_frame {
    task_frame* inner;
    Sync* sync;
  } env;
  env.inner = t;
  env.sync = &sync;
  env.invoke = [](task_frame* base) {
    auto* e = static_cast<Envelope*>(base);
    e->inner->invoke(e->inner);
    e->done.store(true, std::memory_order_release);
    // The waiter owns env and sync; after the flag flips under the lock it
    // may destroy both, so notify inside the critical section and never
    // touch them again.
    Sync* s = e->sync;
    std::lock_guard<std::mutex> lk(s->mu);
    s->finished = true;
    s->cv.notify_one();
  };

  global_pool().inject(&env);
  std::unique_lock<std::mutex> lk(sync.mu);
  sync.cv.wait(lk, [&sync] { return sync.finished; });
}

}  // namespace detail

std::size_t worker_count() noexcept {
  if (detail::tl_pool) return detail::tl_pool->size();
  return detail::global_pool().size();
}

void set_workers(std::size_t n) {
  if (n == 0) throw std::invalid_argument("worker count must be at least 1");
  if (detail::in_worker())
    throw std::logic_error("set_workers called from inside the pool");
  std::lock_guard<std::mutex> lk(detail::g_pool_mu);
  detail::g_pool.reset();
  detail::g_pool = std::make_unique<detail::Pool>(n);
}

}  // namespace ist::par
