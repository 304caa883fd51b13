#include <doctest.h>

#include <algorithm>
#include <atomic>
#include <numeric>
#include <thread>
#include <vector>

#include "ist/parallel.hpp"

using namespace ist;

TEST_CASE("parallel_for empty range is a no-op") {
  int calls = 0;
  par::parallel_for(0, 0, [&](std::size_t) { ++calls; });
  CHECK(calls == 0);
}

TEST_CASE("parallel_for identity fill") {
  std::vector<std::size_t> out(4);
  par::parallel_for(0, 4, [&](std::size_t i) { out[i] = i; });
  CHECK(out == std::vector<std::size_t>{0, 1, 2, 3});
}

TEST_CASE("parallel_for touches every index exactly once") {
  constexpr std::size_t n = 1'000'000;
  for (std::size_t workers : {std::size_t{1}, std::size_t{4}}) {
    par::set_workers(workers);
    std::vector<std::uint8_t> cells(n, 0);
    par::parallel_for(0, n, [&](std::size_t i) { cells[i] += 1; }, 1024);
    const auto total =
        std::accumulate(cells.begin(), cells.end(), std::size_t{0});
    CHECK(total == n);
    CHECK(*std::min_element(cells.begin(), cells.end()) == 1);
    CHECK(*std::max_element(cells.begin(), cells.end()) == 1);
  }
  par::set_workers(4);
}

TEST_CASE("fork_join runs both sides to completion") {
  par::set_workers(4);
  std::atomic<int> sum{0};
  par::run([&] {
    par::fork_join([&] { sum.fetch_add(1); }, [&] { sum.fetch_add(2); });
  });
  CHECK(sum.load() == 3);
}

TEST_CASE("nested fork_join computes fibonacci") {
  par::set_workers(4);
  struct Fib {
    static long compute(int n) {
      if (n < 2) return n;
      long a = 0, b = 0;
      par::fork_join([&] { a = compute(n - 1); }, [&] { b = compute(n - 2); });
      return a + b;
    }
  };
  long result = 0;
  par::run([&] { result = Fib::compute(18); });
  CHECK(result == 2584);
}

TEST_CASE("set_workers rejects zero") {
  CHECK_THROWS(par::set_workers(0));
}

TEST_CASE("concurrent external submissions are safe") {
  par::set_workers(4);
  std::vector<std::size_t> a(50'000), b(50'000);
  std::thread t1([&] {
    par::parallel_for(0, a.size(), [&](std::size_t i) { a[i] = i * 2; }, 512);
  });
  std::thread t2([&] {
    par::parallel_for(0, b.size(), [&](std::size_t i) { b[i] = i * 3; }, 512);
  });
  t1.join();
  t2.join();
  CHECK(a[12345] == 24690);
  CHECK(b[12345] == 37035);
}
