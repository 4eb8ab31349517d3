#ifndef MQAP_CLOCK_HPP
#define MQAP_CLOCK_HPP

#include <atomic>
#include <chrono>

namespace mqap {

using Duration = std::chrono::nanoseconds;

/// Monotonic time source injected into everything that honours a budget.
class Clock {
 public:
  virtual ~Clock() = default;
  [[nodiscard]] virtual Duration now() = 0;
};

class SteadyClock final : public Clock {
 public:
  [[nodiscard]] Duration now() override {
    return std::chrono::duration_cast<Duration>(std::chrono::steady_clock::now().time_since_epoch());
  }
};

/// Advances by a fixed tick on every reading, independent of real time.
class LogicalClock final : public Clock {
 public:
  explicit LogicalClock(Duration tick = std::chrono::milliseconds(1)) : tick_(tick.count()) {}
  [[nodiscard]] Duration now() override { return Duration(ticks_.fetch_add(tick_, std::memory_order_relaxed)); }

 private:
  Duration::rep tick_;
  std::atomic<Duration::rep> ticks_{0};
};

}  // namespace mqap

#endif  // MQAP_CLOCK_HPP
