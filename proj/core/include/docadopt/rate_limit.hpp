#pragma once

#include <chrono>
#include <mutex>

namespace docadopt {

/// Token bucket refilled continuously at `per_minute` tokens per minute, with
/// capacity `burst`. A rate of 0 disables limiting.
class RateLimiter {
 public:
  using Clock = std::chrono::steady_clock;

  explicit RateLimiter(double per_minute, double burst = 0.0);

  /// Takes one token if available.
  bool try_acquire(Clock::time_point now = Clock::now());

 private:
  double per_second_;
  double capacity_;
  double tokens_;
  Clock::time_point last_;
  bool initialized_ = false;
  std::mutex mutex_;
};

}  // namespace docadopt
