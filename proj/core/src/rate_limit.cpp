#include "docadopt/rate_limit.hpp"

#include <algorithm>

#include "docadopt/errors.hpp"

namespace docadopt {

RateLimiter::RateLimiter(double per_minute, double burst)
    : per_second_(per_minute / 60.0), capacity_(burst > 0.0 ? burst : std::max(1.0, per_minute / 6.0)), tokens_(capacity_) {
  if (per_minute < 0.0) throw InvalidArgument("rate limit must be non-negative");
}

bool RateLimiter::try_acquire(Clock::time_point now) {
  if (per_second_ == 0.0) return true;
  std::lock_guard lock(mutex_);
  if (initialized_ && now > last_) {
    tokens_ = std::min(capacity_, tokens_ + std::chrono::duration<double>(now - last_).count() * per_second_);
  }
  if (!initialized_ || now > last_) last_ = now;
  initialized_ = true;
  if (tokens_ < 1.0) return false;
  tokens_ -= 1.0;
  return true;
}

}  // namespace docadopt
