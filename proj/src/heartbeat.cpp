#include "quolat/heartbeat.hpp"

#include <mutex>

namespace quolat {

namespace {
std::mutex mu;
std::function<void(const std::string&)> current;
}  // namespace

void set_heartbeat(std::function<void(const std::string&)> sink) {
  std::lock_guard lock(mu);
  current = std::move(sink);
}

void heartbeat(const std::string& message) {
  std::lock_guard lock(mu);
  if (current) {
    current(message);
  }
}

bool heartbeat_enabled() {
  std::lock_guard lock(mu);
  return static_cast<bool>(current);
}

}  // namespace quolat
