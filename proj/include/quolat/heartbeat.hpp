#ifndef QUOLAT_HEARTBEAT_HPP
#define QUOLAT_HEARTBEAT_HPP

#include <functional>
#include <string>

namespace quolat {

// Process-wide progress sink for long computations; silent by default.
void set_heartbeat(std::function<void(const std::string&)> sink);
void heartbeat(const std::string& message);
bool heartbeat_enabled();

}  // namespace quolat

#endif  // QUOLAT_HEARTBEAT_HPP
