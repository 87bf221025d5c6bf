#include "trafficstl/parallel.hpp"

#include <charconv>
#include <cstdlib>
#include <string_view>

namespace trafficstl {

std::size_t default_thread_count() {
  if (const char* env = std::getenv("TRAFFIC_STL_THREADS")) {
    std::string_view s(env);
    std::size_t n = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
    if (ec == std::errc{} && ptr == s.data() + s.size() && n > 0) return n;
  }
  const auto hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace trafficstl
