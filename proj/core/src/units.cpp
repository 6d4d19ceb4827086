#include "raimsim/error.hpp"

#include <atomic>
#include <iostream>
#include <mutex>

namespace raimsim {

namespace {
std::atomic<bool> g_warnings{true};
std::mutex g_warn_mutex;
}

void warn(const std::string& msg)
{
    if (!g_warnings.load())
        return;
    std::lock_guard<std::mutex> lock(g_warn_mutex);
    std::cerr << "warning: " << msg << '\n';
}

void set_warnings_enabled(bool on) { g_warnings.store(on); }

} // namespace raimsim
