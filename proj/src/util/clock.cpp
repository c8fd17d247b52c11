#include "reviewkit/util/clock.hpp"

#include <cstdio>
#include <ctime>
#include <thread>

namespace reviewkit {

std::string format_utc(Clock::time_point tp) {
    std::time_t t = std::chrono::system_clock::to_time_t(tp);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ",
                  tm.tm_year + 1900, tm.tm_mon + 1, tm.tm_mday,
                  tm.tm_hour, tm.tm_min, tm.tm_sec);
    return buf;
}

void RealSleeper::sleep_for(std::chrono::milliseconds d) {
    std::this_thread::sleep_for(d);
}

} // namespace reviewkit
