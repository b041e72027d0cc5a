#pragma once

#include <sstream>
#include <stdexcept>
#include <string>

namespace ellbeta {

struct CheckError : std::runtime_error {
    explicit CheckError(const std::string& msg) : std::runtime_error(msg) {}
};

[[noreturn]] inline void check_fail(const char* expr, const char* file, int line,
                                    const std::string& detail) {
    std::ostringstream os;
    os << file << ":" << line << ": check failed: " << expr;
    if (!detail.empty()) os << " (" << detail << ")";
    throw CheckError(os.str());
}

}  // namespace ellbeta

#define ELLBETA_CHECK(cond)                                             \
    do {                                                                \
        if (!(cond)) ::ellbeta::check_fail(#cond, __FILE__, __LINE__, {}); \
    } while (0)

#define ELLBETA_CHECK_MSG(cond, detail)                                      \
    do {                                                                     \
        if (!(cond)) {                                                       \
            std::ostringstream os_;                                          \
            os_ << detail;                                                   \
            ::ellbeta::check_fail(#cond, __FILE__, __LINE__, os_.str());     \
        }                                                                    \
    } while (0)
