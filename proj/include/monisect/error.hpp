#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace monisect {

// Every domain failure carries a stable machine-readable code plus free-form
// detail, and optionally the offending items (element names, a violating
// triple). The CLI maps codes onto its JSON error schema and exit codes.
class error : public std::runtime_error {
public:
    error(std::string code, const std::string& detail, std::vector<std::string> items = {})
        : std::runtime_error(code + ": " + detail),
          code_(std::move(code)),
          items_(std::move(items)) {}

    const std::string& code() const noexcept { return code_; }
    const std::vector<std::string>& items() const noexcept { return items_; }

private:
    std::string code_;
    std::vector<std::string> items_;
};

[[noreturn]] inline void fail(std::string code, const std::string& detail,
                              std::vector<std::string> items = {}) {
    throw error(std::move(code), detail, std::move(items));
}

} // namespace monisect
