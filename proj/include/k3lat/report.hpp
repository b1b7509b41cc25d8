#pragma once

#include <string>
#include <vector>

namespace k3lat {

struct Check {
    std::string name;
    std::string status;   // "pass", "fail" or "inconclusive"
    std::string expected;
    std::string computed;

    bool passed() const { return status == "pass"; }
    bool failed() const { return status == "fail"; }
};

inline Check make_check(std::string name, bool ok, std::string expected = "", std::string computed = "") {
    return {std::move(name), ok ? "pass" : "fail", std::move(expected), std::move(computed)};
}

}  // namespace k3lat
