#pragma once

#include "k3lat/io.hpp"
#include "k3lat/report.hpp"

#include <string>
#include <vector>

namespace k3r {

constexpr int schema_version = 1;

struct AnchoredCheck {
    k3lat::Check check;
    std::string anchor;   // claim label, or "plumbing"
};

struct Report {
    std::string scenario;
    std::vector<AnchoredCheck> checks;
    double runtime_s = 0;

    bool failed() const;
    k3lat::Json to_json(bool timing) const;
    std::string to_text(bool timing) const;
};

const std::vector<std::string>& scenario_names();
// Throws std::invalid_argument for an unknown name.
Report run_scenario(const std::string& name, long budget);

// Attach anchors: names in the plumbing list get "plumbing", the rest get `claim`.
void append(Report& r, const std::vector<k3lat::Check>& checks, const std::string& claim);

}  // namespace k3r
