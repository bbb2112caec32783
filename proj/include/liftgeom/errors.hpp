#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace liftgeom {

// Malformed or out-of-contract input (CLI exit code 2).
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct HypothesisCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

// The computation ran but a mathematical hypothesis or check failed
// (CLI exit code 1). Carries the full checklist when one was evaluated.
class HypothesisViolation : public std::runtime_error {
public:
    explicit HypothesisViolation(const std::string& what, std::vector<HypothesisCheck> checks = {})
        : std::runtime_error(what), checks_(std::move(checks))
    {
    }

    const std::vector<HypothesisCheck>& checks() const noexcept { return checks_; }

private:
    std::vector<HypothesisCheck> checks_;
};

// An internal invariant was broken; always a bug in this library.
class ConsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace liftgeom
