#pragma once

#include <stdexcept>
#include <string>

namespace subdiff {

// Thrown when an iterative or adaptive routine stops short of its accuracy
// target. Carries both tolerances so callers can report how far off we were.
class convergence_error : public std::runtime_error {
public:
    convergence_error(const std::string& what, double achieved, double requested)
        : std::runtime_error(what), achieved_(achieved), requested_(requested) {}

    double achieved() const noexcept { return achieved_; }
    double requested() const noexcept { return requested_; }

private:
    double achieved_;
    double requested_;
};

// Explicit time stepping refuses to run outside its stability region.
class stability_error : public std::runtime_error {
public:
    stability_error(const std::string& what, double admissible_step)
        : std::runtime_error(what), admissible_step_(admissible_step) {}

    double admissible_step() const noexcept { return admissible_step_; }

private:
    double admissible_step_;
};

// A sampler exhausted its step budget before the target event occurred.
class budget_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace subdiff
