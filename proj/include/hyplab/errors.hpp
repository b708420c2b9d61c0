#pragma once

#include <stdexcept>
#include <string>

namespace hyplab {

// All recoverable failures carry a short machine-readable code next to the
// human message. The CLI maps codes to exit status: validation -> 2,
// numerical -> 3.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& msg)
        : std::runtime_error(msg), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& msg) : Error("validation", msg) {}
};

class OutOfRegion : public Error {
public:
    explicit OutOfRegion(const std::string& msg) : Error("out_of_region", msg) {}
};

class NonConvergent : public Error {
public:
    explicit NonConvergent(const std::string& msg) : Error("non_convergent", msg) {}
};

class EmptyRegion : public Error {
public:
    explicit EmptyRegion(const std::string& msg) : Error("empty_region", msg) {}
};

class ConvergenceFailure : public Error {
public:
    explicit ConvergenceFailure(const std::string& msg) : Error("convergence_failure", msg) {}
};

class OverflowGuard : public Error {
public:
    explicit OverflowGuard(const std::string& msg) : Error("overflow", msg) {}
};

class DegenerateField : public Error {
public:
    explicit DegenerateField(const std::string& msg) : Error("degenerate_field", msg) {}
};

class NonFinite : public Error {
public:
    explicit NonFinite(const std::string& msg) : Error("non_finite", msg) {}
};

class NoFeasiblePoint : public Error {
public:
    explicit NoFeasiblePoint(const std::string& msg) : Error("no_feasible_point", msg) {}
};

class InfeasibleCurvature : public Error {
public:
    explicit InfeasibleCurvature(const std::string& msg) : Error("infeasible_curvature", msg) {}
};

} // namespace hyplab
