#pragma once

#include <stdexcept>
#include <string>

namespace plancherel {

// Error taxonomy: parameter_error for rejected inputs (CLI exit 3),
// computation_error for numeric failures (CLI exit 4). The code string is a
// stable machine-readable identifier ("NonMonotoneRows", "BudgetNotMet", ...).
class error : public std::runtime_error {
public:
    error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

class parameter_error : public error {
public:
    using error::error;
};

class computation_error : public error {
public:
    using error::error;
};

}  // namespace plancherel
