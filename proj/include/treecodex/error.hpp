#pragma once

#include <stdexcept>
#include <string>

namespace treecodex {

enum class Errc {
    InvalidInput,
    CycleFound,
    NoPathToRoot,
    BoundExceeded,
    MalformedToken,
    MalformedCode,
    NotATree,
    PreconditionViolated,
    StepBudgetExceeded,
    NotACycle,
    InvalidForest,
};

const char* errc_name(Errc e) noexcept;

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace treecodex
