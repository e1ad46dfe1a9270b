#pragma once

#include <stdexcept>
#include <string>

namespace simclass {

enum class Errc {
    NonUnit,
    DigitOutOfRange,
    BadLevel,
    CtxMismatch,
    NotInvertible,
    BadParams,
    SearchBudgetExceeded,
    BudgetExceeded,
    WrongResidueType,
    NotHardCase,
    NonIntegralDivision,
    Parse,
    Io,
    Internal,
};

const char* errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] void fail(Errc code, const std::string& what);

} // namespace simclass
