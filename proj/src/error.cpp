#include "simclass/error.hpp"

#include "simclass/bigint.hpp"

namespace simclass {

const char* errc_name(Errc code) noexcept
{
    switch (code) {
    case Errc::NonUnit: return "NonUnit";
    case Errc::DigitOutOfRange: return "DigitOutOfRange";
    case Errc::BadLevel: return "BadLevel";
    case Errc::CtxMismatch: return "CtxMismatch";
    case Errc::NotInvertible: return "NotInvertible";
    case Errc::BadParams: return "BadParams";
    case Errc::SearchBudgetExceeded: return "SearchBudgetExceeded";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::WrongResidueType: return "WrongResidueType";
    case Errc::NotHardCase: return "NotHardCase";
    case Errc::NonIntegralDivision: return "NonIntegralDivision";
    case Errc::Parse: return "Parse";
    case Errc::Io: return "Io";
    case Errc::Internal: return "Internal";
    }
    return "Unknown";
}

void fail(Errc code, const std::string& what)
{
    throw Error(code, what);
}

BigInt exact_div(const BigInt& num, const BigInt& den)
{
    if (den == 0) fail(Errc::NonIntegralDivision, "division by zero");
    BigInt quo, rem;
    boost::multiprecision::divide_qr(num, den, quo, rem);
    if (rem != 0) fail(Errc::NonIntegralDivision, num.str() + " is not divisible by " + den.str());
    return quo;
}

} // namespace simclass
