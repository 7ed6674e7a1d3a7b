#pragma once

#include <boost/multiprecision/complex_adaptor.hpp>
#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <stdexcept>
#include <string>

namespace dpgamma {

namespace mp = boost::multiprecision;

// Exact rationals (GMP mpq, always canonical) and 60-digit MPFR reals.
using Rat = mp::mpq_rational;
using BigInt = mp::mpz_int;

inline constexpr unsigned kWorkingDigits = 60;
using Real = mp::number<mp::mpfr_float_backend<kWorkingDigits>, mp::et_off>;
using Complex = mp::number<mp::complex_adaptor<mp::mpfr_float_backend<kWorkingDigits>>, mp::et_off>;

inline Real to_real(const Rat& q) { return Real(q); }

// Euler-Mascheroni constant and zeta(2) = pi^2/6, 75 significant digits.
// Values from the Brent-McMillan series and the Basel sum; tests recompute both.
inline const Real& euler_gamma() {
    static const Real v("0.577215664901532860606512090082402431042159335939923598805767234884867726778");
    return v;
}
inline const Real& zeta2() {
    static const Real v("1.6449340668482264364724151666460251892189499012067984377355582293700074704");
    return v;
}

// Exit-code category for the CLI: data/usage problems versus failed numerical findings.
enum class ErrorCategory { Data, Finding };

class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what, ErrorCategory cat)
        : std::runtime_error(kind + ": " + what), kind_(std::move(kind)), cat_(cat) {}
    const std::string& kind() const noexcept { return kind_; }
    ErrorCategory category() const noexcept { return cat_; }

private:
    std::string kind_;
    ErrorCategory cat_;
};

#define DPGAMMA_ERROR(Name, Cat)                                                \
    class Name : public Error {                                                 \
    public:                                                                     \
        explicit Name(const std::string& what) : Error(#Name, what, Cat) {}     \
    };

DPGAMMA_ERROR(SingularTransform, ErrorCategory::Data)
DPGAMMA_ERROR(ConvergenceFailure, ErrorCategory::Finding)
DPGAMMA_ERROR(Inconclusive, ErrorCategory::Finding)
DPGAMMA_ERROR(NotNonnegative, ErrorCategory::Data)
DPGAMMA_ERROR(NotIrreducible, ErrorCategory::Data)
DPGAMMA_ERROR(TemplateMismatch, ErrorCategory::Data)
DPGAMMA_ERROR(MixedSurfaces, ErrorCategory::Data)
DPGAMMA_ERROR(NeedsThreePoints, ErrorCategory::Data)
DPGAMMA_ERROR(IndexOutOfRange, ErrorCategory::Data)
DPGAMMA_ERROR(DegreeTooLarge, ErrorCategory::Data)
DPGAMMA_ERROR(ParseError, ErrorCategory::Data)
DPGAMMA_ERROR(SymmetryViolation, ErrorCategory::Data)
DPGAMMA_ERROR(SeedMismatch, ErrorCategory::Data)
DPGAMMA_ERROR(MissingEntry, ErrorCategory::Data)
DPGAMMA_ERROR(NotBuiltin, ErrorCategory::Data)
DPGAMMA_ERROR(IndexNotPositive, ErrorCategory::Data)
DPGAMMA_ERROR(NoMirrorAvailable, ErrorCategory::Data)
DPGAMMA_ERROR(NotProper, ErrorCategory::Data)
DPGAMMA_ERROR(IncompleteEnumeration, ErrorCategory::Finding)
DPGAMMA_ERROR(UnsupportedModel, ErrorCategory::Data)
DPGAMMA_ERROR(PrecisionExhausted, ErrorCategory::Finding)

#undef DPGAMMA_ERROR

}  // namespace dpgamma
