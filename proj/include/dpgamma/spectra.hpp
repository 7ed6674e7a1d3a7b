#pragma once

#include "dpgamma/exact_linalg.hpp"

#include <optional>
#include <vector>

namespace dpgamma {

struct Eigenvalue {
    Complex value;
    unsigned multiplicity = 1;
    bool is_real = false;
    std::optional<RootInterval> interval;  // exact isolating interval for real eigenvalues
    Real radius = 0;                       // certified inclusion radius for non-real eigenvalues
};

struct SpectrumReport {
    std::vector<Eigenvalue> eigenvalues;  // sorted by decreasing modulus, then decreasing real part
    Real rho = 0;
    bool rho_is_eigenvalue = false;
    unsigned rho_multiplicity = 0;
    RatPoly characteristic;
};

struct PropertyOCertificate {
    bool holds = false;
    Real rho = 0;
    bool rho_is_eigenvalue = false;
    bool rho_simple = false;
    unsigned rho_multiplicity = 0;
    std::vector<Complex> modulus_rho_eigenvalues;
    unsigned fano_index = 1;
    bool part2_holds = false;
};

SpectrumReport spectrum(const QMatrix& m, const Real& tol);
PropertyOCertificate property_o_certificate(const QMatrix& m, unsigned fano_index, const Real& tol);

// All roots of p (with repetition) by Aberth-Ehrlich iteration at working precision.
std::vector<Complex> polynomial_roots(const RatPoly& p);

}  // namespace dpgamma
