#pragma once

#include "dpgamma/numeric.hpp"
#include "dpgamma/quantum_operator.hpp"

#include <string>
#include <vector>

namespace dpgamma {

// Element of H^*(S) for a del Pezzo surface, over [1, H, E_1..E_r, pt] for X_r,
// [1, h, pt] for P2 and [1, h1, h2, pt] for P1xP1.
struct CohClass {
    SurfaceId surface = SurfaceId::P2;
    std::vector<std::string> basis;
    std::vector<Real> coeffs;
};

struct ChernData {
    CohClass c1;
    int c1_squared = 0;      // c_1^2 as a multiple of pt
    int c2_coefficient = 0;  // Euler characteristic
};

std::vector<std::string> cohomology_basis(SurfaceId s);
ChernData chern_data(SurfaceId s);
CohClass gamma_surface(SurfaceId s);

// a0 + a1 h + a2 h^2, truncated at h^3.
struct TruncPoly {
    Real a0 = 1, a1 = 0, a2 = 0;
    Real operator[](int k) const { return k == 0 ? a0 : k == 1 ? a1 : a2; }
};
TruncPoly operator*(const TruncPoly& x, const TruncPoly& y);
TruncPoly trunc_exp(const Real& l1, const Real& l2);  // exp(l1 h + l2 h^2) mod h^3

enum class TwistedSectors { NotComputed };

struct OrbifoldGamma {
    TruncPoly untwisted;
    TwistedSectors twisted = TwistedSectors::NotComputed;
};

// weights is the full weight vector (1, w_1, .., w_N) of P(1, w_1, .., w_N); an empty list gives 1.
TruncPoly gamma_wps_untwisted(const std::vector<int>& weights);
OrbifoldGamma gamma_wps(const std::vector<int>& weights);
// Gamma class of the ambient restricted to a degree-d hypersurface (d = 0: no hypersurface).
TruncPoly gamma_hypersurface_ambient(const std::vector<int>& weights, int d);

}  // namespace dpgamma
