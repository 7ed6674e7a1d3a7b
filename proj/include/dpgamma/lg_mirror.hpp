#pragma once

#include "dpgamma/numeric.hpp"
#include "dpgamma/quantum_operator.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace dpgamma {

class LaurentPoly {
public:
    explicit LaurentPoly(std::size_t nvars) : n_(nvars) {}
    void add_term(const std::vector<int>& exponent, const Real& coeff);

    std::size_t nvars() const { return n_; }
    const std::map<std::vector<int>, Real>& terms() const { return terms_; }
    Complex eval(const std::vector<Complex>& z) const;
    Real eval_log(const std::vector<Real>& u) const;  // f(e^u)
    std::string to_string() const;

private:
    std::size_t n_;
    std::map<std::vector<int>, Real> terms_;
};

LaurentPoly builtin_potential(SurfaceId s);
// Mirror of P(1, w_1, .., w_N): x_1 + .. + x_N + 1/(x_1^{w_1} .. x_N^{w_N}); weights is the full vector.
LaurentPoly builtin_potential(const std::vector<int>& weights);

// Normalized volume of the Newton polytope (number of critical points of a generic potential).
std::size_t expected_critical_count(const LaurentPoly& f);

struct ConifoldReport {
    std::vector<Real> z_con;
    Real T_con = 0;
    bool certified = false;
    Real gradient_norm = 0;
    Real min_hessian_pivot = 0;
    unsigned iterations = 0;
};
ConifoldReport conifold_point(const LaurentPoly& f, const Real& tol);

struct CriticalPoint {
    std::vector<Complex> point;
    Complex value;
};
inline constexpr std::size_t kDefaultStarts = 200;
std::vector<CriticalPoint> critical_points(const LaurentPoly& f, std::uint64_t seed, const Real& tol,
                                           std::size_t starts = kDefaultStarts);

struct WpsClosedForm {
    int index = 0;  // r_X = sum of weights
    Real c = 0;
    std::vector<std::vector<Complex>> points;  // p_0 .. p_{r_X - 1}
};
WpsClosedForm wps_closed_form(const std::vector<int>& weights);

struct BModelOReport {
    std::vector<Complex> critical_values;
    Real T_con = 0;
    ConifoldReport conifold;
    bool cond1 = false;
    bool cond2 = false;
    bool holds() const { return cond1 && cond2; }
};
BModelOReport bmodel_o_check(const LaurentPoly& f, const Real& tol, std::uint64_t seed = 42);

struct SpectrumMatch {
    bool matched = false;
    bool multiplicities_align = false;
    Real max_deviation = 0;
    std::vector<std::pair<Complex, Complex>> pairs;  // (eigenvalue, critical value)
};
SpectrumMatch mirror_spectrum_match(SurfaceId s, const Real& tol, std::uint64_t seed = 42);

// Minimum-cost perfect matching; returns column assigned to each row.
std::vector<std::size_t> hungarian(const std::vector<std::vector<double>>& cost);

}  // namespace dpgamma
