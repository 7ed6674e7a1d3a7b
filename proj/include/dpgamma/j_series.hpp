#pragma once

#include "dpgamma/gw_tables.hpp"
#include "dpgamma/numeric.hpp"
#include "dpgamma/quantum_operator.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace dpgamma {

// One factor P(w_0, .., w_k) of the ambient space, with hyperplane class h_i.
struct AmbientFactor {
    std::vector<int> weights;
    int dim() const { return static_cast<int>(weights.size()) - 1; }
};

struct CIModel {
    std::string name;
    std::vector<AmbientFactor> factors;
    std::vector<std::vector<int>> degrees;  // one multidegree row per defining equation
    std::optional<SurfaceId> surface;
    int ambient_dim() const;
    int dim() const { return ambient_dim() - static_cast<int>(degrees.size()); }
    std::vector<int> index_form() const;  // restricted c_1 as a multiple of h_1..h_m
};

CIModel ci_model(SurfaceId s);                    // X1, X2, X3, X5, X6, X7, X8
CIModel wps_model(const std::vector<int>& weights);  // the ambient weighted projective space itself

// Element a + sum b_i h_i + sum_{i<=j} c_ij h_i h_j of the ambient ring truncated at degree 2.
struct AmbientClass {
    std::size_t m = 0;
    Real c0 = 0;
    std::vector<Real> c1;
    std::vector<Real> c2;  // upper triangle, row-major
    explicit AmbientClass(std::size_t vars = 0) : m(vars), c1(vars, Real(0)), c2(vars * (vars + 1) / 2, Real(0)) {}
    Real& quad(std::size_t i, std::size_t j);
    const Real& quad(std::size_t i, std::size_t j) const;
    AmbientClass& operator+=(const AmbientClass& o);
    AmbientClass& operator*=(const Real& s);
    Real max_abs() const;
};

class JSeries {
public:
    explicit JSeries(CIModel model);
    const CIModel& model() const { return model_; }
    const Rat& c0() const { return c0_; }  // scalar part of the t^1 coefficient
    std::vector<int> log_prefactor() const { return model_.index_form(); }
    // Coefficient of t^n, computed on demand.
    const AmbientClass& coefficient(std::size_t n);
    std::size_t computed() const { return coeffs_.size(); }

private:
    void extend(std::size_t n);
    CIModel model_;
    Rat c0_;
    std::vector<AmbientClass> coeffs_;
};

JSeries lefschetz_series(const CIModel& model, std::size_t n_max);

struct Evaluation {
    AmbientClass value;
    std::size_t terms = 0;
};
// e^{c_1 log t - C_0 t} sum_n coeff_n t^n, summed until the tail is below 10^-guard_digits relative.
// n_max = 0 keeps the constant term only, without a tail check.
Evaluation evaluate(JSeries& series, const Real& t, int guard_digits, std::size_t n_max);

// Gamma class of the cut (or ambient) space written in ambient classes, truncated at degree 2.
AmbientClass ambient_gamma(const CIModel& model);
// Components int_ambient alpha * x * [Y] over the test classes alpha; names in test_class_names.
std::vector<Real> pair_components(const CIModel& model, const AmbientClass& x);
std::vector<std::string> test_class_names(const CIModel& model);

struct GammaLimitPoint {
    Real t = 0;
    bool exhausted = false;
    std::size_t terms = 0;
    std::vector<Real> ratios;
    Real dispersion = 0;
};

struct GammaLimitOptions {
    std::size_t term_budget = 600;
    int guard_digits = 50;
    Real tol = Real("1e-9");
    Real threshold = Real("0.05");
    std::uint64_t seed = 42;
};

struct GammaLimitReport {
    std::string model;
    Real rho = 0;
    Rat c0;
    std::size_t term_budget = 0;
    std::vector<std::string> components;
    std::vector<Real> gamma_components;
    std::vector<bool> used;  // component above the floor
    std::vector<GammaLimitPoint> points;
    bool monotone = false;
    bool complete = false;  // no point ran out of terms
    Real final_dispersion = 0;
    std::optional<Real> growth_rate;
    Real threshold = 0;
    bool holds() const { return complete && monotone && final_dispersion <= threshold; }
};

inline const std::vector<double>& default_t_grid() {
    static const std::vector<double> g{10, 15, 20, 25, 30};
    return g;
}

GammaLimitReport gamma_limit_report(SurfaceId s, const std::vector<Real>& t_grid, const GWTable* table,
                                    const GammaLimitOptions& opt = {});
GammaLimitReport gamma_limit_report(const std::vector<int>& weights, const std::vector<Real>& t_grid,
                                    const GammaLimitOptions& opt = {});
GammaLimitReport gamma_limit_report(const CIModel& model, const Real& rho, const std::vector<Real>& t_grid,
                                    const GammaLimitOptions& opt);

// Terms sufficient at growth rate K (= rho + C_0) and parameter t.
std::size_t auto_term_budget(const Real& growth, const Real& t);

}  // namespace dpgamma
