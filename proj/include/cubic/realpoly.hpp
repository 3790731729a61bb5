#ifndef CUBIC_REALPOLY_HPP
#define CUBIC_REALPOLY_HPP

#include <Eigen/Dense>

#include <cstddef>
#include <map>
#include <vector>

#include "cubic/form.hpp"

namespace cubic {

using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

// Real multivariate polynomial, sparse exponent map, not necessarily
// homogeneous. These are the systems handed to the certified solver.
class RealPoly {
 public:
    using ExponentVec = std::vector<unsigned>;
    using TermMap = std::map<ExponentVec, double>;

    explicit RealPoly(std::size_t num_vars) : num_vars_(num_vars) {}

    static RealPoly from_form(const HomogeneousForm& f);
    // Substitutes x_var = 1 and drops the variable.
    static RealPoly dehomogenize(const HomogeneousForm& f, std::size_t var = 0);
    static RealPoly affine_linear(const RealVector& direction, const RealVector& base);

    std::size_t num_vars() const { return num_vars_; }
    const TermMap& terms() const { return terms_; }

    void add_term(const ExponentVec& exps, double coeff);
    double eval(const RealVector& x) const;
    RealPoly partial(std::size_t var) const;
    RealVector gradient(const RealVector& x) const;

    // Sum of |coefficient| * prod b_i^e_i: a majorant of |poly| on the box
    // |x_i| <= b_i.
    double coefficient_bound(const RealVector& b) const;

    // Max |coefficient|, the norm used for perturbation distances.
    double coefficient_norm() const;

    RealPoly operator+(const RealPoly& rhs) const;
    RealPoly operator*(double scalar) const;

 private:
    std::size_t num_vars_;
    TermMap terms_;
};

// Square or rectangular polynomial map R^n -> R^m.
class RealSystem {
 public:
    explicit RealSystem(std::vector<RealPoly> polys);

    std::size_t num_vars() const { return num_vars_; }
    std::size_t num_polys() const { return polys_.size(); }
    bool square() const { return polys_.size() == num_vars_; }
    const std::vector<RealPoly>& polys() const { return polys_; }

    RealVector eval(const RealVector& x) const;
    // Textbook Jacobian, (i, j) = d f_i / d x_j.
    RealMatrix jacobian(const RealVector& x) const;
    // The matrix acting on row vectors from the right in the update
    // x' = x - f(x) . J^{-1}: the transpose of the textbook Jacobian.
    RealMatrix jacobian_row_convention(const RealVector& x) const;

    const RealPoly& entry_partial(std::size_t i, std::size_t j) const {
        return partials_[i][j];
    }

 private:
    std::size_t num_vars_;
    std::vector<RealPoly> polys_;
    std::vector<std::vector<RealPoly>> partials_;  // partials_[i][j] = d f_i / d x_j
};

void require_finite(const RealVector& v, const char* what);

}  // namespace cubic

#endif
