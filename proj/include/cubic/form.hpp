#ifndef CUBIC_FORM_HPP
#define CUBIC_FORM_HPP

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "cubic/point.hpp"
#include "cubic/qlinalg.hpp"
#include "cubic/rational.hpp"

namespace cubic {

// Homogeneous polynomial over Q in a sparse exponent-vector representation.
// Cubic forms in many variables have few terms in practice, so a map keyed
// by exponent vectors keeps every operation an explicit term walk and gives
// a canonical term order for free.
class HomogeneousForm {
 public:
    using ExponentVec = std::vector<unsigned>;
    using TermMap = std::map<ExponentVec, Rational>;

    HomogeneousForm(std::size_t num_vars, unsigned degree);

    static HomogeneousForm monomial(std::size_t num_vars, const ExponentVec& exps,
                                    const Rational& coeff);
    // Linear form c . x from a coefficient vector.
    static HomogeneousForm linear(const std::vector<Rational>& coeffs);

    std::size_t num_vars() const { return num_vars_; }
    unsigned degree() const { return degree_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const ExponentVec& exps, const Rational& coeff);
    Rational coefficient(const ExponentVec& exps) const;

    Rational evaluate(const std::vector<Rational>& x) const;
    Rational evaluate(const ProjectivePoint& p) const;
    double evaluate_double(const std::vector<double>& x) const;

    std::vector<Rational> gradient(const std::vector<Rational>& x) const;
    std::vector<Rational> gradient(const ProjectivePoint& p) const;

    HomogeneousForm partial(std::size_t var) const;

    // Coefficient vector of a degree-1 form.
    std::vector<Rational> linear_coefficients() const;

    HomogeneousForm operator+(const HomogeneousForm& rhs) const;
    HomogeneousForm operator-(const HomogeneousForm& rhs) const;
    HomogeneousForm operator*(const HomogeneousForm& rhs) const;
    HomogeneousForm operator*(const Rational& scalar) const;
    HomogeneousForm operator-() const;

    bool operator==(const HomogeneousForm& rhs) const;
    bool operator!=(const HomogeneousForm& rhs) const { return !(*this == rhs); }

    std::string to_string() const;  // human-readable, for diagnostics

 private:
    std::size_t num_vars_;
    unsigned degree_;
    TermMap terms_;
};

// ---- forms-core operations ----

Rational evaluate_form(const HomogeneousForm& f, const ProjectivePoint& p);
std::vector<Rational> gradient_at(const HomogeneousForm& f, const ProjectivePoint& p);
SymmetricMatrix hessian_at(const HomogeneousForm& f, const ProjectivePoint& p);

// (F o T)(x) = F(T x); degree and variable count preserved.
HomogeneousForm apply_linear_change(const HomogeneousForm& f, const LinearChange& t);

// General substitution x = M y with M of shape (num_vars x new_vars);
// returns a form in new_vars variables.
HomogeneousForm compose_with_matrix(const HomogeneousForm& f, const QMatrix& m);

struct RestrictionResult {
    HomogeneousForm restricted;   // form in num_vars - 1 variables
    QMatrix embedding;            // (num_vars x (num_vars - 1)); restricted = F o embedding
    std::size_t eliminated_var;
};

// Eliminates the variable carrying the largest-magnitude coefficient of the
// linear form L, substituting the hyperplane L = 0 into F.
RestrictionResult restrict_to_hyperplane(const HomogeneousForm& f, const HomogeneousForm& l);

}  // namespace cubic

#endif
