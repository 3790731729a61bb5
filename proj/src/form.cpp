#include "cubic/form.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "cubic/errors.hpp"

namespace cubic {

HomogeneousForm::HomogeneousForm(std::size_t num_vars, unsigned degree)
    : num_vars_(num_vars), degree_(degree) {
    if (num_vars == 0) throw ValidationError("form needs at least one variable");
}

HomogeneousForm HomogeneousForm::monomial(std::size_t num_vars, const ExponentVec& exps,
                                          const Rational& coeff) {
    unsigned deg = std::accumulate(exps.begin(), exps.end(), 0u);
    HomogeneousForm f(num_vars, deg);
    f.add_term(exps, coeff);
    return f;
}

HomogeneousForm HomogeneousForm::linear(const std::vector<Rational>& coeffs) {
    HomogeneousForm f(coeffs.size(), 1);
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        ExponentVec e(coeffs.size(), 0);
        e[i] = 1;
        f.add_term(e, coeffs[i]);
    }
    return f;
}

void HomogeneousForm::add_term(const ExponentVec& exps, const Rational& coeff) {
    if (exps.size() != num_vars_) throw DimensionMismatch("exponent vector length mismatch");
    if (std::accumulate(exps.begin(), exps.end(), 0u) != degree_)
        throw ValidationError("exponent vector does not sum to the form degree");
    if (coeff == 0) return;
    auto it = terms_.find(exps);
    if (it == terms_.end()) {
        terms_.emplace(exps, coeff);
    } else {
        it->second += coeff;
        if (it->second == 0) terms_.erase(it);
    }
}

Rational HomogeneousForm::coefficient(const ExponentVec& exps) const {
    auto it = terms_.find(exps);
    return it == terms_.end() ? Rational(0) : it->second;
}

template <typename Scalar>
static Scalar power(const Scalar& base, unsigned e) {
    Scalar r = 1;
    for (unsigned i = 0; i < e; ++i) r *= base;
    return r;
}

Rational HomogeneousForm::evaluate(const std::vector<Rational>& x) const {
    if (x.size() != num_vars_) throw DimensionMismatch("evaluation point length mismatch");
    Rational acc(0);
    for (const auto& [exps, coeff] : terms_) {
        Rational term = coeff;
        for (std::size_t i = 0; i < num_vars_; ++i)
            if (exps[i]) term *= power(x[i], exps[i]);
        acc += term;
    }
    return acc;
}

Rational HomogeneousForm::evaluate(const ProjectivePoint& p) const {
    if (p.num_vars() != num_vars_) throw DimensionMismatch("point dimension mismatch");
    Rational acc(0);
    for (const auto& [exps, coeff] : terms_) {
        Integer mono(1);
        for (std::size_t i = 0; i < num_vars_; ++i)
            if (exps[i]) mono *= power(p[i], exps[i]);
        acc += coeff * Rational(mono);
    }
    return acc;
}

double HomogeneousForm::evaluate_double(const std::vector<double>& x) const {
    if (x.size() != num_vars_) throw DimensionMismatch("evaluation point length mismatch");
    double acc = 0;
    for (const auto& [exps, coeff] : terms_) {
        double term = coeff.get_d();
        for (std::size_t i = 0; i < num_vars_; ++i)
            for (unsigned k = 0; k < exps[i]; ++k) term *= x[i];
        acc += term;
    }
    return acc;
}

HomogeneousForm HomogeneousForm::partial(std::size_t var) const {
    if (var >= num_vars_) throw DimensionMismatch("partial w.r.t. an unknown variable");
    if (degree_ == 0) return HomogeneousForm(num_vars_, 0);
    HomogeneousForm out(num_vars_, degree_ - 1);
    for (const auto& [exps, coeff] : terms_) {
        if (exps[var] == 0) continue;
        ExponentVec e = exps;
        Rational c = coeff * Rational(static_cast<long>(e[var]));
        e[var] -= 1;
        out.add_term(e, c);
    }
    return out;
}

std::vector<Rational> HomogeneousForm::gradient(const std::vector<Rational>& x) const {
    std::vector<Rational> g;
    g.reserve(num_vars_);
    for (std::size_t i = 0; i < num_vars_; ++i) g.push_back(partial(i).evaluate(x));
    return g;
}

std::vector<Rational> HomogeneousForm::gradient(const ProjectivePoint& p) const {
    std::vector<Rational> g;
    g.reserve(num_vars_);
    for (std::size_t i = 0; i < num_vars_; ++i) g.push_back(partial(i).evaluate(p));
    return g;
}

std::vector<Rational> HomogeneousForm::linear_coefficients() const {
    if (degree_ != 1) throw ValidationError("coefficient vector requested for a non-linear form");
    std::vector<Rational> coeffs(num_vars_, Rational(0));
    for (const auto& [exps, coeff] : terms_) {
        for (std::size_t i = 0; i < num_vars_; ++i)
            if (exps[i] == 1) coeffs[i] = coeff;
    }
    return coeffs;
}

HomogeneousForm HomogeneousForm::operator+(const HomogeneousForm& rhs) const {
    if (num_vars_ != rhs.num_vars_ || degree_ != rhs.degree_)
        throw DimensionMismatch("form addition shape mismatch");
    HomogeneousForm out = *this;
    for (const auto& [exps, coeff] : rhs.terms_) out.add_term(exps, coeff);
    return out;
}

HomogeneousForm HomogeneousForm::operator-(const HomogeneousForm& rhs) const {
    return *this + (-rhs);
}

HomogeneousForm HomogeneousForm::operator-() const {
    HomogeneousForm out(num_vars_, degree_);
    for (const auto& [exps, coeff] : terms_) out.terms_.emplace(exps, -coeff);
    return out;
}

HomogeneousForm HomogeneousForm::operator*(const HomogeneousForm& rhs) const {
    if (num_vars_ != rhs.num_vars_) throw DimensionMismatch("form product shape mismatch");
    HomogeneousForm out(num_vars_, degree_ + rhs.degree_);
    for (const auto& [ea, ca] : terms_)
        for (const auto& [eb, cb] : rhs.terms_) {
            ExponentVec e(num_vars_);
            for (std::size_t i = 0; i < num_vars_; ++i) e[i] = ea[i] + eb[i];
            out.add_term(e, ca * cb);
        }
    return out;
}

HomogeneousForm HomogeneousForm::operator*(const Rational& scalar) const {
    HomogeneousForm out(num_vars_, degree_);
    if (scalar == 0) return out;
    for (const auto& [exps, coeff] : terms_) out.terms_.emplace(exps, coeff * scalar);
    return out;
}

bool HomogeneousForm::operator==(const HomogeneousForm& rhs) const {
    return num_vars_ == rhs.num_vars_ && degree_ == rhs.degree_ && terms_ == rhs.terms_;
}

std::string HomogeneousForm::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [exps, coeff] : terms_) {
        if (!first) out << " + ";
        first = false;
        out << rational_to_string(coeff);
        for (std::size_t i = 0; i < num_vars_; ++i) {
            if (!exps[i]) continue;
            out << "*x" << i;
            if (exps[i] > 1) out << "^" << exps[i];
        }
    }
    return out.str();
}

// ---- operations ----

Rational evaluate_form(const HomogeneousForm& f, const ProjectivePoint& p) {
    return f.evaluate(p);
}

std::vector<Rational> gradient_at(const HomogeneousForm& f, const ProjectivePoint& p) {
    return f.gradient(p);
}

SymmetricMatrix hessian_at(const HomogeneousForm& f, const ProjectivePoint& p) {
    if (p.num_vars() != f.num_vars()) throw DimensionMismatch("point dimension mismatch");
    std::size_t n = f.num_vars();
    QMatrix h(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        HomogeneousForm fi = f.partial(i);
        for (std::size_t j = i; j < n; ++j) {
            Rational v = fi.partial(j).evaluate(p);
            h.at(i, j) = v;
            h.at(j, i) = v;
        }
    }
    return SymmetricMatrix(std::move(h));
}

HomogeneousForm compose_with_matrix(const HomogeneousForm& f, const QMatrix& m) {
    if (m.rows() != f.num_vars()) throw DimensionMismatch("substitution matrix shape mismatch");
    std::size_t new_vars = m.cols();
    if (new_vars == 0) throw DimensionMismatch("substitution into zero variables");

    // Row i of m, read as a linear form in the new variables, replaces x_i.
    std::vector<HomogeneousForm> rows;
    rows.reserve(f.num_vars());
    for (std::size_t i = 0; i < f.num_vars(); ++i) {
        std::vector<Rational> coeffs(new_vars);
        for (std::size_t j = 0; j < new_vars; ++j) coeffs[j] = m.at(i, j);
        rows.push_back(HomogeneousForm::linear(coeffs));
    }

    HomogeneousForm out(new_vars, f.degree());
    for (const auto& [exps, coeff] : f.terms()) {
        HomogeneousForm mono(new_vars, 0);
        mono.add_term(HomogeneousForm::ExponentVec(new_vars, 0), Rational(1));
        for (std::size_t i = 0; i < f.num_vars(); ++i)
            for (unsigned k = 0; k < exps[i]; ++k) mono = mono * rows[i];
        out = out + mono * coeff;
    }
    return out;
}

HomogeneousForm apply_linear_change(const HomogeneousForm& f, const LinearChange& t) {
    if (t.dim() != f.num_vars()) throw DimensionMismatch("coordinate change shape mismatch");
    return compose_with_matrix(f, t.matrix());
}

RestrictionResult restrict_to_hyperplane(const HomogeneousForm& f, const HomogeneousForm& l) {
    if (l.degree() != 1) throw ValidationError("hyperplane must be a linear form");
    if (l.num_vars() != f.num_vars()) throw DimensionMismatch("hyperplane dimension mismatch");
    if (l.is_zero()) throw ValidationError("hyperplane form is identically zero");
    if (f.num_vars() < 2) throw ValidationError("cannot restrict a form in one variable");

    std::vector<Rational> coeffs = l.linear_coefficients();
    // Eliminate the variable with the largest-magnitude coefficient: a
    // deterministic choice that keeps denominators small.
    std::size_t k = 0;
    Rational best(-1);
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        Rational mag = abs(coeffs[i]);
        if (mag > best) { best = mag; k = i; }
    }

    // Embedding of the hyperplane: the j-th remaining variable maps to
    // e_j - (L_j / L_k) e_k.
    std::size_t m = f.num_vars();
    QMatrix embed(m, m - 1);
    std::size_t col = 0;
    for (std::size_t j = 0; j < m; ++j) {
        if (j == k) continue;
        embed.at(j, col) = 1;
        embed.at(k, col) = -coeffs[j] / coeffs[k];
        ++col;
    }
    return RestrictionResult{compose_with_matrix(f, embed), embed, k};
}

}  // namespace cubic
