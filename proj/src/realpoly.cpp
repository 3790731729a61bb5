#include "cubic/realpoly.hpp"

#include <cmath>

#include "cubic/errors.hpp"

namespace cubic {

RealPoly RealPoly::from_form(const HomogeneousForm& f) {
    RealPoly out(f.num_vars());
    for (const auto& [exps, coeff] : f.terms()) out.add_term(exps, coeff.get_d());
    return out;
}

RealPoly RealPoly::dehomogenize(const HomogeneousForm& f, std::size_t var) {
    if (var >= f.num_vars()) throw DimensionMismatch("dehomogenization variable out of range");
    RealPoly out(f.num_vars() - 1);
    for (const auto& [exps, coeff] : f.terms()) {
        ExponentVec rest;
        rest.reserve(exps.size() - 1);
        for (std::size_t i = 0; i < exps.size(); ++i)
            if (i != var) rest.push_back(exps[i]);
        out.add_term(rest, coeff.get_d());
    }
    return out;
}

RealPoly RealPoly::affine_linear(const RealVector& direction, const RealVector& base) {
    if (direction.size() != base.size()) throw DimensionMismatch("affine form shape mismatch");
    std::size_t n = static_cast<std::size_t>(direction.size());
    RealPoly out(n);
    for (std::size_t j = 0; j < n; ++j) {
        ExponentVec e(n, 0);
        e[j] = 1;
        out.add_term(e, direction[static_cast<Eigen::Index>(j)]);
    }
    out.add_term(ExponentVec(n, 0), -direction.dot(base));
    return out;
}

void RealPoly::add_term(const ExponentVec& exps, double coeff) {
    if (exps.size() != num_vars_) throw DimensionMismatch("exponent vector length mismatch");
    if (coeff == 0.0) return;
    auto it = terms_.find(exps);
    if (it == terms_.end()) {
        terms_.emplace(exps, coeff);
    } else {
        it->second += coeff;
        if (it->second == 0.0) terms_.erase(it);
    }
}

double RealPoly::eval(const RealVector& x) const {
    if (static_cast<std::size_t>(x.size()) != num_vars_)
        throw DimensionMismatch("evaluation point length mismatch");
    double acc = 0;
    for (const auto& [exps, coeff] : terms_) {
        double term = coeff;
        for (std::size_t i = 0; i < num_vars_; ++i)
            for (unsigned k = 0; k < exps[i]; ++k) term *= x[static_cast<Eigen::Index>(i)];
        acc += term;
    }
    return acc;
}

RealPoly RealPoly::partial(std::size_t var) const {
    RealPoly out(num_vars_);
    for (const auto& [exps, coeff] : terms_) {
        if (exps[var] == 0) continue;
        ExponentVec e = exps;
        double c = coeff * e[var];
        e[var] -= 1;
        out.add_term(e, c);
    }
    return out;
}

RealVector RealPoly::gradient(const RealVector& x) const {
    RealVector g(num_vars_);
    for (std::size_t j = 0; j < num_vars_; ++j)
        g[static_cast<Eigen::Index>(j)] = partial(j).eval(x);
    return g;
}

double RealPoly::coefficient_bound(const RealVector& b) const {
    double acc = 0;
    for (const auto& [exps, coeff] : terms_) {
        double term = std::fabs(coeff);
        for (std::size_t i = 0; i < num_vars_; ++i)
            for (unsigned k = 0; k < exps[i]; ++k) term *= b[static_cast<Eigen::Index>(i)];
        acc += term;
    }
    return acc;
}

double RealPoly::coefficient_norm() const {
    double m = 0;
    for (const auto& [exps, coeff] : terms_) m = std::max(m, std::fabs(coeff));
    return m;
}

RealPoly RealPoly::operator+(const RealPoly& rhs) const {
    if (num_vars_ != rhs.num_vars_) throw DimensionMismatch("poly addition shape mismatch");
    RealPoly out = *this;
    for (const auto& [exps, coeff] : rhs.terms_) out.add_term(exps, coeff);
    return out;
}

RealPoly RealPoly::operator*(double scalar) const {
    RealPoly out(num_vars_);
    for (const auto& [exps, coeff] : terms_) out.add_term(exps, coeff * scalar);
    return out;
}

RealSystem::RealSystem(std::vector<RealPoly> polys) : polys_(std::move(polys)) {
    if (polys_.empty()) throw ValidationError("empty polynomial system");
    num_vars_ = polys_[0].num_vars();
    for (const auto& p : polys_)
        if (p.num_vars() != num_vars_) throw DimensionMismatch("system variable count mismatch");
    partials_.resize(polys_.size());
    for (std::size_t i = 0; i < polys_.size(); ++i)
        for (std::size_t j = 0; j < num_vars_; ++j) partials_[i].push_back(polys_[i].partial(j));
}

RealVector RealSystem::eval(const RealVector& x) const {
    RealVector out(polys_.size());
    for (std::size_t i = 0; i < polys_.size(); ++i)
        out[static_cast<Eigen::Index>(i)] = polys_[i].eval(x);
    return out;
}

RealMatrix RealSystem::jacobian(const RealVector& x) const {
    RealMatrix j(polys_.size(), num_vars_);
    for (std::size_t i = 0; i < polys_.size(); ++i)
        for (std::size_t k = 0; k < num_vars_; ++k)
            j(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
                partials_[i][k].eval(x);
    return j;
}

RealMatrix RealSystem::jacobian_row_convention(const RealVector& x) const {
    return jacobian(x).transpose();
}

void require_finite(const RealVector& v, const char* what) {
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (!std::isfinite(v[i]))
            throw ValidationError(std::string(what) + " has a non-finite entry");
}

}  // namespace cubic
