#include "cubic/geometry.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>

#include "cubic/errors.hpp"
#include "cubic/intfactor.hpp"

namespace cubic {

// ---------------------------------------------------------------------
// lines
// ---------------------------------------------------------------------

ProjectiveLine ProjectiveLine::through(const ProjectivePoint& p, const ProjectivePoint& q) {
    if (p.num_vars() != q.num_vars()) throw DimensionMismatch("line through mismatched points");
    if (p == q) throw ValidationError("line needs two distinct points");
    std::size_t m = p.num_vars();
    QMatrix rows(2, m);
    for (std::size_t j = 0; j < m; ++j) {
        rows.at(0, j) = Rational(p[j]);
        rows.at(1, j) = Rational(q[j]);
    }
    QMatrix r = rows.rref();
    // two nonzero rows, each scaled to a primitive integer vector
    std::vector<std::vector<Integer>> basis;
    for (std::size_t i = 0; i < 2; ++i) {
        Integer lcm = 1;
        for (std::size_t j = 0; j < m; ++j)
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), r.at(i, j).get_den().get_mpz_t());
        std::vector<Integer> v(m);
        bool nonzero = false;
        for (std::size_t j = 0; j < m; ++j) {
            Rational scaled = r.at(i, j) * Rational(lcm);
            v[j] = scaled.get_num();
            nonzero = nonzero || v[j] != 0;
        }
        if (!nonzero) throw ValidationError("degenerate line basis");
        basis.push_back(std::move(v));
    }
    return ProjectiveLine(ProjectivePoint(basis[0]), ProjectivePoint(basis[1]));
}

namespace {
std::size_t pivot_index(const ProjectivePoint& p) {
    for (std::size_t j = 0; j < p.num_vars(); ++j)
        if (p[j] != 0) return j;
    throw ContractViolation("zero point");
}
}  // namespace

std::pair<Integer, Integer> ProjectiveLine::parameter_of(const ProjectivePoint& p) const {
    if (p.num_vars() != num_vars()) throw DimensionMismatch("point dimension mismatch");
    std::size_t ia = pivot_index(a_), ib = pivot_index(b_);
    // RREF rows: each pivot column is zero in the other row.
    Rational alpha = Rational(p[ia]) / Rational(a_[ia]);
    Rational beta = Rational(p[ib]) / Rational(b_[ib]);
    for (std::size_t j = 0; j < num_vars(); ++j) {
        if (alpha * Rational(a_[j]) + beta * Rational(b_[j]) != Rational(p[j]))
            throw ValidationError("point " + p.to_string() + " is not on the line");
    }
    std::vector<Integer> par{alpha.get_num() * beta.get_den(), beta.get_num() * alpha.get_den()};
    canonicalize_primitive(par);
    return {par[0], par[1]};
}

bool ProjectiveLine::contains(const ProjectivePoint& p) const {
    try {
        parameter_of(p);
        return true;
    } catch (const ValidationError&) {
        return false;
    }
}

ProjectivePoint ProjectiveLine::point_at(const Integer& alpha, const Integer& beta) const {
    std::vector<Integer> coords(num_vars());
    for (std::size_t j = 0; j < num_vars(); ++j) coords[j] = alpha * a_[j] + beta * b_[j];
    return ProjectivePoint(std::move(coords));
}

// ---------------------------------------------------------------------
// binary cubic restriction and factorization
// ---------------------------------------------------------------------

std::vector<Rational> restrict_to_line(const HomogeneousForm& f, const ProjectiveLine& line) {
    if (line.num_vars() != f.num_vars()) throw DimensionMismatch("line dimension mismatch");
    QMatrix m(f.num_vars(), 2);
    for (std::size_t j = 0; j < f.num_vars(); ++j) {
        m.at(j, 0) = Rational(line.basis_a()[j]);
        m.at(j, 1) = Rational(line.basis_b()[j]);
    }
    HomogeneousForm g = compose_with_matrix(f, m);
    std::vector<Rational> coeffs(f.degree() + 1, Rational(0));
    for (const auto& [exps, coeff] : g.terms()) coeffs[exps[1]] = coeff;
    return coeffs;
}

namespace {

unsigned binary_degree(const std::vector<Rational>& c) {
    return static_cast<unsigned>(c.size()) - 1;
}

bool binary_is_zero(const std::vector<Rational>& c) {
    for (const auto& x : c)
        if (x != 0) return false;
    return true;
}

Rational eval_binary(const std::vector<Rational>& c, const Integer& s, const Integer& t) {
    unsigned d = binary_degree(c);
    Rational acc(0);
    for (unsigned k = 0; k <= d; ++k) {
        if (c[k] == 0) continue;
        Integer mono = 1;
        for (unsigned i = 0; i < d - k; ++i) mono *= s;
        for (unsigned i = 0; i < k; ++i) mono *= t;
        acc += c[k] * Rational(mono);
    }
    return acc;
}

// Removes one factor (beta s - alpha t), which vanishes at (alpha : beta).
// Returns false when the division is not exact.
bool deflate_binary(std::vector<Rational>& c, const Integer& alpha, const Integer& beta) {
    unsigned d = binary_degree(c);
    if (d == 0) return false;
    std::vector<Rational> h(d, Rational(0));
    if (beta == 0) {
        if (c[0] != 0) return false;
        for (unsigned k = 0; k < d; ++k) h[k] = c[k + 1];
    } else if (alpha == 0) {
        if (c[d] != 0) return false;
        for (unsigned k = 0; k < d; ++k) h[k] = c[k];
    } else {
        Rational b(beta), a(alpha);
        h[0] = c[0] / b;
        for (unsigned k = 1; k < d; ++k) h[k] = (c[k] + a * h[k - 1]) / b;
        if (c[d] != -a * h[d - 1]) return false;
    }
    c = std::move(h);
    return true;
}

// One rational root of the binary form, if any. Deterministic scan:
// the two coordinate roots first, then the rational root theorem on the
// primitive integer model.
std::optional<std::pair<Integer, Integer>> find_binary_root(const std::vector<Rational>& c) {
    unsigned d = binary_degree(c);
    if (binary_is_zero(c)) return std::nullopt;
    if (d == 0) return std::nullopt;
    if (c[0] == 0) return std::make_pair(Integer(1), Integer(0));
    if (c[d] == 0) return std::make_pair(Integer(0), Integer(1));
    if (d == 1) {
        // c0 s + c1 t vanishes at (-c1 : c0)
        Rational a = -c[1], b = c[0];
        std::vector<Integer> v{a.get_num() * b.get_den(), b.get_num() * a.get_den()};
        canonicalize_primitive(v);
        return std::make_pair(v[0], v[1]);
    }
    // primitive integer model
    Integer lcm = 1;
    for (const auto& q : c) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den().get_mpz_t());
    std::vector<Integer> ic(d + 1);
    Integer content = 0;
    for (unsigned k = 0; k <= d; ++k) {
        Rational scaled = c[k] * Rational(lcm);
        ic[k] = scaled.get_num();
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), ic[k].get_mpz_t());
    }
    for (auto& z : ic) z /= content;

    std::vector<Integer> num_divs = positive_divisors(ic[d]);
    std::vector<Integer> den_divs = positive_divisors(ic[0]);
    std::sort(num_divs.begin(), num_divs.end());
    std::sort(den_divs.begin(), den_divs.end());
    std::vector<Rational> cint(ic.begin(), ic.end());
    for (const auto& b : den_divs)
        for (const auto& a : num_divs) {
            Integer g;
            mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
            if (g != 1) continue;
            // representations are canonicalized (first entry positive) so a
            // root found along different paths always gets the same key
            if (eval_binary(cint, a, b) == 0) return std::make_pair(a, b);
            if (eval_binary(cint, -a, b) == 0) return std::make_pair(a, Integer(-b));
        }
    return std::nullopt;
}

}  // namespace

unsigned LineDivisor::total_degree() const {
    unsigned d = 0;
    for (const auto& [p, m] : rational_points) d += m;
    for (const auto& [deg, m] : irrational_part) d += deg * m;
    return d;
}

bool LineDivisor::contains(const ProjectivePoint& p, unsigned min_mult) const {
    for (const auto& [q, m] : rational_points)
        if (q == p) return m >= min_mult;
    return false;
}

std::string LineDivisor::to_string() const {
    std::ostringstream out;
    bool first = true;
    for (const auto& [p, m] : rational_points) {
        if (!first) out << " + ";
        first = false;
        if (m > 1) out << m << "*";
        out << p.to_string();
    }
    for (const auto& [deg, m] : irrational_part) {
        if (!first) out << " + ";
        first = false;
        if (m > 1) out << m << "*";
        out << "[irreducible deg " << deg << "]";
    }
    return out.str();
}

LineDivisor line_cubic_divisor(const HomogeneousForm& f, const ProjectiveLine& line) {
    if (f.degree() != 3) throw ValidationError("divisor computation needs a cubic form");
    std::vector<Rational> coeffs = restrict_to_line(f, line);
    if (binary_is_zero(coeffs))
        throw LineContainedError("line " + line.to_string() + " lies in the hypersurface");

    std::map<std::pair<Integer, Integer>, unsigned> roots;
    std::vector<Rational> work = coeffs;
    while (binary_degree(work) >= 1) {
        auto root = find_binary_root(work);
        if (!root) break;
        if (!deflate_binary(work, root->first, root->second))
            throw ContractViolation("root deflation failed");
        roots[*root] += 1;
    }

    LineDivisor div;
    for (const auto& [root, mult] : roots)
        div.rational_points.emplace_back(line.point_at(root.first, root.second), mult);
    std::sort(div.rational_points.begin(), div.rational_points.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    unsigned rem = binary_degree(work);
    if (rem >= 1 && !binary_is_zero(work)) div.irrational_part.emplace_back(rem, 1);
    if (div.total_degree() != 3) throw ContractViolation("divisor degree is not 3");
    return div;
}

bool verify_line_divisor(const HomogeneousForm& f, const ProjectiveLine& line,
                         const LineDivisor& divisor) {
    std::vector<Rational> work;
    try {
        work = restrict_to_line(f, line);
    } catch (const Error&) {
        return false;
    }
    if (binary_is_zero(work)) return false;
    for (const auto& [p, mult] : divisor.rational_points) {
        std::pair<Integer, Integer> par;
        try {
            par = line.parameter_of(p);
        } catch (const ValidationError&) {
            return false;
        }
        for (unsigned k = 0; k < mult; ++k)
            if (!deflate_binary(work, par.first, par.second)) return false;
    }
    unsigned irr = 0;
    for (const auto& [deg, m] : divisor.irrational_part) irr += deg * m;
    return binary_degree(work) == irr && !binary_is_zero(work);
}

// ---------------------------------------------------------------------
// secant / tangent constructions
// ---------------------------------------------------------------------

namespace {

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    Rational acc(0);
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

Rational grad_dot_point(const HomogeneousForm& f, const ProjectivePoint& at,
                        const ProjectivePoint& with) {
    std::vector<Rational> g = f.gradient(at);
    Rational acc(0);
    for (std::size_t i = 0; i < g.size(); ++i) acc += g[i] * Rational(with[i]);
    return acc;
}

void require_on_surface(const HomogeneousForm& f, const ProjectivePoint& p, const char* name) {
    if (f.evaluate(p) != 0)
        throw ValidationError(std::string(name) + " " + p.to_string() +
                              " is not on the hypersurface");
}

}  // namespace

HomogeneousForm tangent_plane(const HomogeneousForm& f, const ProjectivePoint& p) {
    require_on_surface(f, p, "point");
    std::vector<Rational> g = f.gradient(p);
    Integer lcm = 1;
    for (const auto& q : g) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den().get_mpz_t());
    std::vector<Integer> gz(g.size());
    bool nonzero = false;
    for (std::size_t i = 0; i < g.size(); ++i) {
        Rational scaled = g[i] * Rational(lcm);
        gz[i] = scaled.get_num();
        nonzero = nonzero || gz[i] != 0;
    }
    if (!nonzero) throw ValidationError("point " + p.to_string() + " is singular");
    canonicalize_primitive(gz);
    std::vector<Rational> coeffs(gz.begin(), gz.end());
    return HomogeneousForm::linear(coeffs);
}

// For a cubic F, F(sP + tQ) = F(P) s^3 + (grad F(P).Q) s^2 t
//                           + (grad F(Q).P) s t^2 + F(Q) t^3.
ProjectivePoint third_point(const HomogeneousForm& f, const ProjectivePoint& p,
                            const ProjectivePoint& q) {
    if (f.degree() != 3) throw ValidationError("secant construction needs a cubic form");
    if (p == q) throw ValidationError("secant needs distinct points; use tangent_residual");
    require_on_surface(f, p, "point P");
    require_on_surface(f, q, "point Q");
    Rational g1 = grad_dot_point(f, p, q);
    Rational g2 = grad_dot_point(f, q, p);
    if (g1 == 0 && g2 == 0)
        throw LineContainedError("secant line through " + p.to_string() + " and " +
                                 q.to_string() + " lies in the hypersurface");
    std::vector<Rational> coords(p.num_vars());
    for (std::size_t i = 0; i < coords.size(); ++i)
        coords[i] = g2 * Rational(p[i]) - g1 * Rational(q[i]);
    ProjectivePoint r = ProjectivePoint::from_rationals(coords);
    if (f.evaluate(r) != 0) throw ContractViolation("residual point is off the hypersurface");
    return r;
}

LineDivisor tangent_residual(const HomogeneousForm& f, const ProjectivePoint& p,
                             const ProjectivePoint& direction) {
    if (f.degree() != 3) throw ValidationError("tangent construction needs a cubic form");
    if (p == direction) throw ValidationError("direction coincides with the base point");
    require_on_surface(f, p, "point P");
    if (grad_dot_point(f, p, direction) != 0)
        throw ValidationError("direction " + direction.to_string() + " is not tangent at " +
                              p.to_string());
    // F(sP + tD) = (grad F(D).P) s t^2 + F(D) t^3 once F(P) = 0 and the
    // s^2 t coefficient vanishes by tangency.
    Rational g2 = grad_dot_point(f, direction, p);
    Rational g3 = f.evaluate(direction);
    if (g2 == 0 && g3 == 0)
        throw LineContainedError("tangent line at " + p.to_string() +
                                 " lies in the hypersurface");
    LineDivisor div;
    if (g2 == 0) {
        div.rational_points.emplace_back(p, 3);  // inflection direction
        return div;
    }
    std::vector<Rational> coords(p.num_vars());
    for (std::size_t i = 0; i < coords.size(); ++i)
        coords[i] = g3 * Rational(p[i]) - g2 * Rational(direction[i]);
    ProjectivePoint r = ProjectivePoint::from_rationals(coords);
    if (f.evaluate(r) != 0) throw ContractViolation("tangent residual is off the hypersurface");
    div.rational_points.emplace_back(p, 2);
    div.rational_points.emplace_back(r, 1);
    std::sort(div.rational_points.begin(), div.rational_points.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    return div;
}

// ---------------------------------------------------------------------
// local normal form and the second fundamental form
// ---------------------------------------------------------------------

namespace {

std::vector<Integer> primitive_gradient(const HomogeneousForm& f, const ProjectivePoint& p) {
    std::vector<Rational> g = f.gradient(p);
    Integer lcm = 1;
    for (const auto& q : g) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den().get_mpz_t());
    std::vector<Integer> gz(g.size());
    bool nonzero = false;
    for (std::size_t i = 0; i < g.size(); ++i) {
        Rational scaled = g[i] * Rational(lcm);
        gz[i] = scaled.get_num();
        nonzero = nonzero || gz[i] != 0;
    }
    if (!nonzero) throw ValidationError("point " + p.to_string() + " is singular");
    canonicalize_primitive(gz);
    return gz;
}

// Integer vectors spanning the hyperplane grad . x = 0: plain unit vectors
// where the gradient vanishes, pivot cross-combinations elsewhere.
std::vector<std::vector<Integer>> hyperplane_candidates(const std::vector<Integer>& gz,
                                                        std::size_t pivot) {
    std::size_t m = gz.size();
    std::vector<std::vector<Integer>> cands;
    for (std::size_t j = 0; j < m; ++j) {
        if (gz[j] != 0) continue;
        std::vector<Integer> e(m, 0);
        e[j] = 1;
        cands.push_back(std::move(e));
    }
    for (std::size_t j = 0; j < m; ++j) {
        if (j == pivot || gz[j] == 0) continue;
        std::vector<Integer> v(m, 0);
        v[j] = gz[pivot];
        v[pivot] = -gz[j];
        canonicalize_primitive(v);
        cands.push_back(std::move(v));
    }
    return cands;
}

LocalNormalForm build_normal_form(const HomogeneousForm& f, const ProjectivePoint& p,
                                  const std::vector<std::vector<Integer>>& candidates,
                                  const std::vector<Rational>& last_col) {
    std::size_t m = f.num_vars();
    std::vector<std::vector<Rational>> cols;
    cols.push_back(p.as_rationals());
    for (const auto& cand : candidates) {
        if (cols.size() == m - 1) break;
        std::vector<Rational> c(cand.begin(), cand.end());
        std::vector<std::vector<Rational>> trial = cols;
        trial.push_back(c);
        if (QMatrix::from_columns(trial).rank() == trial.size()) cols.push_back(std::move(c));
    }
    if (cols.size() != m - 1) throw ContractViolation("tangent hyperplane completion failed");
    cols.push_back(last_col);
    LinearChange change{QMatrix::from_columns(cols)};

    HomogeneousForm g = compose_with_matrix(f, change.matrix());
    HomogeneousForm q(m - 1, 2), c(m - 1, 3);
    for (const auto& [exps, coeff] : g.terms()) {
        HomogeneousForm::ExponentVec rest(exps.begin() + 1, exps.end());
        switch (exps[0]) {
            case 3:
                throw ContractViolation("x0^3 coefficient should vanish (point on X)");
            case 2: {
                HomogeneousForm::ExponentVec want(m - 1, 0);
                want.back() = 1;
                if (rest != want || coeff != 1)
                    throw ContractViolation("x0^2 block is not exactly x0^2 x_last");
                break;
            }
            case 1:
                q.add_term(rest, coeff);
                break;
            default:
                c.add_term(rest, coeff);
        }
    }
    return LocalNormalForm{change, q, c};
}

}  // namespace

LocalNormalForm local_normal_form(const HomogeneousForm& f, const ProjectivePoint& p) {
    if (f.degree() != 3) throw ValidationError("local normal form needs a cubic form");
    require_on_surface(f, p, "point");
    std::vector<Rational> grad = f.gradient(p);
    std::vector<Integer> gz = primitive_gradient(f, p);
    std::size_t m = f.num_vars();

    std::size_t pivot = 0;
    Integer best = 0;
    for (std::size_t j = 0; j < m; ++j) {
        Integer mag = abs(gz[j]);
        if (mag > best) { best = mag; pivot = j; }
    }

    // Last column: e_pivot scaled so the x0^2 x_last coefficient is 1.
    std::vector<Rational> last(m, Rational(0));
    last[pivot] = Rational(1) / grad[pivot];
    return build_normal_form(f, p, hyperplane_candidates(gz, pivot), last);
}

LocalNormalForm local_normal_form_seeded(const HomogeneousForm& f, const ProjectivePoint& p,
                                         unsigned long seed) {
    if (f.degree() != 3) throw ValidationError("local normal form needs a cubic form");
    require_on_surface(f, p, "point");
    std::vector<Rational> grad = f.gradient(p);
    std::vector<Integer> gz = primitive_gradient(f, p);
    std::size_t m = f.num_vars();
    std::mt19937_64 rng(seed);

    std::vector<std::size_t> nonzero_idx;
    for (std::size_t j = 0; j < m; ++j)
        if (gz[j] != 0) nonzero_idx.push_back(j);
    std::size_t pivot = nonzero_idx[rng() % nonzero_idx.size()];

    auto cands = hyperplane_candidates(gz, pivot);
    std::shuffle(cands.begin(), cands.end(), rng);
    // Mix in small integer combinations for extra arbitrariness.
    std::uniform_int_distribution<int> small(-2, 2);
    for (std::size_t i = 0; i + 1 < cands.size(); ++i) {
        int lambda = small(rng);
        if (lambda == 0) continue;
        std::vector<Integer> mixed = cands[i];
        for (std::size_t j = 0; j < m; ++j) mixed[j] += Integer(lambda) * cands[i + 1][j];
        canonicalize_primitive(mixed);
        cands[i] = std::move(mixed);
    }

    // Random transversal direction for the last column.
    std::vector<Rational> last(m);
    for (int attempt = 0; attempt < 64; ++attempt) {
        std::vector<Rational> v(m);
        for (auto& x : v) x = Rational(small(rng));
        Rational kappa = dot(grad, v);
        if (kappa != 0) {
            for (auto& x : v) x /= kappa;
            last = std::move(v);
            break;
        }
        if (attempt == 63) {
            last.assign(m, Rational(0));
            last[pivot] = Rational(1) / grad[pivot];
        }
    }
    return build_normal_form(f, p, cands, last);
}

namespace {

HomogeneousForm drop_last_variable(const HomogeneousForm& f) {
    HomogeneousForm out(f.num_vars() - 1, f.degree());
    for (const auto& [exps, coeff] : f.terms()) {
        if (exps.back() != 0) continue;
        HomogeneousForm::ExponentVec rest(exps.begin(), exps.end() - 1);
        out.add_term(rest, coeff);
    }
    return out;
}

}  // namespace

SymmetricMatrix gram_matrix(const HomogeneousForm& q) {
    if (q.degree() != 2) throw ValidationError("gram matrix needs a quadratic form");
    std::size_t n = q.num_vars();
    QMatrix m(n, n);
    for (const auto& [exps, coeff] : q.terms()) {
        std::vector<std::size_t> vars;
        for (std::size_t i = 0; i < n; ++i)
            for (unsigned k = 0; k < exps[i]; ++k) vars.push_back(i);
        if (vars[0] == vars[1]) {
            m.at(vars[0], vars[0]) = coeff;
        } else {
            Rational half = coeff / 2;
            m.at(vars[0], vars[1]) = half;
            m.at(vars[1], vars[0]) = half;
        }
    }
    return SymmetricMatrix(std::move(m));
}

InertiaSignature inertia_of(const SymmetricMatrix& sym) {
    QMatrix a = sym.matrix();
    std::size_t n = a.rows();
    InertiaSignature sig;

    auto swap_rc = [&](std::size_t i, std::size_t j) {
        for (std::size_t k = 0; k < n; ++k) swap(a.at(i, k), a.at(j, k));
        for (std::size_t k = 0; k < n; ++k) swap(a.at(k, i), a.at(k, j));
    };

    for (std::size_t i = 0; i < n; ++i) {
        if (a.at(i, i) == 0) {
            std::size_t j = i + 1;
            while (j < n && a.at(j, j) == 0) ++j;
            if (j < n) {
                swap_rc(i, j);
            } else {
                // all-zero trailing diagonal: hunt for an off-diagonal entry
                std::size_t p = n, q = n;
                for (std::size_t r = i; r < n && p == n; ++r)
                    for (std::size_t s = r + 1; s < n; ++s)
                        if (a.at(r, s) != 0) { p = r; q = s; break; }
                if (p == n) {
                    sig.n_zero += n - i;
                    return sig;
                }
                // congruence x_p -> x_p + x_q turns 2 a_pq into a pivot
                for (std::size_t k = 0; k < n; ++k) a.at(p, k) += a.at(q, k);
                for (std::size_t k = 0; k < n; ++k) a.at(k, p) += a.at(k, q);
                if (p != i) swap_rc(p, i);
            }
        }
        Rational d = a.at(i, i);
        for (std::size_t r = i + 1; r < n; ++r) {
            if (a.at(r, i) == 0) continue;
            Rational fct = a.at(r, i) / d;
            for (std::size_t k = 0; k < n; ++k) a.at(r, k) -= fct * a.at(i, k);
            for (std::size_t k = 0; k < n; ++k) a.at(k, r) -= fct * a.at(k, i);
        }
        if (d > 0)
            sig.n_plus += 1;
        else
            sig.n_minus += 1;
    }
    return sig;
}

InertiaSignature inertia_of_quadratic(const HomogeneousForm& q) {
    if (q.is_zero())
        return InertiaSignature{0, 0, q.num_vars()};
    return inertia_of(gram_matrix(q));
}

std::pair<HomogeneousForm, InertiaSignature> second_fundamental_form(const HomogeneousForm& f,
                                                                     const ProjectivePoint& p) {
    LocalNormalForm lnf = local_normal_form(f, p);
    HomogeneousForm restricted = drop_last_variable(lnf.q);
    return {restricted, inertia_of_quadratic(restricted)};
}

bool is_eckardt(const HomogeneousForm& f, const ProjectivePoint& p) {
    return second_fundamental_form(f, p).first.is_zero();
}

std::size_t hessian_rank_at(const HomogeneousForm& f, const ProjectivePoint& p) {
    return hessian_at(f, p).matrix().rank();
}

std::string to_string(LocalType t) {
    return t == LocalType::Isolated ? "isolated" : "hypersurface-rich";
}

LocalType tangent_section_local_type(const InertiaSignature& sig) {
    if (sig.n_zero > 0)
        throw NotFullRankError("second fundamental form is degenerate");
    return sig.definite() ? LocalType::Isolated : LocalType::HypersurfaceRich;
}

LocalType tangent_section_local_type(const HomogeneousForm& f, const ProjectivePoint& p) {
    return tangent_section_local_type(second_fundamental_form(f, p).second);
}

// ---------------------------------------------------------------------
// Y_{B,D} smoothness certificate
// ---------------------------------------------------------------------

HomogeneousForm polar_form(const HomogeneousForm& f, const std::vector<Rational>& d) {
    if (d.size() != f.num_vars()) throw DimensionMismatch("polar direction length mismatch");
    HomogeneousForm out(f.num_vars(), f.degree() - 1);
    for (std::size_t j = 0; j < f.num_vars(); ++j) {
        if (d[j] == 0) continue;
        out = out + f.partial(j) * d[j];
    }
    return out;
}

YbdSmoothnessReport ybd_smoothness_certificate(const HomogeneousForm& f, const ProjectivePoint& b,
                                               const ProjectivePoint& c,
                                               const ProjectivePoint& d) {
    require_on_surface(f, b, "point B");
    require_on_surface(f, c, "point C");
    require_on_surface(f, d, "point D");
    if (grad_dot_point(f, b, c) != 0)
        throw ValidationError("C is not on the tangent plane section X_B");
    if (grad_dot_point(f, c, d) != 0)
        throw ValidationError("D is not on the tangent plane section X_C");

    std::size_t m = f.num_vars();
    std::vector<Rational> gb = f.gradient(b);
    std::vector<Rational> gc = f.gradient(c);

    YbdSmoothnessReport report;
    report.tangent_planes_distinct = QMatrix::from_rows({gb, gc}).rank() == 2;

    SymmetricMatrix h = hessian_at(f, c);
    report.hessian_full_rank = h.matrix().rank() == m;

    if (report.hessian_full_rank) {
        // D on the critical line iff D . H lands in the span of the two
        // gradients.
        std::vector<Rational> w(m, Rational(0));
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t i = 0; i < m; ++i) w[j] += Rational(d[i]) * h.at(i, j);
        std::size_t base = QMatrix::from_rows({gb, gc}).rank();
        report.off_critical_line = QMatrix::from_rows({gb, gc, w}).rank() > base;
    }

    report.certified_smooth = report.tangent_planes_distinct && report.hessian_full_rank &&
                              report.off_critical_line;

    if (report.certified_smooth) {
        // Cross-check via the symbolically differentiated system: the rows
        // grad F(C), grad(grad F . D)(C), grad F(B) must have rank 3.
        HomogeneousForm polar = polar_form(f, d.as_rationals());
        std::vector<Rational> row2 = polar.gradient(c);
        if (QMatrix::from_rows({gc, row2, gb}).rank() != 3)
            throw ContractViolation("certificate accepted but Jacobian rank is below 3");
    }
    return report;
}

}  // namespace cubic
