#include "cubic/newton.hpp"

#include <cmath>
#include <sstream>

#include "cubic/errors.hpp"
#include "cubic/geometry.hpp"

namespace cubic {

BallSpec::BallSpec(RealVector c, double rad) : center(std::move(c)), radius(rad) {
    require_finite(center, "ball center");
    if (!(radius > 0)) throw ValidationError("ball radius must be positive");
}

namespace {

// Frobenius-aggregated Lipschitz bound for the Jacobian over the box
// |x_i| <= |center_i| + radius, from coefficient majorants of every second
// derivative.
double jacobian_lipschitz_bound(const RealSystem& system, const RealVector& center,
                                double radius) {
    RealVector box = center.cwiseAbs().array() + radius;
    std::size_t n = system.num_vars();
    double gamma_sq = 0;
    for (std::size_t i = 0; i < system.num_polys(); ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const RealPoly& entry = system.entry_partial(i, j);
            double lip_sq = 0;
            for (std::size_t k = 0; k < n; ++k) {
                double bound = entry.partial(k).coefficient_bound(box);
                lip_sq += bound * bound;
            }
            gamma_sq += lip_sq;
        }
    return std::sqrt(gamma_sq);
}

// Radius r <= max_radius with beta0 * gamma * r <= 1/2, so the Banach
// denominator in the beta bound keeps a clean margin. This mirrors the
// stability argument, which shrinks the ball until condition (ii) holds.
double banach_sized_radius(const RealSystem& system, const RealVector& center,
                           double max_radius) {
    RealMatrix jrow = system.jacobian_row_convention(center);
    Eigen::FullPivLU<RealMatrix> lu(jrow);
    if (!lu.isInvertible())
        throw SingularMatrixError("Jacobian at the ball center is singular");
    double beta0 = lu.inverse().norm();
    double gamma = jacobian_lipschitz_bound(system, center, max_radius);
    if (gamma == 0 || beta0 == 0) return max_radius;
    return std::min(max_radius, 0.5 / (beta0 * gamma));
}

}  // namespace

double row_normalized_min_sv(const RealMatrix& m) {
    RealMatrix normed = m;
    for (Eigen::Index i = 0; i < normed.rows(); ++i) {
        double norm = normed.row(i).norm();
        if (norm == 0) return 0.0;
        normed.row(i) /= norm;
    }
    Eigen::JacobiSVD<RealMatrix> svd(normed);
    return svd.singularValues().tail(1)(0);
}

KantorovichCertificate kantorovich_certify(const RealSystem& system, const BallSpec& ball) {
    if (!system.square()) throw ValidationError("certification needs a square system");
    std::size_t n = system.num_vars();
    if (static_cast<std::size_t>(ball.center.size()) != n)
        throw DimensionMismatch("ball center dimension mismatch");

    const double infl = 1.0 + kCertSafety;
    KantorovichCertificate cert;

    RealMatrix jrow = system.jacobian_row_convention(ball.center);
    Eigen::FullPivLU<RealMatrix> lu(jrow);
    if (!lu.isInvertible()) throw SingularMatrixError("Jacobian at the center is singular");
    RealMatrix jinv = lu.inverse();

    RealVector fx = system.eval(ball.center);
    // alpha: norm of the row vector f(x0) . J(x0)^{-1}
    RealVector first_step = (fx.transpose() * jinv).transpose();
    cert.alpha = first_step.norm() * infl;

    double beta0 = jinv.norm();  // Frobenius, an upper bound for the spectral norm

    cert.gamma = jacobian_lipschitz_bound(system, ball.center, ball.radius) * infl;

    double denom = 1.0 - beta0 * cert.gamma * ball.radius;
    if (!(denom > 0)) {
        cert.beta = 0;
        cert.h = 0;
        cert.r = 0;
        cert.accepted = false;
        std::ostringstream msg;
        msg << "beta bound invalid: beta0*gamma*r0 = " << beta0 * cert.gamma * ball.radius
            << " >= 1";
        cert.reason = msg.str();
        return cert;
    }
    cert.beta = beta0 / denom * infl;
    cert.h = cert.alpha * cert.beta * cert.gamma / 2.0;
    if (cert.h >= 1.0) {
        cert.accepted = false;
        cert.reason = "h = alpha*beta*gamma/2 >= 1";
        return cert;
    }
    cert.r = cert.alpha / (1.0 - cert.h);
    if (cert.r > ball.radius) {
        cert.accepted = false;
        std::ostringstream msg;
        msg << "convergence radius r = " << cert.r << " exceeds the ball radius " << ball.radius;
        cert.reason = msg.str();
        return cert;
    }
    cert.accepted = true;
    return cert;
}

NewtonResult newton_solve(const RealSystem& system, const RealVector& x0,
                          const KantorovichCertificate& certificate, double tol,
                          unsigned max_iter) {
    if (!certificate.accepted)
        throw CertificationRejected("newton_solve requires an accepted certificate: " +
                                    certificate.reason);
    require_finite(x0, "initial point");

    NewtonResult res;
    RealVector x = x0;
    RealVector fx = system.eval(x);
    res.residual_history.push_back(fx.norm());

    while (res.residual_history.back() > tol) {
        if (res.iterations >= max_iter)
            throw Error("newton_solve: no convergence within the iteration budget");
        RealMatrix jrow = system.jacobian_row_convention(x);
        Eigen::FullPivLU<RealMatrix> lu(jrow);
        if (!lu.isInvertible())
            throw ContractViolation("Jacobian became singular inside the certified ball");
        // the paper's update: the residual row vector times J^{-1} on the right
        RealVector step = (fx.transpose() * lu.inverse()).transpose();
        x -= step;
        ++res.iterations;
        if ((x - x0).norm() > certificate.r)
            throw ContractViolation("iterate escaped the certified ball");
        fx = system.eval(x);
        res.residual_history.push_back(fx.norm());
    }
    res.root = x;
    res.residual_norm = res.residual_history.back();
    return res;
}

KantorovichCertificate certify_and_solve(const RealSystem& system, const BallSpec& ball,
                                         double tol, unsigned max_iter) {
    KantorovichCertificate cert = kantorovich_certify(system, ball);
    if (!cert.accepted) return cert;
    NewtonResult res = newton_solve(system, ball.center, cert, tol, max_iter);
    cert.root = res.root;
    cert.residual_norm = res.residual_norm;
    return cert;
}

CompletedSystem complete_system(const std::vector<RealPoly>& g, const RealVector& zeta) {
    if (g.empty()) throw ValidationError("cannot complete an empty system");
    std::size_t n = g[0].num_vars();
    std::size_t m = g.size();
    if (m > n) throw ValidationError("more equations than variables");
    require_finite(zeta, "completion point");

    RealMatrix grads(m, n);
    for (std::size_t i = 0; i < m; ++i)
        grads.row(static_cast<Eigen::Index>(i)) = g[i].gradient(zeta).transpose();
    if (row_normalized_min_sv(grads) <= kSingularValueThreshold)
        throw ValidationError("gradients at the completion point are dependent");

    std::vector<RealPoly> full = g;
    std::vector<RealVector> basis;
    if (m < n) {
        Eigen::JacobiSVD<RealMatrix> svd(grads, Eigen::ComputeFullV);
        for (std::size_t k = m; k < n; ++k) {
            RealVector v = svd.matrixV().col(static_cast<Eigen::Index>(k));
            // deterministic sign: first entry of largest magnitude positive
            Eigen::Index arg = 0;
            v.cwiseAbs().maxCoeff(&arg);
            if (v[arg] < 0) v = -v;
            basis.push_back(v);
            full.push_back(RealPoly::affine_linear(v, zeta));
        }
    }
    CompletedSystem out{RealSystem(std::move(full)), m, std::move(basis)};
    RealMatrix full_j = out.full.jacobian(zeta);
    if (row_normalized_min_sv(full_j) <= kSingularValueThreshold)
        throw ContractViolation("completed Jacobian is not invertible at the base point");
    return out;
}

PerturbedZeroResult perturbed_zero(const std::vector<RealPoly>& g, const RealVector& zeta,
                                   const std::vector<RealPoly>& f, double epsilon, double tol) {
    if (f.size() != g.size()) throw DimensionMismatch("perturbed system size mismatch");
    if (!(epsilon > 0)) throw ValidationError("epsilon must be positive");

    CompletedSystem comp = complete_system(g, zeta);
    // the completions are kept unperturbed, exactly as in the stability proof
    std::vector<RealPoly> polys = f;
    for (std::size_t i = comp.num_original; i < comp.full.num_polys(); ++i)
        polys.push_back(comp.full.polys()[i]);
    RealSystem perturbed(std::move(polys));

    double r0 = banach_sized_radius(perturbed, zeta, epsilon);
    KantorovichCertificate cert = kantorovich_certify(perturbed, BallSpec(zeta, r0));
    if (!cert.accepted)
        throw CertificationRejected("perturbation too large for this epsilon: " + cert.reason);
    NewtonResult res = newton_solve(perturbed, zeta, cert, tol);

    PerturbedZeroResult out;
    out.zero = res.root;
    cert.root = res.root;
    cert.residual_norm = res.residual_norm;
    out.certificate = cert;
    out.distance = (res.root - zeta).norm();
    if (!(out.distance < epsilon))
        throw ContractViolation("perturbed zero left the epsilon ball");

    RealMatrix grads(f.size(), g[0].num_vars());
    for (std::size_t i = 0; i < f.size(); ++i)
        grads.row(static_cast<Eigen::Index>(i)) = f[i].gradient(res.root).transpose();
    out.gradient_min_sv = row_normalized_min_sv(grads);
    if (out.gradient_min_sv < kSingularValueThreshold)
        throw CertificationRejected("perturbed gradients are dependent at the located zero");
    return out;
}

YbdSolveResult find_smooth_point_ybd(const HomogeneousForm& f, const ProjectivePoint& b,
                                     const RealVector& d, const RealVector& seed, double radius,
                                     double tol) {
    std::size_t m = f.num_vars();
    if (f.degree() != 3) throw ValidationError("Y_{B,D} needs a cubic form");
    if (static_cast<std::size_t>(d.size()) != m)
        throw DimensionMismatch("D must have one coordinate per ambient variable");
    if (static_cast<std::size_t>(seed.size()) != m - 1)
        throw DimensionMismatch("seed lives on the affine patch x0 = 1");
    if (f.evaluate(b) != 0) throw ValidationError("B is not on the hypersurface");
    require_finite(d, "D");
    require_finite(seed, "seed");

    // the three defining equations, dehomogenized by x0 = 1 and scaled to
    // unit coefficient norm: scaling changes neither zero set nor rank and
    // keeps rows of wildly different heights comparable
    RealPoly g1 = RealPoly::dehomogenize(f);
    RealPoly g2(m - 1);
    for (std::size_t j = 0; j < m; ++j) {
        double dj = d[static_cast<Eigen::Index>(j)];
        if (dj == 0) continue;
        g2 = g2 + RealPoly::dehomogenize(f.partial(j)) * dj;
    }
    std::vector<Rational> gb = f.gradient(b);
    RealPoly g3(m - 1);
    {
        RealPoly::ExponentVec zero(m - 1, 0);
        g3.add_term(zero, gb[0].get_d());
        for (std::size_t j = 1; j < m; ++j) {
            RealPoly::ExponentVec e(m - 1, 0);
            e[j - 1] = 1;
            g3.add_term(e, gb[j].get_d());
        }
    }
    for (RealPoly* poly : {&g1, &g2, &g3}) {
        double norm = poly->coefficient_norm();
        if (norm == 0) throw ValidationError("a defining equation of Y_{B,D} vanishes");
        *poly = *poly * (1.0 / norm);
    }

    std::optional<CompletedSystem> comp;
    try {
        comp = complete_system({g1, g2, g3}, seed);
    } catch (const ValidationError& e) {
        // dependent gradients at the seed: nothing to certify from here
        throw CertificationRejected(std::string("Y_{B,D} system is degenerate at the seed: ") +
                                    e.what());
    }
    double r0 = banach_sized_radius(comp->full, seed, radius);
    KantorovichCertificate cert = kantorovich_certify(comp->full, BallSpec(seed, r0));
    if (!cert.accepted)
        throw CertificationRejected("Y_{B,D} certification rejected: " + cert.reason);
    NewtonResult res = newton_solve(comp->full, seed, cert, tol);

    YbdSolveResult out;
    out.point = res.root;
    cert.root = res.root;
    RealSystem defining({g1, g2, g3});
    out.residual_norm = defining.eval(res.root).norm();
    cert.residual_norm = out.residual_norm;
    out.certificate = cert;

    RealMatrix jac = defining.jacobian(res.root);
    out.jacobian_min_sv = row_normalized_min_sv(jac);
    std::size_t rank = 0;
    {
        Eigen::JacobiSVD<RealMatrix> svd(jac);
        RealVector sv = svd.singularValues();
        double scale = sv.size() > 0 ? sv(0) : 0.0;
        for (Eigen::Index i = 0; i < sv.size(); ++i)
            if (scale > 0 && sv(i) / scale > kSingularValueThreshold) ++rank;
    }
    out.jacobian_rank = rank;
    out.smooth = rank == 3;
    return out;
}

}  // namespace cubic
