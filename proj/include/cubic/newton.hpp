#ifndef CUBIC_NEWTON_HPP
#define CUBIC_NEWTON_HPP

#include <optional>
#include <string>
#include <vector>

#include "cubic/point.hpp"
#include "cubic/realpoly.hpp"

namespace cubic {

// Bounds are inflated by 1 + this factor before the h < 1 test, absorbing
// floating-point evaluation error.
inline constexpr double kCertSafety = 1e-6;
// "Linearly independent" means the row-normalized gradient matrix has
// minimum singular value above this.
inline constexpr double kSingularValueThreshold = 1e-8;

struct BallSpec {
    RealVector center;
    double radius;
    BallSpec(RealVector c, double r);
};

struct KantorovichCertificate {
    double alpha = 0;  // bound on ||f(x0) . J(x0)^-1||
    double beta = 0;   // bound on ||J(x)^-1|| over the ball
    double gamma = 0;  // Lipschitz bound for J over the ball
    double h = 0;      // alpha * beta * gamma / 2
    double r = 0;      // alpha / (1 - h), the convergence ball radius
    bool accepted = false;
    std::string reason;  // populated when not accepted
    std::optional<RealVector> root;
    double residual_norm = 0;
};

struct NewtonResult {
    RealVector root;
    double residual_norm = 0;
    unsigned iterations = 0;
    std::vector<double> residual_history;
};

struct CompletedSystem {
    RealSystem full;            // originals followed by affine completions
    std::size_t num_original;
    std::vector<RealVector> basis_vectors;  // completion directions v_i
};

struct PerturbedZeroResult {
    RealVector zero;
    KantorovichCertificate certificate;
    double distance = 0;         // ||xi - zeta||
    double gradient_min_sv = 0;  // of the perturbed gradients at xi, row-normalized
};

struct YbdSolveResult {
    RealVector point;  // affine coordinates on the patch x0 = 1
    KantorovichCertificate certificate;
    double residual_norm = 0;        // of the three defining equations
    double jacobian_min_sv = 0;      // row-normalized 3-equation Jacobian at the solution
    std::size_t jacobian_rank = 0;   // numerical rank at threshold 1e-8
    bool smooth = false;             // jacobian_rank == 3
};

// ---- operations ----

// Certifies Newton convergence from ball.center: alpha from the first
// step, gamma by majorizing all second derivatives over the ball, beta by
// the Banach perturbation bound beta0 / (1 - beta0 gamma r0). Accepted iff
// h = alpha beta gamma / 2 < 1 and r = alpha / (1 - h) <= r0.
// Throws SingularMatrixError when the Jacobian at the center is singular;
// an invalid beta bound is reported as not-accepted, never thrown.
KantorovichCertificate kantorovich_certify(const RealSystem& system, const BallSpec& ball);

// x_{k+1} = x_k - f(x_k) . J(x_k)^{-1} with the residual as a row vector
// acting on the inverse Jacobian from the left. Every iterate must stay in
// the certified ball; escaping it is a ContractViolation.
NewtonResult newton_solve(const RealSystem& system, const RealVector& x0,
                          const KantorovichCertificate& certificate, double tol = 1e-12,
                          unsigned max_iter = 64);

KantorovichCertificate certify_and_solve(const RealSystem& system, const BallSpec& ball,
                                         double tol = 1e-12, unsigned max_iter = 64);

// Completes m <= n polynomials to a square system by adding affine-linear
// equations v_i . (x - zeta) for an orthonormal basis v_i of the orthogonal
// complement of the gradient span at zeta.
CompletedSystem complete_system(const std::vector<RealPoly>& g, const RealVector& zeta);

// Finds the zero of the perturbed system f near the zero zeta of g:
// completes g at zeta, swaps in the perturbed polynomials, certifies on the
// ball of radius epsilon and solves. Throws CertificationRejected when the
// perturbation is too large for this epsilon.
PerturbedZeroResult perturbed_zero(const std::vector<RealPoly>& g, const RealVector& zeta,
                                   const std::vector<RealPoly>& f, double epsilon,
                                   double tol = 1e-12);

// Locates a real point on Y_{B,D} = {F = 0, grad F . D = 0, grad F(B) . x = 0}
// near the seed, working on the affine patch x0 = 1. The three equations
// are completed to a square system at the seed, certified and solved; the
// rank report says whether the located point is smooth on Y_{B,D}.
YbdSolveResult find_smooth_point_ybd(const HomogeneousForm& f, const ProjectivePoint& b,
                                     const RealVector& d, const RealVector& seed,
                                     double radius = 0.5, double tol = 1e-12);

// Minimum singular value after scaling every row to unit Euclidean norm;
// zero rows yield 0.
double row_normalized_min_sv(const RealMatrix& m);

}  // namespace cubic

#endif
