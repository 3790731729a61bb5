#ifndef CUBIC_GEOMETRY_HPP
#define CUBIC_GEOMETRY_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cubic/form.hpp"
#include "cubic/point.hpp"
#include "cubic/qlinalg.hpp"

namespace cubic {

// Line in P^{n+1} through two distinct rational points. The stored basis is
// the integer reduced row echelon form of the 2-row coordinate matrix, so
// equal lines have identical representations.
class ProjectiveLine {
 public:
    static ProjectiveLine through(const ProjectivePoint& p, const ProjectivePoint& q);

    std::size_t num_vars() const { return a_.num_vars(); }
    const ProjectivePoint& basis_a() const { return a_; }
    const ProjectivePoint& basis_b() const { return b_; }

    bool contains(const ProjectivePoint& p) const;
    // Parameter (alpha : beta) with p = alpha * basis_a + beta * basis_b.
    std::pair<Integer, Integer> parameter_of(const ProjectivePoint& p) const;
    ProjectivePoint point_at(const Integer& alpha, const Integer& beta) const;

    bool operator==(const ProjectiveLine& rhs) const { return a_ == rhs.a_ && b_ == rhs.b_; }
    bool operator<(const ProjectiveLine& rhs) const {
        return a_ < rhs.a_ || (a_ == rhs.a_ && b_ < rhs.b_);
    }
    std::string to_string() const { return a_.to_string() + "-" + b_.to_string(); }

 private:
    ProjectiveLine(ProjectivePoint a, ProjectivePoint b) : a_(std::move(a)), b_(std::move(b)) {}
    ProjectivePoint a_, b_;
};

struct LineHash {
    std::size_t operator()(const ProjectiveLine& l) const {
        PointHash h;
        return h(l.basis_a()) * 1000003u ^ h(l.basis_b());
    }
};

// Intersection divisor of a line with the cubic: rational points with
// multiplicity plus the degrees of irreducible non-linear factors.
// Total degree is always 3.
struct LineDivisor {
    std::vector<std::pair<ProjectivePoint, unsigned>> rational_points;
    std::vector<std::pair<unsigned, unsigned>> irrational_part;  // (degree, multiplicity)

    unsigned total_degree() const;
    bool contains(const ProjectivePoint& p, unsigned min_mult = 1) const;
    std::string to_string() const;
    bool operator==(const LineDivisor& rhs) const {
        return rational_points == rhs.rational_points && irrational_part == rhs.irrational_part;
    }
};

// Binary form restriction of F to a line, coefficients of s^(3-k) t^k.
std::vector<Rational> restrict_to_line(const HomogeneousForm& f, const ProjectiveLine& line);

// The local model F o change = x0^2 x_last + x0 q + c with P at (1:0:...:0)
// and the tangent plane at x_last = 0. q and c live in num_vars - 1
// variables (the old x1..x_last renumbered from 0).
struct LocalNormalForm {
    LinearChange change;
    HomogeneousForm q;
    HomogeneousForm c;
};

struct InertiaSignature {
    std::size_t n_plus = 0;
    std::size_t n_minus = 0;
    std::size_t n_zero = 0;

    std::size_t dim() const { return n_plus + n_minus + n_zero; }
    std::size_t rank() const { return n_plus + n_minus; }
    bool full_rank() const { return n_zero == 0; }
    bool definite() const { return n_zero == 0 && (n_plus == 0 || n_minus == 0); }
    bool operator==(const InertiaSignature& rhs) const {
        return n_plus == rhs.n_plus && n_minus == rhs.n_minus && n_zero == rhs.n_zero;
    }
};

enum class LocalType { Isolated, HypersurfaceRich };
std::string to_string(LocalType t);

struct YbdSmoothnessReport {
    bool tangent_planes_distinct = false;  // (i)   T_C X != T_B X
    bool hessian_full_rank = false;        // (ii)  rank H_F(C) = n + 2
    bool off_critical_line = false;        // (iii) D off (l grad F(B) + m grad F(C)) H^-1
    bool certified_smooth = false;
};

// ---- operations ----

HomogeneousForm tangent_plane(const HomogeneousForm& f, const ProjectivePoint& p);

LineDivisor line_cubic_divisor(const HomogeneousForm& f, const ProjectiveLine& line);

ProjectivePoint third_point(const HomogeneousForm& f, const ProjectivePoint& p,
                            const ProjectivePoint& q);

LineDivisor tangent_residual(const HomogeneousForm& f, const ProjectivePoint& p,
                             const ProjectivePoint& direction);

LocalNormalForm local_normal_form(const HomogeneousForm& f, const ProjectivePoint& p);

// Alternate completion choices driven by a seed; used to confirm that rank
// and unordered signature of the second fundamental form do not depend on
// the arbitrary choices inside local_normal_form.
LocalNormalForm local_normal_form_seeded(const HomogeneousForm& f, const ProjectivePoint& p,
                                         unsigned long seed);

std::pair<HomogeneousForm, InertiaSignature> second_fundamental_form(const HomogeneousForm& f,
                                                                     const ProjectivePoint& p);

bool is_eckardt(const HomogeneousForm& f, const ProjectivePoint& p);

std::size_t hessian_rank_at(const HomogeneousForm& f, const ProjectivePoint& p);

LocalType tangent_section_local_type(const InertiaSignature& sig);
LocalType tangent_section_local_type(const HomogeneousForm& f, const ProjectivePoint& p);

YbdSmoothnessReport ybd_smoothness_certificate(const HomogeneousForm& f, const ProjectivePoint& b,
                                               const ProjectivePoint& c, const ProjectivePoint& d);

// Exact inertia by Lagrange congruence diagonalization (with hyperbolic
// pair extraction for all-zero diagonals).
InertiaSignature inertia_of(const SymmetricMatrix& m);
InertiaSignature inertia_of_quadratic(const HomogeneousForm& q);
SymmetricMatrix gram_matrix(const HomogeneousForm& q);

// The degree-2 form x -> grad F(x) . d, used as the middle equation of the
// Y_{B,D} system.
HomogeneousForm polar_form(const HomogeneousForm& f, const std::vector<Rational>& d);

// Exact check that the recorded divisor is the full intersection of the
// line with the cubic: deflates the restricted binary cubic by each claimed
// root and verifies nothing is left over. Needs no integer factorization,
// so it scales to arbitrary point heights.
bool verify_line_divisor(const HomogeneousForm& f, const ProjectiveLine& line,
                         const LineDivisor& divisor);

}  // namespace cubic

#endif
