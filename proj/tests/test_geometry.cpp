#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "cubic/errors.hpp"
#include "cubic/geometry.hpp"
#include "cubic/span.hpp"
#include "support/elliptic_oracle.hpp"
#include "support/fixtures.hpp"
#include "support/ybd_sampler.hpp"

using namespace cubic;
using namespace cubic::tests;

namespace {

ProjectivePoint pt(const char* lit) { return ProjectivePoint::parse(lit); }

// Lifts a normal-form pair (q, c) back to m variables and rebuilds
// x0^2 x_last + x0 q + c for the coefficientwise reconstruction check.
HomogeneousForm reassemble(const LocalNormalForm& lnf, std::size_t m) {
    HomogeneousForm::ExponentVec lead(m, 0);
    lead[0] = 2;
    lead[m - 1] = 1;
    HomogeneousForm out = HomogeneousForm::monomial(m, lead, 1);
    for (const auto& [exps, coeff] : lnf.q.terms()) {
        HomogeneousForm::ExponentVec e;
        e.push_back(1);
        e.insert(e.end(), exps.begin(), exps.end());
        out.add_term(e, coeff);
    }
    for (const auto& [exps, coeff] : lnf.c.terms()) {
        HomogeneousForm::ExponentVec e;
        e.push_back(0);
        e.insert(e.end(), exps.begin(), exps.end());
        out.add_term(e, coeff);
    }
    return out;
}

}  // namespace

TEST_CASE("line canonicalization is representation independent") {
    ProjectivePoint p = pt("(3:5:1)"), q = pt("(3:-5:1)");
    ProjectiveLine l1 = ProjectiveLine::through(p, q);
    ProjectiveLine l2 = ProjectiveLine::through(q, p);
    CHECK(l1 == l2);
    // a third point of the same line gives the same canonical basis
    ProjectiveLine l3 = ProjectiveLine::through(p, l1.point_at(2, -7));
    CHECK(l1 == l3);
    CHECK(l1.contains(q));
    CHECK_FALSE(l1.contains(pt("(0:0:1)")));
    CHECK_THROWS_AS(ProjectiveLine::through(p, p), ValidationError);
}

TEST_CASE("tangent_plane examples") {
    HomogeneousForm fermat = fermat_cubic();
    HomogeneousForm tp = tangent_plane(fermat, pt("(1:-1:0:0)"));
    CHECK(tp.linear_coefficients() == std::vector<Rational>{1, 1, 0, 0});

    HomogeneousForm e = mordell_curve();
    HomogeneousForm tpe = tangent_plane(e, pt("(3:5:1)"));
    // primitive normalization may flip the overall sign of (-27, 10, 31)
    std::vector<Rational> got = tpe.linear_coefficients();
    bool same = got == std::vector<Rational>{-27, 10, 31};
    bool flipped = got == std::vector<Rational>{27, -10, -31};
    CHECK((same || flipped));
    // P lies on its own tangent plane
    CHECK(tpe.evaluate(pt("(3:5:1)")) == 0);

    CHECK_THROWS_AS(tangent_plane(fermat, pt("(1:1:0:0)")), ValidationError);
}

TEST_CASE("line_cubic_divisor: vertical chord on the Mordell curve") {
    HomogeneousForm e = mordell_curve();
    ProjectiveLine chord = ProjectiveLine::through(pt("(3:5:1)"), pt("(3:-5:1)"));
    LineDivisor div = line_cubic_divisor(e, chord);
    CHECK(div.total_degree() == 3);
    CHECK(div.contains(pt("(3:5:1)")));
    CHECK(div.contains(pt("(3:-5:1)")));
    CHECK(div.contains(pt("(0:1:0)")));
    CHECK(div.irrational_part.empty());
}

TEST_CASE("line_cubic_divisor: line inside the Fermat surface") {
    HomogeneousForm fermat = fermat_cubic();
    ProjectiveLine inside = ProjectiveLine::through(pt("(1:-1:0:0)"), pt("(0:0:1:-1)"));
    CHECK_THROWS_AS(line_cubic_divisor(fermat, inside), LineContainedError);
}

TEST_CASE("line_cubic_divisor: tangent line multiplicity") {
    HomogeneousForm e = mordell_curve();
    ProjectiveLine tangent = ProjectiveLine::through(pt("(3:5:1)"), pt("(1290:383:1000)"));
    LineDivisor div = line_cubic_divisor(e, tangent);
    CHECK(div.total_degree() == 3);
    CHECK(div.contains(pt("(3:5:1)"), 2));
    CHECK(div.contains(pt("(1290:383:1000)"), 1));
}

TEST_CASE("line_cubic_divisor: irrational factors") {
    HomogeneousForm e = mordell_curve();

    // line x0 = 0 meets the curve in O plus the definite quadratic s^2 + 2t^2
    ProjectiveLine l0 = ProjectiveLine::through(pt("(0:1:0)"), pt("(0:0:1)"));
    LineDivisor div0 = line_cubic_divisor(e, l0);
    CHECK(div0.total_degree() == 3);
    CHECK(div0.rational_points.size() == 1);
    CHECK(div0.contains(pt("(0:1:0)")));
    CHECK(div0.irrational_part == std::vector<std::pair<unsigned, unsigned>>{{2, 1}});

    // line x1 = 0 meets it where x^3 = 2: an irreducible cubic, no rational point
    ProjectiveLine l1 = ProjectiveLine::through(pt("(0:0:1)"), pt("(1:0:0)"));
    LineDivisor div1 = line_cubic_divisor(e, l1);
    CHECK(div1.total_degree() == 3);
    CHECK(div1.rational_points.empty());
    CHECK(div1.irrational_part == std::vector<std::pair<unsigned, unsigned>>{{3, 1}});
}

TEST_CASE("verify_line_divisor rejects wrong claims") {
    HomogeneousForm e = mordell_curve();
    ProjectiveLine chord = ProjectiveLine::through(pt("(3:5:1)"), pt("(3:-5:1)"));
    LineDivisor good = line_cubic_divisor(e, chord);
    CHECK(verify_line_divisor(e, chord, good));

    // wrong point
    LineDivisor wrong_point = good;
    wrong_point.rational_points[0].first = pt("(1290:383:1000)");
    CHECK_FALSE(verify_line_divisor(e, chord, wrong_point));

    // inflated multiplicity
    LineDivisor wrong_mult = good;
    wrong_mult.rational_points[0].second += 1;
    CHECK_FALSE(verify_line_divisor(e, chord, wrong_mult));

    // missing point leaves an unexplained remainder
    LineDivisor missing = good;
    missing.rational_points.pop_back();
    CHECK_FALSE(verify_line_divisor(e, chord, missing));
}

TEST_CASE("line_cubic_divisor: triple root with a sign-flipped parameter") {
    // (3 x0 + 2 x1)^3 as a binary cubic: the unique root (2 : -3) must come
    // out once with multiplicity 3, not split across representations
    HomogeneousForm f(2, 3);
    f.add_term({3, 0}, 27);
    f.add_term({2, 1}, 54);
    f.add_term({1, 2}, 36);
    f.add_term({0, 3}, 8);
    ProjectiveLine all = ProjectiveLine::through(ProjectivePoint::parse("(1:0)"),
                                                 ProjectivePoint::parse("(0:1)"));
    LineDivisor div = line_cubic_divisor(f, all);
    REQUIRE(div.rational_points.size() == 1);
    CHECK(div.rational_points[0].first == ProjectivePoint::parse("(2:-3)"));
    CHECK(div.rational_points[0].second == 3);
}

TEST_CASE("third_point: group law cases") {
    HomogeneousForm e = mordell_curve();
    CHECK(third_point(e, pt("(3:5:1)"), pt("(3:-5:1)")) == pt("(0:1:0)"));
    CHECK(third_point(e, pt("(3:5:1)"), pt("(0:1:0)")) == pt("(3:-5:1)"));
    CHECK_THROWS_AS(third_point(fermat_cubic(), pt("(1:-1:0:0)"), pt("(0:0:1:-1)")),
                    LineContainedError);
    CHECK_THROWS_AS(third_point(e, pt("(3:5:1)"), pt("(3:5:1)")), ValidationError);
}

TEST_CASE("third_point is symmetric and stays on the surface") {
    HomogeneousForm f = fermat_cubic();
    std::vector<ProjectivePoint> pts = enumerate_points(f, HeightBound(Integer(1))).sorted();
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            try {
                ProjectivePoint r1 = third_point(f, pts[i], pts[j]);
                ProjectivePoint r2 = third_point(f, pts[j], pts[i]);
                CHECK(r1 == r2);
                CHECK(f.evaluate(r1) == 0);
            } catch (const LineContainedError&) {
                // fine: many height-1 pairs span lines inside Fermat
            }
        }
}

TEST_CASE("tangent_residual examples") {
    HomogeneousForm e = mordell_curve();
    // tangent direction at P = (3:5:1): any second point of T_P
    auto lines = tangent_lines_at(e, pt("(3:5:1)"), 3);
    REQUIRE(lines.size() == 1);
    LineDivisor div = tangent_residual(e, pt("(3:5:1)"), lines[0].direction);
    CHECK(div.contains(pt("(3:5:1)"), 2));
    CHECK(div.contains(pt("(1290:383:1000)")));

    // inflection: tangent at O meets with multiplicity three
    auto at_o = tangent_lines_at(e, pt("(0:1:0)"), 3);
    REQUIRE(at_o.size() == 1);
    LineDivisor infl = tangent_residual(e, pt("(0:1:0)"), at_o[0].direction);
    CHECK(infl.contains(pt("(0:1:0)"), 3));
    CHECK(infl.total_degree() == 3);

    CHECK_THROWS_AS(tangent_residual(e, pt("(3:5:1)"), pt("(1:0:0)")), ValidationError);
}

TEST_CASE("local_normal_form: already in normal shape") {
    HomogeneousForm f(3, 3);
    f.add_term({2, 0, 1}, 1);  // x0^2 x2
    f.add_term({1, 2, 0}, 1);  // x0 x1^2
    f.add_term({0, 3, 0}, 1);  // x1^3
    LocalNormalForm lnf = local_normal_form(f, pt("(1:0:0)"));
    CHECK(lnf.change.matrix() == QMatrix::identity(3));
    CHECK(lnf.q == HomogeneousForm::monomial(2, {2, 0}, 1));
    CHECK(lnf.c == HomogeneousForm::monomial(2, {3, 0}, 1));
}

TEST_CASE("local_normal_form: reconstruction identity on sampled points") {
    std::vector<std::pair<HomogeneousForm, ProjectivePoint>> cases = {
        {mordell_curve(), pt("(3:5:1)")},
        {mordell_curve(), pt("(0:1:0)")},
        {fermat_cubic(), pt("(1:-1:0:0)")},
        {fermat_cubic(), pt("(1:-1:1:-1)")},
        {diag_surface(), pt("(1:-1:0:0)")},
        {diag_surface(), pt("(1:1:0:-1)")},
    };
    for (const auto& [f, p] : cases) {
        LocalNormalForm lnf = local_normal_form(f, p);
        HomogeneousForm composed = compose_with_matrix(f, lnf.change.matrix());
        CHECK(composed == reassemble(lnf, f.num_vars()));
        // the change moves (1:0:...:0) to p
        std::vector<Rational> e0(f.num_vars(), 0);
        e0[0] = 1;
        CHECK(ProjectivePoint::from_rationals(lnf.change.matrix().apply(e0)) == p);
    }
}

TEST_CASE("second fundamental form: Fermat Eckardt point") {
    auto [pi, sig] = second_fundamental_form(fermat_cubic(), pt("(1:-1:0:0)"));
    CHECK(pi.is_zero());
    CHECK(sig == InertiaSignature{0, 0, 2});
    CHECK(is_eckardt(fermat_cubic(), pt("(1:-1:0:0)")));
    CHECK_FALSE(is_eckardt(fermat_cubic(), pt("(1:-1:1:-1)")));
}

TEST_CASE("inertia by congruence diagonalization") {
    HomogeneousForm q(2, 2);
    q.add_term({2, 0}, 1);
    q.add_term({0, 2}, -1);
    CHECK(inertia_of_quadratic(q) == InertiaSignature{1, 1, 0});

    // all-zero diagonal forces a hyperbolic-pair pivot
    HomogeneousForm hyp(2, 2);
    hyp.add_term({1, 1}, 1);
    CHECK(inertia_of_quadratic(hyp) == InertiaSignature{1, 1, 0});

    HomogeneousForm zero(3, 2);
    CHECK(inertia_of_quadratic(zero) == InertiaSignature{0, 0, 3});

    HomogeneousForm pos(2, 2);
    pos.add_term({2, 0}, 2);
    pos.add_term({1, 1}, 1);
    pos.add_term({0, 2}, 3);
    CHECK(inertia_of_quadratic(pos) == InertiaSignature{2, 0, 0});
}

TEST_CASE("points on a line inside a surface are hyperbolic") {
    // (2 : -2 : 1 : -1) lies on a real line of the Fermat surface; its
    // second fundamental form is indefinite of full rank
    HomogeneousForm f = fermat_cubic();
    ProjectivePoint p = pt("(2:-2:1:-1)");
    REQUIRE(f.evaluate(p) == 0);
    auto [pi, sig] = second_fundamental_form(f, p);
    CHECK(sig.n_zero == 0);
    CHECK(sig.n_plus == 1);
    CHECK(sig.n_minus == 1);

    // the whole line lies in T_P X at every sampled rational point of it
    ProjectiveLine l = ProjectiveLine::through(pt("(1:-1:0:0)"), pt("(0:0:1:-1)"));
    for (long a = -3; a <= 3; ++a)
        for (long b = 1; b <= 3; ++b) {
            ProjectivePoint q = l.point_at(Integer(a), Integer(b));
            std::vector<Rational> g = f.gradient(q);
            for (const ProjectivePoint& basis : {l.basis_a(), l.basis_b()}) {
                Rational acc = 0;
                for (std::size_t i = 0; i < 4; ++i) acc += g[i] * Rational(basis[i]);
                CHECK(acc == 0);
            }
        }
}

TEST_CASE("Fermat height-1 census: 9 points, 6 Eckardt") {
    HomogeneousForm f = fermat_cubic();
    auto pts = enumerate_points(f, HeightBound(Integer(1))).sorted();
    REQUIRE(pts.size() == 9);
    std::size_t eckardt = 0;
    for (const auto& p : pts) {
        bool e = is_eckardt(f, p);
        std::size_t hrank = hessian_rank_at(f, p);
        auto sig = second_fundamental_form(f, p).second;
        if (e) {
            ++eckardt;
            CHECK(sig == InertiaSignature{0, 0, 2});
            CHECK(hrank == 2);
        } else {
            CHECK(sig.n_zero == 0);
            CHECK(hrank == 4);
        }
        // rank biconditional: full-rank second form iff full-rank Hessian
        CHECK((sig.n_zero == 0) == (hrank == 4));
    }
    CHECK(eckardt == 6);
}

TEST_CASE("Hessian-rank biconditional across sampled surface points") {
    for (const HomogeneousForm& f : {fermat_cubic(), diag_surface()}) {
        for (const auto& p : enumerate_points(f, HeightBound(Integer(2))).sorted()) {
            auto sig = second_fundamental_form(f, p).second;
            CHECK((sig.n_zero == 0) == (hessian_rank_at(f, p) == f.num_vars()));
        }
    }
}

TEST_CASE("hessian_rank_at: zero form") {
    HomogeneousForm zero(4, 3);
    CHECK(hessian_rank_at(zero, pt("(1:0:0:0)")) == 0);
}

TEST_CASE("local type classification") {
    CHECK(tangent_section_local_type(InertiaSignature{2, 0, 0}) == LocalType::Isolated);
    CHECK(tangent_section_local_type(InertiaSignature{0, 2, 0}) == LocalType::Isolated);
    CHECK(tangent_section_local_type(InertiaSignature{1, 1, 0}) == LocalType::HypersurfaceRich);
    CHECK_THROWS_AS(tangent_section_local_type(InertiaSignature{1, 0, 1}), NotFullRankError);
    CHECK(tangent_section_local_type(fermat_cubic(), pt("(2:-2:1:-1)")) ==
          LocalType::HypersurfaceRich);
}

TEST_CASE("normal-form invariants under alternate completions") {
    std::vector<std::pair<HomogeneousForm, ProjectivePoint>> cases = {
        {fermat_cubic(), pt("(1:-1:0:0)")},
        {fermat_cubic(), pt("(1:-1:1:-1)")},
        {fermat_cubic(), pt("(2:-2:1:-1)")},
        {diag_surface(), pt("(1:1:0:-1)")},
        {mordell_curve(), pt("(3:5:1)")},
    };
    for (const auto& [f, p] : cases) {
        auto [pi0, sig0] = second_fundamental_form(f, p);
        for (unsigned long seed = 1; seed <= 10; ++seed) {
            LocalNormalForm lnf = local_normal_form_seeded(f, p, seed);
            CHECK(compose_with_matrix(f, lnf.change.matrix()) ==
                  reassemble(lnf, f.num_vars()));
            HomogeneousForm pi(lnf.q.num_vars() - 1, 2);
            for (const auto& [exps, coeff] : lnf.q.terms()) {
                if (exps.back() != 0) continue;
                HomogeneousForm::ExponentVec rest(exps.begin(), exps.end() - 1);
                pi.add_term(rest, coeff);
            }
            InertiaSignature sig = inertia_of_quadratic(pi);
            CHECK(sig.rank() == sig0.rank());
            // signature is only defined up to an overall sign swap
            bool same = sig.n_plus == sig0.n_plus && sig.n_minus == sig0.n_minus;
            bool swapped = sig.n_plus == sig0.n_minus && sig.n_minus == sig0.n_plus;
            CHECK((same || swapped));
        }
    }
}

TEST_CASE("is_eckardt is invariant under unimodular coordinate changes") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> entry(-2, 2);
    HomogeneousForm f = fermat_cubic();
    for (const char* lit : {"(1:-1:0:0)", "(1:-1:1:-1)", "(2:-2:1:-1)"}) {
        ProjectivePoint p = pt(lit);
        bool want = is_eckardt(f, p);
        for (int trial = 0; trial < 5; ++trial) {
            QMatrix t = QMatrix::identity(4);
            for (int k = 0; k < 6; ++k) {
                std::size_t i = rng() % 4, j = rng() % 4;
                if (i == j) continue;
                long c = entry(rng);
                for (std::size_t col = 0; col < 4; ++col)
                    t.at(i, col) += Rational(c) * t.at(j, col);
            }
            LinearChange change{t};
            HomogeneousForm ft = apply_linear_change(f, change);
            ProjectivePoint pre =
                ProjectivePoint::from_rationals(change.inverse().matrix().apply(p.as_rationals()));
            REQUIRE(ft.evaluate(pre) == 0);
            CHECK(is_eckardt(ft, pre) == want);
        }
    }
}

TEST_CASE("divisor degree invariant on random forms and lines") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<long> coeff(-3, 3);
    std::uniform_int_distribution<long> coord(-4, 4);
    std::uniform_int_distribution<std::size_t> nv(3, 5);

    for (int trial = 0; trial < 500; ++trial) {
        std::size_t m = nv(rng);
        HomogeneousForm f(m, 3);
        for (int t = 0; t < 6; ++t) {
            HomogeneousForm::ExponentVec e(m, 0);
            for (unsigned left = 0; left < 3; ++left) e[rng() % m] += 1;
            f.add_term(e, Rational(coeff(rng)));
        }
        if (f.is_zero()) continue;

        std::vector<Integer> a(m), b(m);
        for (std::size_t i = 0; i < m; ++i) a[i] = coord(rng);
        for (std::size_t i = 0; i < m; ++i) b[i] = coord(rng);
        std::vector<ProjectivePoint> ab;
        try {
            ab.emplace_back(a);
            ab.emplace_back(b);
        } catch (const ValidationError&) {
            continue;
        }
        if (ab[0] == ab[1]) continue;
        ProjectiveLine line = ProjectiveLine::through(ab[0], ab[1]);

        // independent oracle: polarization coefficients via gradients
        Rational g0 = f.evaluate(line.basis_a());
        Rational g3 = f.evaluate(line.basis_b());
        std::vector<Rational> ga = f.gradient(line.basis_a());
        std::vector<Rational> gb = f.gradient(line.basis_b());
        Rational g1 = 0, g2 = 0;
        for (std::size_t i = 0; i < m; ++i) {
            g1 += ga[i] * Rational(line.basis_b()[i]);
            g2 += gb[i] * Rational(line.basis_a()[i]);
        }
        bool all_vanish = g0 == 0 && g1 == 0 && g2 == 0 && g3 == 0;

        // implementation route: restriction by matrix composition
        std::vector<Rational> coeffs = restrict_to_line(f, line);
        CHECK(coeffs[0] == g0);
        CHECK(coeffs[1] == g1);
        CHECK(coeffs[2] == g2);
        CHECK(coeffs[3] == g3);

        try {
            LineDivisor div = line_cubic_divisor(f, line);
            CHECK(div.total_degree() == 3);
            CHECK_FALSE(all_vanish);
            CHECK(verify_line_divisor(f, line, div));
        } catch (const LineContainedError&) {
            CHECK(all_vanish);
        }
    }
}

TEST_CASE("ybd certificate: violated conditions") {
    HomogeneousForm f = fermat_cubic();

    // (i) fails when C shares the tangent plane with B (take C = B)
    ProjectivePoint b = pt("(1:-1:1:-1)");
    YbdSmoothnessReport same = ybd_smoothness_certificate(f, b, b, pt("(1:-1:0:0)"));
    CHECK_FALSE(same.tangent_planes_distinct);
    CHECK_FALSE(same.certified_smooth);

    // (ii) fails at an Eckardt point: H_F has rank 2 there
    ProjectivePoint c = pt("(1:-1:0:0)");
    ProjectivePoint d = pt("(0:0:1:-1)");
    YbdSmoothnessReport eck = ybd_smoothness_certificate(f, b, c, d);
    CHECK(eck.tangent_planes_distinct);
    CHECK_FALSE(eck.hessian_full_rank);
    CHECK_FALSE(eck.certified_smooth);

    // incidence preconditions are enforced
    CHECK_THROWS_AS(ybd_smoothness_certificate(f, b, pt("(1:0:-1:0)"), pt("(1:-1:0:0)")),
                    ValidationError);
}

TEST_CASE("ybd certificate agrees with the exact rank oracle on sampled triples") {
    std::size_t certified_true = 0, checked = 0;
    for (const HomogeneousForm& f : {fermat_cubic(), diag_surface()}) {
        for (const auto& [b, c, d] : sample_ybd_triples(f, 2, 3, 2)) {
            YbdSmoothnessReport rep = ybd_smoothness_certificate(f, b, c, d);
            // independent oracle: differentiate the three defining
            // polynomials symbolically and take the exact rank
            HomogeneousForm polar = polar_form(f, d.as_rationals());
            std::vector<Rational> r1 = f.gradient(c);
            std::vector<Rational> r2 = polar.gradient(c);
            std::vector<Rational> r3 = f.gradient(b);
            std::size_t rank = QMatrix::from_rows({r1, r2, r3}).rank();
            CHECK(rep.certified_smooth == (rank == 3));
            if (rep.certified_smooth) ++certified_true;
            ++checked;
        }
    }
    // the sample must be informative in both directions
    CHECK(checked >= 100);
    CHECK(certified_true >= 10);
    CHECK(certified_true < checked);
}
