#ifndef CUBIC_TESTS_FIXTURES_HPP
#define CUBIC_TESTS_FIXTURES_HPP

#include "cubic/form.hpp"

namespace cubic::tests {

// x0^3 + x1^3 + x2^3 + x3^3 (smooth cubic surface in P^3)
inline HomogeneousForm fermat_cubic() {
    HomogeneousForm f(4, 3);
    f.add_term({3, 0, 0, 0}, 1);
    f.add_term({0, 3, 0, 0}, 1);
    f.add_term({0, 0, 3, 0}, 1);
    f.add_term({0, 0, 0, 3}, 1);
    return f;
}

// x1^2 x2 - x0^3 + 2 x2^3: the plane cubic y^2 = x^3 - 2 with
// x = x0/x2, y = x1/x2. Rank one, generator (3 : 5 : 1).
inline HomogeneousForm mordell_curve() {
    HomogeneousForm f(3, 3);
    f.add_term({0, 2, 1}, 1);
    f.add_term({3, 0, 0}, -1);
    f.add_term({0, 0, 3}, 2);
    return f;
}

// x0^3 + x1^3 + x2^3 + 2 x3^3 (smooth, less symmetric than Fermat)
inline HomogeneousForm diag_surface() {
    HomogeneousForm f(4, 3);
    f.add_term({3, 0, 0, 0}, 1);
    f.add_term({0, 3, 0, 0}, 1);
    f.add_term({0, 0, 3, 0}, 1);
    f.add_term({0, 0, 0, 3}, 2);
    return f;
}

}  // namespace cubic::tests

#endif
