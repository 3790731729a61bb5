#include "cubic/rational.hpp"

#include <cmath>
#include <cstdlib>

namespace cubic {

Rational parse_rational(const std::string& text) {
    if (text.empty()) throw ValidationError("empty rational literal");
    try {
        Rational q(text);
        q.canonicalize();
        if (q.get_den() == 0) throw ValidationError("zero denominator in '" + text + "'");
        return q;
    } catch (const std::invalid_argument&) {
        throw ValidationError("cannot parse rational '" + text + "'");
    }
}

std::string rational_to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string integer_to_string(const Integer& z) { return z.get_str(); }

Integer parse_integer(const std::string& text) {
    if (text.empty()) throw ValidationError("empty integer literal");
    try {
        return Integer(text);
    } catch (const std::invalid_argument&) {
        throw ValidationError("cannot parse integer '" + text + "'");
    }
}

Rational rationalize(double x, unsigned long max_den) {
    if (!std::isfinite(x)) throw ValidationError("cannot rationalize a non-finite value");
    bool neg = x < 0;
    double v = std::fabs(x);
    // Stern-Brocot style continued fraction expansion with a denominator cap.
    Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double frac = v;
    for (int iter = 0; iter < 64; ++iter) {
        double fl = std::floor(frac);
        if (fl > 1e18) break;
        Integer a(static_cast<unsigned long>(fl));
        Integer p2 = a * p1 + p0;
        Integer q2 = a * q1 + q0;
        if (q2 > Integer(max_den)) break;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        double rem = frac - fl;
        if (rem < 1e-15) break;
        frac = 1.0 / rem;
    }
    if (q1 == 0) { p1 = p0; q1 = q0; }
    if (q1 == 0) throw ValidationError("rationalize failed");
    Rational q(neg ? Integer(-p1) : p1, q1);
    q.canonicalize();
    return q;
}

}  // namespace cubic
