#include "cubic/point.hpp"

#include <algorithm>
#include <sstream>

#include "cubic/errors.hpp"

namespace cubic {

void canonicalize_primitive(std::vector<Integer>& v) {
    Integer g = 0;
    for (const auto& c : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 0) throw ValidationError("projective point cannot be the zero vector");
    int lead_sign = 0;
    for (const auto& c : v) {
        if (c != 0) { lead_sign = sgn(c); break; }
    }
    if (lead_sign < 0) g = -g;
    for (auto& c : v) c /= g;
}

ProjectivePoint::ProjectivePoint(std::vector<Integer> coords) : coords_(std::move(coords)) {
    if (coords_.empty()) throw ValidationError("projective point needs at least one coordinate");
    canonicalize_primitive(coords_);
}

ProjectivePoint ProjectivePoint::from_rationals(const std::vector<Rational>& coords) {
    Integer lcm = 1;
    for (const auto& q : coords) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den().get_mpz_t());
    std::vector<Integer> ints;
    ints.reserve(coords.size());
    for (const auto& q : coords) {
        Rational scaled = q * Rational(lcm);
        ints.push_back(scaled.get_num());
    }
    return ProjectivePoint(std::move(ints));
}

ProjectivePoint ProjectivePoint::parse(const std::string& literal) {
    std::string s = literal;
    if (s.size() >= 2 && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
    std::vector<Integer> coords;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ':')) {
        // trim spaces
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        coords.push_back(parse_integer(item));
    }
    if (coords.empty()) throw ValidationError("empty point literal '" + literal + "'");
    return ProjectivePoint(std::move(coords));
}

Integer ProjectivePoint::naive_height() const {
    Integer h = 0;
    for (const auto& c : coords_) {
        Integer a = abs(c);
        if (a > h) h = a;
    }
    return h;
}

std::string ProjectivePoint::to_string() const {
    std::string out = "(";
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (i) out += ":";
        out += coords_[i].get_str();
    }
    out += ")";
    return out;
}

std::vector<Rational> ProjectivePoint::as_rationals() const {
    std::vector<Rational> out;
    out.reserve(coords_.size());
    for (const auto& c : coords_) out.emplace_back(c);
    return out;
}

bool ProjectivePoint::operator<(const ProjectivePoint& other) const {
    if (coords_.size() != other.coords_.size()) return coords_.size() < other.coords_.size();
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        int c = cmp(coords_[i], other.coords_[i]);
        if (c != 0) return c < 0;
    }
    return false;
}

std::size_t PointHash::operator()(const ProjectivePoint& p) const {
    std::size_t h = p.num_vars();
    std::hash<unsigned long> mix;
    for (const auto& c : p.coords()) {
        unsigned long limb = mpz_get_ui(c.get_mpz_t());
        std::size_t s = mix(limb + 0x9e3779b97f4a7c15ull * (sgn(c) + 2));
        h ^= s + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
}

bool proportional(const std::vector<Integer>& a, const std::vector<Integer>& b) {
    if (a.size() != b.size()) return false;
    // a ~ b iff all 2x2 minors vanish.
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j)
            if (a[i] * b[j] != a[j] * b[i]) return false;
    return true;
}

}  // namespace cubic
