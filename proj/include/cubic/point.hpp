#ifndef CUBIC_POINT_HPP
#define CUBIC_POINT_HPP

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "cubic/rational.hpp"

namespace cubic {

// Rational projective point stored as its canonical representative: a
// primitive integer vector whose first nonzero coordinate is positive.
// Canonical representatives make equality, ordering and hashing exact.
class ProjectivePoint {
 public:
    explicit ProjectivePoint(std::vector<Integer> coords);
    static ProjectivePoint from_rationals(const std::vector<Rational>& coords);
    static ProjectivePoint parse(const std::string& literal);  // "(a:b:...:c)"

    std::size_t num_vars() const { return coords_.size(); }
    const std::vector<Integer>& coords() const { return coords_; }
    const Integer& operator[](std::size_t i) const { return coords_[i]; }

    Integer naive_height() const;  // max |coordinate|

    std::string to_string() const;  // "(a:b:...:c)"
    std::vector<Rational> as_rationals() const;

    bool operator==(const ProjectivePoint& other) const { return coords_ == other.coords_; }
    bool operator!=(const ProjectivePoint& other) const { return coords_ != other.coords_; }
    bool operator<(const ProjectivePoint& other) const;

 private:
    std::vector<Integer> coords_;
};

struct PointHash {
    std::size_t operator()(const ProjectivePoint& p) const;
};

// True when the integer vectors are proportional (same projective point,
// ignoring canonical form). Zero vectors are rejected by ProjectivePoint,
// so this is only needed for raw direction vectors.
bool proportional(const std::vector<Integer>& a, const std::vector<Integer>& b);

// gcd-normalizes in place: divides by the gcd and flips signs so the first
// nonzero entry is positive. Throws on the zero vector.
void canonicalize_primitive(std::vector<Integer>& v);

}  // namespace cubic

#endif
