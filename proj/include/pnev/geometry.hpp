#pragma once

#include "pnev/nevanlinna.hpp"
#include "pnev/polynomial.hpp"
#include "pnev/rational.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace pnev {

// Point of P^N over Q, stored with its first nonzero coordinate equal to 1.
class ProjectivePoint {
public:
    // Throws InputError if every coordinate is zero.
    explicit ProjectivePoint(std::vector<Rational> coords);

    const std::vector<Rational>& coords() const { return coords_; }
    std::size_t ambient_dim() const { return coords_.size() - 1; }

    friend bool operator==(const ProjectivePoint&, const ProjectivePoint&) = default;
    std::string str() const;

private:
    std::vector<Rational> coords_;
};

// Line in P^N parametrized by (u : v) -> u*a + v*b.
class ProjectiveLine {
public:
    // Throws InputError unless a and b are linearly independent.
    ProjectiveLine(std::vector<Rational> a, std::vector<Rational> b);
    // The coordinate line x_2 = ... = x_N = 0 through (1:0:...:0) and (0:1:0:...:0).
    static ProjectiveLine coordinate_line(std::size_t N);

    const std::vector<Rational>& a() const { return a_; }
    const std::vector<Rational>& b() const { return b_; }
    std::size_t ambient_dim() const { return a_.size() - 1; }

private:
    std::vector<Rational> a_;
    std::vector<Rational> b_;
};

// Homogeneous binary forms are Polynomials in two variables: x0 = u, x1 = v.
using BinaryForm = Polynomial;

// Substitutes x_i -> images[i].
Polynomial substitute(const Polynomial& q, std::span<const Polynomial> images);

// Rank of the Jacobian of `polys` at P. Throws InputError if some polynomial
// does not vanish at P.
std::size_t jacobian_rank_at(std::span<const Polynomial> polys, const ProjectivePoint& p);

// True iff the Jacobian of the hypersurfaces together with the equations of X
// has rank |ds| + codim X at P.
bool transversality_check(std::span<const Hypersurface> ds, const VarietySpec& x, const ProjectivePoint& p);

// Q restricted to L, a binary form of degree d; zero when L lies in D.
BinaryForm restrict_to_line(const Hypersurface& d, const ProjectiveLine& line);

struct IntersectionProfile {
    std::vector<std::pair<ProjectivePoint, unsigned>> roots;  // rational roots in P^1
    unsigned residual_degree = 0;  // degree of the part without rational roots

    std::string str() const;
};

// Rational roots of a nonzero binary form with their multiplicities.
IntersectionProfile line_intersection_profile(const BinaryForm& form);

// Rational roots of a nonzero univariate polynomial (lowest degree first),
// with multiplicities, sorted ascending.
std::vector<std::pair<Rational, unsigned>> rational_roots(std::vector<Rational> coeffs);

// Degree-d hypersurfaces D_1..D_n in P^n meeting the line L = {x_2 = ... = x_n = 0}
// only at P = (1:0:...:0) (except D_n), transverse at P, together with the map
// f = (z, 1, 0, ..., 0), for which the weighted proximity sum equals
// (n - 1 + 1/d) T_f up to a constant on s >= 0.
struct SharpnessConfig {
    std::size_t n = 0;
    unsigned d = 0;
    long p = 0;
    std::vector<Hypersurface> hypersurfaces;
    ProjectiveMap map;
    ProjectivePoint point;
    ProjectiveLine line;
};

// Throws CheckFailure if the generated configuration fails its own checks.
SharpnessConfig sharpness_family(std::size_t n, unsigned d, const PrimeConfig& cfg);

}  // namespace pnev
