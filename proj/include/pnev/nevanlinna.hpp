#pragma once

#include "pnev/plfunction.hpp"
#include "pnev/polynomial.hpp"
#include "pnev/series.hpp"
#include "pnev/valuation.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace pnev {

// Hypersurface D = {Q = 0} in P^N, Q homogeneous of degree d >= 1.
class Hypersurface {
public:
    // Throws InputError for a zero or inhomogeneous Q, or when `degree`
    // differs from the total degree of Q.
    Hypersurface(Polynomial poly, unsigned degree);
    explicit Hypersurface(Polynomial poly);

    const Polynomial& poly() const { return poly_; }
    unsigned degree() const { return degree_; }
    std::size_t ambient_dim() const { return poly_.nvars() - 1; }

    Hypersurface pow(unsigned k) const { return Hypersurface(poly_.pow(k), degree_ * k); }

    friend bool operator==(const Hypersurface&, const Hypersurface&) = default;

private:
    Polynomial poly_;
    unsigned degree_;
};

// Projective variety X in P^N given by homogeneous equations (none: X = P^N)
// and its claimed dimension n.
struct VarietySpec {
    std::vector<Polynomial> equations;
    std::size_t dimension = 0;

    static VarietySpec projective_space(std::size_t N) { return {{}, N}; }
    // Throws InputError unless every equation is homogeneous in N+1 variables
    // and 1 <= dimension <= N.
    void validate(std::size_t N) const;
    std::size_t codimension(std::size_t N) const { return N - dimension; }

    friend bool operator==(const VarietySpec&, const VarietySpec&) = default;
};

// Nonconstant analytic map f = (f_0, ..., f_N) : K -> P^N.
class ProjectiveMap {
public:
    // Throws InputError if every coordinate is zero, if the coordinates are
    // proportional (constant map), or, for polynomial coordinates, if they
    // share a common zero.
    explicit ProjectiveMap(std::vector<EntireSeries> coords);
    // Polynomial coordinates divided by their gcd first.
    static ProjectiveMap reduced(std::vector<EntireSeries> coords);

    const std::vector<EntireSeries>& coordinates() const { return coords_; }
    std::size_t ambient_dim() const { return coords_.size() - 1; }
    bool is_polynomial() const;
    // "gcd" when the absence of common zeros was checked, "asserted" for
    // truncated series where it cannot be decided.
    std::string common_zero_status() const { return is_polynomial() ? "gcd" : "asserted"; }

    ProjectiveMap rescaled(const Rational& c, const PrimeConfig& cfg) const;
    // Coordinate i moves to position perm[i].
    ProjectiveMap permuted(std::span<const std::size_t> perm) const;

private:
    std::vector<EntireSeries> coords_;
};

// Q(f_0, ..., f_N). The result may be zero (image contained in D); callers
// that need a nonzero pullback use checked_pullback.
EntireSeries pullback(const Polynomial& q, const ProjectiveMap& f, const PrimeConfig& cfg);
EntireSeries pullback(const Hypersurface& d, const ProjectiveMap& f, const PrimeConfig& cfg);
// Throws ImageInHypersurface when the pullback vanishes (to truncation order).
EntireSeries checked_pullback(const Hypersurface& d, const ProjectiveMap& f, const PrimeConfig& cfg);

// T_f(s) = max_j log_p |f_j|_{p^s}.
PLFunction characteristic(const ProjectiveMap& f, const PrimeConfig& cfg);
// m_f(s, D) = d * T_f(s) - log_p |Q o f|_{p^s}.
PLFunction proximity(const ProjectiveMap& f, const Hypersurface& d, const PrimeConfig& cfg);
// N_f(s, D): counting function of the zeros of Q o f.
PLFunction counting(const ProjectiveMap& f, const Hypersurface& d, const PrimeConfig& cfg);

struct FmtCheck {
    PLFunction characteristic;
    PLFunction proximity;
    PLFunction counting;
    Rational residual;  // m + N - d*T, a constant
    Rational expected;  // -log_p |a_k|, a_k the lowest pullback coefficient
};

// Forms m + N - d*T and confirms it is the constant -log_p|a_k|. Throws
// CheckFailure if either part fails.
FmtCheck fmt_check(const ProjectiveMap& f, const Hypersurface& d, const PrimeConfig& cfg);
Rational fmt_residual(const ProjectiveMap& f, const Hypersurface& d, const PrimeConfig& cfg);

// liminf m/(d T) = eventual slope of m over d times eventual slope of T.
// Throws InputError when the functions are only certified on a bounded window.
Rational defect(const ProjectiveMap& f, const Hypersurface& d, const PrimeConfig& cfg);

bool verify_image_in_variety(const ProjectiveMap& f, const VarietySpec& x, const PrimeConfig& cfg);

// How the geometric hypotheses behind a bound were established.
struct Preconditions {
    std::string general_position = "asserted";
    std::string transversality = "asserted";
};

struct HypersurfaceTerms {
    Hypersurface hypersurface;
    EntireSeries pullback;
    PLFunction proximity;
    PLFunction counting;
    // Only when the proximity is known on an interval unbounded above.
    std::optional<Rational> defect;
};

struct NevanlinnaReport {
    std::size_t dimension = 0;  // n = dim X
    unsigned multiplier = 1;    // M
    Preconditions preconditions;
    std::string common_zero_status;
    PLFunction characteristic;
    std::vector<HypersurfaceTerms> terms;
    PLFunction weighted_sum;  // sum_i m_i / deg D_i
    Rational bound_coefficient;  // n - 1 + max_i M / deg D_i
    PLFunction bound;            // bound_coefficient * T
    PLFunction margin;           // bound - weighted_sum
    Interval verdict_window;     // s >= 0, within the certified domain
    bool window_unbounded = true;
    Rational sum_slope;     // final slopes on the verdict window
    Rational bound_slope;
    Rational margin_slope;
    ExtLog margin_infimum = ExtLog::neg_inf();  // over the verdict window
    bool pass = false;      // margin bounded below on the window
    bool tight = false;     // margin slope exactly 0
};

// Evaluates sum m_i/deg D_i against (n - 1 + max_i M/deg D_i) T_f on s >= 0.
NevanlinnaReport smt_report(const ProjectiveMap& f, std::span<const Hypersurface> ds, const VarietySpec& x,
                            unsigned multiplier, const PrimeConfig& cfg, Preconditions pre = {});

struct BoundednessReport {
    struct Entry {
        std::size_t index;  // position in the input list
        Rational eventual_slope;
        std::optional<Rational> supremum;  // sup over s >= 0; nullopt when unbounded
    };
    std::size_t dimension = 0;
    std::vector<Entry> sorted;  // by eventual slope, descending
    bool pass = false;          // every entry past the first n has slope 0
};

// Sorts the proximity functions by growth and checks that all but the n
// largest stay bounded on s >= 0. Requires q > n and polynomial mode.
BoundednessReport sorted_proximity_boundedness(const ProjectiveMap& f, std::span<const Hypersurface> ds,
                                               const VarietySpec& x, const PrimeConfig& cfg);

}  // namespace pnev
