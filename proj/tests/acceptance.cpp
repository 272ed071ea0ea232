// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Every check is exact; randomized parts use fixed seeds.

#include "support.hpp"

#include "pnev/errors.hpp"
#include "pnev/geometry.hpp"
#include "pnev/linalg.hpp"

#include <algorithm>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>

using namespace pnev;
using namespace pnev::testing;

namespace {

struct Outcome {
    bool ok = true;
    std::size_t cases = 0;
    std::string first_failure;

    void fail(const std::string& why) {
        if (ok) first_failure = why;
        ok = false;
    }
    void expect(bool cond, const std::function<std::string()>& why) {
        if (!cond) fail(why());
    }
};

const Interval kNonneg = Interval::at_least(0);

std::vector<EntireSeries> random_coords(Random& rng, std::size_t N, long max_deg, long bound) {
    std::vector<EntireSeries> coords;
    for (std::size_t j = 0; j <= N; ++j) {
        std::vector<Rational> a(static_cast<std::size_t>(rng.integer(1, max_deg + 1)));
        for (auto& c : a) c = rng.coin() ? rng.fraction(bound) : Rational(0);
        coords.push_back(EntireSeries::polynomial(std::move(a)));
    }
    return coords;
}

// Nonconstant polynomial map without common zeros (after dividing by the gcd).
ProjectiveMap random_map(Random& rng, std::size_t N, long max_deg, long bound) {
    for (;;) {
        try {
            return ProjectiveMap::reduced(random_coords(rng, N, max_deg, bound));
        } catch (const InputError&) {
        }
    }
}

// A map together with hypersurfaces whose pullbacks are all nonzero.
struct Instance {
    long p;
    ProjectiveMap f;
    std::vector<Hypersurface> ds;
};

Instance random_instance(Random& rng, std::size_t q) {
    for (;;) {
        long p = rng.prime({2, 3, 5, 7});
        std::size_t N = static_cast<std::size_t>(rng.integer(1, 3));
        ProjectiveMap f = random_map(rng, N, 4, 20);
        std::vector<Hypersurface> ds;
        for (std::size_t i = 0; i < q; ++i) {
            ds.emplace_back(rng.homogeneous(N + 1, static_cast<unsigned>(rng.integer(1, 4)), 20));
        }
        bool ok = std::all_of(ds.begin(), ds.end(),
                              [&](const Hypersurface& d) { return !pullback(d, f, PrimeConfig(p)).is_zero(); });
        if (ok) return {p, f, ds};
    }
}

std::string show(const PLFunction& f) { return f.str(); }

// 1. m + N - dT is constant and equals -log|a_k|.
Outcome fmt_exactness() {
    Outcome o;
    Random rng(101);
    while (o.cases < 250) {
        Instance in = random_instance(rng, 1);
        PrimeConfig cfg(in.p);
        const Hypersurface& d = in.ds[0];
        PLFunction t = characteristic(in.f, cfg);
        PLFunction m = proximity(in.f, d, cfg);
        PLFunction n = counting(in.f, d, cfg);
        PLFunction residual = m + n - t.scaled(d.degree());
        EntireSeries pb = pullback(d, in.f, cfg);
        // lowest coefficient found by scanning, independent of the library helper
        Rational lowest = *std::find_if(pb.coefficients().begin(), pb.coefficients().end(),
                                        [](const Rational& a) { return a != 0; });
        Rational expected = naive_valuation(lowest, in.p);
        o.expect(residual.is_constant(), [&] { return "nonconstant residual " + show(residual); });
        o.expect(residual.constant_on(Interval::line()) == expected,
                 [&] { return "residual " + show(residual) + " expected " + to_string(expected); });
        ++o.cases;
    }
    return o;
}

// 2. Sigma m_i/d - (n - 1 + 1/d) T constant on s >= 0; defect sum n - 1 + 1/d.
Outcome sharpness_equality() {
    Outcome o;
    for (long p : {2L, 3L, 5L}) {
        PrimeConfig cfg(p);
        for (std::size_t n = 1; n <= 4; ++n) {
            for (unsigned d = 1; d <= 4; ++d) {
                SharpnessConfig s = sharpness_family(n, d, cfg);
                Rational target = Rational(static_cast<long>(n) - 1) + make_rational(1, d);
                PLFunction t = characteristic(s.map, cfg);
                PLFunction sum = PLFunction::constant(0);
                Rational defects = 0;
                for (const Hypersurface& h : s.hypersurfaces) {
                    sum = sum + proximity(s.map, h, cfg).scaled(make_rational(1, h.degree()));
                    defects += defect(s.map, h, cfg);
                }
                PLFunction diff = (sum - t.scaled(target)).restrict_to(kNonneg);
                std::string tag = "p=" + std::to_string(p) + " n=" + std::to_string(n) + " d=" + std::to_string(d);
                o.expect(diff.constant_on(kNonneg).has_value(), [&] { return tag + ": " + show(diff); });
                o.expect(defects == target, [&] { return tag + ": defect sum " + to_string(defects); });
                ++o.cases;
            }
        }
    }
    return o;
}

// Sharpness family with extra monomials vanishing at P = (1:0:...:0) and a
// generic line map; kept only when the Jacobian at P has full rank n.
std::optional<Instance> perturbed_family(Random& rng) {
    long p = rng.prime({2, 3, 5});
    PrimeConfig cfg(p);
    std::size_t n = static_cast<std::size_t>(rng.integer(2, 4));
    unsigned d = static_cast<unsigned>(rng.integer(1, 3));
    SharpnessConfig s = sharpness_family(n, d, cfg);
    std::vector<Hypersurface> ds;
    for (const Hypersurface& h : s.hypersurfaces) {
        Polynomial q = h.poly();
        for (long k = rng.integer(1, 3); k > 0; --k) {
            Polynomial extra = rng.homogeneous(n + 1, d, 9, 1);
            Exponent e = extra.terms().begin()->first;
            if (e[0] == d) continue;  // keep P on the hypersurface
            q += extra;
        }
        if (q.is_zero()) return std::nullopt;
        ds.emplace_back(q, d);
    }
    std::vector<Polynomial> qs_;
    for (const Hypersurface& h : ds) qs_.push_back(h.poly());
    if (jacobian_rank_at(qs_, s.point) != n) return std::nullopt;

    std::vector<EntireSeries> coords;
    coords.push_back(EntireSeries::polynomial({rng.fraction(9), Rational(1)}));
    coords.push_back(EntireSeries::polynomial({Rational(1), rng.fraction(9)}));
    for (std::size_t j = 2; j <= n; ++j) coords.push_back(EntireSeries::constant(rng.fraction(9)));
    try {
        ProjectiveMap f(coords);
        for (const Hypersurface& h : ds) {
            if (pullback(h, f, cfg).is_zero()) return std::nullopt;
        }
        return Instance{p, f, ds};
    } catch (const InputError&) {
        return std::nullopt;
    }
}

// 3. Margin of the SMT bound: eventual slope >= 0, finite infimum on s >= 0;
// slope exactly 0 on the sharpness families.
Outcome smt_bound() {
    Outcome o;
    for (long p : {2L, 3L, 5L}) {
        PrimeConfig cfg(p);
        for (std::size_t n = 1; n <= 4; ++n) {
            for (unsigned d = 1; d <= 4; ++d) {
                SharpnessConfig s = sharpness_family(n, d, cfg);
                NevanlinnaReport r = smt_report(s.map, s.hypersurfaces, VarietySpec::projective_space(n), 1, cfg);
                std::string tag = "family p=" + std::to_string(p) + " n=" + std::to_string(n) + " d=" + std::to_string(d);
                o.expect(r.margin_slope == 0 && !r.margin_infimum.is_neg_inf() && r.tight,
                         [&] { return tag + ": margin " + show(r.margin); });
                ++o.cases;
            }
        }
    }
    Random rng(303);
    std::size_t perturbed = 0;
    while (perturbed < 60) {
        std::optional<Instance> in = perturbed_family(rng);
        if (!in) continue;
        PrimeConfig cfg(in->p);
        std::size_t n = in->f.ambient_dim();
        NevanlinnaReport r = smt_report(in->f, in->ds, VarietySpec::projective_space(n), 1, cfg);
        PLFunction margin = r.margin.restrict_to(kNonneg);
        o.expect(margin.eventual_slope() >= 0 && !margin.infimum_on(kNonneg).is_neg_inf(),
                 [&] { return "perturbed: margin " + show(r.margin); });
        ++perturbed;
        ++o.cases;
    }
    return o;
}

// 4. zero_count against a brute-force count of prescribed roots.
Outcome newton_oracle() {
    Outcome o;
    Random rng(404);
    while (o.cases < 600) {
        long p = rng.prime({2, 3, 5});
        std::vector<Rational> roots(static_cast<std::size_t>(rng.integer(1, 8)));
        for (auto& r : roots) {
            r = rng.fraction(30);
            if (rng.integer(0, 3) == 0 && r != 0) r *= Rational(p) * rng.integer(1, 3);
        }
        EntireSeries f = EntireSeries::polynomial(poly_from_roots(roots));
        long lo = 0, hi = 0;
        for (const Rational& r : roots) {
            if (r == 0) continue;
            long lr = -naive_valuation(r, p);
            lo = std::min(lo, lr);
            hi = std::max(hi, lr);
        }
        for (const Rational& s : grid(lo - 1, hi + 1, 4)) {
            std::size_t got = zero_count(f, s, PrimeConfig(p));
            std::size_t want = naive_root_count(roots, s, p);
            o.expect(got == want, [&] {
                return "roots count " + std::to_string(got) + " vs " + std::to_string(want) + " at s=" + to_string(s);
            });
        }
        ++o.cases;
    }
    return o;
}

EntireSeries square_exponent_series(long p, long T) {
    std::vector<Rational> a;
    for (long i = 0; i <= T; ++i) {
        Integer v;
        mpz_ui_pow_ui(v.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(i * i));
        a.emplace_back(v);
    }
    // (i - T)(i - T - 1) >= 0 gives v_p(a_i) = i^2 >= (2T+1) i - T(T+1) for i > T.
    return EntireSeries::truncated(std::move(a), {Rational(2 * T + 1), Rational(-T * (T + 1))});
}

// 5. Gauss multiplicativity; truncations at T and 2T agree on the window.
Outcome gauss_and_tails() {
    Outcome o;
    Random rng(505);
    for (int t = 0; t < 200; ++t) {
        long p = rng.prime({2, 3, 5, 7});
        PrimeConfig cfg(p);
        auto rand_poly = [&] {
            std::vector<Rational> a(static_cast<std::size_t>(rng.integer(1, 7)));
            for (auto& c : a) c = rng.coin() ? rng.fraction(40) : Rational(0);
            a.back() = rng.nonzero_fraction(40);
            return EntireSeries::polynomial(std::move(a));
        };
        EntireSeries f = rand_poly(), g = rand_poly();
        PLFunction lhs = gauss_norm(series_mul(f, g, cfg), cfg);
        PLFunction rhs = gauss_norm(f, cfg) + gauss_norm(g, cfg);
        o.expect(lhs == rhs, [&] { return show(lhs) + " vs " + show(rhs); });
        ++o.cases;
    }
    for (long p : {2L, 3L, 5L}) {
        PrimeConfig cfg(p);
        for (long T = 1; T <= 8; ++T) {
            EntireSeries fT = square_exponent_series(p, T), f2T = square_exponent_series(p, 2 * T);
            Interval w = validity_window(fT, cfg);
            PLFunction a = gauss_norm(fT, cfg), b = gauss_norm(f2T, cfg).restrict_to(w);
            std::string tag = "p=" + std::to_string(p) + " T=" + std::to_string(T);
            o.expect(a == b, [&] { return tag + ": " + show(a) + " vs " + show(b); });
            PLFunction na = counting_plf(fT, cfg), nb = counting_plf(f2T, cfg).restrict_to(w);
            o.expect(na == nb, [&] { return tag + " counting: " + show(na) + " vs " + show(nb); });
            ++o.cases;
        }
    }
    return o;
}

Polynomial linear_form(Random& rng, std::size_t nvars) {
    Polynomial l(nvars);
    while (l.is_zero()) {
        for (std::size_t i = 0; i < nvars; ++i) {
            Exponent e(nvars, 0);
            e[i] = 1;
            l.add_term(e, rng.fraction(7));
        }
    }
    return l;
}

std::vector<Rational> coefficient_row(const Polynomial& l) {
    std::vector<Rational> row(l.nvars());
    for (const auto& [e, c] : l.terms()) {
        row[static_cast<std::size_t>(std::find(e.begin(), e.end(), 1u) - e.begin())] = c;
    }
    return row;
}

// Linear forms with every subset of size <= nvars independent.
std::vector<Polynomial> general_position_forms(Random& rng, std::size_t nvars, std::size_t q) {
    for (;;) {
        std::vector<Polynomial> forms;
        for (std::size_t i = 0; i < q; ++i) forms.push_back(linear_form(rng, nvars));
        bool ok = true;
        // every k-subset, k = min(q, nvars)
        std::size_t k = std::min(q, nvars);
        std::vector<bool> pick(q, false);
        std::fill(pick.begin(), pick.begin() + static_cast<long>(k), true);
        do {
            RationalMatrix m;
            for (std::size_t i = 0; i < q; ++i) {
                if (pick[i]) m.push_back(coefficient_row(forms[i]));
            }
            ok = ok && rank(m) == k;
        } while (ok && std::prev_permutation(pick.begin(), pick.end()));
        if (ok) return forms;
    }
}

// 6. All but the n largest proximity functions stay bounded.
Outcome bounded_proximity() {
    Outcome o;
    Random rng(606);
    std::size_t generated = 0;
    while (generated < 80) {
        std::size_t N = static_cast<std::size_t>(rng.integer(1, 2));
        long p = rng.prime({2, 3, 5, 7});
        PrimeConfig cfg(p);
        std::size_t q = N + static_cast<std::size_t>(rng.integer(1, 3));
        std::vector<Polynomial> forms = general_position_forms(rng, N + 1, q);
        std::vector<Hypersurface> ds;
        for (const Polynomial& l : forms) ds.emplace_back(l.pow(static_cast<unsigned>(rng.integer(1, 3))));
        ProjectiveMap f = random_map(rng, N, 4, 20);
        bool admissible = std::all_of(ds.begin(), ds.end(), [&](const Hypersurface& d) {
            return !pullback(d, f, cfg).is_zero();
        });
        if (!admissible) continue;
        BoundednessReport r = sorted_proximity_boundedness(f, ds, VarietySpec::projective_space(N), cfg);
        o.expect(r.pass, [&] {
            std::ostringstream os;
            os << "general position P^" << N << " flagged; slopes";
            for (const auto& e : r.sorted) os << ' ' << to_string(e.eventual_slope);
            return os.str();
        });
        ++generated;
        ++o.cases;
    }

    // shared components must be flagged
    PrimeConfig p3(3);
    ProjectiveMap line_map(std::vector<EntireSeries>{series({"0", "1"}), series({"1"})});
    std::vector<Hypersurface> shared{Hypersurface(poly("x1", 2)), Hypersurface(poly("x1^2", 2))};
    o.expect(!sorted_proximity_boundedness(line_map, shared, VarietySpec::projective_space(1), p3).pass,
             [] { return "degenerate P^1 configuration passed"; });
    ProjectiveMap conic(std::vector<EntireSeries>{series({"1"}), series({"0", "1"}), series({"0", "0", "1"})});
    std::vector<Hypersurface> shared2{Hypersurface(poly("x0", 3)), Hypersurface(poly("x0*x1", 3)),
                                      Hypersurface(poly("x0^2", 3))};
    o.expect(!sorted_proximity_boundedness(conic, shared2, VarietySpec::projective_space(2), p3).pass,
             [] { return "degenerate P^2 configuration passed"; });
    o.cases += 2;
    return o;
}

std::string report_key(const NevanlinnaReport& r) {
    std::ostringstream os;
    os << r.characteristic.str() << '|' << r.weighted_sum.str() << '|' << r.margin.str() << '|'
       << to_string(r.margin_slope) << '|' << r.pass;
    for (const auto& t : r.terms) os << '|' << t.proximity.str() << '|' << t.counting.str();
    return os.str();
}

// 7. Rescaling, permutation and Q -> Q^k.
Outcome invariance() {
    Outcome o;
    Random rng(707);
    for (int t = 0; t < 100; ++t) {
        Instance in = random_instance(rng, static_cast<std::size_t>(rng.integer(1, 3)));
        PrimeConfig cfg(in.p);
        Rational c = rng.nonzero_fraction(20) * Rational(in.p) * rng.integer(1, 2);
        ProjectiveMap g = in.f.rescaled(c, cfg);
        PLFunction tf = characteristic(in.f, cfg), tg = characteristic(g, cfg);
        o.expect(tg == tf.shifted(log_abs(c, cfg).value()), [&] { return "rescaled T " + show(tg); });
        for (const Hypersurface& d : in.ds) {
            o.expect(proximity(g, d, cfg) == proximity(in.f, d, cfg), [] { return "rescaling changed m"; });
            o.expect(counting(g, d, cfg) == counting(in.f, d, cfg), [] { return "rescaling changed N"; });
            o.expect(defect(g, d, cfg) == defect(in.f, d, cfg), [] { return "rescaling changed a defect"; });
        }
        NevanlinnaReport a = smt_report(in.f, in.ds, VarietySpec::projective_space(in.f.ambient_dim()), 1, cfg);
        NevanlinnaReport b = smt_report(g, in.ds, VarietySpec::projective_space(in.f.ambient_dim()), 1, cfg);
        o.expect(a.sum_slope == b.sum_slope && a.margin_slope == b.margin_slope && a.pass == b.pass,
                 [] { return "rescaling changed a verdict"; });
        ++o.cases;
    }
    for (int t = 0; t < 100; ++t) {
        Instance in = random_instance(rng, static_cast<std::size_t>(rng.integer(1, 3)));
        PrimeConfig cfg(in.p);
        std::vector<std::size_t> perm(in.f.ambient_dim() + 1);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng.engine());
        ProjectiveMap g = in.f.permuted(perm);
        std::vector<Hypersurface> ds;
        for (const Hypersurface& d : in.ds) ds.emplace_back(d.poly().permuted(perm), d.degree());
        VarietySpec x = VarietySpec::projective_space(in.f.ambient_dim());
        std::string a = report_key(smt_report(in.f, in.ds, x, 1, cfg));
        std::string b = report_key(smt_report(g, ds, x, 1, cfg));
        o.expect(a == b, [&] { return "permutation changed the report: " + a + " vs " + b; });
        ++o.cases;
    }
    for (int t = 0; t < 100; ++t) {
        Instance in = random_instance(rng, 1);
        PrimeConfig cfg(in.p);
        unsigned k = static_cast<unsigned>(rng.integer(2, 3));
        const Hypersurface& d = in.ds[0];
        Hypersurface dk = d.pow(k);
        PLFunction m = proximity(in.f, d, cfg), mk = proximity(in.f, dk, cfg);
        o.expect(mk == m.scaled(k), [&] { return "m(Q^k) " + show(mk); });
        o.expect(counting(in.f, dk, cfg) == counting(in.f, d, cfg).scaled(k), [] { return "N(Q^k) != k N(Q)"; });
        o.expect(mk.scaled(make_rational(1, dk.degree())) == m.scaled(make_rational(1, d.degree())),
                 [] { return "m/deg changed"; });
        o.expect(defect(in.f, dk, cfg) == defect(in.f, d, cfg), [] { return "defect of Q^k changed"; });
        ++o.cases;
    }
    return o;
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        Outcome (*run)();
    };
    const Criterion criteria[] = {
        {"1 FMT exactness", fmt_exactness},
        {"2 sharpness equality", sharpness_equality},
        {"3 SMT bound margin", smt_bound},
        {"4 Newton polygon root oracle", newton_oracle},
        {"5 Gauss multiplicativity and tails", gauss_and_tails},
        {"6 bounded proximity", bounded_proximity},
        {"7 invariance suite", invariance},
    };
    bool all = true;
    for (const Criterion& c : criteria) {
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        all = all && o.ok;
        std::cout << (o.ok ? "PASS" : "FAIL") << "  criterion " << c.name << " (" << o.cases << " cases)";
        if (!o.ok) std::cout << ": " << o.first_failure;
        std::cout << '\n';
    }
    return all ? 0 : 1;
}
