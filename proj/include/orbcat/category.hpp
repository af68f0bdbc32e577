#ifndef ORBCAT_CATEGORY_HPP
#define ORBCAT_CATEGORY_HPP

#include <array>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "orbcat/matrix.hpp"
#include "orbcat/scalar.hpp"

namespace orbcat {

enum class ScalarMode { ComplexF64, ExactGaussianRational };

struct MissingEntry : Error {
    explicit MissingEntry(const std::string& what) : Error(what) {}
};
struct ResidualExceeded : Error {
    explicit ResidualExceeded(const std::string& what) : Error(what) {}
};
struct NotBicharacter : Error {
    explicit NotBicharacter(const std::string& what) : Error(what) {}
};
struct ParityNotHomomorphism : Error {
    explicit ParityNotHomomorphism(const std::string& what) : Error(what) {}
};

// Skeletal braided supercategory data. Multiplicity-free: N(a,b;c) in {0,1}.
// Tables are stored as complex values; engines convert them to their scalar
// type on construction (exact mode requires exactly-representable entries).
struct CategorySpec {
    std::vector<std::string> simples;
    int unit{0};
    std::vector<int> dual;      // label index -> label index
    std::vector<int> parity;    // label index -> 0/1
    std::set<std::array<int, 3>> fusion; // (a,b,c) with N(a,b;c)=1
    std::map<std::array<int, 6>, Cplx> F; // (a,b,c,d,e,f)
    std::map<std::array<int, 3>, Cplx> R; // (a,b,c)
    std::vector<Cplx> twist;
    ScalarMode mode{ScalarMode::ComplexF64};
    double tol{1e-9};

    int index_of(const std::string& label) const;
    const std::string& label(int i) const { return simples.at(i); }
    int count() const { return int(simples.size()); }

    bool fusable(int a, int b, int c) const { return fusion.count({a, b, c}) != 0; }
    std::vector<int> fuse(int a, int b) const;
    bool admissible_f(const std::array<int, 6>& t) const;

    // Enumerates every admissible F-symbol tuple / R-symbol triple.
    std::vector<std::array<int, 6>> admissible_f_tuples() const;
    std::vector<std::array<int, 3>> admissible_r_triples() const;
};

// Tables converted to the engine scalar.
template <class K>
struct CategoryData {
    const CategorySpec* spec{nullptr};
    std::map<std::array<int, 6>, K> F;
    std::map<std::array<int, 3>, K> R;
    std::vector<K> twist;
    double tol{1e-9};

    static CategoryData from(const CategorySpec& s) {
        CategoryData d;
        d.spec = &s;
        d.tol = s.tol;
        for (const auto& [k, v] : s.F) d.F.emplace(k, ScalarOps<K>::from_complex(v));
        for (const auto& [k, v] : s.R) d.R.emplace(k, ScalarOps<K>::from_complex(v));
        for (const auto& v : s.twist) d.twist.push_back(ScalarOps<K>::from_complex(v));
        return d;
    }

    K fval(int a, int b, int c, int d, int e, int f) const {
        // Unit-normalized gauge: tuples touching the unit default to 1.
        if (a == spec->unit || b == spec->unit || c == spec->unit) {
            auto it = F.find({a, b, c, d, e, f});
            return it != F.end() ? it->second : ScalarOps<K>::one();
        }
        auto it = F.find({a, b, c, d, e, f});
        if (it == F.end())
            throw MissingEntry("missing F entry (" + spec->label(a) + "," + spec->label(b) + "," +
                               spec->label(c) + ";" + spec->label(d) + ";" + spec->label(e) + "," +
                               spec->label(f) + ")");
        return it->second;
    }
    K rval(int a, int b, int c) const {
        if (a == spec->unit || b == spec->unit) {
            auto it = R.find({a, b, c});
            return it != R.end() ? it->second : ScalarOps<K>::one();
        }
        auto it = R.find({a, b, c});
        if (it == R.end())
            throw MissingEntry("missing R entry (" + spec->label(a) + "," + spec->label(b) + ";" +
                               spec->label(c) + ")");
        return it->second;
    }
};

struct ValidationReport {
    bool pass{false};
    double pentagon_residual{0.0};
    double hexagon_residual{0.0};     // R chirality
    double hexagon_inv_residual{0.0}; // R^{-1} chirality
    double unit_dual_residual{0.0};
    std::string worst_pentagon, worst_hexagon;
    std::vector<std::string> failures;
};

// Pentagon/hexagon residuals over every admissible tuple, plus unit/dual and
// normalization consistency. Residuals are exact zeros in exact mode.
//
// Conventions, fixed once for the whole engine: the associator
// A_{a,b,c}: a(bc) -> (ab)c has matrix entries F(a,b,c,d;e,f) between the
// bc-label f and the ab-label e at total charge d, and the braid of simples
// maps (a,b;c) to (b,a;c) with coefficient R(a,b;c). The equations below are
// the pentagon and both hexagons written in exactly those conventions.
template <class K>
ValidationReport validate_spec(const CategorySpec& spec) {
    using S = ScalarOps<K>;
    CategoryData<K> d = CategoryData<K>::from(spec);
    ValidationReport rep;
    const int n = spec.count();

    // Unit and dual consistency.
    {
        double r = 0.0;
        for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b) {
                bool left = spec.fusable(spec.unit, a, b);
                bool right = spec.fusable(a, spec.unit, b);
                if (left != (a == b) || right != (a == b)) {
                    rep.failures.push_back("unit fusion rule violated at " + spec.label(a) + "," +
                                           spec.label(b));
                    r = std::max(r, 1.0);
                }
            }
            int hits = 0;
            for (int b = 0; b < n; ++b)
                if (spec.fusable(a, b, spec.unit)) {
                    ++hits;
                    if (b != spec.dual[a]) {
                        rep.failures.push_back("dual of " + spec.label(a) + " inconsistent");
                        r = std::max(r, 1.0);
                    }
                }
            if (hits != 1) {
                rep.failures.push_back("unit multiplicity in " + spec.label(a) + " x dual != 1");
                r = std::max(r, 1.0);
            }
        }
        if (spec.parity[spec.unit] != 0) {
            rep.failures.push_back("unit label must be even");
            r = std::max(r, 1.0);
        }
        // Braided categories have commutative fusion rings; the hexagon
        // enumeration below relies on it.
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    if (spec.fusable(a, b, c) != spec.fusable(b, a, c)) {
                        rep.failures.push_back("fusion rules are not commutative");
                        r = std::max(r, 1.0);
                    }
        double tw = ScalarOps<Cplx>::abs(spec.twist[spec.unit] - Cplx{1.0, 0.0});
        r = std::max(r, tw);
        if (tw > spec.tol) rep.failures.push_back("twist(unit) != 1");
        // The engine assumes the unit-normalized gauge.
        for (const auto& [t, v] : spec.F)
            if (t[0] == spec.unit || t[1] == spec.unit || t[2] == spec.unit)
                r = std::max(r, ScalarOps<Cplx>::abs(v - Cplx{1.0, 0.0}));
        for (const auto& [t, v] : spec.R)
            if (t[0] == spec.unit || t[1] == spec.unit)
                r = std::max(r, ScalarOps<Cplx>::abs(v - Cplx{1.0, 0.0}));
        rep.unit_dual_residual = r;
    }

    // Pentagon: F(a,b,f,e;p,s) F(p,c,d,e;q,f)
    //         = sum_g F(b,c,d,s;g,f) F(a,g,d,e;q,s) F(a,b,c,q;p,g).
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int dd = 0; dd < n; ++dd)
                    for (int e = 0; e < n; ++e)
                        for (int f : spec.fuse(c, dd))
                            for (int sidx : spec.fuse(b, f)) {
                                if (!spec.fusable(a, sidx, e)) continue;
                                for (int p : spec.fuse(a, b))
                                    for (int q : spec.fuse(p, c)) {
                                        if (!spec.fusable(q, dd, e)) continue;
                                        // The two-step route passes through the
                                        // tree ((ab)=p, (cd)=f; e); when that
                                        // tree is inadmissible the route is 0.
                                        K lhs = spec.fusable(p, f, e)
                                                    ? d.fval(a, b, f, e, p, sidx) *
                                                          d.fval(p, c, dd, e, q, f)
                                                    : S::zero();
                                        K rhs = S::zero();
                                        for (int g : spec.fuse(b, c)) {
                                            if (!spec.fusable(g, dd, sidx)) continue;
                                            if (!spec.fusable(a, g, q)) continue;
                                            rhs = rhs + d.fval(b, c, dd, sidx, g, f) *
                                                            d.fval(a, g, dd, e, q, sidx) *
                                                            d.fval(a, b, c, q, p, g);
                                        }
                                        double res = S::abs(lhs - rhs);
                                        if (res > rep.pentagon_residual) {
                                            rep.pentagon_residual = res;
                                            rep.worst_pentagon = spec.label(a) + "," +
                                                                 spec.label(b) + "," +
                                                                 spec.label(c) + "," +
                                                                 spec.label(dd);
                                        }
                                    }
                            }

    // Hexagons. For fixed total d and operands (a,b,c), the composite
    //   A_{b,c,a} (1 x c_{a,c}) A^{-1}_{b,a,c} (c_{a,b} x 1) A_{a,b,c}
    // must equal the braid of a past the composite bc, which is diagonal
    // R(a,f;d) over the bc-charge f. The second hexagon is the mirror braiding
    // c-bar_{x,y} = c^{-1}_{y,x}, diagonal R(f,a;d)^{-1}.
    auto hexagon = [&](bool inv) {
        double worst = 0.0;
        std::string worst_at;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    for (int dd = 0; dd < n; ++dd) {
                        std::vector<int> fs, es, hs;
                        for (int f : spec.fuse(b, c))
                            if (spec.fusable(a, f, dd)) fs.push_back(f);
                        for (int e : spec.fuse(a, b))
                            if (spec.fusable(e, c, dd)) es.push_back(e);
                        for (int h : spec.fuse(a, c))
                            if (spec.fusable(b, h, dd)) hs.push_back(h);
                        if (fs.empty()) continue;
                        if (es.size() != hs.size() || es.empty()) {
                            rep.failures.push_back("hom dimension mismatch across associator at " +
                                                   spec.label(a) + "," + spec.label(b) + "," +
                                                   spec.label(c));
                            continue;
                        }
                        // Invert the middle associator block F(b,a,c,dd).
                        Matrix<K> mid(int(es.size()), int(hs.size()));
                        for (size_t i = 0; i < es.size(); ++i)
                            for (size_t j = 0; j < hs.size(); ++j)
                                mid.at(int(i), int(j)) = d.fval(b, a, c, dd, es[i], hs[j]);
                        Matrix<K> mid_inv = inverse(mid, spec.tol);
                        for (int fo : fs)
                            for (int fi : fs) {
                                K acc = S::zero();
                                for (size_t ei = 0; ei < es.size(); ++ei)
                                    for (size_t hi = 0; hi < hs.size(); ++hi) {
                                        K rac = inv ? S::inv(d.rval(c, a, hs[hi]))
                                                    : d.rval(a, c, hs[hi]);
                                        K rab = inv ? S::inv(d.rval(b, a, es[ei]))
                                                    : d.rval(a, b, es[ei]);
                                        acc = acc + d.fval(b, c, a, dd, fo, hs[hi]) * rac *
                                                        mid_inv.at(int(hi), int(ei)) * rab *
                                                        d.fval(a, b, c, dd, es[ei], fi);
                                    }
                                K want = S::zero();
                                if (fo == fi)
                                    want = inv ? S::inv(d.rval(fo, a, dd)) : d.rval(a, fo, dd);
                                double res = S::abs(acc - want);
                                if (res > worst) {
                                    worst = res;
                                    worst_at = spec.label(a) + "," + spec.label(b) + "," +
                                               spec.label(c) + ";" + spec.label(dd);
                                }
                            }
                    }
        return std::pair<double, std::string>(worst, worst_at);
    };
    auto [h1, w1] = hexagon(false);
    auto [h2, w2] = hexagon(true);
    rep.hexagon_residual = h1;
    rep.hexagon_inv_residual = h2;
    rep.worst_hexagon = h1 >= h2 ? w1 : w2;

    rep.pass = rep.failures.empty() && rep.pentagon_residual <= spec.tol &&
               rep.hexagon_residual <= spec.tol && rep.hexagon_inv_residual <= spec.tol &&
               rep.unit_dual_residual <= spec.tol;
    return rep;
}

// Shipped constructors -------------------------------------------------------

// Pointed category of a finite abelian group presented as Z/n1 x ... x Z/nk:
// trivial associator, braiding R^{a,b} = beta(a,b), twist theta(a) = beta(a,a).
// beta is given as a table over group element pairs; parity_hom maps elements
// to Z/2.
struct PointedInput {
    std::vector<int> orders; // cyclic factor orders
    // beta(a, b) indexed by flattened group elements
    std::vector<std::vector<Cplx>> beta;
    std::vector<int> parity_hom; // element -> 0/1
    std::vector<std::string> names; // optional custom labels
};
CategorySpec pointed(const PointedInput& in);

// The Z/2 x Z/2 hyperbolic instance: beta((x1,y1),(x2,y2)) = (-1)^{x1 y2},
// trivial parity. Labels X00, X10, X01, X11.
CategorySpec pointed_hyperbolic_z2z2();

// Vec_{Z/n} with trivial braiding (symmetric) and trivial parity.
CategorySpec regular_pointed(int n);

// The Ising fusion category {1, psi, sigma} with psi odd; standard F/R data,
// validated before use.
CategorySpec ising();

} // namespace orbcat

#endif
