#ifndef ORBCAT_ORBIFOLD_HPP
#define ORBCAT_ORBIFOLD_HPP

#include "orbcat/repv.hpp"

namespace orbcat {

struct ProjectorDefect : Error {
    explicit ProjectorDefect(const std::string& what) : Error(what) {}
};
struct PhiNotRepresentation : Error {
    explicit PhiNotRepresentation(const std::string& what) : Error(what) {}
};
struct PhiParityMismatch : Error {
    explicit PhiParityMismatch(const std::string& what) : Error(what) {}
};
struct EquivalenceDefect : Error {
    explicit EquivalenceDefect(const std::string& what) : Error(what) {}
};

template <class K>
struct Sector {
    int g;
    Module<K> module;
    Mor<K> inclusion;  // W_g -> W
    Mor<K> projection; // W -> W_g
};

template <class K>
struct TwistedDecomposition {
    std::vector<Sector<K>> sectors;
};

template <class K>
struct Equivariant {
    Module<K> base;
    std::vector<Mor<K>> phi; // indexed by group element
    std::string name;
};

// Twisted sectors, projectors, the braided G-crossed structure, and the
// G-equivariantization over one Theory session.
template <class K>
class Orbifold {
public:
    explicit Orbifold(Theory<K>& th) : th_(th) {}

    Theory<K>& theory() { return th_; }
    Engine<K>& eng() { return th_.eng(); }
    const GroupRep<K>& G() const { return th_.alg().G; }
    double tol() const { return th_.tol(); }

    Mor<K> group_mor(int g) {
        WordPtr wV = word_leaf(th_.alg().V);
        return Mor<K>{wV, wV, G().mats[g]};
    }

    double twisted_residual(const Module<K>& w, int g);
    bool is_g_twisted(const Module<K>& w, int g) { return twisted_residual(w, g) <= tol(); }
    std::optional<int> twist_of(const Module<K>& w);

    Mor<K> projector_pi(const Module<K>& w, int g);
    TwistedDecomposition<K> decompose(const Module<K>& w);

    Module<K> act_T(int g, const Module<K>& w);
    Mor<K> tau(int g, const Module<K>& a, const Module<K>& b);
    Mor<K> phi_g(int g) { return group_mor(g); }
    Mor<K> crossed_braiding(const Module<K>& a, const Module<K>& b);

    CheckReport check_gcrossed(const std::vector<Module<K>>& objs);

    CheckReport equivariant_check(const Equivariant<K>& e);
    Equivariant<K> equivariant_tensor(const Equivariant<K>& a, const Equivariant<K>& b);
    Mor<K> equivariant_braiding(const Equivariant<K>& a, const Equivariant<K>& b);
    Equivariant<K> equivariantize_induce(const ConcreteObject& x);
    std::pair<ConcreteObject, Mor<K>> invariants(const Equivariant<K>& e);
    Mor<K> psi(const Equivariant<K>& e);

    // All equivariant structures on a module, for cyclic G.
    std::vector<Equivariant<K>> enumerate_phi(const Module<K>& w);

    CheckReport verify_equivalence(const std::vector<ConcreteObject>& simple_objects,
                                   const std::vector<Module<K>>& simple_modules);

private:
    Theory<K>& th_;
};

// ---------------------------------------------------------------------------

template <class K>
double Orbifold<K>::twisted_residual(const Module<K>& w, int g) {
    Engine<K>& e = eng();
    WordPtr wV = word_leaf(th_.alg().V), wW = word_leaf(w.W);
    Mor<K> mono = e.compose(e.braid(wW, wV, false), e.braid(wV, wW, false));
    Mor<K> lhs = e.compose(
        w.action, e.compose(e.tensor_mor(group_mor(g), e.identity(wW)), mono));
    return distance(lhs.m, w.action.m);
}

template <class K>
std::optional<int> Orbifold<K>::twist_of(const Module<K>& w) {
    std::optional<int> hit;
    for (int g = 0; g < G().size(); ++g)
        if (is_g_twisted(w, g)) {
            if (hit) return std::nullopt; // not unique (decomposable or trivial)
            hit = g;
        }
    return hit;
}

template <class K>
Mor<K> Orbifold<K>::projector_pi(const Module<K>& w, int g) {
    Env<K> env = th_.env_mod(w);
    FormulaId id{"pi_g", {}};
    id.params["g"] = G().names[g];
    return eng().eval(formula(id, th_.sc()).lhs, env);
}

template <class K>
TwistedDecomposition<K> Orbifold<K>::decompose(const Module<K>& w) {
    Engine<K>& e = eng();
    const int n = G().size();
    std::vector<Mor<K>> pis;
    for (int g = 0; g < n; ++g) pis.push_back(projector_pi(w, g));

    // The three projector properties, numerically.
    Matrix<K> sum(pis[0].m.rows, pis[0].m.cols);
    for (auto& p : pis) sum = sum + p.m;
    if (distance(sum, Matrix<K>::identity(sum.rows)) > tol())
        throw ProjectorDefect("sum of pi_g is not the identity on " + w.name);
    for (int g = 0; g < n; ++g) {
        double morres = th_.intertwiner_residual(pis[g], w, w);
        if (morres > tol())
            throw ProjectorDefect("pi_" + G().names[g] + " is not a rep V morphism on " + w.name);
        for (int h = 0; h < n; ++h) {
            Matrix<K> gh = pis[g].m * pis[h].m;
            Matrix<K> want = g == h ? pis[g].m : Matrix<K>(gh.rows, gh.cols);
            if (distance(gh, want) > tol())
                throw ProjectorDefect("pi_g pi_h != delta pi_g on " + w.name);
        }
        if (e.parity_of_mor(pis[g]) == Parity::Mixed || e.parity_of_mor(pis[g]) == Parity::Odd)
            throw ProjectorDefect("pi_" + G().names[g] + " is not even on " + w.name);
    }

    TwistedDecomposition<K> dec;
    WordPtr wW = word_leaf(w.W);
    for (int g = 0; g < n; ++g) {
        if (pis[g].m.sup_norm() <= tol()) continue; // zero sector omitted
        FactorResult<K> im = e.factor(pis[g], FactorMode::Image);
        Mor<K> q = im.map; // W_g -> W
        auto psol = e.solve_after(q, pis[g]);
        if (psol.residual > tol())
            throw ProjectorDefect("pi_g does not factor through its image on " + w.name);
        Mor<K> p = psol.x; // W -> W_g
        if (distance((p.m * q.m), Matrix<K>::identity(q.m.cols)) > tol())
            throw ProjectorDefect("image splitting failed on " + w.name);
        Mor<K> act = e.compose(
            p, e.compose(w.action, e.tensor_mor(e.identity(word_leaf(th_.alg().V)), q)));
        Module<K> sector{w.name + "[" + G().names[g] + "]", im.obj, act};
        if (!is_g_twisted(sector, g))
            throw ProjectorDefect("sector image is not " + G().names[g] + "-twisted");
        dec.sectors.push_back({g, sector, q, p});
    }
    (void)wW;
    return dec;
}

template <class K>
Module<K> Orbifold<K>::act_T(int g, const Module<K>& w) {
    Engine<K>& e = eng();
    Mor<K> act = e.compose(
        w.action, e.tensor_mor(group_mor(G().inv(g)), e.identity(word_leaf(w.W))));
    return Module<K>{"T[" + G().names[g] + "](" + w.name + ")", w.W, act};
}

template <class K>
Mor<K> Orbifold<K>::tau(int g, const Module<K>& a, const Module<K>& b) {
    const auto& pab = th_.tensor(a, b);
    const auto& ptt = th_.tensor(act_T(g, a), act_T(g, b));
    auto sol = eng().solve_before(pab.I, ptt.I);
    if (sol.residual > tol() || sol.nullity != 0)
        throw NoSolution("tau does not descend through the cokernels");
    // tau is a rep V morphism T_g(a x_V b) -> T_g(a) x_V T_g(b).
    if (th_.intertwiner_residual(sol.x, act_T(g, pab.module), ptt.module) > tol())
        throw NoSolution("tau is not a rep V morphism");
    return sol.x;
}

template <class K>
Mor<K> Orbifold<K>::crossed_braiding(const Module<K>& a, const Module<K>& b) {
    std::optional<int> g = twist_of(a);
    if (!g) throw Error("crossed braiding needs a twisted left factor: " + a.name);
    const auto& pab = th_.tensor(a, b);
    const auto& ptb = th_.tensor(act_T(*g, b), a);
    Engine<K>& e = eng();
    Mor<K> target = e.compose(ptb.I, e.braid(word_leaf(a.W), word_leaf(b.W), false));
    auto sol = e.solve_before(pab.I, target);
    if (sol.residual > tol() || sol.nullity != 0)
        throw NoSolution("crossed braiding does not descend through the cokernels");
    inverse(sol.x.m, tol()); // must be invertible
    if (th_.intertwiner_residual(sol.x, pab.module, ptb.module) > tol())
        throw NoSolution("crossed braiding is not a rep V morphism");
    return sol.x;
}

template <class K>
CheckReport Orbifold<K>::check_gcrossed(const std::vector<Module<K>>& objs) {
    Engine<K>& e = eng();
    CheckReport rep;
    rep.title = "braided G-crossed axioms";
    std::vector<int> twists;
    for (const auto& m : objs) {
        auto t = twist_of(m);
        if (!t) throw Error("object set for the G-crossed check must be twisted: " + m.name);
        twists.push_back(*t);
    }

    // Grading respects the tensor product.
    for (size_t i = 0; i < objs.size(); ++i)
        for (size_t j = 0; j < objs.size(); ++j) {
            const auto& p = th_.tensor(objs[i], objs[j]);
            int want = G().mul(twists[i], twists[j]);
            rep.add("grading[" + objs[i].name + "," + objs[j].name + "]",
                    "twist of W1 x_V W2 is g1 g2", twisted_residual(p.module, want), tol());
        }

    // T_h maps the g-sector to the hgh^-1 sector.
    for (size_t i = 0; i < objs.size(); ++i)
        for (int h = 0; h < G().size(); ++h) {
            Module<K> th_mod = act_T(h, objs[i]);
            int want = G().mul(G().mul(h, twists[i]), G().inv(h));
            rep.add("T_grading[" + G().names[h] + "," + objs[i].name + "]",
                    "T_h sends the g-sector to hgh^-1", twisted_residual(th_mod, want), tol());
        }

    // Compatibility of the braiding with the G-action:
    // tau_{h; T_g W2, W1} T_h(R^V_{W1,W2}) = R^V_{T_h W1, T_h W2} tau_{h; W1, W2}.
    for (size_t i = 0; i < objs.size(); ++i)
        for (size_t j = 0; j < objs.size(); ++j)
            for (int h = 0; h < G().size(); ++h) {
                int g = twists[i];
                Mor<K> lhs = e.compose(tau(h, act_T(g, objs[j]), objs[i]),
                                       crossed_braiding(objs[i], objs[j]));
                Mor<K> rhs = e.compose(crossed_braiding(act_T(h, objs[i]), act_T(h, objs[j])),
                                       tau(h, objs[i], objs[j]));
                rep.add("action_compat[" + G().names[h] + ";" + objs[i].name + "," +
                            objs[j].name + "]",
                        "tau_h T_h(R) = R tau_h", distance(lhs.m, rhs.m), tol());
            }

    // Hexagon and heptagon over all triples.
    for (size_t i = 0; i < objs.size(); ++i)
        for (size_t j = 0; j < objs.size(); ++j)
            for (size_t k = 0; k < objs.size(); ++k) {
                const Module<K>&a = objs[i], &b = objs[j], &c = objs[k];
                const int g1 = twists[i], g2 = twists[j];
                const auto& ab = th_.tensor(a, b);
                Module<K> tg2c = act_T(g2, c);
                Module<K> tg12c = act_T(G().mul(g1, g2), c);

                // hexagon: A^V(Tc,a,b) R^V(ab,c) A^V(a,b,c)
                //        = (R^V(a,T_{g2}c) x 1) A^V(a,T_{g2}c,b) (1 x R^V(b,c))
                Mor<K> lhs = e.compose(
                    th_.assoc_repv(tg12c, a, b),
                    e.compose(crossed_braiding(ab.module, c), th_.assoc_repv(a, b, c)));
                Mor<K> s1 = th_.tensor_mor_repv(e.identity(word_leaf(a.W)),
                                                crossed_braiding(b, c),
                                                th_.tensor(a, th_.tensor(b, c).module),
                                                th_.tensor(a, th_.tensor(tg2c, b).module));
                Mor<K> s2 = th_.assoc_repv(a, tg2c, b);
                Mor<K> s3 = th_.tensor_mor_repv(
                    crossed_braiding(a, tg2c), e.identity(word_leaf(b.W)),
                    th_.tensor(th_.tensor(a, tg2c).module, b),
                    th_.tensor(th_.tensor(tg12c, a).module, b));
                Mor<K> rhs = e.compose(s3, e.compose(s2, s1));
                rep.add("hexagon[" + a.name + "," + b.name + "," + c.name + "]",
                        "first crossed hexagon", distance(lhs.m, rhs.m), tol());

                // heptagon: with a in the g-sector,
                // (1 x R^V(a,c)) A^V(Tb,a,c)^-1 (R^V(a,b) x 1)
                //   = A^V(Tb,Tc,a)^-1 (tau_g x 1) R^V(a, bc) A^V(a,b,c)^-1
                Module<K> tg1b = act_T(g1, b);
                Module<K> tg1c = act_T(g1, c);
                const auto& bc = th_.tensor(b, c);
                Mor<K> h1 = th_.tensor_mor_repv(
                    crossed_braiding(a, b), e.identity(word_leaf(c.W)),
                    th_.tensor(ab.module, c), th_.tensor(th_.tensor(tg1b, a).module, c));
                Mor<K> h2{th_.assoc_repv(tg1b, a, c).cod, th_.assoc_repv(tg1b, a, c).dom,
                          inverse(th_.assoc_repv(tg1b, a, c).m, tol())};
                Mor<K> h3 = th_.tensor_mor_repv(
                    e.identity(word_leaf(tg1b.W)), crossed_braiding(a, c),
                    th_.tensor(tg1b, th_.tensor(a, c).module),
                    th_.tensor(tg1b, th_.tensor(tg1c, a).module));
                Mor<K> path1 = e.compose(h3, e.compose(h2, h1));

                Mor<K> k0{th_.assoc_repv(a, b, c).cod, th_.assoc_repv(a, b, c).dom,
                          inverse(th_.assoc_repv(a, b, c).m, tol())};
                Mor<K> k1 = crossed_braiding(a, bc.module);
                Mor<K> k2 = th_.tensor_mor_repv(
                    tau(g1, b, c), e.identity(word_leaf(a.W)),
                    th_.tensor(act_T(g1, bc.module), a),
                    th_.tensor(th_.tensor(tg1b, tg1c).module, a));
                Mor<K> a_ttc = th_.assoc_repv(tg1b, tg1c, a);
                Mor<K> k3{a_ttc.cod, a_ttc.dom, inverse(a_ttc.m, tol())};
                Mor<K> path2 = e.compose(k3, e.compose(k2, e.compose(k1, k0)));
                rep.add("heptagon[" + a.name + "," + b.name + "," + c.name + "]",
                        "second crossed hexagon (heptagon)", distance(path1.m, path2.m), tol());
            }
    return rep;
}

template <class K>
CheckReport Orbifold<K>::equivariant_check(const Equivariant<K>& e) {
    Engine<K>& en = eng();
    CheckReport rep;
    rep.title = "equivariant structure: " + e.name;
    const int n = G().size();
    if (int(e.phi.size()) != n) throw PhiNotRepresentation("phi table has wrong size");
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h) {
            Matrix<K> prod = e.phi[g].m * e.phi[h].m;
            rep.add("rep[" + G().names[g] + "," + G().names[h] + "]",
                    "phi(g) T_g(phi(h)) = phi(gh)", distance(prod, e.phi[G().mul(g, h)].m),
                    tol());
        }
    for (int g = 0; g < n; ++g) {
        Mor<K> lhs = en.compose(e.phi[g], e.base.action);
        Mor<K> rhs = en.compose(
            e.base.action,
            en.tensor_mor(group_mor(g), e.phi[g]));
        rep.add("compat[" + G().names[g] + "]", "phi(g) mu_W = mu_W (g x phi(g))",
                distance(lhs.m, rhs.m), tol());
        rep.add_flag("even[" + G().names[g] + "]", "phi(g) is even",
                     en.parity_of_mor(e.phi[g]) != Parity::Odd &&
                         en.parity_of_mor(e.phi[g]) != Parity::Mixed);
    }
    if (G().parity_involution >= 0) {
        Mor<K> pw = en.parity_operator(word_leaf(e.base.W));
        rep.add("parity", "phi(P_V) = P_W", distance(e.phi[G().parity_involution].m, pw.m),
                tol());
    }
    return rep;
}

template <class K>
Equivariant<K> Orbifold<K>::equivariant_tensor(const Equivariant<K>& a, const Equivariant<K>& b) {
    CheckReport ra = equivariant_check(a);
    if (!ra.pass()) throw PhiNotRepresentation("left factor is not equivariant: " + a.name);
    CheckReport rb = equivariant_check(b);
    if (!rb.pass()) throw PhiNotRepresentation("right factor is not equivariant: " + b.name);

    const auto& p = th_.tensor(a.base, b.base);
    Equivariant<K> out;
    out.base = p.module;
    out.name = a.name + "*" + b.name;
    for (int g = 0; g < G().size(); ++g) {
        const auto& ptt = th_.tensor(act_T(g, a.base), act_T(g, b.base));
        Mor<K> boxed = th_.tensor_mor_repv(a.phi[g], b.phi[g], ptt, p);
        out.phi.push_back(eng().compose(boxed, tau(g, a.base, b.base)));
    }
    return out;
}

template <class K>
Mor<K> Orbifold<K>::equivariant_braiding(const Equivariant<K>& a, const Equivariant<K>& b) {
    Engine<K>& e = eng();
    TwistedDecomposition<K> dec = decompose(a.base);
    const auto& pab = th_.tensor(a.base, b.base);
    const auto& pba = th_.tensor(b.base, a.base);
    Matrix<K> acc(pba.module.W.size(), pab.module.W.size());
    for (const auto& sec : dec.sectors) {
        const int g = sec.g;
        const auto& p_gb = th_.tensor(sec.module, b.base);
        Module<K> tgb = act_T(g, b.base);
        const auto& p_tg = th_.tensor(tgb, sec.module);
        Mor<K> split = th_.tensor_mor_repv(sec.projection, e.identity(word_leaf(b.base.W)),
                                           pab, p_gb);
        Mor<K> braidseg = crossed_braiding(sec.module, b.base);
        Mor<K> rejoin = th_.tensor_mor_repv(b.phi[g], sec.inclusion, p_tg, pba);
        acc = acc + (rejoin.m * braidseg.m * split.m);
    }
    return Mor<K>{word_leaf(pab.module.W), word_leaf(pba.module.W), acc};
}

template <class K>
Equivariant<K> Orbifold<K>::equivariantize_induce(const ConcreteObject& x) {
    Engine<K>& e = eng();
    Equivariant<K> out;
    out.base = th_.induce(x);
    out.name = out.base.name;
    WordPtr wV = word_leaf(th_.alg().V), wX = word_leaf(x);
    auto [flat, iso] = e.flatten(word_tensor(wV, wX));
    Mor<K> inv_iso{iso.cod, iso.dom, iso.m.transposed()};
    for (int g = 0; g < G().size(); ++g) {
        Mor<K> boxed = e.tensor_mor(group_mor(g), e.identity(wX));
        out.phi.push_back(e.compose(iso, e.compose(boxed, inv_iso)));
    }
    return out;
}

template <class K>
std::pair<ConcreteObject, Mor<K>> Orbifold<K>::invariants(const Equivariant<K>& e) {
    using S = ScalarOps<K>;
    Matrix<K> avg(e.base.W.size(), e.base.W.size());
    for (const auto& p : e.phi) avg = avg + p.m;
    avg = avg.scaled(S::from_ratio(1, G().size()));
    WordPtr wW = word_leaf(e.base.W);
    FactorResult<K> im = eng().factor(Mor<K>{wW, wW, avg}, FactorMode::Image);
    return {im.obj, im.map};
}

template <class K>
Mor<K> Orbifold<K>::psi(const Equivariant<K>& e) {
    auto [wg, incl] = invariants(e);
    return th_.adjoint_psi(incl, e.base);
}

template <class K>
std::vector<Equivariant<K>> Orbifold<K>::enumerate_phi(const Module<K>& w) {
    using S = ScalarOps<K>;
    Engine<K>& e = eng();
    const int n = G().size();
    // Find a cyclic generator.
    int gen = -1;
    for (int g = 0; g < n && gen < 0; ++g) {
        int acc = g, ord = 1;
        while (acc != G().identity) {
            acc = G().mul(acc, g);
            ++ord;
        }
        if (ord == n) gen = g;
    }
    if (gen < 0) throw Error("equivariant enumeration implemented for cyclic G only");

    std::vector<Equivariant<K>> out;
    Module<K> tw = act_T(gen, w);
    std::vector<HomElem<K>> homs = th_.hom_modules(tw, w);
    std::vector<Mor<K>> even;
    for (auto& h : homs)
        if (h.parity == Parity::Even) even.push_back(h.mor);
    if (even.size() != 1) {
        if (even.empty()) return out; // no equivariant structure at all
        throw Error("equivariant enumeration needs a one-dimensional even hom space");
    }
    Mor<K> f0 = even[0];

    // f0^n must be a scalar multiple of the identity.
    Matrix<K> pw = f0.m;
    for (int i = 1; i < n; ++i) pw = pw * f0.m;
    K lambda = S::zero();
    bool scalar = true;
    for (int i = 0; i < pw.rows && scalar; ++i)
        for (int j = 0; j < pw.cols && scalar; ++j) {
            if (i == j) {
                if (i == 0)
                    lambda = pw.at(0, 0);
                else if (S::abs(pw.at(i, j) - lambda) > tol())
                    scalar = false;
            } else if (S::abs(pw.at(i, j)) > tol()) {
                scalar = false;
            }
        }
    if (!scalar) throw Error("phi generator power is not scalar; module not isotypic");

    // alpha^n lambda = 1.
    Cplx lam = S::to_complex(lambda);
    for (int k = 0; k < n; ++k) {
        Cplx alpha = std::polar(std::pow(std::abs(lam), -1.0 / n),
                                (-std::arg(lam) + 2.0 * M_PI * k) / n);
        // Clean float fuzz from polar(); the candidate is re-verified below.
        auto snap = [](double v) {
            const double r = std::round(v * 16.0) / 16.0;
            return std::abs(v - r) <= 1e-9 ? r : v;
        };
        alpha = {snap(alpha.real()), snap(alpha.imag())};
        K a;
        try {
            a = S::from_complex(alpha);
        } catch (const Error&) {
            throw Error("equivariant scalar outside the exact field; use float mode");
        }
        Equivariant<K> cand;
        cand.base = w;
        cand.name = w.name + "^phi" + std::to_string(k);
        cand.phi.assign(n, Mor<K>{});
        // Build powers of the generator.
        Matrix<K> cur = Matrix<K>::identity(w.W.size());
        int idx = G().identity;
        WordPtr wW = word_leaf(w.W);
        for (int step = 0; step < n; ++step) {
            cand.phi[idx] = Mor<K>{wW, wW, cur};
            cur = (f0.m * cur).scaled(a);
            idx = G().mul(idx, gen);
        }
        if (equivariant_check(cand).pass()) out.push_back(std::move(cand));
    }
    return out;
}

template <class K>
CheckReport Orbifold<K>::verify_equivalence(const std::vector<ConcreteObject>& simple_objects,
                                            const std::vector<Module<K>>& simple_modules) {
    Engine<K>& e = eng();
    CheckReport rep;
    rep.title = "equivariantization equivalence";
    WordPtr wV = word_leaf(th_.alg().V);

    // F(X)^G = X via l (eps x 1), with inverse (iota x 1) l^-1.
    int idx = 0;
    for (const auto& x : simple_objects) {
        Equivariant<K> ex = equivariantize_induce(x);
        auto [wg, incl] = invariants(ex);
        WordPtr wX = word_leaf(x);
        auto [flat, iso] = e.flatten(word_tensor(wV, wX));
        Mor<K> inv_iso{iso.cod, iso.dom, iso.m.transposed()};
        Mor<K> to_x = e.compose(e.lunit(wX, false),
                                e.compose(e.tensor_mor(*th_.alg().eps, e.identity(wX)),
                                          e.compose(inv_iso, incl)));
        Mor<K> back = e.compose(e.compose(iso,
                                          e.tensor_mor(th_.alg().iota, e.identity(wX))),
                                e.lunit(wX, true));
        // to_x: F(X)^G -> X must be invertible with inverse the projection of
        // back onto the invariants.
        if (to_x.m.rows != to_x.m.cols)
            throw EquivalenceDefect("invariants of F(X) have the wrong dimension");
        double res = distance(to_x.m * (left_inverse_of(incl, e) * back.m),
                              Matrix<K>::identity(to_x.m.rows));
        rep.add("FX_invariants[" + std::to_string(idx) + "]", "F(X)^G = X via l (eps x 1)", res,
                tol());
        ++idx;
    }

    // Psi_E: F(E^G) -> E is an isomorphism in the equivariantization.
    int total_structures = 0;
    for (const auto& m : simple_modules) {
        std::vector<Equivariant<K>> structures = enumerate_phi(m);
        total_structures += int(structures.size());
        for (size_t s = 0; s < structures.size(); ++s) {
            const Equivariant<K>& E = structures[s];
            Mor<K> p = psi(E);
            bool invertible = p.m.rows == p.m.cols;
            if (invertible) {
                try {
                    inverse(p.m, tol());
                } catch (const Error&) {
                    invertible = false;
                }
            }
            rep.add_flag("psi_iso[" + E.name + "]", "Psi_E is an isomorphism", invertible);
            auto [wg, incl] = invariants(E);
            Module<K> fwg = th_.induce(wg);
            rep.add("psi_repv[" + E.name + "]", "Psi_E is a rep V morphism",
                    th_.intertwiner_residual(p, fwg, E.base), tol());
            // Restricted to the invariants, Psi_E is the unit insertion: the
            // adjunction identity Psi(iota_W) (iota x 1) l^-1 = iota_W.
            WordPtr wWG = word_leaf(wg);
            auto [fx, isoF] = e.flatten(word_tensor(wV, wWG));
            Mor<K> embed = e.compose(
                isoF, e.compose(e.tensor_mor(th_.alg().iota, e.identity(wWG)),
                                e.lunit(wWG, true)));
            rep.add("psi_restriction[" + E.name + "]",
                    "Psi_E restricted to the invariants is the unit insertion",
                    distance(e.compose(p, embed).m, incl.m), tol());
            // Psi_E commutes with the G-structures.
            Equivariant<K> fE = equivariantize_induce(wg);
            double worst = 0.0;
            for (int g = 0; g < G().size(); ++g)
                worst = std::max(worst,
                                 distance((p.m * fE.phi[g].m), (E.phi[g].m * p.m)));
            rep.add("psi_equivariant[" + E.name + "]", "Psi_E commutes with phi", worst, tol());
        }
    }
    rep.add_flag("simple_counts", "number of simples matches",
                 total_structures == eng().spec().count(),
                 std::to_string(total_structures) + " equivariant simples vs " +
                     std::to_string(eng().spec().count()) + " base simples");
    return rep;
}

// Left inverse of an injective inclusion (q^T q)^{-1} q^T would need
// conjugation; instead solve x q = id on the image.
template <class K>
Matrix<K> left_inverse_of(const Mor<K>& q, Engine<K>& e) {
    LinearSolution<K> s = solve_left(q.m, Matrix<K>::identity(q.m.cols), e.tol());
    if (s.residual > e.tol()) throw Error("inclusion has no left inverse");
    return s.x;
}

} // namespace orbcat

#endif
