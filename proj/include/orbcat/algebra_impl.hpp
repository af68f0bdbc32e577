#ifndef ORBCAT_ALGEBRA_IMPL_HPP
#define ORBCAT_ALGEBRA_IMPL_HPP

namespace orbcat {

template <class K>
Env<K> algebra_env(Engine<K>& eng, const SuperAlgebra<K>& alg) {
    StandardContext sc = algebra_context(alg);
    Env<K> env;
    env.ctx = sc.ctx;
    env.objects["V"] = alg.V;
    env.gens["mu"] = alg.mu;
    env.gens["iota"] = alg.iota;
    if (alg.eps) env.gens["eps"] = *alg.eps;
    if (alg.coev) env.gens["coev"] = *alg.coev;
    WordPtr wV = word_leaf(alg.V);
    for (int i = 0; i < alg.G.size(); ++i)
        env.gens[alg.G.names[i]] = Mor<K>{wV, wV, alg.G.mats[i]};
    (void)eng;
    return env;
}

namespace detail {

template <class K>
double residual_vs(Engine<K>& eng, const Env<K>& env, const MorPtr& a, const Mor<K>& b) {
    Mor<K> ma = eng.eval(a, env);
    if (!word_equal(ma.dom, b.dom) || !word_equal(ma.cod, b.cod))
        throw ShapeMismatch("compared morphisms have different boundary words");
    return distance(ma.m, b.m);
}

template <class K>
double residual_between(Engine<K>& eng, const Env<K>& env, const MorPtr& a, const MorPtr& b) {
    return residual_vs(eng, env, a, eng.eval(b, env));
}

} // namespace detail

template <class K>
CheckReport check_superalgebra(Engine<K>& eng, const SuperAlgebra<K>& alg) {
    Env<K> env = algebra_env(eng, alg);
    ObjPtr V = obj_gen("V");
    WordPtr wV = word_leaf(alg.V);
    WordPtr wVV = word_tensor(wV, wV);
    if (!word_equal(alg.mu.dom, wVV) || !word_equal(alg.mu.cod, wV))
        throw ShapeMismatch("mu must map V x V to V");
    if (!word_equal(alg.iota.dom, eng.unit_word()) || !word_equal(alg.iota.cod, wV))
        throw ShapeMismatch("iota must map 1 to V");

    CheckReport rep;
    rep.title = "superalgebra axioms";
    const double tol = eng.tol();

    MorPtr left_unit = mor_chain({mor_lunit(V, true),
                                  mor_tensor(mor_gen("iota"), mor_identity(V)), mor_gen("mu")});
    rep.add("left_unit", "mu (iota x 1) l^-1 = 1_V",
            detail::residual_vs(eng, env, left_unit, eng.identity(wV)), tol);

    MorPtr assoc_l = mor_chain({mor_tensor(mor_identity(V), mor_gen("mu")), mor_gen("mu")});
    MorPtr assoc_r = mor_chain({mor_assoc(V, V, V), mor_tensor(mor_gen("mu"), mor_identity(V)),
                                mor_gen("mu")});
    rep.add("associativity", "mu (1 x mu) = mu (mu x 1) A",
            detail::residual_between(eng, env, assoc_l, assoc_r), tol);

    MorPtr commu = mor_chain({mor_braid(V, V), mor_gen("mu")});
    rep.add("supercommutativity", "mu = mu R_{V,V}",
            detail::residual_vs(eng, env, commu, alg.mu), tol);

    MorPtr right_unit = mor_chain({mor_runit(V, true),
                                   mor_tensor(mor_identity(V), mor_gen("iota")), mor_gen("mu")});
    rep.add("right_unit", "mu (1 x iota) r^-1 = 1_V",
            detail::residual_vs(eng, env, right_unit, eng.identity(wV)), tol);

    bool even = eng.parity_of_mor(alg.mu) != Parity::Odd &&
                eng.parity_of_mor(alg.mu) != Parity::Mixed &&
                eng.parity_of_mor(alg.iota) == Parity::Even;
    rep.add_flag("even_structure", "mu and iota are even", even);
    return rep;
}

template <class K>
Mor<K> derive_counit(Engine<K>& eng, const SuperAlgebra<K>& alg) {
    using S = ScalarOps<K>;
    const CategorySpec& spec = eng.spec();
    WordPtr wV = word_leaf(alg.V);

    // Even part of hom(1, V): unit-label summands of even parity.
    std::vector<int> even_unit;
    for (int i = 0; i < alg.V.size(); ++i)
        if (alg.V.sum[i].label == spec.unit && summand_parity(spec, alg.V.sum[i]) == 0)
            even_unit.push_back(i);
    if (even_unit.size() != 1)
        throw NotHaploid("hom(1,V) even part has dimension " + std::to_string(even_unit.size()));
    const int u = even_unit[0];

    // eps iota = 1 pins the coefficient on the haploid summand.
    K pairing = alg.iota.m.at(u, 0);
    if (S::is_zero(pairing, eng.tol()))
        throw NoCounit("iota misses the haploid summand");
    Mor<K> eps{wV, eng.unit_word(), Matrix<K>(1, alg.V.size())};
    eps.m.at(0, u) = S::inv(pairing);

    // iota eps must equal the group average.
    Matrix<K> avg(alg.V.size(), alg.V.size());
    for (const auto& g : alg.G.mats) avg = avg + g;
    avg = avg.scaled(S::from_ratio(1, alg.G.size()));
    Mor<K> comp = eng.compose(alg.iota, eps);
    if (distance(comp.m, avg) > eng.tol())
        throw NoCounit("iota eps does not equal |G|^-1 sum_g g (residual " +
                       std::to_string(distance(comp.m, avg)) + ")");
    return eps;
}

template <class K>
Mor<K> derive_coev(Engine<K>& eng, const SuperAlgebra<K>& alg) {
    using S = ScalarOps<K>;
    if (!alg.eps) throw Error("derive_coev needs eps");
    WordPtr wV = word_leaf(alg.V);
    WordPtr wVV = word_tensor(wV, wV);
    auto bVV = eng.basis(wVV);
    const CategorySpec& spec = eng.spec();

    // Candidate support: even trees with unit total charge.
    std::vector<int> support;
    for (int i = 0; i < bVV->size(); ++i)
        if (bVV->trees[i].root == spec.unit && bVV->trees[i].parity == 0) support.push_back(i);
    if (support.empty()) throw PairingDegenerate("hom(1, V x V) has no even unit component");

    SuperAlgebra<K> tmp = alg;
    StandardContext sc = algebra_context(alg);
    FormulaId idl{"snake_left", {}}, idr{"snake_right", {}};
    CatalogFormula snl = formula(idl, sc), snr = formula(idr, sc);

    const int nv = alg.V.size();
    Matrix<K> system(2 * nv * nv, int(support.size()));
    for (size_t k = 0; k < support.size(); ++k) {
        Mor<K> cand{eng.unit_word(), wVV, Matrix<K>(bVV->size(), 1)};
        cand.m.at(support[k], 0) = S::one();
        tmp.coev = cand;
        Env<K> env = algebra_env(eng, tmp);
        Mor<K> sl = eng.eval(snl.lhs, env);
        Mor<K> sr = eng.eval(snr.lhs, env);
        for (int i = 0; i < nv; ++i)
            for (int j = 0; j < nv; ++j) {
                system.at(i * nv + j, int(k)) = sl.m.at(i, j);
                system.at(nv * nv + i * nv + j, int(k)) = sr.m.at(i, j);
            }
    }
    Matrix<K> target(2 * nv * nv, 1);
    for (int i = 0; i < nv; ++i) {
        target.at(i * nv + i, 0) = S::one();
        target.at(nv * nv + i * nv + i, 0) = S::one();
    }
    LinearSolution<K> sol = solve_right(system, target, eng.tol());
    if (sol.residual > eng.tol())
        throw PairingDegenerate("snake equations have no solution (residual " +
                                std::to_string(sol.residual) + ")");
    if (sol.nullity != 0)
        throw PairingDegenerate("coevaluation is not unique (solution space dim " +
                                std::to_string(sol.nullity) + ")");

    Mor<K> coev{eng.unit_word(), wVV, Matrix<K>(bVV->size(), 1)};
    for (size_t k = 0; k < support.size(); ++k) coev.m.at(support[k], 0) = sol.x.at(int(k), 0);

    // dim V = |G|: mu coev = |G| iota.
    Mor<K> muco = eng.compose(alg.mu, coev);
    Matrix<K> want = alg.iota.m.scaled(S::from_int(alg.G.size()));
    if (distance(muco.m, want) > eng.tol()) {
        // Report the scalar actually found on the haploid summand.
        std::string found = "?";
        for (int i = 0; i < nv; ++i)
            if (!S::is_zero(alg.iota.m.at(i, 0), eng.tol())) {
                K ratio = muco.m.at(i, 0) * S::inv(alg.iota.m.at(i, 0));
                found = std::to_string(S::to_complex(ratio).real());
                break;
            }
        throw DimensionMismatch("mu coev = " + found + " iota, expected |G| = " +
                                std::to_string(alg.G.size()));
    }
    return coev;
}

template <class K>
CheckReport check_assumption(Engine<K>& eng, const SuperAlgebra<K>& alg) {
    using S = ScalarOps<K>;
    CheckReport rep;
    rep.title = "assumption suite";
    const double tol = eng.tol();
    const CategorySpec& spec = eng.spec();
    WordPtr wV = word_leaf(alg.V);

    // Group facts.
    rep.add_flag("group_finite", "G is finite", alg.G.size() > 0,
                 "|G| = " + std::to_string(alg.G.size()));
    Mor<K> pv = eng.parity_operator(wV);
    double best = 1e300;
    int pv_idx = -1;
    for (int i = 0; i < alg.G.size(); ++i) {
        double dist = distance(pv.m, alg.G.mats[i]);
        if (dist < best) {
            best = dist;
            pv_idx = i;
        }
    }
    bool pv_in_g = best <= tol;
    bool pv_trivial = distance(pv.m, Matrix<K>::identity(alg.V.size())) <= tol;
    std::string note;
    if (pv_in_g && alg.G.size() % 2 != 0)
        note = pv_trivial ? "parity involution trivial, odd |G| accepted" : "odd |G| with P_V?";
    rep.add_flag("parity_involution_in_G", "P_V in G", pv_in_g, note);
    (void)pv_idx;
    rep.add_flag("order_invertible", "|G| invertible in the scalar field", alg.G.size() > 0);

    // Haploidity.
    int even_units = 0;
    for (const auto& s : alg.V.sum)
        if (s.label == spec.unit && summand_parity(spec, s) == 0) ++even_units;
    rep.add_flag("haploid", "hom(1,V) even part is one-dimensional", even_units == 1);

    Env<K> env = algebra_env(eng, alg);
    ObjPtr V = obj_gen("V");
    if (alg.eps) {
        Mor<K> ei = eng.compose(*alg.eps, alg.iota);
        rep.add("eps_iota", "eps iota = 1", distance(ei.m, Matrix<K>::identity(1)), tol);
        Matrix<K> avg(alg.V.size(), alg.V.size());
        for (const auto& g : alg.G.mats) avg = avg + g;
        avg = avg.scaled(S::from_ratio(1, alg.G.size()));
        Mor<K> ie = eng.compose(alg.iota, *alg.eps);
        rep.add("iota_eps", "iota eps = |G|^-1 sum_g g", distance(ie.m, avg), tol);
    } else {
        rep.add_flag("eps_present", "eps exists", false);
    }

    StandardContext sc = algebra_context(alg);
    if (alg.coev && alg.eps) {
        CatalogFormula snl = formula(FormulaId{"snake_left", {}}, sc);
        CatalogFormula snr = formula(FormulaId{"snake_right", {}}, sc);
        rep.add("snake_left", snl.anchor,
                detail::residual_vs(eng, env, snl.lhs, eng.identity(wV)), tol);
        rep.add("snake_right", snr.anchor,
                detail::residual_vs(eng, env, snr.lhs, eng.identity(wV)), tol);

        Mor<K> muco = eng.compose(alg.mu, *alg.coev);
        rep.add("dimension", "mu i~ = |G| iota",
                distance(muco.m, alg.iota.m.scaled(S::from_int(alg.G.size()))), tol);

        // Trace table: mu (1 x g) i~ = |G| delta_{g,1} iota.
        for (int gi = 0; gi < alg.G.size(); ++gi) {
            FormulaId id{"trace_g", {}};
            id.params["g"] = alg.G.names[gi];
            CatalogFormula tr = formula(id, sc);
            Mor<K> got = eng.eval(tr.lhs, env);
            Matrix<K> want = gi == alg.G.identity
                                 ? alg.iota.m.scaled(S::from_int(alg.G.size()))
                                 : Matrix<K>(alg.V.size(), 1);
            rep.add("trace[" + alg.G.names[gi] + "]", tr.anchor, distance(got.m, want), tol);
        }

        CatalogFormula cp = formula(FormulaId{"counit_pair", {}}, sc);
        rep.add("iota_recovery", cp.anchor, detail::residual_vs(eng, env, cp.lhs, alg.iota), tol);

        CatalogFormula rl = formula(FormulaId{"rigidlike_L", {}}, sc);
        CatalogFormula rr = formula(FormulaId{"rigidlike_R", {}}, sc);
        rep.add("two_sided_coev", "F_L = F_R (two-sided coevaluation)",
                detail::residual_between(eng, env, rl.lhs, rr.lhs), tol);
    } else {
        rep.add_flag("coev_present", "i~ exists", false);
    }
    (void)V;
    return rep;
}

template <class K>
bool check_automorphism(Engine<K>& eng, const SuperAlgebra<K>& alg, const Mor<K>& f) {
    if (eng.parity_of_mor(f) != Parity::Even) return false;
    const double tol = eng.tol();
    Mor<K> lhs = eng.compose(f, alg.mu);
    Mor<K> rhs = eng.compose(alg.mu, eng.tensor_mor(f, f));
    if (distance(lhs.m, rhs.m) > tol) return false;
    if (distance(eng.compose(f, alg.iota).m, alg.iota.m) > tol) return false;
    LinearSolution<K> inv = solve_right(f.m, Matrix<K>::identity(f.m.rows), tol);
    return inv.residual <= tol && inv.nullity == 0;
}

template <class K>
GroupRep<K> close_group(Engine<K>& eng, const SuperAlgebra<K>& alg,
                        const std::vector<std::pair<std::string, Matrix<K>>>& gens, int cap) {
    WordPtr wV = word_leaf(alg.V);
    const double tol = eng.tol();
    std::vector<std::string> names;
    std::vector<Matrix<K>> mats;
    auto find = [&](const Matrix<K>& m) {
        for (size_t i = 0; i < mats.size(); ++i)
            if (distance(mats[i], m) <= tol) return int(i);
        return -1;
    };

    Matrix<K> id = Matrix<K>::identity(alg.V.size());
    names.push_back("e");
    mats.push_back(id);
    for (const auto& [n, m] : gens) {
        if (!check_automorphism(eng, alg, Mor<K>{wV, wV, m}))
            throw NotAutomorphism("generator " + n + " is not an algebra automorphism");
        if (find(m) < 0) {
            names.push_back(n);
            mats.push_back(m);
        }
    }
    // Closure by products.
    for (size_t changed = 1; changed;) {
        changed = 0;
        const size_t cur = mats.size();
        for (size_t i = 0; i < cur; ++i)
            for (size_t j = 0; j < cur; ++j) {
                Matrix<K> p = mats[i] * mats[j];
                if (find(p) < 0) {
                    if (int(mats.size()) >= cap)
                        throw NotClosed("group closure exceeded cap " + std::to_string(cap));
                    names.push_back(names[i] + "*" + names[j]);
                    mats.push_back(p);
                    changed = 1;
                }
            }
    }
    std::vector<std::pair<std::string, Matrix<K>>> elements;
    for (size_t i = 0; i < mats.size(); ++i) elements.emplace_back(names[i], mats[i]);
    return finish_group(eng, alg, elements);
}

template <class K>
GroupRep<K> finish_group(Engine<K>& eng, const SuperAlgebra<K>& alg,
                         const std::vector<std::pair<std::string, Matrix<K>>>& elements) {
    WordPtr wV = word_leaf(alg.V);
    const double tol = eng.tol();
    GroupRep<K> g;
    for (const auto& [n, m] : elements) {
        if (!check_automorphism(eng, alg, Mor<K>{wV, wV, m}))
            throw NotAutomorphism("element " + n + " is not an algebra automorphism");
        g.names.push_back(n);
        g.mats.push_back(m);
    }
    const int n = g.size();
    Matrix<K> id = Matrix<K>::identity(alg.V.size());
    g.table.assign(n, std::vector<int>(n, -1));
    for (int i = 0; i < n; ++i) {
        if (distance(g.mats[i], id) <= tol) g.identity = i;
        for (int j = 0; j < n; ++j) {
            Matrix<K> p = g.mats[i] * g.mats[j];
            for (int k = 0; k < n; ++k)
                if (distance(p, g.mats[k]) <= tol) {
                    g.table[i][j] = k;
                    break;
                }
            if (g.table[i][j] < 0) throw NotClosed("element list is not closed under products");
        }
    }
    if (g.identity < 0) throw NotClosed("element list has no identity");
    Mor<K> pv = eng.parity_operator(wV);
    for (int i = 0; i < n; ++i)
        if (distance(pv.m, g.mats[i]) <= tol) g.parity_involution = i;
    return g;
}

} // namespace orbcat

#endif
