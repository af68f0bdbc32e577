#ifndef ORBCAT_SUITES_IMPL_HPP
#define ORBCAT_SUITES_IMPL_HPP

#include "orbcat/suites.hpp"

namespace orbcat {

template <class K>
CheckReport validate_suite(const Instance& in, std::optional<double> tol) {
    CategorySpec spec = in.spec;
    if (tol) spec.tol = *tol;
    ValidationReport v = validate_spec<K>(spec);
    CheckReport rep;
    rep.title = "instance validation: " + in.name;
    rep.add("pentagon", "pentagon equation over all admissible tuples", v.pentagon_residual,
            spec.tol, v.worst_pentagon.empty() ? "" : "worst at " + v.worst_pentagon);
    rep.add("hexagon", "hexagon equation (both chiralities)",
            std::max(v.hexagon_residual, v.hexagon_inv_residual), spec.tol,
            v.worst_hexagon.empty() ? "" : "worst at " + v.worst_hexagon);
    rep.add("unit_dual", "unit/dual consistency and gauge normalization", v.unit_dual_residual,
            spec.tol);
    for (const auto& f : v.failures) rep.add_flag("structure", f, false);
    return rep;
}

template <class K>
std::vector<CheckReport> algebra_suite(Realized<K>& r) {
    std::vector<CheckReport> out;
    out.push_back(check_superalgebra(r.theory->eng(), r.theory->alg()));
    out.push_back(check_assumption(r.theory->eng(), r.theory->alg()));
    return out;
}

template <class K>
CheckReport lemma_suite(Realized<K>& r) {
    Engine<K>& eng = r.theory->eng();
    const SuperAlgebra<K>& alg = r.theory->alg();
    const StandardContext& sc = r.theory->sc();
    Env<K> env = algebra_env(eng, alg);
    const double tol = eng.tol();
    using S = ScalarOps<K>;

    CheckReport rep;
    rep.title = "lemma suite";
    for (int g = 0; g < alg.G.size(); ++g) {
        FormulaId id{"trace_g", {}};
        id.params["g"] = alg.G.names[g];
        CatalogFormula f = formula(id, sc);
        Mor<K> got = eng.eval(f.lhs, env);
        Matrix<K> want = g == alg.G.identity ? alg.iota.m.scaled(S::from_int(alg.G.size()))
                                             : Matrix<K>(alg.V.size(), 1);
        rep.add("trace[" + alg.G.names[g] + "]", f.anchor, distance(got.m, want), tol);
    }
    CatalogFormula cp = formula(FormulaId{"counit_pair", {}}, sc);
    rep.add("iota_recovery", cp.anchor,
            distance(eng.eval(cp.lhs, env).m, alg.iota.m), tol);
    CatalogFormula rl = formula(FormulaId{"rigidlike_L", {}}, sc);
    CatalogFormula rr = formula(FormulaId{"rigidlike_R", {}}, sc);
    rep.add("two_sided_coev", "two-sided coevaluation identity",
            distance(eng.eval(rl.lhs, env).m, eng.eval(rr.lhs, env).m), tol);
    return rep;
}

// Modules in scope for the heavier suites: declared ones plus F(simple).
template <class K>
std::vector<Module<K>> module_scope(Realized<K>& r) {
    std::vector<Module<K>> mods = r.modules;
    for (int i = 0; i < r.theory->eng().spec().count(); ++i) {
        ConcreteObject x{{{i, 0}}};
        Module<K> f = r.theory->induce(x);
        f.name = "F(" + r.theory->eng().spec().label(i) + ")";
        mods.push_back(std::move(f));
    }
    return mods;
}

template <class K>
CheckReport projector_suite(Realized<K>& r) {
    Engine<K>& eng = r.theory->eng();
    Orbifold<K>& orb = *r.orb;
    const auto& G = r.theory->alg().G;
    const double tol = eng.tol();
    CheckReport rep;
    rep.title = "projector suite";
    for (const Module<K>& w : module_scope(r)) {
        std::vector<Mor<K>> pis;
        for (int g = 0; g < G.size(); ++g) pis.push_back(orb.projector_pi(w, g));
        Matrix<K> sum(pis[0].m.rows, pis[0].m.cols);
        for (auto& p : pis) sum = sum + p.m;
        rep.add("sum_pi[" + w.name + "]", "sum_g pi_g = 1_W",
                distance(sum, Matrix<K>::identity(sum.rows)), tol);
        double worst_orth = 0.0, worst_mor = 0.0;
        bool even = true;
        for (int g = 0; g < G.size(); ++g) {
            worst_mor = std::max(worst_mor, r.theory->intertwiner_residual(pis[g], w, w));
            Parity p = eng.parity_of_mor(pis[g]);
            even = even && p != Parity::Odd && p != Parity::Mixed;
            for (int h = 0; h < G.size(); ++h) {
                Matrix<K> gh = pis[g].m * pis[h].m;
                Matrix<K> want = g == h ? pis[g].m : Matrix<K>(gh.rows, gh.cols);
                worst_orth = std::max(worst_orth, distance(gh, want));
            }
        }
        rep.add("orthogonal[" + w.name + "]", "pi_g pi_h = delta_{g,h} pi_g", worst_orth, tol);
        rep.add("morphism[" + w.name + "]", "each pi_g is a morphism in rep V", worst_mor, tol);
        rep.add_flag("even[" + w.name + "]", "each pi_g is even", even);
        try {
            TwistedDecomposition<K> dec = orb.decompose(w);
            double worst_sector = 0.0;
            for (const auto& s : dec.sectors)
                worst_sector = std::max(worst_sector, orb.twisted_residual(s.module, s.g));
            rep.add("sectors_twisted[" + w.name + "]", "image of pi_g is g-twisted",
                    worst_sector, tol);
        } catch (const Error& e) {
            rep.add_flag("sectors_twisted[" + w.name + "]", "image of pi_g is g-twisted", false,
                         e.what());
        }
    }
    return rep;
}

template <class K>
CheckReport sector_suite(Realized<K>& r) {
    CheckReport rep;
    rep.title = "twist table";
    const auto& G = r.theory->alg().G;
    for (const Module<K>& w : module_scope(r)) {
        auto t = r.orb->twist_of(w);
        std::string note;
        if (t) {
            note = "sector " + G.names[*t];
        } else {
            TwistedDecomposition<K> dec = r.orb->decompose(w);
            note = "mixed:";
            for (const auto& s : dec.sectors)
                note += " " + G.names[s.g] + "(dim " + std::to_string(s.module.W.size()) + ")";
        }
        rep.add_flag("twist[" + w.name + "]", "sector assignment", true, note);
    }
    return rep;
}

template <class K>
CheckReport grading_suite(Realized<K>& r) {
    CheckReport rep;
    rep.title = "grading multiplicativity";
    const auto& G = r.theory->alg().G;
    std::vector<Module<K>> simples = simple_set(r);
    for (const auto& a : simples)
        for (const auto& b : simples) {
            int ga = *r.orb->twist_of(a), gb = *r.orb->twist_of(b);
            const auto& p = r.theory->tensor(a, b);
            rep.add("grading[" + a.name + "," + b.name + "]",
                    "W1 x_V W2 is g1 g2-twisted",
                    r.orb->twisted_residual(p.module, G.mul(ga, gb)), r.theory->tol());
        }
    return rep;
}

template <class K>
CheckReport gcrossed_suite(Realized<K>& r) {
    return r.orb->check_gcrossed(simple_set(r));
}

template <class K>
CheckReport functor_suite(Realized<K>& r) {
    Engine<K>& eng = r.theory->eng();
    Theory<K>& th = *r.theory;
    Orbifold<K>& orb = *r.orb;
    const double tol = th.tol();
    const CategorySpec& spec = eng.spec();
    CheckReport rep;
    rep.title = "induction functor checks";

    // F(1) = V through the right unit isomorphism, compatibly with phi.
    {
        ConcreteObject unit_obj{{{spec.unit, 0}}};
        WordPtr wV = word_leaf(th.alg().V);
        auto [fu, iso] = eng.flatten(word_tensor(wV, eng.unit_word()));
        Mor<K> inv_iso{iso.cod, iso.dom, iso.m.transposed()};
        Mor<K> rv = eng.compose(eng.runit(wV, false), inv_iso);
        Module<K> FU = th.induce(unit_obj);
        rep.add("unit_map", "r_V: F(1) -> V is a rep V isomorphism",
                th.intertwiner_residual(rv, FU, th.unit_module()), tol);
        Equivariant<K> e = orb.equivariantize_induce(unit_obj);
        double worst = 0.0;
        for (int g = 0; g < th.alg().G.size(); ++g)
            worst = std::max(worst,
                             distance((rv.m * e.phi[g].m), (orb.phi_g(g).m * rv.m)));
        rep.add("unit_map_phi", "r_V commutes with the G-structures", worst, tol);
    }

    // Monoidal structure maps on pairs of simples, phi_F representations, and
    // the braided compatibility square. phi_F(P_V) = P_{F(X)} holds for even
    // X (the base-category case); for odd X the parities differ by the sign
    // of the X factor, so F(X) lives in the super-equivariantization only.
    for (int i = 0; i < spec.count(); ++i) {
        ConcreteObject xi{{{i, 0}}};
        Equivariant<K> ei = orb.equivariantize_induce(xi);
        CheckReport ec = orb.equivariant_check(ei);
        bool rep_ok = true;
        for (const auto& l : ec.lines)
            if (l.key != "parity" && !l.pass) rep_ok = false;
        rep.add_flag("phi_F[" + spec.label(i) + "]",
                     "phi_F(W)(g) = g x 1 is a compatible G-representation", rep_ok);
        if (th.alg().G.parity_involution >= 0) {
            Mor<K> pw = eng.parity_operator(word_leaf(ei.base.W));
            Matrix<K> want = spec.parity[i] ? pw.m.scaled(-ScalarOps<K>::one()) : pw.m;
            rep.add("phi_F_parity[" + spec.label(i) + "]",
                    "phi_F(P_V) = (-1)^{|X|} P_{F(X)}",
                    distance(ei.phi[th.alg().G.parity_involution].m, want), tol);
        }
    }
    for (int i = 0; i < spec.count(); ++i)
        for (int j = 0; j < spec.count(); ++j) {
            ConcreteObject xi{{{i, 0}}}, xj{{{j, 0}}};
            Mor<K> f = th.induction_monoidal(xi, xj);
            bool invertible = f.m.rows == f.m.cols;
            if (invertible) {
                try {
                    inverse(f.m, tol);
                } catch (const Error&) {
                    invertible = false;
                }
            }
            rep.add_flag("monoidal_iso[" + spec.label(i) + "," + spec.label(j) + "]",
                         "F(X1 x X2) = F(X1) x_V F(X2)", invertible);
            auto [x12, iso12] = eng.flatten(word_tensor(word_leaf(xi), word_leaf(xj)));
            Module<K> F12 = th.induce(x12);
            const auto& prod = th.tensor(th.induce(xi), th.induce(xj));
            rep.add("monoidal_repv[" + spec.label(i) + "," + spec.label(j) + "]",
                    "the structure map is a rep V morphism",
                    th.intertwiner_residual(f, F12, prod.module), tol);

            // Braided square: f_{X2,X1} F(R_{X1,X2}) = R~ f_{X1,X2}.
            Mor<K> braid_c = eng.braid(word_leaf(xi), word_leaf(xj), false);
            Mor<K> fr = th.induce_mor(braid_c);
            Mor<K> lhs = eng.compose(th.induction_monoidal(xj, xi), fr);
            Equivariant<K> e1 = orb.equivariantize_induce(xi);
            Equivariant<K> e2 = orb.equivariantize_induce(xj);
            Mor<K> rt = orb.equivariant_braiding(e1, e2);
            Mor<K> rhs = eng.compose(rt, f);
            rep.add("braided_square[" + spec.label(i) + "," + spec.label(j) + "]",
                    "f_{X2,X1} F(R) = R~ f_{X1,X2}", distance(lhs.m, rhs.m), tol);
        }

    // Adjunction: Psi(f) (iota x 1) l^-1 = f for the identity insertion.
    {
        ConcreteObject x{{{spec.unit, 0}}};
        Module<K> FX = th.induce(x);
        WordPtr wX = word_leaf(x);
        Matrix<K> fm(FX.W.size(), 1);
        for (int k = 0; k < FX.W.size(); ++k)
            if (FX.W.sum[k].label == spec.unit && summand_parity(spec, FX.W.sum[k]) == 0) {
                fm.at(k, 0) = ScalarOps<K>::one();
                break;
            }
        Mor<K> f{wX, word_leaf(FX.W), fm};
        Mor<K> psi = th.adjoint_psi(f, FX);
        auto [fx, iso] = eng.flatten(word_tensor(word_leaf(th.alg().V), wX));
        Mor<K> embed = eng.compose(
            iso, eng.compose(eng.tensor_mor(th.alg().iota, eng.identity(wX)),
                             eng.lunit(wX, true)));
        rep.add("adjunction", "Psi(f) (iota x 1) l^-1 = f",
                distance(eng.compose(psi, embed).m, f.m), tol);
    }
    return rep;
}

template <class K>
CheckReport appendix_suite(Realized<K>& r) {
    Engine<K>& eng = r.theory->eng();
    Theory<K>& th = *r.theory;
    Orbifold<K>& orb = *r.orb;
    const StandardContext& sc = th.sc();
    const auto& G = th.alg().G;
    const double tol = th.tol();
    CheckReport rep;
    rep.title = "identity chain suite";

    auto run_pair = [&](const std::string& key, const FormulaId& id, Env<K>& env) {
        CatalogFormula f = formula(id, sc);
        Mor<K> lhs = eng.eval(f.lhs, env);
        Mor<K> rhs = eng.eval(*f.rhs, env);
        rep.add(key, f.anchor, distance(lhs.m, rhs.m), tol);
    };

    // Algebra-level chains.
    {
        Env<K> env = algebra_env(eng, th.alg());
        for (int g = 0; g < G.size(); ++g) {
            FormulaId id{"appendix:tr_chain", {}};
            id.params["g"] = G.names[g];
            id.params["ginv"] = G.names[G.inv(g)];
            run_pair("tr_chain[" + G.names[g] + "]", id, env);
        }
        run_pair("rigidlike_eval_L", FormulaId{"appendix:rigidlike_eval_L", {}}, env);
        run_pair("rigidlike_eval_R", FormulaId{"appendix:rigidlike_eval_R", {}}, env);
    }

    // Module-level chains over the scope.
    for (const Module<K>& w : module_scope(r)) {
        Env<K> env = th.env_mod(w);
        for (int g = 0; g < G.size(); ++g) {
            FormulaId idm{"appendix:pi_morphism", {}};
            idm.params["g"] = G.names[g];
            run_pair("pi_morphism[" + G.names[g] + ";" + w.name + "]", idm, env);
            FormulaId idt{"appendix:pi_image_twisted", {}};
            idt.params["g"] = G.names[g];
            run_pair("pi_image_twisted[" + G.names[g] + ";" + w.name + "]", idt, env);
        }
        run_pair("sum_pi[" + w.name + "]", FormulaId{"appendix:sum_pi", {}}, env);
    }

    // Pi_g on h-twisted sectors.
    for (const Module<K>& w : simple_set(r)) {
        int h = *orb.twist_of(w);
        Env<K> env = th.env_mod(w);
        for (int g = 0; g < G.size(); ++g) {
            FormulaId id{"appendix:pi_on_twisted", {}};
            id.params["g"] = G.names[g];
            id.params["h"] = G.names[h];
            run_pair("pi_on_twisted[" + G.names[g] + "," + G.names[h] + ";" + w.name + "]", id,
                     env);
        }
    }
    return rep;
}

template <class K>
CheckReport equivariantization_suite(Realized<K>& r) {
    std::vector<ConcreteObject> simples;
    for (int i = 0; i < r.theory->eng().spec().count(); ++i)
        simples.push_back(ConcreteObject{{{i, 0}}});
    return r.orb->verify_equivalence(simples, simple_set(r));
}

template <class K>
CheckReport decompose_table(Realized<K>& r, const std::string& module_name) {
    const Module<K>* target = nullptr;
    for (const auto& m : r.modules)
        if (m.name == module_name) target = &m;
    if (!target) throw Error("no module named '" + module_name + "' in this instance");
    TwistedDecomposition<K> dec = r.orb->decompose(*target);
    CheckReport rep;
    rep.title = "decomposition of " + module_name;
    const auto& G = r.theory->alg().G;
    for (const auto& s : dec.sectors)
        rep.add("sector[" + G.names[s.g] + "]", "pi_g image",
                r.orb->twisted_residual(s.module, s.g), r.theory->tol(),
                "dim " + std::to_string(s.module.W.size()));
    Matrix<K> sum(target->W.size(), target->W.size());
    for (const auto& s : dec.sectors) sum = sum + (s.inclusion.m * s.projection.m);
    rep.add("resolution", "sum q_g p_g = 1_W",
            distance(sum, Matrix<K>::identity(target->W.size())), r.theory->tol());
    return rep;
}

template <class K>
CheckReport fusion_table_suite(Realized<K>& r, const std::string& category) {
    Theory<K>& th = *r.theory;
    CheckReport rep;
    std::vector<Module<K>> simples = simple_set(r);
    if (category == "repv") {
        rep.title = "fusion table in rep V";
        for (const auto& a : simples)
            for (const auto& b : simples) {
                const auto& p = th.tensor(a, b);
                std::string rhs;
                int covered = 0;
                for (const auto& c : simples) {
                    int mult = th.hom_dim(c, p.module, Parity::Even);
                    if (!mult) continue;
                    if (!rhs.empty()) rhs += " + ";
                    rhs += (mult > 1 ? std::to_string(mult) + "." : "") + c.name;
                    covered += mult * c.W.size();
                }
                rep.add_flag("fuse[" + a.name + "," + b.name + "]", "multiplicities by hom dim",
                             covered == p.module.W.size(),
                             a.name + " x " + b.name + " = " + (rhs.empty() ? "0" : rhs));
            }
        return rep;
    }
    if (category != "equivariant") throw Error("unknown fusion table category: " + category);

    rep.title = "fusion table in the equivariantization";
    Orbifold<K>& orb = *r.orb;
    std::vector<Equivariant<K>> eq;
    for (const auto& m : simples)
        for (auto& s : orb.enumerate_phi(m)) eq.push_back(std::move(s));
    for (const auto& a : eq)
        for (const auto& b : eq) {
            Equivariant<K> p = orb.equivariant_tensor(a, b);
            std::string rhs;
            int covered = 0;
            for (const auto& c : eq) {
                // multiplicity: even rep V homs commuting with the G-structures
                std::vector<HomElem<K>> homs = th.hom_modules(c.base, p.base);
                std::vector<Mor<K>> even;
                for (auto& h : homs)
                    if (h.parity == Parity::Even) even.push_back(h.mor);
                if (even.empty()) continue;
                const int n = r.theory->alg().G.size();
                int vec_len = p.base.W.size() * c.base.W.size() * n;
                Matrix<K> system(vec_len, int(even.size()));
                for (size_t k = 0; k < even.size(); ++k) {
                    int row = 0;
                    for (int g = 0; g < n; ++g) {
                        Matrix<K> comm = (p.phi[g].m * even[k].m) - (even[k].m * c.phi[g].m);
                        for (const auto& v : comm.a) system.at(row++, int(k)) = v;
                    }
                }
                int mult = null_space(system, th.tol()).cols;
                if (!mult) continue;
                if (!rhs.empty()) rhs += " + ";
                rhs += (mult > 1 ? std::to_string(mult) + "." : "") + c.name;
                covered += mult * c.base.W.size();
            }
            rep.add_flag("fuse[" + a.name + "," + b.name + "]",
                         "multiplicities by equivariant hom dim",
                         covered == p.base.W.size(),
                         a.name + " x " + b.name + " = " + (rhs.empty() ? "0" : rhs));
        }
    return rep;
}

} // namespace orbcat

#endif
