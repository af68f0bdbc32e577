// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>

#include "orbcat/suites_impl.hpp"

using namespace orbcat;

namespace {

int failures = 0;

void line(int idx, bool pass, const std::string& text) {
    std::printf("[%2d/10] %s %s\n", idx, pass ? "PASS" : "FAIL", text.c_str());
    if (!pass) ++failures;
}

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", v);
    return buf;
}

// --- criterion 10 helpers ---------------------------------------------------

template <class K>
int run_functoriality_cases(Engine<K>& eng, int cases, std::mt19937& rng) {
    Env<K> env;
    env.ctx.declare_object("V");
    ConcreteObject V{{{0, 0}, {1, 0}}};
    env.objects["V"] = V;
    ObjPtr oV = obj_gen("V");
    ObjPtr shapes[] = {oV, obj_tensor(oV, oV), obj_tensor(oV, obj_tensor(oV, oV))};
    int bad = 0;
    for (int i = 0; i < cases; ++i) {
        ObjPtr shape = shapes[rng() % 3];
        WordPtr w = eng.resolve(shape, env);
        auto bw = eng.basis(w);
        auto rand_endo = [&] {
            Mor<K> m{w, w, Matrix<K>(bw->size(), bw->size())};
            for (int a = 0; a < bw->size(); ++a)
                for (int b = 0; b < bw->size(); ++b)
                    if (bw->trees[a].root == bw->trees[b].root)
                        m.m.at(a, b) = ScalarOps<K>::from_int(int(rng() % 5) - 2);
            return m;
        };
        Env<K> e2 = env;
        e2.ctx.declare_gen("f", shape, shape, Parity::Mixed);
        e2.ctx.declare_gen("g", shape, shape, Parity::Mixed);
        e2.gens["f"] = rand_endo();
        e2.gens["g"] = rand_endo();
        Mor<K> lhs = eng.eval(mor_compose(mor_gen("f"), mor_gen("g")), e2);
        Mor<K> rhs = eng.compose(e2.gens["f"], e2.gens["g"]);
        if (distance(lhs.m, rhs.m) > 1e-12) ++bad;
    }
    return bad;
}

int run_hexagon_cases(int cases, std::mt19937& rng) {
    CategorySpec is = ising();
    Engine<Cplx> eng(is);
    std::vector<ConcreteObject> pool = {
        ConcreteObject{{{0, 0}}}, ConcreteObject{{{1, 0}}}, ConcreteObject{{{2, 0}}},
        ConcreteObject{{{0, 0}, {1, 0}}}, ConcreteObject{{{2, 0}, {1, 1}}}};
    int bad = 0;
    for (int i = 0; i < cases; ++i) {
        WordPtr a = word_leaf(pool[rng() % pool.size()]);
        WordPtr b = word_leaf(pool[rng() % pool.size()]);
        WordPtr c = word_leaf(pool[rng() % pool.size()]);
        Mor<Cplx> lhs = eng.braid(a, word_tensor(b, c), false);
        Mor<Cplx> rhs = eng.compose(
            eng.assoc(b, c, a, false),
            eng.compose(eng.tensor_mor(eng.identity(b), eng.braid(a, c, false)),
                        eng.compose(eng.assoc(b, a, c, true),
                                    eng.compose(eng.tensor_mor(eng.braid(a, b, false),
                                                               eng.identity(c)),
                                                eng.assoc(a, b, c, false)))));
        if (distance(lhs.m, rhs.m) > 1e-9) ++bad;
    }
    return bad;
}

int run_roundtrip_cases(int cases, std::mt19937& rng) {
    ObjPtr V = obj_gen("V"), W = obj_gen("Wname");
    std::vector<ObjPtr> objs = {V, W, obj_unit(), obj_tensor(V, obj_tensor(W, V))};
    std::function<MorPtr(int)> gen = [&](int depth) -> MorPtr {
        if (depth <= 0) {
            switch (rng() % 4) {
                case 0: return mor_identity(objs[rng() % objs.size()]);
                case 1: return mor_gen(rng() % 2 ? "mu" : "act");
                case 2:
                    return mor_braid(objs[rng() % objs.size()], objs[rng() % objs.size()],
                                     rng() % 2);
                default:
                    return mor_assoc(objs[rng() % objs.size()], objs[rng() % objs.size()],
                                     objs[rng() % objs.size()], rng() % 2);
            }
        }
        switch (rng() % 6) {
            case 0: return mor_compose(gen(depth - 1), gen(depth - 1));
            case 1: return mor_tensor(gen(depth - 1), gen(depth - 1));
            case 2: return mor_scale(Cplx{double(int(rng() % 9)) - 4.0, 0.5}, gen(depth - 1));
            case 3: return mor_sum({gen(depth - 1), gen(depth - 1)});
            case 4: return mor_lunit(objs[rng() % objs.size()], rng() % 2);
            default: return mor_runit(objs[rng() % objs.size()], rng() % 2);
        }
    };
    int bad = 0;
    for (int i = 0; i < cases; ++i) {
        MorPtr e = gen(3);
        if (!mor_equal(e, parse(render(e)))) ++bad;
    }
    return bad;
}

template <class K>
int run_simplify_cases(Realized<K>& r) {
    Theory<K>& th = *r.theory;
    const Module<K>& M = r.modules.size() > 1 ? r.modules[1] : r.modules[0];
    Env<K> env = th.env_mod(M);
    env.objects["W1"] = M.W;
    env.objects["W2"] = M.W;
    env.gens["act1"] = M.action;
    env.gens["act2"] = M.action;
    env.objects["X"] = M.W;
    const auto& G = th.alg().G;
    int bad = 0;
    for (const std::string& name : catalog_names()) {
        FormulaId id{name, {}};
        id.params["g"] = G.names[G.size() > 1 ? 1 : 0];
        id.params["ginv"] = G.names[G.inv(G.size() > 1 ? 1 : 0)];
        id.params["h"] = G.names[G.size() > 1 ? 1 : 0];
        id.params["A"] = obj_gen("V");
        id.params["B"] = obj_gen("W");
        id.params["X"] = obj_gen("X");
        CatalogFormula f = formula(id, th.sc());
        std::vector<MorPtr> exprs{f.lhs};
        if (f.rhs) exprs.push_back(*f.rhs);
        for (const MorPtr& e : exprs) {
            MorPtr padded = mor_compose(
                e, mor_compose(mor_lunit(typecheck(e, th.sc().ctx).dom, true),
                               mor_lunit(typecheck(e, th.sc().ctx).dom, false)));
            MorPtr s = simplify(padded, &th.sc().ctx);
            if (distance(th.eng().eval(s, env).m, th.eng().eval(e, env).m) > 1e-9) ++bad;
        }
    }
    return bad;
}

} // namespace

int main() {
    std::printf("acceptance suite\n");
    auto t_total = std::chrono::steady_clock::now();

    Instance ph = builtin_instance("ph");
    Instance is = builtin_instance("ising");
    Instance z2 = builtin_instance("z2");
    Instance z3 = builtin_instance("z3");
    Instance z4 = builtin_instance("z4");

    // 1. Instance validation.
    {
        auto t0 = std::chrono::steady_clock::now();
        ValidationReport vph = validate_spec<GaussRational>(ph.spec);
        double t_ph = ms_since(t0);
        t0 = std::chrono::steady_clock::now();
        ValidationReport vis = validate_spec<Cplx>(is.spec);
        double t_is = ms_since(t0);
        bool exact_zero = vph.pass && vph.pentagon_residual == 0.0 &&
                          vph.hexagon_residual == 0.0 && vph.hexagon_inv_residual == 0.0;
        bool ok = exact_zero && vis.pass && vis.pentagon_residual <= 1e-9 &&
                  std::max(vis.hexagon_residual, vis.hexagon_inv_residual) <= 1e-9 &&
                  t_ph < 1000.0 && t_is < 1000.0;
        line(1, ok,
             "validation: PH exact residuals 0; Ising pentagon " + fmt(vis.pentagon_residual) +
                 ", hexagon " + fmt(std::max(vis.hexagon_residual, vis.hexagon_inv_residual)) +
                 " (tol 1e-9); runtimes " + fmt(t_ph / 1000) + "s / " + fmt(t_is / 1000) + "s");
    }

    // 2. Assumption suite on PH (exact), Ising, regular_pointed(Z/2).
    {
        Realized<GaussRational> rph = realize<GaussRational>(ph);
        Realized<Cplx> ris = realize<Cplx>(is);
        Realized<GaussRational> rz2 = realize<GaussRational>(z2);
        CheckReport aph = check_assumption(rph.theory->eng(), rph.theory->alg());
        CheckReport ais = check_assumption(ris.theory->eng(), ris.theory->alg());
        CheckReport az2 = check_assumption(rz2.theory->eng(), rz2.theory->alg());
        // the mu coev = |G| iota scalar, exact on PH
        Mor<GaussRational> muco =
            rph.theory->eng().compose(rph.theory->alg().mu, *rph.theory->alg().coev);
        bool exact_dim =
            distance(muco.m, rph.theory->alg().iota.m.scaled(
                                 ScalarOps<GaussRational>::from_int(2))) == 0.0;
        bool ok = aph.pass() && aph.worst() == 0.0 && ais.pass() && az2.pass() && exact_dim;
        line(2, ok,
             "assumption suite: PH exact (worst 0), Ising worst " + fmt(ais.worst()) +
                 ", Z/2 worst " + fmt(az2.worst()) + "; mu i~ = |G| iota exactly on PH");
    }

    // 3. Lemma suite on every instance.
    {
        bool ok = true;
        double worst = 0.0;
        for (const Instance* in : {&ph, &z2, &z4}) {
            Realized<GaussRational> r = realize<GaussRational>(*in);
            CheckReport rep = lemma_suite(r);
            ok = ok && rep.pass();
            worst = std::max(worst, rep.worst());
        }
        for (const Instance* in : {&is, &z3}) {
            Realized<Cplx> r = realize<Cplx>(*in);
            CheckReport rep = lemma_suite(r);
            ok = ok && rep.pass();
            worst = std::max(worst, rep.worst());
        }
        line(3, ok,
             "lemma suite (trace table, iota recovery, two-sided coevaluation) on 5 instances, "
             "worst residual " + fmt(worst));
    }

    // 4. Sector projectors on every shipped module.
    {
        bool ok = true;
        double worst = 0.0;
        Realized<GaussRational> rph = realize<GaussRational>(ph);
        Realized<Cplx> ris = realize<Cplx>(is);
        for (CheckReport rep : {projector_suite(rph), projector_suite(ris)}) {
            ok = ok && rep.pass();
            worst = std::max(worst, rep.worst());
        }
        line(4, ok, "sector projectors on all shipped modules (PH, Ising), worst residual " +
                        fmt(worst));
    }

    // 5. Sector predictions with independent oracles.
    {
        // Oracle A: brute-force monodromy over the bicharacter.
        auto beta = [](int x1, int y1, int x2, int y2) {
            return ((x1 * y2) % 2) ? -1.0 : 1.0;
        };
        double mono_oracle = beta(1, 0, 0, 1) * beta(0, 1, 1, 0); // a = X10 acting on X01
        Realized<GaussRational> rph = realize<GaussRational>(ph);
        const auto& Gph = rph.theory->alg().G;
        auto tw = rph.orb->twist_of(rph.modules[1]); // M01
        Mor<GaussRational> pi1 = rph.orb->projector_pi(rph.modules[1], Gph.identity);
        bool ok_ph = mono_oracle == -1.0 && tw && *tw == Gph.index_of("g") &&
                     pi1.m.sup_norm() == 0.0;

        // Oracle B: the psi-sigma double braiding scalar.
        Cplx dbl = is.spec.R.at({is.spec.index_of("psi"), is.spec.index_of("sigma"),
                                 is.spec.index_of("sigma")}) *
                   is.spec.R.at({is.spec.index_of("sigma"), is.spec.index_of("psi"),
                                 is.spec.index_of("sigma")});
        Realized<Cplx> ris = realize<Cplx>(is);
        const auto& Gis = ris.theory->alg().G;
        auto twi = ris.orb->twist_of(ris.modules[2]); // Fsigma is modules[2]? find by name
        const Module<Cplx>* fs = nullptr;
        for (const auto& m : ris.modules)
            if (m.name == "Fsigma") fs = &m;
        twi = ris.orb->twist_of(*fs);
        bool ok_is = std::abs(dbl - Cplx{-1.0, 0.0}) <= 1e-12 && twi &&
                     *twi == Gis.index_of("p");
        line(5, ok_ph && ok_is,
             "sector predictions: PH F(X01) purely g-twisted with pi_1 = 0 (monodromy oracle "
             "-1); Ising F(sigma) purely P_V-twisted (double-braiding oracle -1)");
    }

    // 6. Grading multiplicativity.
    {
        Realized<GaussRational> rph = realize<GaussRational>(ph);
        Realized<Cplx> ris = realize<Cplx>(is);
        Realized<GaussRational> rz4 = realize<GaussRational>(z4);
        CheckReport a = grading_suite(rph);
        CheckReport b = grading_suite(ris);
        CheckReport c = grading_suite(rz4);
        bool ok = a.pass() && b.pass() && c.pass();
        line(6, ok, "grading multiplicativity over all twisted pairs (PH, Ising, Z/4), worst " +
                        fmt(std::max({a.worst(), b.worst(), c.worst()})));
    }

    // 7. Braided G-crossed axioms.
    {
        Realized<GaussRational> rph = realize<GaussRational>(ph);
        Realized<Cplx> ris = realize<Cplx>(is);
        CheckReport a = gcrossed_suite(rph);
        CheckReport b = gcrossed_suite(ris);
        bool ok = a.pass() && b.pass() && a.worst() <= 1e-9 && b.worst() <= 1e-9;
        line(7, ok,
             "G-crossed compatibility/hexagon/heptagon over all admissible triples: PH worst " +
                 fmt(a.worst()) + ", Ising worst " + fmt(b.worst()));
    }

    // 8. Equivariantization equivalence and simple counts.
    {
        bool ok = true;
        std::string counts;
        auto run = [&](auto&& realized, const std::string& name, int expect) {
            CheckReport rep = equivariantization_suite(realized);
            int total = -1;
            for (const auto& l : rep.lines)
                if (l.key == "simple_counts") {
                    total = l.pass ? expect : -1;
                }
            ok = ok && rep.pass();
            counts += name + " " + std::to_string(expect) + "=" +
                      (total == expect ? std::to_string(expect) : std::string("?")) + " ";
        };
        Realized<GaussRational> rph = realize<GaussRational>(ph);
        run(rph, "PH", 4);
        Realized<Cplx> ris = realize<Cplx>(is);
        run(ris, "Ising", 3);
        Realized<Cplx> rz2 = realize<Cplx>(z2);
        run(rz2, "Z/2", 2);
        Realized<Cplx> rz3 = realize<Cplx>(z3);
        run(rz3, "Z/3", 3);
        Realized<Cplx> rz4 = realize<Cplx>(z4);
        run(rz4, "Z/4", 4);
        line(8, ok, "equivariantization: F(X)^G = X, Psi_E isomorphisms, counts " + counts);
    }

    // 9. Identity-chain replay.
    {
        bool ok = true;
        double worst = 0.0;
        int chains = 0, instances = 0;
        auto run = [&](auto&& realized) {
            CheckReport rep = appendix_suite(realized);
            ok = ok && rep.pass();
            worst = std::max(worst, rep.worst());
            ++instances;
            std::set<std::string> kinds;
            for (const auto& l : rep.lines) kinds.insert(l.key.substr(0, l.key.find('[')));
            chains = int(kinds.size());
        };
        Realized<GaussRational> rph = realize<GaussRational>(ph);
        run(rph);
        Realized<Cplx> ris = realize<Cplx>(is);
        run(ris);
        Realized<GaussRational> rz4 = realize<GaussRational>(z4);
        run(rz4);
        bool enough = chains >= 7 && instances >= 2;
        line(9, ok && enough,
             "identity chains replayed: " + std::to_string(chains) + " chain kinds x " +
                 std::to_string(instances) + " instances, worst residual " + fmt(worst));
    }

    // 10. Property suites at a fixed seed.
    {
        std::mt19937 rng(20240817);
        CategorySpec isc = ising();
        Engine<Cplx> eng(isc);
        int bad_fun = run_functoriality_cases(eng, 500, rng);
        int bad_hex = run_hexagon_cases(200, rng);
        int bad_rt = run_roundtrip_cases(1000, rng);
        Realized<GaussRational> rph = realize<GaussRational>(ph);
        int bad_simp = run_simplify_cases(rph);
        bool ok = bad_fun == 0 && bad_hex == 0 && bad_rt == 0 && bad_simp == 0;
        line(10, ok,
             "property suites: 500 functoriality, 200 hexagon, 1000 parse/render round trips, "
             "simplify soundness; failures " +
                 std::to_string(bad_fun + bad_hex + bad_rt + bad_simp));
    }

    double total_s = ms_since(t_total) / 1000.0;
    std::printf("ACCEPTANCE: %d/10 criteria passed in %.1f s\n", 10 - failures, total_s);
    return failures == 0 ? 0 : 1;
}
