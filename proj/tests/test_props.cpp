#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "orbcat/io.hpp"

#include <filesystem>
#include <functional>
#include <random>

using namespace orbcat;

namespace {

// Two different rebracketing routes from a word to its left comb; coherence
// says their evaluations agree.
template <class K>
Mor<K> comb_route_a(Engine<K>& eng, const WordPtr& w) {
    if (w->leaf) return eng.identity(w);
    if (w->r->leaf) return eng.tensor_mor(comb_route_a(eng, w->l), eng.identity(w->r));
    Mor<K> step = eng.assoc(w->l, w->r->l, w->r->r, false);
    return eng.compose(comb_route_a(eng, step.cod), step);
}

template <class K>
Mor<K> comb_route_b(Engine<K>& eng, const WordPtr& w) {
    if (w->leaf) return eng.identity(w);
    // Comb both factors first, then absorb the right comb node by node.
    Mor<K> both = eng.tensor_mor(comb_route_b(eng, w->l), comb_route_b(eng, w->r));
    std::function<Mor<K>(const WordPtr&)> peel = [&](const WordPtr& v) -> Mor<K> {
        if (v->leaf) return eng.identity(v);
        if (v->r->leaf) return eng.tensor_mor(peel(v->l), eng.identity(v->r));
        Mor<K> rot = eng.assoc(v->l, v->r->l, v->r->r, false);
        return eng.compose(peel(rot.cod), rot);
    };
    return eng.compose(peel(both.cod), both);
}

template <class K>
void check_coherence_routes(Engine<K>& eng, const std::vector<ConcreteObject>& pool,
                            std::mt19937& rng, int iters, double tol) {
    std::vector<std::function<WordPtr()>> shapes = {
        [&] {
            return word_tensor(word_leaf(pool[rng() % pool.size()]),
                               word_leaf(pool[rng() % pool.size()]));
        },
        [&] {
            return word_tensor(word_leaf(pool[rng() % pool.size()]),
                               word_tensor(word_leaf(pool[rng() % pool.size()]),
                                           word_leaf(pool[rng() % pool.size()])));
        },
        [&] {
            return word_tensor(
                word_tensor(word_leaf(pool[rng() % pool.size()]),
                            word_leaf(pool[rng() % pool.size()])),
                word_tensor(word_leaf(pool[rng() % pool.size()]),
                            word_leaf(pool[rng() % pool.size()])));
        },
        [&] {
            return word_tensor(word_leaf(pool[rng() % pool.size()]),
                               word_tensor(word_leaf(pool[rng() % pool.size()]),
                                           word_tensor(word_leaf(pool[rng() % pool.size()]),
                                                       word_leaf(pool[rng() % pool.size()]))));
        }};
    for (int i = 0; i < iters; ++i) {
        WordPtr w = shapes[rng() % shapes.size()]();
        Mor<K> a = comb_route_a(eng, w);
        Mor<K> b = comb_route_b(eng, w);
        REQUIRE(word_equal(a.cod, b.cod));
        CHECK(distance(a.m, b.m) <= tol);
    }
}

} // namespace

TEST_CASE("coherence: independent rebracketing routes agree (Ising, PH)") {
    std::mt19937 rng(23);
    {
        CategorySpec is = ising();
        Engine<Cplx> eng(is);
        std::vector<ConcreteObject> pool = {
            ConcreteObject{{{0, 0}}}, ConcreteObject{{{1, 0}}}, ConcreteObject{{{2, 0}}},
            ConcreteObject{{{0, 0}, {1, 0}}}, ConcreteObject{{{2, 0}, {2, 1}}}};
        check_coherence_routes(eng, pool, rng, 40, 1e-9);
    }
    {
        CategorySpec ph = pointed_hyperbolic_z2z2();
        Engine<GaussRational> eng(ph);
        std::vector<ConcreteObject> pool = {
            ConcreteObject{{{0, 0}}}, ConcreteObject{{{1, 0}}},
            ConcreteObject{{{2, 0}, {3, 0}}}, ConcreteObject{{{0, 0}, {1, 0}}}};
        check_coherence_routes(eng, pool, rng, 40, 0.0);
    }
}

TEST_CASE("simplify is evaluation-invariant on the catalog over PH") {
    Instance in = builtin_instance("ph");
    Realized<GaussRational> r = realize<GaussRational>(in);
    Theory<GaussRational>& th = *r.theory;
    const Module<GaussRational>& M = r.modules[1]; // M01
    Env<GaussRational> env = th.env_mod(M);
    env.objects["W1"] = M.W;
    env.objects["W2"] = M.W;
    env.gens["act1"] = M.action;
    env.gens["act2"] = M.action;
    env.objects["X"] = M.W;

    const auto& G = th.alg().G;
    for (const std::string& name : catalog_names()) {
        FormulaId id{name, {}};
        id.params["g"] = G.names[1];
        id.params["ginv"] = G.names[G.inv(1)];
        id.params["h"] = G.names[1];
        id.params["A"] = obj_gen("V");
        id.params["B"] = obj_gen("W");
        id.params["X"] = obj_gen("X");
        CatalogFormula f = formula(id, th.sc());
        for (const MorPtr& e : f.rhs ? std::vector<MorPtr>{f.lhs, *f.rhs}
                                     : std::vector<MorPtr>{f.lhs}) {
            MorPtr s = simplify(e, &th.sc().ctx);
            Mor<GaussRational> me = th.eng().eval(e, env);
            Mor<GaussRational> ms = th.eng().eval(s, env);
            CHECK(word_equal(me.dom, ms.dom));
            CHECK(distance(me.m, ms.m) <= 1e-9);
        }
    }
}

TEST_CASE("simplify pi_g: simplified expression evaluates identically") {
    Instance in = builtin_instance("ph");
    Realized<GaussRational> r = realize<GaussRational>(in);
    Theory<GaussRational>& th = *r.theory;
    const Module<GaussRational>& M = r.modules[1];
    Env<GaussRational> env = th.env_mod(M);

    FormulaId id{"pi_g", {}};
    id.params["g"] = th.alg().G.names[1];
    MorPtr pi = formula(id, th.sc()).lhs;
    // pad with removable structure, then simplify
    MorPtr padded = mor_compose(pi, mor_compose(mor_lunit(obj_gen("W"), true),
                                                mor_lunit(obj_gen("W"), false)));
    MorPtr s = simplify(padded, &th.sc().ctx);
    CHECK(distance(th.eng().eval(s, env).m, th.eng().eval(pi, env).m) <= 1e-9);
}

TEST_CASE("parity_of is stable under simplify for pure-parity expressions") {
    Context ctx;
    ctx.declare_object("V");
    ObjPtr V = obj_gen("V");
    ctx.declare_gen("odd", V, V, Parity::Odd);
    ctx.declare_gen("ev", V, V, Parity::Even);
    std::mt19937 rng(3);
    for (int i = 0; i < 200; ++i) {
        MorPtr e = rng() % 2 ? mor_gen("odd") : mor_gen("ev");
        for (int d = 0; d < 6; ++d) {
            switch (rng() % 4) {
                case 0: e = mor_compose(mor_identity(V), e); break;
                case 1: e = mor_compose(e, mor_compose(mor_lunit(V, true), mor_lunit(V))); break;
                case 2: e = mor_scale(Cplx{2.0, 1.0}, e); break;
                case 3: e = mor_sum({e, e}); break;
            }
        }
        Parity before = parity_of(e, ctx);
        Parity after = parity_of(simplify(e, &ctx), ctx);
        CHECK(before == after);
    }
}

TEST_CASE("factor properties: cokernel kills, kernel is killed, image factors") {
    CategorySpec is = ising();
    Engine<Cplx> eng(is);
    std::mt19937 rng(9);
    ConcreteObject pool[] = {ConcreteObject{{{0, 0}, {1, 0}}},
                             ConcreteObject{{{2, 0}, {2, 1}, {0, 0}}},
                             ConcreteObject{{{1, 0}, {1, 0}}}};
    for (int iter = 0; iter < 60; ++iter) {
        const ConcreteObject& X = pool[rng() % 3];
        const ConcreteObject& Y = pool[rng() % 3];
        WordPtr wx = word_leaf(X), wy = word_leaf(Y);
        auto bx = eng.basis(wx);
        auto by = eng.basis(wy);
        // random even morphism X -> Y
        Mor<Cplx> f{wx, wy, Matrix<Cplx>(by->size(), bx->size())};
        for (int i = 0; i < by->size(); ++i)
            for (int j = 0; j < bx->size(); ++j)
                if (by->trees[i].root == bx->trees[j].root &&
                    by->trees[i].parity == bx->trees[j].parity)
                    f.m.at(i, j) = Cplx{double(int(rng() % 3)) - 1.0, 0.0};

        auto cok = eng.factor(f, FactorMode::Cokernel);
        CHECK((cok.map.m * f.m).sup_norm() <= 1e-9);
        CHECK(rank_of(cok.map.m, 1e-9) == cok.map.m.rows); // surjective

        auto ker = eng.factor(f, FactorMode::Kernel);
        CHECK((f.m * ker.map.m).sup_norm() <= 1e-9);
        CHECK(rank_of(ker.map.m, 1e-9) == ker.map.m.cols); // injective

        auto im = eng.factor(f, FactorMode::Image);
        CHECK(rank_of(im.map.m, 1e-9) == im.map.m.cols);
        auto sol = solve_right(im.map.m, f.m, 1e-9);
        CHECK(sol.residual <= 1e-9); // f factors through its image
        CHECK(int(ker.map.m.cols + im.map.m.cols) == bx->size());
    }
}

TEST_CASE("tensor product surjections are onto and actions unique") {
    Instance in = builtin_instance("ising");
    Realized<Cplx> r = realize<Cplx>(in);
    Theory<Cplx>& th = *r.theory;
    for (const auto& a : r.modules)
        for (const auto& b : r.modules) {
            const auto& p = th.tensor(a, b);
            CHECK(rank_of(p.I.m, 1e-9) == p.I.m.rows);
            CHECK(th.eng().parity_of_mor(p.I) == Parity::Even);
            CHECK(th.check_module(p.module).pass());
        }
}

TEST_CASE("exact instance files round trip bit-exactly") {
    for (const char* name : {"ph", "z2", "z4"}) {
        Instance in = builtin_instance(name);
        std::string text = instance_to_json_text(in);
        Instance back = instance_from_json_text(text);
        CHECK(instance_to_json_text(back) == text);
        // and the exact realization agrees
        Realized<GaussRational> r1 = realize<GaussRational>(in);
        Realized<GaussRational> r2 = realize<GaussRational>(back);
        CHECK(distance(r1.theory->alg().mu.m, r2.theory->alg().mu.m) == 0.0);
    }
}

TEST_CASE("serialized instances on disk match the builtins") {
    // instances/ must not drift from the constructors.
    namespace fs = std::filesystem;
    fs::path dir = fs::path(__FILE__).parent_path().parent_path() / "instances";
    for (const std::string& name : builtin_names()) {
        fs::path f = dir / (name + ".json");
        REQUIRE(fs::exists(f));
        Instance disk = load_instance(f.string());
        CHECK(instance_to_json_text(disk) == instance_to_json_text(builtin_instance(name)));
    }
}

TEST_CASE("rank ambiguity is reported near the tolerance") {
    CategorySpec is = ising();
    Engine<Cplx> eng(is);
    ConcreteObject X{{{0, 0}, {0, 0}}};
    WordPtr wx = word_leaf(X);
    Mor<Cplx> f{wx, wx, Matrix<Cplx>(2, 2)};
    f.m.at(0, 0) = {1.0, 0.0};
    f.m.at(1, 1) = {3e-9, 0.0}; // inside the gray zone around 1e-9
    CHECK_THROWS_AS(eng.factor(f, FactorMode::Image), RankAmbiguous);
}
