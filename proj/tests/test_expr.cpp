#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "orbcat/expr.hpp"
#include "orbcat/formulas.hpp"

#include <random>

using namespace orbcat;

namespace {

Context simple_context() {
    Context ctx;
    ctx.declare_object("V");
    ctx.declare_object("W");
    ObjPtr V = obj_gen("V"), W = obj_gen("W");
    ctx.declare_gen("mu", obj_tensor(V, V), V, Parity::Even);
    ctx.declare_gen("iota", obj_unit(), V, Parity::Even);
    ctx.declare_gen("odd1", V, V, Parity::Odd);
    ctx.declare_gen("odd2", W, W, Parity::Odd);
    ctx.declare_gen("ev", V, V, Parity::Even);
    return ctx;
}

} // namespace

TEST_CASE("typecheck identity on the unit") {
    Context ctx = simple_context();
    MorType t = typecheck(mor_identity(obj_unit()), ctx);
    CHECK(obj_equal(t.dom, obj_unit()));
    CHECK(obj_equal(t.cod, obj_unit()));
}

TEST_CASE("typecheck supercommutativity left side") {
    Context ctx = simple_context();
    ObjPtr V = obj_gen("V");
    MorPtr e = mor_compose(mor_gen("mu"), mor_braid(V, V));
    MorType t = typecheck(e, ctx);
    CHECK(obj_equal(t.dom, obj_tensor(V, V)));
    CHECK(obj_equal(t.cod, V));
}

TEST_CASE("typecheck reports mismatched interfaces") {
    Context ctx = simple_context();
    MorPtr e = mor_compose(mor_gen("mu"), mor_gen("iota"));
    CHECK_THROWS_AS(typecheck(e, ctx), CompositionMismatch);
    CHECK_THROWS_AS(typecheck(mor_gen("nope"), ctx), UndeclaredGenerator);
}

TEST_CASE("parity bookkeeping") {
    Context ctx = simple_context();
    ObjPtr V = obj_gen("V"), W = obj_gen("W");
    CHECK(parity_of(mor_braid(V, W), ctx) == Parity::Even);
    CHECK(parity_of(mor_tensor(mor_gen("odd1"), mor_gen("odd2")), ctx) == Parity::Even);
    CHECK(parity_of(mor_sum({mor_gen("ev"), mor_gen("odd1")}), ctx) == Parity::Mixed);
    CHECK(parity_of(mor_compose(mor_gen("odd1"), mor_gen("ev")), ctx) == Parity::Odd);
}

TEST_CASE("simplify cancels inverse pairs and absorbs identities") {
    Context ctx = simple_context();
    ObjPtr V = obj_gen("V"), W = obj_gen("W");
    MorPtr e = mor_compose(mor_assoc(V, W, V), mor_assoc(V, W, V, true));
    MorPtr s = simplify(e);
    CHECK(s->kind == MorExpr::Kind::Identity);
    MorType t = typecheck(s, ctx);
    CHECK(obj_equal(t.dom, obj_tensor(obj_tensor(V, W), V)));

    MorPtr e2 = mor_compose(mor_gen("ev"), mor_identity(V));
    CHECK(mor_equal(simplify(e2), mor_gen("ev")));

    // Unitor naturality fires only when the context can type the factor.
    MorPtr e3 = mor_compose(mor_lunit(V), mor_tensor(mor_identity(obj_unit()), mor_gen("ev")));
    MorPtr s3 = simplify(e3, &ctx);
    CHECK(s3->kind == MorExpr::Kind::Compose);
    CHECK(mor_equal(s3->f, mor_gen("ev")));
    CHECK(s3->g->kind == MorExpr::Kind::LUnit);
    MorType t3a = typecheck(e3, ctx), t3b = typecheck(s3, ctx);
    CHECK(obj_equal(t3a.dom, t3b.dom));
    CHECK(obj_equal(t3a.cod, t3b.cod));
}

TEST_CASE("simplify preserves types on random well-typed expressions") {
    Context ctx = simple_context();
    std::mt19937 rng(41);
    ObjPtr V = obj_gen("V"), W = obj_gen("W");
    std::vector<ObjPtr> objs = {V, W, obj_unit(), obj_tensor(V, W), obj_tensor(W, V)};
    auto rand_obj = [&]() { return objs[rng() % objs.size()]; };

    for (int iter = 0; iter < 300; ++iter) {
        // Grow a random endo-chain seeded on a random object.
        ObjPtr base = rand_obj();
        MorPtr e = mor_identity(base);
        MorType cur{base, base};
        for (int depth = 0; depth < 8; ++depth) {
            switch (rng() % 6) {
                case 0: {
                    ObjPtr o = rand_obj();
                    e = mor_tensor(e, mor_identity(o));
                    cur = {obj_tensor(cur.dom, o), obj_tensor(cur.cod, o)};
                    break;
                }
                case 1: {
                    // Prefix with a braid into dom when dom is a tensor.
                    if (cur.dom->kind == ObjExpr::Kind::Tensor) {
                        MorPtr b = mor_braid(cur.dom->right, cur.dom->left);
                        e = mor_compose(e, b);
                        cur.dom = obj_tensor(cur.dom->right, cur.dom->left);
                    }
                    break;
                }
                case 2: {
                    e = mor_compose(mor_lunit(cur.cod, true), e);
                    cur.cod = obj_tensor(obj_unit(), cur.cod);
                    break;
                }
                case 3: {
                    e = mor_compose(mor_runit(cur.cod, true), e);
                    cur.cod = obj_tensor(cur.cod, obj_unit());
                    break;
                }
                case 4: {
                    e = mor_scale(Cplx{0.5, -1.25}, e);
                    break;
                }
                case 5: {
                    e = mor_sum({e, mor_scale(Cplx{2.0, 0.0}, e)});
                    break;
                }
            }
        }
        MorType before = typecheck(e, ctx);
        MorPtr s = simplify(e, &ctx);
        MorType after = typecheck(s, ctx);
        CHECK(obj_equal(before.dom, after.dom));
        CHECK(obj_equal(before.cod, after.cod));
    }
}

TEST_CASE("render/parse round trip on hand-written forms") {
    CHECK(render(mor_identity(obj_unit())) == "id(I)");
    MorPtr p = parse("id(I)");
    CHECK(p->kind == MorExpr::Kind::Identity);

    MorPtr e = parse("comp(gen mu, braid(V, V))");
    CHECK(e->kind == MorExpr::Kind::Compose);
    CHECK(e->f->name == "mu");

    CHECK_THROWS_AS(parse("comp(mu, )"), SyntaxError);
    CHECK_THROWS_AS(parse("ten(id(V)"), SyntaxError);
}

TEST_CASE("render/parse round trip on random expressions") {
    std::mt19937 rng(7);
    ObjPtr V = obj_gen("V"), W = obj_gen("Wlong");
    std::vector<ObjPtr> objs = {V, W, obj_unit(), obj_tensor(V, obj_tensor(W, V))};

    std::function<MorPtr(int)> gen = [&](int depth) -> MorPtr {
        if (depth <= 0) {
            switch (rng() % 4) {
                case 0: return mor_identity(objs[rng() % objs.size()]);
                case 1: return mor_gen(rng() % 2 ? "mu" : "act");
                case 2: return mor_braid(objs[rng() % objs.size()], objs[rng() % objs.size()],
                                         rng() % 2);
                default:
                    return mor_assoc(objs[rng() % objs.size()], objs[rng() % objs.size()],
                                     objs[rng() % objs.size()], rng() % 2);
            }
        }
        switch (rng() % 6) {
            case 0: return mor_compose(gen(depth - 1), gen(depth - 1));
            case 1: return mor_tensor(gen(depth - 1), gen(depth - 1));
            case 2: return mor_scale(Cplx{double(int(rng() % 7)) - 3.0, 0.125}, gen(depth - 1));
            case 3: return mor_sum({gen(depth - 1), gen(depth - 1), gen(depth - 1)});
            case 4: return mor_lunit(objs[rng() % objs.size()], rng() % 2);
            default: return mor_runit(objs[rng() % objs.size()], rng() % 2);
        }
    };

    for (int i = 0; i < 1000; ++i) {
        MorPtr e = gen(3);
        MorPtr back = parse(render(e));
        CHECK(mor_equal(e, back));
    }
}

TEST_CASE("catalog entries typecheck in the standard context") {
    StandardContext sc = standard_context({"e", "g"});
    for (const std::string& name : catalog_names()) {
        FormulaId id{name, {}};
        id.params["g"] = std::string("g");
        id.params["ginv"] = std::string("g");
        id.params["h"] = std::string("g");
        id.params["A"] = sc.V;
        id.params["B"] = sc.W;
        id.params["X"] = sc.X;
        CatalogFormula f = formula(id, sc);
        MorType t = typecheck(f.lhs, sc.ctx);
        CHECK(!f.anchor.empty());
        if (f.rhs) {
            MorType t2 = typecheck(*f.rhs, sc.ctx);
            CHECK(obj_equal(t.dom, t2.dom));
            CHECK(obj_equal(t.cod, t2.cod));
        }
    }
    CHECK_THROWS_AS(formula(FormulaId{"no_such", {}}, sc), UnknownFormula);
    CHECK_THROWS_AS(formula(FormulaId{"pi_g", {}}, sc), MissingParameter);
}

TEST_CASE("catalog round trips through the grammar") {
    StandardContext sc = standard_context({"e", "g"});
    for (const std::string& name : catalog_names()) {
        FormulaId id{name, {}};
        id.params["g"] = std::string("g");
        id.params["ginv"] = std::string("g");
        id.params["h"] = std::string("e");
        id.params["A"] = sc.V;
        id.params["B"] = sc.W;
        id.params["X"] = sc.X;
        CatalogFormula f = formula(id, sc);
        CHECK(mor_equal(parse(render(f.lhs)), f.lhs));
        if (f.rhs) CHECK(mor_equal(parse(render(*f.rhs)), *f.rhs));
    }
}
