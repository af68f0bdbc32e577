#include "orbcat/formulas.hpp"

namespace orbcat {

StandardContext standard_context(const std::vector<std::string>& group_names) {
    StandardContext sc;
    sc.V = obj_gen("V");
    sc.W = obj_gen("W");
    sc.W1 = obj_gen("W1");
    sc.W2 = obj_gen("W2");
    sc.X = obj_gen("X");
    for (const char* o : {"V", "W", "W1", "W2", "X"}) sc.ctx.declare_object(o);
    ObjPtr I = obj_unit();
    ObjPtr VV = obj_tensor(sc.V, sc.V);
    sc.ctx.declare_gen("mu", VV, sc.V, Parity::Even);
    sc.ctx.declare_gen("iota", I, sc.V, Parity::Even);
    sc.ctx.declare_gen("eps", sc.V, I, Parity::Even);
    sc.ctx.declare_gen("coev", I, VV, Parity::Even);
    sc.ctx.declare_gen("act", obj_tensor(sc.V, sc.W), sc.W, Parity::Even);
    sc.ctx.declare_gen("act1", obj_tensor(sc.V, sc.W1), sc.W1, Parity::Even);
    sc.ctx.declare_gen("act2", obj_tensor(sc.V, sc.W2), sc.W2, Parity::Even);
    for (const auto& g : group_names) {
        sc.ctx.declare_gen(g, sc.V, sc.V, Parity::Even);
        sc.group.push_back(g);
    }
    sc.group_order = int(group_names.size());
    return sc;
}

namespace {

std::string need_group(const FormulaId& id, const std::string& key) {
    auto it = id.params.find(key);
    if (it == id.params.end())
        throw MissingParameter("formula '" + id.name + "' needs group parameter '" + key + "'");
    if (const auto* s = std::get_if<std::string>(&it->second)) return *s;
    throw MissingParameter("parameter '" + key + "' of '" + id.name + "' must be a group element");
}

ObjPtr need_obj(const FormulaId& id, const std::string& key) {
    auto it = id.params.find(key);
    if (it == id.params.end())
        throw MissingParameter("formula '" + id.name + "' needs object parameter '" + key + "'");
    if (const auto* o = std::get_if<ObjPtr>(&it->second)) return *o;
    throw MissingParameter("parameter '" + key + "' of '" + id.name + "' must be an object");
}

MorPtr monodromy_expr(const ObjPtr& a, const ObjPtr& b) {
    return mor_compose(mor_braid(b, a), mor_braid(a, b));
}

// mu^{(1)}: (act1 x 1_{W2}) A_{V,W1,W2}
MorPtr mu1_expr(const StandardContext& sc) {
    return mor_chain({mor_assoc(sc.V, sc.W1, sc.W2),
                      mor_tensor(mor_gen("act1"), mor_identity(sc.W2))});
}

// mu^{(2)}: (1_{W1} x act2) A^{-1}_{W1,V,W2} (R_{V,W1} x 1) A_{V,W1,W2}
MorPtr mu2_expr(const StandardContext& sc) {
    return mor_chain({mor_assoc(sc.V, sc.W1, sc.W2),
                      mor_tensor(mor_braid(sc.V, sc.W1), mor_identity(sc.W2)),
                      mor_assoc(sc.W1, sc.V, sc.W2, true),
                      mor_tensor(mor_identity(sc.W1), mor_gen("act2"))});
}

// Pi_g: mu_W (1 x mu_W)(1 x (g x 1))(1 x M_{V,W}) A^{-1}_{V,V,W} (i~ x 1) l^{-1}
MorPtr big_pi_expr(const StandardContext& sc, const std::string& g) {
    return mor_chain({mor_lunit(sc.W, true),
                      mor_tensor(mor_gen("coev"), mor_identity(sc.W)),
                      mor_assoc(sc.V, sc.V, sc.W, true),
                      mor_tensor(mor_identity(sc.V), monodromy_expr(sc.V, sc.W)),
                      mor_tensor(mor_identity(sc.V),
                                 mor_tensor(mor_gen(g), mor_identity(sc.W))),
                      mor_tensor(mor_identity(sc.V), mor_gen("act")),
                      mor_gen("act")});
}

MorPtr pi_expr(const StandardContext& sc, const std::string& g) {
    return mor_scale(Cplx{1.0 / double(sc.group_order), 0.0}, big_pi_expr(sc, g));
}

// F_L = (1 x mu) A^{-1} (i~ x 1) l^{-1} and F_R = (mu x 1) A (1 x i~) r^{-1}
MorPtr rigidlike_left(const StandardContext& sc) {
    return mor_chain({mor_lunit(sc.V, true),
                      mor_tensor(mor_gen("coev"), mor_identity(sc.V)),
                      mor_assoc(sc.V, sc.V, sc.V, true),
                      mor_tensor(mor_identity(sc.V), mor_gen("mu"))});
}

MorPtr rigidlike_right(const StandardContext& sc) {
    return mor_chain({mor_runit(sc.V, true),
                      mor_tensor(mor_identity(sc.V), mor_gen("coev")),
                      mor_assoc(sc.V, sc.V, sc.V),
                      mor_tensor(mor_gen("mu"), mor_identity(sc.V))});
}

MorPtr eps_mu(const StandardContext&) {
    return mor_compose(mor_gen("eps"), mor_gen("mu"));
}

// e_{VxV}: evaluation of V x V against itself through two eps mu pairings.
MorPtr pairing_vv(const StandardContext& sc) {
    ObjPtr VV = obj_tensor(sc.V, sc.V);
    return mor_chain({mor_assoc(sc.V, sc.V, VV, true),
                      mor_tensor(mor_identity(sc.V), mor_assoc(sc.V, sc.V, sc.V)),
                      mor_tensor(mor_identity(sc.V),
                                 mor_tensor(eps_mu(sc), mor_identity(sc.V))),
                      mor_tensor(mor_identity(sc.V), mor_lunit(sc.V)),
                      eps_mu(sc)});
}

} // namespace

std::vector<std::string> catalog_names() {
    return {"pi_g",
            "monodromy",
            "mu1",
            "mu2",
            "snake_left",
            "snake_right",
            "trace_g",
            "counit_pair",
            "rigidlike_L",
            "rigidlike_R",
            "induction_action",
            "appendix:tr_chain",
            "appendix:pi_morphism",
            "appendix:pi_image_twisted",
            "appendix:pi_on_twisted",
            "appendix:sum_pi",
            "appendix:rigidlike_eval_L",
            "appendix:rigidlike_eval_R"};
}

CatalogFormula formula(const FormulaId& id, const StandardContext& sc) {
    const std::string& n = id.name;
    ObjPtr I = obj_unit();

    if (n == "pi_g")
        return {pi_expr(sc, need_group(id, "g")), std::nullopt,
                "pi_g = |G|^-1 mu_W (1 x mu_W)(1 x (g x 1))(1 x M_{V,W}) A^-1 (i~ x 1) l^-1"};
    if (n == "monodromy") {
        ObjPtr a = need_obj(id, "A"), b = need_obj(id, "B");
        return {monodromy_expr(a, b), std::nullopt, "M_{V,W} = R_{W,V} R_{V,W}"};
    }
    if (n == "mu1") return {mu1_expr(sc), std::nullopt, "left V-action on W1 x W2"};
    if (n == "mu2") return {mu2_expr(sc), std::nullopt, "right V-action on W1 x W2"};
    if (n == "snake_left")
        return {mor_chain({mor_lunit(sc.V, true),
                           mor_tensor(mor_gen("coev"), mor_identity(sc.V)),
                           mor_assoc(sc.V, sc.V, sc.V, true),
                           mor_tensor(mor_identity(sc.V), eps_mu(sc)), mor_runit(sc.V)}),
                mor_identity(sc.V), "left snake for (V, eps mu, i~)"};
    if (n == "snake_right")
        return {mor_chain({mor_runit(sc.V, true),
                           mor_tensor(mor_identity(sc.V), mor_gen("coev")),
                           mor_assoc(sc.V, sc.V, sc.V),
                           mor_tensor(eps_mu(sc), mor_identity(sc.V)), mor_lunit(sc.V)}),
                mor_identity(sc.V), "right snake for (V, eps mu, i~)"};
    if (n == "trace_g")
        return {mor_chain({mor_gen("coev"),
                           mor_tensor(mor_identity(sc.V), mor_gen(need_group(id, "g"))),
                           mor_gen("mu")}),
                std::nullopt, "mu (1 x g) i~ = |G| delta_{g,1} iota"};
    if (n == "counit_pair")
        return {mor_chain({mor_gen("coev"),
                           mor_tensor(mor_identity(sc.V), mor_gen("eps")), mor_runit(sc.V)}),
                mor_gen("iota"), "r (1 x eps) i~ = iota"};
    if (n == "rigidlike_L")
        return {rigidlike_left(sc), std::nullopt, "two-sided coevaluation, left route"};
    if (n == "rigidlike_R")
        return {rigidlike_right(sc), std::nullopt, "two-sided coevaluation, right route"};
    if (n == "induction_action") {
        ObjPtr x = need_obj(id, "X");
        return {mor_chain({mor_assoc(sc.V, sc.V, x),
                           mor_tensor(mor_gen("mu"), mor_identity(x))}),
                std::nullopt, "mu_F(X) = (mu x 1_X) A_{V,V,X}"};
    }

    if (n == "appendix:tr_chain") {
        std::string g = need_group(id, "g");
        std::string ginv = need_group(id, "ginv");
        MorPtr lhs = mor_chain({mor_lunit(sc.V, true),
                                mor_tensor(mor_gen("coev"), mor_identity(sc.V)),
                                mor_tensor(mor_tensor(mor_identity(sc.V), mor_gen(g)),
                                           mor_identity(sc.V)),
                                mor_tensor(mor_gen("mu"), mor_identity(sc.V)), mor_gen("mu")});
        MorPtr rhs = mor_chain({mor_gen(ginv), mor_runit(sc.V, true),
                                mor_tensor(mor_identity(sc.V), mor_gen("coev")),
                                mor_tensor(mor_identity(sc.V),
                                           mor_tensor(mor_identity(sc.V), mor_gen(g))),
                                mor_tensor(mor_identity(sc.V), mor_gen("mu")), mor_gen("mu")});
        return {lhs, rhs, "trace chain: Tr(g) 1_V = (Tr(g) g^-1) g-rotated"};
    }
    if (n == "appendix:pi_morphism") {
        MorPtr big = big_pi_expr(sc, need_group(id, "g"));
        MorPtr lhs = mor_compose(mor_gen("act"), mor_tensor(mor_identity(sc.V), big));
        MorPtr rhs = mor_compose(big, mor_gen("act"));
        return {lhs, rhs, "Pi_g is a morphism in rep V: mu_W (1 x Pi_g) = Pi_g mu_W"};
    }
    if (n == "appendix:pi_image_twisted") {
        std::string g = need_group(id, "g");
        MorPtr big = big_pi_expr(sc, g);
        MorPtr lhs = mor_chain({monodromy_expr(sc.V, sc.W),
                                mor_tensor(mor_gen(g), big), mor_gen("act")});
        MorPtr rhs = mor_compose(mor_gen("act"), mor_tensor(mor_identity(sc.V), big));
        return {lhs, rhs, "image of Pi_g is g-twisted: mu_W (g x Pi_g) M = mu_W (1 x Pi_g)"};
    }
    if (n == "appendix:pi_on_twisted") {
        std::string g = need_group(id, "g");
        std::string h = need_group(id, "h");
        MorPtr lhs = big_pi_expr(sc, g);
        double delta = (g == h) ? double(sc.group_order) : 0.0;
        MorPtr rhs = mor_scale(Cplx{delta, 0.0}, mor_identity(sc.W));
        return {lhs, rhs, "Pi_g = |G| delta_{g,h} 1_W on h-twisted W"};
    }
    if (n == "appendix:sum_pi") {
        std::vector<MorPtr> terms;
        for (const auto& g : sc.group) terms.push_back(pi_expr(sc, g));
        return {mor_sum(std::move(terms)), mor_identity(sc.W), "sum_g pi_g = 1_W"};
    }
    if (n == "appendix:rigidlike_eval_L" || n == "appendix:rigidlike_eval_R") {
        ObjPtr VV = obj_tensor(sc.V, sc.V);
        MorPtr route = (n.back() == 'L') ? rigidlike_left(sc) : rigidlike_right(sc);
        MorPtr lhs = mor_compose(pairing_vv(sc), mor_tensor(mor_identity(VV), route));
        MorPtr rhs = mor_chain({mor_tensor(mor_gen("mu"), mor_identity(sc.V)), mor_gen("mu"),
                                mor_gen("eps")});
        return {lhs, rhs, "e_{VxV}(1 x F) = eps mu (mu x 1)"};
    }
    (void)I;
    throw UnknownFormula("unknown formula: " + n);
}

} // namespace orbcat
