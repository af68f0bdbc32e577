#ifndef ORBCAT_REPV_HPP
#define ORBCAT_REPV_HPP

#include "orbcat/algebra.hpp"

namespace orbcat {

template <class K>
struct Module {
    std::string name;
    ConcreteObject W;
    Mor<K> action; // V x W -> W
};

// One session over a verified algebra: the rep V structure with memoized
// tensor products. Holds the Engine; everything downstream evaluates through
// the expression catalog where a formula exists for it.
template <class K>
class Theory {
public:
    Theory(const CategorySpec& spec, SuperAlgebra<K> alg)
        : eng_(spec), alg_(std::move(alg)), sc_(algebra_context(alg_)) {}

    Engine<K>& eng() { return eng_; }
    const SuperAlgebra<K>& alg() const { return alg_; }
    const StandardContext& sc() const { return sc_; }
    double tol() const { return eng_.tol(); }

    Module<K> unit_module() const {
        return Module<K>{"V", alg_.V, alg_.mu};
    }

    Env<K> env_base() { return algebra_env(eng_, alg_); }
    Env<K> env_mod(const Module<K>& m) {
        Env<K> env = env_base();
        env.objects["W"] = m.W;
        env.gens["act"] = m.action;
        return env;
    }
    Env<K> env_pair(const Module<K>& a, const Module<K>& b) {
        Env<K> env = env_base();
        env.objects["W1"] = a.W;
        env.objects["W2"] = b.W;
        env.gens["act1"] = a.action;
        env.gens["act2"] = b.action;
        return env;
    }

    CheckReport check_module(const Module<K>& m);

    // Basis of hom_{rep V}(a, b), split by parity.
    std::vector<HomElem<K>> hom_modules(const Module<K>& a, const Module<K>& b);
    int hom_dim(const Module<K>& a, const Module<K>& b, Parity p);

    struct Product {
        Module<K> module;   // W1 x_V W2, action induced through I
        Mor<K> I;           // W1 x W2 word -> product leaf (even surjection)
        Mor<K> mu1, mu2;    // the two V-actions on W1 x W2
    };
    const Product& tensor(const Module<K>& a, const Module<K>& b);

    // f1 x_V f2 through the cokernel surjections.
    Mor<K> tensor_mor_repv(const Mor<K>& f1, const Mor<K>& f2, const Product& from,
                           const Product& to);

    // Unit and associativity structure of rep V.
    Mor<K> lunit_repv(const Module<K>& w);                       // V x_V W -> W
    Mor<K> runit_repv(const Module<K>& w);                       // W x_V V -> W
    Mor<K> assoc_repv(const Module<K>& a, const Module<K>& b, const Module<K>& c);

    // Induction F(X) = (V x X, (mu x 1) A), flattened to a leaf module.
    Module<K> induce(const ConcreteObject& x);
    Mor<K> induce_mor(const Mor<K>& f); // F(f) = 1_V x f between flattened words
    // Psi(f) = mu_W (1 x f): F(X) -> W for f: X -> W.
    Mor<K> adjoint_psi(const Mor<K>& f, const Module<K>& w);
    // The monoidal structure map F(X1 x X2) -> F(X1) x_V F(X2).
    Mor<K> induction_monoidal(const ConcreteObject& x1, const ConcreteObject& x2);

    bool is_intertwiner(const Mor<K>& I, const Module<K>& a, const Module<K>& b,
                        const Module<K>& c);

    // Checks f: a -> b is a morphism in rep V (f mu_a = mu_b (1 x f)).
    double intertwiner_residual(const Mor<K>& f, const Module<K>& a, const Module<K>& b);

    std::string signature(const Module<K>& m) const;

private:
    Engine<K> eng_;
    SuperAlgebra<K> alg_;
    StandardContext sc_;
    std::mutex memo_mu_;
    std::map<std::pair<std::string, std::string>, std::shared_ptr<Product>> memo_;
};

// ---------------------------------------------------------------------------

template <class K>
std::string Theory<K>::signature(const Module<K>& m) const {
    std::string s = "{";
    for (const auto& x : m.W.sum) s += std::to_string(x.label) + (x.flip ? "'" : "") + ",";
    s += "|";
    for (const auto& v : m.action.m.a) {
        Cplx z = ScalarOps<K>::to_complex(v);
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g:%.17g;", z.real(), z.imag());
        s += buf;
    }
    return s + "}";
}

template <class K>
CheckReport Theory<K>::check_module(const Module<K>& m) {
    WordPtr wW = word_leaf(m.W);
    WordPtr wVW = word_tensor(word_leaf(alg_.V), wW);
    if (!word_equal(m.action.dom, wVW) || !word_equal(m.action.cod, wW))
        throw ShapeMismatch("module action must map V x W to W");
    Env<K> env = env_mod(m);
    ObjPtr V = obj_gen("V"), W = obj_gen("W");
    CheckReport rep;
    rep.title = "module axioms: " + m.name;
    MorPtr unit = mor_chain({mor_lunit(W, true), mor_tensor(mor_gen("iota"), mor_identity(W)),
                             mor_gen("act")});
    rep.add("unit", "mu_W (iota x 1) l^-1 = 1_W",
            detail::residual_vs(eng_, env, unit, eng_.identity(wW)), tol());
    MorPtr al = mor_chain({mor_tensor(mor_identity(V), mor_gen("act")), mor_gen("act")});
    MorPtr ar = mor_chain({mor_assoc(V, V, W), mor_tensor(mor_gen("mu"), mor_identity(W)),
                           mor_gen("act")});
    rep.add("associativity", "mu_W (1 x mu_W) = mu_W (mu x 1) A",
            detail::residual_between(eng_, env, al, ar), tol());
    rep.add_flag("even_action", "mu_W is even", eng_.parity_of_mor(m.action) != Parity::Odd &&
                                                    eng_.parity_of_mor(m.action) != Parity::Mixed);
    return rep;
}

template <class K>
double Theory<K>::intertwiner_residual(const Mor<K>& f, const Module<K>& a, const Module<K>& b) {
    // f mu_a = mu_b (1_V x f); the tensor carries the super sign when f is odd.
    Mor<K> lhs = eng_.compose(f, a.action);
    Mor<K> rhs = eng_.compose(b.action, eng_.tensor_mor(eng_.identity(word_leaf(alg_.V)), f));
    return distance(lhs.m, rhs.m);
}

template <class K>
std::vector<HomElem<K>> Theory<K>::hom_modules(const Module<K>& a, const Module<K>& b) {
    std::vector<HomElem<K>> out;
    for (int p = 0; p <= 1; ++p) {
        std::vector<HomElem<K>> cand;
        for (auto& e : eng_.hom_basis(a.W, b.W))
            if (e.parity == (p ? Parity::Odd : Parity::Even)) cand.push_back(e);
        if (cand.empty()) continue;
        // Solve the intertwining constraint over this parity block.
        std::vector<Matrix<K>> cols;
        int vec_len = -1;
        for (auto& e : cand) {
            Mor<K> lhs = eng_.compose(e.mor, a.action);
            Mor<K> rhs = eng_.compose(
                b.action, eng_.tensor_mor(eng_.identity(word_leaf(alg_.V)), e.mor));
            Matrix<K> diff = lhs.m - rhs.m;
            if (vec_len < 0) vec_len = diff.rows * diff.cols;
            Matrix<K> col(vec_len, 1);
            for (int i = 0; i < vec_len; ++i) col.at(i, 0) = diff.a[size_t(i)];
            cols.push_back(col);
        }
        Matrix<K> system(vec_len, int(cand.size()));
        for (size_t k = 0; k < cols.size(); ++k)
            for (int i = 0; i < vec_len; ++i) system.at(i, int(k)) = cols[k].at(i, 0);
        Matrix<K> null = null_space(system, tol());
        for (int k = 0; k < null.cols; ++k) {
            Mor<K> combo{cand[0].mor.dom, cand[0].mor.cod,
                         Matrix<K>(cand[0].mor.m.rows, cand[0].mor.m.cols)};
            for (size_t j = 0; j < cand.size(); ++j)
                combo.m = combo.m + cand[j].mor.m.scaled(null.at(int(j), k));
            out.push_back({combo, p ? Parity::Odd : Parity::Even});
        }
    }
    return out;
}

template <class K>
int Theory<K>::hom_dim(const Module<K>& a, const Module<K>& b, Parity p) {
    int n = 0;
    for (auto& e : hom_modules(a, b))
        if (e.parity == p) ++n;
    return n;
}

template <class K>
const typename Theory<K>::Product& Theory<K>::tensor(const Module<K>& a, const Module<K>& b) {
    const auto key = std::make_pair(signature(a), signature(b));
    {
        std::lock_guard<std::mutex> lock(memo_mu_);
        auto it = memo_.find(key);
        if (it != memo_.end()) return *it->second;
    }
    Env<K> env = env_pair(a, b);
    Mor<K> mu1 = eng_.eval(formula(FormulaId{"mu1", {}}, sc_).lhs, env);
    Mor<K> mu2 = eng_.eval(formula(FormulaId{"mu2", {}}, sc_).lhs, env);
    Mor<K> diff{mu1.dom, mu1.cod, mu1.m - mu2.m};
    FactorResult<K> cok = eng_.factor(diff, FactorMode::Cokernel);

    // Induced action through the surjection: x (1_V x I) = I mu1.
    Mor<K> lift = eng_.tensor_mor(eng_.identity(word_leaf(alg_.V)), cok.map);
    Mor<K> rhs = eng_.compose(cok.map, mu1);
    auto sol = eng_.solve_before(lift, rhs);
    if (sol.residual > tol() || sol.nullity != 0)
        throw Error("tensor product action not uniquely induced (residual " +
                    std::to_string(sol.residual) + ", nullity " + std::to_string(sol.nullity) +
                    ")");
    auto prod = std::make_shared<Product>();
    prod->module = Module<K>{a.name + "*" + b.name, cok.obj, sol.x};
    prod->I = cok.map;
    prod->mu1 = mu1;
    prod->mu2 = mu2;
    std::lock_guard<std::mutex> lock(memo_mu_);
    return *memo_.emplace(key, std::move(prod)).first->second;
}

template <class K>
Mor<K> Theory<K>::tensor_mor_repv(const Mor<K>& f1, const Mor<K>& f2, const Product& from,
                                  const Product& to) {
    Mor<K> big = eng_.compose(to.I, eng_.tensor_mor(f1, f2));
    auto sol = eng_.solve_before(from.I, big);
    if (sol.residual > tol())
        throw NoSolution("tensor of morphisms does not descend to the cokernels");
    return sol.x;
}

template <class K>
Mor<K> Theory<K>::lunit_repv(const Module<K>& w) {
    const Product& p = tensor(unit_module(), w);
    auto sol = eng_.solve_before(p.I, w.action);
    if (sol.residual > tol()) throw NoSolution("left unit constraint unsolvable");
    return sol.x;
}

template <class K>
Mor<K> Theory<K>::runit_repv(const Module<K>& w) {
    const Product& p = tensor(w, unit_module());
    WordPtr wV = word_leaf(alg_.V), wW = word_leaf(w.W);
    Mor<K> rinv = eng_.braid(wV, wW, true); // R_{V,W}^{-1}: W x V -> V x W
    Mor<K> target = eng_.compose(w.action, rinv);
    auto sol = eng_.solve_before(p.I, target);
    if (sol.residual > tol()) throw NoSolution("right unit constraint unsolvable");
    return sol.x;
}

template <class K>
Mor<K> Theory<K>::assoc_repv(const Module<K>& a, const Module<K>& b, const Module<K>& c) {
    const Product& bc = tensor(b, c);
    const Product& a_bc = tensor(a, bc.module);
    const Product& ab = tensor(a, b);
    const Product& ab_c = tensor(ab.module, c);
    WordPtr wa = word_leaf(a.W), wb = word_leaf(b.W), wc = word_leaf(c.W);
    Mor<K> through_right =
        eng_.compose(a_bc.I, eng_.tensor_mor(eng_.identity(wa), bc.I));
    Mor<K> through_left = eng_.compose(
        ab_c.I, eng_.compose(eng_.tensor_mor(ab.I, eng_.identity(wc)),
                             eng_.assoc(wa, wb, wc, false)));
    auto sol = eng_.solve_before(through_right, through_left);
    if (sol.residual > tol() || sol.nullity != 0)
        throw NoSolution("associativity constraint unsolvable");
    return sol.x;
}

template <class K>
Module<K> Theory<K>::induce(const ConcreteObject& x) {
    WordPtr wV = word_leaf(alg_.V), wX = word_leaf(x);
    WordPtr wVX = word_tensor(wV, wX);
    auto [flat, iso] = eng_.flatten(wVX);
    Env<K> env = env_base();
    env.objects["X"] = x;
    FormulaId id{"induction_action", {}};
    id.params["X"] = obj_gen("X");
    Mor<K> act = eng_.eval(formula(id, sc_).lhs, env); // V x (V x X) -> V x X
    // Transport along the flatten identification.
    Mor<K> inv_iso{iso.cod, iso.dom, iso.m.transposed()};
    Mor<K> flat_act = eng_.compose(
        iso, eng_.compose(act, eng_.tensor_mor(eng_.identity(wV), inv_iso)));
    return Module<K>{"F(" + word_key(wX) + ")", flat, flat_act};
}

template <class K>
Mor<K> Theory<K>::induce_mor(const Mor<K>& f) {
    WordPtr wV = word_leaf(alg_.V);
    auto [fd, iso_d] = eng_.flatten(word_tensor(wV, f.dom));
    auto [fc, iso_c] = eng_.flatten(word_tensor(wV, f.cod));
    Mor<K> inv_d{iso_d.cod, iso_d.dom, iso_d.m.transposed()};
    return eng_.compose(iso_c,
                        eng_.compose(eng_.tensor_mor(eng_.identity(wV), f), inv_d));
}

template <class K>
Mor<K> Theory<K>::adjoint_psi(const Mor<K>& f, const Module<K>& w) {
    WordPtr wV = word_leaf(alg_.V);
    auto [fd, iso_d] = eng_.flatten(word_tensor(wV, f.dom));
    Mor<K> inv_d{iso_d.cod, iso_d.dom, iso_d.m.transposed()};
    return eng_.compose(w.action,
                        eng_.compose(eng_.tensor_mor(eng_.identity(wV), f), inv_d));
}

template <class K>
Mor<K> Theory<K>::induction_monoidal(const ConcreteObject& x1, const ConcreteObject& x2) {
    WordPtr wV = word_leaf(alg_.V), w1 = word_leaf(x1), w2 = word_leaf(x2);
    Module<K> f1 = induce(x1), f2 = induce(x2);
    const Product& p = tensor(f1, f2);

    // V x (X1 x X2) -> (V x X1) x (V x X2) -> F1 x_V F2
    auto [fx1, iso1] = eng_.flatten(word_tensor(wV, w1));
    auto [fx2, iso2] = eng_.flatten(word_tensor(wV, w2));
    Mor<K> insert = eng_.compose(
        eng_.tensor_mor(eng_.identity(word_tensor(wV, w1)),
                        eng_.compose(eng_.tensor_mor(alg_.iota, eng_.identity(w2)),
                                     eng_.lunit(w2, true))),
        eng_.assoc(wV, w1, w2, false));
    Mor<K> to_prod = eng_.compose(p.I, eng_.tensor_mor(iso1, iso2));
    Mor<K> chain = eng_.compose(to_prod, insert);

    // Precompose with the flatten of F(X1 x X2) itself.
    auto [x12, iso12] = eng_.flatten(word_tensor(w1, w2));
    auto [fd, isoF] = eng_.flatten(word_tensor(wV, word_leaf(x12)));
    Mor<K> invF{isoF.cod, isoF.dom, isoF.m.transposed()};
    Mor<K> inv12{iso12.cod, iso12.dom, iso12.m.transposed()};
    Mor<K> unflat = eng_.compose(eng_.tensor_mor(eng_.identity(wV), inv12), invF);
    return eng_.compose(chain, unflat);
}

template <class K>
bool Theory<K>::is_intertwiner(const Mor<K>& I, const Module<K>& a, const Module<K>& b,
                               const Module<K>& c) {
    Env<K> env = env_pair(a, b);
    Mor<K> m1 = eng_.eval(formula(FormulaId{"mu1", {}}, sc_).lhs, env);
    Mor<K> m2 = eng_.eval(formula(FormulaId{"mu2", {}}, sc_).lhs, env);
    Mor<K> lhs1 = eng_.compose(I, m1);
    Mor<K> lhs2 = eng_.compose(I, m2);
    Mor<K> rhs = eng_.compose(c.action,
                              eng_.tensor_mor(eng_.identity(word_leaf(alg_.V)), I));
    return distance(lhs1.m, rhs.m) <= tol() && distance(lhs2.m, rhs.m) <= tol();
}

} // namespace orbcat

#endif
