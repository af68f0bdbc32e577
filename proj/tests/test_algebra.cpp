#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "orbcat/repv.hpp"

using namespace orbcat;

namespace {

// The hyperbolic Z2xZ2 algebra: V = C[B], B = {00, 10}, mu the group law,
// G = {1, chi} with chi = diag(1,-1).
template <class K>
SuperAlgebra<K> ph_algebra(Engine<K>& eng) {
    using S = ScalarOps<K>;
    const CategorySpec& spec = eng.spec();
    SuperAlgebra<K> alg;
    alg.V = ConcreteObject{{{spec.index_of("X00"), 0}, {spec.index_of("X10"), 0}}};
    WordPtr wV = word_leaf(alg.V);
    WordPtr wVV = word_tensor(wV, wV);
    auto b = eng.basis(wVV);
    // trees: (00,00;00),(00,10;10),(10,00;10),(10,10;00)
    Matrix<K> mu(2, b->size());
    for (int j = 0; j < b->size(); ++j)
        mu.at(b->trees[j].root == spec.index_of("X00") ? 0 : 1, j) = S::one();
    alg.mu = Mor<K>{wVV, wV, mu};
    Matrix<K> io(2, 1);
    io.at(0, 0) = S::one();
    alg.iota = Mor<K>{eng.unit_word(), wV, io};

    Matrix<K> chi = Matrix<K>::identity(2);
    chi.at(1, 1) = -S::one();
    alg.G = close_group(eng, alg, {{"g", chi}}, 64);
    return alg;
}

// Ising algebra V = 1 + psi with psi odd; mu has unit coefficients and
// psi.psi -> 1 coefficient one. G = {1, P_V}.
template <class K>
SuperAlgebra<K> ising_algebra(Engine<K>& eng) {
    using S = ScalarOps<K>;
    const CategorySpec& spec = eng.spec();
    SuperAlgebra<K> alg;
    const int u = spec.index_of("1"), p = spec.index_of("psi");
    alg.V = ConcreteObject{{{u, 0}, {p, 0}}};
    WordPtr wV = word_leaf(alg.V);
    WordPtr wVV = word_tensor(wV, wV);
    auto b = eng.basis(wVV);
    Matrix<K> mu(2, b->size());
    for (int j = 0; j < b->size(); ++j) mu.at(b->trees[j].root == u ? 0 : 1, j) = S::one();
    alg.mu = Mor<K>{wVV, wV, mu};
    Matrix<K> io(2, 1);
    io.at(0, 0) = S::one();
    alg.iota = Mor<K>{eng.unit_word(), wV, io};

    Matrix<K> pv = Matrix<K>::identity(2);
    pv.at(1, 1) = -S::one();
    alg.G = close_group(eng, alg, {{"p", pv}}, 64);
    return alg;
}

} // namespace

TEST_CASE("PH algebra passes the superalgebra axioms exactly") {
    CategorySpec spec = pointed_hyperbolic_z2z2();
    Engine<GaussRational> eng(spec);
    auto alg = ph_algebra(eng);
    CHECK(alg.G.size() == 2);
    CheckReport rep = check_superalgebra(eng, alg);
    for (auto& l : rep.lines) INFO(l.key, " residual ", l.residual);
    CHECK(rep.pass());
    CHECK(rep.worst() == 0.0);
}

TEST_CASE("PH algebra with a broken mu fails associativity") {
    CategorySpec spec = pointed_hyperbolic_z2z2();
    Engine<GaussRational> eng(spec);
    auto alg = ph_algebra(eng);
    // Scaling the square e10.e10 alone is only a gauge change and stays
    // associative; scaling a mixed product e10.e00 genuinely breaks it.
    auto b = eng.basis(word_tensor(word_leaf(alg.V), word_leaf(alg.V)));
    for (int j = 0; j < b->size(); ++j)
        if (b->trees[j].choice[0] == 1 && b->trees[j].choice[1] == 0)
            alg.mu.m.at(1, j) = alg.mu.m.at(1, j) + alg.mu.m.at(1, j);
    CheckReport rep = check_superalgebra(eng, alg);
    CHECK(!rep.pass());
    bool assoc_fail = false;
    for (auto& l : rep.lines)
        if (l.key == "associativity" && !l.pass) {
            assoc_fail = true;
            CHECK(l.residual > 0.9);
        }
    CHECK(assoc_fail);
}

TEST_CASE("PH counit and coevaluation") {
    CategorySpec spec = pointed_hyperbolic_z2z2();
    Engine<GaussRational> eng(spec);
    auto alg = ph_algebra(eng);
    alg.eps = derive_counit(eng, alg);
    // eps = (1, 0) on (e00, e10)
    CHECK(alg.eps->m.at(0, 0) == ScalarOps<GaussRational>::one());
    CHECK(alg.eps->m.at(0, 1) == ScalarOps<GaussRational>::zero());

    alg.coev = derive_coev(eng, alg);
    // i~ = e00 x e00 + e10 x e10 in the tree basis of V x V
    auto b = eng.basis(word_tensor(word_leaf(alg.V), word_leaf(alg.V)));
    int found = 0;
    for (int i = 0; i < b->size(); ++i) {
        const auto& v = alg.coev->m.at(i, 0);
        if (b->trees[i].choice[0] == b->trees[i].choice[1]) {
            CHECK(v == ScalarOps<GaussRational>::one());
            ++found;
        } else {
            CHECK(v == ScalarOps<GaussRational>::zero());
        }
    }
    CHECK(found == 2);

    // mu coev = 2 iota
    Mor<GaussRational> muco = eng.compose(alg.mu, *alg.coev);
    CHECK(muco.m.at(0, 0) == ScalarOps<GaussRational>::from_int(2));

    CheckReport rep = check_assumption(eng, alg);
    for (auto& l : rep.lines) INFO(l.key, " residual ", l.residual, " ", l.note);
    CHECK(rep.pass());
}

TEST_CASE("Ising counit, coevaluation, assumption suite") {
    CategorySpec spec = ising();
    Engine<Cplx> eng(spec);
    auto alg = ising_algebra(eng);
    CheckReport axioms = check_superalgebra(eng, alg);
    for (auto& l : axioms.lines) INFO(l.key, " residual ", l.residual);
    CHECK(axioms.pass());

    alg.eps = derive_counit(eng, alg);
    alg.coev = derive_coev(eng, alg);
    // Tr(P_V) = superdimension = 0
    StandardContext sc = algebra_context(alg);
    Env<Cplx> env = algebra_env(eng, alg);
    FormulaId id{"trace_g", {}};
    id.params["g"] = std::string("p");
    Mor<Cplx> tr = eng.eval(formula(id, sc).lhs, env);
    CHECK(tr.m.sup_norm() <= 1e-9);

    CheckReport rep = check_assumption(eng, alg);
    for (auto& l : rep.lines) INFO(l.key, " residual ", l.residual, " ", l.note);
    CHECK(rep.pass());
}

TEST_CASE("regular pointed Z/3 with trivial parity involution is accepted") {
    CategorySpec spec = regular_pointed(3);
    Engine<GaussRational> eng(spec);
    SuperAlgebra<GaussRational> alg;
    using S = ScalarOps<GaussRational>;
    alg.V = ConcreteObject{{{0, 0}, {1, 0}, {2, 0}}};
    WordPtr wV = word_leaf(alg.V);
    WordPtr wVV = word_tensor(wV, wV);
    auto b = eng.basis(wVV);
    Matrix<GaussRational> mu(3, b->size());
    for (int j = 0; j < b->size(); ++j) mu.at(b->trees[j].root, j) = S::one();
    alg.mu = Mor<GaussRational>{wVV, wV, mu};
    Matrix<GaussRational> io(3, 1);
    io.at(0, 0) = S::one();
    alg.iota = Mor<GaussRational>{eng.unit_word(), wV, io};

    // G = dual of Z/3 generated by the character with value omega... but the
    // scalars of Z/3 characters are cube roots of unity, outside Q(i); use
    // the permutation-free diagonal characters only when they exist. Instead
    // close the full character group over complex scalars.
    Engine<Cplx> enc(spec);
    SuperAlgebra<Cplx> algc;
    algc.V = alg.V;
    Matrix<Cplx> muc(3, b->size());
    for (int j = 0; j < b->size(); ++j) muc.at(b->trees[j].root, j) = {1.0, 0.0};
    algc.mu = Mor<Cplx>{wVV, wV, muc};
    Matrix<Cplx> ioc(3, 1);
    ioc.at(0, 0) = {1.0, 0.0};
    algc.iota = Mor<Cplx>{enc.unit_word(), wV, ioc};
    Matrix<Cplx> chi(3, 3);
    const Cplx w = std::polar(1.0, 2.0 * M_PI / 3.0);
    chi.at(0, 0) = 1.0;
    chi.at(1, 1) = w;
    chi.at(2, 2) = std::conj(w);
    algc.G = close_group(enc, algc, {{"c", chi}}, 64);
    CHECK(algc.G.size() == 3);

    algc.eps = derive_counit(enc, algc);
    algc.coev = derive_coev(enc, algc);
    CheckReport rep = check_assumption(enc, algc);
    for (auto& l : rep.lines) INFO(l.key, " residual ", l.residual, " ", l.note);
    CHECK(rep.pass());
    // the relaxation note must be present: P_V = id, |G| = 3
    bool flagged = false;
    for (auto& l : rep.lines)
        if (l.note.find("odd |G| accepted") != std::string::npos) flagged = true;
    CHECK(flagged);
}

TEST_CASE("automorphism checks") {
    CategorySpec spec = pointed_hyperbolic_z2z2();
    Engine<GaussRational> eng(spec);
    auto alg = ph_algebra(eng);
    WordPtr wV = word_leaf(alg.V);
    using S = ScalarOps<GaussRational>;

    Matrix<GaussRational> good = Matrix<GaussRational>::identity(2);
    good.at(1, 1) = -S::one();
    CHECK(check_automorphism(eng, alg, Mor<GaussRational>{wV, wV, good}));

    Matrix<GaussRational> bad = Matrix<GaussRational>::identity(2);
    bad.at(1, 1) = GaussRational{Rational(0), Rational(1)}; // diag(1, i)
    CHECK(!check_automorphism(eng, alg, Mor<GaussRational>{wV, wV, bad}));

    // group table sanity: matrix(g) matrix(h) = matrix(table(g,h))
    for (int i = 0; i < alg.G.size(); ++i)
        for (int j = 0; j < alg.G.size(); ++j) {
            Matrix<GaussRational> p = alg.G.mats[i] * alg.G.mats[j];
            CHECK(distance(p, alg.G.mats[alg.G.mul(i, j)]) == 0.0);
        }
}

TEST_CASE("degenerate pairing is rejected") {
    // psi.psi -> 0 instead of 1: exterior-algebra-like, eps mu degenerate.
    CategorySpec spec = ising();
    Engine<Cplx> eng(spec);
    auto alg = ising_algebra(eng);
    for (int j = 0; j < alg.mu.m.cols; ++j) alg.mu.m.at(0, j) = {0.0, 0.0};
    // restore unit components: (1,1;1) tree only
    auto b = eng.basis(word_tensor(word_leaf(alg.V), word_leaf(alg.V)));
    for (int j = 0; j < b->size(); ++j)
        if (b->trees[j].choice[0] == 0 && b->trees[j].choice[1] == 0)
            alg.mu.m.at(0, j) = {1.0, 0.0};
    alg.eps = derive_counit(eng, alg);
    CHECK_THROWS_AS(derive_coev(eng, alg), PairingDegenerate);
}
