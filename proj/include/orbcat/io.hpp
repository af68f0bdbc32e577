#ifndef ORBCAT_IO_HPP
#define ORBCAT_IO_HPP

#include <memory>

#include "orbcat/orbifold.hpp"

namespace orbcat {

// Untyped instance bundle exactly mirroring the file schema; scalars stay as
// complex doubles until an engine realizes them.
struct InstanceMatrix {
    int rows{0}, cols{0};
    std::vector<Cplx> a;
    Cplx& at(int i, int j) { return a[size_t(i) * cols + j]; }
    const Cplx& at(int i, int j) const { return a[size_t(i) * cols + j]; }
};

struct InstanceModule {
    std::string name;
    std::vector<std::pair<std::string, int>> summands;
    InstanceMatrix action;
};

struct InstanceAlgebra {
    std::vector<std::pair<std::string, int>> summands;
    InstanceMatrix mu, iota;
    std::vector<std::pair<std::string, InstanceMatrix>> group; // name -> matrix
    std::string parity_involution;
};

struct Instance {
    std::string name;
    CategorySpec spec;
    InstanceAlgebra algebra;
    std::vector<InstanceModule> modules;
};

// Built-ins: "ph", "ising", "z2", "z3", "z4".
Instance builtin_instance(const std::string& name);
std::vector<std::string> builtin_names();

std::string instance_to_json_text(const Instance& in);
Instance instance_from_json_text(const std::string& text);
Instance load_instance(const std::string& path);
void save_instance(const Instance& in, const std::string& path);

// A realized instance: theory + orbifold layer + the declared modules
// (the unit module V is always first).
template <class K>
struct Realized {
    std::unique_ptr<Theory<K>> theory;
    std::unique_ptr<Orbifold<K>> orb;
    std::vector<Module<K>> modules;
};

template <class K>
Realized<K> realize(const Instance& in, std::optional<double> tol_override = std::nullopt);

// ---------------------------------------------------------------------------

template <class K>
ConcreteObject object_from_summands(const CategorySpec& spec,
                                    const std::vector<std::pair<std::string, int>>& s) {
    ConcreteObject o;
    for (const auto& [lbl, flip] : s) o.sum.push_back({spec.index_of(lbl), flip});
    return o;
}

template <class K>
Matrix<K> matrix_from_instance(const InstanceMatrix& m) {
    Matrix<K> out(m.rows, m.cols);
    for (size_t i = 0; i < m.a.size(); ++i) out.a[i] = ScalarOps<K>::from_complex(m.a[i]);
    return out;
}

template <class K>
Realized<K> realize(const Instance& in, std::optional<double> tol_override) {
    CategorySpec spec = in.spec;
    if (tol_override) spec.tol = *tol_override;

    // Everything downstream assumes coherent fusion data.
    ValidationReport v = validate_spec<K>(spec);
    if (!v.pass) {
        std::string what = "category data fails validation";
        if (v.pentagon_residual > spec.tol)
            what += "; pentagon residual " + std::to_string(v.pentagon_residual) + " at " +
                    v.worst_pentagon;
        if (std::max(v.hexagon_residual, v.hexagon_inv_residual) > spec.tol)
            what += "; hexagon residual " +
                    std::to_string(std::max(v.hexagon_residual, v.hexagon_inv_residual)) +
                    " at " + v.worst_hexagon;
        for (const auto& f : v.failures) what += "; " + f;
        throw ResidualExceeded(what);
    }

    Engine<K> probe(spec);
    SuperAlgebra<K> alg;
    alg.V = object_from_summands<K>(spec, in.algebra.summands);
    WordPtr wV = word_leaf(alg.V);
    WordPtr wVV = word_tensor(wV, wV);
    const int nvv = probe.tree_count(wVV);
    if (in.algebra.mu.rows != alg.V.size() || in.algebra.mu.cols != nvv)
        throw ShapeMismatch("algebra mu matrix must be " + std::to_string(alg.V.size()) + " x " +
                            std::to_string(nvv));
    alg.mu = Mor<K>{wVV, wV, matrix_from_instance<K>(in.algebra.mu)};
    if (in.algebra.iota.rows != alg.V.size() || in.algebra.iota.cols != 1)
        throw ShapeMismatch("algebra iota must be a column over V");
    alg.iota = Mor<K>{probe.unit_word(), wV, matrix_from_instance<K>(in.algebra.iota)};

    std::vector<std::pair<std::string, Matrix<K>>> elements;
    for (const auto& [n, m] : in.algebra.group)
        elements.emplace_back(n, matrix_from_instance<K>(m));
    alg.G = finish_group(probe, alg, elements);
    if (!in.algebra.parity_involution.empty()) {
        int idx = alg.G.index_of(in.algebra.parity_involution);
        if (alg.G.parity_involution >= 0 && alg.G.parity_involution != idx)
            throw Error("declared parity involution disagrees with P_V");
        if (alg.G.parity_involution < 0) {
            // Accept the declaration only if it matches the parity operator.
            Mor<K> pv = probe.parity_operator(wV);
            if (distance(pv.m, alg.G.mats[idx]) > spec.tol)
                throw Error("declared parity involution is not P_V");
            alg.G.parity_involution = idx;
        }
    }

    alg.eps = derive_counit(probe, alg);
    alg.coev = derive_coev(probe, alg);

    Realized<K> out;
    out.theory = std::make_unique<Theory<K>>(spec, std::move(alg));
    out.orb = std::make_unique<Orbifold<K>>(*out.theory);
    out.modules.push_back(out.theory->unit_module());
    for (const auto& im : in.modules) {
        ConcreteObject w = object_from_summands<K>(spec, im.summands);
        WordPtr wW = word_leaf(w);
        WordPtr wVW = word_tensor(word_leaf(out.theory->alg().V), wW);
        const int cols = out.theory->eng().tree_count(wVW);
        if (im.action.rows != w.size() || im.action.cols != cols)
            throw ShapeMismatch("module " + im.name + " action must be " +
                                std::to_string(w.size()) + " x " + std::to_string(cols));
        Module<K> m{im.name, w, Mor<K>{wVW, wW, matrix_from_instance<K>(im.action)}};
        CheckReport rep = out.theory->check_module(m);
        if (!rep.pass())
            throw Error("declared module " + im.name + " fails the module axioms");
        out.modules.push_back(std::move(m));
    }
    return out;
}

} // namespace orbcat

#endif
