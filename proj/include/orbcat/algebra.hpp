#ifndef ORBCAT_ALGEBRA_HPP
#define ORBCAT_ALGEBRA_HPP

#include "orbcat/eval.hpp"
#include "orbcat/formulas.hpp"
#include "orbcat/report.hpp"

namespace orbcat {

struct ShapeMismatch : Error {
    explicit ShapeMismatch(const std::string& what) : Error(what) {}
};
struct NotHaploid : Error {
    explicit NotHaploid(const std::string& what) : Error(what) {}
};
struct NoCounit : Error {
    explicit NoCounit(const std::string& what) : Error(what) {}
};
struct PairingDegenerate : Error {
    explicit PairingDegenerate(const std::string& what) : Error(what) {}
};
struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& what) : Error(what) {}
};
struct NotClosed : Error {
    explicit NotClosed(const std::string& what) : Error(what) {}
};
struct NotAutomorphism : Error {
    explicit NotAutomorphism(const std::string& what) : Error(what) {}
};

// Automorphism group of the algebra object, as explicit matrices on V's
// summand basis with a closed multiplication table.
template <class K>
struct GroupRep {
    std::vector<std::string> names;
    std::vector<Matrix<K>> mats;
    std::vector<std::vector<int>> table;
    int identity{-1};
    int parity_involution{-1};

    int size() const { return int(names.size()); }
    int mul(int i, int j) const { return table[i][j]; }
    int inv(int i) const {
        for (int j = 0; j < size(); ++j)
            if (mul(i, j) == identity) return j;
        throw Error("group element without inverse");
    }
    int index_of(const std::string& name) const {
        for (int i = 0; i < size(); ++i)
            if (names[i] == name) return i;
        throw Error("unknown group element: " + name);
    }
};

template <class K>
struct SuperAlgebra {
    ConcreteObject V;
    Mor<K> mu;   // V x V -> V
    Mor<K> iota; // 1 -> V
    std::optional<Mor<K>> eps;  // V -> 1
    std::optional<Mor<K>> coev; // 1 -> V x V
    GroupRep<K> G;
};

// Declaration context + bindings for the algebra's generators and group.
template <class K>
Env<K> algebra_env(Engine<K>& eng, const SuperAlgebra<K>& alg);

template <class K>
StandardContext algebra_context(const SuperAlgebra<K>& alg) {
    return standard_context(alg.G.names);
}

// mu/iota axioms: left unit, associativity, supercommutativity, derived
// right unit.
template <class K>
CheckReport check_superalgebra(Engine<K>& eng, const SuperAlgebra<K>& alg);

// The unique even counit with eps iota = 1 and iota eps = |G|^-1 sum_g g.
template <class K>
Mor<K> derive_counit(Engine<K>& eng, const SuperAlgebra<K>& alg);

// The unique even coevaluation solving both snake identities; also checks
// mu coev = |G| iota.
template <class K>
Mor<K> derive_coev(Engine<K>& eng, const SuperAlgebra<K>& alg);

// The full assumption suite: group facts, haploidity, counit identities,
// snakes, dimension, the trace table, iota recovery, and the two-sided
// coevaluation identity.
template <class K>
CheckReport check_assumption(Engine<K>& eng, const SuperAlgebra<K>& alg);

template <class K>
bool check_automorphism(Engine<K>& eng, const SuperAlgebra<K>& alg, const Mor<K>& f);

// Multiplies generators to closure (cap on element count), checks each is an
// automorphism, and builds the multiplication table.
template <class K>
GroupRep<K> close_group(Engine<K>& eng, const SuperAlgebra<K>& alg,
                        const std::vector<std::pair<std::string, Matrix<K>>>& gens, int cap);

// Builds the table for an already-complete element list.
template <class K>
GroupRep<K> finish_group(Engine<K>& eng, const SuperAlgebra<K>& alg,
                         const std::vector<std::pair<std::string, Matrix<K>>>& elements);

} // namespace orbcat

#include "orbcat/algebra_impl.hpp"

#endif
