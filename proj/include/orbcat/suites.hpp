#ifndef ORBCAT_SUITES_HPP
#define ORBCAT_SUITES_HPP

#include "orbcat/io.hpp"

namespace orbcat {

// Options shared by the CLI, bindings, and the acceptance suite.
struct RunOptions {
    std::optional<double> tol;
    std::optional<bool> exact; // force exact (true) or float (false)
    std::uint64_t seed{0};
    std::string module_name;          // decompose
    std::string table_category{"repv"}; // fusion-table: repv | equivariant
};

// The commands of the CLI surface; every one returns ordered check lines.
std::vector<CheckReport> run_command(const std::string& command, const Instance& in,
                                     const RunOptions& opts);

// ---------------------------------------------------------------------------
// Typed suites.

template <class K>
CheckReport validate_suite(const Instance& in, std::optional<double> tol);

template <class K>
std::vector<CheckReport> algebra_suite(Realized<K>& r);

// The three standalone lemmas: the trace table, iota recovery, the two-sided
// coevaluation identity.
template <class K>
CheckReport lemma_suite(Realized<K>& r);

// pi_g properties over every module in scope (declared modules plus the free
// module on each simple): idempotents, orthogonality, completeness, rep V
// morphisms, twisted images.
template <class K>
CheckReport projector_suite(Realized<K>& r);

// Twist table for declared modules and free modules.
template <class K>
CheckReport sector_suite(Realized<K>& r);

// Grading multiplicativity over twisted pairs from the simple set.
template <class K>
CheckReport grading_suite(Realized<K>& r);

template <class K>
CheckReport gcrossed_suite(Realized<K>& r);

// The induction-functor checks: monoidal structure map, unit map, phi_F, the
// braided compatibility square, and the adjunction identity.
template <class K>
CheckReport functor_suite(Realized<K>& r);

// All composite-identity chains replayed through the evaluator.
template <class K>
CheckReport appendix_suite(Realized<K>& r);

template <class K>
CheckReport equivariantization_suite(Realized<K>& r);

template <class K>
CheckReport decompose_table(Realized<K>& r, const std::string& module_name);

template <class K>
CheckReport fusion_table_suite(Realized<K>& r, const std::string& category);

// Twisted simple modules used as the object set (declared modules with a
// well-defined twist).
template <class K>
std::vector<Module<K>> simple_set(Realized<K>& r) {
    std::vector<Module<K>> out;
    for (const auto& m : r.modules)
        if (r.orb->twist_of(m)) out.push_back(m);
    return out;
}

} // namespace orbcat

#endif
