#include "orbcat/suites_impl.hpp"

namespace orbcat {

namespace {

template <class K>
std::vector<CheckReport> run_typed(const std::string& command, const Instance& in,
                                   const RunOptions& opts) {
    if (command == "validate") return {validate_suite<K>(in, opts.tol)};

    Realized<K> r = realize<K>(in, opts.tol);
    if (command == "algebra-check") return algebra_suite(r);
    if (command == "decompose") return {decompose_table(r, opts.module_name)};
    if (command == "sectors") return {sector_suite(r)};
    if (command == "equivariantize") return {equivariantization_suite(r)};
    if (command == "fusion-table") return {fusion_table_suite(r, opts.table_category)};
    if (command == "paper-suite") {
        std::vector<CheckReport> out;
        out.push_back(appendix_suite(r));
        out.push_back(projector_suite(r));
        out.push_back(lemma_suite(r));
        out.push_back(gcrossed_suite(r));
        out.push_back(functor_suite(r));
        return out;
    }
    throw Error("unknown command: " + command);
}

} // namespace

std::vector<CheckReport> run_command(const std::string& command, const Instance& in,
                                     const RunOptions& opts) {
    bool exact = in.spec.mode == ScalarMode::ExactGaussianRational;
    if (opts.exact) exact = *opts.exact;
    if (exact) return run_typed<GaussRational>(command, in, opts);
    return run_typed<Cplx>(command, in, opts);
}

} // namespace orbcat
