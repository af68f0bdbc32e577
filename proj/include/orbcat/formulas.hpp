#ifndef ORBCAT_FORMULAS_HPP
#define ORBCAT_FORMULAS_HPP

#include <optional>
#include <variant>

#include "orbcat/expr.hpp"

namespace orbcat {

struct UnknownFormula : Error {
    explicit UnknownFormula(const std::string& what) : Error(what) {}
};
struct MissingParameter : Error {
    explicit MissingParameter(const std::string& what) : Error(what) {}
};

// Parameters are group-element generator names or object expressions.
using FormulaParam = std::variant<std::string, ObjPtr>;

struct FormulaId {
    std::string name;
    std::map<std::string, FormulaParam> params;
};

// Catalog entries either denote one composite (rhs empty) or an identity to
// replay (lhs = rhs after evaluation). The anchor names the statement.
struct CatalogFormula {
    MorPtr lhs;
    std::optional<MorPtr> rhs;
    std::string anchor;
};

// The declaration context every catalog entry typechecks against: objects
// V, W, W1, W2, X; generators mu, iota, eps, coev, act, act1, act2 and one
// even endomorphism of V per group element name.
struct StandardContext {
    Context ctx;
    std::vector<std::string> group; // element generator names, identity first
    int group_order{1};
    ObjPtr V, W, W1, W2, X;
};

StandardContext standard_context(const std::vector<std::string>& group_names);

CatalogFormula formula(const FormulaId& id, const StandardContext& sc);
std::vector<std::string> catalog_names();

} // namespace orbcat

#endif
