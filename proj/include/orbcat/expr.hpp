#ifndef ORBCAT_EXPR_HPP
#define ORBCAT_EXPR_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "orbcat/scalar.hpp"

namespace orbcat {

enum class Parity { Even, Odd, Mixed };

inline Parity parity_add(Parity a, Parity b) {
    if (a == Parity::Mixed || b == Parity::Mixed) return Parity::Mixed;
    return (a == b) ? Parity::Even : Parity::Odd;
}

// ---------------------------------------------------------------------------
// Object expressions: the free tensor words over declared generator names.

struct ObjExpr;
using ObjPtr = std::shared_ptr<const ObjExpr>;

struct ObjExpr {
    enum class Kind { Unit, Gen, Tensor };
    Kind kind;
    std::string name;  // Gen
    ObjPtr left, right; // Tensor
};

ObjPtr obj_unit();
ObjPtr obj_gen(const std::string& name);
ObjPtr obj_tensor(ObjPtr l, ObjPtr r);
bool obj_equal(const ObjPtr& a, const ObjPtr& b);
std::string render_obj(const ObjPtr& o);

// ---------------------------------------------------------------------------
// Morphism expressions.

struct MorExpr;
using MorPtr = std::shared_ptr<const MorExpr>;

struct MorExpr {
    enum class Kind { Identity, Gen, Compose, TensorM, Assoc, LUnit, RUnit, Braid, Scale, Sum };
    Kind kind;

    ObjPtr a, b, c;          // structural operands; Identity uses a
    std::string name;        // Gen
    MorPtr f, g;             // Compose (f after g), TensorM (f left, g right), Scale (f)
    std::vector<MorPtr> terms; // Sum
    bool inverse{false};
    Cplx scalar{0.0, 0.0};   // Scale
};

MorPtr mor_identity(ObjPtr on);
MorPtr mor_gen(const std::string& name);
MorPtr mor_compose(MorPtr after, MorPtr before);
MorPtr mor_tensor(MorPtr left, MorPtr right);
MorPtr mor_assoc(ObjPtr a, ObjPtr b, ObjPtr c, bool inverse = false);
MorPtr mor_lunit(ObjPtr a, bool inverse = false);
MorPtr mor_runit(ObjPtr a, bool inverse = false);
MorPtr mor_braid(ObjPtr a, ObjPtr b, bool inverse = false);
MorPtr mor_scale(Cplx s, MorPtr f);
MorPtr mor_sum(std::vector<MorPtr> terms);

// Composes a chain given in diagram order (first arrow first).
MorPtr mor_chain(std::vector<MorPtr> arrows);

bool mor_equal(const MorPtr& x, const MorPtr& y);
std::string render(const MorPtr& m);

// ---------------------------------------------------------------------------
// Declarations and typechecking.

struct GenDecl {
    ObjPtr dom, cod;
    Parity parity{Parity::Even};
};

struct Context {
    std::map<std::string, GenDecl> gens;
    std::vector<std::string> objects; // declared object generator names

    void declare_object(const std::string& name);
    void declare_gen(const std::string& name, ObjPtr dom, ObjPtr cod, Parity p);
    bool has_object(const std::string& name) const;
};

struct TypeError : Error {
    explicit TypeError(const std::string& what) : Error(what) {}
};
struct CompositionMismatch : TypeError {
    explicit CompositionMismatch(const std::string& what) : TypeError(what) {}
};
struct UndeclaredGenerator : TypeError {
    explicit UndeclaredGenerator(const std::string& what) : TypeError(what) {}
};

struct MorType {
    ObjPtr dom, cod;
};

MorType typecheck(const MorPtr& e, const Context& ctx);
Parity parity_of(const MorPtr& e, const Context& ctx);

// Directed normalizer: cancels inverse pairs, absorbs identities, applies the
// triangle identity and unit-braid triviality. Preserves dom/cod and the
// evaluated matrix; not a decision procedure for equality. The context
// overload additionally applies unitor naturality (needs subterm types).
MorPtr simplify(const MorPtr& e);
MorPtr simplify(const MorPtr& e, const Context* ctx);

// ---------------------------------------------------------------------------
// Text grammar round trip.

struct SyntaxError : Error {
    size_t position;
    SyntaxError(const std::string& what, size_t pos)
        : Error(what + " at position " + std::to_string(pos)), position(pos) {}
};

MorPtr parse(const std::string& text);
ObjPtr parse_obj(const std::string& text);

} // namespace orbcat

#endif
