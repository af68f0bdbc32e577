#include "orbcat/expr.hpp"

#include <cctype>
#include <cstdio>
#include <sstream>

namespace orbcat {

// ---------------------------------------------------------------------------
// Constructors

ObjPtr obj_unit() {
    static ObjPtr u = std::make_shared<ObjExpr>(ObjExpr{ObjExpr::Kind::Unit, "", nullptr, nullptr});
    return u;
}

ObjPtr obj_gen(const std::string& name) {
    return std::make_shared<ObjExpr>(ObjExpr{ObjExpr::Kind::Gen, name, nullptr, nullptr});
}

ObjPtr obj_tensor(ObjPtr l, ObjPtr r) {
    return std::make_shared<ObjExpr>(ObjExpr{ObjExpr::Kind::Tensor, "", std::move(l), std::move(r)});
}

bool obj_equal(const ObjPtr& a, const ObjPtr& b) {
    if (a.get() == b.get()) return true;
    if (!a || !b || a->kind != b->kind) return false;
    switch (a->kind) {
        case ObjExpr::Kind::Unit: return true;
        case ObjExpr::Kind::Gen: return a->name == b->name;
        case ObjExpr::Kind::Tensor:
            return obj_equal(a->left, b->left) && obj_equal(a->right, b->right);
    }
    return false;
}

std::string render_obj(const ObjPtr& o) {
    switch (o->kind) {
        case ObjExpr::Kind::Unit: return "I";
        case ObjExpr::Kind::Gen: return o->name;
        case ObjExpr::Kind::Tensor:
            return "(" + render_obj(o->left) + " * " + render_obj(o->right) + ")";
    }
    return "?";
}

static MorPtr node(MorExpr e) { return std::make_shared<MorExpr>(std::move(e)); }

MorPtr mor_identity(ObjPtr on) {
    MorExpr e{};
    e.kind = MorExpr::Kind::Identity;
    e.a = std::move(on);
    return node(std::move(e));
}
MorPtr mor_gen(const std::string& name) {
    MorExpr e{};
    e.kind = MorExpr::Kind::Gen;
    e.name = name;
    return node(std::move(e));
}
MorPtr mor_compose(MorPtr after, MorPtr before) {
    MorExpr e{};
    e.kind = MorExpr::Kind::Compose;
    e.f = std::move(after);
    e.g = std::move(before);
    return node(std::move(e));
}
MorPtr mor_tensor(MorPtr left, MorPtr right) {
    MorExpr e{};
    e.kind = MorExpr::Kind::TensorM;
    e.f = std::move(left);
    e.g = std::move(right);
    return node(std::move(e));
}
MorPtr mor_assoc(ObjPtr a, ObjPtr b, ObjPtr c, bool inverse) {
    MorExpr e{};
    e.kind = MorExpr::Kind::Assoc;
    e.a = std::move(a);
    e.b = std::move(b);
    e.c = std::move(c);
    e.inverse = inverse;
    return node(std::move(e));
}
MorPtr mor_lunit(ObjPtr a, bool inverse) {
    MorExpr e{};
    e.kind = MorExpr::Kind::LUnit;
    e.a = std::move(a);
    e.inverse = inverse;
    return node(std::move(e));
}
MorPtr mor_runit(ObjPtr a, bool inverse) {
    MorExpr e{};
    e.kind = MorExpr::Kind::RUnit;
    e.a = std::move(a);
    e.inverse = inverse;
    return node(std::move(e));
}
MorPtr mor_braid(ObjPtr a, ObjPtr b, bool inverse) {
    MorExpr e{};
    e.kind = MorExpr::Kind::Braid;
    e.a = std::move(a);
    e.b = std::move(b);
    e.inverse = inverse;
    return node(std::move(e));
}
MorPtr mor_scale(Cplx s, MorPtr f) {
    MorExpr e{};
    e.kind = MorExpr::Kind::Scale;
    e.scalar = s;
    e.f = std::move(f);
    return node(std::move(e));
}
MorPtr mor_sum(std::vector<MorPtr> terms) {
    if (terms.empty()) throw Error("sum of no terms");
    if (terms.size() == 1) return terms[0];
    MorExpr e{};
    e.kind = MorExpr::Kind::Sum;
    e.terms = std::move(terms);
    return node(std::move(e));
}

MorPtr mor_chain(std::vector<MorPtr> arrows) {
    if (arrows.empty()) throw Error("empty chain");
    MorPtr acc = arrows[0];
    for (size_t i = 1; i < arrows.size(); ++i) acc = mor_compose(arrows[i], acc);
    return acc;
}

bool mor_equal(const MorPtr& x, const MorPtr& y) {
    if (x.get() == y.get()) return true;
    if (!x || !y || x->kind != y->kind) return false;
    switch (x->kind) {
        case MorExpr::Kind::Identity: return obj_equal(x->a, y->a);
        case MorExpr::Kind::Gen: return x->name == y->name;
        case MorExpr::Kind::Compose:
        case MorExpr::Kind::TensorM:
            return mor_equal(x->f, y->f) && mor_equal(x->g, y->g);
        case MorExpr::Kind::Assoc:
            return x->inverse == y->inverse && obj_equal(x->a, y->a) &&
                   obj_equal(x->b, y->b) && obj_equal(x->c, y->c);
        case MorExpr::Kind::LUnit:
        case MorExpr::Kind::RUnit:
            return x->inverse == y->inverse && obj_equal(x->a, y->a);
        case MorExpr::Kind::Braid:
            return x->inverse == y->inverse && obj_equal(x->a, y->a) && obj_equal(x->b, y->b);
        case MorExpr::Kind::Scale:
            return x->scalar == y->scalar && mor_equal(x->f, y->f);
        case MorExpr::Kind::Sum: {
            if (x->terms.size() != y->terms.size()) return false;
            for (size_t i = 0; i < x->terms.size(); ++i)
                if (!mor_equal(x->terms[i], y->terms[i])) return false;
            return true;
        }
    }
    return false;
}

// ---------------------------------------------------------------------------
// Context

void Context::declare_object(const std::string& name) {
    if (has_object(name)) throw Error("object generator redeclared: " + name);
    objects.push_back(name);
}
void Context::declare_gen(const std::string& name, ObjPtr dom, ObjPtr cod, Parity p) {
    if (gens.count(name)) throw Error("morphism generator redeclared: " + name);
    gens[name] = GenDecl{std::move(dom), std::move(cod), p};
}
bool Context::has_object(const std::string& name) const {
    for (const auto& o : objects)
        if (o == name) return true;
    return false;
}

// ---------------------------------------------------------------------------
// Typechecking

static void check_obj(const ObjPtr& o, const Context& ctx) {
    switch (o->kind) {
        case ObjExpr::Kind::Unit: return;
        case ObjExpr::Kind::Gen:
            if (!ctx.has_object(o->name))
                throw UndeclaredGenerator("undeclared object generator: " + o->name);
            return;
        case ObjExpr::Kind::Tensor:
            check_obj(o->left, ctx);
            check_obj(o->right, ctx);
            return;
    }
}

MorType typecheck(const MorPtr& e, const Context& ctx) {
    switch (e->kind) {
        case MorExpr::Kind::Identity: {
            check_obj(e->a, ctx);
            return {e->a, e->a};
        }
        case MorExpr::Kind::Gen: {
            auto it = ctx.gens.find(e->name);
            if (it == ctx.gens.end())
                throw UndeclaredGenerator("undeclared morphism generator: " + e->name);
            return {it->second.dom, it->second.cod};
        }
        case MorExpr::Kind::Compose: {
            MorType after = typecheck(e->f, ctx);
            MorType before = typecheck(e->g, ctx);
            if (!obj_equal(before.cod, after.dom))
                throw CompositionMismatch("interface mismatch in " + render(e) + ": " +
                                          render_obj(before.cod) + " vs " + render_obj(after.dom));
            return {before.dom, after.cod};
        }
        case MorExpr::Kind::TensorM: {
            MorType l = typecheck(e->f, ctx);
            MorType r = typecheck(e->g, ctx);
            return {obj_tensor(l.dom, r.dom), obj_tensor(l.cod, r.cod)};
        }
        case MorExpr::Kind::Assoc: {
            check_obj(e->a, ctx);
            check_obj(e->b, ctx);
            check_obj(e->c, ctx);
            ObjPtr nested = obj_tensor(e->a, obj_tensor(e->b, e->c));
            ObjPtr flat = obj_tensor(obj_tensor(e->a, e->b), e->c);
            return e->inverse ? MorType{flat, nested} : MorType{nested, flat};
        }
        case MorExpr::Kind::LUnit: {
            check_obj(e->a, ctx);
            ObjPtr from = obj_tensor(obj_unit(), e->a);
            return e->inverse ? MorType{e->a, from} : MorType{from, e->a};
        }
        case MorExpr::Kind::RUnit: {
            check_obj(e->a, ctx);
            ObjPtr from = obj_tensor(e->a, obj_unit());
            return e->inverse ? MorType{e->a, from} : MorType{from, e->a};
        }
        case MorExpr::Kind::Braid: {
            check_obj(e->a, ctx);
            check_obj(e->b, ctx);
            ObjPtr ab = obj_tensor(e->a, e->b);
            ObjPtr ba = obj_tensor(e->b, e->a);
            return e->inverse ? MorType{ba, ab} : MorType{ab, ba};
        }
        case MorExpr::Kind::Scale:
            return typecheck(e->f, ctx);
        case MorExpr::Kind::Sum: {
            MorType t0 = typecheck(e->terms[0], ctx);
            for (size_t i = 1; i < e->terms.size(); ++i) {
                MorType ti = typecheck(e->terms[i], ctx);
                if (!obj_equal(ti.dom, t0.dom) || !obj_equal(ti.cod, t0.cod))
                    throw CompositionMismatch("sum terms disagree on dom/cod in " + render(e));
            }
            return t0;
        }
    }
    throw Error("unreachable");
}

Parity parity_of(const MorPtr& e, const Context& ctx) {
    switch (e->kind) {
        case MorExpr::Kind::Identity:
        case MorExpr::Kind::Assoc:
        case MorExpr::Kind::LUnit:
        case MorExpr::Kind::RUnit:
        case MorExpr::Kind::Braid:
            return Parity::Even;
        case MorExpr::Kind::Gen: {
            auto it = ctx.gens.find(e->name);
            if (it == ctx.gens.end())
                throw UndeclaredGenerator("undeclared morphism generator: " + e->name);
            return it->second.parity;
        }
        case MorExpr::Kind::Compose:
        case MorExpr::Kind::TensorM:
            return parity_add(parity_of(e->f, ctx), parity_of(e->g, ctx));
        case MorExpr::Kind::Scale:
            return parity_of(e->f, ctx);
        case MorExpr::Kind::Sum: {
            Parity p = parity_of(e->terms[0], ctx);
            for (size_t i = 1; i < e->terms.size(); ++i)
                if (parity_of(e->terms[i], ctx) != p) return Parity::Mixed;
            return p;
        }
    }
    throw Error("unreachable");
}

// ---------------------------------------------------------------------------
// simplify

static bool is_identity(const MorPtr& m) { return m->kind == MorExpr::Kind::Identity; }

static bool inverse_pair(const MorPtr& x, const MorPtr& y) {
    // x after y with x = y^{-1}, both structural.
    if (x->kind != y->kind || x->inverse == y->inverse) return false;
    switch (x->kind) {
        case MorExpr::Kind::Assoc:
            return obj_equal(x->a, y->a) && obj_equal(x->b, y->b) && obj_equal(x->c, y->c);
        case MorExpr::Kind::LUnit:
        case MorExpr::Kind::RUnit:
            return obj_equal(x->a, y->a);
        case MorExpr::Kind::Braid:
            return obj_equal(x->a, y->a) && obj_equal(x->b, y->b);
        default:
            return false;
    }
}

static ObjPtr structural_dom(const MorPtr& m) {
    // dom of a structural node; no generators involved.
    switch (m->kind) {
        case MorExpr::Kind::Assoc: {
            ObjPtr nested = obj_tensor(m->a, obj_tensor(m->b, m->c));
            ObjPtr flat = obj_tensor(obj_tensor(m->a, m->b), m->c);
            return m->inverse ? flat : nested;
        }
        case MorExpr::Kind::LUnit:
            return m->inverse ? m->a : obj_tensor(obj_unit(), m->a);
        case MorExpr::Kind::RUnit:
            return m->inverse ? m->a : obj_tensor(m->a, obj_unit());
        case MorExpr::Kind::Braid:
            return m->inverse ? obj_tensor(m->b, m->a) : obj_tensor(m->a, m->b);
        case MorExpr::Kind::Identity:
            return m->a;
        default:
            return nullptr;
    }
}

static MorPtr simplify_once(const MorPtr& e, bool& changed, const Context* ctx);

static MorPtr rebuild(const MorPtr& e, bool& changed, const Context* ctx) {
    switch (e->kind) {
        case MorExpr::Kind::Compose:
            return mor_compose(simplify_once(e->f, changed, ctx), simplify_once(e->g, changed, ctx));
        case MorExpr::Kind::TensorM:
            return mor_tensor(simplify_once(e->f, changed, ctx), simplify_once(e->g, changed, ctx));
        case MorExpr::Kind::Scale:
            return mor_scale(e->scalar, simplify_once(e->f, changed, ctx));
        case MorExpr::Kind::Sum: {
            std::vector<MorPtr> t;
            t.reserve(e->terms.size());
            for (const auto& x : e->terms) t.push_back(simplify_once(x, changed, ctx));
            return mor_sum(std::move(t));
        }
        default:
            return e;
    }
}

static MorPtr simplify_once(const MorPtr& e0, bool& changed, const Context* ctx) {
    MorPtr e = rebuild(e0, changed, ctx);
    switch (e->kind) {
        case MorExpr::Kind::Compose: {
            if (is_identity(e->f)) { changed = true; return e->g; }
            if (is_identity(e->g)) { changed = true; return e->f; }
            if (inverse_pair(e->f, e->g)) {
                changed = true;
                return mor_identity(structural_dom(e->g));
            }
            // Triangle: (runit(a) x id(b)) . assoc(a, I, b) = id(a) x lunit(b)
            if (e->g->kind == MorExpr::Kind::Assoc && !e->g->inverse &&
                e->g->b->kind == ObjExpr::Kind::Unit && e->f->kind == MorExpr::Kind::TensorM &&
                e->f->f->kind == MorExpr::Kind::RUnit && !e->f->f->inverse &&
                is_identity(e->f->g) && obj_equal(e->f->f->a, e->g->a) &&
                obj_equal(e->f->g->a, e->g->c)) {
                changed = true;
                return mor_tensor(mor_identity(e->g->a), mor_lunit(e->g->c));
            }
            // Naturality of the unitors, when a context can type the factor.
            if (ctx && e->f->kind == MorExpr::Kind::LUnit && !e->f->inverse &&
                e->g->kind == MorExpr::Kind::TensorM && is_identity(e->g->f) &&
                e->g->f->a->kind == ObjExpr::Kind::Unit) {
                try {
                    MorType t = typecheck(e->g->g, *ctx);
                    changed = true;
                    return mor_compose(e->g->g, mor_lunit(t.dom));
                } catch (const TypeError&) {}
            }
            if (ctx && e->f->kind == MorExpr::Kind::RUnit && !e->f->inverse &&
                e->g->kind == MorExpr::Kind::TensorM && is_identity(e->g->g) &&
                e->g->g->a->kind == ObjExpr::Kind::Unit) {
                try {
                    MorType t = typecheck(e->g->f, *ctx);
                    changed = true;
                    return mor_compose(e->g->f, mor_runit(t.dom));
                } catch (const TypeError&) {}
            }
            break;
        }
        case MorExpr::Kind::TensorM: {
            if (is_identity(e->f) && is_identity(e->g)) {
                changed = true;
                return mor_identity(obj_tensor(e->f->a, e->g->a));
            }
            break;
        }
        case MorExpr::Kind::Braid: {
            // Unit braiding is the canonical isomorphism.
            if (!e->inverse && e->a->kind == ObjExpr::Kind::Unit) {
                changed = true;
                return mor_compose(mor_runit(e->b, true), mor_lunit(e->b));
            }
            if (!e->inverse && e->b->kind == ObjExpr::Kind::Unit) {
                changed = true;
                return mor_compose(mor_lunit(e->a, true), mor_runit(e->a));
            }
            break;
        }
        case MorExpr::Kind::Scale: {
            if (e->scalar == Cplx{1.0, 0.0}) { changed = true; return e->f; }
            if (e->f->kind == MorExpr::Kind::Scale) {
                changed = true;
                return mor_scale(e->scalar * e->f->scalar, e->f->f);
            }
            break;
        }
        default:
            break;
    }
    return e;
}

MorPtr simplify(const MorPtr& e) { return simplify(e, nullptr); }

MorPtr simplify(const MorPtr& e, const Context* ctx) {
    MorPtr cur = e;
    for (int guard = 0; guard < 10000; ++guard) {
        bool changed = false;
        cur = simplify_once(cur, changed, ctx);
        if (!changed) return cur;
    }
    return cur;
}

// ---------------------------------------------------------------------------
// render

static std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string render(const MorPtr& m) {
    switch (m->kind) {
        case MorExpr::Kind::Identity: return "id(" + render_obj(m->a) + ")";
        case MorExpr::Kind::Gen: return "gen " + m->name;
        case MorExpr::Kind::Compose: return "comp(" + render(m->f) + ", " + render(m->g) + ")";
        case MorExpr::Kind::TensorM: return "ten(" + render(m->f) + ", " + render(m->g) + ")";
        case MorExpr::Kind::Assoc:
            return "assoc(" + render_obj(m->a) + ", " + render_obj(m->b) + ", " + render_obj(m->c) +
                   (m->inverse ? ", inv)" : ")");
        case MorExpr::Kind::LUnit:
            return "lunit(" + render_obj(m->a) + (m->inverse ? ", inv)" : ")");
        case MorExpr::Kind::RUnit:
            return "runit(" + render_obj(m->a) + (m->inverse ? ", inv)" : ")");
        case MorExpr::Kind::Braid:
            return "braid(" + render_obj(m->a) + ", " + render_obj(m->b) +
                   (m->inverse ? ", inv)" : ")");
        case MorExpr::Kind::Scale:
            return "scale(" + fmt_double(m->scalar.real()) + ", " + fmt_double(m->scalar.imag()) +
                   ", " + render(m->f) + ")";
        case MorExpr::Kind::Sum: {
            std::string s = "sum(";
            for (size_t i = 0; i < m->terms.size(); ++i) {
                if (i) s += ", ";
                s += render(m->terms[i]);
            }
            return s + ")";
        }
    }
    return "?";
}

// ---------------------------------------------------------------------------
// parse

namespace {

struct Lexer {
    const std::string& s;
    size_t pos{0};

    explicit Lexer(const std::string& text) : s(text) {}

    void skip_ws() {
        while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    void expect(char c) {
        skip_ws();
        if (pos >= s.size() || s[pos] != c)
            throw SyntaxError(std::string("expected '") + c + "'", pos);
        ++pos;
    }
    bool accept(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    std::string ident() {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() && (std::isalnum((unsigned char)s[pos]) || s[pos] == '_')) ++pos;
        if (pos == start) throw SyntaxError("expected identifier", pos);
        return s.substr(start, pos - start);
    }
    double number() {
        skip_ws();
        size_t start = pos;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
        while (pos < s.size() &&
               (std::isdigit((unsigned char)s[pos]) || s[pos] == '.' || s[pos] == 'e' ||
                s[pos] == 'E' || ((s[pos] == '-' || s[pos] == '+') &&
                                  (s[pos - 1] == 'e' || s[pos - 1] == 'E'))))
            ++pos;
        if (pos == start) throw SyntaxError("expected number", pos);
        return std::stod(s.substr(start, pos - start));
    }
};

ObjPtr parse_obj_inner(Lexer& lx) {
    if (lx.accept('(')) {
        ObjPtr l = parse_obj_inner(lx);
        lx.expect('*');
        ObjPtr r = parse_obj_inner(lx);
        lx.expect(')');
        return obj_tensor(l, r);
    }
    std::string name = lx.ident();
    if (name == "I") return obj_unit();
    return obj_gen(name);
}

bool parse_inv_flag(Lexer& lx) {
    if (lx.accept(',')) {
        size_t at = lx.pos;
        std::string w = lx.ident();
        if (w != "inv") throw SyntaxError("expected 'inv'", at);
        return true;
    }
    return false;
}

MorPtr parse_mor(Lexer& lx) {
    size_t at = lx.pos;
    std::string head = lx.ident();
    if (head == "id") {
        lx.expect('(');
        ObjPtr o = parse_obj_inner(lx);
        lx.expect(')');
        return mor_identity(o);
    }
    if (head == "gen") return mor_gen(lx.ident());
    if (head == "comp" || head == "ten") {
        lx.expect('(');
        MorPtr f = parse_mor(lx);
        lx.expect(',');
        MorPtr g = parse_mor(lx);
        lx.expect(')');
        return head == "comp" ? mor_compose(f, g) : mor_tensor(f, g);
    }
    if (head == "assoc") {
        lx.expect('(');
        ObjPtr a = parse_obj_inner(lx);
        lx.expect(',');
        ObjPtr b = parse_obj_inner(lx);
        lx.expect(',');
        ObjPtr c = parse_obj_inner(lx);
        bool inv = parse_inv_flag(lx);
        lx.expect(')');
        return mor_assoc(a, b, c, inv);
    }
    if (head == "lunit" || head == "runit") {
        lx.expect('(');
        ObjPtr a = parse_obj_inner(lx);
        bool inv = parse_inv_flag(lx);
        lx.expect(')');
        return head == "lunit" ? mor_lunit(a, inv) : mor_runit(a, inv);
    }
    if (head == "braid") {
        lx.expect('(');
        ObjPtr a = parse_obj_inner(lx);
        lx.expect(',');
        ObjPtr b = parse_obj_inner(lx);
        bool inv = parse_inv_flag(lx);
        lx.expect(')');
        return mor_braid(a, b, inv);
    }
    if (head == "scale") {
        lx.expect('(');
        double re = lx.number();
        lx.expect(',');
        double im = lx.number();
        lx.expect(',');
        MorPtr f = parse_mor(lx);
        lx.expect(')');
        return mor_scale(Cplx{re, im}, f);
    }
    if (head == "sum") {
        lx.expect('(');
        std::vector<MorPtr> terms;
        terms.push_back(parse_mor(lx));
        while (lx.accept(',')) terms.push_back(parse_mor(lx));
        lx.expect(')');
        return mor_sum(std::move(terms));
    }
    throw SyntaxError("unknown morphism head '" + head + "'", at);
}

} // namespace

MorPtr parse(const std::string& text) {
    Lexer lx(text);
    MorPtr m = parse_mor(lx);
    if (!lx.eof()) throw SyntaxError("trailing input", lx.pos);
    return m;
}

ObjPtr parse_obj(const std::string& text) {
    Lexer lx(text);
    ObjPtr o = parse_obj_inner(lx);
    if (!lx.eof()) throw SyntaxError("trailing input", lx.pos);
    return o;
}

} // namespace orbcat
