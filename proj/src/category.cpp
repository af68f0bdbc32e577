#include "orbcat/category.hpp"

#include <cmath>

namespace orbcat {

int CategorySpec::index_of(const std::string& lbl) const {
    for (int i = 0; i < count(); ++i)
        if (simples[i] == lbl) return i;
    throw Error("unknown simple label: " + lbl);
}

std::vector<int> CategorySpec::fuse(int a, int b) const {
    std::vector<int> out;
    for (int c = 0; c < count(); ++c)
        if (fusable(a, b, c)) out.push_back(c);
    return out;
}

bool CategorySpec::admissible_f(const std::array<int, 6>& t) const {
    auto [a, b, c, d, e, f] = t;
    return fusable(a, b, e) && fusable(e, c, d) && fusable(b, c, f) && fusable(a, f, d);
}

std::vector<std::array<int, 6>> CategorySpec::admissible_f_tuples() const {
    std::vector<std::array<int, 6>> out;
    const int n = count();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d)
                    for (int e = 0; e < n; ++e)
                        for (int f = 0; f < n; ++f)
                            if (admissible_f({a, b, c, d, e, f})) out.push_back({a, b, c, d, e, f});
    return out;
}

std::vector<std::array<int, 3>> CategorySpec::admissible_r_triples() const {
    std::vector<std::array<int, 3>> out;
    const int n = count();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (fusable(a, b, c)) out.push_back({a, b, c});
    return out;
}

// ---------------------------------------------------------------------------
// Constructors

namespace {

struct ProductGroup {
    std::vector<int> orders;
    int size() const {
        int s = 1;
        for (int n : orders) s *= n;
        return s;
    }
    std::vector<int> decode(int idx) const {
        std::vector<int> t(orders.size());
        for (int i = int(orders.size()) - 1; i >= 0; --i) {
            t[i] = idx % orders[i];
            idx /= orders[i];
        }
        return t;
    }
    int encode(const std::vector<int>& t) const {
        int idx = 0;
        for (size_t i = 0; i < orders.size(); ++i) idx = idx * orders[i] + t[i];
        return idx;
    }
    int add(int a, int b) const {
        auto ta = decode(a), tb = decode(b);
        for (size_t i = 0; i < orders.size(); ++i) ta[i] = (ta[i] + tb[i]) % orders[i];
        return encode(ta);
    }
    int neg(int a) const {
        auto t = decode(a);
        for (size_t i = 0; i < orders.size(); ++i) t[i] = (orders[i] - t[i]) % orders[i];
        return encode(t);
    }
    std::string name(int idx) const {
        std::string s = "X";
        for (int d : decode(idx)) s += std::to_string(d);
        return s;
    }
};

} // namespace

CategorySpec pointed(const PointedInput& in) {
    ProductGroup g{in.orders};
    const int n = g.size();
    if (int(in.beta.size()) != n) throw Error("beta table has wrong size");
    for (const auto& row : in.beta)
        if (int(row.size()) != n) throw Error("beta table has wrong size");
    if (int(in.parity_hom.size()) != n) throw Error("parity table has wrong size");

    const double tol = 1e-12;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            for (int c = 0; c < n; ++c) {
                if (std::abs(in.beta[g.add(a, b)][c] - in.beta[a][c] * in.beta[b][c]) > tol ||
                    std::abs(in.beta[a][g.add(b, c)] - in.beta[a][b] * in.beta[a][c]) > tol)
                    throw NotBicharacter("beta is not multiplicative in each slot");
            }
        }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (((in.parity_hom[a] + in.parity_hom[b]) % 2) != in.parity_hom[g.add(a, b)])
                throw ParityNotHomomorphism("parity map is not a homomorphism");

    CategorySpec s;
    for (int i = 0; i < n; ++i)
        s.simples.push_back(in.names.empty() ? g.name(i) : in.names.at(i));
    s.unit = g.encode(std::vector<int>(in.orders.size(), 0));
    s.dual.resize(n);
    s.parity = in.parity_hom;
    s.twist.resize(n);
    for (int a = 0; a < n; ++a) {
        s.dual[a] = g.neg(a);
        s.twist[a] = in.beta[a][a];
        for (int b = 0; b < n; ++b) {
            s.fusion.insert({a, b, g.add(a, b)});
            s.R[{a, b, g.add(a, b)}] = in.beta[a][b];
        }
    }
    for (const auto& t : s.admissible_f_tuples()) s.F[t] = Cplx{1.0, 0.0};
    s.mode = ScalarMode::ExactGaussianRational;
    s.tol = 1e-9;
    return s;
}

CategorySpec pointed_hyperbolic_z2z2() {
    PointedInput in;
    in.orders = {2, 2};
    ProductGroup g{in.orders};
    in.beta.assign(4, std::vector<Cplx>(4));
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            auto ta = g.decode(a), tb = g.decode(b);
            in.beta[a][b] = (ta[0] * tb[1]) % 2 ? Cplx{-1.0, 0.0} : Cplx{1.0, 0.0};
        }
    in.parity_hom.assign(4, 0);
    return pointed(in);
}

CategorySpec regular_pointed(int n) {
    if (n < 1) throw Error("regular_pointed needs n >= 1");
    PointedInput in;
    in.orders = {n};
    in.beta.assign(n, std::vector<Cplx>(n, Cplx{1.0, 0.0}));
    in.parity_hom.assign(n, 0);
    return pointed(in);
}

CategorySpec ising() {
    CategorySpec s;
    s.simples = {"1", "psi", "sigma"};
    s.unit = 0;
    s.dual = {0, 1, 2};
    s.parity = {0, 1, 0};
    const int u = 0, p = 1, o = 2;
    auto ins = [&s](int a, int b, int c) { s.fusion.insert({a, b, c}); };
    for (int a = 0; a < 3; ++a) {
        ins(u, a, a);
        ins(a, u, a);
    }
    ins(p, p, u);
    ins(p, o, o);
    ins(o, p, o);
    ins(o, o, u);
    ins(o, o, p);

    const double is2 = 1.0 / std::sqrt(2.0);
    for (const auto& t : s.admissible_f_tuples()) s.F[t] = Cplx{1.0, 0.0};
    s.F[{o, o, o, o, u, u}] = Cplx{is2, 0.0};
    s.F[{o, o, o, o, u, p}] = Cplx{is2, 0.0};
    s.F[{o, o, o, o, p, u}] = Cplx{is2, 0.0};
    s.F[{o, o, o, o, p, p}] = Cplx{-is2, 0.0};
    s.F[{p, o, p, o, o, o}] = Cplx{-1.0, 0.0};
    s.F[{o, p, o, p, o, o}] = Cplx{-1.0, 0.0};

    s.R.clear();
    auto phase = [](double turns) { return Cplx{std::cos(turns), std::sin(turns)}; };
    for (int a = 0; a < 3; ++a) {
        s.R[{u, a, a}] = Cplx{1.0, 0.0};
        s.R[{a, u, a}] = Cplx{1.0, 0.0};
    }
    s.R[{p, p, u}] = Cplx{-1.0, 0.0};
    s.R[{p, o, o}] = Cplx{0.0, -1.0};
    s.R[{o, p, o}] = Cplx{0.0, -1.0};
    s.R[{o, o, u}] = phase(-M_PI / 8.0);
    s.R[{o, o, p}] = phase(3.0 * M_PI / 8.0);

    s.twist = {Cplx{1.0, 0.0}, Cplx{-1.0, 0.0}, phase(M_PI / 8.0)};
    s.mode = ScalarMode::ComplexF64;
    s.tol = 1e-9;
    return s;
}

} // namespace orbcat
