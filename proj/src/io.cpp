#include "orbcat/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace orbcat {

using nlohmann::json;

namespace {

// Dense complex matrix as [[ [re,im], ... ], ...].
json matrix_to_json(const InstanceMatrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows; ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols; ++j)
            row.push_back(json::array({m.at(i, j).real(), m.at(i, j).imag()}));
        rows.push_back(std::move(row));
    }
    return rows;
}

InstanceMatrix matrix_from_json(const json& j) {
    InstanceMatrix m;
    m.rows = int(j.size());
    m.cols = m.rows ? int(j.at(0).size()) : 0;
    for (const auto& row : j) {
        if (int(row.size()) != m.cols) throw Error("ragged matrix in instance file");
        for (const auto& z : row)
            m.a.push_back({z.at(0).get<double>(), z.at(1).get<double>()});
    }
    return m;
}

json summands_to_json(const std::vector<std::pair<std::string, int>>& s) {
    json out = json::array();
    for (const auto& [lbl, flip] : s) out.push_back(json::array({lbl, flip}));
    return out;
}

std::vector<std::pair<std::string, int>> summands_from_json(const json& j) {
    std::vector<std::pair<std::string, int>> out;
    for (const auto& e : j) out.emplace_back(e.at(0).get<std::string>(), e.at(1).get<int>());
    return out;
}

std::string key6(const CategorySpec& s, const std::array<int, 6>& t) {
    std::string k;
    for (int i = 0; i < 6; ++i) {
        if (i) k += ",";
        k += s.label(t[i]);
    }
    return k;
}

std::string key3(const CategorySpec& s, const std::array<int, 3>& t) {
    return s.label(t[0]) + "," + s.label(t[1]) + "," + s.label(t[2]);
}

} // namespace

std::string instance_to_json_text(const Instance& in) {
    const CategorySpec& s = in.spec;
    json j;
    j["name"] = in.name;
    j["simples"] = s.simples;
    j["unit"] = s.label(s.unit);
    json dual = json::object();
    json parity = json::object();
    json twist = json::object();
    for (int i = 0; i < s.count(); ++i) {
        dual[s.label(i)] = s.label(s.dual[i]);
        parity[s.label(i)] = s.parity[i] ? "odd" : "even";
        twist[s.label(i)] = json::array({s.twist[i].real(), s.twist[i].imag()});
    }
    j["dual"] = dual;
    j["parity"] = parity;
    j["twist"] = twist;
    json fusion = json::array();
    for (const auto& t : s.fusion)
        fusion.push_back(json::array({s.label(t[0]), s.label(t[1]), s.label(t[2])}));
    j["fusion"] = fusion;
    json F = json::object(), R = json::object();
    for (const auto& [t, v] : s.F) F[key6(s, t)] = json::array({v.real(), v.imag()});
    for (const auto& [t, v] : s.R) R[key3(s, t)] = json::array({v.real(), v.imag()});
    j["F"] = F;
    j["R"] = R;
    j["scalar_mode"] =
        s.mode == ScalarMode::ExactGaussianRational ? "exact_gaussian_rational" : "complex_f64";
    j["tol"] = s.tol;

    json alg;
    alg["summands"] = summands_to_json(in.algebra.summands);
    alg["mu"] = matrix_to_json(in.algebra.mu);
    alg["iota"] = matrix_to_json(in.algebra.iota);
    json grp;
    json elements = json::object();
    for (const auto& [n, m] : in.algebra.group) elements[n] = matrix_to_json(m);
    grp["elements"] = elements;
    grp["parity_involution"] = in.algebra.parity_involution;
    alg["group"] = grp;
    j["algebra"] = alg;

    json mods = json::array();
    for (const auto& m : in.modules) {
        json jm;
        jm["name"] = m.name;
        jm["summands"] = summands_to_json(m.summands);
        jm["action"] = matrix_to_json(m.action);
        mods.push_back(std::move(jm));
    }
    j["modules"] = mods;
    return j.dump(1);
}

Instance instance_from_json_text(const std::string& text) {
    json j = json::parse(text);
    Instance in;
    in.name = j.value("name", "instance");
    CategorySpec& s = in.spec;
    s.simples = j.at("simples").get<std::vector<std::string>>();
    s.unit = s.index_of(j.at("unit").get<std::string>());
    s.dual.resize(s.count());
    s.parity.resize(s.count());
    s.twist.resize(s.count());
    for (int i = 0; i < s.count(); ++i) {
        s.dual[i] = s.index_of(j.at("dual").at(s.label(i)).get<std::string>());
        s.parity[i] = j.at("parity").at(s.label(i)).get<std::string>() == "odd" ? 1 : 0;
        auto tw = j.at("twist").at(s.label(i));
        s.twist[i] = {tw.at(0).get<double>(), tw.at(1).get<double>()};
    }
    for (const auto& t : j.at("fusion"))
        s.fusion.insert({s.index_of(t.at(0).get<std::string>()),
                         s.index_of(t.at(1).get<std::string>()),
                         s.index_of(t.at(2).get<std::string>())});
    auto split_labels = [&s](const std::string& k) {
        std::vector<int> out;
        std::stringstream ss(k);
        std::string part;
        while (std::getline(ss, part, ',')) out.push_back(s.index_of(part));
        return out;
    };
    for (const auto& [k, v] : j.at("F").items()) {
        auto lb = split_labels(k);
        if (lb.size() != 6) throw Error("bad F key: " + k);
        s.F[{lb[0], lb[1], lb[2], lb[3], lb[4], lb[5]}] = {v.at(0).get<double>(),
                                                           v.at(1).get<double>()};
    }
    for (const auto& [k, v] : j.at("R").items()) {
        auto lb = split_labels(k);
        if (lb.size() != 3) throw Error("bad R key: " + k);
        s.R[{lb[0], lb[1], lb[2]}] = {v.at(0).get<double>(), v.at(1).get<double>()};
    }
    s.mode = j.at("scalar_mode").get<std::string>() == "exact_gaussian_rational"
                 ? ScalarMode::ExactGaussianRational
                 : ScalarMode::ComplexF64;
    s.tol = j.value("tol", 1e-9);

    const json& alg = j.at("algebra");
    in.algebra.summands = summands_from_json(alg.at("summands"));
    in.algebra.mu = matrix_from_json(alg.at("mu"));
    in.algebra.iota = matrix_from_json(alg.at("iota"));
    for (const auto& [n, m] : alg.at("group").at("elements").items())
        in.algebra.group.emplace_back(n, matrix_from_json(m));
    in.algebra.parity_involution = alg.at("group").value("parity_involution", "");

    for (const auto& jm : j.value("modules", json::array())) {
        InstanceModule m;
        m.name = jm.at("name").get<std::string>();
        m.summands = summands_from_json(jm.at("summands"));
        m.action = matrix_from_json(jm.at("action"));
        in.modules.push_back(std::move(m));
    }
    return in;
}

Instance load_instance(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error("cannot open instance file: " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return instance_from_json_text(ss.str());
}

void save_instance(const Instance& in, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw Error("cannot write instance file: " + path);
    f << instance_to_json_text(in) << "\n";
}

// ---------------------------------------------------------------------------
// Built-in instances.

namespace {

InstanceMatrix dense(int rows, int cols) {
    InstanceMatrix m;
    m.rows = rows;
    m.cols = cols;
    m.a.assign(size_t(rows) * cols, Cplx{0.0, 0.0});
    return m;
}

// Group-algebra mu over the tree basis of V x V.
InstanceMatrix group_mu(Engine<Cplx>& probe, const ConcreteObject& V,
                        const std::map<int, int>& row_of_label) {
    WordPtr wv = word_leaf(V);
    auto b = probe.basis(word_tensor(wv, wv));
    InstanceMatrix mu = dense(int(row_of_label.size()), b->size());
    for (int jx = 0; jx < b->size(); ++jx) mu.at(row_of_label.at(b->trees[jx].root), jx) = 1.0;
    return mu;
}

InstanceModule induced_module(const std::string& name, const Instance& in,
                              const std::vector<std::pair<std::string, int>>& x_summands) {
    Realized<Cplx> r = realize<Cplx>(in);
    ConcreteObject x = object_from_summands<Cplx>(in.spec, x_summands);
    Module<Cplx> f = r.theory->induce(x);
    InstanceModule out;
    out.name = name;
    for (const auto& s : f.W.sum) out.summands.emplace_back(in.spec.label(s.label), s.flip);
    out.action = dense(f.action.m.rows, f.action.m.cols);
    for (size_t i = 0; i < f.action.m.a.size(); ++i) out.action.a[i] = f.action.m.a[i];
    return out;
}

Instance pointed_instance(const std::string& name, CategorySpec spec,
                          const std::vector<std::string>& basis_labels,
                          const std::vector<std::pair<std::string, InstanceMatrix>>& group,
                          const std::string& parity_involution) {
    Instance in;
    in.name = name;
    in.spec = std::move(spec);
    for (const auto& lbl : basis_labels) in.algebra.summands.emplace_back(lbl, 0);
    Engine<Cplx> probe(in.spec);
    ConcreteObject V;
    std::map<int, int> row;
    for (int i = 0; i < int(basis_labels.size()); ++i) {
        V.sum.push_back({in.spec.index_of(basis_labels[i]), 0});
        row[in.spec.index_of(basis_labels[i])] = i;
    }
    in.algebra.mu = group_mu(probe, V, row);
    in.algebra.iota = dense(int(basis_labels.size()), 1);
    in.algebra.iota.at(row.at(in.spec.unit), 0) = 1.0;
    in.algebra.group = group;
    in.algebra.parity_involution = parity_involution;
    return in;
}

} // namespace

std::vector<std::string> builtin_names() { return {"ph", "ising", "z2", "z3", "z4"}; }

Instance builtin_instance(const std::string& name) {
    if (name == "ph") {
        CategorySpec spec = pointed_hyperbolic_z2z2();
        InstanceMatrix e = dense(2, 2), g = dense(2, 2);
        e.at(0, 0) = e.at(1, 1) = 1.0;
        g.at(0, 0) = 1.0;
        g.at(1, 1) = -1.0;
        Instance in = pointed_instance("ph", spec, {"X00", "X10"}, {{"e", e}, {"g", g}}, "e");
        in.modules.push_back(induced_module("M01", in, {{"X01", 0}}));
        in.modules.push_back(induced_module("Mbig", in, {{"X00", 0}, {"X01", 0}}));
        return in;
    }
    if (name == "ising") {
        CategorySpec spec = ising();
        Instance in;
        in.name = "ising";
        in.spec = spec;
        in.algebra.summands = {{"1", 0}, {"psi", 0}};
        Engine<Cplx> probe(in.spec);
        ConcreteObject V{{{spec.index_of("1"), 0}, {spec.index_of("psi"), 0}}};
        std::map<int, int> row{{spec.index_of("1"), 0}, {spec.index_of("psi"), 1}};
        in.algebra.mu = group_mu(probe, V, row);
        in.algebra.iota = dense(2, 1);
        in.algebra.iota.at(0, 0) = 1.0;
        InstanceMatrix e = dense(2, 2), p = dense(2, 2);
        e.at(0, 0) = e.at(1, 1) = 1.0;
        p.at(0, 0) = 1.0;
        p.at(1, 1) = -1.0;
        in.algebra.group = {{"e", e}, {"p", p}};
        in.algebra.parity_involution = "p";
        in.modules.push_back(induced_module("Fsigma", in, {{"sigma", 0}}));
        // Parity-reversed V: same action entries over flipped summands.
        InstanceModule piv;
        piv.name = "PiV";
        piv.summands = {{"1", 1}, {"psi", 1}};
        piv.action = in.algebra.mu;
        in.modules.push_back(std::move(piv));
        return in;
    }
    if (name == "z2" || name == "z3" || name == "z4") {
        const int n = name[1] - '0';
        CategorySpec spec = regular_pointed(n);
        if (n == 3) spec.mode = ScalarMode::ComplexF64; // character scalars leave Q(i)
        std::vector<std::string> labels;
        for (int i = 0; i < n; ++i) labels.push_back(spec.label(i));
        std::vector<std::pair<std::string, InstanceMatrix>> group;
        for (int k = 0; k < n; ++k) {
            InstanceMatrix m = dense(n, n);
            for (int b = 0; b < n; ++b) m.at(b, b) = std::polar(1.0, 2.0 * M_PI * k * b / n);
            // Snap character values that are exact Gaussian units.
            if (n != 3)
                for (auto& z : m.a) z = {std::round(z.real()), std::round(z.imag())};
            group.emplace_back(k == 0 ? "e" : "c" + std::to_string(k), m);
        }
        return pointed_instance(name, spec, labels, group, "e");
    }
    throw Error("unknown builtin instance: " + name);
}

} // namespace orbcat
