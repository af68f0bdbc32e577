#ifndef ORBCAT_EVAL_IMPL_HPP
#define ORBCAT_EVAL_IMPL_HPP

// Template implementation of Engine<K>; included by eval.hpp.

namespace orbcat {

template <class K>
WordPtr Engine<K>::unit_word() const {
    ConcreteObject u;
    u.sum.push_back({spec_.unit, 0});
    return word_leaf(std::move(u));
}

template <class K>
WordPtr Engine<K>::resolve(const ObjPtr& o, const Env<K>& env) const {
    switch (o->kind) {
        case ObjExpr::Kind::Unit: return unit_word();
        case ObjExpr::Kind::Gen: {
            auto it = env.objects.find(o->name);
            if (it == env.objects.end()) throw UnboundSymbol("unbound object: " + o->name);
            return word_leaf(it->second);
        }
        case ObjExpr::Kind::Tensor:
            return word_tensor(resolve(o->left, env), resolve(o->right, env));
    }
    throw Error("unreachable");
}

template <class K>
std::shared_ptr<const WordBasis> Engine<K>::basis(const WordPtr& w) {
    const std::string key = word_key(w);
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = bases_.find(key);
        if (it != bases_.end()) return it->second;
    }
    auto b = build_basis(spec_, w);
    std::lock_guard<std::mutex> lock(mu_);
    return bases_.emplace(key, std::move(b)).first->second;
}

template <class K>
std::shared_ptr<const typename Engine<K>::PairLayout> Engine<K>::pair_layout(const WordPtr& w) {
    if (w->leaf) throw Error("pair layout of a leaf word");
    const std::string key = word_key(w);
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = layouts_.find(key);
        if (it != layouts_.end()) return it->second;
    }
    auto bw = basis(w);
    auto bl = basis(w->l);
    auto br = basis(w->r);
    const int n_left_nodes = int(bl->shape.nodes.size());
    const int n_right_nodes = int(br->shape.nodes.size());
    const int n_left_leaves = int(bl->shape.leaves.size());
    auto lay = std::make_shared<PairLayout>();
    lay->split.resize(bw->trees.size());
    for (int i = 0; i < bw->size(); ++i) {
        const BasisTree& t = bw->trees[i];
        std::vector<int> cl(t.choice.begin(), t.choice.begin() + n_left_leaves);
        std::vector<int> cr(t.choice.begin() + n_left_leaves, t.choice.end());
        std::vector<int> ll(t.labels.begin(), t.labels.begin() + n_left_nodes);
        std::vector<int> lr(t.labels.begin() + n_left_nodes,
                            t.labels.begin() + n_left_nodes + n_right_nodes);
        int il = bl->find(cl, ll);
        int ir = br->find(cr, lr);
        if (il < 0 || ir < 0) throw Error("pair layout lookup failed");
        lay->split[i] = {il, ir, t.root};
        lay->find[{il, ir, t.root}] = i;
    }
    std::lock_guard<std::mutex> lock(mu_);
    return layouts_.emplace(key, std::move(lay)).first->second;
}

template <class K>
Mor<K> Engine<K>::identity(const WordPtr& w) {
    return Mor<K>{w, w, Matrix<K>::identity(tree_count(w))};
}

template <class K>
Mor<K> Engine<K>::assoc(const WordPtr& a, const WordPtr& b, const WordPtr& c, bool inverse) {
    WordPtr dom = word_tensor(a, word_tensor(b, c));
    WordPtr cod = word_tensor(word_tensor(a, b), c);
    auto bd = basis(dom);
    auto bc = basis(cod);
    const int na = int(build_shape(a).nodes.size());
    const int nb = int(build_shape(b).nodes.size());
    const int nc = int(build_shape(c).nodes.size());
    Matrix<K> m(bc->size(), bd->size());
    for (int j = 0; j < bd->size(); ++j) {
        const BasisTree& t = bd->trees[j];
        // dom layout: [a nodes][b nodes][c nodes][bc][root]
        const int xa = t.labels[na - 1];
        const int xb = t.labels[na + nb - 1];
        const int xc = t.labels[na + nb + nc - 1];
        const int f = t.labels[na + nb + nc];
        const int d = t.root;
        for (int e = 0; e < spec_.count(); ++e) {
            if (!spec_.fusable(xa, xb, e) || !spec_.fusable(e, xc, d)) continue;
            // cod layout: [a nodes][b nodes][ab][c nodes][root]
            std::vector<int> labels;
            labels.reserve(t.labels.size());
            labels.insert(labels.end(), t.labels.begin(), t.labels.begin() + na + nb);
            labels.push_back(e);
            labels.insert(labels.end(), t.labels.begin() + na + nb,
                          t.labels.begin() + na + nb + nc);
            labels.push_back(d);
            int i = bc->find(t.choice, labels);
            if (i < 0) throw Error("assoc target tree not found");
            m.at(i, j) = data_.fval(xa, xb, xc, d, e, f);
        }
    }
    if (!inverse) return Mor<K>{dom, cod, std::move(m)};
    return Mor<K>{cod, dom, inverse_matrix(m)};
}

template <class K>
Mor<K> Engine<K>::lunit(const WordPtr& a, bool inverse) {
    WordPtr dom = word_tensor(unit_word(), a);
    auto bd = basis(dom);
    auto ba = basis(a);
    Matrix<K> m(ba->size(), bd->size());
    for (int j = 0; j < bd->size(); ++j) {
        const BasisTree& t = bd->trees[j];
        std::vector<int> ch(t.choice.begin() + 1, t.choice.end());
        std::vector<int> labels(t.labels.begin() + 1, t.labels.end() - 1);
        int i = ba->find(ch, labels);
        if (i < 0) throw Error("lunit target tree not found");
        m.at(i, j) = ScalarOps<K>::one();
    }
    if (!inverse) return Mor<K>{dom, a, std::move(m)};
    return Mor<K>{a, dom, m.transposed()};
}

template <class K>
Mor<K> Engine<K>::runit(const WordPtr& a, bool inverse) {
    WordPtr dom = word_tensor(a, unit_word());
    auto bd = basis(dom);
    auto ba = basis(a);
    const int na = int(ba->shape.nodes.size());
    Matrix<K> m(ba->size(), bd->size());
    for (int j = 0; j < bd->size(); ++j) {
        const BasisTree& t = bd->trees[j];
        std::vector<int> ch(t.choice.begin(), t.choice.end() - 1);
        std::vector<int> labels(t.labels.begin(), t.labels.begin() + na);
        int i = ba->find(ch, labels);
        if (i < 0) throw Error("runit target tree not found");
        m.at(i, j) = ScalarOps<K>::one();
    }
    if (!inverse) return Mor<K>{dom, a, std::move(m)};
    return Mor<K>{a, dom, m.transposed()};
}

template <class K>
Mor<K> Engine<K>::braid(const WordPtr& a, const WordPtr& b, bool inverse) {
    if (a->leaf && b->leaf) {
        WordPtr dom = word_tensor(a, b);
        WordPtr cod = word_tensor(b, a);
        auto bd = basis(dom);
        auto bc = basis(cod);
        Matrix<K> m(bc->size(), bd->size());
        for (int j = 0; j < bd->size(); ++j) {
            const BasisTree& t = bd->trees[j];
            const int i_sum = t.choice[0], j_sum = t.choice[1];
            const Summand& sa = a->obj.sum[i_sum];
            const Summand& sb = b->obj.sum[j_sum];
            int i = bc->find({j_sum, i_sum}, {sb.label, sa.label, t.root});
            if (i < 0) throw Error("braid target tree not found");
            K v = data_.rval(sa.label, sb.label, t.root);
            if (summand_parity(spec_, sa) && summand_parity(spec_, sb)) v = -v;
            m.at(i, j) = v;
        }
        if (!inverse) return Mor<K>{dom, cod, std::move(m)};
        return Mor<K>{cod, dom, inverse_matrix(m)};
    }
    if (!b->leaf) {
        // c_{a,b1 x b2} via the hexagon.
        const WordPtr b1 = b->l, b2 = b->r;
        Mor<K> step = assoc(a, b1, b2, false);
        step = compose(tensor_mor(braid(a, b1, false), identity(b2)), step);
        step = compose(assoc(b1, a, b2, true), step);
        step = compose(tensor_mor(identity(b1), braid(a, b2, false)), step);
        step = compose(assoc(b1, b2, a, false), step);
        if (!inverse) return step;
        return Mor<K>{step.cod, step.dom, inverse_matrix(step.m)};
    }
    // a = a1 x a2, b a leaf.
    const WordPtr a1 = a->l, a2 = a->r;
    Mor<K> step = assoc(a1, a2, b, true);
    step = compose(tensor_mor(identity(a1), braid(a2, b, false)), step);
    step = compose(assoc(a1, b, a2, false), step);
    step = compose(tensor_mor(braid(a1, b, false), identity(a2)), step);
    step = compose(assoc(b, a1, a2, true), step);
    if (!inverse) return step;
    return Mor<K>{step.cod, step.dom, inverse_matrix(step.m)};
}

template <class K>
Mor<K> Engine<K>::parity_operator(const WordPtr& w) {
    auto bw = basis(w);
    Matrix<K> m(bw->size(), bw->size());
    for (int i = 0; i < bw->size(); ++i)
        m.at(i, i) = bw->trees[i].parity ? -ScalarOps<K>::one() : ScalarOps<K>::one();
    return Mor<K>{w, w, std::move(m)};
}

template <class K>
Mor<K> Engine<K>::compose(const Mor<K>& after, const Mor<K>& before) {
    if (!word_equal(before.cod, after.dom))
        throw Error("compose: interface words differ");
    return Mor<K>{before.dom, after.cod, after.m * before.m};
}

template <class K>
Mor<K> Engine<K>::tensor_mor(const Mor<K>& f, const Mor<K>& g) {
    WordPtr dom = word_tensor(f.dom, g.dom);
    WordPtr cod = word_tensor(f.cod, g.cod);
    auto lay_d = pair_layout(dom);
    auto lay_c = pair_layout(cod);
    auto bfd = basis(f.dom);
    auto bgd = basis(g.dom);
    auto bfc = basis(f.cod);
    auto bgc = basis(g.cod);
    Matrix<K> m(int(lay_c->split.size()), int(lay_d->split.size()));
    // Split g by parity: the super interchange inserts (-1)^{|left dom| |g|}.
    for (int pg = 0; pg <= 1; ++pg) {
        // Collect g entries of parity pg.
        std::vector<std::tuple<int, int, K>> gent;
        for (int r = 0; r < g.m.rows; ++r)
            for (int cidx = 0; cidx < g.m.cols; ++cidx) {
                const K& v = g.m.at(r, cidx);
                if (ScalarOps<K>::abs(v) == 0.0) continue;
                int p = bgd->trees[cidx].parity ^ bgc->trees[r].parity;
                if (p == pg) gent.emplace_back(r, cidx, v);
            }
        if (gent.empty()) continue;
        for (int fr = 0; fr < f.m.rows; ++fr)
            for (int fc = 0; fc < f.m.cols; ++fc) {
                const K& fv = f.m.at(fr, fc);
                if (ScalarOps<K>::abs(fv) == 0.0) continue;
                const int root_f_dom = bfd->trees[fc].root;
                const int root_f_cod = bfc->trees[fr].root;
                const int sign = (pg && bfd->trees[fc].parity) ? -1 : 1;
                for (const auto& [gr, gc, gv] : gent) {
                    const int root_g_dom = bgd->trees[gc].root;
                    const int root_g_cod = bgc->trees[gr].root;
                    for (int root = 0; root < spec_.count(); ++root) {
                        if (!spec_.fusable(root_f_dom, root_g_dom, root)) continue;
                        auto itd = lay_d->find.find({fc, gc, root});
                        if (itd == lay_d->find.end()) continue;
                        if (!spec_.fusable(root_f_cod, root_g_cod, root)) continue;
                        auto itc = lay_c->find.find({fr, gr, root});
                        if (itc == lay_c->find.end()) continue;
                        K v = fv * gv;
                        if (sign < 0) v = -v;
                        m.at(itc->second, itd->second) = m.at(itc->second, itd->second) + v;
                    }
                }
            }
    }
    return Mor<K>{dom, cod, std::move(m)};
}

template <class K>
Mor<K> Engine<K>::scale(const Mor<K>& f, K s) {
    return Mor<K>{f.dom, f.cod, f.m.scaled(s)};
}

template <class K>
Mor<K> Engine<K>::eval(const MorPtr& e, const Env<K>& env) {
    switch (e->kind) {
        case MorExpr::Kind::Identity:
            return identity(resolve(e->a, env));
        case MorExpr::Kind::Gen: {
            auto it = env.gens.find(e->name);
            if (it == env.gens.end()) throw UnboundSymbol("unbound generator: " + e->name);
            auto decl = env.ctx.gens.find(e->name);
            if (decl != env.ctx.gens.end()) {
                if (!word_equal(it->second.dom, resolve(decl->second.dom, env)) ||
                    !word_equal(it->second.cod, resolve(decl->second.cod, env)))
                    throw Error("binding for generator '" + e->name +
                                "' does not match its declared boundary");
            }
            return it->second;
        }
        case MorExpr::Kind::Compose:
            return compose(eval(e->f, env), eval(e->g, env));
        case MorExpr::Kind::TensorM:
            return tensor_mor(eval(e->f, env), eval(e->g, env));
        case MorExpr::Kind::Assoc:
            return assoc(resolve(e->a, env), resolve(e->b, env), resolve(e->c, env), e->inverse);
        case MorExpr::Kind::LUnit:
            return lunit(resolve(e->a, env), e->inverse);
        case MorExpr::Kind::RUnit:
            return runit(resolve(e->a, env), e->inverse);
        case MorExpr::Kind::Braid:
            return braid(resolve(e->a, env), resolve(e->b, env), e->inverse);
        case MorExpr::Kind::Scale:
            return scale(eval(e->f, env), ScalarOps<K>::from_complex(e->scalar));
        case MorExpr::Kind::Sum: {
            Mor<K> acc = eval(e->terms[0], env);
            for (size_t i = 1; i < e->terms.size(); ++i) {
                Mor<K> t = eval(e->terms[i], env);
                if (!word_equal(t.dom, acc.dom) || !word_equal(t.cod, acc.cod))
                    throw Error("sum terms evaluate to different shapes");
                acc.m = acc.m + t.m;
            }
            return acc;
        }
    }
    throw Error("unreachable");
}

template <class K>
std::vector<HomElem<K>> Engine<K>::hom_basis(const ConcreteObject& x, const ConcreteObject& y) {
    std::vector<HomElem<K>> out;
    WordPtr wx = word_leaf(x), wy = word_leaf(y);
    for (int i = 0; i < x.size(); ++i)
        for (int j = 0; j < y.size(); ++j) {
            if (x.sum[i].label != y.sum[j].label) continue;
            Matrix<K> m(y.size(), x.size());
            m.at(j, i) = ScalarOps<K>::one();
            int p = summand_parity(spec_, x.sum[i]) ^ summand_parity(spec_, y.sum[j]);
            out.push_back({Mor<K>{wx, wy, std::move(m)}, p ? Parity::Odd : Parity::Even});
        }
    return out;
}

template <class K>
Parity Engine<K>::parity_of_mor(const Mor<K>& f) {
    auto bd = basis(f.dom);
    auto bc = basis(f.cod);
    bool even = false, odd = false;
    for (int i = 0; i < f.m.rows; ++i)
        for (int j = 0; j < f.m.cols; ++j) {
            if (ScalarOps<K>::is_zero(f.m.at(i, j), tol_)) continue;
            (bd->trees[j].parity ^ bc->trees[i].parity ? odd : even) = true;
        }
    if (even && odd) return Parity::Mixed;
    if (odd) return Parity::Odd;
    return Parity::Even;
}

template <class K>
Mor<K> Engine<K>::parity_part(const Mor<K>& f, int p) {
    auto bd = basis(f.dom);
    auto bc = basis(f.cod);
    Mor<K> out = f;
    for (int i = 0; i < f.m.rows; ++i)
        for (int j = 0; j < f.m.cols; ++j)
            if ((bd->trees[j].parity ^ bc->trees[i].parity) != p)
                out.m.at(i, j) = ScalarOps<K>::zero();
    return out;
}

template <class K>
void Engine<K>::check_schur(const Mor<K>& f) {
    auto bd = basis(f.dom);
    auto bc = basis(f.cod);
    for (int i = 0; i < f.m.rows; ++i)
        for (int j = 0; j < f.m.cols; ++j)
            if (bd->trees[j].root != bc->trees[i].root &&
                !ScalarOps<K>::is_zero(f.m.at(i, j), tol_))
                throw Error("morphism violates Schur blocks: entry between " +
                            spec_.label(bc->trees[i].root) + " and " +
                            spec_.label(bd->trees[j].root));
}

template <class K>
FactorResult<K> Engine<K>::factor(const Mor<K>& f, FactorMode mode) {
    if (parity_of_mor(f) == Parity::Mixed)
        throw MixedParityInput("factor requires a parity-homogeneous (even) morphism");
    auto bd = basis(f.dom);
    auto bc = basis(f.cod);

    // (label, parity) blocks on both sides.
    std::map<std::pair<int, int>, std::vector<int>> dom_blk, cod_blk;
    for (int j = 0; j < bd->size(); ++j)
        dom_blk[{bd->trees[j].root, bd->trees[j].parity}].push_back(j);
    for (int i = 0; i < bc->size(); ++i)
        cod_blk[{bc->trees[i].root, bc->trees[i].parity}].push_back(i);

    std::set<std::pair<int, int>> keys;
    for (const auto& [k, v] : dom_blk) keys.insert(k);
    for (const auto& [k, v] : cod_blk) keys.insert(k);

    FactorResult<K> res;
    std::vector<std::vector<K>> cols_or_rows; // accumulated full-size vectors
    for (const auto& key : keys) {
        const auto di = dom_blk.count(key) ? dom_blk[key] : std::vector<int>{};
        const auto ci = cod_blk.count(key) ? cod_blk[key] : std::vector<int>{};
        Matrix<K> blk(int(ci.size()), int(di.size()));
        for (size_t i = 0; i < ci.size(); ++i)
            for (size_t j = 0; j < di.size(); ++j) blk.at(int(i), int(j)) = f.m.at(ci[i], di[j]);

        Matrix<K> basis_vectors; // columns = block-local vectors
        std::vector<int> positions;
        if (mode == FactorMode::Kernel) {
            if (di.empty()) continue;
            Echelon<K> chk = echelon(blk, tol_);
            if (chk.ambiguous)
                throw RankAmbiguous("rank decision ambiguous near tolerance (pivot " +
                                    std::to_string(chk.gray_value) + "); use exact mode");
            basis_vectors = null_space(blk, tol_);
            positions = di;
        } else {
            if (ci.empty()) continue;
            Echelon<K> chk = echelon(blk, tol_);
            if (chk.ambiguous)
                throw RankAmbiguous("rank decision ambiguous near tolerance (pivot " +
                                    std::to_string(chk.gray_value) + "); use exact mode");
            if (mode == FactorMode::Cokernel)
                basis_vectors = left_null_space(blk, tol_).transposed();
            else
                basis_vectors = column_space(blk, tol_);
            positions = ci;
        }
        for (int k = 0; k < basis_vectors.cols; ++k) {
            res.obj.sum.push_back({key.first, key.second ^ spec_.parity[key.first]});
            std::vector<K> v(mode == FactorMode::Kernel ? bd->size() : bc->size(),
                             ScalarOps<K>::zero());
            for (size_t p = 0; p < positions.size(); ++p)
                v[positions[p]] = basis_vectors.at(int(p), k);
            cols_or_rows.push_back(std::move(v));
        }
    }

    WordPtr side = word_leaf(res.obj);
    if (mode == FactorMode::Cokernel) {
        Matrix<K> m(int(cols_or_rows.size()), bc->size());
        for (size_t i = 0; i < cols_or_rows.size(); ++i)
            for (int j = 0; j < bc->size(); ++j) m.at(int(i), j) = cols_or_rows[i][j];
        res.map = Mor<K>{f.cod, side, std::move(m)};
    } else if (mode == FactorMode::Kernel) {
        Matrix<K> m(bd->size(), int(cols_or_rows.size()));
        for (size_t j = 0; j < cols_or_rows.size(); ++j)
            for (int i = 0; i < bd->size(); ++i) m.at(i, int(j)) = cols_or_rows[j][i];
        res.map = Mor<K>{side, f.dom, std::move(m)};
    } else {
        Matrix<K> m(bc->size(), int(cols_or_rows.size()));
        for (size_t j = 0; j < cols_or_rows.size(); ++j)
            for (int i = 0; i < bc->size(); ++i) m.at(i, int(j)) = cols_or_rows[j][i];
        res.map = Mor<K>{side, f.cod, std::move(m)};
    }
    return res;
}

template <class K>
typename Engine<K>::SolveOutcome Engine<K>::solve_after(const Mor<K>& A, const Mor<K>& B) {
    if (!word_equal(A.cod, B.cod)) throw Error("solve_after: codomains differ");
    LinearSolution<K> s = solve_right(A.m, B.m, tol_);
    SolveOutcome out;
    out.x = Mor<K>{B.dom, A.dom, std::move(s.x)};
    out.nullity = s.nullity;
    out.residual = s.residual;
    return out;
}

template <class K>
typename Engine<K>::SolveOutcome Engine<K>::solve_before(const Mor<K>& A, const Mor<K>& B) {
    if (!word_equal(A.dom, B.dom)) throw Error("solve_before: domains differ");
    LinearSolution<K> s = solve_left(A.m, B.m, tol_);
    SolveOutcome out;
    out.x = Mor<K>{A.cod, B.cod, std::move(s.x)};
    out.nullity = s.nullity;
    out.residual = s.residual;
    return out;
}

template <class K>
std::pair<ConcreteObject, Mor<K>> Engine<K>::flatten(const WordPtr& w) {
    auto bw = basis(w);
    ConcreteObject o;
    for (const auto& t : bw->trees)
        o.sum.push_back({t.root, t.parity ^ spec_.parity[t.root]});
    Mor<K> iso{w, word_leaf(o), Matrix<K>::identity(bw->size())};
    return {o, iso};
}

// Helper used by structural inverse construction (braids are invertible but
// not unitary in general gauges).
template <class K>
Matrix<K> inverse_matrix(const Matrix<K>& m) {
    return inverse(m, 1e-12);
}

} // namespace orbcat

#endif
