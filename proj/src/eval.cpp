#include "orbcat/eval.hpp"

namespace orbcat {

WordPtr word_leaf(ConcreteObject o) {
    auto w = std::make_shared<Word>();
    w->leaf = true;
    w->obj = std::move(o);
    return w;
}

WordPtr word_tensor(WordPtr l, WordPtr r) {
    auto w = std::make_shared<Word>();
    w->leaf = false;
    w->l = std::move(l);
    w->r = std::move(r);
    return w;
}

bool word_equal(const WordPtr& a, const WordPtr& b) {
    if (a.get() == b.get()) return true;
    if (!a || !b || a->leaf != b->leaf) return false;
    if (a->leaf) return a->obj.sum == b->obj.sum;
    return word_equal(a->l, b->l) && word_equal(a->r, b->r);
}

std::string word_key(const WordPtr& w) {
    if (w->leaf) {
        std::string s = "[";
        for (const auto& x : w->obj.sum)
            s += std::to_string(x.label) + (x.flip ? "'" : "") + ",";
        return s + "]";
    }
    return "(" + word_key(w->l) + word_key(w->r) + ")";
}

int WordShape::subtree_size(int node) const {
    const Node& nd = nodes[node];
    if (nd.leaf >= 0) return 1;
    return 1 + subtree_size(nd.left) + subtree_size(nd.right);
}

int summand_parity(const CategorySpec& spec, const Summand& s) {
    return spec.parity[s.label] ^ s.flip;
}

int object_parity_dim(const CategorySpec& spec, const ConcreteObject& o, int parity) {
    int n = 0;
    for (const auto& s : o.sum)
        if (summand_parity(spec, s) == parity) ++n;
    return n;
}

namespace {

int build_shape_rec(const WordPtr& w, WordShape& shape) {
    if (w->leaf) {
        int leaf_id = int(shape.leaves.size());
        shape.leaves.push_back(w->obj);
        shape.nodes.push_back({-1, -1, leaf_id});
        return int(shape.nodes.size()) - 1;
    }
    int l = build_shape_rec(w->l, shape);
    int r = build_shape_rec(w->r, shape);
    shape.nodes.push_back({l, r, -1});
    return int(shape.nodes.size()) - 1;
}

// Assign labels to internal nodes in post-order position order; children are
// always assigned before their parent.
void enumerate_labels(const CategorySpec& spec, const WordShape& shape, size_t node_pos,
                      std::vector<int>& labels, const std::vector<int>& choice,
                      std::vector<BasisTree>& out) {
    if (node_pos == shape.nodes.size()) {
        BasisTree t;
        t.choice = choice;
        t.labels = labels;
        t.root = labels.back();
        t.parity = 0;
        for (size_t i = 0; i < shape.nodes.size(); ++i) {
            int leaf = shape.nodes[i].leaf;
            if (leaf >= 0)
                t.parity ^= summand_parity(spec, shape.leaves[leaf].sum[choice[leaf]]);
        }
        out.push_back(std::move(t));
        return;
    }
    const auto& nd = shape.nodes[node_pos];
    if (nd.leaf >= 0) {
        labels[node_pos] = shape.leaves[nd.leaf].sum[choice[nd.leaf]].label;
        enumerate_labels(spec, shape, node_pos + 1, labels, choice, out);
        return;
    }
    for (int c = 0; c < spec.count(); ++c) {
        if (!spec.fusable(labels[nd.left], labels[nd.right], c)) continue;
        labels[node_pos] = c;
        enumerate_labels(spec, shape, node_pos + 1, labels, choice, out);
    }
}

} // namespace

WordShape build_shape(const WordPtr& w) {
    WordShape shape;
    build_shape_rec(w, shape);
    return shape;
}

std::shared_ptr<const WordBasis> build_basis(const CategorySpec& spec, const WordPtr& w) {
    auto basis = std::make_shared<WordBasis>();
    basis->shape = build_shape(w);
    const auto& shape = basis->shape;
    const size_t nl = shape.leaves.size();

    for (const auto& leaf : shape.leaves)
        if (leaf.is_zero()) {
            // A zero leaf kills every tree.
            return basis;
        }

    std::vector<int> choice(nl, 0);
    std::vector<int> labels(shape.nodes.size(), 0);
    while (true) {
        enumerate_labels(spec, shape, 0, labels, choice, basis->trees);
        // Odometer with the first leaf most significant.
        int i = int(nl) - 1;
        for (; i >= 0; --i) {
            if (++choice[i] < int(shape.leaves[i].sum.size())) break;
            choice[i] = 0;
        }
        if (i < 0) break;
    }
    for (int i = 0; i < int(basis->trees.size()); ++i)
        basis->index[{basis->trees[i].choice, basis->trees[i].labels}] = i;
    return basis;
}

} // namespace orbcat
