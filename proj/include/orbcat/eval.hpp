#ifndef ORBCAT_EVAL_HPP
#define ORBCAT_EVAL_HPP

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "orbcat/category.hpp"
#include "orbcat/expr.hpp"
#include "orbcat/matrix.hpp"

namespace orbcat {

struct UnboundSymbol : Error {
    explicit UnboundSymbol(const std::string& what) : Error(what) {}
};
struct MixedParityInput : Error {
    explicit MixedParityInput(const std::string& what) : Error(what) {}
};
struct RankAmbiguous : Error {
    explicit RankAmbiguous(const std::string& what) : Error(what) {}
};
struct NoSolution : Error {
    explicit NoSolution(const std::string& what) : Error(what) {}
};

// A summand of an object: a simple label with a parity flip. The summand's
// parity in the supercategory is parity(label) XOR flip.
struct Summand {
    int label{0};
    int flip{0};
    friend bool operator==(const Summand& a, const Summand& b) {
        return a.label == b.label && a.flip == b.flip;
    }
};

struct ConcreteObject {
    std::vector<Summand> sum;
    bool is_zero() const { return sum.empty(); }
    int size() const { return int(sum.size()); }
};

// Tensor words over concrete objects; leaves carry objects.
struct Word;
using WordPtr = std::shared_ptr<const Word>;
struct Word {
    bool leaf{true};
    ConcreteObject obj; // leaf payload
    WordPtr l, r;
};

WordPtr word_leaf(ConcreteObject o);
WordPtr word_tensor(WordPtr l, WordPtr r);
bool word_equal(const WordPtr& a, const WordPtr& b);
std::string word_key(const WordPtr& w);

// One fusion tree: a summand choice per leaf plus a simple label per node
// (post-order, leaves included, root last).
struct BasisTree {
    std::vector<int> choice;
    std::vector<int> labels;
    int root{0};
    int parity{0};
};

struct WordShape {
    struct Node {
        int left{-1}, right{-1};
        int leaf{-1}; // leaf ordinal if >= 0
    };
    std::vector<Node> nodes; // post-order, root last
    std::vector<ConcreteObject> leaves;
    int subtree_size(int node) const;
};

struct WordBasis {
    WordShape shape;
    std::vector<BasisTree> trees;
    std::map<std::pair<std::vector<int>, std::vector<int>>, int> index;

    int size() const { return int(trees.size()); }
    int find(const std::vector<int>& choice, const std::vector<int>& labels) const {
        auto it = index.find({choice, labels});
        return it == index.end() ? -1 : it->second;
    }
};

// A morphism between words: matrix rows index the codomain basis, columns the
// domain basis. Entries between trees with different root labels vanish.
template <class K>
struct Mor {
    WordPtr dom, cod;
    Matrix<K> m;
};

enum class FactorMode { Kernel, Cokernel, Image };

template <class K>
struct FactorResult {
    ConcreteObject obj;
    Mor<K> map; // inclusion for kernel/image, projection for cokernel
};

template <class K>
struct HomElem {
    Mor<K> mor;
    Parity parity;
};

template <class K>
struct Env {
    Context ctx;
    std::map<std::string, ConcreteObject> objects;
    std::map<std::string, Mor<K>> gens;
};

// The concrete evaluator for one category instance. Word bases are memoized;
// the cache is guarded so disjoint evaluations may run concurrently.
template <class K>
class Engine {
public:
    explicit Engine(CategorySpec spec)
        : spec_(std::move(spec)), data_(CategoryData<K>::from(spec_)), tol_(spec_.tol) {}

    const CategorySpec& spec() const { return spec_; }
    const CategoryData<K>& data() const { return data_; }
    double tol() const { return tol_; }

    WordPtr unit_word() const;
    WordPtr resolve(const ObjPtr& o, const Env<K>& env) const;
    std::shared_ptr<const WordBasis> basis(const WordPtr& w);
    int tree_count(const WordPtr& w) { return basis(w)->size(); }

    // Structural morphisms.
    Mor<K> identity(const WordPtr& w);
    Mor<K> assoc(const WordPtr& a, const WordPtr& b, const WordPtr& c, bool inverse);
    Mor<K> lunit(const WordPtr& a, bool inverse);
    Mor<K> runit(const WordPtr& a, bool inverse);
    Mor<K> braid(const WordPtr& a, const WordPtr& b, bool inverse);
    Mor<K> parity_operator(const WordPtr& w); // P_W

    Mor<K> compose(const Mor<K>& after, const Mor<K>& before);
    Mor<K> tensor_mor(const Mor<K>& f, const Mor<K>& g); // super interchange signs
    Mor<K> scale(const Mor<K>& f, K s);

    Mor<K> eval(const MorPtr& e, const Env<K>& env);

    // Hom spaces between leaf objects, tagged even/odd.
    std::vector<HomElem<K>> hom_basis(const ConcreteObject& x, const ConcreteObject& y);

    // Blockwise kernel/cokernel/image of an even morphism.
    FactorResult<K> factor(const Mor<K>& f, FactorMode mode);

    // solve A o X = B (side=Right unknown X) or X o A = B (side=Left).
    struct SolveOutcome {
        Mor<K> x;
        int nullity{0};
        double residual{0.0};
    };
    SolveOutcome solve_after(const Mor<K>& A, const Mor<K>& B);  // A o X = B
    SolveOutcome solve_before(const Mor<K>& A, const Mor<K>& B); // X o A = B

    // Identify a word with a single-leaf object, basis order preserved.
    std::pair<ConcreteObject, Mor<K>> flatten(const WordPtr& w);

    // Parity structure of a matrix: per-entry parities from tree parities.
    Parity parity_of_mor(const Mor<K>& f);
    Mor<K> parity_part(const Mor<K>& f, int p); // even part (p=0) or odd part (p=1)
    void check_schur(const Mor<K>& f) ;

private:
    struct PairLayout {
        // composite index -> (left tree, right tree, root)
        std::vector<std::tuple<int, int, int>> split;
        std::map<std::tuple<int, int, int>, int> find;
    };
    std::shared_ptr<const PairLayout> pair_layout(const WordPtr& w);

    CategorySpec spec_;
    CategoryData<K> data_;
    double tol_;
    std::mutex mu_;
    std::map<std::string, std::shared_ptr<const WordBasis>> bases_;
    std::map<std::string, std::shared_ptr<const PairLayout>> layouts_;
};

// Shape/basis construction is scalar-independent.
WordShape build_shape(const WordPtr& w);
std::shared_ptr<const WordBasis> build_basis(const CategorySpec& spec, const WordPtr& w);
int summand_parity(const CategorySpec& spec, const Summand& s);
int object_parity_dim(const CategorySpec& spec, const ConcreteObject& o, int parity);

} // namespace orbcat

#include "orbcat/eval_impl.hpp"

#endif
