#ifndef PREPROJ_FIXEDRING_HPP
#define PREPROJ_FIXEDRING_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "matrix.hpp"
#include "molien.hpp"
#include "quiver.hpp"
#include "ratfun.hpp"

namespace preproj {

// Which simple paths of degree <= D are fixed by a group; indexable by (start, m, k).
class FixedPathTable {
public:
    FixedPathTable(const AutGroup& G, int D) : n_(G.n()), D_(D) {
        if (D < 0) throw PreconditionError("degree bound must be nonnegative");
        const auto N = static_cast<std::size_t>(n_);
        const auto L = static_cast<std::size_t>(D) + 1;
        fixed_.assign(N, std::vector<char>(L * L, 1));
        for (const auto& g : G.generators()) {
            EigenvalueTable table(g, D);
            for (int i = 1; i <= n_; ++i)
                for (int m = 0; m <= D; ++m)
                    for (int k = 0; m + k <= D; ++k) {
                        char& f = cell(i, m, k);
                        if (f && !table.eigenvalue(SimplePath{i, m, k}).is_one()) f = 0;
                    }
        }
    }

    int n() const noexcept { return n_; }
    int max_degree() const noexcept { return D_; }

    bool fixed(const SimplePath& p) const {
        if (p.degree() > D_) throw PreconditionError("path degree exceeds the table bound");
        return cell(p.start, p.m, p.k) != 0;
    }

private:
    int n_;
    int D_;
    std::vector<std::vector<char>> fixed_;

    char& cell(int i, int m, int k) {
        return fixed_[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(m) * static_cast<std::size_t>(D_ + 1) +
                                                      static_cast<std::size_t>(k)];
    }
    char cell(int i, int m, int k) const {
        return fixed_[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(m) * static_cast<std::size_t>(D_ + 1) +
                                                      static_cast<std::size_t>(k)];
    }
};

// Ordered by degree, then start vertex, then number of star arrows.
inline std::vector<SimplePath> fixed_paths_up_to(const AutGroup& G, int D) {
    FixedPathTable table(G, D);
    std::vector<SimplePath> out;
    for (int d = 0; d <= D; ++d)
        for (int i = 1; i <= G.n(); ++i)
            for (int k = 0; k <= d; ++k) {
                SimplePath p{i, d - k, k};
                if (table.fixed(p)) out.push_back(p);
            }
    return out;
}

enum class Purity { PurelyNonstar, PurelyStar, Mixed };

inline const char* to_string(Purity p) {
    switch (p) {
        case Purity::PurelyNonstar: return "purely-nonstar";
        case Purity::PurelyStar: return "purely-star";
        default: return "mixed";
    }
}

struct FixedGenerator {
    SimplePath path;
    int degree = 0;
    Purity purity = Purity::Mixed;
    std::string label;
};

inline FixedGenerator make_fixed_generator(const SimplePath& p, int n) {
    FixedGenerator g;
    g.path = p;
    g.degree = p.degree();
    g.purity = p.purely_nonstar() ? Purity::PurelyNonstar : p.purely_star() ? Purity::PurelyStar : Purity::Mixed;
    g.label = p.label(n);
    return g;
}

struct GeneratorReport {
    std::vector<FixedGenerator> generators;  // idempotents are implicit
    std::vector<std::string> warnings;
    int degree_bound = 0;

    std::size_t count_with_idempotents(int n) const { return generators.size() + static_cast<std::size_t>(n); }
    std::vector<SimplePath> paths() const {
        std::vector<SimplePath> out;
        for (const auto& g : generators) out.push_back(g.path);
        return out;
    }
};

inline int default_generator_bound(const AutGroup& G) { return 2 * G.n() * static_cast<int>(G.exponent()); }

// A fixed path p = q r with q, r of positive degree and q fixed forces r fixed,
// since eigenvalues multiply; so p is decomposable exactly when some proper
// "prefix type" (m1 <= m, k1 <= k) from the same start is fixed.
inline GeneratorReport minimal_generators(const AutGroup& G, int D) {
    if (D < 1) throw PreconditionError("generator degree bound must be at least 1");
    const int n = G.n();
    FixedPathTable table(G, D);
    GeneratorReport rep;
    rep.degree_bound = D;
    const auto L = static_cast<std::size_t>(D) + 1;
    for (int i = 1; i <= n; ++i) {
        // prefix[m][k] = number of fixed (m1, k1) != (0,0) with m1 <= m, k1 <= k
        std::vector<std::vector<int>> prefix(L, std::vector<int>(L, 0));
        for (int m = 0; m <= D; ++m)
            for (int k = 0; m + k <= D; ++k) {
                int here = (m + k > 0 && table.fixed(SimplePath{i, m, k})) ? 1 : 0;
                int up = m > 0 ? prefix[static_cast<std::size_t>(m - 1)][static_cast<std::size_t>(k)] : 0;
                int left = k > 0 ? prefix[static_cast<std::size_t>(m)][static_cast<std::size_t>(k - 1)] : 0;
                int diag = (m > 0 && k > 0) ? prefix[static_cast<std::size_t>(m - 1)][static_cast<std::size_t>(k - 1)] : 0;
                prefix[static_cast<std::size_t>(m)][static_cast<std::size_t>(k)] = here + up + left - diag;
            }
        for (int m = 0; m <= D; ++m)
            for (int k = 0; m + k <= D; ++k) {
                SimplePath p{i, m, k};
                if (p.is_idempotent() || !table.fixed(p)) continue;
                if (prefix[static_cast<std::size_t>(m)][static_cast<std::size_t>(k)] == 1)
                    rep.generators.push_back(make_fixed_generator(p, n));
            }
    }
    std::sort(rep.generators.begin(), rep.generators.end(), [](const FixedGenerator& a, const FixedGenerator& b) {
        return std::tuple(a.degree, a.path.k, a.path.start) < std::tuple(b.degree, b.path.k, b.path.start);
    });
    for (int i = 1; i <= n; ++i) {
        bool nonstar = false, star = false;
        for (const auto& g : rep.generators) {
            if (g.path.start != i) continue;
            nonstar = nonstar || g.purity == Purity::PurelyNonstar;
            star = star || g.purity == Purity::PurelyStar;
        }
        if (!nonstar)
            rep.warnings.push_back("vertex " + std::to_string(i) + " has no purely nonstar generator up to degree " +
                                   std::to_string(D) + "; the bound is too small");
        if (!star)
            rep.warnings.push_back("vertex " + std::to_string(i) + " has no purely star generator up to degree " +
                                   std::to_string(D) + "; the bound is too small");
    }
    return rep;
}

struct GeneratorCheck {
    bool complete = false;
    std::optional<int> first_failing_degree;
};

// Compares the span of products of `gens` with the fixed paths, degree by degree.
inline GeneratorCheck verify_generators(const AutGroup& G, const std::vector<SimplePath>& gens, int D) {
    const int n = G.n();
    for (const auto& g : gens) {
        if (g.degree() > D) throw PreconditionError("degree bound is below a generator degree");
        if (g.is_idempotent()) throw PreconditionError("idempotents are implicit generators");
    }
    FixedPathTable table(G, D);
    const auto L = static_cast<std::size_t>(D) + 1;
    std::vector<std::vector<char>> reach(static_cast<std::size_t>(n), std::vector<char>(L * L, 0));
    auto at = [&](int i, int m, int k) -> char& {
        return reach[static_cast<std::size_t>(wrap(i, n) - 1)][static_cast<std::size_t>(m) * L + static_cast<std::size_t>(k)];
    };
    for (int i = 1; i <= n; ++i) at(i, 0, 0) = 1;
    GeneratorCheck out;
    for (int d = 0; d <= D; ++d) {
        bool ok = true;
        for (int i = 1; i <= n; ++i)
            for (int k = 0; k <= d; ++k) {
                const int m = d - k;
                char& r = at(i, m, k);
                if (d > 0)
                    for (const auto& g : gens) {
                        if (g.m > m || g.k > k) continue;
                        SimplePath head{i, m - g.m, k - g.k};
                        if (head.end(n) == g.start && at(i, head.m, head.k)) {
                            r = 1;
                            break;
                        }
                    }
                if ((r != 0) != table.fixed(SimplePath{i, m, k})) ok = false;
            }
        if (!ok) {
            out.first_failing_degree = d;
            return out;
        }
    }
    out.complete = true;
    return out;
}

// ---------------------------------------------------------------------------
// Presentations

using Word = std::vector<int>;  // generator indices; index order is the presentation order

struct PresGenerator {
    std::string label;
    SimplePath path;
};

struct Relation {
    Word lhs;  // leading word
    Word rhs;
};

struct Presentation {
    int n = 3;
    std::vector<PresGenerator> generators;
    std::vector<Relation> relations;

    int degree(const Word& w) const {
        int d = 0;
        for (int g : w) d += generators[static_cast<std::size_t>(g)].path.degree();
        return d;
    }

    // Underlying path of a nonempty word, if composable.
    std::optional<SimplePath> path(const Word& w) const {
        if (w.empty()) return std::nullopt;
        SimplePath p = generators[static_cast<std::size_t>(w.front())].path;
        for (std::size_t r = 1; r < w.size(); ++r) {
            const SimplePath& q = generators[static_cast<std::size_t>(w[r])].path;
            if (q.start != p.end(n)) return std::nullopt;
            p = concat(p, q, n);
        }
        return p;
    }

    std::string word_string(const Word& w) const {
        std::string s;
        for (std::size_t r = 0; r < w.size(); ++r) {
            if (r) s += ' ';
            s += generators[static_cast<std::size_t>(w[r])].label;
        }
        return s.empty() ? "1" : s;
    }

    std::optional<int> index_of(const std::string& label) const {
        for (std::size_t g = 0; g < generators.size(); ++g)
            if (generators[g].label == label) return static_cast<int>(g);
        return std::nullopt;
    }

    // Weighted degree first, then lexicographic by generator index.
    bool less(const Word& a, const Word& b) const {
        const int da = degree(a), db = degree(b);
        if (da != db) return da < db;
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    }
};

// Space-separated generator labels.
inline Word parse_word(const Presentation& p, const std::string& text) {
    std::istringstream in(text);
    Word w;
    for (std::string tok; in >> tok;) {
        auto g = p.index_of(tok);
        if (!g) throw PreconditionError("unknown generator label '" + tok + "'");
        w.push_back(*g);
    }
    if (w.empty()) throw PreconditionError("empty word");
    return w;
}

inline bool generator_order_less(const SimplePath& a, const SimplePath& b) {
    return std::tuple(a.degree(), a.k, a.start) < std::tuple(b.degree(), b.k, b.start);
}

// Generators sorted by (degree, number of star arrows, start vertex); labels are arrow words.
inline Presentation presentation_skeleton(int n, std::vector<SimplePath> gens) {
    std::sort(gens.begin(), gens.end(), generator_order_less);
    Presentation p;
    p.n = n;
    for (const auto& g : gens) p.generators.push_back({g.label(n), g});
    return p;
}

// Orients each relation so that its leading word is the larger one and checks well-formedness.
inline void normalize_relations(Presentation& p) {
    std::set<Word> leads;
    for (std::size_t r = 0; r < p.relations.size(); ++r) {
        auto& rel = p.relations[r];
        const std::string where = "relation " + std::to_string(r + 1);
        for (const Word* w : {&rel.lhs, &rel.rhs})
            for (int g : *w)
                if (g < 0 || static_cast<std::size_t>(g) >= p.generators.size())
                    throw PreconditionError(where + " uses an unknown generator");
        auto pl = p.path(rel.lhs), pr = p.path(rel.rhs);
        if (!pl || !pr) throw PreconditionError(where + " has a side that is empty or not composable");
        if (*pl != *pr)
            throw PreconditionError(where + " relates different paths: " + pl->label(p.n) + " and " + pr->label(p.n));
        if (rel.lhs == rel.rhs) throw PreconditionError(where + " is trivial");
        if (p.less(rel.lhs, rel.rhs)) std::swap(rel.lhs, rel.rhs);
        if (!leads.insert(rel.lhs).second)
            throw PreconditionError(where + " repeats the leading word " + p.word_string(rel.lhs));
    }
}

namespace detail {

inline bool occurs_at(const Word& w, std::size_t pos, const Word& pat) {
    return pos + pat.size() <= w.size() && std::equal(pat.begin(), pat.end(), w.begin() + static_cast<long>(pos));
}

}  // namespace detail

// Leftmost-first rewriting; nullopt when the step cap is hit.
inline std::optional<Word> normal_form(const Presentation& p, Word w, std::size_t step_cap = 100000) {
    for (std::size_t steps = 0;; ++steps) {
        bool changed = false;
        for (std::size_t pos = 0; pos < w.size() && !changed; ++pos)
            for (const auto& rel : p.relations)
                if (detail::occurs_at(w, pos, rel.lhs)) {
                    Word next(w.begin(), w.begin() + static_cast<long>(pos));
                    next.insert(next.end(), rel.rhs.begin(), rel.rhs.end());
                    next.insert(next.end(), w.begin() + static_cast<long>(pos + rel.lhs.size()), w.end());
                    w = std::move(next);
                    changed = true;
                    break;
                }
        if (!changed) return w;
        if (steps >= step_cap) return std::nullopt;
    }
}

inline bool is_irreducible(const Presentation& p, const Word& w) {
    for (std::size_t pos = 0; pos < w.size(); ++pos)
        for (const auto& rel : p.relations)
            if (detail::occurs_at(w, pos, rel.lhs)) return false;
    return true;
}

struct Ambiguity {
    enum class Kind { Overlap, Inclusion } kind = Kind::Overlap;
    std::size_t first = 0, second = 0;  // relation indices
    Word word;
    std::optional<Word> left, right;  // the two normal forms
    bool resolved() const { return left && right && *left == *right; }
};

struct AmbiguityReport {
    std::vector<Ambiguity> resolvable;
    std::vector<Ambiguity> unresolvable;
    bool all_resolve() const { return unresolvable.empty(); }
};

// All overlap and inclusion ambiguities among leading words; a degree bound
// restricts which ambiguity words are examined.
inline AmbiguityReport check_ambiguities(const Presentation& p, std::optional<int> D = std::nullopt,
                                         std::size_t step_cap = 100000) {
    AmbiguityReport rep;
    auto settle = [&](Ambiguity a, Word left, Word right) {
        a.left = normal_form(p, std::move(left), step_cap);
        a.right = normal_form(p, std::move(right), step_cap);
        (a.resolved() ? rep.resolvable : rep.unresolvable).push_back(std::move(a));
    };
    const auto& R = p.relations;
    for (std::size_t a = 0; a < R.size(); ++a)
        for (std::size_t b = 0; b < R.size(); ++b) {
            const Word& l1 = R[a].lhs;
            const Word& l2 = R[b].lhs;
            for (std::size_t o = 1; o < std::min(l1.size(), l2.size()); ++o) {
                if (!std::equal(l1.end() - static_cast<long>(o), l1.end(), l2.begin())) continue;
                Word w = l1;
                w.insert(w.end(), l2.begin() + static_cast<long>(o), l2.end());
                if (D && p.degree(w) > *D) continue;
                Word left = R[a].rhs;
                left.insert(left.end(), l2.begin() + static_cast<long>(o), l2.end());
                Word right(l1.begin(), l1.end() - static_cast<long>(o));
                right.insert(right.end(), R[b].rhs.begin(), R[b].rhs.end());
                settle(Ambiguity{Ambiguity::Kind::Overlap, a, b, std::move(w), {}, {}}, std::move(left), std::move(right));
            }
            if (a == b || l2.size() > l1.size()) continue;
            for (std::size_t pos = 0; pos + l2.size() <= l1.size(); ++pos) {
                if (!detail::occurs_at(l1, pos, l2)) continue;
                if (D && p.degree(l1) > *D) continue;
                Word right(l1.begin(), l1.begin() + static_cast<long>(pos));
                right.insert(right.end(), R[b].rhs.begin(), R[b].rhs.end());
                right.insert(right.end(), l1.begin() + static_cast<long>(pos + l2.size()), l1.end());
                settle(Ambiguity{Ambiguity::Kind::Inclusion, a, b, l1, {}, {}}, R[a].rhs, std::move(right));
            }
        }
    return rep;
}

// Degree-by-degree completion: the irreducible words of each degree are
// bucketed by the path they represent; the smallest word in a bucket stays
// and every other one becomes the leading word of a new rule. Up to degree D
// this is the reduced rewriting system of the kernel for the given order.
inline Presentation discover_relations(Presentation skeleton, int D) {
    Presentation p = std::move(skeleton);
    p.relations.clear();
    const int n = p.n;
    // irreducible[d]: irreducible words of weighted degree d
    std::vector<std::vector<Word>> irreducible(static_cast<std::size_t>(D) + 1);
    auto ends_with_lead = [&](const Word& w) {
        for (const auto& rel : p.relations)
            if (rel.lhs.size() <= w.size() && std::equal(rel.lhs.begin(), rel.lhs.end(), w.end() - static_cast<long>(rel.lhs.size())))
                return true;
        return false;
    };
    for (int d = 1; d <= D; ++d) {
        std::map<SimplePath, std::vector<Word>> buckets;
        for (std::size_t g = 0; g < p.generators.size(); ++g) {
            const SimplePath& gp = p.generators[g].path;
            const int rest = d - gp.degree();
            if (rest < 0) continue;
            auto extend = [&](Word w, const SimplePath& path) {
                w.push_back(static_cast<int>(g));
                if (ends_with_lead(w)) return;
                buckets[path].push_back(std::move(w));
            };
            if (rest == 0) {
                extend(Word{}, gp);
                continue;
            }
            for (const Word& w : irreducible[static_cast<std::size_t>(rest)]) {
                SimplePath wp = *p.path(w);
                if (wp.end(n) != gp.start) continue;
                extend(w, concat(wp, gp, n));
            }
        }
        auto& level = irreducible[static_cast<std::size_t>(d)];
        for (auto& [path, words] : buckets) {
            std::sort(words.begin(), words.end(), [&](const Word& a, const Word& b) { return p.less(a, b); });
            level.push_back(words.front());
            for (std::size_t r = 1; r < words.size(); ++r) p.relations.push_back({words[r], words.front()});
        }
    }
    return p;
}

// Generator words modulo leading words, counted by an Aho-Corasick automaton.
struct WordCounts {
    RatMatrix matrix;  // entry (i, j): irreducible words from vertex i to vertex j, idempotents included
    std::vector<RatFun> vector;
    RatFun total;
    std::size_t states = 0;
};

inline WordCounts count_irreducible_words(const Presentation& p) {
    const int n = p.n;
    const std::size_t A = p.generators.size();
    // trie over leading words
    std::vector<std::vector<int>> go(1, std::vector<int>(A, -1));
    std::vector<char> terminal(1, 0);
    for (const auto& rel : p.relations) {
        int node = 0;
        for (int g : rel.lhs) {
            auto& nxt = go[static_cast<std::size_t>(node)][static_cast<std::size_t>(g)];
            if (nxt < 0) {
                nxt = static_cast<int>(go.size());
                go.emplace_back(A, -1);
                terminal.push_back(0);
            }
            node = go[static_cast<std::size_t>(node)][static_cast<std::size_t>(g)];
        }
        terminal[static_cast<std::size_t>(node)] = 1;
    }
    std::vector<int> fail(go.size(), 0);
    std::queue<int> bfs;
    for (std::size_t g = 0; g < A; ++g) {
        int& c = go[0][g];
        if (c < 0)
            c = 0;
        else {
            fail[static_cast<std::size_t>(c)] = 0;
            bfs.push(c);
        }
    }
    while (!bfs.empty()) {
        const int u = bfs.front();
        bfs.pop();
        const auto U = static_cast<std::size_t>(u);
        terminal[U] = terminal[U] || terminal[static_cast<std::size_t>(fail[U])];
        for (std::size_t g = 0; g < A; ++g) {
            int& c = go[U][g];
            if (c < 0) {
                c = go[static_cast<std::size_t>(fail[U])][g];
            } else {
                fail[static_cast<std::size_t>(c)] = go[static_cast<std::size_t>(fail[U])][g];
                bfs.push(c);
            }
        }
    }
    // reachable (node, vertex) states
    std::map<std::pair<int, int>, std::size_t> index;
    std::vector<std::pair<int, int>> states;
    std::vector<std::vector<std::pair<std::size_t, int>>> edges;  // (target, degree)
    auto state = [&](int node, int v) {
        auto [it, inserted] = index.emplace(std::pair(node, v), states.size());
        if (inserted) {
            states.emplace_back(node, v);
            edges.emplace_back();
        }
        return it->second;
    };
    for (int v = 1; v <= n; ++v) state(0, v);
    for (std::size_t s = 0; s < states.size(); ++s) {
        const auto [node, v] = states[s];
        for (std::size_t g = 0; g < A; ++g) {
            const SimplePath& gp = p.generators[g].path;
            if (gp.start != v) continue;
            const int nxt = go[static_cast<std::size_t>(node)][g];
            if (terminal[static_cast<std::size_t>(nxt)]) continue;
            const std::size_t target = state(nxt, gp.end(n));
            edges[s].emplace_back(target, gp.degree());
        }
    }
    const std::size_t S = states.size();
    RatMatrix M = RatMatrix::identity(S);
    for (std::size_t s = 0; s < S; ++s)
        for (const auto& [target, deg] : edges[s])
            M(s, target) -= RatFun(Poly::monomial(CycNum(1), static_cast<std::size_t>(deg)));
    RatMatrix U(S, static_cast<std::size_t>(n));
    for (std::size_t s = 0; s < S; ++s) U(s, static_cast<std::size_t>(states[s].second - 1)) = RatFun(1);
    RatMatrix Z = mat_solve(M, U);
    WordCounts out;
    out.states = S;
    out.matrix = RatMatrix(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            out.matrix(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1)) =
                Z(index.at({0, i}), static_cast<std::size_t>(j - 1));
    out.vector = row_sums(out.matrix);
    for (const auto& e : out.vector) out.total += e;
    return out;
}

struct PresentationCheck {
    bool generators_fixed = false;
    bool ambiguities_resolve = false;
    bool total_matches = false;
    bool vector_matches = false;
    std::optional<bool> matrix_matches;  // unknown when the matrix series did not reconstruct
    WordCounts counts;
    AmbiguityReport ambiguities;
    std::vector<std::string> notes;

    bool passed() const {
        return generators_fixed && ambiguities_resolve && total_matches && vector_matches && matrix_matches.value_or(true);
    }
};

// Word counts against the averaged series. An exact match means the irreducible
// words are a basis, so the relations present the fixed ring.
inline PresentationCheck verify_presentation(const Presentation& p, const AutGroup& G) {
    PresentationCheck out;
    if (p.n != G.n()) throw DimensionMismatchError("presentation and group act on different quivers");
    int maxdeg = 0;
    for (const auto& g : p.generators) maxdeg = std::max(maxdeg, g.path.degree());
    FixedPathTable table(G, std::max(maxdeg, 0));
    out.generators_fixed = true;
    for (const auto& g : p.generators)
        if (!table.fixed(g.path)) {
            out.generators_fixed = false;
            out.notes.push_back("generator " + g.label + " is not fixed by the group");
        }
    out.ambiguities = check_ambiguities(p);
    out.ambiguities_resolve = out.ambiguities.all_resolve();
    if (!out.ambiguities_resolve)
        out.notes.push_back(std::to_string(out.ambiguities.unresolvable.size()) + " ambiguities do not resolve");
    out.counts = count_irreducible_words(p);
    auto mol = molien_report(G);
    out.total_matches = out.counts.total == mol.scalar;
    out.vector_matches = out.counts.vector == mol.vector;
    if (mol.matrix.matrix) out.matrix_matches = out.counts.matrix == *mol.matrix.matrix;
    if (!out.total_matches)
        out.notes.push_back("word count " + out.counts.total.to_string(true) + " differs from the Molien series " +
                            mol.scalar.to_string(true));
    return out;
}

inline std::size_t default_relation_bound(const Presentation& skeleton) {
    int maxdeg = 1;
    for (const auto& g : skeleton.generators) maxdeg = std::max(maxdeg, g.path.degree());
    return static_cast<std::size_t>(2 * maxdeg + 2);
}

}  // namespace preproj

#endif  // PREPROJ_FIXEDRING_HPP
