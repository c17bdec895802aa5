#pragma once

// Finite simplicial complexes: order complexes, barycentric subdivision,
// reduced integer homology via Smith normal form, the edge-path fundamental
// group with bounded Tietze simplification, and a shellability search.

#include "wtc/snf.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

namespace wtc {

class SimplicialComplex {
  public:
    SimplicialComplex() = default;

    // Facets given as vertex-label sets; contained faces are dropped.
    static SimplicialComplex from_facets(const std::vector<std::vector<std::string>>& facets) {
        SimplicialComplex k;
        std::map<std::string, int> ids;
        std::vector<std::vector<int>> fs;
        for (const auto& f : facets) {
            std::set<int> s;
            for (const auto& lbl : f) {
                auto [it, fresh] = ids.emplace(lbl, static_cast<int>(k.labels_.size()));
                if (fresh) k.labels_.push_back(lbl);
                s.insert(it->second);
            }
            if (!s.empty()) fs.emplace_back(s.begin(), s.end());
        }
        k.set_facets(std::move(fs));
        return k;
    }

    static SimplicialComplex from_int_facets(std::vector<std::vector<int>> facets) {
        SimplicialComplex k;
        int maxv = -1;
        for (auto& f : facets) {
            std::sort(f.begin(), f.end());
            f.erase(std::unique(f.begin(), f.end()), f.end());
            for (int v : f) maxv = std::max(maxv, v);
        }
        for (int v = 0; v <= maxv; ++v) k.labels_.push_back(std::to_string(v));
        k.set_facets(std::move(facets));
        return k;
    }

    int num_vertices() const { return static_cast<int>(labels_.size()); }
    const std::vector<std::vector<int>>& facets() const { return facets_; }
    const std::string& label(int v) const { return labels_[v]; }
    bool empty() const { return facets_.empty(); }

    // Largest facet dimension; -1 for the empty complex.
    int dim() const {
        int d = -1;
        for (const auto& f : facets_) d = std::max(d, static_cast<int>(f.size()) - 1);
        return d;
    }

    bool pure() const {
        for (const auto& f : facets_)
            if (static_cast<int>(f.size()) - 1 != dim()) return false;
        return true;
    }

    // All faces of dimension d, sorted.
    std::vector<std::vector<int>> faces_of_dim(int d) const {
        std::set<std::vector<int>> out;
        std::vector<int> pick;
        for (const auto& f : facets_) {
            if (static_cast<int>(f.size()) < d + 1) continue;
            pick.assign(d + 1, 0);
            subsets(f, d + 1, 0, pick, 0, out);
        }
        return {out.begin(), out.end()};
    }

    std::string to_text() const {
        std::ostringstream os;
        for (const auto& f : facets_) {
            std::vector<std::string> ls;
            for (int v : f) ls.push_back(labels_[v]);
            std::sort(ls.begin(), ls.end());
            for (size_t i = 0; i < ls.size(); ++i) os << (i ? " " : "") << ls[i];
            os << "\n";
        }
        return os.str();
    }

    static SimplicialComplex from_text(const std::string& text) {
        std::vector<std::vector<std::string>> facets;
        std::istringstream is(text);
        std::string line;
        while (std::getline(is, line)) {
            if (line.empty()) continue;
            std::istringstream ls(line);
            std::vector<std::string> f;
            std::string tok;
            while (ls >> tok) f.push_back(tok);
            if (!f.empty()) facets.push_back(std::move(f));
        }
        return from_facets(facets);
    }

  private:
    void set_facets(std::vector<std::vector<int>> fs) {
        for (auto& f : fs) std::sort(f.begin(), f.end());
        std::sort(fs.begin(), fs.end());
        fs.erase(std::unique(fs.begin(), fs.end()), fs.end());
        facets_.clear();
        for (const auto& f : fs) {
            bool contained = false;
            for (const auto& g : fs)
                if (&f != &g && f.size() < g.size() &&
                    std::includes(g.begin(), g.end(), f.begin(), f.end())) {
                    contained = true;
                    break;
                }
            if (!contained) facets_.push_back(f);
        }
    }

    static void subsets(const std::vector<int>& f, int want, size_t from,
                        std::vector<int>& pick, int got,
                        std::set<std::vector<int>>& out) {
        if (got == want) {
            out.insert(std::vector<int>(pick.begin(), pick.begin() + want));
            return;
        }
        for (size_t i = from; i < f.size(); ++i) {
            pick[got] = f[i];
            subsets(f, want, i + 1, pick, got + 1, out);
        }
    }

    std::vector<std::string> labels_;
    std::vector<std::vector<int>> facets_;
};

// ---------------------------------------------------------------------------
// Order complexes

// A finite poset given by elements 0..n-1 and the strict order relation.
struct Poset {
    int n = 0;
    std::vector<std::string> labels;
    // less(i,j) true iff i < j in the poset.
    std::vector<std::vector<bool>> less;

    bool is_cover(int i, int j) const {
        if (!less[i][j]) return false;
        for (int k = 0; k < n; ++k)
            if (less[i][k] && less[k][j]) return false;
        return true;
    }
};

// Simplices are the chains of the poset; facets are the maximal chains.
inline SimplicialComplex order_complex(const Poset& p) {
    std::vector<std::vector<int>> covers(p.n), maximal_chains;
    std::vector<bool> has_lower(p.n, false);
    for (int i = 0; i < p.n; ++i)
        for (int j = 0; j < p.n; ++j)
            if (p.is_cover(i, j)) {
                covers[i].push_back(j);
                has_lower[j] = true;
            }
    std::vector<int> chain;
    auto dfs = [&](auto&& self, int v) -> void {
        chain.push_back(v);
        if (covers[v].empty())
            maximal_chains.push_back(chain);
        else
            for (int w : covers[v]) self(self, w);
        chain.pop_back();
    };
    for (int v = 0; v < p.n; ++v)
        if (!has_lower[v]) dfs(dfs, v);

    std::vector<std::vector<std::string>> facets;
    for (const auto& c : maximal_chains) {
        std::vector<std::string> f;
        for (int v : c) f.push_back(p.labels.empty() ? std::to_string(v) : p.labels[v]);
        facets.push_back(std::move(f));
    }
    return SimplicialComplex::from_facets(facets);
}

inline SimplicialComplex barycentric_subdivision(const SimplicialComplex& k) {
    // Order complex of the face poset.
    std::vector<std::vector<int>> faces;
    for (int d = 0; d <= k.dim(); ++d)
        for (auto& f : k.faces_of_dim(d)) faces.push_back(f);
    Poset p;
    p.n = static_cast<int>(faces.size());
    p.less.assign(p.n, std::vector<bool>(p.n, false));
    for (int i = 0; i < p.n; ++i) {
        std::string lbl;
        for (int v : faces[i]) lbl += (lbl.empty() ? "" : ".") + k.label(v);
        p.labels.push_back("b[" + lbl + "]");
        for (int j = 0; j < p.n; ++j)
            if (i != j && faces[i].size() < faces[j].size() &&
                std::includes(faces[j].begin(), faces[j].end(), faces[i].begin(),
                              faces[i].end()))
                p.less[i][j] = true;
    }
    return order_complex(p);
}

// ---------------------------------------------------------------------------
// Reduced integer homology

struct HomologyProfile {
    struct Group {
        int free_rank = 0;
        std::vector<Int> torsion;  // invariant factors > 1
        bool trivial() const { return free_rank == 0 && torsion.empty(); }
        bool operator==(const Group& o) const {
            return free_rank == o.free_rank && torsion == o.torsion;
        }
    };
    std::vector<Group> reduced;  // degrees 0..dim

    bool all_trivial() const {
        for (const auto& g : reduced)
            if (!g.trivial()) return false;
        return true;
    }
};

inline HomologyProfile reduced_homology(const SimplicialComplex& k) {
    HomologyProfile h;
    int dim = k.dim();
    if (dim < 0) return h;

    std::vector<std::vector<std::vector<int>>> faces(dim + 1);
    std::vector<std::map<std::vector<int>, int>> index(dim + 1);
    for (int d = 0; d <= dim; ++d) {
        faces[d] = k.faces_of_dim(d);
        for (size_t i = 0; i < faces[d].size(); ++i) index[d][faces[d][i]] = static_cast<int>(i);
    }

    // boundary[d]: C_d -> C_{d-1}; boundary[0] is the augmentation to Z.
    std::vector<IntMat> boundary(dim + 2);
    boundary[0] = IntMat(1, static_cast<int>(faces[0].size()));
    for (int j = 0; j < boundary[0].cols(); ++j) boundary[0](0, j) = 1;
    for (int d = 1; d <= dim; ++d) {
        IntMat b(static_cast<int>(faces[d - 1].size()), static_cast<int>(faces[d].size()));
        for (size_t j = 0; j < faces[d].size(); ++j) {
            const auto& f = faces[d][j];
            std::vector<int> sub(f.size() - 1);
            for (size_t omit = 0; omit < f.size(); ++omit) {
                int t = 0;
                for (size_t i = 0; i < f.size(); ++i)
                    if (i != omit) sub[t++] = f[i];
                b(index[d - 1].at(sub), static_cast<int>(j)) =
                    (omit % 2 == 0) ? 1 : -1;
            }
        }
        boundary[d] = std::move(b);
    }
    boundary[dim + 1] = IntMat(static_cast<int>(faces[dim].size()), 0);

    std::vector<SNFResult> snf(dim + 2);
    for (int d = 0; d <= dim + 1; ++d) snf[d] = smith_normal_form(boundary[d]);

    h.reduced.resize(dim + 1);
    for (int d = 0; d <= dim; ++d) {
        int nd = static_cast<int>(faces[d].size());
        int rank_d = snf[d].diag_rank();
        int rank_up = snf[d + 1].diag_rank();
        h.reduced[d].free_rank = nd - rank_d - rank_up;
        for (int i = 0; i < rank_up; ++i)
            if (snf[d + 1].d(i, i) > 1) h.reduced[d].torsion.push_back(snf[d + 1].d(i, i));
    }
    return h;
}

inline Int euler_characteristic(const SimplicialComplex& k) {
    Int chi(0);
    for (int d = 0; d <= k.dim(); ++d) {
        Int c(static_cast<long>(k.faces_of_dim(d).size()));
        chi += (d % 2 == 0) ? c : -c;
    }
    return chi;
}

// ---------------------------------------------------------------------------
// Edge-path fundamental group

struct Presentation {
    int generators = 0;
    std::vector<std::vector<int>> relators;  // signed generator ids, 1-based
    std::vector<std::string> trace;

    bool empty() const { return generators == 0; }
};

struct Pi1Trivial {
    Presentation presentation;  // simplified to nothing; trace records the moves
};
struct Pi1Inconclusive {
    Presentation presentation;  // whatever was left when effort ran out
};
using Pi1Result = std::variant<Pi1Trivial, Pi1Inconclusive>;

namespace topo_detail {

inline void free_reduce(std::vector<int>& w) {
    std::vector<int> out;
    for (int g : w) {
        if (!out.empty() && out.back() == -g)
            out.pop_back();
        else
            out.push_back(g);
    }
    // cyclic reduction
    while (out.size() >= 2 && out.front() == -out.back()) {
        out.erase(out.begin());
        out.pop_back();
    }
    w = std::move(out);
}

inline std::vector<int> invert_word(const std::vector<int>& w) {
    std::vector<int> r;
    for (auto it = w.rbegin(); it != w.rend(); ++it) r.push_back(-*it);
    return r;
}

// Substitute generator g := replacement (a word) in w; occurrences of -g get
// the inverted replacement.
inline std::vector<int> substitute(const std::vector<int>& w, int g,
                                   const std::vector<int>& repl) {
    std::vector<int> out;
    std::vector<int> inv = invert_word(repl);
    for (int x : w) {
        if (x == g)
            out.insert(out.end(), repl.begin(), repl.end());
        else if (x == -g)
            out.insert(out.end(), inv.begin(), inv.end());
        else
            out.push_back(x);
    }
    return out;
}

}  // namespace topo_detail

struct DisconnectedComplexError : std::runtime_error {
    DisconnectedComplexError() : std::runtime_error("complex is not connected") {}
};

// Edge-path presentation on a spanning tree followed by bounded Tietze
// simplification.  Only a fully emptied presentation yields Trivial; an
// exhausted budget is Inconclusive, never a claim of nontriviality.
inline Pi1Result fundamental_group_trivial(const SimplicialComplex& k,
                                           long max_moves = 1000000,
                                           long max_relator_length = 10000) {
    using namespace topo_detail;
    int nv = k.num_vertices();
    std::set<std::pair<int, int>> edges;
    for (const auto& e : k.faces_of_dim(1)) edges.insert({e[0], e[1]});

    // spanning tree by BFS; complex must be connected
    std::vector<int> comp(nv, -1);
    std::set<std::pair<int, int>> tree;
    if (nv > 0) {
        std::queue<int> q;
        q.push(0);
        comp[0] = 0;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (const auto& [a, b] : edges) {
                int w = -1;
                if (a == v) w = b;
                if (b == v) w = a;
                if (w >= 0 && comp[w] < 0) {
                    comp[w] = 0;
                    tree.insert({std::min(v, w), std::max(v, w)});
                    q.push(w);
                }
            }
        }
        for (int v = 0; v < nv; ++v)
            if (comp[v] < 0) throw DisconnectedComplexError();
    }

    Presentation p;
    std::map<std::pair<int, int>, int> gen_id;  // non-tree edge (a<b) -> 1-based id
    for (const auto& e : edges)
        if (!tree.count(e)) gen_id[e] = ++p.generators;

    auto edge_word = [&](int a, int b) -> std::vector<int> {  // path a->b along edge
        auto key = std::make_pair(std::min(a, b), std::max(a, b));
        auto it = gen_id.find(key);
        if (it == gen_id.end()) return {};
        return {a < b ? it->second : -it->second};
    };

    for (const auto& t : k.faces_of_dim(2)) {
        std::vector<int> w;
        auto append = [&](std::vector<int> x) { w.insert(w.end(), x.begin(), x.end()); };
        append(edge_word(t[0], t[1]));
        append(edge_word(t[1], t[2]));
        append(edge_word(t[2], t[0]));
        free_reduce(w);
        if (!w.empty()) p.relators.push_back(std::move(w));
    }
    p.trace.push_back("presentation generators=" + std::to_string(p.generators) +
                      " relators=" + std::to_string(p.relators.size()));

    long moves = 0;
    std::vector<bool> alive(p.generators + 1, true);
    int remaining = p.generators;
    bool progress = true;
    while (progress && moves < max_moves) {
        progress = false;
        // find a relator using some generator exactly once; solve and substitute
        for (size_t ri = 0; ri < p.relators.size() && moves < max_moves; ++ri) {
            auto& r = p.relators[ri];
            free_reduce(r);
            if (r.empty()) {
                p.relators.erase(p.relators.begin() + ri--);
                continue;
            }
            int chosen = 0;
            size_t pos = 0;
            for (size_t i = 0; i < r.size() && !chosen; ++i) {
                int g = std::abs(r[i]);
                int count = 0;
                for (int x : r) count += std::abs(x) == g;
                if (count == 1) {
                    chosen = g;
                    pos = i;
                }
            }
            if (!chosen) continue;
            // r = u g^s v  =>  g^s = u^{-1} v^{-1}; replacement for g follows.
            std::vector<int> u(r.begin(), r.begin() + pos), v(r.begin() + pos + 1, r.end());
            std::vector<int> rhs = invert_word(u);
            auto vi = invert_word(v);
            rhs.insert(rhs.end(), vi.begin(), vi.end());
            std::vector<int> repl = (r[pos] > 0) ? rhs : invert_word(rhs);
            std::vector<int> removed = r;
            p.relators.erase(p.relators.begin() + ri--);
            bool too_long = false;
            for (auto& s : p.relators) {
                s = substitute(s, chosen, repl);
                free_reduce(s);
                if (static_cast<long>(s.size()) > max_relator_length) too_long = true;
            }
            alive[chosen] = false;
            --remaining;
            ++moves;
            p.trace.push_back("eliminate g" + std::to_string(chosen) + " via relator of length " +
                              std::to_string(removed.size()));
            progress = true;
            if (too_long) {
                moves = max_moves;
                p.trace.push_back("relator length budget exhausted");
            }
            break;
        }
    }

    for (size_t ri = 0; ri < p.relators.size(); ++ri) {
        free_reduce(p.relators[ri]);
        if (p.relators[ri].empty()) p.relators.erase(p.relators.begin() + ri--);
    }
    if (remaining == 0 && p.relators.empty()) {
        p.trace.push_back("trivial");
        return Pi1Trivial{p};
    }
    p.trace.push_back("inconclusive remaining=" + std::to_string(remaining));
    return Pi1Inconclusive{p};
}

// ---------------------------------------------------------------------------
// Shellability

struct ShellingOrder {
    std::vector<int> order;  // indices into facets()
};
struct NotShellable {};
struct EffortExceeded {};
using ShellingResult = std::variant<ShellingOrder, NotShellable, EffortExceeded>;

struct NonPureComplexError : std::runtime_error {
    NonPureComplexError() : std::runtime_error("shellability requires a pure complex") {}
};

namespace topo_detail {

// F_k's intersection with the union of earlier facets must be pure of
// codimension one (nonempty for d >= 1).
inline bool shelling_step_ok(const std::vector<std::vector<int>>& facets,
                             const std::vector<int>& prefix, int next) {
    const auto& f = facets[next];
    int d = static_cast<int>(f.size()) - 1;
    if (prefix.empty()) return true;
    std::vector<std::vector<int>> inters;
    for (int i : prefix) {
        std::vector<int> s;
        std::set_intersection(f.begin(), f.end(), facets[i].begin(), facets[i].end(),
                              std::back_inserter(s));
        inters.push_back(std::move(s));
    }
    std::vector<std::vector<int>> maximal;
    for (const auto& s : inters) {
        bool dominated = false;
        for (const auto& t : inters)
            if (&s != &t && s.size() < t.size() &&
                std::includes(t.begin(), t.end(), s.begin(), s.end()))
                dominated = true;
        if (!dominated && std::find(maximal.begin(), maximal.end(), s) == maximal.end())
            maximal.push_back(s);
    }
    if (d == 0) return true;  // points attach along the empty complex
    if (maximal.empty()) return false;
    for (const auto& s : maximal)
        if (static_cast<int>(s.size()) != d) return false;
    return true;
}

}  // namespace topo_detail

inline bool verify_shelling(const SimplicialComplex& k, const std::vector<int>& order) {
    const auto& facets = k.facets();
    if (order.size() != facets.size()) return false;
    std::vector<int> prefix;
    std::vector<bool> seen(facets.size(), false);
    for (int idx : order) {
        if (idx < 0 || idx >= static_cast<int>(facets.size()) || seen[idx]) return false;
        if (!topo_detail::shelling_step_ok(facets, prefix, idx)) return false;
        seen[idx] = true;
        prefix.push_back(idx);
    }
    return true;
}

inline ShellingResult is_shellable(const SimplicialComplex& k, long budget = 2000000) {
    if (k.empty()) return ShellingOrder{{}};
    if (!k.pure()) throw NonPureComplexError();
    const auto& facets = k.facets();
    int n = static_cast<int>(facets.size());

    std::set<std::vector<bool>> dead;  // facet subsets known not to extend
    std::vector<int> prefix;
    std::vector<bool> used(n, false);
    long steps = 0;
    bool exhausted_budget = false;

    auto rec = [&](auto&& self) -> std::optional<std::vector<int>> {
        if (static_cast<int>(prefix.size()) == n) return prefix;
        if (dead.count(used)) return std::nullopt;
        // order candidates by decreasing codimension-one contact
        std::vector<std::pair<int, int>> cands;
        for (int i = 0; i < n; ++i) {
            if (used[i]) continue;
            if (++steps > budget) {
                exhausted_budget = true;
                return std::nullopt;
            }
            if (!topo_detail::shelling_step_ok(facets, prefix, i)) continue;
            int contact = 0;
            for (int j : prefix) {
                std::vector<int> s;
                std::set_intersection(facets[i].begin(), facets[i].end(), facets[j].begin(),
                                      facets[j].end(), std::back_inserter(s));
                if (static_cast<int>(s.size()) == static_cast<int>(facets[i].size()) - 1)
                    ++contact;
            }
            cands.push_back({-contact, i});
        }
        std::sort(cands.begin(), cands.end());
        for (auto [_, i] : cands) {
            used[i] = true;
            prefix.push_back(i);
            auto r = self(self);
            if (r) return r;
            prefix.pop_back();
            used[i] = false;
            if (exhausted_budget) return std::nullopt;
        }
        dead.insert(used);
        return std::nullopt;
    };
    auto result = rec(rec);
    if (result) return ShellingOrder{*result};
    if (exhausted_budget) return EffortExceeded{};
    return NotShellable{};
}

}  // namespace wtc
