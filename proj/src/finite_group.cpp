#include "whcryst/finite_group.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <set>

namespace whcryst {

namespace {

const std::vector<std::pair<FiniteType, std::string>>& type_table() {
    static const std::vector<std::pair<FiniteType, std::string>> k = {
        {FiniteType::Trivial, "Trivial"}, {FiniteType::C2, "C2"},
        {FiniteType::C3, "C3"},           {FiniteType::C4, "C4"},
        {FiniteType::C6, "C6"},           {FiniteType::D2, "D2"},
        {FiniteType::D3, "D3"},           {FiniteType::D4, "D4"},
        {FiniteType::D6, "D6"},           {FiniteType::C4xC2, "C4xC2"},
        {FiniteType::C6xC2, "C6xC2"},     {FiniteType::D2xC2, "D2xC2"},
        {FiniteType::D3xC2, "D3xC2"},     {FiniteType::D4xC2, "D4xC2"},
        {FiniteType::D6xC2, "D6xC2"},     {FiniteType::A4, "A4"},
        {FiniteType::S4, "S4"},           {FiniteType::A4xC2, "A4xC2"},
        {FiniteType::S4xC2, "S4xC2"},
    };
    return k;
}

std::vector<int> compose_perm(const std::vector<int>& f, const std::vector<int>& g) {
    std::vector<int> h(f.size());
    for (size_t i = 0; i < f.size(); ++i) h[i] = f[g[i]];
    return h;
}

std::vector<int> inverse_perm(const std::vector<int>& f) {
    std::vector<int> h(f.size());
    for (size_t i = 0; i < f.size(); ++i) h[f[i]] = static_cast<int>(i);
    return h;
}

std::vector<int> identity_perm(int n) {
    std::vector<int> p(static_cast<size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    return p;
}

// Generator-image search. Finds maps a -> b sending gens[k] to a candidate
// image of equal element order and conjugacy class size, reconstructs the
// full map along a word tree, and keeps the verified homomorphic bijections.
std::vector<std::vector<int>> iso_search(const FiniteGroupTable& a, const FiniteGroupTable& b,
                                         bool collect_all) {
    std::vector<std::vector<int>> results;
    if (a.n != b.n) return results;
    const int n = a.n;
    std::vector<int> gens = find_generating_set(a);

    // Word tree: parent[x] = {previous element, generator index}.
    std::vector<int> bfs_order;
    std::vector<std::pair<int, int>> parent(static_cast<size_t>(n), {-1, -1});
    std::vector<char> seen(static_cast<size_t>(n), 0);
    bfs_order.push_back(0);
    seen[0] = 1;
    for (size_t head = 0; head < bfs_order.size(); ++head) {
        int cur = bfs_order[head];
        for (size_t k = 0; k < gens.size(); ++k) {
            int nxt = a.at(cur, gens[k]);
            if (!seen[nxt]) {
                seen[nxt] = 1;
                parent[nxt] = {cur, static_cast<int>(k)};
                bfs_order.push_back(nxt);
            }
        }
    }

    auto class_sizes = [](const FiniteGroupTable& t) {
        std::vector<int> sz(static_cast<size_t>(t.n), 0);
        for (const auto& cls : conjugacy_classes(t))
            for (int e : cls) sz[e] = static_cast<int>(cls.size());
        return sz;
    };
    std::vector<int> size_a = class_sizes(a), size_b = class_sizes(b);

    std::vector<std::vector<int>> candidates(gens.size());
    for (size_t k = 0; k < gens.size(); ++k) {
        int g = gens[k];
        for (int x = 0; x < n; ++x)
            if (b.element_order(x) == a.element_order(g) && size_b[x] == size_a[g])
                candidates[k].push_back(x);
        if (candidates[k].empty()) return results;
    }

    std::vector<int> images(gens.size(), -1);
    auto try_images = [&]() -> bool {
        std::vector<int> map(static_cast<size_t>(n), -1);
        map[0] = 0;
        for (int x : bfs_order) {
            if (x == 0) continue;
            auto [prev, k] = parent[x];
            map[x] = b.at(map[prev], images[static_cast<size_t>(k)]);
        }
        std::vector<char> hit(static_cast<size_t>(n), 0);
        for (int x = 0; x < n; ++x) {
            if (hit[map[x]]) return false;
            hit[map[x]] = 1;
        }
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (map[a.at(i, j)] != b.at(map[i], map[j])) return false;
        results.push_back(map);
        return true;
    };

    bool done = false;
    auto dfs = [&](auto&& self, size_t k) -> void {
        if (done) return;
        if (k == gens.size()) {
            if (try_images() && !collect_all) done = true;
            return;
        }
        for (int img : candidates[k]) {
            images[k] = img;
            self(self, k + 1);
            if (done) return;
        }
    };
    dfs(dfs, 0);
    return results;
}

} // namespace

std::string type_name(FiniteType t) {
    for (const auto& [ft, nm] : type_table())
        if (ft == t) return nm;
    throw InternalError("unnamed finite type tag");
}

std::optional<FiniteType> type_from_name(const std::string& name) {
    for (const auto& [ft, nm] : type_table())
        if (nm == name) return ft;
    return std::nullopt;
}

int type_order(FiniteType t) {
    switch (t) {
        case FiniteType::Trivial: return 1;
        case FiniteType::C2: return 2;
        case FiniteType::C3: return 3;
        case FiniteType::C4: return 4;
        case FiniteType::D2: return 4;
        case FiniteType::C6: return 6;
        case FiniteType::D3: return 6;
        case FiniteType::D4: return 8;
        case FiniteType::C4xC2: return 8;
        case FiniteType::D2xC2: return 8;
        case FiniteType::D6: return 12;
        case FiniteType::C6xC2: return 12;
        case FiniteType::D3xC2: return 12;
        case FiniteType::A4: return 12;
        case FiniteType::D4xC2: return 16;
        case FiniteType::D6xC2: return 24;
        case FiniteType::S4: return 24;
        case FiniteType::A4xC2: return 24;
        case FiniteType::S4xC2: return 48;
    }
    throw InternalError("unsized finite type tag");
}

FiniteType canonical_type(FiniteType t) {
    if (t == FiniteType::D3xC2) return FiniteType::D6;
    return t;
}

const std::vector<FiniteType>& catalog_types() {
    static const std::vector<FiniteType> k = {
        FiniteType::Trivial, FiniteType::C2,    FiniteType::C3,    FiniteType::C4,
        FiniteType::C6,      FiniteType::D2,    FiniteType::D3,    FiniteType::D4,
        FiniteType::D6,      FiniteType::C4xC2, FiniteType::C6xC2, FiniteType::D2xC2,
        FiniteType::D4xC2,   FiniteType::D6xC2, FiniteType::A4,    FiniteType::S4,
        FiniteType::A4xC2,   FiniteType::S4xC2,
    };
    return k;
}

FiniteGroupTable::FiniteGroupTable(int order, std::vector<int> table, std::vector<std::string> names)
    : n(order), mul(std::move(table)), labels(std::move(names)) {
    if (n <= 0 || mul.size() != static_cast<size_t>(n) * n)
        throw TableViolationError("table size does not match group order");
    for (int v : mul)
        if (v < 0 || v >= n) throw TableViolationError("table entry out of range");
    for (int i = 0; i < n; ++i)
        if (at(0, i) != i || at(i, 0) != i)
            throw TableViolationError("index 0 is not a two-sided identity");
    for (int i = 0; i < n; ++i) {
        std::vector<char> row(static_cast<size_t>(n), 0), col(static_cast<size_t>(n), 0);
        for (int j = 0; j < n; ++j) {
            if (row[at(i, j)]++) throw TableViolationError("repeated entry in row");
            if (col[at(j, i)]++) throw TableViolationError("repeated entry in column");
        }
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (at(at(i, j), k) != at(i, at(j, k)))
                    throw TableViolationError("associativity fails");
    if (!labels.empty() && labels.size() != static_cast<size_t>(n))
        throw TableViolationError("label count does not match group order");
}

int FiniteGroupTable::inverse_of(int i) const {
    for (int j = 0; j < n; ++j)
        if (at(i, j) == 0) return j;
    throw InternalError("element without inverse in validated table");
}

int FiniteGroupTable::element_order(int i) const {
    int x = i, ord = 1;
    while (x != 0) {
        x = at(x, i);
        ++ord;
        if (ord > n) throw InternalError("element order exceeds group order");
    }
    return ord;
}

bool FiniteGroupTable::is_abelian() const {
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (at(i, j) != at(j, i)) return false;
    return true;
}

std::vector<std::pair<int, int>> FiniteGroupTable::order_histogram() const {
    std::map<int, int> h;
    for (int i = 0; i < n; ++i) h[element_order(i)]++;
    return {h.begin(), h.end()};
}

FiniteGroupTable make_trivial() { return FiniteGroupTable(1, {0}); }

FiniteGroupTable make_cyclic(int n) {
    if (n < 1) throw ValidationError("cyclic group order must be positive");
    std::vector<int> mul(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) mul[static_cast<size_t>(i) * n + j] = (i + j) % n;
    return FiniteGroupTable(n, std::move(mul));
}

FiniteGroupTable make_dihedral(int n) {
    if (n < 1) throw ValidationError("dihedral parameter must be positive");
    // Indices: i = r^i for i < n, n + i = s r^i.
    const int m = 2 * n;
    auto idx = [n](bool flip, int i) { return (flip ? n : 0) + ((i % n) + n) % n; };
    std::vector<int> mul(static_cast<size_t>(m) * m);
    for (int p = 0; p < m; ++p)
        for (int q = 0; q < m; ++q) {
            bool fp = p >= n, fq = q >= n;
            int ip = p % n, iq = q % n;
            // r^i s = s r^-i; compose left element after right? Table is
            // row * column in left-to-right product order.
            int r;
            if (!fp && !fq) r = idx(false, ip + iq);
            else if (!fp && fq) r = idx(true, iq - ip);
            else if (fp && !fq) r = idx(true, ip + iq);
            else r = idx(false, iq - ip);
            mul[static_cast<size_t>(p) * m + q] = r;
        }
    return FiniteGroupTable(m, std::move(mul));
}

FiniteGroupTable make_direct_product(const FiniteGroupTable& a, const FiniteGroupTable& b) {
    const int n = a.n * b.n;
    std::vector<int> mul(static_cast<size_t>(n) * n);
    auto idx = [&](int i, int j) { return i * b.n + j; };
    for (int i1 = 0; i1 < a.n; ++i1)
        for (int j1 = 0; j1 < b.n; ++j1)
            for (int i2 = 0; i2 < a.n; ++i2)
                for (int j2 = 0; j2 < b.n; ++j2)
                    mul[static_cast<size_t>(idx(i1, j1)) * n + idx(i2, j2)] =
                        idx(a.at(i1, i2), b.at(j1, j2));
    return FiniteGroupTable(n, std::move(mul));
}

namespace {

FiniteGroupTable make_perm_group(bool even_only) {
    std::vector<std::array<int, 4>> elems;
    std::array<int, 4> p = {0, 1, 2, 3};
    do {
        int inv = 0;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                if (p[i] > p[j]) ++inv;
        if (!even_only || inv % 2 == 0) elems.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return make_table(
        elems,
        [](const std::array<int, 4>& f, const std::array<int, 4>& g) {
            // Left-to-right action: (f * g)(x) = g(f(x)).
            std::array<int, 4> h;
            for (int x = 0; x < 4; ++x) h[x] = g[f[x]];
            return h;
        },
        [](const std::array<int, 4>& f, const std::array<int, 4>& g) { return f == g; });
}

} // namespace

FiniteGroupTable make_A4() { return make_perm_group(true); }
FiniteGroupTable make_S4() { return make_perm_group(false); }

const FiniteGroupTable& reference_table(FiniteType t) {
    static const std::map<FiniteType, FiniteGroupTable> cache = [] {
        std::map<FiniteType, FiniteGroupTable> m;
        auto c2 = make_cyclic(2);
        m.emplace(FiniteType::Trivial, make_trivial());
        m.emplace(FiniteType::C2, c2);
        m.emplace(FiniteType::C3, make_cyclic(3));
        m.emplace(FiniteType::C4, make_cyclic(4));
        m.emplace(FiniteType::C6, make_cyclic(6));
        m.emplace(FiniteType::D2, make_dihedral(2));
        m.emplace(FiniteType::D3, make_dihedral(3));
        m.emplace(FiniteType::D4, make_dihedral(4));
        m.emplace(FiniteType::D6, make_dihedral(6));
        m.emplace(FiniteType::C4xC2, make_direct_product(make_cyclic(4), c2));
        m.emplace(FiniteType::C6xC2, make_direct_product(make_cyclic(6), c2));
        m.emplace(FiniteType::D2xC2, make_direct_product(make_dihedral(2), c2));
        m.emplace(FiniteType::D4xC2, make_direct_product(make_dihedral(4), c2));
        m.emplace(FiniteType::D6xC2, make_direct_product(make_dihedral(6), c2));
        m.emplace(FiniteType::A4, make_A4());
        m.emplace(FiniteType::S4, make_S4());
        m.emplace(FiniteType::A4xC2, make_direct_product(make_A4(), c2));
        m.emplace(FiniteType::S4xC2, make_direct_product(make_S4(), c2));
        return m;
    }();
    auto it = cache.find(canonical_type(t));
    if (it == cache.end()) throw InternalError("no reference table for type tag");
    return it->second;
}

std::vector<std::vector<int>> conjugacy_classes(const FiniteGroupTable& t) {
    std::vector<std::vector<int>> classes;
    std::vector<char> done(static_cast<size_t>(t.n), 0);
    for (int i = 0; i < t.n; ++i) {
        if (done[i]) continue;
        std::set<int> cls;
        for (int x = 0; x < t.n; ++x) cls.insert(t.at(t.at(x, i), t.inverse_of(x)));
        std::vector<int> v(cls.begin(), cls.end());
        for (int e : v) done[e] = 1;
        classes.push_back(std::move(v));
    }
    return classes;
}

namespace {

struct Dsu {
    std::vector<int> p;
    explicit Dsu(int n) : p(static_cast<size_t>(n)) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
    void unite(int a, int b) { p[find(a)] = find(b); }
    int count() {
        std::set<int> roots;
        for (size_t i = 0; i < p.size(); ++i) roots.insert(find(static_cast<int>(i)));
        return static_cast<int>(roots.size());
    }
};

} // namespace

int inverse_pair_classes(const FiniteGroupTable& t) {
    auto classes = conjugacy_classes(t);
    std::vector<int> class_of(static_cast<size_t>(t.n));
    for (size_t c = 0; c < classes.size(); ++c)
        for (int e : classes[c]) class_of[e] = static_cast<int>(c);
    Dsu dsu(static_cast<int>(classes.size()));
    for (int i = 0; i < t.n; ++i) dsu.unite(class_of[i], class_of[t.inverse_of(i)]);
    return dsu.count();
}

int cyclic_subgroup_classes(const FiniteGroupTable& t) {
    std::vector<std::vector<int>> subs;
    std::map<std::vector<int>, int> index;
    for (int g = 0; g < t.n; ++g) {
        std::set<int> pw;
        int x = 0;
        do {
            pw.insert(x);
            x = t.at(x, g);
        } while (x != 0);
        std::vector<int> s(pw.begin(), pw.end());
        if (index.emplace(s, static_cast<int>(subs.size())).second) subs.push_back(s);
    }
    Dsu dsu(static_cast<int>(subs.size()));
    for (size_t si = 0; si < subs.size(); ++si)
        for (int x = 0; x < t.n; ++x) {
            int xi = t.inverse_of(x);
            std::set<int> img;
            for (int e : subs[si]) img.insert(t.at(t.at(x, e), xi));
            std::vector<int> v(img.begin(), img.end());
            auto it = index.find(v);
            if (it == index.end()) throw InternalError("conjugate of cyclic subgroup not cyclic");
            dsu.unite(static_cast<int>(si), it->second);
        }
    return dsu.count();
}

std::vector<int> subgroup_closure(const FiniteGroupTable& t, std::vector<int> gens) {
    std::set<int> s = {0};
    std::vector<int> work = {0};
    for (int g : gens)
        if (s.insert(g).second) work.push_back(g);
    for (size_t head = 0; head < work.size(); ++head) {
        int a = work[head];
        std::vector<int> snapshot(s.begin(), s.end());
        for (int b : snapshot) {
            for (int c : {t.at(a, b), t.at(b, a)})
                if (s.insert(c).second) work.push_back(c);
        }
    }
    return {s.begin(), s.end()};
}

std::vector<int> find_generating_set(const FiniteGroupTable& t) {
    if (t.n == 1) return {};
    std::vector<int> pick;
    auto search = [&](auto&& self, int start, int remaining) -> bool {
        if (remaining == 0)
            return static_cast<int>(subgroup_closure(t, pick).size()) == t.n;
        for (int g = start; g < t.n; ++g) {
            pick.push_back(g);
            if (self(self, g + 1, remaining - 1)) return true;
            pick.pop_back();
        }
        return false;
    };
    for (int size = 1; size <= 4 && size < t.n; ++size) {
        pick.clear();
        if (search(search, 1, size)) return pick;
    }
    // Greedy fallback for high-rank tables: extend with the first element
    // outside the running closure until everything is generated.
    pick.clear();
    std::vector<int> cl = {0};
    while (static_cast<int>(cl.size()) < t.n) {
        for (int g = 1; g < t.n; ++g)
            if (!std::binary_search(cl.begin(), cl.end(), g)) {
                pick.push_back(g);
                break;
            }
        cl = subgroup_closure(t, pick);
    }
    return pick;
}

std::vector<std::vector<int>> automorphisms(const FiniteGroupTable& t) {
    return iso_search(t, t, true);
}

std::optional<std::vector<int>> isomorphism(const FiniteGroupTable& a, const FiniteGroupTable& b) {
    auto r = iso_search(a, b, false);
    if (r.empty()) return std::nullopt;
    return r.front();
}

OutGroup out_group(const FiniteGroupTable& t) {
    auto auts = automorphisms(t);
    std::set<std::vector<int>> inner;
    for (int x = 0; x < t.n; ++x) {
        std::vector<int> conj(static_cast<size_t>(t.n));
        int xi = t.inverse_of(x);
        for (int i = 0; i < t.n; ++i) conj[i] = t.at(t.at(x, i), xi);
        inner.insert(std::move(conj));
    }
    // Partition Aut into Inn-cosets, the trivial coset first, each coset
    // represented by its lexicographically smallest member.
    std::vector<std::vector<std::vector<int>>> cosets;
    for (const auto& f : auts) {
        bool placed = false;
        for (auto& coset : cosets)
            if (inner.count(compose_perm(f, inverse_perm(coset.front())))) {
                coset.push_back(f);
                placed = true;
                break;
            }
        if (!placed) cosets.push_back({f});
    }
    std::vector<std::vector<int>> reps;
    size_t id_coset = 0;
    auto idp = identity_perm(t.n);
    for (size_t c = 0; c < cosets.size(); ++c) {
        auto& coset = cosets[c];
        std::sort(coset.begin(), coset.end());
        if (std::binary_search(coset.begin(), coset.end(), idp)) id_coset = c;
    }
    std::swap(cosets[0], cosets[id_coset]);
    std::sort(cosets.begin() + 1, cosets.end());
    for (const auto& coset : cosets) reps.push_back(coset.front());
    if (!inner.count(reps[0])) throw InternalError("trivial outer class lost its position");

    const int m = static_cast<int>(reps.size());
    auto coset_of = [&](const std::vector<int>& f) {
        for (int c = 0; c < m; ++c)
            if (inner.count(compose_perm(f, inverse_perm(reps[c])))) return c;
        throw InternalError("automorphism escapes its coset partition");
    };
    std::vector<int> mul(static_cast<size_t>(m) * m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            mul[static_cast<size_t>(i) * m + j] = coset_of(compose_perm(reps[i], reps[j]));
    return {FiniteGroupTable(m, std::move(mul)), std::move(reps)};
}

int outer_class_order(const FiniteGroupTable& t, const std::vector<int>& aut) {
    if (aut.size() != static_cast<size_t>(t.n))
        throw ValidationError("automorphism length does not match group order");
    std::set<std::vector<int>> inner;
    for (int x = 0; x < t.n; ++x) {
        std::vector<int> conj(static_cast<size_t>(t.n));
        int xi = t.inverse_of(x);
        for (int i = 0; i < t.n; ++i) conj[i] = t.at(t.at(x, i), xi);
        inner.insert(std::move(conj));
    }
    std::vector<int> p = aut;
    for (int m = 1; m <= static_cast<int>(inner.size()) * t.n + 1; ++m) {
        if (inner.count(p)) return m;
        p = compose_perm(p, aut);
    }
    throw InternalError("outer class order search did not terminate");
}

FiniteType identify_type(const FiniteGroupTable& t) {
    const bool ab = t.is_abelian();
    const auto hist = t.order_histogram();
    for (FiniteType ft : catalog_types()) {
        if (type_order(ft) != t.n) continue;
        const FiniteGroupTable& ref = reference_table(ft);
        if (ref.is_abelian() != ab || ref.order_histogram() != hist) continue;
        if (isomorphism(ref, t)) return ft;
    }
    throw NotInCatalogError("finite group of order " + std::to_string(t.n) +
                            " matches no catalog type");
}

} // namespace whcryst
