#include <hardhom/solver.hpp>

#include <algorithm>
#include <stdexcept>

using std::int64_t;
using std::nullopt;
using std::optional;
using std::vector;

namespace hardhom
{

auto ListHomInstance::full_lists(Graph g, Graph h) -> ListHomInstance
{
    // Plain HOM instances leave `lists` empty rather than materialising one
    // full list per vertex: reduction outputs can reach tens of thousands of
    // vertices on each side, where explicit full lists are quadratic.
    ListHomInstance inst;
    inst.g = std::move(g);
    inst.h = std::move(h);
    return inst;
}

auto ListHomInstance::full() const -> bool
{
    return lists.empty();
}

auto ListHomInstance::validate() const -> void
{
    if (lists.empty())
        return;
    if (int(lists.size()) != g.size())
        throw std::invalid_argument{"one list per vertex of g required"};
    for (auto & list : lists)
        for (int u : list)
            if (u < 0 || u >= h.size())
                throw std::invalid_argument{"list element out of range"};
}

auto ListHomInstance::materialized_lists() const -> vector<vector<int>>
{
    if (! lists.empty())
        return lists;
    vector<int> all(h.size());
    for (int u = 0; u < h.size(); ++u)
        all[u] = u;
    return vector<vector<int>>(g.size(), all);
}

auto ListHomInstance::list_sets() const -> vector<DynBitset>
{
    vector<DynBitset> sets(g.size(), DynBitset(h.size()));
    if (lists.empty()) {
        for (auto & set : sets)
            for (int u = 0; u < h.size(); ++u)
                set.set(u);
        return sets;
    }
    for (int v = 0; v < g.size(); ++v)
        for (int u : lists[v])
            sets[v].set(u);
    return sets;
}

namespace
{
    auto common_neighbour_pairs(const Graph & g) -> vector<std::pair<int, int>>
    {
        vector<DynBitset> seen(g.size(), DynBitset(g.size()));
        vector<std::pair<int, int>> pairs;
        for (int w = 0; w < g.size(); ++w) {
            auto & nb = g.neighbours(w);
            for (std::size_t i = 0; i < nb.size(); ++i)
                for (std::size_t j = i + 1; j < nb.size(); ++j) {
                    int u = nb[i], v = nb[j];
                    if (! seen[u].test(v)) {
                        seen[u].set(v);
                        pairs.emplace_back(u, v);
                    }
                }
        }
        return pairs;
    }
}

auto verify(const ListHomInstance & inst, const Homomorphism & m, Mode mode) -> bool
{
    if (int(m.map.size()) != inst.g.size())
        throw std::invalid_argument{"mapping length mismatch"};
    for (int t : m.map)
        if (t < 0 || t >= inst.h.size())
            throw std::invalid_argument{"mapping target out of range"};

    auto sets = inst.list_sets();
    for (int v = 0; v < inst.g.size(); ++v)
        if (! sets[v].test(m.map[v]))
            return false;
    for (auto & [u, v] : inst.g.edges())
        if (! inst.h.adjacent(m.map[u], m.map[v]))
            return false;
    if (mode == Mode::LocallyInjective)
        for (auto & [u, v] : common_neighbour_pairs(inst.g))
            if (m.map[u] == m.map[v])
                return false;
    return true;
}

auto solve_brute(const ListHomInstance & inst, Mode mode, int64_t budget) -> SolveResult
{
    inst.validate();
    SolveResult result;

    auto lists = inst.materialized_lists();
    for (auto & list : lists)
        std::sort(list.begin(), list.end());

    __int128 product = 1;
    for (auto & list : lists) {
        product *= __int128(list.size());
        if (product > budget) {
            result.status = Status::BudgetExceeded;
            return result;
        }
    }
    if (product == 0) {
        result.status = Status::Unsatisfiable;
        return result;
    }

    int n = inst.g.size();
    vector<int> idx(n, 0);
    Homomorphism m{vector<int>(n, 0)};
    while (true) {
        for (int v = 0; v < n; ++v)
            m.map[v] = lists[v][idx[v]];
        ++result.stats.nodes_explored;
        if (verify(inst, m, mode)) {
            result.status = Status::Satisfiable;
            result.witness = m;
            return result;
        }
        int v = n - 1;
        while (v >= 0 && idx[v] + 1 == int(lists[v].size()))
            idx[v--] = 0;
        if (v < 0)
            break;
        ++idx[v];
    }
    result.status = Status::Unsatisfiable;
    return result;
}

namespace
{
    enum class ConstraintKind
    {
        Edge,
        Difference
    };

    // The two homomorphism modes compile to the same binary-constraint
    // engine: edges of g demand adjacent images, and (in locally injective
    // mode) pairs with a common neighbour demand distinct images.
    struct Constraint
    {
        int other;
        ConstraintKind kind;
        int id;     // shared by both directions of the same constraint
        int arc;    // unique per direction; the reverse direction is arc ^ 1
    };

    struct Csp
    {
        const Graph & h;
        int n_vars;
        int n_constraints = 0;
        vector<DynBitset> domains;
        vector<vector<Constraint>> constraints;
        // Interchangeable-value classes: two target vertices are twins when
        // transposing them is an automorphism of h that also fixes every
        // list, i.e. they have the same neighbourhood (closed for adjacent
        // pairs, open otherwise) and belong to the same lists. A value of a
        // class is redundant in search while neither it nor a lower class
        // member has been used by the partial assignment: the transposition
        // carries any solution of one branch to the other. The gadget
        // targets built by the reductions contain large cliques of twins,
        // and this pruning is what makes their instances decidable.
        vector<int> twin_class;

        Csp(const ListHomInstance & inst, Mode mode) :
            h(inst.h),
            n_vars(inst.g.size()),
            domains(inst.list_sets()),
            constraints(inst.g.size())
        {
            auto link = [&](int u, int v, ConstraintKind kind) {
                constraints[u].push_back({v, kind, n_constraints, 2 * n_constraints});
                constraints[v].push_back({u, kind, n_constraints, 2 * n_constraints + 1});
                ++n_constraints;
            };
            for (auto & [u, v] : inst.g.edges())
                link(u, v, ConstraintKind::Edge);
            if (mode == Mode::LocallyInjective)
                for (auto & [u, v] : common_neighbour_pairs(inst.g))
                    if (! inst.g.adjacent(u, v))
                        link(u, v, ConstraintKind::Difference);

            int hn = h.size();
            twin_class.assign(hn, -1);
            auto lists_agree = [&](int a, int b) {
                for (auto & dom : domains)
                    if (dom.test(a) != dom.test(b))
                        return false;
                return true;
            };
            // N(a)\{b} == N(b)\{a} covers both flavours: for adjacent pairs
            // it is equality of closed neighbourhoods, for non-adjacent
            // pairs equality of open ones.
            auto twins = [&](int a, int b) {
                auto na = h.neighbour_set(a), nb = h.neighbour_set(b);
                na.reset(b);
                nb.reset(a);
                return na == nb && lists_agree(a, b);
            };
            // A class mixing both flavours would not be pairwise sound
            // (a closed-twin and an open-twin of the representative are not
            // twins of each other), so the first member fixes the flavour.
            for (int a = 0; a < hn; ++a) {
                if (twin_class[a] != -1)
                    continue;
                twin_class[a] = a;
                int flavour = -1;
                for (int b = a + 1; b < hn; ++b) {
                    if (twin_class[b] != -1)
                        continue;
                    int f = h.adjacent(a, b) ? 1 : 0;
                    if ((flavour == -1 || flavour == f) && twins(a, b)) {
                        twin_class[b] = a;
                        flavour = f;
                    }
                }
            }
        }

        // Remove values of u unsupported over (u, v). Returns whether the
        // domain changed; wipeout reported through the out-parameter.
        auto revise(vector<DynBitset> & dom, int u, int v, ConstraintKind kind,
            bool & wiped) const -> bool
        {
            bool changed = false;
            if (kind == ConstraintKind::Edge) {
                for (int a = dom[u].first(); a != -1; a = dom[u].next(a))
                    if (! h.neighbour_set(a).intersects(dom[v])) {
                        dom[u].reset(a);
                        changed = true;
                    }
            }
            else {
                int c = dom[v].count();
                if (c == 1) {
                    int b = dom[v].first();
                    if (dom[u].test(b)) {
                        dom[u].reset(b);
                        changed = true;
                    }
                }
                else if (c == 0) {
                    dom[u] = DynBitset(h.size());
                    changed = true;
                }
            }
            if (changed)
                wiped = dom[u].none();
            return changed;
        }

        // AC-3 to fixpoint; false on domain wipeout. When weights are
        // supplied, the constraint that caused a wipeout is bumped (the
        // dom/wdeg conflict heuristic of the searcher below).
        auto propagate(vector<DynBitset> & dom, int seed_var = -1,
            vector<double> * weights = nullptr) const -> bool
        {
            vector<char> queued(n_vars, 0);
            vector<int> queue;
            auto enqueue_neighbours_of = [&](int v) {
                for (auto & c : constraints[v])
                    if (! queued[c.other]) {
                        queued[c.other] = 1;
                        queue.push_back(c.other);
                    }
            };
            if (seed_var == -1)
                for (int u = 0; u < n_vars; ++u) {
                    queued[u] = 1;
                    queue.push_back(u);
                }
            else
                enqueue_neighbours_of(seed_var);

            while (! queue.empty()) {
                int u = queue.back();
                queue.pop_back();
                queued[u] = 0;
                bool changed = false, wiped = false;
                for (auto & c : constraints[u]) {
                    changed |= revise(dom, u, c.other, c.kind, wiped);
                    if (wiped) {
                        if (weights)
                            (*weights)[c.id] += 1;
                        return false;
                    }
                }
                if (changed)
                    enqueue_neighbours_of(u);
            }
            return true;
        }

        // Singleton-arc-consistency pass: drop any value whose assignment
        // wipes some domain out. This is what collapses the rigid gadget
        // instances before search begins.
        auto singleton_prune(vector<DynBitset> & dom) const -> bool
        {
            bool changed = true;
            while (changed) {
                changed = false;
                for (int u = 0; u < n_vars; ++u)
                    for (int a = dom[u].first(); a != -1; a = dom[u].next(a)) {
                        auto probe = dom;
                        probe[u] = DynBitset(h.size());
                        probe[u].set(a);
                        if (! propagate(probe, u)) {
                            dom[u].reset(a);
                            changed = true;
                            if (dom[u].none())
                                return false;
                        }
                    }
            }
            return true;
        }
    };

    // Interchangeable-variable classes: two source vertices are twins when
    // transposing them is an automorphism of the constraint network fixing
    // every other variable, and their root domains coincide (root domains
    // are contained in the lists, so equal domains let the transposition
    // carry any solution to another). When a branch x = a has failed, a
    // also fails for every unassigned twin y at the same node: a solution
    // with y = a would swap into one with x = a. Classes are verified
    // pairwise, so pruning between any two members is justified directly.
    auto variable_twin_classes(const Csp & csp, const vector<DynBitset> & dom) -> vector<int>
    {
        int n = csp.n_vars;
        vector<int> cls(n, -1);
        if (n > 2000) {
            // Detection is quadratic; very large instances skip the pruning.
            for (int u = 0; u < n; ++u)
                cls[u] = u;
            return cls;
        }
        auto rel = [&](int u, int v) {
            vector<std::pair<int, int>> r;
            for (auto & c : csp.constraints[u])
                if (c.other != v)
                    r.emplace_back(c.other, int(c.kind));
            std::sort(r.begin(), r.end());
            return r;
        };
        auto mutual = [&](int u, int v) {
            vector<int> kinds;
            for (auto & c : csp.constraints[u])
                if (c.other == v)
                    kinds.push_back(int(c.kind));
            std::sort(kinds.begin(), kinds.end());
            return kinds;
        };
        auto twins = [&](int u, int v) {
            return dom[u] == dom[v] && mutual(u, v) == mutual(v, u)
                && rel(u, v) == rel(v, u);
        };
        for (int u = 0; u < n; ++u) {
            if (cls[u] != -1)
                continue;
            cls[u] = u;
            vector<int> members{u};
            for (int v = u + 1; v < n; ++v) {
                if (cls[v] != -1)
                    continue;
                bool ok = true;
                for (int w : members)
                    if (! twins(w, v)) {
                        ok = false;
                        break;
                    }
                if (ok) {
                    cls[v] = u;
                    members.push_back(v);
                }
            }
        }
        return cls;
    }

    // Depth-first maintained-arc-consistency search. Domains live in flat
    // word arrays with one snapshot per depth, so descending a level is a
    // single memcpy rather than a vector of bitset copies.
    struct Searcher
    {
        const Csp & csp;
        SolveStats stats;
        // Conflict weights for dom/wdeg: start at 1 per constraint and grow
        // each time the constraint wipes a domain out during propagation.
        // Rigid-gadget instances have large symmetric regions where plain
        // minimum-remaining-values ties everywhere; the weights steer the
        // search back to the part of the instance that actually conflicts.
        vector<double> weights;
        // How many assigned variables currently use each target vertex;
        // drives the twin-class value pruning.
        vector<int> used;
        int n, hn, wp;
        vector<std::uint64_t> rows;             // adjacency rows of the target
        vector<vector<std::uint64_t>> levels;   // one domain snapshot per depth
        vector<char> assigned;
        vector<int> map;
        // Propagation works on directed arcs rather than variables, so a
        // change in one neighbour does not force revising a variable
        // against all of its other, unchanged neighbours.
        struct Arc
        {
            int u, v;
            ConstraintKind kind;
            int id;
        };
        vector<Arc> arcs;
        vector<char> queued;    // one flag per directed arc
        vector<int> queue;
        vector<int> var_class;
        vector<std::uint64_t> root_row;     // level-0 snapshot for restarts
        // Conflict weight increments grow geometrically, which decays old
        // conflicts relative to fresh ones and keeps the heuristic focused
        // on the currently contradictory region.
        double bump = 1.0;
        // Restart state: a run stops once it exceeds its node budget, and
        // later runs perturb the variable scores so the heavy tail of one
        // ordering does not dominate.
        std::int64_t node_limit = 0;
        std::int64_t run_nodes = 0;
        bool truncated = false;
        std::uint64_t jitter_state = 0;
        vector<double> var_noise;

        Searcher(const Csp & c, const vector<DynBitset> & root) :
            csp(c),
            weights(c.n_constraints, 1.0),
            used(c.h.size(), 0),
            n(c.n_vars),
            hn(c.h.size()),
            wp((c.h.size() + 63) / 64),
            rows(std::size_t(c.h.size()) * wp, 0),
            assigned(c.n_vars, 0),
            map(c.n_vars, -1),
            arcs(std::size_t(c.n_constraints) * 2),
            queued(std::size_t(c.n_constraints) * 2, 0),
            var_class(variable_twin_classes(c, root))
        {
            for (int u = 0; u < n; ++u)
                for (auto & c2 : c.constraints[u])
                    arcs[c2.arc] = {u, c2.other, c2.kind, c2.id};
            for (int a = 0; a < hn; ++a)
                for (int b : c.h.neighbours(a))
                    rows[std::size_t(a) * wp + (b >> 6)] |= std::uint64_t{1} << (b & 63);
            ensure_level(0);
            for (int v = 0; v < n; ++v)
                for (int a = root[v].first(); a != -1; a = root[v].next(a))
                    dom(0, v)[a >> 6] |= std::uint64_t{1} << (a & 63);
            root_row = levels[0];
        }

        auto begin_run(std::int64_t limit, std::uint64_t seed, double amp) -> void
        {
            levels[0] = root_row;
            std::fill(assigned.begin(), assigned.end(), 0);
            std::fill(map.begin(), map.end(), -1);
            std::fill(used.begin(), used.end(), 0);
            node_limit = limit;
            run_nodes = 0;
            truncated = false;
            jitter_state = seed * 2654435769u + 1;
            var_noise.assign(n, 0);
            if (amp > 0)
                for (auto & x : var_noise)
                    x = amp * noise();
        }

        auto noise() -> double
        {
            // xorshift64*; cheap enough to draw once per variable per node.
            jitter_state ^= jitter_state >> 12;
            jitter_state ^= jitter_state << 25;
            jitter_state ^= jitter_state >> 27;
            return double((jitter_state * 2685821657736338717ull) >> 40)
                / double(std::uint64_t{1} << 24);
        }

        auto ensure_level(int level) -> void
        {
            while (int(levels.size()) <= level)
                levels.emplace_back(std::size_t(n) * wp, 0);
        }

        auto dom(int level, int v) -> std::uint64_t *
        {
            return levels[level].data() + std::size_t(v) * wp;
        }

        auto dom_count(const std::uint64_t * d) const -> int
        {
            int c = 0;
            for (int i = 0; i < wp; ++i)
                c += __builtin_popcountll(d[i]);
            return c;
        }

        auto dom_single(const std::uint64_t * d) const -> int
        {
            for (int i = 0; i < wp; ++i)
                if (d[i])
                    return i * 64 + __builtin_ctzll(d[i]);
            return -1;
        }

        // Remove values of u unsupported over (u, v); mirrors Csp::revise.
        auto revise(int level, int u, int v, ConstraintKind kind, bool & wiped) -> bool
        {
            std::uint64_t * du = dom(level, u);
            const std::uint64_t * dv = dom(level, v);
            bool changed = false;
            if (kind == ConstraintKind::Edge) {
                for (int w = 0; w < wp; ++w)
                    for (std::uint64_t bits = du[w]; bits; bits &= bits - 1) {
                        int a = w * 64 + __builtin_ctzll(bits);
                        const std::uint64_t * row = rows.data() + std::size_t(a) * wp;
                        std::uint64_t live = 0;
                        for (int i = 0; i < wp; ++i)
                            live |= row[i] & dv[i];
                        if (! live) {
                            du[w] &= ~(std::uint64_t{1} << (a & 63));
                            changed = true;
                        }
                    }
            }
            else {
                int c = dom_count(dv);
                if (c == 1) {
                    int b = dom_single(dv);
                    if (du[b >> 6] & (std::uint64_t{1} << (b & 63))) {
                        du[b >> 6] &= ~(std::uint64_t{1} << (b & 63));
                        changed = true;
                    }
                }
                else if (c == 0) {
                    std::fill(du, du + wp, 0);
                    changed = true;
                }
            }
            if (changed)
                wiped = dom_count(du) == 0;
            return changed;
        }

        // AC-3 to fixpoint in place at the given depth; the constraint
        // causing a wipeout gets its dom/wdeg weight bumped.
        auto ac3(int level, int seed_var) -> bool
        {
            queue.clear();
            // The domain of v changed: queue every arc pointing into v
            // (except the one from `skip`, whose revision caused the change).
            auto enqueue_arcs_into = [&](int v, int skip) {
                for (auto & c : csp.constraints[v])
                    if (c.other != skip && ! queued[c.arc ^ 1]) {
                        queued[c.arc ^ 1] = 1;
                        queue.push_back(c.arc ^ 1);
                    }
            };
            enqueue_arcs_into(seed_var, -1);
            while (! queue.empty()) {
                int ai = queue.back();
                queue.pop_back();
                queued[ai] = 0;
                const Arc & arc = arcs[ai];
                bool wiped = false;
                if (revise(level, arc.u, arc.v, arc.kind, wiped)) {
                    if (wiped) {
                        weights[arc.id] += bump;
                        bump *= 1.15;
                        if (bump > 1e100) {
                            for (auto & w : weights)
                                w = std::max(w / 1e100, 1e-100);
                            bump /= 1e100;
                        }
                        for (int a : queue)
                            queued[a] = 0;
                        queue.clear();
                        return false;
                    }
                    enqueue_arcs_into(arc.u, arc.v);
                }
            }
            return true;
        }

        // A value is redundant when an interchangeable lower value is also
        // available and neither has been touched by the partial assignment:
        // the transposition of the two is an automorphism of the target
        // fixing the assignment, so the lower branch already covers this one.
        auto redundant(int a, const std::uint64_t * du) const -> bool
        {
            if (used[a] > 0)
                return false;
            int cls = csp.twin_class[a];
            for (int b = cls; b < a; ++b)
                if (csp.twin_class[b] == cls && used[b] == 0
                    && (du[b >> 6] & (std::uint64_t{1} << (b & 63))))
                    return true;
            return false;
        }

        auto pick_variable(int level) -> int
        {
            int best = -1;
            double best_score = 0;
            for (int u = 0; u < n; ++u) {
                if (assigned[u])
                    continue;
                double wdeg = 1;
                for (auto & c : csp.constraints[u])
                    if (! assigned[c.other])
                        wdeg += weights[c.id];
                double score = dom_count(dom(level, u)) / wdeg * (1.0 + var_noise[u]);
                if (best == -1 || score < best_score) {
                    best = u;
                    best_score = score;
                }
            }
            return best;
        }

        // The branch u = a has failed under the current partial assignment,
        // so a is also dead for every unassigned twin of u at this node.
        // Returns false when a twin's domain empties, killing the node.
        auto prune_failed(int level, int u, int a) -> bool
        {
            int cls = var_class[u];
            for (int y = cls; y < n; ++y) {
                if (y == u || var_class[y] != cls || assigned[y])
                    continue;
                std::uint64_t * dy = dom(level, y);
                dy[a >> 6] &= ~(std::uint64_t{1} << (a & 63));
                if (dom_count(dy) == 0)
                    return false;
            }
            return true;
        }

        auto search(int level) -> bool
        {
            ++stats.nodes_explored;
            if (++run_nodes > node_limit) {
                truncated = true;
                return false;
            }
            int u = pick_variable(level);
            if (u == -1)
                return true;
            const std::uint64_t * du = dom(level, u);
            for (int w = 0; w < wp; ++w)
                for (std::uint64_t bits = du[w]; bits; bits &= bits - 1) {
                    int a = w * 64 + __builtin_ctzll(bits);
                    if (redundant(a, du))
                        continue;
                    ensure_level(level + 1);
                    std::copy(dom(level, 0), dom(level, 0) + std::size_t(n) * wp,
                        dom(level + 1, 0));
                    du = dom(level, u);
                    std::uint64_t * cu = dom(level + 1, u);
                    std::fill(cu, cu + wp, 0);
                    cu[w] |= std::uint64_t{1} << (a & 63);
                    if (! ac3(level + 1, u)) {
                        if (! prune_failed(level, u, a))
                            return false;
                        continue;
                    }
                    assigned[u] = 1;
                    map[u] = a;
                    ++used[a];
                    if (search(level + 1))
                        return true;
                    --used[a];
                    assigned[u] = 0;
                    // A truncated subtree is not a proven failure; stop the
                    // run without drawing any conclusion from it.
                    if (truncated)
                        return false;
                    if (! prune_failed(level, u, a))
                        return false;
                }
            return false;
        }
    };
}

auto solve_backtrack(const ListHomInstance & inst, Mode mode) -> SolveResult
{
    inst.validate();
    SolveResult result;
    if (inst.g.size() == 0) {
        result.status = Status::Satisfiable;
        result.witness = Homomorphism{{}};
        return result;
    }

    Csp csp(inst, mode);
    auto dom = csp.domains;
    // Singleton probing is quadratic in the domain volume, so it only pays
    // for itself on small instances; beyond the gate the search's own
    // propagation is the cheaper route to the same verdict.
    bool consistent = csp.propagate(dom);
    if (consistent && int64_t(csp.n_vars) * inst.h.size() <= 3000)
        consistent = csp.singleton_prune(dom);
    if (! consistent) {
        result.status = Status::Unsatisfiable;
        return result;
    }

    // The first run is deterministic with a generous budget, which the vast
    // majority of instances never exhaust. Only when that budget runs out do
    // geometric restarts with jittered variable scores kick in, as insurance
    // against orderings with pathological tails: doubling budgets keep the
    // total work within a constant factor of a single run.
    Searcher searcher(csp, dom);
    bool found = false;
    std::int64_t limit = 2'000'000;
    for (std::uint64_t run = 0;; ++run, limit *= 2) {
        searcher.begin_run(limit, run, run == 0 ? 0.0 : 0.15);
        found = searcher.search(0);
        if (found || ! searcher.truncated)
            break;
    }
    result.stats = searcher.stats;
    if (! found) {
        result.status = Status::Unsatisfiable;
        return result;
    }

    result.status = Status::Satisfiable;
    result.witness = Homomorphism{searcher.map};
    if (! verify(inst, *result.witness, mode))
        throw std::logic_error{"backtracking produced a non-verifying witness"};
    return result;
}

auto solve_vc(const ListHomInstance & inst, const vector<int> & cover) -> SolveResult
{
    inst.validate();
    if (! is_vertex_cover(inst.g, cover))
        throw std::invalid_argument{"given set is not a vertex cover"};

    SolveResult result;
    auto sorted_cover = cover;
    std::sort(sorted_cover.begin(), sorted_cover.end());
    sorted_cover.erase(std::unique(sorted_cover.begin(), sorted_cover.end()), sorted_cover.end());

    vector<char> in_cover(inst.g.size(), 0);
    for (int v : sorted_cover)
        in_cover[v] = 1;

    auto lists = inst.materialized_lists();
    for (auto & list : lists)
        std::sort(list.begin(), list.end());

    vector<int> map(inst.g.size(), -1);

    // Extension check over the independent remainder: every non-cover vertex
    // needs some listed target whose neighbourhood contains the images of all
    // of its (cover) neighbours.
    auto extend = [&]() -> bool {
        for (int v = 0; v < inst.g.size(); ++v) {
            if (in_cover[v])
                continue;
            int choice = -1;
            for (int u : lists[v]) {
                bool ok = true;
                for (int w : inst.g.neighbours(v))
                    if (! inst.h.adjacent(u, map[w])) {
                        ok = false;
                        break;
                    }
                if (ok) {
                    choice = u;
                    break;
                }
            }
            if (choice == -1)
                return false;
            map[v] = choice;
        }
        return true;
    };

    std::function<bool(std::size_t)> go = [&](std::size_t depth) -> bool {
        ++result.stats.nodes_explored;
        if (depth == sorted_cover.size()) {
            ++result.stats.assignments_tried;
            return extend();
        }
        int v = sorted_cover[depth];
        for (int u : lists[v]) {
            bool ok = true;
            for (int w : inst.g.neighbours(v))
                if (in_cover[w] && map[w] != -1 && ! inst.h.adjacent(u, map[w])) {
                    ok = false;
                    break;
                }
            if (! ok)
                continue;
            map[v] = u;
            if (go(depth + 1))
                return true;
            map[v] = -1;
        }
        return false;
    };

    if (go(0)) {
        result.status = Status::Satisfiable;
        result.witness = Homomorphism{map};
        if (! verify(inst, *result.witness, Mode::Plain))
            throw std::logic_error{"cover search produced a non-verifying witness"};
    }
    else
        result.status = Status::Unsatisfiable;
    return result;
}

auto bipartite_fast_path(const ListHomInstance & inst) -> optional<Status>
{
    inst.validate();
    if (! inst.full())
        for (int v = 0; v < inst.g.size(); ++v)
            if (int(inst.lists[v].size()) != inst.h.size())
                throw std::invalid_argument{"fast path requires full lists"};

    if (inst.g.size() == 0)
        return Status::Satisfiable;
    if (inst.h.size() == 0)
        return Status::Unsatisfiable;
    if (inst.h.edge_count() == 0)
        return inst.g.edge_count() == 0 ? Status::Satisfiable : Status::Unsatisfiable;
    if (! is_bipartite(inst.h))
        return nullopt;
    if (inst.g.edge_count() == 0)
        return Status::Satisfiable;
    return is_bipartite(inst.g) ? Status::Satisfiable : Status::Unsatisfiable;
}

auto for_each_witness(const ListHomInstance & inst, Mode mode,
    const std::function<bool(const Homomorphism &)> & f) -> void
{
    inst.validate();
    if (inst.g.size() == 0) {
        f(Homomorphism{{}});
        return;
    }

    Csp csp(inst, mode);
    auto dom = csp.domains;
    if (! csp.propagate(dom))
        return;

    // Enumeration visits every leaf, so per-node cost dominates; instead of
    // re-running AC-3 with full domain copies we forward-check over flat
    // word arrays, one domain snapshot per search level. Static index order
    // with ascending values yields lexicographic output, and every leaf is a
    // witness by construction (each binary constraint is enforced when its
    // earlier endpoint is assigned).
    int n = csp.n_vars;
    int hn = csp.h.size();
    int wp = (hn + 63) / 64;
    vector<std::uint64_t> rows(std::size_t(hn) * wp, 0);
    for (int a = 0; a < hn; ++a)
        for (int b : csp.h.neighbours(a))
            rows[std::size_t(a) * wp + (b >> 6)] |= std::uint64_t{1} << (b & 63);
    vector<std::uint64_t> levels(std::size_t(n + 1) * n * wp, 0);
    for (int u = 0; u < n; ++u)
        for (int b = dom[u].first(); b != -1; b = dom[u].next(b))
            levels[std::size_t(u) * wp + (b >> 6)] |= std::uint64_t{1} << (b & 63);

    Homomorphism m{vector<int>(n, -1)};
    struct Enumerator
    {
        const Csp & csp;
        const std::function<bool(const Homomorphism &)> & f;
        int n, wp;
        vector<std::uint64_t> & rows;
        vector<std::uint64_t> & levels;
        Homomorphism & m;

        auto go(int u) -> bool
        {
            if (u == n)
                return f(m);
            std::uint64_t * cur = levels.data() + (std::size_t(u) * n + u) * wp;
            std::uint64_t * next = levels.data() + std::size_t(u + 1) * n * wp;
            for (int w = 0; w < wp; ++w)
                for (std::uint64_t bits = cur[w]; bits; bits &= bits - 1) {
                    int a = w * 64 + __builtin_ctzll(bits);
                    std::copy(cur + wp, cur + std::size_t(n - u) * wp,
                        next + std::size_t(u + 1) * wp);
                    bool wiped = false;
                    for (auto & [v, kind, id, arc] : csp.constraints[u]) {
                        (void)id;
                        (void)arc;
                        if (v <= u)
                            continue;
                        std::uint64_t * dv = next + std::size_t(v) * wp;
                        std::uint64_t live = 0;
                        if (kind == ConstraintKind::Edge) {
                            const std::uint64_t * row = rows.data() + std::size_t(a) * wp;
                            for (int i = 0; i < wp; ++i)
                                live |= (dv[i] &= row[i]);
                        }
                        else {
                            dv[a >> 6] &= ~(std::uint64_t{1} << (a & 63));
                            for (int i = 0; i < wp; ++i)
                                live |= dv[i];
                        }
                        if (! live) {
                            wiped = true;
                            break;
                        }
                    }
                    if (wiped)
                        continue;
                    m.map[u] = a;
                    if (! go(u + 1))
                        return false;
                }
            m.map[u] = -1;
            return true;
        }
    };
    Enumerator{csp, f, n, wp, rows, levels, m}.go(0);
}

auto enumerate_all(const ListHomInstance & inst, Mode mode, int cap) -> EnumerateResult
{
    EnumerateResult result;
    for_each_witness(inst, mode, [&](const Homomorphism & m) {
        if (int(result.witnesses.size()) == cap) {
            result.truncated = true;
            return false;
        }
        result.witnesses.push_back(m);
        return true;
    });
    return result;
}

}
