#include "tropint/moduli.hpp"

#include "tropint/linalg.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace tropint {

namespace {

std::vector<size_t> normalize_split(size_t n, std::vector<size_t> split) {
    std::sort(split.begin(), split.end());
    split.erase(std::unique(split.begin(), split.end()), split.end());
    if (!split.empty() && split.back() == n) {
        std::vector<size_t> comp;
        size_t k = 0;
        for (size_t i = 1; i <= n; ++i) {
            if (k < split.size() && split[k] == i)
                ++k;
            else
                comp.push_back(i);
        }
        return comp;
    }
    return split;
}

bool splits_compatible(size_t n, const std::vector<size_t>& a, const std::vector<size_t>& b) {
    // one of I∩J, I\J, J\I, (I∪J)^c must be empty
    std::set<size_t> sa(a.begin(), a.end()), sb(b.begin(), b.end());
    bool inter = false, only_a = false, only_b = false;
    for (size_t x : a) (sb.count(x) ? inter : only_a) = true;
    for (size_t x : b)
        if (!sa.count(x)) only_b = true;
    size_t union_size = sa.size() + sb.size() - [&] {
        size_t c = 0;
        for (size_t x : a) c += sb.count(x);
        return c;
    }();
    bool cover = union_size == n;
    return !inter || !only_a || !only_b || cover;
}

}  // namespace

RationalCurve::RationalCurve(size_t n,
                             std::vector<std::pair<std::vector<size_t>, Rat>> splits)
    : n_(n) {
    if (n < 3) throw TropError("a marked curve needs at least 3 leaves");
    if (splits.size() > n - 3) throw TropError("too many splits for the leaf count");
    for (auto& [split, length] : splits) {
        for (size_t x : split)
            if (x < 1 || x > n) throw TropError("split contains an invalid leaf label");
        split = normalize_split(n, std::move(split));
        if (split.size() < 2 || split.size() > n - 2)
            throw TropError("split sides must have between 2 and n-2 leaves");
        if (length <= 0) throw TropError("split lengths must be positive");
    }
    std::sort(splits.begin(), splits.end());
    for (size_t i = 0; i + 1 < splits.size(); ++i)
        if (splits[i].first == splits[i + 1].first) throw TropError("duplicate split");
    for (size_t i = 0; i < splits.size(); ++i)
        for (size_t j = i + 1; j < splits.size(); ++j)
            if (!splits_compatible(n, splits[i].first, splits[j].first))
                throw TropError("incompatible splits");
    splits_ = std::move(splits);
}

RationalCurve parse_curve(size_t n, const std::string& text) {
    std::vector<std::pair<std::vector<size_t>, Rat>> splits;
    size_t pos = 0;
    auto skip = [&] {
        while (pos < text.size() && (std::isspace(static_cast<unsigned char>(text[pos])) ||
                                     text[pos] == '+'))
            ++pos;
    };
    skip();
    while (pos < text.size()) {
        if (text[pos] != '(') throw ParseError("expected '('", pos);
        ++pos;
        std::vector<size_t> split;
        while (true) {
            size_t start = pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
            if (start == pos) throw ParseError("expected leaf number", pos);
            split.push_back(std::stoul(text.substr(start, pos - start)));
            while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
            if (pos < text.size() && text[pos] == ',') {
                ++pos;
                while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
                    ++pos;
                continue;
            }
            break;
        }
        if (pos >= text.size() || text[pos] != ')') throw ParseError("expected ')'", pos);
        ++pos;
        Rat length = 1;
        size_t save = pos;
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos < text.size() && text[pos] == ':') {
            ++pos;
            size_t start = pos;
            while (pos < text.size() && (std::isdigit(static_cast<unsigned char>(text[pos])) ||
                                         text[pos] == '/' || text[pos] == '-' ||
                                         std::isspace(static_cast<unsigned char>(text[pos]))))
                ++pos;
            length = parse_rational(text.substr(start, pos - start));
        } else {
            pos = save;
        }
        splits.emplace_back(std::move(split), length);
        skip();
    }
    return RationalCurve(n, std::move(splits));
}

std::string curve_to_string(const RationalCurve& c) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [split, length] : c.splits()) {
        if (!first) os << " + ";
        first = false;
        os << "(";
        for (size_t i = 0; i < split.size(); ++i) {
            if (i) os << ",";
            os << split[i];
        }
        os << ")";
        if (length != 1) os << ": " << rat_to_string(length);
    }
    return os.str();
}

// -- tree construction --

CurveTree curve_tree(const RationalCurve& c) {
    const size_t n = c.leaves();
    // nodes hold leaf branches and edge branches; edges carry split indices
    struct Node {
        std::vector<size_t> leaves;
        std::vector<size_t> edges;
    };
    std::vector<Node> nodes(1);
    std::vector<std::array<size_t, 2>> edges;
    for (size_t i = 1; i <= n; ++i) nodes[0].leaves.push_back(i);

    // shadow of an edge seen from node v: all leaves behind the other end
    auto edge_shadow = [&](size_t edge, size_t from) {
        std::vector<size_t> shadow;
        std::vector<size_t> stack = {edges[edge][0] == from ? edges[edge][1] : edges[edge][0]};
        std::set<size_t> visited = {from};
        while (!stack.empty()) {
            size_t v = stack.back();
            stack.pop_back();
            if (!visited.insert(v).second) continue;
            for (size_t l : nodes[v].leaves) shadow.push_back(l);
            for (size_t e : nodes[v].edges)
                for (size_t end : edges[e])
                    if (!visited.count(end)) stack.push_back(end);
        }
        std::sort(shadow.begin(), shadow.end());
        return shadow;
    };

    for (size_t si = 0; si < c.splits().size(); ++si) {
        const std::vector<size_t>& target = c.splits()[si].first;
        std::set<size_t> tset(target.begin(), target.end());
        bool placed = false;
        for (size_t v = 0; v < nodes.size() && !placed; ++v) {
            for (int side = 0; side < 2 && !placed; ++side) {
                // collect branches whose shadows partition into the target side
                std::vector<size_t> take_leaves, take_edges;
                bool clean = true;
                size_t covered = 0;
                auto inside = [&](const std::vector<size_t>& shadow) {
                    size_t hits = 0;
                    for (size_t l : shadow) hits += side == 0 ? tset.count(l) : 1 - tset.count(l);
                    if (hits == shadow.size()) return 1;
                    if (hits == 0) return 0;
                    return -1;
                };
                for (size_t l : nodes[v].leaves) {
                    int r = inside({l});
                    if (r == 1) {
                        take_leaves.push_back(l);
                        ++covered;
                    }
                }
                for (size_t e : nodes[v].edges) {
                    std::vector<size_t> shadow = edge_shadow(e, v);
                    int r = inside(shadow);
                    if (r == -1) clean = false;
                    if (r == 1) {
                        take_edges.push_back(e);
                        covered += shadow.size();
                    }
                }
                size_t want = side == 0 ? target.size() : n - target.size();
                if (!clean || covered != want) continue;
                if (take_leaves.size() + take_edges.size() < 2) continue;
                if (take_leaves.size() + take_edges.size() >=
                    nodes[v].leaves.size() + nodes[v].edges.size())
                    continue;
                // split node v
                size_t u = nodes.size();
                nodes.push_back({take_leaves, take_edges});
                auto& vl = nodes[v].leaves;
                auto& ve = nodes[v].edges;
                for (size_t l : take_leaves) vl.erase(std::find(vl.begin(), vl.end(), l));
                for (size_t e : take_edges) {
                    ve.erase(std::find(ve.begin(), ve.end(), e));
                    for (auto& end : edges[e])
                        if (end == v) end = u;
                }
                edges.push_back({v, u});
                nodes[v].edges.push_back(edges.size() - 1);
                nodes[u].edges.push_back(edges.size() - 1);
                placed = true;
            }
        }
        if (!placed) throw TropError("could not realize the splits as a tree");
    }

    CurveTree out;
    out.n = n;
    out.vertex_count = nodes.size();
    out.leaf_vertex.assign(n, 0);
    for (size_t v = 0; v < nodes.size(); ++v)
        for (size_t l : nodes[v].leaves) out.leaf_vertex[l - 1] = v;
    out.edges = edges;
    out.valence.assign(nodes.size(), 0);
    out.branch_shadows.assign(nodes.size(), {});
    for (size_t v = 0; v < nodes.size(); ++v) {
        out.valence[v] = nodes[v].leaves.size() + nodes[v].edges.size();
        for (size_t l : nodes[v].leaves) out.branch_shadows[v].push_back({l});
        for (size_t e : nodes[v].edges) out.branch_shadows[v].push_back(edge_shadow(e, v));
        std::sort(out.branch_shadows[v].begin(), out.branch_shadows[v].end(),
                  [](const auto& a, const auto& b) { return a[0] < b[0]; });
    }
    return out;
}

// -- metrics --

size_t pair_index(size_t n, size_t i, size_t j) {
    // 1-based i < j, lexicographic
    return (i - 1) * n - (i - 1) * i / 2 + (j - i - 1);
}

MetricVector curve_to_metric(const RationalCurve& c) {
    const size_t n = c.leaves();
    MetricVector m;
    m.n = n;
    m.d.assign(n * (n - 1) / 2, Rat(0));
    for (const auto& [split, length] : c.splits()) {
        std::set<size_t> inside(split.begin(), split.end());
        for (size_t i = 1; i <= n; ++i)
            for (size_t j = i + 1; j <= n; ++j)
                if (inside.count(i) != inside.count(j)) m.d[pair_index(n, i, j)] += length;
    }
    return m;
}

FourPointResult four_point_check(const MetricVector& m) {
    const size_t n = m.n;
    auto d = [&](size_t i, size_t j) {
        return i == j ? Rat(0) : m.d[pair_index(n, std::min(i, j), std::max(i, j))];
    };
    for (size_t x = 1; x <= n; ++x)
        for (size_t y = x + 1; y <= n; ++y)
            for (size_t z = y + 1; z <= n; ++z)
                for (size_t t = z + 1; t <= n; ++t) {
                    Rat s1 = d(x, y) + d(z, t);
                    Rat s2 = d(x, z) + d(y, t);
                    Rat s3 = d(x, t) + d(y, z);
                    Rat mx = std::max({s1, s2, s3});
                    int hits = (s1 == mx) + (s2 == mx) + (s3 == mx);
                    if (hits < 2) return {false, {x, y, z, t}};
                }
    return {};
}

RationalCurve metric_to_curve(const MetricVector& metric) {
    const size_t n = metric.n;
    if (n < 3) throw TropError("metric needs at least 3 leaves");

    // shift by a multiple of Φ_n(Σe_i) until all pairwise values and all
    // Gromov products (the prospective leaf-edge lengths) are positive;
    // entry positivity alone does not make the vector a realizable tree
    // metric
    QVec d0 = metric.d;
    {
        auto dd = [&](size_t i, size_t j) {
            return i == j ? Rat(0) : d0[pair_index(n, std::min(i, j), std::max(i, j))];
        };
        Rat bound = 0;  // k must exceed this
        for (const auto& v : d0) bound = std::max(bound, Rat(-v / 2));
        for (size_t p = 1; p <= n; ++p)
            for (size_t q = 1; q <= n; ++q)
                for (size_t r = q + 1; r <= n; ++r) {
                    if (p == q || p == r) continue;
                    Rat gromov = (dd(p, q) + dd(p, r) - dd(q, r)) / 2;
                    bound = std::max(bound, Rat(-gromov));
                }
        Int k = numerator(bound) / denominator(bound) + 1;
        for (auto& v : d0) v += Rat(2 * k);
    }
    MetricVector shifted{n, d0};
    FourPointResult fp = four_point_check(shifted);
    if (!fp.ok) throw NotATreeMetric("four-point condition fails");

    // Buneman reconstruction
    std::map<std::pair<size_t, size_t>, Rat> dist;
    auto key = [](size_t a, size_t b) { return std::make_pair(std::min(a, b), std::max(a, b)); };
    for (size_t i = 1; i <= n; ++i)
        for (size_t j = i + 1; j <= n; ++j) dist[key(i, j)] = d0[pair_index(n, i, j)];
    auto d = [&](size_t a, size_t b) { return a == b ? Rat(0) : dist.at(key(a, b)); };

    std::set<size_t> active;
    for (size_t i = 1; i <= n; ++i) active.insert(i);
    size_t next_node = n + 1;
    struct Edge {
        size_t a, b;
        Rat length;
    };
    std::vector<Edge> tree_edges;

    auto attach_pair = [&](size_t p, size_t q, size_t r) {
        Rat dtp = (d(p, q) + d(p, r) - d(q, r)) / 2;
        Rat dtq = d(p, q) - dtp;
        if (dtp < 0 || dtq < 0) throw NotATreeMetric("negative edge length in reconstruction");
        if (dtp == 0) {
            // the junction coincides with p; only q splits off
            tree_edges.push_back({p, q, dtq});
            active.erase(q);
            return;
        }
        if (dtq == 0) {
            tree_edges.push_back({q, p, dtp});
            active.erase(p);
            return;
        }
        size_t t = 0;
        for (size_t x : active) {
            if (x == p || x == q) continue;
            if (d(x, p) - dtp == 0) {
                t = x;
                break;
            }
        }
        if (t == 0) {
            t = next_node++;
            for (size_t x : active) {
                if (x == p || x == q) continue;
                Rat dtx = d(x, p) - dtp;
                if (dtx < 0) throw NotATreeMetric("negative distance in reconstruction");
                dist[key(t, x)] = dtx;
            }
            active.insert(t);
        }
        tree_edges.push_back({t, p, dtp});
        tree_edges.push_back({t, q, dtq});
        active.erase(p);
        active.erase(q);
    };

    while (active.size() > 3) {
        // maximize d(p,r) + d(q,r) - d(p,q) over ordered distinct triples,
        // ties resolved lexicographically
        bool first = true;
        Rat best;
        size_t bp = 0, bq = 0, br = 0;
        for (size_t p : active)
            for (size_t q : active) {
                if (q == p) continue;
                for (size_t r : active) {
                    if (r == p || r == q) continue;
                    Rat val = d(p, r) + d(q, r) - d(p, q);
                    if (first || val > best) {
                        best = val;
                        bp = p;
                        bq = q;
                        br = r;
                        first = false;
                    }
                }
            }
        attach_pair(bp, bq, br);
    }
    if (active.size() == 3) {
        auto it = active.begin();
        size_t a = *it++, b = *it++, c = *it;
        attach_pair(a, b, c);
        // attach_pair leaves either one or two nodes; connect what remains
    }
    if (active.size() == 2) {
        auto it = active.begin();
        size_t a = *it++, b = *it;
        tree_edges.push_back({a, b, d(a, b)});
    }

    // contract zero-length edges by union-find
    size_t total = next_node;
    std::vector<size_t> parent(total + 1);
    std::iota(parent.begin(), parent.end(), size_t(0));
    std::function<size_t(size_t)> find = [&](size_t v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    for (const auto& e : tree_edges)
        if (e.length == 0) parent[find(e.a)] = find(e.b);

    // adjacency of the contracted tree
    std::map<size_t, std::vector<std::pair<size_t, size_t>>> adj;  // node -> (other, edge idx)
    std::vector<Edge> positive;
    for (const auto& e : tree_edges) {
        if (e.length == 0) continue;
        size_t a = find(e.a), b = find(e.b);
        if (a == b) throw NotATreeMetric("zero cycle in reconstruction");
        adj[a].emplace_back(b, positive.size());
        adj[b].emplace_back(a, positive.size());
        positive.push_back({a, b, e.length});
    }

    std::vector<std::pair<std::vector<size_t>, Rat>> splits;
    for (size_t ei = 0; ei < positive.size(); ++ei) {
        // leaves on the a-side of edge ei
        std::vector<size_t> component;
        std::set<size_t> visited = {positive[ei].b};
        std::vector<size_t> stack = {positive[ei].a};
        while (!stack.empty()) {
            size_t v = stack.back();
            stack.pop_back();
            if (!visited.insert(v).second) continue;
            component.push_back(v);
            for (const auto& [other, idx] : adj[v])
                if (idx != ei) stack.push_back(other);
        }
        std::set<size_t> comp_set(component.begin(), component.end());
        std::vector<size_t> side;
        for (size_t leaf = 1; leaf <= n; ++leaf)
            if (comp_set.count(find(leaf))) side.push_back(leaf);
        if (side.size() < 2 || side.size() > n - 2) continue;  // leaf edge: a Φ_n shift
        splits.emplace_back(std::move(side), positive[ei].length);
    }
    return RationalCurve(n, std::move(splits));
}

// -- Prüfer sequences --

bool PrueferSequence::is_ordered() const {
    size_t expected = n + 1;
    std::set<size_t> seen;
    for (size_t e : entries) {
        if (seen.insert(e).second) {
            if (e != expected) return false;
            ++expected;
        }
    }
    return true;
}

PrueferSequence curve_to_pruefer(const RationalCurve& c) {
    const size_t n = c.leaves();
    CurveTree tree = curve_tree(c);
    // graph on leaf nodes 1..n and internal nodes n+1+vertex; internal nodes
    // receive their final labels greedily when first recorded, and the
    // smallest-leaf rule compares by those labels, so the produced sequence
    // is the ordered representative directly
    std::map<size_t, std::set<size_t>> adj;
    for (size_t i = 1; i <= n; ++i) {
        adj[i].insert(n + 1 + tree.leaf_vertex[i - 1]);
        adj[n + 1 + tree.leaf_vertex[i - 1]].insert(i);
    }
    for (const auto& e : tree.edges) {
        adj[n + 1 + e[0]].insert(n + 1 + e[1]);
        adj[n + 1 + e[1]].insert(n + 1 + e[0]);
    }
    std::map<size_t, size_t> label;  // internal node -> assigned label
    size_t next_label = n + 1;
    auto sort_key = [&](size_t node) {
        if (node <= n) return node;
        auto it = label.find(node);
        // an internal vertex is always recorded before it can become a leaf
        return it == label.end() ? SIZE_MAX : it->second;
    };
    std::vector<size_t> seq;
    while (adj.size() > 2) {
        size_t leaf = 0;
        for (const auto& [v, nb] : adj) {
            if (nb.size() != 1) continue;
            if (leaf == 0 || sort_key(v) < sort_key(leaf)) leaf = v;
        }
        size_t neighbor = *adj[leaf].begin();
        auto it = label.find(neighbor);
        if (it == label.end()) it = label.emplace(neighbor, next_label++).first;
        seq.push_back(it->second);
        adj[neighbor].erase(leaf);
        adj.erase(leaf);
    }
    return PrueferSequence{n, std::move(seq)};
}

RationalCurve pruefer_to_curve(const PrueferSequence& p) {
    const size_t n = p.n;
    if (n < 3 || p.entries.size() + 1 < n)
        throw TropError("malformed moduli sequence");
    const size_t d = p.entries.size() + 1 - n;
    std::map<size_t, size_t> occurrences;
    for (size_t e : p.entries) {
        if (e < n + 1 || e > n + d + 1) throw TropError("sequence entry out of range");
        ++occurrences[e];
    }
    if (occurrences.size() != d + 1) throw TropError("sequence must use every vertex label");
    for (const auto& [e, count] : occurrences)
        if (count < 2) throw TropError("every sequence entry must occur at least twice");

    if (d == 0) return RationalCurve(n, {});

    std::map<size_t, std::vector<size_t>> attached;  // A_v
    std::set<size_t> vertices;
    for (size_t v = n + 1; v <= n + d + 1; ++v) vertices.insert(v);
    std::vector<size_t> rest(p.entries.begin(), p.entries.end());
    std::map<size_t, size_t> remaining = occurrences;

    size_t cursor = 0;
    auto pop_front = [&]() {
        --remaining[rest[cursor]];
        if (remaining[rest[cursor]] == 0) remaining.erase(rest[cursor]);
        ++cursor;
    };
    for (size_t i = 1; i <= n; ++i) {
        attached[rest[cursor]].push_back(i);
        pop_front();
    }

    std::vector<std::pair<std::vector<size_t>, Rat>> splits;
    for (size_t step = 0; step + 1 < d; ++step) {
        // v = min of the unprocessed vertices not present in the rest of P
        size_t v = 0;
        for (size_t cand : vertices) {
            if (!remaining.count(cand)) {
                v = cand;
                break;
            }
        }
        if (v == 0) throw TropError("malformed moduli sequence");
        splits.emplace_back(attached[v], Rat(1));
        size_t target = rest[cursor];
        for (size_t l : attached[v]) attached[target].push_back(l);
        vertices.erase(v);
        pop_front();
    }
    splits.emplace_back(attached[*vertices.begin()], Rat(1));
    return RationalCurve(n, std::move(splits));
}

void enumerate_m0n_cones(size_t n, const std::function<void(const PrueferSequence&)>& visit) {
    if (n < 4) {
        if (n == 3) visit(PrueferSequence{3, {4, 4}});
        return;
    }
    const size_t len = 2 * n - 4;
    const size_t last_label = 2 * n - 2;
    std::vector<size_t> seq(len, 0);
    std::vector<size_t> open;  // labels placed once, ascending
    PrueferSequence out{n, {}};
    // fill positions left to right, trying the smallest admissible label
    // first: any open label or the next fresh one — this streams the
    // sequences in lexicographic order
    std::function<void(size_t, size_t)> rec = [&](size_t pos, size_t next_fresh) {
        if (pos == len) {
            out.entries = seq;
            visit(out);
            return;
        }
        size_t fresh = next_fresh <= last_label ? next_fresh : 0;
        size_t oi = 0;
        while (true) {
            size_t candidate = 0;
            bool is_open = false;
            if (oi < open.size() && (fresh == 0 || open[oi] < fresh)) {
                candidate = open[oi];
                is_open = true;
            } else if (fresh != 0) {
                candidate = fresh;
                fresh = 0;
            } else {
                break;
            }
            seq[pos] = candidate;
            if (is_open) {
                size_t removed = open[oi];
                open.erase(open.begin() + oi);
                rec(pos + 1, next_fresh);
                open.insert(open.begin() + oi, removed);
                ++oi;
            } else {
                open.push_back(candidate);
                rec(pos + 1, next_fresh + 1);
                open.pop_back();
            }
            seq[pos] = 0;
        }
    };
    rec(0, n + 1);
}

std::vector<PrueferSequence> enumerate_m0n_cones(size_t n) {
    std::vector<PrueferSequence> out;
    enumerate_m0n_cones(n, [&](const PrueferSequence& p) { out.push_back(p); });
    return out;
}

// -- matroid coordinates --

size_t moduli_ambient_dim(size_t n) { return (n - 1) * (n - 2) / 2; }

ZVec split_matroid_coords(size_t n, const std::vector<size_t>& split) {
    ZVec v(moduli_ambient_dim(n), Int(0));
    for (size_t a = 0; a < split.size(); ++a)
        for (size_t b = a + 1; b < split.size(); ++b)
            v[pair_index(n - 1, split[a], split[b])] = 1;
    return v;
}

QVec curve_to_moduli_point(const RationalCurve& c) {
    QVec w(moduli_ambient_dim(c.leaves()), Rat(0));
    for (const auto& [split, length] : c.splits()) {
        ZVec v = split_matroid_coords(c.leaves(), split);
        for (size_t i = 0; i < w.size(); ++i) w[i] += length * Rat(v[i]);
    }
    return w;
}

RationalCurve curve_from_moduli_point(size_t n, const QVec& w) {
    MetricVector m;
    m.n = n;
    m.d.assign(n * (n - 1) / 2, Rat(0));
    for (size_t i = 1; i + 1 < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            m.d[pair_index(n, i, j)] = -2 * w[pair_index(n - 1, i, j)];
    return metric_to_curve(m);
}

namespace {

// shared builder for fans in moduli coordinates
struct ModuliFanBuilder {
    size_t n;
    std::map<std::vector<size_t>, size_t> ray_index;
    std::vector<ZVec> pool;  // homogeneous rows
    std::vector<std::vector<size_t>> cones;
    std::vector<Int> weights;

    explicit ModuliFanBuilder(size_t leaves) : n(leaves) {}

    size_t ray(const std::vector<size_t>& split) {
        auto it = ray_index.find(split);
        if (it != ray_index.end()) return it->second;
        ZVec v = split_matroid_coords(n, split);
        ZVec row(v.size() + 1, Int(0));
        for (size_t i = 0; i < v.size(); ++i) row[i + 1] = v[i];
        pool.push_back(std::move(row));
        return ray_index.emplace(split, pool.size() - 1).first->second;
    }

    void add_cone(const std::vector<std::vector<size_t>>& splits, Int weight) {
        std::vector<size_t> cone;
        for (const auto& s : splits) cone.push_back(ray(s));
        std::sort(cone.begin(), cone.end());
        cones.push_back(std::move(cone));
        weights.push_back(std::move(weight));
    }

    TropicalCycle build() {
        const size_t dim = moduli_ambient_dim(n);
        ZVec apex(dim + 1, Int(0));
        apex[0] = 1;
        size_t apex_idx = pool.size();
        pool.push_back(apex);
        for (auto& c : cones) c.push_back(apex_idx);
        ZVec ones(dim + 1, Int(1));
        ones[0] = 0;
        TropicalCycle x;
        x.complex = PolyhedralComplex::from_indexed_cells(dim, std::move(pool), {ones},
                                                          std::move(cones));
        x.weights = std::move(weights);
        return x;
    }
};

}  // namespace

TropicalCycle m0n(size_t n) {
    ModuliFanBuilder builder(n);
    enumerate_m0n_cones(n, [&](const PrueferSequence& p) {
        RationalCurve c = pruefer_to_curve(p);
        std::vector<std::vector<size_t>> splits;
        for (const auto& [s, len] : c.splits()) splits.push_back(s);
        builder.add_cone(splits, Int(1));
    });
    return builder.build();
}

// -- Psi classes --

namespace {

// all J ⊆ [m] with |J| = 2 + Σ_{j∈J} k_j, exponents descending
void placements(const std::vector<Int>& k, std::vector<std::vector<size_t>>& out) {
    const size_t m = k.size();
    Int total = 0;
    for (const auto& v : k) total += v;
    if (m < 2 || total > Int(m) - 2) {
        // no placement can close the budget beyond this bound
    }
    std::vector<size_t> current;
    std::function<void(size_t, Int)> rec = [&](size_t start, Int ksum) {
        if (Int(current.size()) == ksum + 2) {
            out.push_back(current);
            return;  // extensions can never satisfy the budget again
        }
        for (size_t l = start; l < m; ++l) {
            current.push_back(l);
            rec(l + 1, ksum + k[l]);
            current.pop_back();
        }
    };
    rec(0, 0);
}

void iterate_placements(size_t label, size_t last_label, std::vector<size_t>& seq,
                        const std::vector<Int>& exponents,
                        const std::function<void(const std::vector<size_t>&)>& emit) {
    if (label > last_label) {
        for (size_t v : seq)
            if (v == 0) return;
        emit(seq);
        return;
    }
    std::vector<size_t> free_pos;
    std::vector<Int> free_exp;
    for (size_t i = 0; i < seq.size(); ++i)
        if (seq[i] == 0) {
            free_pos.push_back(i);
            free_exp.push_back(exponents[i]);
        }
    std::vector<std::vector<size_t>> choices;
    placements(free_exp, choices);
    for (const auto& J : choices) {
        for (size_t j : J) seq[free_pos[j]] = label;
        iterate_placements(label + 1, last_label, seq, exponents, emit);
        for (size_t j : J) seq[free_pos[j]] = 0;
    }
}

}  // namespace

TropicalCycle psi_product(size_t n, const std::vector<Int>& k) {
    if (k.size() != n) throw TropError("need one exponent per leaf");
    Int total = 0;
    for (const auto& v : k) {
        if (v < 0) throw TropError("exponents must be nonnegative");
        total += v;
    }
    if (total > Int(n) - 3) throw DegreeTooLarge("sum of exponents exceeds n-3");
    const size_t big_k = static_cast<size_t>(total);
    const size_t d = n - 3 - big_k;
    const size_t len = 2 * n - 4 - big_k;        // sequence length n + d - 1
    const size_t last_label = 2 * n - 2 - big_k;  // labels n+1 .. n+d+1

    // sort exponents descending, remembering the leaf permutation
    std::vector<size_t> perm(n);
    std::iota(perm.begin(), perm.end(), size_t(0));
    std::stable_sort(perm.begin(), perm.end(),
                     [&](size_t a, size_t b) { return k[a] > k[b]; });
    std::vector<size_t> position(n);  // leaf i (0-based) -> sorted position
    for (size_t j = 0; j < n; ++j) position[perm[j]] = j;

    std::vector<Int> exponents(len, Int(0));
    for (size_t j = 0; j < n && j < len; ++j) exponents[j] = k[perm[j]];

    std::set<PrueferSequence> sequences;
    std::vector<size_t> seq(len, 0);
    iterate_placements(n + 1, last_label, seq, exponents,
                       [&](const std::vector<size_t>& s) {
                           PrueferSequence p{n, s};
                           if (d > 0) {
                               // undo the sorting permutation on the leaf entries
                               std::vector<size_t> entries = s;
                               for (size_t i = 0; i < n; ++i) entries[i] = s[position[i]];
                               // take the ordered representative
                               std::map<size_t, size_t> relabel;
                               size_t next = n + 1;
                               for (size_t& e : entries) {
                                   auto it = relabel.find(e);
                                   if (it == relabel.end()) it = relabel.emplace(e, next++).first;
                                   e = it->second;
                               }
                               p.entries = std::move(entries);
                           }
                           sequences.insert(std::move(p));
                       });

    ModuliFanBuilder builder(n);
    for (const PrueferSequence& p : sequences) {
        RationalCurve c = pruefer_to_curve(p);
        // weight ∏ K(I_V)! / ∏ k_i! from the leaves at each vertex
        std::map<size_t, Int> vertex_k;
        for (size_t i = 0; i < n && i < p.entries.size(); ++i)
            vertex_k[p.entries[i]] += k[i];
        if (p.entries.size() < n) {
            // star curve: the single vertex carries every leaf
            vertex_k[n + 1] = total;
        }
        Rat weight = 1;
        auto factorial = [](const Int& v) {
            Int f = 1;
            for (Int i = 2; i <= v; ++i) f *= i;
            return f;
        };
        for (const auto& [vertex, kv] : vertex_k) weight *= Rat(factorial(kv));
        for (const auto& ki : k) weight /= Rat(factorial(ki));
        if (denominator(weight) != 1) throw TropError("non-integral Psi-class weight");
        std::vector<std::vector<size_t>> splits;
        for (const auto& [s, len2] : c.splits()) splits.push_back(s);
        builder.add_cone(splits, numerator(weight));
    }
    return builder.build();
}

// -- local structure --

TropicalCycle local_m0n(const RationalCurve& tau) {
    const size_t n = tau.leaves();
    CurveTree tree = curve_tree(tau);

    std::vector<std::vector<size_t>> tau_splits;
    for (const auto& [s, len] : tau.splits()) tau_splits.push_back(s);

    // per higher-valent vertex: the list of resolution choices, each a list
    // of new global splits
    std::vector<std::vector<std::vector<std::vector<size_t>>>> vertex_choices;
    for (size_t v = 0; v < tree.vertex_count; ++v) {
        size_t s = tree.valence[v];
        if (s <= 3) continue;
        const auto& shadows = tree.branch_shadows[v];
        std::vector<std::vector<std::vector<size_t>>> choices;
        for (const PrueferSequence& p : enumerate_m0n_cones(s)) {
            RationalCurve local = pruefer_to_curve(p);
            std::vector<std::vector<size_t>> new_splits;
            for (const auto& [ls, len] : local.splits()) {
                std::vector<size_t> global;
                for (size_t branch : ls)
                    for (size_t leaf : shadows[branch - 1]) global.push_back(leaf);
                new_splits.push_back(normalize_split(n, std::move(global)));
            }
            choices.push_back(std::move(new_splits));
        }
        vertex_choices.push_back(std::move(choices));
    }

    ModuliFanBuilder builder(n);
    std::vector<std::vector<size_t>> current = tau_splits;
    std::function<void(size_t)> rec = [&](size_t vi) {
        if (vi == vertex_choices.size()) {
            builder.add_cone(current, Int(1));
            return;
        }
        for (const auto& choice : vertex_choices[vi]) {
            for (const auto& s : choice) current.push_back(s);
            rec(vi + 1);
            current.resize(current.size() - choice.size());
        }
    };
    rec(0);

    TropicalCycle cycle = builder.build();
    // the local marker: the cone of tau itself
    std::vector<QVec> rays;
    for (const auto& s : tau_splits) rays.push_back(to_rational(split_matroid_coords(n, s)));
    cycle.local_cone = Polyhedron::cone_from_generators(
        moduli_ambient_dim(n), rays, {QVec(moduli_ambient_dim(n), Rat(1))});
    return cycle;
}

LocalBasis local_basis(const RationalCurve& tau) {
    const size_t n = tau.leaves();
    CurveTree tree = curve_tree(tau);
    LocalBasis out;
    for (const auto& [s, len] : tau.splits())
        out.vectors.push_back(split_matroid_coords(n, s));
    out.dimension = tau.splits().size();
    for (size_t v = 0; v < tree.vertex_count; ++v) {
        size_t s = tree.valence[v];
        if (s <= 3) continue;
        const auto& shadows = tree.branch_shadows[v];
        // W_p = {v_{I_i ∪ I_j} : i, j != 1}; drop v_{I_2 ∪ I_3}
        for (size_t i = 2; i <= s; ++i)
            for (size_t j = i + 1; j <= s; ++j) {
                if (i == 2 && j == 3) continue;
                std::vector<size_t> united = shadows[i - 1];
                united.insert(united.end(), shadows[j - 1].begin(), shadows[j - 1].end());
                out.vectors.push_back(split_matroid_coords(n, normalize_split(n, united)));
            }
        out.dimension += s * (s - 1) / 2 - s;
    }
    return out;
}

LemmaReport lemma_relations_check(const RationalCurve& tau, size_t vertex) {
    const size_t n = tau.leaves();
    CurveTree tree = curve_tree(tau);
    if (vertex >= tree.vertex_count) throw TropError("vertex index out of range");
    const auto& shadows = tree.branch_shadows[vertex];
    const size_t s = shadows.size();
    if (s < 4) throw TropError("identities concern vertices of valence above 3");

    const size_t pairs = n * (n - 1) / 2;
    auto metric_of = [&](const std::vector<size_t>& split) {
        QVec v(pairs, Rat(0));
        if (split.size() < 2) return v;  // v_{singleton} = 0 by convention
        std::set<size_t> inside(split.begin(), split.end());
        for (size_t i = 1; i <= n; ++i)
            for (size_t j = i + 1; j <= n; ++j)
                if (inside.count(i) != inside.count(j)) v[pair_index(n, i, j)] = 1;
        return v;
    };
    auto phi = [&](const QVec& a) {
        QVec v(pairs);
        for (size_t i = 1; i <= n; ++i)
            for (size_t j = i + 1; j <= n; ++j) v[pair_index(n, i, j)] = a[i - 1] + a[j - 1];
        return v;
    };

    LemmaReport report;
    std::set<size_t> first_branch(shadows[0].begin(), shadows[0].end());
    std::vector<char> at_p(n + 1, 0);
    for (const auto& sh : shadows)
        if (sh.size() == 1) at_p[sh[0]] = 1;

    // identity (1): Σ_{v ∈ W_p} v = (s-3) Σ_{j>1} v_{I_j} + v_{I_1} - Φ(b) + Φ(a)
    {
        QVec lhs(pairs, Rat(0));
        for (size_t i = 2; i <= s; ++i)
            for (size_t j = i + 1; j <= s; ++j) {
                std::vector<size_t> united = shadows[i - 1];
                united.insert(united.end(), shadows[j - 1].begin(), shadows[j - 1].end());
                std::sort(united.begin(), united.end());
                lhs = add(lhs, metric_of(united));
            }
        QVec rhs(pairs, Rat(0));
        for (size_t j = 2; j <= s; ++j)
            rhs = add(rhs, scale(Rat(static_cast<int>(s) - 3), metric_of(shadows[j - 1])));
        rhs = add(rhs, metric_of(shadows[0]));
        QVec a(n), b(n);
        for (size_t i = 1; i <= n; ++i) {
            a[i - 1] = first_branch.count(i) ? Rat(1) : Rat(static_cast<int>(s) - 3);
            if (at_p[i])
                b[i - 1] = 0;
            else
                b[i - 1] = first_branch.count(i) ? Rat(1) : Rat(static_cast<int>(s) - 3);
        }
        rhs = add(sub(rhs, phi(b)), phi(a));
        report.identity_sum = lhs == rhs;
    }

    // identity (2): every separating ray v_I with I a union of branches
    // avoiding branch 1 satisfies v_I = Σ_{i<j∈S} v_{I_i∪I_j} − (m−2)Σ_{j∈S} v_{I_j},
    // where singleton branches contribute their honest metric φ_n(e_j);
    // modulo V_τ this is the representation v_I ≡ Σ_{v_S ∈ W_p, S ⊆ I} v_S
    {
        report.identity_rays = true;
        auto honest_metric = [&](const std::vector<size_t>& split) {
            if (split.size() >= 2) return metric_of(split);
            QVec a(n, Rat(0));
            a[split[0] - 1] = 1;
            return phi(a);
        };
        for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << (s - 1)); ++mask) {
            size_t m = static_cast<size_t>(std::popcount(mask));
            if (m < 2 || m > s - 2) continue;
            std::vector<size_t> members;  // branch indices (1-based) in S
            for (size_t j = 0; j + 1 < s; ++j)
                if (mask & (std::uint64_t(1) << j)) members.push_back(j + 2);
            std::vector<size_t> united;
            for (size_t j : members)
                united.insert(united.end(), shadows[j - 1].begin(), shadows[j - 1].end());
            std::sort(united.begin(), united.end());
            QVec v_i = metric_of(united);
            QVec rhs(pairs, Rat(0));
            for (size_t a2 = 0; a2 < members.size(); ++a2)
                for (size_t b2 = a2 + 1; b2 < members.size(); ++b2) {
                    std::vector<size_t> u2 = shadows[members[a2] - 1];
                    u2.insert(u2.end(), shadows[members[b2] - 1].begin(),
                              shadows[members[b2] - 1].end());
                    std::sort(u2.begin(), u2.end());
                    rhs = add(rhs, metric_of(u2));
                }
            for (size_t j : members)
                rhs = sub(rhs, scale(Rat(static_cast<int>(m) - 2), honest_metric(shadows[j - 1])));
            ++report.checked_rays;
            if (!(v_i == rhs)) report.identity_rays = false;
        }
    }
    return report;
}

}  // namespace tropint
