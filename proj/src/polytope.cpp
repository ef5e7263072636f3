#include "graphce/polytope.hpp"

#include <algorithm>

#include "graphce/errors.hpp"
#include "graphce/lp.hpp"

namespace graphce {

void check_caps(const ValueGraph& g, int m, const EnumerationCaps& caps) {
    if (g.n() > caps.max_n)
        throw CapExceeded("n = " + std::to_string(g.n()) + " exceeds enumeration cap " + std::to_string(caps.max_n));
    if (m > caps.max_m)
        throw CapExceeded("m = " + std::to_string(m) + " exceeds enumeration cap " + std::to_string(caps.max_m));
}

std::vector<GPoint> polytope_vertices(const ValueGraph& g, int max_n) {
    if (g.n() > max_n)
        throw CapExceeded("n = " + std::to_string(g.n()) + " exceeds vertex enumeration cap " + std::to_string(max_n));
    std::vector<GPoint> out;
    const Bundle::Mask count = Bundle::Mask{1} << g.n();
    out.reserve(count);
    for (Bundle::Mask s = 0; s < count; ++s)
        out.push_back(char_vector(Bundle(s), g));
    return out;
}

std::string to_string(PadbergTag tag) {
    switch (tag) {
    case PadbergTag::EdgeNonnegative: return "(i)";
    case PadbergTag::VertexCoversEdge: return "(ii)";
    case PadbergTag::PairBound: return "(iii)";
    case PadbergTag::Triangle: return "(iv)";
    case PadbergTag::TripleBound: return "(v)";
    }
    return "?";
}

std::string to_string(const PadbergViolation& v) {
    std::string s = to_string(v.tag) + " at (";
    for (std::size_t i = 0; i < v.indices.size(); ++i)
        s += (i ? "," : "") + std::to_string(v.indices[i] + 1);
    return s + "), lhs " + std::to_string(v.lhs);
}

std::vector<PadbergViolation> padberg_check(const GPoint& a, int m, const ValueGraph& g) {
    if (!g.is_complete())
        throw PreconditionError("padberg_check needs a complete graph");
    if (a.size() != g.dim())
        throw InvalidInput("point dimension mismatch");
    const int n = g.n();
    auto x = [&](int i) { return a[i]; };
    auto xe = [&](int i, int j) { return a[*g.edge_coord(i, j)]; };

    std::vector<PadbergViolation> out;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (xe(i, j) < 0)
                out.push_back({PadbergTag::EdgeNonnegative, {i, j}, xe(i, j)});
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && x(i) - xe(i, j) < 0)
                out.push_back({PadbergTag::VertexCoversEdge, {i, j}, x(i) - xe(i, j)});
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            int lhs = x(i) + x(j) - xe(i, j);
            if (lhs > m)
                out.push_back({PadbergTag::PairBound, {i, j}, lhs});
        }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                if (j == i || k == i)
                    continue;
                int lhs = x(i) + xe(j, k) - xe(i, j) - xe(i, k);
                if (lhs < 0)
                    out.push_back({PadbergTag::Triangle, {i, j, k}, lhs});
            }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                int lhs = x(i) + x(j) + x(k) - xe(i, j) - xe(i, k) - xe(j, k);
                if (lhs > m)
                    out.push_back({PadbergTag::TripleBound, {i, j, k}, lhs});
            }
    return out;
}

bool clique_inequality_holds(const GPoint& a, Bundle reps, int m, const ValueGraph& g) {
    if (a.size() != g.dim())
        throw InvalidInput("point dimension mismatch");
    auto items = reps.items();
    long lhs = 0;
    for (std::size_t p = 0; p < items.size(); ++p) {
        lhs += a[items[p]];
        for (std::size_t q = p + 1; q < items.size(); ++q) {
            auto c = g.edge_coord(items[p], items[q]);
            if (!c)
                throw PreconditionError("representatives " + to_string(reps) + " are not pairwise adjacent");
            lhs -= a[*c];
        }
    }
    return lhs <= m;
}

GPoint CliqueDecomposition::reconstruct(const ValueGraph& g) const {
    GPoint a = GPoint::zeros(g.dim());
    for (const auto& part : parts)
        a += part.multiplicity * char_vector(part.clique, g);
    return a;
}

int CliqueDecomposition::total_multiplicity() const {
    int t = 0;
    for (const auto& part : parts)
        t += part.multiplicity;
    return t;
}

std::vector<Bundle> CliqueDecomposition::expanded() const {
    std::vector<Bundle> out;
    for (const auto& part : parts)
        out.insert(out.end(), static_cast<std::size_t>(part.multiplicity), part.clique);
    return out;
}

CliqueDecomposition clique_decompose(const GPoint& a, int r, const ValueGraph& g) {
    if (r <= 0)
        throw InvalidInput("multiplicity r must be positive");
    if (a.size() != g.dim())
        throw InvalidInput("point dimension mismatch");
    for (int c = 0; c < a.size(); ++c)
        if (a[c] != 0 && a[c] != r)
            throw PreconditionError("entry " + g.coord_label(c) + " = " + std::to_string(a[c]) + " is not in {0," +
                                    std::to_string(r) + "}");
    const int n = g.n();
    Bundle::Mask present = 0;
    for (int i = 0; i < n; ++i)
        if (a[i] == r)
            present |= Bundle::Mask{1} << i;
    for (int k = 0; k < g.num_edges(); ++k) {
        const auto& e = g.edges()[k];
        if (a[n + k] == r && !(((present >> e.u) & 1U) && ((present >> e.v) & 1U)))
            throw PreconditionError("edge " + g.coord_label(n + k) + " is supported without both endpoints");
    }

    std::vector<int> component(n, -1);
    CliqueDecomposition out;
    for (int start = 0; start < n; ++start) {
        if (!((present >> start) & 1U) || component[start] >= 0)
            continue;
        const int id = static_cast<int>(out.parts.size());
        Bundle::Mask members = 0;
        std::vector<int> stack{start};
        component[start] = id;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            members |= Bundle::Mask{1} << u;
            for (int v = 0; v < n; ++v) {
                if (component[v] >= 0 || !((present >> v) & 1U))
                    continue;
                auto c = g.edge_coord(u, v);
                if (c && a[*c] == r) {
                    component[v] = id;
                    stack.push_back(v);
                }
            }
        }
        Bundle clique(members);
        auto items = clique.items();
        for (std::size_t p = 0; p < items.size(); ++p)
            for (std::size_t q = p + 1; q < items.size(); ++q) {
                auto c = g.edge_coord(items[p], items[q]);
                if (!c || a[*c] != r)
                    throw PreconditionError("component " + to_string(clique) + " is not a clique: " +
                                            std::to_string(items[p] + 1) + "-" + std::to_string(items[q] + 1) +
                                            " missing");
            }
        out.parts.push_back({r, clique});
    }
    return out;
}

NestedChain nested_chain_point(std::span<const int> bundle, int m, const ValueGraph& g) {
    if (m <= 0)
        throw InvalidInput("m must be positive");
    if (static_cast<int>(bundle.size()) != g.n())
        throw InvalidInput("bundle needs one entry per item");
    for (int i = 0; i < g.n(); ++i) {
        if (bundle[i] < 0)
            throw InvalidInput("negative bundle entry");
        if (bundle[i] > m)
            throw PreconditionError("bundle entry " + std::to_string(bundle[i]) + " exceeds m = " + std::to_string(m));
    }
    NestedChain out;
    out.point = GPoint::zeros(g.dim());
    for (int i = 0; i < g.n(); ++i)
        out.point[i] = bundle[i];
    for (int k = 0; k < g.num_edges(); ++k) {
        const auto& e = g.edges()[k];
        out.point[g.n() + k] = std::min(bundle[e.u], bundle[e.v]);
    }

    std::vector<int> levels;
    for (int v : bundle)
        if (v > 0)
            levels.push_back(v);
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    int prev = 0;
    for (int t : levels) {
        Bundle::Mask members = 0;
        for (int i = 0; i < g.n(); ++i)
            if (bundle[i] >= t)
                members |= Bundle::Mask{1} << i;
        out.decomposition.parts.push_back({t - prev, Bundle(members)});
        prev = t;
    }
    if (m > prev)
        out.decomposition.parts.push_back({m - prev, Bundle()});
    return out;
}

DecompositionEnumerator::DecompositionEnumerator(const GPoint& a, int m, const ValueGraph& g,
                                                 const EnumerationCaps& caps)
    : g_(&g), m_(m) {
    if (m <= 0)
        throw InvalidInput("m must be positive");
    if (a.size() != g.dim())
        throw InvalidInput("point has " + std::to_string(a.size()) + " coordinates, graph needs " +
                           std::to_string(g.dim()));
    check_caps(g, m, caps);

    const auto& coords = a.coords();
    if (std::any_of(coords.begin(), coords.end(), [](int c) { return c < 0; }) || !feasible_residual(coords, m)) {
        done_ = true;
        return;
    }
    const Bundle::Mask count = Bundle::Mask{1} << g.n();
    for (Bundle::Mask s = 0; s < count; ++s) {
        GPoint chi = char_vector(Bundle(s), g);
        bool fits = true;
        for (int c = 0; c < chi.size() && fits; ++c)
            fits = chi[c] <= a[c];
        if (fits) {
            candidates_.push_back(Bundle(s));
            cand_points_.push_back(std::move(chi));
        }
    }
    pos_.assign(m, -1);
    residual_.assign(m + 1, {});
    residual_[0] = coords;
}

bool DecompositionEnumerator::feasible_residual(const std::vector<int>& residual, int remaining) const {
    const int n = g_->n();
    for (int i = 0; i < n; ++i)
        if (residual[i] > remaining)
            return false;
    for (int k = 0; k < g_->num_edges(); ++k) {
        const auto& e = g_->edges()[k];
        int re = residual[n + k];
        int ru = residual[e.u];
        int rv = residual[e.v];
        if (re > ru || re > rv || ru + rv - re > remaining)
            return false;
    }
    return true;
}

std::optional<std::vector<Bundle>> DecompositionEnumerator::next() {
    if (done_)
        return std::nullopt;
    const int count = static_cast<int>(candidates_.size());
    while (depth_ >= 0) {
        const int k = depth_;
        int start = pos_[k] < 0 ? (k == 0 ? 0 : pos_[k - 1]) : pos_[k] + 1;
        const auto& res = residual_[k];
        int chosen = -1;
        for (int c = start; c < count && chosen < 0; ++c) {
            const auto& chi = cand_points_[c];
            bool fits = true;
            for (int i = 0; i < chi.size() && fits; ++i)
                fits = chi[i] <= res[i];
            if (!fits)
                continue;
            auto& next_res = residual_[k + 1];
            next_res = res;
            for (int i = 0; i < chi.size(); ++i)
                next_res[i] -= chi[i];
            if (feasible_residual(next_res, m_ - k - 1))
                chosen = c;
        }
        if (chosen < 0) {
            pos_[k] = -1;
            --depth_;
            continue;
        }
        pos_[k] = chosen;
        if (k == m_ - 1) {
            std::vector<Bundle> out;
            out.reserve(m_);
            for (int p : pos_)
                out.push_back(candidates_[p]);
            return out;
        }
        ++depth_;
        pos_[depth_] = -1;
    }
    done_ = true;
    return std::nullopt;
}

std::vector<std::vector<Bundle>> enumerate_decompositions(const GPoint& a, int m, const ValueGraph& g,
                                                          const EnumerationCaps& caps) {
    DecompositionEnumerator it(a, m, g, caps);
    std::vector<std::vector<Bundle>> out;
    while (auto d = it.next())
        out.push_back(std::move(*d));
    return out;
}

bool is_decomposable(const GPoint& a, int m, const ValueGraph& g, const EnumerationCaps& caps) {
    DecompositionEnumerator it(a, m, g, caps);
    return it.next().has_value();
}

namespace {

void supply_dfs(const ValueGraph& g, const std::vector<Bundle>& masks, const std::vector<GPoint>& chis,
                std::vector<int>& residual, int start, int remaining, std::vector<int>& chosen,
                std::map<GPoint, std::vector<std::vector<Bundle>>>& out) {
    if (remaining == 0) {
        if (std::any_of(residual.begin(), residual.end(), [](int r) { return r != 0; }))
            return;
        GPoint sum = GPoint::zeros(g.dim());
        std::vector<Bundle> parts;
        for (int c : chosen) {
            sum += chis[c];
            parts.push_back(masks[c]);
        }
        out[sum].push_back(std::move(parts));
        return;
    }
    for (int r : residual)
        if (r > remaining)
            return;
    for (int c = start; c < static_cast<int>(masks.size()); ++c) {
        Bundle s = masks[c];
        bool fits = true;
        for (int i : s.items())
            fits = fits && residual[i] > 0;
        if (!fits)
            continue;
        for (int i : s.items())
            --residual[i];
        chosen.push_back(c);
        supply_dfs(g, masks, chis, residual, c, remaining - 1, chosen, out);
        chosen.pop_back();
        for (int i : s.items())
            ++residual[i];
    }
}

}  // namespace

std::map<GPoint, std::vector<std::vector<Bundle>>> decomposable_points(std::span<const int> supply, int m,
                                                                        const ValueGraph& g,
                                                                        const EnumerationCaps& caps) {
    if (m <= 0)
        throw InvalidInput("m must be positive");
    if (static_cast<int>(supply.size()) != g.n())
        throw InvalidInput("supply needs one entry per item");
    for (int s : supply)
        if (s < 0)
            throw InvalidInput("negative supply entry");
    check_caps(g, m, caps);

    Bundle::Mask positive = 0;
    for (int i = 0; i < g.n(); ++i)
        if (supply[i] > 0)
            positive |= Bundle::Mask{1} << i;
    std::vector<Bundle> masks;
    std::vector<GPoint> chis;
    for (Bundle::Mask s = 0; s < (Bundle::Mask{1} << g.n()); ++s)
        if ((s & ~positive) == 0) {
            masks.push_back(Bundle(s));
            chis.push_back(char_vector(Bundle(s), g));
        }
    std::map<GPoint, std::vector<std::vector<Bundle>>> out;
    std::vector<int> residual(supply.begin(), supply.end());
    std::vector<int> chosen;
    supply_dfs(g, masks, chis, residual, 0, m, chosen, out);
    return out;
}

Face::Face(const ValueGraph& g, std::vector<GPoint> vertices) : vertices_(std::move(vertices)), dim_(g.dim()) {
    if (vertices_.empty())
        throw InvalidInput("a face needs at least one vertex");
    for (const auto& v : vertices_) {
        auto s = as_char_vector(v, g);
        if (!s)
            throw InvalidInput(to_string(v) + " is not a characteristic vector over the graph");
        bundles_.push_back(*s);
    }
}

Face Face::from_bundles(const ValueGraph& g, std::span<const Bundle> bundles) {
    std::vector<GPoint> v;
    for (Bundle b : bundles)
        v.push_back(char_vector(b, g));
    return Face(g, std::move(v));
}

std::optional<std::vector<std::vector<Rational>>> minkowski_weights(std::span<const Face> faces, const GPoint& a) {
    const int d = a.size();
    int vars = 0;
    for (const auto& f : faces) {
        if (f.dim() != d)
            throw InvalidInput("face and point dimension mismatch");
        vars += f.size();
    }
    LinearProgram lp(vars);
    lp.nonnegative.assign(vars, true);
    int offset = 0;
    for (const auto& f : faces) {
        std::vector<Rational> row(vars);
        for (int q = 0; q < f.size(); ++q)
            row[offset + q] = 1;
        lp.add(std::move(row), Relation::Equal, 1);
        offset += f.size();
    }
    for (int c = 0; c < d; ++c) {
        std::vector<Rational> row(vars);
        offset = 0;
        for (const auto& f : faces) {
            for (int q = 0; q < f.size(); ++q)
                row[offset + q] = f.vertices()[q][c];
            offset += f.size();
        }
        lp.add(std::move(row), Relation::Equal, a[c]);
    }
    LpResult res = lp_solve(lp);
    if (res.status != LpStatus::Optimal)
        return std::nullopt;
    std::vector<std::vector<Rational>> out;
    offset = 0;
    for (const auto& f : faces) {
        out.emplace_back(res.solution.begin() + offset, res.solution.begin() + offset + f.size());
        offset += f.size();
    }
    return out;
}

bool minkowski_contains(std::span<const Face> faces, const GPoint& a) { return minkowski_weights(faces, a).has_value(); }

namespace {

bool vertex_sum_dfs(std::span<const Face> faces, std::size_t b, std::vector<int>& residual,
                    std::vector<GPoint>& chosen, long& nodes, long max_nodes) {
    if (++nodes > max_nodes)
        throw CapExceeded("vertex_sum_contains exceeded " + std::to_string(max_nodes) + " search nodes");
    const int remaining = static_cast<int>(faces.size() - b);
    for (int r : residual)
        if (r < 0 || r > remaining)
            return false;
    if (b == faces.size())
        return true;
    for (const auto& q : faces[b].vertices()) {
        for (int c = 0; c < q.size(); ++c)
            residual[c] -= q[c];
        chosen.push_back(q);
        if (vertex_sum_dfs(faces, b + 1, residual, chosen, nodes, max_nodes))
            return true;
        chosen.pop_back();
        for (int c = 0; c < q.size(); ++c)
            residual[c] += q[c];
    }
    return false;
}

}  // namespace

std::optional<std::vector<GPoint>> vertex_sum_contains(std::span<const Face> faces, const GPoint& a,
                                                       long max_nodes) {
    for (const auto& f : faces)
        if (f.dim() != a.size())
            throw InvalidInput("face and point dimension mismatch");
    std::vector<int> residual = a.coords();
    std::vector<GPoint> chosen;
    long nodes = 0;
    if (vertex_sum_dfs(faces, 0, residual, chosen, nodes, max_nodes))
        return chosen;
    return std::nullopt;
}

}  // namespace graphce
