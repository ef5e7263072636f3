#include "graphce/model.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "graphce/errors.hpp"

namespace graphce {

ValueGraph::ValueGraph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    if (n < 0 || n > kMaxItems)
        throw InvalidInput("item count " + std::to_string(n) + " outside [0, " +
                           std::to_string(kMaxItems) + "]");
    for (auto& e : edges_) {
        if (e.u > e.v)
            std::swap(e.u, e.v);
        if (e.u < 0 || e.v >= n)
            throw InvalidInput("edge endpoint out of range");
        if (e.u == e.v)
            throw InvalidInput("loop at item " + std::to_string(e.u + 1));
    }
    std::sort(edges_.begin(), edges_.end());
    if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
        throw InvalidInput("duplicate edge");
    index_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), -1);
    for (int k = 0; k < num_edges(); ++k) {
        const auto& e = edges_[static_cast<std::size_t>(k)];
        index_[static_cast<std::size_t>(e.u * n + e.v)] = n + k;
        index_[static_cast<std::size_t>(e.v * n + e.u)] = n + k;
    }
}

ValueGraph ValueGraph::complete(int n) {
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            edges.push_back({i, j});
    return ValueGraph(n, std::move(edges));
}

std::optional<int> ValueGraph::edge_coord(int i, int j) const {
    if (i < 0 || j < 0 || i >= n_ || j >= n_)
        return std::nullopt;
    int c = index_[static_cast<std::size_t>(i * n_ + j)];
    if (c < 0)
        return std::nullopt;
    return c;
}

std::string ValueGraph::coord_label(int c) const {
    if (c < n_)
        return std::to_string(c + 1);
    const auto& e = edges_.at(static_cast<std::size_t>(c - n_));
    return std::to_string(e.u + 1) + "-" + std::to_string(e.v + 1);
}

Bundle::Bundle(std::initializer_list<int> items) : Bundle(from_items(std::span(items.begin(), items.size()))) {}

Bundle Bundle::from_items(std::span<const int> items) {
    Mask m = 0;
    for (int i : items) {
        if (i < 0 || i >= kMaxItems)
            throw InvalidInput("item " + std::to_string(i) + " out of range");
        m |= Mask{1} << i;
    }
    return Bundle(m);
}

int Bundle::size() const { return std::popcount(mask_); }

std::vector<int> Bundle::items() const {
    std::vector<int> out;
    for (int i = 0; i < kMaxItems; ++i)
        if (contains(i))
            out.push_back(i);
    return out;
}

int Bundle::span_end() const { return mask_ == 0 ? 0 : kMaxItems - std::countl_zero(mask_); }

std::string to_string(Bundle b) {
    std::string s = "{";
    bool first = true;
    for (int i : b.items()) {
        if (!first)
            s += ",";
        s += std::to_string(i + 1);
        first = false;
    }
    return s + "}";
}

GPoint& GPoint::operator+=(const GPoint& other) {
    if (other.size() != size())
        throw InvalidInput("point dimension mismatch");
    for (std::size_t i = 0; i < coords_.size(); ++i)
        coords_[i] += other.coords_[i];
    return *this;
}

GPoint& GPoint::operator-=(const GPoint& other) {
    if (other.size() != size())
        throw InvalidInput("point dimension mismatch");
    for (std::size_t i = 0; i < coords_.size(); ++i)
        coords_[i] -= other.coords_[i];
    return *this;
}

GPoint operator*(int k, GPoint a) {
    for (auto& c : a.coords_)
        c *= k;
    return a;
}

std::string to_string(const GPoint& a) {
    std::ostringstream os;
    os << "(";
    for (int i = 0; i < a.size(); ++i)
        os << (i ? "," : "") << a[i];
    os << ")";
    return os.str();
}

GPoint char_vector(Bundle s, const ValueGraph& g) {
    if (s.span_end() > g.n())
        throw InvalidInput("bundle " + to_string(s) + " has an item outside [1, " + std::to_string(g.n()) + "]");
    GPoint a = GPoint::zeros(g.dim());
    for (int i = 0; i < g.n(); ++i)
        a[i] = s.contains(i) ? 1 : 0;
    for (int k = 0; k < g.num_edges(); ++k) {
        const auto& e = g.edges()[static_cast<std::size_t>(k)];
        a[g.n() + k] = (s.contains(e.u) && s.contains(e.v)) ? 1 : 0;
    }
    return a;
}

std::vector<int> project(const GPoint& a, const ValueGraph& g) {
    if (a.size() != g.dim())
        throw InvalidInput("point has " + std::to_string(a.size()) + " coordinates, graph needs " +
                           std::to_string(g.dim()));
    return {a.coords().begin(), a.coords().begin() + g.n()};
}

std::optional<Bundle> as_char_vector(const GPoint& a, const ValueGraph& g) {
    if (a.size() != g.dim())
        return std::nullopt;
    Bundle::Mask m = 0;
    for (int i = 0; i < g.n(); ++i) {
        if (a[i] != 0 && a[i] != 1)
            return std::nullopt;
        if (a[i] == 1)
            m |= Bundle::Mask{1} << i;
    }
    Bundle s(m);
    if (char_vector(s, g) != a)
        return std::nullopt;
    return s;
}

GPoint Allocation::aggregate(const ValueGraph& g) const {
    GPoint a = GPoint::zeros(g.dim());
    for (Bundle s : bundles)
        a += char_vector(s, g);
    return a;
}

Valuation Valuation::finite(std::span<const Rational> weights) {
    std::vector<ExtendedRational> w(weights.begin(), weights.end());
    return Valuation(std::move(w));
}

Valuation Valuation::from_ints(std::span<const int> weights) {
    std::vector<ExtendedRational> w;
    w.reserve(weights.size());
    for (int x : weights)
        w.emplace_back(x);
    return Valuation(std::move(w));
}

Bundle Valuation::support(const ValueGraph& g) const {
    Bundle::Mask m = 0;
    for (int i = 0; i < g.n() && i < size(); ++i)
        if (weights_[static_cast<std::size_t>(i)].is_finite())
            m |= Bundle::Mask{1} << i;
    return Bundle(m);
}

bool Valuation::has_neg_inf() const {
    return std::any_of(weights_.begin(), weights_.end(), [](const auto& w) { return w.is_neg_inf(); });
}

ExtendedRational value(const Valuation& v, Bundle s, const ValueGraph& g) {
    if (v.size() != g.dim())
        throw InvalidInput("valuation has " + std::to_string(v.size()) + " weights, graph needs " +
                           std::to_string(g.dim()));
    if (s.span_end() > g.n())
        throw InvalidInput("bundle " + to_string(s) + " out of range");
    ExtendedRational total;
    for (int i : s.items())
        total += v[i];
    for (int k = 0; k < g.num_edges(); ++k) {
        const auto& e = g.edges()[static_cast<std::size_t>(k)];
        if (s.contains(e.u) && s.contains(e.v))
            total += v[g.n() + k];
    }
    return total;
}

Valuation shift(const Valuation& v, std::span<const Rational> c) {
    if (static_cast<int>(c.size()) != v.size())
        throw InvalidInput("shift vector length mismatch");
    std::vector<ExtendedRational> w = v.weights();
    for (std::size_t i = 0; i < w.size(); ++i)
        w[i] += ExtendedRational(c[i]);
    return Valuation(std::move(w));
}

PriceVector::PriceVector(const ValueGraph& g, std::vector<Rational> entries, bool linear_only)
    : entries_(std::move(entries)), linear_only_(linear_only) {
    if (size() != g.dim())
        throw InvalidInput("price has " + std::to_string(size()) + " entries, graph needs " +
                           std::to_string(g.dim()));
    if (linear_only_)
        for (int c = g.n(); c < g.dim(); ++c)
            if (entries_[static_cast<std::size_t>(c)] != 0)
                throw InvalidInput("linear price has nonzero edge entry " + g.coord_label(c));
}

PriceVector PriceVector::linear(const ValueGraph& g, std::span<const Rational> vertex_prices) {
    if (static_cast<int>(vertex_prices.size()) != g.n())
        throw InvalidInput("linear price needs one entry per item");
    std::vector<Rational> e(vertex_prices.begin(), vertex_prices.end());
    e.resize(static_cast<std::size_t>(g.dim()));
    return PriceVector(g, std::move(e), true);
}

Rational inner(std::span<const Rational> w, const GPoint& a) {
    if (static_cast<int>(w.size()) != a.size())
        throw InvalidInput("inner product dimension mismatch");
    Rational s = 0;
    for (int i = 0; i < a.size(); ++i)
        if (a[i] != 0)
            s += w[static_cast<std::size_t>(i)] * a[i];
    return s;
}

Rational inner(const PriceVector& p, const GPoint& a) { return inner(std::span(p.entries()), a); }

Rational price_of(const PriceVector& p, Bundle s, const ValueGraph& g) { return inner(p, char_vector(s, g)); }

}  // namespace graphce
