#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "graphce/rational.hpp"

namespace graphce {

/// Largest supported number of item types (bundles are bitmasks).
inline constexpr int kMaxItems = 32;

struct Edge {
    int u = 0;  ///< smaller endpoint, 0-based
    int v = 0;  ///< larger endpoint, 0-based
    auto operator<=>(const Edge&) const = default;
};

/**
 * Value graph on items 0..n-1.
 *
 * Coordinates of every vector over the graph are ordered vertices first
 * (0..n-1), then edges in lexicographic order of (u, v). The dimension is
 * d = n + |E|.
 */
class ValueGraph {
  public:
    ValueGraph() = default;
    /// Validates endpoints, rejects loops and duplicates, sorts canonically.
    ValueGraph(int n, std::vector<Edge> edges);

    static ValueGraph complete(int n);

    int n() const { return n_; }
    int num_edges() const { return static_cast<int>(edges_.size()); }
    int dim() const { return n_ + num_edges(); }
    const std::vector<Edge>& edges() const { return edges_; }
    bool is_complete() const { return num_edges() == n_ * (n_ - 1) / 2; }

    /// Coordinate of edge {i, j} (in n..d-1), if present.
    std::optional<int> edge_coord(int i, int j) const;
    bool has_edge(int i, int j) const { return edge_coord(i, j).has_value(); }

    /// "1-2" style label, 1-based, for coordinate c.
    std::string coord_label(int c) const;

    friend bool operator==(const ValueGraph& a, const ValueGraph& b) {
        return a.n_ == b.n_ && a.edges_ == b.edges_;
    }

  private:
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<int> index_;  // n*n table, -1 when absent
};

/// A subset of item types, stored as a bitmask over 0-based items.
class Bundle {
  public:
    using Mask = std::uint32_t;

    Bundle() = default;
    explicit Bundle(Mask mask) : mask_(mask) {}
    Bundle(std::initializer_list<int> items);
    static Bundle from_items(std::span<const int> items);

    Mask mask() const { return mask_; }
    bool contains(int item) const { return item >= 0 && item < kMaxItems && ((mask_ >> item) & 1U); }
    bool empty() const { return mask_ == 0; }
    int size() const;
    std::vector<int> items() const;
    bool subset_of(Bundle other) const { return (mask_ & ~other.mask_) == 0; }
    /// Largest item + 1, or 0 for the empty bundle.
    int span_end() const;

    auto operator<=>(const Bundle&) const = default;

  private:
    Mask mask_ = 0;
};

/// "{1,2}" with 1-based items.
std::string to_string(Bundle b);

/// Integer point over a ValueGraph's coordinates.
class GPoint {
  public:
    GPoint() = default;
    explicit GPoint(std::vector<int> coords) : coords_(std::move(coords)) {}
    static GPoint zeros(int d) { return GPoint(std::vector<int>(static_cast<std::size_t>(d), 0)); }

    int size() const { return static_cast<int>(coords_.size()); }
    int operator[](int i) const { return coords_[static_cast<std::size_t>(i)]; }
    int& operator[](int i) { return coords_[static_cast<std::size_t>(i)]; }
    const std::vector<int>& coords() const { return coords_; }

    GPoint& operator+=(const GPoint& other);
    GPoint& operator-=(const GPoint& other);
    friend GPoint operator+(GPoint a, const GPoint& b) { return a += b; }
    friend GPoint operator-(GPoint a, const GPoint& b) { return a -= b; }
    friend GPoint operator*(int k, GPoint a);

    auto operator<=>(const GPoint&) const = default;

  private:
    std::vector<int> coords_;
};

std::string to_string(const GPoint& a);

/// Characteristic vector a_S. Throws InvalidInput if S has an item >= n.
GPoint char_vector(Bundle s, const ValueGraph& g);

/// The vertex coordinates of a.
std::vector<int> project(const GPoint& a, const ValueGraph& g);

/// The bundle whose characteristic vector is `a`, if `a` is one.
std::optional<Bundle> as_char_vector(const GPoint& a, const ValueGraph& g);

/// One bundle per agent.
struct Allocation {
    std::vector<Bundle> bundles;

    int agents() const { return static_cast<int>(bundles.size()); }
    /// Sum of the agents' characteristic vectors.
    GPoint aggregate(const ValueGraph& g) const;

    auto operator<=>(const Allocation&) const = default;
};

/// Weight vector over a graph's coordinates; entries may be -inf.
class Valuation {
  public:
    Valuation() = default;
    explicit Valuation(std::vector<ExtendedRational> weights) : weights_(std::move(weights)) {}
    static Valuation finite(std::span<const Rational> weights);
    static Valuation from_ints(std::span<const int> weights);

    int size() const { return static_cast<int>(weights_.size()); }
    const ExtendedRational& operator[](int i) const { return weights_[static_cast<std::size_t>(i)]; }
    const std::vector<ExtendedRational>& weights() const { return weights_; }

    /// Vertices whose weight is finite.
    Bundle support(const ValueGraph& g) const;
    bool has_neg_inf() const;

    friend bool operator==(const Valuation&, const Valuation&) = default;

  private:
    std::vector<ExtendedRational> weights_;
};

/// v(S): vertex weights over S plus weights of edges inside S.
ExtendedRational value(const Valuation& v, Bundle s, const ValueGraph& g);

/// Entrywise v + c; -inf entries stay -inf.
Valuation shift(const Valuation& v, std::span<const Rational> c);

/**
 * Anonymous graphical price over a graph's coordinates.
 *
 * A linear-only price has every edge entry equal to zero.
 */
class PriceVector {
  public:
    PriceVector() = default;
    PriceVector(const ValueGraph& g, std::vector<Rational> entries, bool linear_only = false);
    static PriceVector zero(const ValueGraph& g) {
        return PriceVector(g, std::vector<Rational>(static_cast<std::size_t>(g.dim())));
    }
    static PriceVector linear(const ValueGraph& g, std::span<const Rational> vertex_prices);

    int size() const { return static_cast<int>(entries_.size()); }
    const Rational& operator[](int i) const { return entries_[static_cast<std::size_t>(i)]; }
    const std::vector<Rational>& entries() const { return entries_; }
    bool linear_only() const { return linear_only_; }

    friend bool operator==(const PriceVector&, const PriceVector&) = default;

  private:
    std::vector<Rational> entries_;
    bool linear_only_ = false;
};

Rational inner(const PriceVector& p, const GPoint& a);
Rational inner(std::span<const Rational> w, const GPoint& a);

/// Price of bundle S at p.
Rational price_of(const PriceVector& p, Bundle s, const ValueGraph& g);

}  // namespace graphce
