#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "graphce/model.hpp"

namespace graphce {

/// Size limits for exhaustive enumerations. Exceeding one throws CapExceeded.
struct EnumerationCaps {
    int max_n = 6;
    int max_m = 6;
};

void check_caps(const ValueGraph& g, int m, const EnumerationCaps& caps);

/// All 2^n characteristic vectors, ordered by bundle bitmask.
std::vector<GPoint> polytope_vertices(const ValueGraph& g, int max_n = 16);

// ---------------------------------------------------------------------------
// Relaxation inequalities of m P(K_n)
// ---------------------------------------------------------------------------

enum class PadbergTag {
    EdgeNonnegative,      ///< (i)   x_ij >= 0
    VertexCoversEdge,     ///< (ii)  x_i - x_ij >= 0
    PairBound,            ///< (iii) x_i + x_j - x_ij <= m
    Triangle,             ///< (iv)  x_i + x_jk - x_ij - x_ik >= 0
    TripleBound,          ///< (v)   x_i + x_j + x_k - x_ij - x_ik - x_jk <= m
};

std::string to_string(PadbergTag tag);

struct PadbergViolation {
    PadbergTag tag;
    std::vector<int> indices;  ///< 0-based; for (ii) and (iv) the first entry is i
    int lhs = 0;               ///< value of the left-hand side at the point
};

std::string to_string(const PadbergViolation& v);

/// All violated instances of (i)-(v). Requires a complete graph.
std::vector<PadbergViolation> padberg_check(const GPoint& a, int m, const ValueGraph& g);

/// sum_{k in reps} x_k - sum_{k<l in reps} x_kl <= m, for items pairwise adjacent.
bool clique_inequality_holds(const GPoint& a, Bundle reps, int m, const ValueGraph& g);

// ---------------------------------------------------------------------------
// Clique decompositions
// ---------------------------------------------------------------------------

struct CliquePart {
    int multiplicity = 0;
    Bundle clique;
    auto operator<=>(const CliquePart&) const = default;
};

/// a = sum multiplicity * chi(K_clique).
struct CliqueDecomposition {
    std::vector<CliquePart> parts;

    GPoint reconstruct(const ValueGraph& g) const;
    int total_multiplicity() const;
    /// Parts expanded by multiplicity, in order.
    std::vector<Bundle> expanded() const;
};

/**
 * Splits a in {0,r}^d into r copies of pairwise disjoint cliques.
 *
 * Parts are the connected components of the support graph of a/r, ordered
 * by smallest item. Throws PreconditionError if an entry is outside {0,r},
 * an edge is supported without both endpoints, or a component is not a
 * clique (the triangle inequality (iv) fails there).
 */
CliqueDecomposition clique_decompose(const GPoint& a, int r, const ValueGraph& g);

struct NestedChain {
    GPoint point;
    CliqueDecomposition decomposition;
};

/**
 * The point with a_i = bundle_i and a_ij = min(bundle_i, bundle_j), and its
 * decomposition into nested cliques {i : bundle_i >= t} over the distinct
 * nonzero levels t_1 < ... < t_s with multiplicities t_l - t_{l-1}, padded
 * with an empty part of multiplicity m - t_s when that is positive.
 */
NestedChain nested_chain_point(std::span<const int> bundle, int m, const ValueGraph& g);

// ---------------------------------------------------------------------------
// Decompositions into m vertices
// ---------------------------------------------------------------------------

/**
 * Single-pass generator over the multisets {a^1..a^m} of vertices of P(G)
 * with sum a. Each multiset is yielded once, as bundles in nondecreasing
 * bitmask order; multisets come out in lexicographic order.
 */
class DecompositionEnumerator {
  public:
    DecompositionEnumerator(const GPoint& a, int m, const ValueGraph& g, const EnumerationCaps& caps = {});

    std::optional<std::vector<Bundle>> next();

  private:
    bool feasible_residual(const std::vector<int>& residual, int remaining) const;

    const ValueGraph* g_;
    int m_;
    std::vector<Bundle> candidates_;
    std::vector<GPoint> cand_points_;
    std::vector<int> pos_;
    std::vector<std::vector<int>> residual_;
    int depth_ = 0;
    bool done_ = false;
};

std::vector<std::vector<Bundle>> enumerate_decompositions(const GPoint& a, int m, const ValueGraph& g,
                                                          const EnumerationCaps& caps = {});

bool is_decomposable(const GPoint& a, int m, const ValueGraph& g, const EnumerationCaps& caps = {});

/**
 * Every decomposable point a with pi(a) = supply, each with all of its
 * decompositions into m vertices. Points come out in lexicographic order.
 */
std::map<GPoint, std::vector<std::vector<Bundle>>> decomposable_points(std::span<const int> supply, int m,
                                                                        const ValueGraph& g,
                                                                        const EnumerationCaps& caps = {});

// ---------------------------------------------------------------------------
// Faces and Minkowski sums
// ---------------------------------------------------------------------------

/// A face of P(G), given by its vertex set.
class Face {
  public:
    /// Throws InvalidInput if a member is not a characteristic vector over g.
    Face(const ValueGraph& g, std::vector<GPoint> vertices);
    static Face from_bundles(const ValueGraph& g, std::span<const Bundle> bundles);

    const std::vector<GPoint>& vertices() const { return vertices_; }
    const std::vector<Bundle>& bundles() const { return bundles_; }
    int size() const { return static_cast<int>(vertices_.size()); }
    int dim() const { return dim_; }

    friend bool operator==(const Face&, const Face&) = default;

  private:
    std::vector<GPoint> vertices_;
    std::vector<Bundle> bundles_;
    int dim_ = 0;
};

/**
 * Convex weights per face (aligned with Face::vertices) whose combination
 * sums to a, if any exist. Decided by exact LP feasibility.
 */
std::optional<std::vector<std::vector<Rational>>> minkowski_weights(std::span<const Face> faces, const GPoint& a);

bool minkowski_contains(std::span<const Face> faces, const GPoint& a);

/**
 * One vertex per face summing to a, if possible. Depth-first with residual
 * pruning; throws CapExceeded after `max_nodes` search nodes.
 */
std::optional<std::vector<GPoint>> vertex_sum_contains(std::span<const Face> faces, const GPoint& a,
                                                       long max_nodes = 10'000'000);

}  // namespace graphce
