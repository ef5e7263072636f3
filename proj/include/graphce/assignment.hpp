#pragma once

#include <span>
#include <vector>

#include "graphce/model.hpp"
#include "graphce/polytope.hpp"

namespace graphce {

/// Directed network with integer capacities and a shortest-augmenting-path max flow.
class FlowNetwork {
  public:
    explicit FlowNetwork(int nodes = 0);

    int add_node();
    /// Returns the arc id. Arcs are scanned in insertion order.
    int add_arc(int from, int to, long long capacity);

    /// Edmonds-Karp from s to t. Flow is kept on the arcs; calling again resumes from it.
    long long max_flow(int s, int t);

    int num_nodes() const { return static_cast<int>(adj_.size()); }
    int num_arcs() const { return static_cast<int>(arcs_.size() / 2); }
    int from(int arc) const { return arcs_[2 * arc + 1].to; }
    int to(int arc) const { return arcs_[2 * arc].to; }
    long long capacity(int arc) const { return capacity_[arc]; }
    long long flow(int arc) const { return capacity_[arc] - arcs_[2 * arc].residual; }

  private:
    struct HalfArc {
        int to;
        long long residual;
    };
    std::vector<HalfArc> arcs_;  // arc k stored at 2k (forward) and 2k+1 (reverse)
    std::vector<long long> capacity_;
    std::vector<std::vector<int>> adj_;
};

/// A face with convex weights aligned with its vertex list.
struct WeightedFace {
    Face face;
    std::vector<Rational> weights;
};

/// A characteristic vector used `multiplicity` times.
struct Target {
    GPoint vector;
    int multiplicity = 0;
};

/**
 * Assigns one target vector to each face so that every face receives a
 * vertex of itself and target t is used exactly multiplicity_t times.
 *
 * Preconditions (PreconditionError otherwise): multiplicities sum to the
 * number of faces, weights are nonnegative and sum to 1 per face, targets are
 * distinct, and for every target t the weight placed on copies of its vector
 * across all faces equals multiplicity_t. Returns the target index per face.
 * Among several integral flows, augmenting in face order then target order
 * fixes the answer.
 */
std::vector<int> label_faces(std::span<const WeightedFace> faces, std::span<const Target> targets);

}  // namespace graphce
