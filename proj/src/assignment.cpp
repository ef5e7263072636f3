#include "graphce/assignment.hpp"

#include <algorithm>
#include <deque>
#include <limits>

#include "graphce/errors.hpp"

namespace graphce {

FlowNetwork::FlowNetwork(int nodes) : adj_(static_cast<std::size_t>(nodes)) {}

int FlowNetwork::add_node() {
    adj_.emplace_back();
    return num_nodes() - 1;
}

int FlowNetwork::add_arc(int from, int to, long long capacity) {
    if (from < 0 || to < 0 || from >= num_nodes() || to >= num_nodes())
        throw InvalidInput("arc endpoint out of range");
    if (capacity < 0)
        throw InvalidInput("negative arc capacity");
    const int id = num_arcs();
    arcs_.push_back({to, capacity});
    arcs_.push_back({from, 0});
    capacity_.push_back(capacity);
    adj_[from].push_back(2 * id);
    adj_[to].push_back(2 * id + 1);
    return id;
}

long long FlowNetwork::max_flow(int s, int t) {
    if (s < 0 || t < 0 || s >= num_nodes() || t >= num_nodes())
        throw InvalidInput("flow terminal out of range");
    if (s == t)
        return 0;
    long long total = 0;
    std::vector<int> via(adj_.size());
    while (true) {
        std::fill(via.begin(), via.end(), -1);
        std::deque<int> queue{s};
        via[s] = -2;
        while (!queue.empty() && via[t] == -1) {
            int u = queue.front();
            queue.pop_front();
            for (int h : adj_[u]) {
                int v = arcs_[h].to;
                if (arcs_[h].residual > 0 && via[v] == -1) {
                    via[v] = h;
                    queue.push_back(v);
                }
            }
        }
        if (via[t] == -1)
            return total;
        long long push = std::numeric_limits<long long>::max();
        for (int v = t; v != s; v = arcs_[via[v] ^ 1].to)
            push = std::min(push, arcs_[via[v]].residual);
        for (int v = t; v != s; v = arcs_[via[v] ^ 1].to) {
            arcs_[via[v]].residual -= push;
            arcs_[via[v] ^ 1].residual += push;
        }
        total += push;
    }
}

std::vector<int> label_faces(std::span<const WeightedFace> faces, std::span<const Target> targets) {
    const int m = static_cast<int>(faces.size());
    const int k = static_cast<int>(targets.size());

    long long mu_total = 0;
    for (int t = 0; t < k; ++t) {
        if (targets[t].multiplicity < 0)
            throw PreconditionError("negative multiplicity for target " + std::to_string(t + 1));
        mu_total += targets[t].multiplicity;
        for (int u = 0; u < t; ++u)
            if (targets[u].vector == targets[t].vector)
                throw PreconditionError("targets " + std::to_string(u + 1) + " and " + std::to_string(t + 1) +
                                        " are the same vector");
    }
    if (mu_total != m)
        throw PreconditionError("multiplicities sum to " + std::to_string(mu_total) + ", expected " +
                                std::to_string(m) + " faces");

    for (int b = 0; b < m; ++b) {
        const auto& wf = faces[b];
        if (static_cast<int>(wf.weights.size()) != wf.face.size())
            throw PreconditionError("face " + std::to_string(b + 1) + " has " + std::to_string(wf.weights.size()) +
                                    " weights for " + std::to_string(wf.face.size()) + " vertices");
        Rational sum = 0;
        for (const auto& w : wf.weights) {
            if (w < 0)
                throw PreconditionError("negative weight on face " + std::to_string(b + 1));
            sum += w;
        }
        if (sum != 1)
            throw PreconditionError("weights on face " + std::to_string(b + 1) + " sum to " + to_string(sum));
    }

    // mu_t chi^t = sum_b sum_{q = chi^t} lambda_q q reduces to a scalar identity per t.
    for (int t = 0; t < k; ++t) {
        Rational mass = 0;
        for (const auto& wf : faces)
            for (int q = 0; q < wf.face.size(); ++q)
                if (wf.face.vertices()[q] == targets[t].vector)
                    mass += wf.weights[q];
        if (mass != targets[t].multiplicity)
            throw PreconditionError("balance fails at target " + std::to_string(t + 1) + " " +
                                    to_string(targets[t].vector) + ": weight " + to_string(mass) +
                                    " vs multiplicity " + std::to_string(targets[t].multiplicity));
    }

    const int source = 0;
    const int sink = 1;
    FlowNetwork net(2 + m + k);
    auto face_node = [](int b) { return 2 + b; };
    auto target_node = [m](int t) { return 2 + m + t; };
    for (int b = 0; b < m; ++b)
        net.add_arc(source, face_node(b), 1);
    std::vector<std::vector<std::pair<int, int>>> face_arcs(m);
    for (int b = 0; b < m; ++b)
        for (int t = 0; t < k; ++t) {
            const auto& verts = faces[b].face.vertices();
            if (std::find(verts.begin(), verts.end(), targets[t].vector) != verts.end())
                face_arcs[b].push_back({t, net.add_arc(face_node(b), target_node(t), 1)});
        }
    for (int t = 0; t < k; ++t)
        net.add_arc(target_node(t), sink, targets[t].multiplicity);

    long long value = net.max_flow(source, sink);
    if (value != m)
        throw std::logic_error("integral flow has value " + std::to_string(value) + " < " + std::to_string(m));

    std::vector<int> label(m, -1);
    for (int b = 0; b < m; ++b)
        for (auto [t, arc] : face_arcs[b])
            if (net.flow(arc) == 1)
                label[b] = t;
    return label;
}

}  // namespace graphce
