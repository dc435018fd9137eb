#include "quiverkit/quiver.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <sstream>

namespace quiverkit {

Quiver::Quiver(std::vector<std::string> vertex_names, std::vector<Arrow> arrows)
    : names_(std::move(vertex_names)), arrows_(std::move(arrows)) {
    for (VertexIndex v = 0; v < names_.size(); ++v) {
        if (!index_.emplace(names_[v], v).second)
            throw Error(ErrorKind::InvalidArgument, "duplicate vertex '" + names_[v] + "'");
    }
    for (ArrowIndex a = 0; a < arrows_.size(); ++a) {
        if (arrows_[a].source >= names_.size() || arrows_[a].target >= names_.size())
            throw Error(ErrorKind::UnknownVertex, "arrow " + std::to_string(a) + " has an undeclared endpoint");
    }
    auto cert = is_acyclic(*this);
    if (cert.acyclic) topo_ = std::move(cert.topological_order);
}

Quiver Quiver::with_numbered_vertices(std::size_t n, std::vector<Arrow> arrows) {
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= n; ++i) names.push_back(std::to_string(i));
    return Quiver(std::move(names), std::move(arrows));
}

std::optional<VertexIndex> Quiver::find_vertex(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

VertexIndex Quiver::vertex(const std::string& name) const {
    auto v = find_vertex(name);
    if (!v) throw Error(ErrorKind::UnknownVertex, "no vertex named '" + name + "'");
    return *v;
}

const std::vector<VertexIndex>& Quiver::require_acyclic() const {
    if (!topo_) throw Error(ErrorKind::CyclicQuiver, "the quiver has an oriented cycle");
    return *topo_;
}

Quiver Quiver::full_subquiver(const std::vector<VertexIndex>& vertices, std::vector<ArrowIndex>* arrow_origin) const {
    std::vector<std::optional<VertexIndex>> position(names_.size());
    std::vector<std::string> names;
    for (VertexIndex k = 0; k < vertices.size(); ++k) {
        position.at(vertices[k]) = k;
        names.push_back(names_[vertices[k]]);
    }
    std::vector<Arrow> arrows;
    if (arrow_origin) arrow_origin->clear();
    for (ArrowIndex a = 0; a < arrows_.size(); ++a) {
        const auto& s = position[arrows_[a].source];
        const auto& t = position[arrows_[a].target];
        if (s && t) {
            arrows.push_back({*s, *t});
            if (arrow_origin) arrow_origin->push_back(a);
        }
    }
    return Quiver(std::move(names), std::move(arrows));
}

std::size_t Quiver::connected_components() const {
    std::vector<std::size_t> parent(names_.size());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::size_t components = names_.size();
    for (const auto& a : arrows_) {
        auto ra = find(a.source), rb = find(a.target);
        if (ra != rb) {
            parent[ra] = rb;
            --components;
        }
    }
    return components;
}

DimensionVector::DimensionVector(IntVector values) : values_(std::move(values)) {
    for (Eigen::Index i = 0; i < values_.size(); ++i)
        if (values_(i) < 0) throw Error(ErrorKind::InvalidArgument, "dimension vectors have nonnegative entries");
}

DimensionVector::DimensionVector(std::initializer_list<std::int64_t> values)
    : DimensionVector([&] {
          IntVector v(static_cast<Eigen::Index>(values.size()));
          Eigen::Index k = 0;
          for (auto x : values) v(k++) = x;
          return v;
      }()) {}

DimensionVector DimensionVector::zero(std::size_t n) {
    return DimensionVector(IntVector::Zero(static_cast<Eigen::Index>(n)));
}

std::int64_t DimensionVector::total() const {
    std::int64_t acc = 0;
    for (Eigen::Index i = 0; i < values_.size(); ++i) acc = checked_add(acc, values_(i));
    return acc;
}

bool DimensionVector::is_zero() const { return (values_.array() == 0).all(); }

bool DimensionVector::dominates(const DimensionVector& e) const {
    if (e.size() != size()) throw Error(ErrorKind::VertexMismatch, "dimension vectors differ in size");
    return (e.values_.array() <= values_.array()).all();
}

DimensionVector DimensionVector::minus(const DimensionVector& e) const {
    if (!dominates(e)) throw Error(ErrorKind::InvalidArgument, "subtraction leaves negative entries");
    return DimensionVector(IntVector(values_ - e.values_));
}

bool operator<(const DimensionVector& a, const DimensionVector& b) {
    return std::lexicographical_compare(a.values_.begin(), a.values_.end(), b.values_.begin(), b.values_.end());
}

namespace {
std::string format_vector(const IntVector& v) {
    std::ostringstream os;
    os << '(';
    for (Eigen::Index i = 0; i < v.size(); ++i) os << (i ? "," : "") << v(i);
    os << ')';
    return os.str();
}
}  // namespace

std::string to_string(const DimensionVector& d) { return format_vector(d.values()); }
std::string to_string(const StabilityParameter& theta) { return format_vector(theta.values()); }

Path concatenate(const Path& first, const Path& second, const Quiver& q) {
    if (first.target(q) != second.source)
        throw Error(ErrorKind::InvalidArgument, "paths are not composable");
    Path out = first;
    out.arrows.insert(out.arrows.end(), second.arrows.begin(), second.arrows.end());
    return out;
}

AcyclicityCertificate is_acyclic(const Quiver& q) {
    const std::size_t n = q.vertex_count();
    std::vector<std::size_t> indegree(n, 0);
    std::vector<std::vector<ArrowIndex>> outgoing(n);
    for (ArrowIndex a = 0; a < q.arrow_count(); ++a) {
        ++indegree[q.arrow(a).target];
        outgoing[q.arrow(a).source].push_back(a);
    }
    // Kahn's algorithm, smallest available vertex first.
    std::priority_queue<VertexIndex, std::vector<VertexIndex>, std::greater<>> ready;
    for (VertexIndex v = 0; v < n; ++v)
        if (indegree[v] == 0) ready.push(v);
    AcyclicityCertificate cert;
    while (!ready.empty()) {
        auto v = ready.top();
        ready.pop();
        cert.topological_order.push_back(v);
        for (auto a : outgoing[v])
            if (--indegree[q.arrow(a).target] == 0) ready.push(q.arrow(a).target);
    }
    if (cert.topological_order.size() == n) {
        cert.acyclic = true;
        return cert;
    }
    cert.topological_order.clear();

    // Every leftover vertex has an incoming arrow from another leftover vertex;
    // walking backwards along such arrows must revisit a vertex.
    std::vector<ArrowIndex> incoming_leftover(n, q.arrow_count());
    for (ArrowIndex a = 0; a < q.arrow_count(); ++a) {
        const auto& ar = q.arrow(a);
        if (indegree[ar.source] > 0 && indegree[ar.target] > 0 && incoming_leftover[ar.target] == q.arrow_count())
            incoming_leftover[ar.target] = a;
    }
    VertexIndex start = 0;
    while (indegree[start] == 0) ++start;
    std::vector<std::optional<std::size_t>> seen_at(n);
    std::vector<ArrowIndex> walk;
    VertexIndex v = start;
    while (!seen_at[v]) {
        seen_at[v] = walk.size();
        auto a = incoming_leftover[v];
        walk.push_back(a);
        v = q.arrow(a).source;
    }
    // walk[k] enters the k-th visited vertex; the cycle is the tail from v.
    std::vector<ArrowIndex> cycle(walk.begin() + static_cast<std::ptrdiff_t>(*seen_at[v]), walk.end());
    std::reverse(cycle.begin(), cycle.end());
    cert.cycle = std::move(cycle);
    return cert;
}

void require_same_vertex_set(const Quiver& q, const DimensionVector& d) {
    if (d.size() != q.vertex_count())
        throw Error(ErrorKind::VertexMismatch, "dimension vector has " + std::to_string(d.size()) +
                                                   " entries, quiver has " + std::to_string(q.vertex_count()) +
                                                   " vertices");
}

void require_same_vertex_set(const Quiver& q, const StabilityParameter& theta) {
    if (theta.size() != q.vertex_count())
        throw Error(ErrorKind::VertexMismatch, "vertex function has " + std::to_string(theta.size()) +
                                                   " entries, quiver has " + std::to_string(q.vertex_count()) +
                                                   " vertices");
}

std::int64_t euler_form(const Quiver& q, const DimensionVector& e, const DimensionVector& f) {
    require_same_vertex_set(q, e);
    require_same_vertex_set(q, f);
    std::int64_t acc = 0;
    for (std::size_t i = 0; i < q.vertex_count(); ++i) acc = checked_add(acc, checked_mul(e[i], f[i]));
    for (const auto& a : q.arrows()) acc = checked_sub(acc, checked_mul(e[a.source], f[a.target]));
    return acc;
}

PathCountMatrix path_count_matrix(const Quiver& q) {
    const auto& order = q.require_acyclic();
    const auto n = static_cast<Eigen::Index>(q.vertex_count());
    PathCountMatrix p = PathCountMatrix::Constant(n, n, Integer(0));
    std::vector<std::vector<ArrowIndex>> incoming(q.vertex_count());
    for (ArrowIndex a = 0; a < q.arrow_count(); ++a) incoming[q.arrow(a).target].push_back(a);

    // Column j depends on columns of sources of arrows into j, which come
    // earlier in the topological order.
    for (auto j : order) {
        const auto jj = static_cast<Eigen::Index>(j);
        p(jj, jj) += Integer(1);
        for (auto a : incoming[j]) {
            const auto s = static_cast<Eigen::Index>(q.arrow(a).source);
            for (Eigen::Index i = 0; i < n; ++i) p(i, jj) += p(i, s);
        }
    }
    return p;
}

std::vector<Path> enumerate_paths(const Quiver& q, VertexIndex from, VertexIndex to, std::size_t limit) {
    q.require_acyclic();
    std::vector<std::vector<ArrowIndex>> outgoing(q.vertex_count());
    for (ArrowIndex a = 0; a < q.arrow_count(); ++a) outgoing[q.arrow(a).source].push_back(a);

    std::vector<Path> out;
    Path current{from, {}};
    auto visit = [&](auto&& self, VertexIndex v) -> void {
        if (v == to) {
            if (out.size() == limit)
                throw Error(ErrorKind::BudgetExceeded, "more than " + std::to_string(limit) + " paths");
            out.push_back(current);
        }
        for (auto a : outgoing[v]) {
            current.arrows.push_back(a);
            self(self, q.arrow(a).target);
            current.arrows.pop_back();
        }
    };
    visit(visit, from);
    return out;
}

StabilityParameter canonical_stability(const Quiver& q, const DimensionVector& d) {
    require_same_vertex_set(q, d);
    // theta_can(e_k) = <d, e_k> - <e_k, d>
    //              = (d_k - sum_{a: t(a)=k} d_{s(a)}) - (d_k - sum_{a: s(a)=k} d_{t(a)})
    IntVector theta = IntVector::Zero(static_cast<Eigen::Index>(q.vertex_count()));
    for (const auto& a : q.arrows()) {
        auto& at_target = theta(static_cast<Eigen::Index>(a.target));
        auto& at_source = theta(static_cast<Eigen::Index>(a.source));
        at_target = checked_sub(at_target, d[a.source]);
        at_source = checked_add(at_source, d[a.target]);
    }
    return StabilityParameter(std::move(theta));
}

namespace {
// Returns (g, x, y) with x a + y b = g = gcd(a, b), for a, b >= 0.
struct Bezout {
    std::int64_t g, x, y;
};

Bezout extended_gcd(std::int64_t a, std::int64_t b) {
    if (b == 0) return {a, 1, 0};
    auto r = extended_gcd(b, a % b);
    return {r.g, r.y, checked_sub(r.x, checked_mul(a / b, r.y))};
}
}  // namespace

std::int64_t gcd_of_entries(const DimensionVector& d) {
    std::int64_t g = 0;
    for (std::size_t i = 0; i < d.size(); ++i) g = std::gcd(g, d[i]);
    return g;
}

Character weight_one_character(const DimensionVector& d) {
    if (d.is_zero()) throw Error(ErrorKind::InvalidArgument, "the zero dimension vector admits no character");
    const auto g_total = gcd_of_entries(d);
    if (g_total != 1)
        throw Error(ErrorKind::Divisible, "gcd of " + to_string(d) + " is " + std::to_string(g_total));

    IntVector a = IntVector::Zero(static_cast<Eigen::Index>(d.size()));
    std::int64_t g = 0;  // a(d restricted to the processed prefix) == g
    for (std::size_t k = 0; k < d.size(); ++k) {
        const auto dk = d[k];
        if (dk == 0) continue;
        if (g == 0) {
            g = dk;
            a(static_cast<Eigen::Index>(k)) = 1;
            continue;
        }
        if (dk % g == 0) continue;
        auto [next, x, y] = extended_gcd(g, dk);
        for (Eigen::Index i = 0; i < a.size(); ++i) a(i) = checked_mul(a(i), x);
        a(static_cast<Eigen::Index>(k)) = y;
        g = next;
    }
    return Character(std::move(a));
}

}  // namespace quiverkit
