#pragma once

// Quivers and the integer vertex functions attached to them.
//
// Conventions used throughout the library:
//   Euler form  <e, f> = sum_i e_i f_i - sum_{a: s(a) -> t(a)} e_{s(a)} f_{t(a)}
//   slope       mu(e)  = theta(e) / sum_i e_i
// Both are standard in the quiver moduli literature; they are the only
// conventions under which "strong ample stability implies ample stability".

#include "quiverkit/errors.hpp"
#include "quiverkit/exact.hpp"

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace quiverkit {

using VertexIndex = std::size_t;
using ArrowIndex = std::size_t;

struct Arrow {
    VertexIndex source;
    VertexIndex target;

    friend bool operator==(const Arrow&, const Arrow&) = default;
};

/// Finite directed multigraph with an explicit vertex order. Parallel arrows
/// and loops are allowed; every arrow is a distinct object addressed by index.
class Quiver {
public:
    Quiver() = default;
    Quiver(std::vector<std::string> vertex_names, std::vector<Arrow> arrows);

    /// Vertices named "1".."n".
    static Quiver with_numbered_vertices(std::size_t n, std::vector<Arrow> arrows);

    std::size_t vertex_count() const { return names_.size(); }
    std::size_t arrow_count() const { return arrows_.size(); }
    const std::vector<std::string>& vertex_names() const { return names_; }
    const std::string& name(VertexIndex v) const { return names_.at(v); }
    const std::vector<Arrow>& arrows() const { return arrows_; }
    const Arrow& arrow(ArrowIndex a) const { return arrows_.at(a); }

    std::optional<VertexIndex> find_vertex(const std::string& name) const;
    /// Throws UnknownVertex.
    VertexIndex vertex(const std::string& name) const;

    /// Present iff the quiver is acyclic; a topological order of the vertices.
    const std::optional<std::vector<VertexIndex>>& topological_order() const { return topo_; }
    bool acyclic() const { return topo_.has_value(); }
    /// Throws CyclicQuiver when the quiver has an oriented cycle.
    const std::vector<VertexIndex>& require_acyclic() const;

    /// Full subquiver on the given vertices (kept in the given order). The
    /// optional out-parameter receives, per new arrow, the original arrow index.
    Quiver full_subquiver(const std::vector<VertexIndex>& vertices,
                          std::vector<ArrowIndex>* arrow_origin = nullptr) const;

    std::size_t connected_components() const;

    friend bool operator==(const Quiver& a, const Quiver& b) {
        return a.names_ == b.names_ && a.arrows_ == b.arrows_;
    }

private:
    std::vector<std::string> names_;
    std::vector<Arrow> arrows_;
    std::unordered_map<std::string, VertexIndex> index_;
    std::optional<std::vector<VertexIndex>> topo_;
};

/// Nonnegative integer vector indexed by the vertex order of a quiver.
class DimensionVector {
public:
    DimensionVector() = default;
    explicit DimensionVector(IntVector values);
    DimensionVector(std::initializer_list<std::int64_t> values);
    static DimensionVector zero(std::size_t n);

    std::size_t size() const { return static_cast<std::size_t>(values_.size()); }
    std::int64_t operator[](std::size_t i) const { return values_(static_cast<Eigen::Index>(i)); }
    const IntVector& values() const { return values_; }

    std::int64_t total() const;
    bool is_zero() const;
    /// Componentwise e <= *this.
    bool dominates(const DimensionVector& e) const;
    /// *this - e; requires dominates(e).
    DimensionVector minus(const DimensionVector& e) const;

    friend bool operator==(const DimensionVector& a, const DimensionVector& b) { return a.values_ == b.values_; }
    friend bool operator<(const DimensionVector& a, const DimensionVector& b);

private:
    IntVector values_;
};

std::string to_string(const DimensionVector& d);

namespace detail {
template <class Tag>
class IntegerVertexFunction {
public:
    IntegerVertexFunction() = default;
    explicit IntegerVertexFunction(IntVector values) : values_(std::move(values)) {}
    IntegerVertexFunction(std::initializer_list<std::int64_t> values) : values_(static_cast<Eigen::Index>(values.size())) {
        Eigen::Index k = 0;
        for (auto v : values) values_(k++) = v;
    }
    static IntegerVertexFunction zero(std::size_t n) { return IntegerVertexFunction(IntVector::Zero(static_cast<Eigen::Index>(n))); }

    std::size_t size() const { return static_cast<std::size_t>(values_.size()); }
    std::int64_t operator[](std::size_t i) const { return values_(static_cast<Eigen::Index>(i)); }
    const IntVector& values() const { return values_; }

    /// The pairing sum_i values_i e_i, computed with overflow checks.
    std::int64_t operator()(const DimensionVector& e) const {
        if (e.size() != size()) throw Error(ErrorKind::VertexMismatch, "vertex function and dimension vector differ in size");
        std::int64_t acc = 0;
        for (std::size_t i = 0; i < size(); ++i) acc = checked_add(acc, checked_mul((*this)[i], e[i]));
        return acc;
    }

    IntegerVertexFunction scaled(std::int64_t k) const {
        IntVector v(values_.size());
        for (Eigen::Index i = 0; i < values_.size(); ++i) v(i) = checked_mul(values_(i), k);
        return IntegerVertexFunction(std::move(v));
    }

    friend bool operator==(const IntegerVertexFunction& a, const IntegerVertexFunction& b) { return a.values_ == b.values_; }

private:
    IntVector values_;
};
}  // namespace detail

/// Integer weights theta with theta(d) = 0 for the designated d.
using StabilityParameter = detail::IntegerVertexFunction<struct StabilityTag>;
/// Integer weights a with a(d) = 1 for the designated d.
using Character = detail::IntegerVertexFunction<struct CharacterTag>;

std::string to_string(const StabilityParameter& theta);

/// Directed path: a start vertex and arrows in the order they are traversed.
struct Path {
    VertexIndex source = 0;
    std::vector<ArrowIndex> arrows;

    bool trivial() const { return arrows.empty(); }
    VertexIndex target(const Quiver& q) const { return arrows.empty() ? source : q.arrow(arrows.back()).target; }
    friend bool operator==(const Path&, const Path&) = default;
    friend auto operator<=>(const Path&, const Path&) = default;
};

/// The path obtained by first traversing `first`, then `second`.
Path concatenate(const Path& first, const Path& second, const Quiver& q);

struct AcyclicityCertificate {
    bool acyclic = false;
    std::vector<VertexIndex> topological_order;  // when acyclic
    std::vector<ArrowIndex> cycle;               // when not: arrows of an oriented cycle
};

AcyclicityCertificate is_acyclic(const Quiver& q);

std::int64_t euler_form(const Quiver& q, const DimensionVector& e, const DimensionVector& f);

/// p(i, j) = number of paths from i to j, including the trivial path at i.
using PathCountMatrix = Matrix<Integer>;

PathCountMatrix path_count_matrix(const Quiver& q);

/// All paths from `from` to `to`, in depth-first order of arrow indices.
/// Throws BudgetExceeded when more than `limit` paths exist.
std::vector<Path> enumerate_paths(const Quiver& q, VertexIndex from, VertexIndex to,
                                  std::size_t limit = 1'000'000);

/// theta_can(e) = <d, e> - <e, d>.
StabilityParameter canonical_stability(const Quiver& q, const DimensionVector& d);

/// Extended-gcd character with a(d) = 1. Throws Divisible when gcd(d) > 1.
Character weight_one_character(const DimensionVector& d);

std::int64_t gcd_of_entries(const DimensionVector& d);

void require_same_vertex_set(const Quiver& q, const DimensionVector& d);
void require_same_vertex_set(const Quiver& q, const StabilityParameter& theta);

}  // namespace quiverkit
