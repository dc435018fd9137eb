#pragma once

// Concrete quiver representations: one matrix of shape d_{t(a)} x d_{s(a)} per
// arrow, over the rationals or a prime field.

#include "quiverkit/linalg.hpp"
#include "quiverkit/quiver.hpp"

#include <random>
#include <vector>

namespace quiverkit {

template <class Field>
struct Representation {
    using Scalar = typename Field::Scalar;

    Field field;
    DimensionVector dims;
    std::vector<Matrix<Scalar>> arrow_matrices;

    /// Throws InvalidArgument unless every matrix shape matches dims.
    void validate(const Quiver& q) const {
        require_same_vertex_set(q, dims);
        if (arrow_matrices.size() != q.arrow_count())
            throw Error(ErrorKind::InvalidArgument, "one matrix per arrow expected");
        for (ArrowIndex a = 0; a < q.arrow_count(); ++a) {
            const auto& m = arrow_matrices[a];
            if (m.rows() != dims[q.arrow(a).target] || m.cols() != dims[q.arrow(a).source])
                throw Error(ErrorKind::InvalidArgument, "matrix of arrow " + std::to_string(a) + " has the wrong shape");
        }
    }
};

using RationalRepresentation = Representation<RationalField>;
using FiniteFieldRepresentation = Representation<PrimeField>;

template <class Field>
Matrix<typename Field::Scalar> zero_matrix(Eigen::Index rows, Eigen::Index cols, const Field& field) {
    Matrix<typename Field::Scalar> m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = field.zero();
    return m;
}

/// The representation with all arrow maps zero.
template <class Field>
Representation<Field> zero_representation(const Quiver& q, const DimensionVector& d, const Field& field) {
    Representation<Field> rep{field, d, {}};
    for (const auto& a : q.arrows())
        rep.arrow_matrices.push_back(
            zero_matrix(static_cast<Eigen::Index>(d[a.target]), static_cast<Eigen::Index>(d[a.source]), field));
    return rep;
}

/// Matrix of the composite along `p`: N_{a_l} ... N_{a_1}.
template <class Field>
Matrix<typename Field::Scalar> path_matrix(const Quiver& q, const Representation<Field>& rep, const Path& p) {
    auto m = identity(static_cast<Eigen::Index>(rep.dims[p.source]), rep.field);
    VertexIndex at = p.source;
    for (auto a : p.arrows) {
        if (q.arrow(a).source != at) throw Error(ErrorKind::InvalidArgument, "not a path");
        m = multiply(rep.arrow_matrices[a], m, rep.field);
        at = q.arrow(a).target;
    }
    return m;
}

/// The semi-invariant f_p(N) = N_p for a path p whose endpoints are thin.
template <class Field>
typename Field::Scalar path_semiinvariant(const Quiver& q, const Representation<Field>& rep, const Path& p) {
    if (rep.dims[p.source] != 1 || rep.dims[p.target(q)] != 1)
        throw Error(ErrorKind::NotThinAtEndpoints, "path endpoints must carry dimension 1");
    return path_matrix(q, rep, p)(0, 0);
}

/// Element of prod_i GL(d_i): one invertible matrix per vertex.
template <class Field>
struct GroupElement {
    std::vector<Matrix<typename Field::Scalar>> components;
};

/// Base change g . N with (g . N)_a = g_{t(a)} N_a g_{s(a)}^{-1}.
template <class Field>
Representation<Field> act(const Quiver& q, const GroupElement<Field>& g, const Representation<Field>& rep) {
    std::vector<Matrix<typename Field::Scalar>> inverses;
    for (const auto& c : g.components) inverses.push_back(inverse(c, rep.field));
    Representation<Field> out{rep.field, rep.dims, {}};
    for (ArrowIndex a = 0; a < q.arrow_count(); ++a) {
        const auto& ar = q.arrow(a);
        out.arrow_matrices.push_back(multiply(multiply(g.components[ar.target], rep.arrow_matrices[a], rep.field),
                                              inverses[ar.source], rep.field));
    }
    return out;
}

/// Uniformly random matrix over F_p.
template <class Rng>
Matrix<std::int64_t> random_matrix(Eigen::Index rows, Eigen::Index cols, const PrimeField& field, Rng& rng) {
    std::uniform_int_distribution<std::int64_t> dist(0, field.prime() - 1);
    Matrix<std::int64_t> m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = dist(rng);
    return m;
}

template <class Rng>
FiniteFieldRepresentation random_representation(const Quiver& q, const DimensionVector& d, const PrimeField& field,
                                                Rng& rng) {
    FiniteFieldRepresentation rep{field, d, {}};
    for (const auto& a : q.arrows())
        rep.arrow_matrices.push_back(random_matrix(static_cast<Eigen::Index>(d[a.target]),
                                                   static_cast<Eigen::Index>(d[a.source]), field, rng));
    return rep;
}

/// Uniformly random element of prod_i GL(d_i, F_p), by rejection.
template <class Rng>
GroupElement<PrimeField> random_group_element(const DimensionVector& d, const PrimeField& field, Rng& rng) {
    GroupElement<PrimeField> g;
    for (std::size_t v = 0; v < d.size(); ++v) {
        const auto n = static_cast<Eigen::Index>(d[v]);
        while (true) {
            auto m = random_matrix(n, n, field, rng);
            if (rank(m, field) == n) {
                g.components.push_back(std::move(m));
                break;
            }
        }
    }
    return g;
}

}  // namespace quiverkit
