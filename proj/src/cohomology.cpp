#include "quiverkit/cohomology.hpp"

#include <algorithm>

namespace quiverkit {

EndomorphismTable endomorphism_dimensions(const Quiver& q, const DimensionVector& d, const AssumptionsReport& attested) {
    require_same_vertex_set(q, d);
    EndomorphismTable table{path_count_matrix(q), Integer(0), {}};
    for (Eigen::Index i = 0; i < table.dimensions.rows(); ++i)
        for (Eigen::Index j = 0; j < table.dimensions.cols(); ++j) table.total += table.dimensions(i, j);
    if (!attested.all_pass())
        table.warnings.push_back("standing assumption '" + attested.first_failure() +
                                 "' not certified; the table gives dim e_j kQ e_i, not necessarily dim Hom(U_i, U_j)");
    return table;
}

TangentPresentation happel_presentation(const Quiver& q) {
    q.require_acyclic();
    TangentPresentation out;
    const auto n = q.vertex_count();
    for (VertexIndex i = 0; i < n; ++i) out.column_labels.push_back({PathBasisLabel::Kind::Vertex, i, Path{i, {}}});
    out.phi = IntMatrix::Ones(static_cast<Eigen::Index>(n), 1);

    for (ArrowIndex a = 0; a < q.arrow_count(); ++a) {
        const auto& ar = q.arrow(a);
        for (auto& p : enumerate_paths(q, ar.source, ar.target))
            out.row_labels.push_back({PathBasisLabel::Kind::Arrow, a, std::move(p)});
    }
    out.psi = IntMatrix::Zero(static_cast<Eigen::Index>(out.row_labels.size()), static_cast<Eigen::Index>(n));
    for (std::size_t r = 0; r < out.row_labels.size(); ++r) {
        const auto& label = out.row_labels[r];
        if (label.path.arrows.size() != 1 || label.path.arrows.front() != label.summand) continue;
        // z_{t(a)} a - a z_{s(a)} lands on the basis path a of summand a.
        const auto& ar = q.arrow(label.summand);
        out.psi(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(ar.target)) += 1;
        out.psi(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(ar.source)) -= 1;
    }
    return out;
}

TangentPresentation tangent_presentation(const Quiver& q, const DimensionVector& d, const StabilityParameter& theta) {
    require_same_vertex_set(q, d);
    require_same_vertex_set(q, theta);
    q.require_acyclic();
    if (q.connected_components() != 1) throw Error(ErrorKind::DisconnectedQuiver, "the quiver is not connected");
    for (std::size_t i = 0; i < d.size(); ++i)
        if (d[i] < 1)
            throw Error(ErrorKind::UnsupportedDimensionVector,
                        "vertex '" + q.name(i) + "' has dimension 0; full support is required");
    return happel_presentation(q);
}

namespace {
std::int64_t cokernel_dimension(const TangentPresentation& t) {
    return static_cast<std::int64_t>(t.psi.rows()) - static_cast<std::int64_t>(rank(lift(t.psi, RationalField{})));
}
}  // namespace

VectorFieldsResult vector_fields_dim(const Quiver& q, const DimensionVector& d, const StabilityParameter& theta,
                                     bool override_assumptions) {
    const auto presentation = tangent_presentation(q, d, theta);
    const auto report = assumptions_report(q, d, theta);
    VectorFieldsResult out;
    if (!report.all_pass()) {
        const auto failure = report.first_failure();
        if (!override_assumptions)
            throw Error(ErrorKind::AssumptionViolated,
                        "standing assumption '" + failure + "' fails; vector field dimension refused");
        out.reliable = false;
        out.warnings.push_back("UNRELIABLE: standing assumption '" + failure +
                               "' fails; the value is the formula, not necessarily dim H^0(X, T_X)");
    }
    out.dimension = cokernel_dimension(presentation);
    return out;
}

std::int64_t hochschild1_dim(const Quiver& q) { return cokernel_dimension(happel_presentation(q)); }

ConsistencyCheck consistency_hh1_vs_vector_fields(const Quiver& q, const DimensionVector& d,
                                                  const StabilityParameter& theta, bool override_assumptions) {
    ConsistencyCheck out;
    out.vector_fields = vector_fields_dim(q, d, theta, override_assumptions).dimension;
    out.hochschild1 = hochschild1_dim(q);
    out.passed = out.vector_fields == out.hochschild1;
    return out;
}

std::int64_t moduli_dimension(const Quiver& q, const DimensionVector& d) { return 1 - euler_form(q, d, d); }

HomExtResult hom_ext(const Quiver& q, const RationalRepresentation& m, const RationalRepresentation& n) {
    try {
        m.validate(q);
        n.validate(q);
    } catch (const Error& e) {
        throw Error(ErrorKind::QuiverMismatch, e.what());
    }
    const auto vertices = q.vertex_count();
    std::vector<Eigen::Index> col_offset(vertices + 1, 0), row_offset(q.arrow_count() + 1, 0);
    for (VertexIndex i = 0; i < vertices; ++i) col_offset[i + 1] = col_offset[i] + n.dims[i] * m.dims[i];
    for (ArrowIndex a = 0; a < q.arrow_count(); ++a)
        row_offset[a + 1] = row_offset[a] + n.dims[q.arrow(a).target] * m.dims[q.arrow(a).source];

    Matrix<Rational> map = Matrix<Rational>::Constant(row_offset.back(), col_offset.back(), Rational(0));
    // Column-major vectorisation: entry (r, c) of an R x C block sits at r + c R.
    for (ArrowIndex a = 0; a < q.arrow_count(); ++a) {
        const auto s = q.arrow(a).source, t = q.arrow(a).target;
        const Eigen::Index nt = n.dims[t], ms = m.dims[s], mt = m.dims[t], ns = n.dims[s];
        const auto& ma = m.arrow_matrices[a];
        const auto& na = n.arrow_matrices[a];
        for (Eigen::Index r = 0; r < nt; ++r)
            for (Eigen::Index c = 0; c < ms; ++c) {
                const auto row = row_offset[a] + r + c * nt;
                for (Eigen::Index k = 0; k < mt; ++k) map(row, col_offset[t] + r + k * nt) += ma(k, c);
                for (Eigen::Index k = 0; k < ns; ++k) map(row, col_offset[s] + k + c * ns) -= na(r, k);
            }
    }

    HomExtResult out;
    const RationalField field;
    const auto kernel = kernel_basis(map, field);
    const auto r = map.rows() == 0 || map.cols() == 0 ? Eigen::Index{0} : rank(map, field);
    out.hom_dim = static_cast<std::int64_t>(map.cols() - r);
    out.ext_dim = static_cast<std::int64_t>(map.rows() - r);
    for (Eigen::Index k = 0; k < kernel.cols(); ++k) {
        std::vector<Matrix<Rational>> tuple;
        for (VertexIndex i = 0; i < vertices; ++i) {
            const Eigen::Index rows = n.dims[i], cols = m.dims[i];
            Matrix<Rational> f(rows, cols);
            for (Eigen::Index rr = 0; rr < rows; ++rr)
                for (Eigen::Index cc = 0; cc < cols; ++cc) f(rr, cc) = kernel(col_offset[i] + rr + cc * rows, k);
            tuple.push_back(std::move(f));
        }
        out.hom_basis.push_back(std::move(tuple));
    }
    return out;
}

RationalRepresentation projective_representation(const Quiver& q, VertexIndex i) {
    q.require_acyclic();
    if (i >= q.vertex_count()) throw Error(ErrorKind::UnknownVertex, "vertex index out of range");
    const RationalField field;
    std::vector<std::vector<Path>> basis(q.vertex_count());
    IntVector dims(static_cast<Eigen::Index>(q.vertex_count()));
    for (VertexIndex j = 0; j < q.vertex_count(); ++j) {
        basis[j] = enumerate_paths(q, i, j);
        dims(static_cast<Eigen::Index>(j)) = static_cast<std::int64_t>(basis[j].size());
    }
    RationalRepresentation rep{field, DimensionVector(std::move(dims)), {}};
    for (ArrowIndex a = 0; a < q.arrow_count(); ++a) {
        const auto s = q.arrow(a).source, t = q.arrow(a).target;
        auto m = zero_matrix(static_cast<Eigen::Index>(basis[t].size()), static_cast<Eigen::Index>(basis[s].size()), field);
        for (std::size_t c = 0; c < basis[s].size(); ++c) {
            Path image = basis[s][c];
            image.arrows.push_back(a);
            const auto it = std::find(basis[t].begin(), basis[t].end(), image);
            m(static_cast<Eigen::Index>(it - basis[t].begin()), static_cast<Eigen::Index>(c)) = Rational(1);
        }
        rep.arrow_matrices.push_back(std::move(m));
    }
    return rep;
}

RationalRepresentation simple_representation(const Quiver& q, VertexIndex i) {
    IntVector dims = IntVector::Zero(static_cast<Eigen::Index>(q.vertex_count()));
    dims(static_cast<Eigen::Index>(i)) = 1;
    return zero_representation(q, DimensionVector(std::move(dims)), RationalField{});
}

}  // namespace quiverkit
