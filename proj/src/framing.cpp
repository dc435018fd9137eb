#include "quiverkit/framing.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace quiverkit {

namespace {

std::string fresh_name(const Quiver& q, std::string base) {
    while (q.find_vertex(base)) base += "'";
    return base;
}

BSetKind kind_of(std::int64_t value) {
    return value > 0 ? BSetKind::Plus : value < 0 ? BSetKind::Minus : BSetKind::Zero;
}

// (a, e, b) as a dimension vector of the framed quiver.
DimensionVector framed_vector(std::int64_t a, const DimensionVector& e, std::int64_t b) {
    IntVector v(static_cast<Eigen::Index>(e.size() + 2));
    v(0) = a;
    v.segment(1, static_cast<Eigen::Index>(e.size())) = e.values();
    v(v.size() - 1) = b;
    return DimensionVector(std::move(v));
}

DimensionVector middle_block(const DimensionVector& framed) {
    const auto n = static_cast<Eigen::Index>(framed.size()) - 2;
    return DimensionVector(IntVector(framed.values().segment(1, n)));
}

Quiver base_quiver_of(const FramingResult& f) {
    std::vector<VertexIndex> middle;
    for (VertexIndex k = 1; k + 1 < f.framed_quiver.vertex_count(); ++k) middle.push_back(k);
    return f.framed_quiver.full_subquiver(middle);
}

StabilityParameter base_stability_of(const FramingResult& f) {
    const auto n = static_cast<Eigen::Index>(f.framed_quiver.vertex_count()) - 2;
    IntVector theta = f.framed_stability.values().segment(1, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        if (theta(k) % f.framing_scale != 0)
            throw Error(ErrorKind::InvalidArgument, "framed stability is not a multiple of the framing scale");
        theta(k) /= f.framing_scale;
    }
    return StabilityParameter(std::move(theta));
}

}  // namespace

FramingResult double_frame(const Quiver& q, const DimensionVector& d, const StabilityParameter& theta, VertexIndex i,
                           VertexIndex j, std::int64_t scale) {
    require_same_vertex_set(q, d);
    require_same_vertex_set(q, theta);
    require_zero_pairing(theta, d);
    if (i >= q.vertex_count() || j >= q.vertex_count())
        throw Error(ErrorKind::UnknownVertex, "framing vertex out of range");
    if (scale < 1) throw Error(ErrorKind::InvalidArgument, "framing scale must be positive");

    const auto n = q.vertex_count();
    std::vector<std::string> names;
    names.push_back(fresh_name(q, "0"));
    for (const auto& name : q.vertex_names()) names.push_back(name);
    names.push_back(fresh_name(q, "∞"));
    if (names.front() == names.back()) names.back() += "'";

    std::vector<Arrow> arrows;
    for (const auto& a : q.arrows()) arrows.push_back({FramingResult::lift(a.source), FramingResult::lift(a.target)});
    arrows.push_back({0, FramingResult::lift(i)});
    arrows.push_back({FramingResult::lift(j), n + 1});

    IntVector stab(static_cast<Eigen::Index>(n + 2));
    stab(0) = 1;
    stab.segment(1, static_cast<Eigen::Index>(n)) = theta.scaled(scale).values();
    stab(static_cast<Eigen::Index>(n + 1)) = -1;

    FramingResult f{Quiver(std::move(names), std::move(arrows)), framed_vector(1, d, 1),
                    StabilityParameter(std::move(stab)), scale, i, j};
    return f;
}

std::int64_t minimal_framing_scale(const Quiver& q, const DimensionVector& d, const StabilityParameter& theta) {
    require_same_vertex_set(q, d);
    require_same_vertex_set(q, theta);
    require_zero_pairing(theta, d);
    auto works = [&](std::int64_t scale) {
        bool ok = true;
        for_each_subvector(d, [&](const DimensionVector& e) {
            const auto value = theta(e);
            if (value == 0) return true;
            for (std::int64_t a : {0, 1})
                for (std::int64_t b : {0, 1})
                    if (kind_of(a + checked_mul(scale, value) - b) != kind_of(value)) ok = false;
            return ok;
        });
        return ok;
    };
    // |a - b| <= 1 and |theta(e)| >= 1, so N = 2 always works; N = 1 fails as
    // soon as some theta(e) = +-1, and vacuously works when theta vanishes on
    // all subvectors. The convention is to return 2 in every case.
    if (!works(kDefaultFramingScale))
        throw Error(ErrorKind::InvalidArgument, "framing scale 2 does not separate the B-sets");
    return kDefaultFramingScale;
}

std::string to_string(BSetKind k) {
    switch (k) {
    case BSetKind::Plus: return "B+";
    case BSetKind::Minus: return "B-";
    case BSetKind::Zero: return "B0";
    }
    return "?";
}

FramedBSetCheck verify_lemma_new_b(const FramingResult& f, const BSets& base_bsets) {
    // Predicted membership of (a, e, b), keyed by the framed vector.
    std::map<std::vector<std::int64_t>, BSetKind> predicted;
    auto key = [](const DimensionVector& v) { return std::vector<std::int64_t>(v.values().begin(), v.values().end()); };
    for (const auto& e : base_bsets.zero) {
        predicted[key(framed_vector(1, e, 0))] = BSetKind::Plus;
        predicted[key(framed_vector(0, e, 1))] = BSetKind::Minus;
        predicted[key(framed_vector(0, e, 0))] = BSetKind::Zero;
        predicted[key(framed_vector(1, e, 1))] = BSetKind::Zero;
    }
    for (const auto& [set, kind] : {std::pair{&base_bsets.plus, BSetKind::Plus}, std::pair{&base_bsets.minus, BSetKind::Minus}})
        for (const auto& e : *set)
            for (std::int64_t a : {0, 1})
                for (std::int64_t b : {0, 1}) predicted[key(framed_vector(a, e, b))] = kind;

    FramedBSetCheck out;
    for_each_subvector(f.framed_dimension, [&](const DimensionVector& v) {
        ++out.checked;
        const auto actual = kind_of(f.framed_stability(v));
        auto it = predicted.find(key(v));
        if (it == predicted.end()) {
            // Not covered by the base B-sets at all: they do not partition d.
            out.passed = false;
            out.discrepancies.push_back({v, actual, actual == BSetKind::Zero ? BSetKind::Plus : BSetKind::Zero});
        } else if (it->second != actual) {
            out.passed = false;
            out.discrepancies.push_back({v, actual, it->second});
        }
        return true;
    });
    if (predicted.size() != out.checked) out.passed = false;
    return out;
}

bool framed_ample_stability(const DimensionVector& d, VertexIndex i, VertexIndex j) {
    if (i >= d.size() || j >= d.size()) throw Error(ErrorKind::UnknownVertex, "framing vertex out of range");
    return d[i] > 1 && d[j] > 1;
}

std::string to_string(ReductionCase c) {
    switch (c) {
    case ReductionCase::BothBig: return "both_big";
    case ReductionCase::SourceThin: return "source_thin";
    case ReductionCase::TargetThin: return "target_thin";
    case ReductionCase::BothThin: return "both_thin";
    }
    return "?";
}

ReductionResult reduce(const FramingResult& f, const DimensionVector& d) {
    const Quiver q = base_quiver_of(f);
    const StabilityParameter theta = base_stability_of(f);
    require_same_vertex_set(q, d);
    if (middle_block(f.framed_dimension) != d)
        throw Error(ErrorKind::InvalidArgument, "dimension vector differs from the one used for framing");

    const auto report = assumptions_report(q, d, theta);
    if (!report.structural_pass()) {
        std::string detail = "standing assumption '" + report.first_failure() + "' fails";
        for (const auto& w : report.failing_witnesses)
            if (to_string(w.check) == report.first_failure()) {
                detail += " (witness " + to_string(w.subdimension) + ")";
                break;
            }
        throw Error(ErrorKind::AssumptionViolated, detail);
    }

    const auto i = f.framed_at_source, j = f.framed_at_target;
    const auto n = q.vertex_count();
    const auto N = f.framing_scale;
    const auto size = d.total();
    const auto factor = checked_mul(checked_add(size, 1), N);

    ReductionResult r;
    if (report.amply_stable != Tristate::Yes)
        r.warnings.push_back("ample stability of the base datum is not certified (strong criterion fails)");
    r.base_path_count = path_count_matrix(q)(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));

    const bool source_big = d[i] > 1, sink_big = d[j] > 1;
    const VertexIndex zero = f.source_vertex(), infinity = f.sink_vertex();
    IntVector stab;
    if (source_big && sink_big) {
        r.case_tag = ReductionCase::BothBig;
        for (VertexIndex v = 0; v < n + 2; ++v) r.vertex_origin.push_back(v);
        r.marked_source = zero;
        r.marked_target = infinity;
        r.source_connector = Path{zero, {}};
        r.sink_connector = Path{infinity, {}};
        stab = f.framed_stability.values();
    } else if (source_big) {
        r.case_tag = ReductionCase::SourceThin;
        for (VertexIndex v = 0; v < n + 1; ++v) r.vertex_origin.push_back(v);
        r.marked_source = 0;
        r.marked_target = FramingResult::lift(j);
        r.source_connector = Path{zero, {}};
        r.sink_connector = Path{FramingResult::lift(j), {f.sink_arrow()}};
        stab.resize(static_cast<Eigen::Index>(n + 1));
        stab(0) = size;
        for (VertexIndex k = 0; k < n; ++k)
            stab(static_cast<Eigen::Index>(k + 1)) = checked_sub(checked_mul(factor, theta[k]), 1);
    } else if (sink_big) {
        r.case_tag = ReductionCase::TargetThin;
        for (VertexIndex v = 1; v < n + 2; ++v) r.vertex_origin.push_back(v);
        r.marked_source = i;
        r.marked_target = n;
        r.source_connector = Path{zero, {f.source_arrow()}};
        r.sink_connector = Path{infinity, {}};
        stab.resize(static_cast<Eigen::Index>(n + 1));
        for (VertexIndex k = 0; k < n; ++k)
            stab(static_cast<Eigen::Index>(k)) = checked_add(checked_mul(factor, theta[k]), 1);
        stab(static_cast<Eigen::Index>(n)) = -size;
    } else {
        r.case_tag = ReductionCase::BothThin;
        for (VertexIndex v = 1; v < n + 1; ++v) r.vertex_origin.push_back(v);
        r.marked_source = i;
        r.marked_target = j;
        r.source_connector = Path{zero, {f.source_arrow()}};
        r.sink_connector = Path{FramingResult::lift(j), {f.sink_arrow()}};
        stab = theta.values();
    }

    r.reduced_quiver = f.framed_quiver.full_subquiver(r.vertex_origin, &r.arrow_origin);
    IntVector dims(static_cast<Eigen::Index>(r.vertex_origin.size()));
    for (std::size_t k = 0; k < r.vertex_origin.size(); ++k)
        dims(static_cast<Eigen::Index>(k)) = f.framed_dimension[r.vertex_origin[k]];
    r.reduced_dimension = DimensionVector(std::move(dims));
    r.reduced_stability = StabilityParameter(std::move(stab));
    return r;
}

ReductionCheck verify_reduction_pairing(const ReductionResult& r) {
    ReductionCheck out;
    out.pairing_zero = r.reduced_stability(r.reduced_dimension) == 0;
    out.thin_marks = r.reduced_dimension[r.marked_source] == 1 && r.reduced_dimension[r.marked_target] == 1;
    out.reduced_path_count = path_count_matrix(r.reduced_quiver)(static_cast<Eigen::Index>(r.marked_source),
                                                                 static_cast<Eigen::Index>(r.marked_target));
    out.path_counts_match = out.reduced_path_count == r.base_path_count;
    out.passed = out.pairing_zero && out.thin_marks && out.path_counts_match;
    return out;
}

PathBijectionCheck verify_path_bijection(const ReductionResult& r, const FramingResult& f, std::size_t limit) {
    PathBijectionCheck out;
    const auto domain = enumerate_paths(r.reduced_quiver, r.marked_source, r.marked_target, limit);
    const auto codomain = enumerate_paths(f.framed_quiver, f.source_vertex(), f.sink_vertex(), limit);
    out.domain_size = domain.size();
    out.codomain_size = codomain.size();

    std::set<Path> images;
    for (const auto& p : domain) {
        Path lifted{r.vertex_origin[p.source], {}};
        for (auto a : p.arrows) lifted.arrows.push_back(r.arrow_origin[a]);
        const auto full = concatenate(concatenate(r.source_connector, lifted, f.framed_quiver), r.sink_connector,
                                      f.framed_quiver);
        images.insert(full);
    }
    const std::set<Path> targets(codomain.begin(), codomain.end());
    out.bijective = images.size() == domain.size() && images == targets;
    return out;
}

}  // namespace quiverkit
