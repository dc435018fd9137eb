#include "quiverkit/ff_oracle.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>

namespace quiverkit {

bool Subspace::contains(const Vector<std::int64_t>& v, const PrimeField& field) const {
    Vector<std::int64_t> w = v;
    for (Eigen::Index r = 0; r < basis.rows(); ++r) {
        const auto c = w(pivots[static_cast<std::size_t>(r)]);
        if (c == 0) continue;
        for (Eigen::Index k = 0; k < w.size(); ++k) w(k) = field.sub(w(k), field.mul(c, basis(r, k)));
    }
    for (Eigen::Index k = 0; k < w.size(); ++k)
        if (w(k) != 0) return false;
    return true;
}

Subspace span_of_rows(const Matrix<std::int64_t>& generators, const PrimeField& field) {
    Subspace out;
    if (generators.rows() == 0) {
        out.basis.resize(0, generators.cols());
        return out;
    }
    auto ech = row_echelon(generators, field);
    out.basis = ech.reduced.topRows(ech.rank());
    out.pivots = std::move(ech.pivot_columns);
    return out;
}

std::vector<Subspace> enumerate_subspaces(Eigen::Index n, const PrimeField& field) {
    std::vector<Subspace> out;
    const auto p = field.prime();
    for (Eigen::Index k = 0; k <= n; ++k) {
        // pivot sets as increasing k-tuples in lexicographic order
        std::vector<Eigen::Index> pivots(static_cast<std::size_t>(k));
        for (Eigen::Index r = 0; r < k; ++r) pivots[static_cast<std::size_t>(r)] = r;
        while (true) {
            std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
            for (auto c : pivots) is_pivot[static_cast<std::size_t>(c)] = true;
            std::vector<std::pair<Eigen::Index, Eigen::Index>> free;
            for (Eigen::Index r = 0; r < k; ++r)
                for (Eigen::Index c = pivots[static_cast<std::size_t>(r)] + 1; c < n; ++c)
                    if (!is_pivot[static_cast<std::size_t>(c)]) free.emplace_back(r, c);

            std::vector<std::int64_t> digits(free.size(), 0);
            while (true) {
                Subspace s;
                s.basis = Matrix<std::int64_t>::Zero(k, n);
                s.pivots = pivots;
                for (Eigen::Index r = 0; r < k; ++r) s.basis(r, pivots[static_cast<std::size_t>(r)]) = 1;
                for (std::size_t f = 0; f < free.size(); ++f) s.basis(free[f].first, free[f].second) = digits[f];
                out.push_back(std::move(s));
                std::size_t pos = free.size();
                while (pos > 0 && digits[pos - 1] == p - 1) digits[--pos] = 0;
                if (pos == 0) break;
                ++digits[pos - 1];
            }

            // next pivot combination
            Eigen::Index r = k - 1;
            while (r >= 0 && pivots[static_cast<std::size_t>(r)] == n - k + r) --r;
            if (r < 0) break;
            ++pivots[static_cast<std::size_t>(r)];
            for (Eigen::Index t = r + 1; t < k; ++t)
                pivots[static_cast<std::size_t>(t)] = pivots[static_cast<std::size_t>(t - 1)] + 1;
        }
    }
    return out;
}

Integer gaussian_binomial(std::int64_t n, std::int64_t k, std::int64_t q) {
    if (k < 0 || k > n) return Integer(0);
    // prod_{t=0}^{k-1} (q^{n-t} - 1) / (q^{t+1} - 1)
    Integer num(1), den(1);
    auto power = [&](std::int64_t e) {
        Integer r(1);
        for (std::int64_t t = 0; t < e; ++t) r *= Integer(q);
        return r;
    };
    for (std::int64_t t = 0; t < k; ++t) {
        num *= power(n - t) - Integer(1);
        den *= power(t + 1) - Integer(1);
    }
    return num / den;
}

Integer subspace_count(std::int64_t n, std::int64_t q) {
    Integer total(0);
    for (std::int64_t k = 0; k <= n; ++k) total += gaussian_binomial(n, k, q);
    return total;
}

namespace {

const std::vector<Subspace>& cached_subspaces(Eigen::Index n, const PrimeField& field) {
    thread_local std::map<std::pair<Eigen::Index, std::int64_t>, std::vector<Subspace>> cache;
    auto key = std::make_pair(n, field.prime());
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, enumerate_subspaces(n, field)).first;
    return it->second;
}

// M_a(U_s) <= U_t
bool maps_into(const Matrix<std::int64_t>& ma, const Subspace& source, const Subspace& target, const PrimeField& field) {
    for (Eigen::Index r = 0; r < source.basis.rows(); ++r) {
        Vector<std::int64_t> image(ma.rows());
        for (Eigen::Index i = 0; i < ma.rows(); ++i) {
            std::int64_t acc = 0;
            for (Eigen::Index k = 0; k < ma.cols(); ++k) acc = field.add(acc, field.mul(ma(i, k), source.basis(r, k)));
            image(i) = acc;
        }
        if (!target.contains(image, field)) return false;
    }
    return true;
}

DimensionVector dims_of(const std::vector<Subspace>& subspaces) {
    IntVector v(static_cast<Eigen::Index>(subspaces.size()));
    for (std::size_t i = 0; i < subspaces.size(); ++i) v(static_cast<Eigen::Index>(i)) = subspaces[i].dimension();
    return DimensionVector(std::move(v));
}

std::vector<std::int64_t> key_of(const Subrepresentation& s) {
    std::vector<std::int64_t> key;
    for (const auto& u : s.subspaces) {
        key.push_back(u.dimension());
        for (Eigen::Index r = 0; r < u.basis.rows(); ++r)
            for (Eigen::Index c = 0; c < u.basis.cols(); ++c) key.push_back(u.basis(r, c));
    }
    return key;
}

Integer integer_power(std::int64_t base, std::uint64_t e) {
    Integer r(1);
    for (std::uint64_t t = 0; t < e; ++t) r *= Integer(base);
    return r;
}

}  // namespace

void for_each_subrepresentation(const Quiver& q, const FiniteFieldRepresentation& rep,
                                const std::function<bool(const Subrepresentation&)>& visit, std::uint64_t budget) {
    rep.validate(q);
    const auto n = q.vertex_count();
    Integer product(1);
    for (std::size_t v = 0; v < n; ++v) product *= subspace_count(rep.dims[v], rep.field.prime());
    if (product > Integer(static_cast<unsigned long long>(budget)))
        throw Error(ErrorKind::BudgetExceeded, "subspace tuples " + product.str() + " exceed budget " +
                                                   std::to_string(budget));

    std::vector<const std::vector<Subspace>*> lists;
    for (std::size_t v = 0; v < n; ++v) lists.push_back(&cached_subspaces(rep.dims[v], rep.field));
    // arrows checked once both endpoints are chosen
    std::vector<std::vector<ArrowIndex>> ready_at(n);
    for (ArrowIndex a = 0; a < q.arrow_count(); ++a)
        ready_at[std::max(q.arrow(a).source, q.arrow(a).target)].push_back(a);

    std::vector<Subspace> chosen(n);
    bool keep_going = true;
    auto descend = [&](auto&& self, std::size_t v) -> void {
        if (v == n) {
            keep_going = visit(Subrepresentation{chosen, dims_of(chosen)});
            return;
        }
        for (const auto& u : *lists[v]) {
            chosen[v] = u;
            bool closed = true;
            for (auto a : ready_at[v]) {
                const auto& ar = q.arrow(a);
                if (!maps_into(rep.arrow_matrices[a], chosen[ar.source], chosen[ar.target], rep.field)) {
                    closed = false;
                    break;
                }
            }
            if (closed) self(self, v + 1);
            if (!keep_going) return;
        }
    };
    descend(descend, 0);
}

std::vector<Subrepresentation> enumerate_subrepresentations(const Quiver& q, const FiniteFieldRepresentation& rep,
                                                            std::uint64_t budget) {
    std::vector<Subrepresentation> out;
    for_each_subrepresentation(
        q, rep,
        [&](const Subrepresentation& s) {
            out.push_back(s);
            return true;
        },
        budget);
    return out;
}

Subrepresentation generated_subrepresentation(const Quiver& q, const FiniteFieldRepresentation& rep,
                                              const std::vector<Matrix<std::int64_t>>& generators) {
    rep.validate(q);
    const auto n = q.vertex_count();
    std::vector<std::vector<ArrowIndex>> outgoing(n);
    for (ArrowIndex a = 0; a < q.arrow_count(); ++a) outgoing[q.arrow(a).source].push_back(a);

    std::vector<Subspace> spaces;
    for (std::size_t v = 0; v < n; ++v) spaces.push_back(span_of_rows(Matrix<std::int64_t>(0, rep.dims[v]), rep.field));

    std::vector<std::pair<VertexIndex, Vector<std::int64_t>>> work;
    for (std::size_t v = 0; v < generators.size() && v < n; ++v)
        for (Eigen::Index r = 0; r < generators[v].rows(); ++r) work.emplace_back(v, generators[v].row(r).transpose());

    while (!work.empty()) {
        auto [v, w] = std::move(work.back());
        work.pop_back();
        if (spaces[v].contains(w, rep.field)) continue;
        Matrix<std::int64_t> rows(spaces[v].dimension() + 1, rep.dims[v]);
        rows.topRows(spaces[v].dimension()) = spaces[v].basis;
        rows.bottomRows(1) = w.transpose();
        spaces[v] = span_of_rows(rows, rep.field);
        for (auto a : outgoing[v]) {
            const auto& ma = rep.arrow_matrices[a];
            Vector<std::int64_t> image(ma.rows());
            for (Eigen::Index i = 0; i < ma.rows(); ++i) {
                std::int64_t acc = 0;
                for (Eigen::Index k = 0; k < ma.cols(); ++k) acc = rep.field.add(acc, rep.field.mul(ma(i, k), w(k)));
                image(i) = acc;
            }
            work.emplace_back(q.arrow(a).target, std::move(image));
        }
    }
    return Subrepresentation{spaces, dims_of(spaces)};
}

std::vector<Subrepresentation> cyclic_subrepresentations(const Quiver& q, const FiniteFieldRepresentation& rep,
                                                         std::uint64_t budget) {
    std::map<std::vector<std::int64_t>, Subrepresentation> found;
    std::uint64_t visited = 0;
    const auto p = rep.field.prime();
    for (VertexIndex v = 0; v < q.vertex_count(); ++v) {
        const auto dim = rep.dims[v];
        std::vector<std::int64_t> digits(static_cast<std::size_t>(dim), 0);
        while (true) {
            std::size_t pos = digits.size();
            while (pos > 0 && digits[pos - 1] == p - 1) digits[--pos] = 0;
            if (pos == 0) break;  // wrapped back to zero
            ++digits[pos - 1];
            if (++visited > budget) throw Error(ErrorKind::BudgetExceeded, "too many generating vectors");

            std::vector<Matrix<std::int64_t>> gens(q.vertex_count());
            for (VertexIndex u = 0; u < q.vertex_count(); ++u) gens[u].resize(0, rep.dims[u]);
            gens[v].resize(1, dim);
            for (std::int64_t k = 0; k < dim; ++k) gens[v](0, k) = digits[static_cast<std::size_t>(k)];
            auto sub = generated_subrepresentation(q, rep, gens);
            found.emplace(key_of(sub), std::move(sub));
        }
    }
    std::vector<Subrepresentation> out;
    for (auto& [key, sub] : found) out.push_back(std::move(sub));
    return out;
}

std::vector<Subrepresentation> subrepresentations_by_generation(const Quiver& q, const FiniteFieldRepresentation& rep,
                                                                std::uint64_t budget) {
    std::map<std::vector<std::int64_t>, Subrepresentation> all;
    std::vector<Matrix<std::int64_t>> empty(q.vertex_count());
    for (VertexIndex u = 0; u < q.vertex_count(); ++u) empty[u].resize(0, rep.dims[u]);
    auto zero = generated_subrepresentation(q, rep, empty);
    all.emplace(key_of(zero), zero);

    const auto cyclic = cyclic_subrepresentations(q, rep, budget);
    std::vector<Subrepresentation> frontier;
    for (const auto& c : cyclic)
        if (all.emplace(key_of(c), c).second) frontier.push_back(c);

    // Every subrepresentation is a finite sum of cyclic ones.
    while (!frontier.empty()) {
        std::vector<Subrepresentation> next;
        for (const auto& s : frontier)
            for (const auto& c : cyclic) {
                std::vector<Matrix<std::int64_t>> gens(q.vertex_count());
                for (VertexIndex u = 0; u < q.vertex_count(); ++u) {
                    gens[u].resize(s.subspaces[u].dimension() + c.subspaces[u].dimension(), rep.dims[u]);
                    gens[u].topRows(s.subspaces[u].dimension()) = s.subspaces[u].basis;
                    gens[u].bottomRows(c.subspaces[u].dimension()) = c.subspaces[u].basis;
                }
                auto sum = generated_subrepresentation(q, rep, gens);
                auto key = key_of(sum);
                if (all.emplace(key, sum).second) {
                    next.push_back(std::move(sum));
                    if (all.size() > budget) throw Error(ErrorKind::BudgetExceeded, "too many subrepresentations");
                }
            }
        frontier = std::move(next);
    }
    std::vector<Subrepresentation> out;
    for (auto& [key, sub] : all) out.push_back(std::move(sub));
    return out;
}

StabilityVerdict stability_from_subrepresentations(const std::vector<Subrepresentation>& subreps,
                                                   const DimensionVector& dims, const StabilityParameter& theta,
                                                   bool coprime) {
    StabilityVerdict verdict;
    std::optional<Subrepresentation> first_zero;
    for (const auto& s : subreps) {
        const auto value = theta(s.dims);
        if (value > 0) {
            verdict.semistable = false;
            verdict.stable = false;
            verdict.destabilizing = s;
            break;
        }
        if (value == 0 && !first_zero && !s.dims.is_zero() && s.dims != dims) first_zero = s;
    }
    if (verdict.semistable && first_zero) {
        verdict.stable = false;
        verdict.destabilizing = first_zero;
    }
    verdict.stable_is_geometric = coprime || !verdict.stable;
    return verdict;
}

StabilityVerdict king_stability(const Quiver& q, const FiniteFieldRepresentation& rep, const StabilityParameter& theta,
                                std::uint64_t budget) {
    require_same_vertex_set(q, theta);
    require_zero_pairing(theta, rep.dims);
    const bool coprime = is_theta_coprime(q, rep.dims, theta).coprime;

    StabilityVerdict verdict;
    std::optional<Subrepresentation> first_zero;
    for_each_subrepresentation(
        q, rep,
        [&](const Subrepresentation& s) {
            const auto value = theta(s.dims);
            if (value > 0) {
                verdict.semistable = false;
                verdict.stable = false;
                verdict.destabilizing = s;
                return false;
            }
            if (value == 0 && !first_zero && !s.dims.is_zero() && s.dims != rep.dims) first_zero = s;
            return true;
        },
        budget);
    if (verdict.semistable && first_zero) {
        verdict.stable = false;
        verdict.destabilizing = first_zero;
    }
    verdict.stable_is_geometric = coprime || !verdict.stable;
    return verdict;
}

namespace {

std::string describe_point(const FiniteFieldRepresentation& framed, const FramingResult& f) {
    std::ostringstream os;
    auto vec = [&](const Matrix<std::int64_t>& m) {
        os << '(';
        for (Eigen::Index k = 0; k < m.size(); ++k) os << (k ? "," : "") << m(k);
        os << ')';
    };
    os << "v=";
    vec(framed.arrow_matrices[f.source_arrow()]);
    os << " M=[";
    for (ArrowIndex a = 0; a < f.source_arrow(); ++a) {
        os << (a ? " " : "");
        const auto& m = framed.arrow_matrices[a];
        os << '[';
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            os << (r ? ";" : "");
            for (Eigen::Index c = 0; c < m.cols(); ++c) os << (c ? "," : "") << m(r, c);
        }
        os << ']';
    }
    os << "] phi=";
    vec(framed.arrow_matrices[f.sink_arrow()]);
    return os.str();
}

}  // namespace

EquivalenceReport verify_double_framing_equivalence(const Quiver& q, const DimensionVector& d,
                                                    const StabilityParameter& theta, VertexIndex i, VertexIndex j,
                                                    std::int64_t scale, const OracleOptions& options) {
    const PrimeField field(options.prime);
    const auto coprime = is_theta_coprime(q, d, theta);
    if (!coprime.coprime)
        throw Error(ErrorKind::AssumptionViolated,
                    "d is not theta-coprime (witness " + to_string(*coprime.witness) + ")");
    const auto f = double_frame(q, d, theta, i, j, scale);

    EquivalenceReport report;
    report.prime = options.prime;
    report.seed = options.seed;
    report.below_minimal_scale = scale < minimal_framing_scale(q, d, theta);
    if (report.below_minimal_scale)
        report.warnings.push_back("below minimal framing scale: the equivalence is not claimed at N = " +
                                  std::to_string(scale));

    // Subrepresentation search must fit the budget for every point.
    Integer tuples(1);
    for (std::size_t v = 0; v < f.framed_dimension.size(); ++v)
        tuples *= subspace_count(f.framed_dimension[v], options.prime);
    if (tuples > Integer(static_cast<unsigned long long>(options.budget)))
        throw Error(ErrorKind::BudgetExceeded, "subspace tuples per point " + tuples.str() + " exceed budget");

    const auto& fq = f.framed_quiver;
    std::vector<std::pair<ArrowIndex, Eigen::Index>> entry_slots;  // (arrow, flat index)
    for (ArrowIndex a = 0; a < fq.arrow_count(); ++a) {
        const auto size = f.framed_dimension[fq.arrow(a).target] * f.framed_dimension[fq.arrow(a).source];
        for (Eigen::Index k = 0; k < size; ++k) entry_slots.emplace_back(a, k);
    }
    report.total_points = integer_power(options.prime, entry_slots.size());
    report.exhaustive = report.total_points <= Integer(static_cast<unsigned long long>(options.budget));
    if (!report.exhaustive)
        report.warnings.push_back("sampled mode: " + std::to_string(options.sample_size) + " of " +
                                  report.total_points.str() + " points, seed " + std::to_string(options.seed));

    auto framed = zero_representation(fq, f.framed_dimension, field);
    auto check_point = [&] {
        FiniteFieldRepresentation base{field, d, {}};
        for (ArrowIndex a = 0; a < q.arrow_count(); ++a) base.arrow_matrices.push_back(framed.arrow_matrices[a]);
        const bool v_nonzero = !is_zero_matrix(framed.arrow_matrices[f.source_arrow()], field);
        const bool phi_nonzero = !is_zero_matrix(framed.arrow_matrices[f.sink_arrow()], field);
        const auto base_verdict = king_stability(q, base, theta, options.budget);
        const auto framed_verdict = king_stability(fq, framed, f.framed_stability, options.budget);
        const bool expected = base_verdict.stable && v_nonzero && phi_nonzero;
        ++report.instances_checked;
        if (framed_verdict.stable != expected || framed_verdict.semistable != expected)
            report.failures.push_back(
                {describe_point(framed, f), expected, framed_verdict.semistable, framed_verdict.stable});
    };
    auto set_slot = [&](std::size_t slot, std::int64_t value) {
        auto& m = framed.arrow_matrices[entry_slots[slot].first];
        m(entry_slots[slot].second) = value;
    };

    if (report.exhaustive) {
        std::vector<std::int64_t> digits(entry_slots.size(), 0);
        while (true) {
            check_point();
            std::size_t pos = digits.size();
            while (pos > 0 && digits[pos - 1] == options.prime - 1) {
                digits[--pos] = 0;
                set_slot(pos, 0);
            }
            if (pos == 0) break;
            set_slot(pos - 1, ++digits[pos - 1]);
        }
    } else {
        std::mt19937_64 rng(options.seed);
        std::uniform_int_distribution<std::int64_t> dist(0, options.prime - 1);
        for (std::uint64_t s = 0; s < options.sample_size; ++s) {
            for (std::size_t slot = 0; slot < entry_slots.size(); ++slot) set_slot(slot, dist(rng));
            check_point();
        }
    }
    return report;
}

bool verify_semiinvariant_weight(const Quiver& q, const FiniteFieldRepresentation& rep, const Path& p,
                                 const GroupElement<PrimeField>& g) {
    const auto& field = rep.field;
    const auto before = path_semiinvariant(q, rep, p);
    const auto after = path_semiinvariant(q, act(q, g, rep), p);
    const auto gt = g.components.at(p.target(q))(0, 0);
    const auto gs = g.components.at(p.source)(0, 0);
    return after == field.mul(field.mul(gt, field.inv(gs)), before);
}

WeightLawReport verify_weight_law_on_framing(const FramingResult& f, std::int64_t prime, std::uint64_t trials,
                                             std::uint64_t seed) {
    const PrimeField field(prime);
    const auto& fq = f.framed_quiver;
    const auto paths = enumerate_paths(fq, f.source_vertex(), f.sink_vertex(), 10'000);
    WeightLawReport report;
    if (paths.empty()) return report;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, paths.size() - 1);
    for (std::uint64_t t = 0; t < trials; ++t) {
        const auto rep = random_representation(fq, f.framed_dimension, field, rng);
        const auto g = random_group_element(f.framed_dimension, field, rng);
        ++report.trials;
        if (!verify_semiinvariant_weight(fq, rep, paths[pick(rng)], g)) ++report.failures;
    }
    return report;
}

}  // namespace quiverkit
