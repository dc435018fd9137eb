#include "quiverkit/cli.hpp"

#include "quiverkit/cohomology.hpp"
#include "quiverkit/ff_oracle.hpp"
#include "quiverkit/framing.hpp"
#include "quiverkit/stability.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <ostream>

namespace quiverkit::cli {

namespace {

using nlohmann::json;

constexpr std::uint64_t kWeightLawTrials = 100;
constexpr std::size_t kMaxListedFailures = 20;

json to_json_vector(const IntVector& v) {
    json out = json::array();
    for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(v(k));
    return out;
}

json to_json_integer(const Integer& x) {
    if (abs(x) <= Integer(INT64_MAX)) return to_int64(x);
    return x.str();
}

json quiver_json(const Quiver& q) {
    json arrows = json::array();
    for (const auto& a : q.arrows()) arrows.push_back({{"from", q.name(a.source)}, {"to", q.name(a.target)}});
    return {{"vertices", q.vertex_names()}, {"arrows", arrows}};
}

json path_json(const Quiver& q, const Path& p) {
    json arrows = json::array();
    for (auto a : p.arrows) arrows.push_back(q.name(q.arrow(a).source) + "->" + q.name(q.arrow(a).target));
    return {{"start", q.name(p.source)}, {"arrows", arrows}};
}

json base_report(const std::string& command, const QuiverSpec& spec) {
    return {{"schema_version", kSchemaVersion},
            {"command", command},
            {"input", to_json(spec)},
            {"warnings", json::array()},
            {"verifications", json::array()}};
}

// Hypotheses that statements about the moduli space rest on but which are
// never computed here.
json hypotheses_json(const AssumptionsReport* report) {
    json verified = json::array(), assumed = json::array();
    assumed.push_back("vanishing of higher cohomology of U_i^v (x) U_j on the moduli space (never computed)");
    if (report) {
        if (report->acyclic) verified.push_back("acyclic");
        if (report->indivisible) verified.push_back("indivisible");
        if (report->coprime) verified.push_back("theta_coprime");
        if (report->strongly_amply_stable) verified.push_back("strongly_amply_stable");
        if (report->amply_stable == Tristate::Yes) verified.push_back("amply_stable");
        else assumed.push_back("amply_stable (not certified)");
    }
    return {{"verified", verified}, {"assumed", assumed}};
}

json assumptions_json(const Quiver& q, const AssumptionsReport& r) {
    json witnesses = json::array();
    for (const auto& w : r.failing_witnesses)
        witnesses.push_back({{"check", to_string(w.check)}, {"subdimension", to_json_vector(w.subdimension.values())}});
    json cycle = json::array();
    for (auto a : r.cycle) cycle.push_back(q.name(q.arrow(a).source) + "->" + q.name(q.arrow(a).target));
    const auto failure = r.first_failure();
    return {{"acyclic", r.acyclic},
            {"indivisible", r.indivisible},
            {"theta_coprime", r.coprime},
            {"strongly_amply_stable", r.strongly_amply_stable},
            {"amply_stable", to_string(r.amply_stable)},
            {"all_pass", r.all_pass()},
            {"first_failure", failure.empty() ? json(nullptr) : json(failure)},
            {"failing_witnesses", witnesses},
            {"cycle", cycle},
            {"notes", r.notes}};
}

std::string assumption_name(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::CyclicQuiver: return "acyclic";
    case ErrorKind::DisconnectedQuiver: return "connected";
    case ErrorKind::UnsupportedDimensionVector: return "full_support";
    case ErrorKind::Divisible: return "indivisible";
    default: return std::string(to_string(kind));
    }
}

json refusal(const std::string& violated, const std::string& reason) {
    return {{"status", "refused"}, {"violated_assumption", violated}, {"reason", reason}};
}

void finish(CommandResult& result) {
    auto& r = result.report;
    r["status"] = result.exit_code == kSuccess ? "PASS" : "FAIL";
    r["exit_code"] = result.exit_code;
}

int failure_exit_code(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::AssumptionViolated:
    case ErrorKind::CyclicQuiver:
    case ErrorKind::DisconnectedQuiver:
    case ErrorKind::Divisible:
    case ErrorKind::UnsupportedDimensionVector:
    case ErrorKind::BudgetExceeded:
    case ErrorKind::NotThinAtEndpoints: return kFailure;
    default: return kInputError;
    }
}

json error_json(const Error& e) { return {{"kind", std::string(to_string(e.kind())) }, {"message", e.what()}}; }

struct ResolvedFraming {
    VertexIndex i = 0;
    VertexIndex j = 0;
    std::int64_t scale = kDefaultFramingScale;
};

ResolvedFraming resolve_framing(const QuiverSpec& spec, const CommandOptions& options) {
    const auto& q = spec.quiver;
    std::optional<std::string> i = options.i, j = options.j;
    if (spec.framing) {
        if (!i) i = spec.framing->i;
        if (!j) j = spec.framing->j;
    }
    if (!i || !j)
        throw Error(ErrorKind::InvalidArgument, "a framing vertex pair is required (arguments I J or a framing block)");
    ResolvedFraming out;
    out.i = q.vertex(*i);
    out.j = q.vertex(*j);
    if (options.scale) out.scale = *options.scale;
    else if (spec.framing && spec.framing->scale) out.scale = *spec.framing->scale;
    else out.scale = minimal_framing_scale(q, spec.dimension, spec.stability);
    if (out.scale < 1) throw Error(ErrorKind::InvalidArgument, "the framing scale must be at least 1");
    return out;
}

json framing_json(const QuiverSpec& spec, const FramingResult& f) {
    QuiverSpec framed;
    framed.quiver = f.framed_quiver;
    framed.dimension = f.framed_dimension;
    framed.stability = f.framed_stability;
    const auto minimal = minimal_framing_scale(spec.quiver, spec.dimension, spec.stability);
    return {{"i", spec.quiver.name(f.framed_at_source)},
            {"j", spec.quiver.name(f.framed_at_target)},
            {"scale", f.framing_scale},
            {"minimal_scale", minimal},
            {"below_minimal_scale", f.framing_scale < minimal},
            {"framed_quiver", quiver_json(f.framed_quiver)},
            {"framed_dimension", to_json_vector(f.framed_dimension.values())},
            {"framed_stability", to_json_vector(f.framed_stability.values())},
            {"framed_amply_stable", framed_ample_stability(spec.dimension, f.framed_at_source, f.framed_at_target)},
            {"framed_spec", to_json(framed)}};
}

}  // namespace

CommandResult analyze(const QuiverSpec& spec, const CommandOptions& options) {
    const auto& q = spec.quiver;
    const auto& d = spec.dimension;
    CommandResult result{base_report("analyze", spec), kSuccess};
    auto& r = result.report;

    const auto report = assumptions_report(q, d, spec.stability);
    r["assumptions"] = assumptions_json(q, report);
    r["hypotheses"] = hypotheses_json(&report);

    json dims;
    dims["moduli_dim"] = moduli_dimension(q, d);
    if (!q.acyclic()) {
        const auto reason = "the quiver has an oriented cycle, so kQ is infinite-dimensional";
        dims["endomorphism_table"] = refusal("acyclic", reason);
        dims["hh1"] = refusal("acyclic", reason);
    } else {
        const auto table = endomorphism_dimensions(q, d, report);
        json rows = json::array();
        for (Eigen::Index a = 0; a < table.dimensions.rows(); ++a) {
            json row = json::array();
            for (Eigen::Index b = 0; b < table.dimensions.cols(); ++b) row.push_back(to_json_integer(table.dimensions(a, b)));
            rows.push_back(row);
        }
        dims["endomorphism_table"] = {{"status", "computed"},
                                      {"vertices", q.vertex_names()},
                                      {"entries", rows},
                                      {"total", to_json_integer(table.total)},
                                      {"warnings", table.warnings}};
        dims["hh1"] = {{"status", "computed"}, {"value", hochschild1_dim(q)}};
    }

    try {
        const auto vf = vector_fields_dim(q, d, spec.stability, options.override_assumptions);
        dims["vector_fields"] = {{"status", "computed"}, {"value", vf.dimension}, {"reliable", vf.reliable},
                                 {"warnings", vf.warnings}};
        for (const auto& w : vf.warnings) r["warnings"].push_back(w);
    } catch (const Error& e) {
        std::string violated = e.kind() == ErrorKind::AssumptionViolated ? report.first_failure() : assumption_name(e.kind());
        std::string reason = e.what();
        for (const auto& w : report.failing_witnesses)
            if (w.check == AssumptionCheck::StronglyAmplyStable && violated == "amply_stable") {
                reason += "; strong criterion fails at " + to_string(w.subdimension);
                break;
            }
        dims["vector_fields"] = refusal(violated, reason);
    }
    r["dimensions"] = dims;

    if (!report.all_pass()) {
        result.exit_code = kFailure;
        r["summary"] = "standing assumption '" + report.first_failure() + "' fails";
    } else {
        r["summary"] = "all standing assumptions hold";
    }
    finish(result);
    return result;
}

CommandResult frame(const QuiverSpec& spec, const CommandOptions& options) {
    const auto framing = resolve_framing(spec, options);
    CommandResult result{base_report("frame", spec), kSuccess};
    auto& r = result.report;
    r["hypotheses"] = hypotheses_json(nullptr);

    const auto f = double_frame(spec.quiver, spec.dimension, spec.stability, framing.i, framing.j, framing.scale);
    r["framing"] = framing_json(spec, f);
    if (f.framing_scale < r["framing"]["minimal_scale"].get<std::int64_t>())
        r["warnings"].push_back("framing scale " + std::to_string(f.framing_scale) + " is below the minimal scale");

    const auto check = verify_lemma_new_b(f, b_sets(spec.quiver, spec.dimension, spec.stability));
    json discrepancies = json::array();
    for (const auto& x : check.discrepancies)
        discrepancies.push_back({{"subdimension", to_json_vector(x.framed_subdimension.values())},
                                 {"actual", to_string(x.actual)},
                                 {"predicted", to_string(x.predicted)}});
    r["verifications"].push_back({{"name", "framed_b_sets"},
                                  {"passed", check.passed},
                                  {"checked", check.checked},
                                  {"discrepancies", discrepancies}});
    // The construction and the B-set comparison are purely combinatorial, so
    // they are still reported for a cyclic quiver; the run counts as failed.
    const auto acyclicity = is_acyclic(spec.quiver);
    if (!acyclicity.acyclic) {
        r["warnings"].push_back("the quiver has an oriented cycle, so the standing assumptions fail");
        result.exit_code = kFailure;
    }
    if (!check.passed) {
        result.exit_code = kFailure;
        r["summary"] = "framed B-sets differ from the prediction at " + std::to_string(check.discrepancies.size()) +
                       " of " + std::to_string(check.checked) + " subdimension vectors";
    } else {
        r["summary"] = "framed B-sets match the prediction at all " + std::to_string(check.checked) +
                       " subdimension vectors";
    }
    finish(result);
    return result;
}

CommandResult reduce(const QuiverSpec& spec, const CommandOptions& options) {
    const auto framing = resolve_framing(spec, options);
    CommandResult result{base_report("reduce", spec), kSuccess};
    auto& r = result.report;
    const auto report = assumptions_report(spec.quiver, spec.dimension, spec.stability);
    r["assumptions"] = assumptions_json(spec.quiver, report);
    r["hypotheses"] = hypotheses_json(&report);

    const auto f = double_frame(spec.quiver, spec.dimension, spec.stability, framing.i, framing.j, framing.scale);
    r["framing"] = framing_json(spec, f);
    try {
        const auto red = quiverkit::reduce(f, spec.dimension);
        const auto& rq = red.reduced_quiver;
        r["reduction"] = {{"case", to_string(red.case_tag)},
                          {"reduced_quiver", quiver_json(rq)},
                          {"reduced_dimension", to_json_vector(red.reduced_dimension.values())},
                          {"reduced_stability", to_json_vector(red.reduced_stability.values())},
                          {"marked_source", rq.name(red.marked_source)},
                          {"marked_target", rq.name(red.marked_target)},
                          {"source_connector", path_json(f.framed_quiver, red.source_connector)},
                          {"sink_connector", path_json(f.framed_quiver, red.sink_connector)},
                          {"base_path_count", to_json_integer(red.base_path_count)}};
        for (const auto& w : red.warnings) r["warnings"].push_back(w);

        const auto check = verify_reduction_pairing(red);
        r["verifications"].push_back({{"name", "reduction_pairing"},
                                      {"passed", check.passed},
                                      {"pairing_zero", check.pairing_zero},
                                      {"thin_marks", check.thin_marks},
                                      {"path_counts_match", check.path_counts_match},
                                      {"reduced_path_count", to_json_integer(check.reduced_path_count)}});
        bool passed = check.passed;
        try {
            const auto bij = verify_path_bijection(red, f);
            r["verifications"].push_back({{"name", "path_bijection"},
                                          {"passed", bij.bijective},
                                          {"domain_size", bij.domain_size},
                                          {"codomain_size", bij.codomain_size}});
            passed = passed && bij.bijective;
        } catch (const Error& e) {
            r["warnings"].push_back(std::string("path bijection not enumerated: ") + e.what());
        }
        if (!passed) result.exit_code = kFailure;
        r["summary"] = "case " + to_string(red.case_tag) + (passed ? ", reduction checks pass" : ", reduction checks FAIL");
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::AssumptionViolated) throw;
        result.exit_code = kFailure;
        r["error"] = error_json(e);
        r["summary"] = std::string("reduction refused: ") + e.what();
    }
    finish(result);
    return result;
}

CommandResult verify(const QuiverSpec& spec, const CommandOptions& options) {
    const auto framing = resolve_framing(spec, options);
    OracleOptions oracle;
    if (spec.oracle) {
        if (spec.oracle->prime) oracle.prime = *spec.oracle->prime;
        if (spec.oracle->budget) oracle.budget = *spec.oracle->budget;
        if (spec.oracle->seed) oracle.seed = *spec.oracle->seed;
    }
    if (options.prime) oracle.prime = *options.prime;
    if (options.budget) oracle.budget = *options.budget;
    if (options.seed) oracle.seed = *options.seed;
    const PrimeField field(oracle.prime);  // input validation

    CommandResult result{base_report("verify", spec), kSuccess};
    auto& r = result.report;
    const auto report = assumptions_report(spec.quiver, spec.dimension, spec.stability);
    r["assumptions"] = assumptions_json(spec.quiver, report);
    r["hypotheses"] = hypotheses_json(&report);
    const auto f = double_frame(spec.quiver, spec.dimension, spec.stability, framing.i, framing.j, framing.scale);
    r["framing"] = framing_json(spec, f);

    try {
        const auto eq = verify_double_framing_equivalence(spec.quiver, spec.dimension, spec.stability, framing.i,
                                                          framing.j, framing.scale, oracle);
        json failures = json::array();
        for (std::size_t k = 0; k < eq.failures.size() && k < kMaxListedFailures; ++k) {
            const auto& x = eq.failures[k];
            failures.push_back({{"point", x.point},
                                {"expected_stable", x.expected},
                                {"semistable", x.semistable},
                                {"stable", x.stable}});
        }
        r["oracle"] = {{"prime", eq.prime},
                       {"budget", oracle.budget},
                       {"seed", eq.seed},
                       {"exhaustive", eq.exhaustive},
                       {"total_points", to_json_integer(eq.total_points)},
                       {"points_checked", eq.instances_checked},
                       {"failure_count", eq.failures.size()}};
        for (const auto& w : eq.warnings) r["warnings"].push_back(w);
        r["verifications"].push_back({{"name", "double_framing_equivalence"},
                                      {"passed", eq.passed()},
                                      {"checked", eq.instances_checked},
                                      {"failures", failures}});

        const auto weight = verify_weight_law_on_framing(f, oracle.prime, kWeightLawTrials, oracle.seed);
        r["verifications"].push_back({{"name", "semiinvariant_weight_law"},
                                      {"passed", weight.passed()},
                                      {"trials", weight.trials},
                                      {"failure_count", weight.failures}});

        std::string summary = std::to_string(eq.instances_checked) + "/" +
                              (eq.exhaustive ? eq.total_points.str() : std::to_string(eq.instances_checked)) +
                              (eq.exhaustive ? " points" : " sampled points") + " verified, " +
                              std::to_string(eq.failures.size()) + " failures (over F_" + std::to_string(eq.prime) + ")";
        r["summary"] = summary;
        if (!eq.passed() || !weight.passed()) result.exit_code = kFailure;
    } catch (const Error& e) {
        if (failure_exit_code(e.kind()) != kFailure) throw;
        result.exit_code = kFailure;
        r["error"] = error_json(e);
        r["summary"] = std::string("verification not run: ") + e.what();
    }
    finish(result);
    return result;
}

namespace {

bool is_scalar(const json& v) { return !v.is_object() && !v.is_array(); }

std::string scalar_text(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_null()) return "none";
    return v.dump();
}

std::string inline_array(const json& v) {
    if (v.empty()) return "none";
    std::string s = "(";
    for (std::size_t k = 0; k < v.size(); ++k) s += (k ? ", " : "") + scalar_text(v[k]);
    return s + ")";
}

// Objects whose members are scalars or scalar arrays fit on one line.
bool is_flat(const json& v) {
    if (!v.is_object() || v.size() > 4) return false;
    return std::all_of(v.begin(), v.end(), [](const json& m) {
        return is_scalar(m) || (m.is_array() && std::all_of(m.begin(), m.end(), is_scalar));
    });
}

std::string inline_object(const json& v) {
    std::string s;
    for (auto it = v.begin(); it != v.end(); ++it) {
        if (!s.empty()) s += ", ";
        s += it.key() + ": " + (is_scalar(it.value()) ? scalar_text(it.value()) : inline_array(it.value()));
    }
    return s;
}

void render_value(const json& v, std::ostream& out, int indent);

void render_member(const std::string& key, const json& v, std::ostream& out, int indent) {
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    if (is_scalar(v)) {
        out << pad << key << ": " << scalar_text(v) << '\n';
    } else if (v.is_array() && std::all_of(v.begin(), v.end(), is_scalar)) {
        out << pad << key << ": " << inline_array(v) << '\n';
    } else if (v.empty()) {
        out << pad << key << ": none\n";
    } else {
        out << pad << key << ":\n";
        render_value(v, out, indent + 2);
    }
}

void render_value(const json& v, std::ostream& out, int indent) {
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    if (v.is_object()) {
        for (auto it = v.begin(); it != v.end(); ++it) render_member(it.key(), it.value(), out, indent);
    } else if (v.is_array()) {
        for (const auto& item : v) {
            if (is_scalar(item)) out << pad << "- " << scalar_text(item) << '\n';
            else if (item.is_array() && std::all_of(item.begin(), item.end(), is_scalar))
                out << pad << "- " << inline_array(item) << '\n';
            else if (is_flat(item))
                out << pad << "- " << inline_object(item) << '\n';
            else {
                out << pad << "-\n";
                render_value(item, out, indent + 2);
            }
        }
    } else {
        out << pad << scalar_text(v) << '\n';
    }
}

}  // namespace

void render_text(const json& report, std::ostream& out) {
    out << "quiverkit " << report.value("command", std::string("?")) << ": " << report.value("status", std::string("?"))
        << '\n';
    if (report.contains("summary")) out << report["summary"].get<std::string>() << '\n';
    for (const auto& w : report.value("warnings", json::array())) out << "warning: " << w.get<std::string>() << '\n';
    static const char* const order[] = {"error", "assumptions", "hypotheses", "dimensions", "framing",
                                        "reduction", "oracle", "verifications"};
    for (const char* key : order)
        if (report.contains(key)) render_member(key, report[key], out, 0);
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Stability, framing and dimension computations for quiver moduli"};
    app.name("quiverkit");
    app.require_subcommand(1);

    CommandOptions options;
    std::string spec_path, out_path;
    bool as_json = false;
    std::optional<std::string> i, j;

    app.add_flag("--json", as_json, "Print the machine-readable report");
    app.add_option("--out", out_path, "Also write the machine-readable report to FILE");
    app.add_option("--scale", options.scale, "Framing scale N");
    app.add_option("--prime", options.prime, "Prime p of the finite-field oracle");
    app.add_option("--budget", options.budget, "Point and subspace budget of the oracle");
    app.add_option("--seed", options.seed, "Seed for sampling and random trials");
    app.add_flag("--override-assumptions", options.override_assumptions,
                 "Report the vector field dimension even if assumptions fail (flagged unreliable)");

    struct Entry {
        const char* name;
        const char* help;
        CommandResult (*run)(const QuiverSpec&, const CommandOptions&);
        bool takes_pair;
    };
    const Entry entries[] = {
        {"analyze", "Standing assumptions and dimension formulas", &analyze, false},
        {"frame", "Double framing at (I, J) and the framed B-set check", &frame, true},
        {"reduce", "Reduction to thin marked vertices", &reduce, true},
        {"verify", "Finite-field check of the framed stability characterization", &verify, true},
    };
    std::vector<CLI::App*> subs;
    for (const auto& e : entries) {
        auto* sub = app.add_subcommand(e.name, e.help);
        sub->fallthrough();
        sub->add_option("spec", spec_path, "Quiver specification file (JSON)")->required();
        if (e.takes_pair) {
            sub->add_option("i", i, "Framing source vertex");
            sub->add_option("j", j, "Framing target vertex");
        }
        subs.push_back(sub);
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kInputError;
    }
    options.i = i;
    options.j = j;

    std::size_t which = 0;
    while (!subs[which]->parsed()) ++which;
    const auto& entry = entries[which];

    auto emit = [&](const json& report) {
        if (!out_path.empty()) {
            std::ofstream file(out_path);
            if (!file) {
                err << "error: cannot write " << out_path << '\n';
                return false;
            }
            file << report.dump(2) << '\n';
        }
        if (as_json) out << report.dump(2) << '\n';
        else render_text(report, out);
        return true;
    };

    auto input_error = [&](const Error& e) {
        err << "error: " << e.what() << '\n';
        json report = {{"schema_version", kSchemaVersion}, {"command", entry.name}, {"status", "FAIL"},
                       {"exit_code", static_cast<int>(kInputError)}, {"error", error_json(e)},
                       {"warnings", json::array()}, {"verifications", json::array()}};
        if (!out_path.empty()) {
            std::ofstream file(out_path);
            file << report.dump(2) << '\n';
        }
        if (as_json) out << report.dump(2) << '\n';
        return static_cast<int>(kInputError);
    };

    QuiverSpec spec;
    try {
        spec = load_spec(spec_path);
    } catch (const Error& e) {
        return input_error(e);
    }

    try {
        auto result = entry.run(spec, options);
        if (!emit(result.report)) return kInputError;
        return result.exit_code;
    } catch (const Error& e) {
        if (failure_exit_code(e.kind()) == kFailure) {
            json report = base_report(entry.name, spec);
            report["error"] = error_json(e);
            report["summary"] = e.what();
            CommandResult result{report, kFailure};
            finish(result);
            if (!emit(result.report)) return kInputError;
            return kFailure;
        }
        return input_error(e);
    }
}

}  // namespace quiverkit::cli
