#include "quiverkit/spec_file.hpp"

#include "quiverkit/stability.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace quiverkit {

namespace {

using nlohmann::json;

class Reader {
public:
    explicit Reader(std::string source) : source_(std::move(source)) {}

    [[noreturn]] void fail(const std::string& pointer, const std::string& message) const {
        throw SpecError(source_ + ": " + (pointer.empty() ? "/" : pointer), message);
    }

    const json& member(const json& obj, const std::string& pointer, const std::string& key) const {
        auto it = obj.find(key);
        if (it == obj.end()) fail(pointer, "missing required key '" + key + "'");
        return *it;
    }

    void only_keys(const json& obj, const std::string& pointer, const std::set<std::string>& allowed) const {
        for (auto it = obj.begin(); it != obj.end(); ++it)
            if (!allowed.count(it.key())) fail(pointer + "/" + it.key(), "unknown key '" + it.key() + "'");
    }

    const json& object(const json& v, const std::string& pointer) const {
        if (!v.is_object()) fail(pointer, "expected an object");
        return v;
    }

    std::string string(const json& v, const std::string& pointer) const {
        if (!v.is_string()) fail(pointer, "expected a string");
        return v.get<std::string>();
    }

    std::int64_t integer(const json& v, const std::string& pointer) const {
        if (v.is_number_unsigned()) {
            if (v.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX)) fail(pointer, "integer out of range");
            return static_cast<std::int64_t>(v.get<std::uint64_t>());
        }
        if (!v.is_number_integer()) fail(pointer, "expected an integer");
        return v.get<std::int64_t>();
    }

    std::uint64_t unsigned_integer(const json& v, const std::string& pointer) const {
        if (!v.is_number_unsigned()) fail(pointer, "expected a nonnegative integer");
        return v.get<std::uint64_t>();
    }

    VertexIndex vertex(const Quiver& q, const json& v, const std::string& pointer) const {
        const auto name = string(v, pointer);
        auto idx = q.find_vertex(name);
        if (!idx) fail(pointer, "undeclared vertex '" + name + "'");
        return *idx;
    }

    // A map vertex -> integer covering exactly the vertex set.
    IntVector vertex_map(const Quiver& q, const json& v, const std::string& pointer, bool nonnegative) const {
        object(v, pointer);
        IntVector out = IntVector::Zero(static_cast<Eigen::Index>(q.vertex_count()));
        for (auto it = v.begin(); it != v.end(); ++it)
            if (!q.find_vertex(it.key())) fail(pointer + "/" + it.key(), "undeclared vertex '" + it.key() + "'");
        for (VertexIndex k = 0; k < q.vertex_count(); ++k) {
            const auto& name = q.name(k);
            auto it = v.find(name);
            if (it == v.end()) fail(pointer, "no entry for vertex '" + name + "'");
            const auto value = integer(*it, pointer + "/" + name);
            if (nonnegative && value < 0) fail(pointer + "/" + name, "dimension must be nonnegative");
            out(static_cast<Eigen::Index>(k)) = value;
        }
        return out;
    }

private:
    std::string source_;
};

}  // namespace

QuiverSpec parse_spec(const nlohmann::json& doc, const std::string& source) {
    const Reader r(source);
    r.object(doc, "");
    r.only_keys(doc, "", {"vertices", "arrows", "dimension", "stability", "framing", "oracle"});

    const auto& vertices = r.member(doc, "", "vertices");
    if (!vertices.is_array()) r.fail("/vertices", "expected an array of vertex names");
    std::vector<std::string> names;
    std::set<std::string> seen;
    for (std::size_t k = 0; k < vertices.size(); ++k) {
        const auto ptr = "/vertices/" + std::to_string(k);
        auto name = r.string(vertices[k], ptr);
        if (name.empty()) r.fail(ptr, "vertex names must be nonempty");
        if (!seen.insert(name).second) r.fail(ptr, "duplicate vertex '" + name + "'");
        names.push_back(std::move(name));
    }
    if (names.empty()) r.fail("/vertices", "at least one vertex is required");

    const auto& arrows_json = r.member(doc, "", "arrows");
    if (!arrows_json.is_array()) r.fail("/arrows", "expected an array of {from, to} records");
    const Quiver names_only(names, {});
    std::vector<Arrow> arrows;
    for (std::size_t k = 0; k < arrows_json.size(); ++k) {
        const auto ptr = "/arrows/" + std::to_string(k);
        const auto& a = r.object(arrows_json[k], ptr);
        r.only_keys(a, ptr, {"from", "to"});
        const auto s = r.vertex(names_only, r.member(a, ptr, "from"), ptr + "/from");
        const auto t = r.vertex(names_only, r.member(a, ptr, "to"), ptr + "/to");
        arrows.push_back({s, t});
    }

    QuiverSpec spec;
    spec.quiver = Quiver(names, arrows);
    spec.dimension = DimensionVector(r.vertex_map(spec.quiver, r.member(doc, "", "dimension"), "/dimension", true));

    const auto& stab = r.member(doc, "", "stability");
    if (stab.is_string()) {
        if (stab.get<std::string>() != "canonical") r.fail("/stability", "expected a vertex map or \"canonical\"");
        spec.canonical_stability_requested = true;
        spec.stability = canonical_stability(spec.quiver, spec.dimension);
    } else {
        spec.stability = StabilityParameter(r.vertex_map(spec.quiver, stab, "/stability", false));
        const auto pairing = spec.stability(spec.dimension);
        if (pairing != 0)
            r.fail("/stability", "theta(d) = " + std::to_string(pairing) +
                                     " but must be 0; the canonical stability parameter for this d is " +
                                     to_string(canonical_stability(spec.quiver, spec.dimension)) +
                                     " (write \"stability\": \"canonical\" to use it)");
    }

    if (auto it = doc.find("framing"); it != doc.end()) {
        const auto& f = r.object(*it, "/framing");
        r.only_keys(f, "/framing", {"i", "j", "N"});
        FramingBlock block;
        block.i = spec.quiver.name(r.vertex(spec.quiver, r.member(f, "/framing", "i"), "/framing/i"));
        block.j = spec.quiver.name(r.vertex(spec.quiver, r.member(f, "/framing", "j"), "/framing/j"));
        if (auto n = f.find("N"); n != f.end()) {
            block.scale = r.integer(*n, "/framing/N");
            if (*block.scale < 1) r.fail("/framing/N", "the framing scale must be at least 1");
        }
        spec.framing = block;
    }

    if (auto it = doc.find("oracle"); it != doc.end()) {
        const auto& o = r.object(*it, "/oracle");
        r.only_keys(o, "/oracle", {"prime", "budget", "seed"});
        OracleBlock block;
        if (auto v = o.find("prime"); v != o.end()) block.prime = r.integer(*v, "/oracle/prime");
        if (auto v = o.find("budget"); v != o.end()) block.budget = r.unsigned_integer(*v, "/oracle/budget");
        if (auto v = o.find("seed"); v != o.end()) block.seed = r.unsigned_integer(*v, "/oracle/seed");
        spec.oracle = block;
    }
    return spec;
}

QuiverSpec parse_spec_text(const std::string& text, const std::string& source) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        // Translate the byte offset into line:column.
        std::size_t line = 1, column = 1;
        for (std::size_t k = 0; k + 1 < e.byte && k < text.size(); ++k) {
            if (text[k] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        throw SpecError(source + ":" + std::to_string(line) + ":" + std::to_string(column), "syntax error");
    }
    return parse_spec(doc, source);
}

QuiverSpec load_spec(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SpecError(path, "cannot open file");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_spec_text(buffer.str(), path);
}

nlohmann::json to_json(const QuiverSpec& spec) {
    const auto& q = spec.quiver;
    nlohmann::json doc;
    doc["vertices"] = q.vertex_names();
    doc["arrows"] = nlohmann::json::array();
    for (const auto& a : q.arrows()) doc["arrows"].push_back({{"from", q.name(a.source)}, {"to", q.name(a.target)}});
    doc["dimension"] = nlohmann::json::object();
    for (VertexIndex k = 0; k < q.vertex_count(); ++k) doc["dimension"][q.name(k)] = spec.dimension[k];
    if (spec.canonical_stability_requested) {
        doc["stability"] = "canonical";
    } else {
        doc["stability"] = nlohmann::json::object();
        for (VertexIndex k = 0; k < q.vertex_count(); ++k) doc["stability"][q.name(k)] = spec.stability[k];
    }
    if (spec.framing) {
        doc["framing"] = {{"i", spec.framing->i}, {"j", spec.framing->j}};
        if (spec.framing->scale) doc["framing"]["N"] = *spec.framing->scale;
    }
    if (spec.oracle) {
        doc["oracle"] = nlohmann::json::object();
        if (spec.oracle->prime) doc["oracle"]["prime"] = *spec.oracle->prime;
        if (spec.oracle->budget) doc["oracle"]["budget"] = *spec.oracle->budget;
        if (spec.oracle->seed) doc["oracle"]["seed"] = *spec.oracle->seed;
    }
    return doc;
}

}  // namespace quiverkit
