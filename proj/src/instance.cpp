#include "orbimorse/instance.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "orbimorse/error.hpp"

namespace orbimorse {

using Json = nlohmann::ordered_json;

std::string_view to_string(InstanceKind kind) {
    switch (kind) {
        case InstanceKind::GlobalQuotient: return "global_quotient";
        case InstanceKind::Intrinsic: return "intrinsic";
        case InstanceKind::Simplicial: return "simplicial";
        case InstanceKind::Comparison: return "comparison";
    }
    return "unknown";
}

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& message) {
    throw Error(ErrorCode::ParseError, path + ": " + message);
}

std::string at(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

void check_keys(const Json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) fail(path.empty() ? "instance" : path, "expected an object");
    for (const auto& [key, _] : obj.items()) {
        bool known = false;
        for (const char* a : allowed) known = known || key == a;
        if (!known) fail(at(path, key), "unknown field");
    }
}

const Json& require(const Json& obj, const std::string& path, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) fail(at(path, key), "missing required field");
    return *it;
}

std::string get_string(const Json& j, const std::string& path) {
    if (!j.is_string()) fail(path, "expected a string");
    return j.get<std::string>();
}

std::uint64_t get_uint(const Json& j, const std::string& path) {
    if (!j.is_number_integer() || (j.is_number_integer() && !j.is_number_unsigned() && j.get<std::int64_t>() < 0))
        fail(path, "expected a non-negative integer");
    return j.get<std::uint64_t>();
}

int get_sign(const Json& j, const std::string& path) {
    if (!j.is_number_integer()) fail(path, "expected +1 or -1");
    const auto v = j.get<std::int64_t>();
    if (v != 1 && v != -1) fail(path, "expected +1 or -1, got " + std::to_string(v));
    return static_cast<int>(v);
}

bool get_bool(const Json& j, const std::string& path) {
    if (!j.is_boolean()) fail(path, "expected true or false");
    return j.get<bool>();
}

const Json& get_array(const Json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array");
    return j;
}

Permutation get_perm(const Json& j, const std::string& path) {
    Permutation p;
    const auto& arr = get_array(j, path);
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const auto v = get_uint(arr[i], at(path, i));
        if (v > UINT32_MAX) fail(at(path, i), "entry too large");
        p.push_back(static_cast<std::uint32_t>(v));
    }
    return p;
}

std::vector<std::size_t> get_uint_array(const Json& j, const std::string& path) {
    std::vector<std::size_t> out;
    const auto& arr = get_array(j, path);
    for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(get_uint(arr[i], at(path, i)));
    return out;
}

/// Label → position, rejecting duplicates.
class LabelIndex {
public:
    LabelIndex(std::string what) : what_(std::move(what)) {}

    void add(const std::string& label, const std::string& path) {
        if (label.empty()) fail(path, "empty label");
        if (!index_.emplace(label, index_.size()).second) fail(path, "duplicate label \"" + label + "\"");
    }

    std::size_t find(const Json& j, const std::string& path) const {
        const auto label = get_string(j, path);
        auto it = index_.find(label);
        if (it == index_.end()) fail(path, "unknown " + what_ + " \"" + label + "\"");
        return it->second;
    }

private:
    std::string what_;
    std::map<std::string, std::size_t> index_;
};

std::size_t ambient(const Json& obj, const std::string& path) {
    return static_cast<std::size_t>(get_uint(require(obj, path, "ambient_dim"), at(path, "ambient_dim")));
}

EquivariantMorseSystem parse_global(const Json& obj, const std::string& path) {
    check_keys(obj, path, {"kind", "name", "description", "expect", "ambient_dim", "self_indexing", "group",
                           "crit_points", "flows"});
    const auto dim = ambient(obj, path);
    bool self_indexing = false;
    if (auto it = obj.find("self_indexing"); it != obj.end()) self_indexing = get_bool(*it, at(path, "self_indexing"));

    std::vector<CriticalPoint> points;
    LabelIndex point_labels("critical point");
    const auto cp_path = at(path, "crit_points");
    const auto& cps = get_array(require(obj, path, "crit_points"), cp_path);
    for (std::size_t i = 0; i < cps.size(); ++i) {
        const auto p = at(cp_path, i);
        check_keys(cps[i], p, {"label", "index", "value"});
        CriticalPoint c;
        c.label = get_string(require(cps[i], p, "label"), at(p, "label"));
        point_labels.add(c.label, at(p, "label"));
        c.index = static_cast<std::size_t>(get_uint(require(cps[i], p, "index"), at(p, "index")));
        if (auto it = cps[i].find("value"); it != cps[i].end()) {
            try {
                c.value = parse_rational(get_string(*it, at(p, "value")));
            } catch (const Error& e) {
                fail(at(p, "value"), e.what());
            }
        }
        points.push_back(std::move(c));
    }

    std::vector<ManifoldFlow> flows;
    LabelIndex flow_labels("flow");
    const auto fl_path = at(path, "flows");
    const auto& fls = get_array(require(obj, path, "flows"), fl_path);
    for (std::size_t i = 0; i < fls.size(); ++i) {
        const auto p = at(fl_path, i);
        check_keys(fls[i], p, {"label", "src", "dst", "sign"});
        ManifoldFlow f;
        f.label = get_string(require(fls[i], p, "label"), at(p, "label"));
        flow_labels.add(f.label, at(p, "label"));
        f.src = point_labels.find(require(fls[i], p, "src"), at(p, "src"));
        f.dst = point_labels.find(require(fls[i], p, "dst"), at(p, "dst"));
        f.sign = get_sign(require(fls[i], p, "sign"), at(p, "sign"));
        flows.push_back(std::move(f));
    }

    const auto g_path = at(path, "group");
    const auto& group = require(obj, path, "group");
    check_keys(group, g_path, {"degree", "generators"});
    const auto degree = static_cast<std::size_t>(get_uint(require(group, g_path, "degree"), at(g_path, "degree")));
    std::vector<GeneratorData> generators;
    const auto gen_path = at(g_path, "generators");
    const auto& gens = get_array(require(group, g_path, "generators"), gen_path);
    for (std::size_t i = 0; i < gens.size(); ++i) {
        const auto p = at(gen_path, i);
        check_keys(gens[i], p, {"perm", "points", "flows", "tau"});
        GeneratorData g;
        g.perm = get_perm(require(gens[i], p, "perm"), at(p, "perm"));
        g.points = get_perm(require(gens[i], p, "points"), at(p, "points"));
        g.flows = get_perm(require(gens[i], p, "flows"), at(p, "flows"));
        const auto& tau = get_array(require(gens[i], p, "tau"), at(p, "tau"));
        for (std::size_t k = 0; k < tau.size(); ++k) g.tau.push_back(get_sign(tau[k], at(at(p, "tau"), k)));
        generators.push_back(std::move(g));
    }
    return EquivariantMorseSystem::build(dim, degree, std::move(generators), std::move(points), std::move(flows),
                                         self_indexing);
}

OrbifoldMorseSystem parse_intrinsic(const Json& obj) {
    check_keys(obj, "", {"kind", "name", "description", "expect", "ambient_dim", "crit_points", "flows"});
    OrbifoldMorseSystem s;
    s.ambient_dim = ambient(obj, "");
    LabelIndex point_labels("critical point");
    const auto& cps = get_array(require(obj, "", "crit_points"), "crit_points");
    for (std::size_t i = 0; i < cps.size(); ++i) {
        const auto p = at("crit_points", i);
        check_keys(cps[i], p, {"label", "index", "iso_order", "orientable"});
        OrbifoldCriticalPoint c;
        c.label = get_string(require(cps[i], p, "label"), at(p, "label"));
        point_labels.add(c.label, at(p, "label"));
        c.index = static_cast<std::size_t>(get_uint(require(cps[i], p, "index"), at(p, "index")));
        c.iso_order = get_uint(require(cps[i], p, "iso_order"), at(p, "iso_order"));
        if (auto it = cps[i].find("orientable"); it != cps[i].end()) c.orientable = get_bool(*it, at(p, "orientable"));
        s.crit_points.push_back(std::move(c));
    }
    LabelIndex flow_labels("flow");
    const auto& fls = get_array(require(obj, "", "flows"), "flows");
    for (std::size_t i = 0; i < fls.size(); ++i) {
        const auto p = at("flows", i);
        check_keys(fls[i], p, {"label", "src", "dst", "iso_order", "sign"});
        OrbifoldFlow f;
        f.label = get_string(require(fls[i], p, "label"), at(p, "label"));
        flow_labels.add(f.label, at(p, "label"));
        f.src = point_labels.find(require(fls[i], p, "src"), at(p, "src"));
        f.dst = point_labels.find(require(fls[i], p, "dst"), at(p, "dst"));
        f.iso_order = get_uint(require(fls[i], p, "iso_order"), at(p, "iso_order"));
        f.sign = get_sign(require(fls[i], p, "sign"), at(p, "sign"));
        s.flows.push_back(std::move(f));
    }
    return s;
}

std::vector<std::vector<std::string>> parse_simplices(const Json& j, const std::string& path,
                                                      const LabelIndex& vertices) {
    std::vector<std::vector<std::string>> out;
    const auto& arr = get_array(j, path);
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const auto p = at(path, i);
        const auto& s = get_array(arr[i], p);
        if (s.empty()) fail(p, "empty simplex");
        std::vector<std::string> labels;
        for (std::size_t k = 0; k < s.size(); ++k) {
            vertices.find(s[k], at(p, k));
            labels.push_back(s[k].get<std::string>());
        }
        out.push_back(std::move(labels));
    }
    return out;
}

Triangulation parse_triangulation(const Json& obj, const std::string& path) {
    check_keys(obj, path, {"kind", "name", "description", "expect", "vertices", "simplices", "subcomplex", "generators"});
    Triangulation t;
    LabelIndex vertex_labels("vertex");
    const auto v_path = at(path, "vertices");
    const auto& vs = get_array(require(obj, path, "vertices"), v_path);
    for (std::size_t i = 0; i < vs.size(); ++i) {
        t.vertices.push_back(get_string(vs[i], at(v_path, i)));
        vertex_labels.add(t.vertices.back(), at(v_path, i));
    }
    t.simplices = parse_simplices(require(obj, path, "simplices"), at(path, "simplices"), vertex_labels);
    if (auto it = obj.find("subcomplex"); it != obj.end())
        t.subcomplex = parse_simplices(*it, at(path, "subcomplex"), vertex_labels);
    if (auto it = obj.find("generators"); it != obj.end()) {
        const auto g_path = at(path, "generators");
        const auto& gens = get_array(*it, g_path);
        for (std::size_t i = 0; i < gens.size(); ++i) t.generators.push_back(get_perm(gens[i], at(g_path, i)));
    }
    return t;
}

Expectations parse_expect(const Json& obj) {
    Expectations e;
    auto it = obj.find("expect");
    if (it == obj.end()) return e;
    check_keys(*it, "expect", {"betti", "quotient_betti", "valid"});
    if (auto b = it->find("betti"); b != it->end()) e.betti = get_uint_array(*b, "expect.betti");
    if (auto b = it->find("quotient_betti"); b != it->end()) e.quotient_betti = get_uint_array(*b, "expect.quotient_betti");
    if (auto b = it->find("valid"); b != it->end()) e.valid = get_bool(*b, "expect.valid");
    return e;
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

Json global_json(const EquivariantMorseSystem& s) {
    Json j;
    j["ambient_dim"] = s.ambient_dim();
    if (s.self_indexing()) j["self_indexing"] = true;
    Json group;
    group["degree"] = s.group().degree();
    group["generators"] = Json::array();
    for (const auto& g : s.generators())
        group["generators"].push_back({{"perm", g.perm}, {"points", g.points}, {"flows", g.flows}, {"tau", g.tau}});
    j["group"] = group;
    j["crit_points"] = Json::array();
    for (const auto& p : s.crit_points()) {
        Json c{{"label", p.label}, {"index", p.index}};
        if (p.value) c["value"] = to_string(*p.value);
        j["crit_points"].push_back(c);
    }
    j["flows"] = Json::array();
    for (const auto& f : s.flows())
        j["flows"].push_back({{"label", f.label},
                              {"src", s.crit_points()[f.src].label},
                              {"dst", s.crit_points()[f.dst].label},
                              {"sign", f.sign}});
    return j;
}

Json intrinsic_json(const OrbifoldMorseSystem& s) {
    Json j;
    j["ambient_dim"] = s.ambient_dim;
    j["crit_points"] = Json::array();
    for (const auto& p : s.crit_points) {
        Json c{{"label", p.label}, {"index", p.index}, {"iso_order", p.iso_order}};
        if (!p.orientable) c["orientable"] = false;
        j["crit_points"].push_back(c);
    }
    j["flows"] = Json::array();
    for (const auto& f : s.flows)
        j["flows"].push_back({{"label", f.label},
                              {"src", s.crit_points.at(f.src).label},
                              {"dst", s.crit_points.at(f.dst).label},
                              {"iso_order", f.iso_order},
                              {"sign", f.sign}});
    return j;
}

Json triangulation_json(const Triangulation& t) {
    Json j;
    j["vertices"] = t.vertices;
    j["simplices"] = t.simplices;
    if (t.subcomplex) j["subcomplex"] = *t.subcomplex;
    if (!t.generators.empty()) j["generators"] = t.generators;
    return j;
}

void merge(Json& into, const Json& from) {
    for (const auto& [k, v] : from.items()) into[k] = v;
}

bool flat(const Json& j) {
    if (j.is_array()) {
        for (const auto& e : j)
            if (!(e.is_primitive() || (e.is_array() && std::all_of(e.begin(), e.end(), [](const Json& x) {
                                          return x.is_primitive();
                                      }))))
                return false;
        return true;
    }
    if (j.is_object()) {
        for (const auto& [_, v] : j.items())
            if (!v.is_primitive()) return false;
        return true;
    }
    return true;
}

void write_inline(std::ostream& out, const Json& j) {
    if (j.is_array()) {
        out << '[';
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (i) out << ", ";
            write_inline(out, j[i]);
        }
        out << ']';
    } else if (j.is_object()) {
        out << '{';
        bool first = true;
        for (const auto& [k, v] : j.items()) {
            if (!first) out << ", ";
            first = false;
            out << Json(k).dump() << ": ";
            write_inline(out, v);
        }
        out << '}';
    } else {
        out << j.dump();
    }
}

void write_pretty(std::ostream& out, const Json& j, std::size_t indent) {
    if (flat(j) || j.empty()) {
        write_inline(out, j);
        return;
    }
    const std::string pad(indent + 2, ' ');
    if (j.is_array()) {
        out << "[\n";
        for (std::size_t i = 0; i < j.size(); ++i) {
            out << pad;
            write_pretty(out, j[i], indent + 2);
            out << (i + 1 < j.size() ? ",\n" : "\n");
        }
        out << std::string(indent, ' ') << ']';
        return;
    }
    out << "{\n";
    std::size_t i = 0;
    for (const auto& [k, v] : j.items()) {
        out << pad << Json(k).dump() << ": ";
        write_pretty(out, v, indent + 2);
        out << (++i < j.size() ? ",\n" : "\n");
    }
    out << std::string(indent, ' ') << '}';
}

}  // namespace

SimplicialComplex Triangulation::complex() const {
    std::map<std::string, std::uint32_t> index;
    for (std::uint32_t i = 0; i < vertices.size(); ++i) index[vertices[i]] = i;
    std::vector<Simplex> s;
    for (const auto& labels : simplices) {
        Simplex simplex;
        for (const auto& l : labels) simplex.push_back(index.at(l));
        s.push_back(std::move(simplex));
    }
    return SimplicialComplex::from_simplices(vertices, std::move(s));
}

std::optional<SimplicialComplex> Triangulation::sub() const {
    if (!subcomplex) return std::nullopt;
    std::map<std::string, std::uint32_t> index;
    for (std::uint32_t i = 0; i < vertices.size(); ++i) index[vertices[i]] = i;
    std::vector<Simplex> s;
    for (const auto& labels : *subcomplex) {
        Simplex simplex;
        for (const auto& l : labels) simplex.push_back(index.at(l));
        s.push_back(std::move(simplex));
    }
    return SimplicialComplex::from_simplices(vertices, std::move(s), false);
}

GSimplicialComplex Triangulation::g_complex() const { return GSimplicialComplex::from_generators(complex(), generators); }

Instance parse_instance(std::string_view text) {
    Json root;
    try {
        root = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        const auto [line, column] = line_column(text, e.byte);
        std::string what = e.what();
        if (auto pos = what.find("syntax error"); pos != std::string::npos) what = what.substr(pos);
        throw Error(ErrorCode::ParseError,
                    "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what);
    }
    if (!root.is_object()) fail("instance", "expected an object");
    Instance inst;
    const auto kind = get_string(require(root, "", "kind"), "kind");
    inst.name = get_string(require(root, "", "name"), "name");
    if (auto it = root.find("description"); it != root.end()) inst.description = get_string(*it, "description");
    inst.expect = parse_expect(root);
    if (kind == "global_quotient") {
        inst.kind = InstanceKind::GlobalQuotient;
        inst.global = parse_global(root, "");
    } else if (kind == "intrinsic") {
        inst.kind = InstanceKind::Intrinsic;
        inst.intrinsic = parse_intrinsic(root);
    } else if (kind == "simplicial") {
        inst.kind = InstanceKind::Simplicial;
        inst.triangulation = parse_triangulation(root, "");
    } else if (kind == "comparison") {
        inst.kind = InstanceKind::Comparison;
        check_keys(root, "", {"kind", "name", "description", "expect", "morse", "triangulation"});
        inst.global = parse_global(require(root, "", "morse"), "morse");
        inst.triangulation = parse_triangulation(require(root, "", "triangulation"), "triangulation");
    } else {
        fail("kind", "unknown instance kind \"" + kind + "\"");
    }
    return inst;
}

Instance load_instance(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_instance(buf.str());
    } catch (const Error& e) {
        if (e.code() != ErrorCode::ParseError) throw;
        const std::string what = e.what();
        throw Error(ErrorCode::ParseError, path.filename().string() + ": " + what.substr(what.find(": ") + 2));
    }
}

std::string serialize(const Instance& inst) {
    Json j;
    j["kind"] = to_string(inst.kind);
    j["name"] = inst.name;
    if (!inst.description.empty()) j["description"] = inst.description;
    switch (inst.kind) {
        case InstanceKind::GlobalQuotient: merge(j, global_json(*inst.global)); break;
        case InstanceKind::Intrinsic: merge(j, intrinsic_json(*inst.intrinsic)); break;
        case InstanceKind::Simplicial: merge(j, triangulation_json(*inst.triangulation)); break;
        case InstanceKind::Comparison:
            j["morse"] = global_json(*inst.global);
            j["triangulation"] = triangulation_json(*inst.triangulation);
            break;
    }
    Json expect = Json::object();
    if (inst.expect.betti) expect["betti"] = *inst.expect.betti;
    if (inst.expect.quotient_betti) expect["quotient_betti"] = *inst.expect.quotient_betti;
    if (inst.expect.valid) expect["valid"] = *inst.expect.valid;
    if (!expect.empty()) j["expect"] = expect;
    std::ostringstream out;
    write_pretty(out, j, 0);
    out << '\n';
    return out.str();
}

void save_instance(const Instance& inst, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
    out << serialize(inst);
    if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

}  // namespace orbimorse
