#include "wavebound/scenario_io.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace wavebound {

double ConfigValue::number() const {
    if (const auto* d = std::get_if<double>(&data)) return *d;
    throw SpecError("config value is not a number");
}

bool ConfigValue::boolean() const {
    if (const auto* b = std::get_if<bool>(&data)) return *b;
    throw SpecError("config value is not a boolean");
}

const std::string& ConfigValue::str() const {
    if (const auto* s = std::get_if<std::string>(&data)) return *s;
    throw SpecError("config value is not a string");
}

const std::vector<ConfigValue>& ConfigValue::array() const {
    if (const auto* a = std::get_if<std::vector<ConfigValue>>(&data)) return *a;
    throw SpecError("config value is not an array");
}

const ConfigTable& ConfigValue::table() const {
    if (const auto* t = std::get_if<ConfigTable>(&data)) return *t;
    throw SpecError("config value is not a table");
}

namespace {

class Parser {
public:
    explicit Parser(const std::string& text) : text_(text) {}

    ConfigTable parse() {
        ConfigTable root;
        ConfigTable* current = &root;
        while (!eof()) {
            skip_ws_and_comments();
            if (eof()) break;
            if (peek() == '[') {
                current = enter_section(root);
            } else {
                auto [key, value] = parse_key_value();
                insert_dotted(*current, key, std::move(value));
            }
        }
        return root;
    }

private:
    bool eof() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }
    char get() {
        const char c = text_[pos_++];
        if (c == '\n') ++line_;
        return c;
    }

    [[noreturn]] void fail(const std::string& what) {
        throw SpecError("config parse error at line " + std::to_string(line_) + ": " + what);
    }

    void skip_ws_and_comments() {
        while (!eof()) {
            const char c = peek();
            if (c == '#') {
                while (!eof() && peek() != '\n') get();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                get();
            } else {
                break;
            }
        }
    }

    void skip_inline_ws() {
        while (!eof() && (peek() == ' ' || peek() == '\t')) get();
    }

    std::string parse_bare_key() {
        std::string key;
        while (!eof()) {
            const char c = peek();
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.') {
                key += get();
            } else {
                break;
            }
        }
        if (key.empty()) fail("expected a key");
        return key;
    }

    ConfigTable* enter_section(ConfigTable& root) {
        get();  // '['
        skip_inline_ws();
        const std::string name = parse_bare_key();
        skip_inline_ws();
        if (eof() || get() != ']') fail("unterminated section header");
        ConfigTable* t = &root;
        std::size_t start = 0;
        while (start <= name.size()) {
            const auto dot = name.find('.', start);
            const std::string part = name.substr(start, dot == std::string::npos
                                                             ? std::string::npos
                                                             : dot - start);
            auto [it, inserted] = t->try_emplace(part, ConfigValue{ConfigTable{}});
            if (!it->second.is_table()) fail("section name collides with a value: " + part);
            t = &std::get<ConfigTable>(it->second.data);
            if (dot == std::string::npos) break;
            start = dot + 1;
        }
        return t;
    }

    std::pair<std::string, ConfigValue> parse_key_value() {
        const std::string key = parse_bare_key();
        skip_inline_ws();
        if (eof() || get() != '=') fail("expected '=' after key " + key);
        skip_inline_ws();
        ConfigValue v = parse_value();
        return {key, std::move(v)};
    }

    void insert_dotted(ConfigTable& table, const std::string& key, ConfigValue value) {
        const auto dot = key.find('.');
        if (dot == std::string::npos) {
            table[key] = std::move(value);
            return;
        }
        const std::string head = key.substr(0, dot);
        auto [it, inserted] = table.try_emplace(head, ConfigValue{ConfigTable{}});
        if (!it->second.is_table()) fail("key collides with a value: " + head);
        insert_dotted(std::get<ConfigTable>(it->second.data), key.substr(dot + 1),
                      std::move(value));
    }

    ConfigValue parse_value() {
        skip_ws_and_comments();
        if (eof()) fail("expected a value");
        const char c = peek();
        if (c == '"') return parse_string();
        if (c == '[') return parse_array();
        if (c == '{') return parse_inline_table();
        return parse_scalar();
    }

    ConfigValue parse_string() {
        get();  // '"'
        std::string s;
        while (!eof() && peek() != '"') s += get();
        if (eof()) fail("unterminated string");
        get();
        return ConfigValue{std::move(s)};
    }

    ConfigValue parse_array() {
        get();  // '['
        std::vector<ConfigValue> items;
        while (true) {
            skip_ws_and_comments();
            if (eof()) fail("unterminated array");
            if (peek() == ']') {
                get();
                break;
            }
            items.push_back(parse_value());
            skip_ws_and_comments();
            if (!eof() && peek() == ',') get();
        }
        return ConfigValue{std::move(items)};
    }

    ConfigValue parse_inline_table() {
        get();  // '{'
        ConfigTable t;
        while (true) {
            skip_ws_and_comments();
            if (eof()) fail("unterminated inline table");
            if (peek() == '}') {
                get();
                break;
            }
            auto [key, value] = parse_key_value();
            insert_dotted(t, key, std::move(value));
            skip_ws_and_comments();
            if (!eof() && peek() == ',') get();
        }
        return ConfigValue{std::move(t)};
    }

    ConfigValue parse_scalar() {
        std::string token;
        while (!eof()) {
            const char c = peek();
            if (c == ',' || c == ']' || c == '}' || c == '\n' || c == '#' || c == ' ' ||
                c == '\t' || c == '\r')
                break;
            token += get();
        }
        if (token == "true") return ConfigValue{true};
        if (token == "false") return ConfigValue{false};
        try {
            std::size_t used = 0;
            const double d = std::stod(token, &used);
            if (used == token.size()) return ConfigValue{d};
        } catch (...) {
        }
        fail("cannot parse value: '" + token + "'");
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    int line_ = 1;
};

const ConfigValue* find(const ConfigTable& t, const std::string& key) {
    const auto it = t.find(key);
    return it == t.end() ? nullptr : &it->second;
}

double get_number(const ConfigTable& t, const std::string& key, double fallback) {
    const auto* v = find(t, key);
    return v ? v->number() : fallback;
}

int get_int(const ConfigTable& t, const std::string& key, int fallback) {
    return static_cast<int>(std::lround(get_number(t, key, fallback)));
}

std::string get_string(const ConfigTable& t, const std::string& key,
                       const std::string& fallback) {
    const auto* v = find(t, key);
    return v ? v->str() : fallback;
}

/// scalar -> 1x1, [[..],[..]] -> full matrix
Mat parse_matrix(const ConfigValue& v) {
    if (v.is_number()) return Mat::Constant(1, 1, v.number());
    const auto& rows = v.array();
    if (rows.empty()) throw SpecError("empty matrix literal");
    if (rows[0].is_number()) {
        // a flat array is a diagonal
        Mat m = Mat::Zero(rows.size(), rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) m(i, i) = rows[i].number();
        return m;
    }
    const std::size_t k = rows.size();
    Mat m(k, rows[0].array().size());
    for (std::size_t i = 0; i < k; ++i) {
        const auto& row = rows[i].array();
        if (row.size() != static_cast<std::size_t>(m.cols()))
            throw SpecError("ragged matrix literal");
        for (std::size_t j = 0; j < row.size(); ++j) m(i, j) = row[j].number();
    }
    return m;
}

Vec parse_vector(const ConfigValue& v) {
    if (v.is_number()) return Vec::Constant(1, v.number());
    const auto& a = v.array();
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out(i) = a[i].number();
    return out;
}

MemoryKernel parse_kernel(const ConfigTable& node) {
    MemoryKernel kernel;
    if (const auto* terms = find(node, "kernel")) {
        for (const auto& item : terms->array()) {
            const auto& t = item.table();
            KernelTerm term;
            term.c = get_number(t, "c", 0.0);
            term.lambda = get_number(t, "lambda", 0.0);
            term.omega = get_number(t, "omega", 0.0);
            term.phase = get_string(t, "phase", "cos") == "sin" ? KernelTerm::Phase::Sin
                                                                : KernelTerm::Phase::Cos;
            kernel.terms.push_back(term);
        }
    }
    kernel.alpha_inf = get_number(node, "alpha_inf", 0.0);
    return kernel;
}

}  // namespace

ForceFn force_from_config(const ConfigTable& spec, int components) {
    const std::string kind = get_string(spec, "kind", "none");
    if (kind == "none") return nullptr;
    const double amplitude = get_number(spec, "amplitude", 1.0);
    const double t0 = get_number(spec, "t0", 0.0);
    const double width = get_number(spec, "width", 0.0);
    const double omega = get_number(spec, "omega", 1.0);
    const double phase = get_number(spec, "phase", 0.0);
    const int comp = get_int(spec, "component", 0);
    const Vec dir = Vec::Unit(components, std::clamp(comp, 0, components - 1));

    if (kind == "constant") return [=](double) { return Vec(amplitude * dir); };
    if (kind == "step")
        return [=](double t) { return Vec((t >= t0 ? amplitude : 0.0) * dir); };
    if (kind == "impulse") {
        if (!(width > 0.0)) throw SpecError("impulse force needs width > 0");
        return [=](double t) {
            return Vec(((t >= t0 && t < t0 + width) ? amplitude / width : 0.0) * dir);
        };
    }
    if (kind == "sine")
        return [=](double t) { return Vec(amplitude * std::sin(omega * t + phase) * dir); };
    throw SpecError("unknown force kind: " + kind);
}

ConfigTable parse_config(const std::string& text) { return Parser(text).parse(); }

Scenario scenario_from_config(const ConfigTable& config) {
    Scenario s;
    s.name = get_string(config, "name", "scenario");

    const auto* interior_cfg = find(config, "interior");
    if (!interior_cfg) throw SpecError("scenario is missing the [interior] section");
    const auto& interior = interior_cfg->table();
    const std::string type = get_string(interior, "type", "string");

    int k = 1;
    if (type == "string" || type == "mtl") {
        InteriorSpec1D spec;
        if (const auto* m = find(interior, "mass"))
            spec.mass = parse_matrix(*m);
        else if (const auto* m2 = find(interior, "rho"))
            spec.mass = parse_matrix(*m2);
        else if (const auto* m3 = find(interior, "inductance"))
            spec.mass = parse_matrix(*m3);
        else
            spec.mass = Mat::Identity(1, 1);
        if (const auto* t = find(interior, "stiffness"))
            spec.stiffness = parse_matrix(*t);
        else if (const auto* t2 = find(interior, "tension"))
            spec.stiffness = parse_matrix(*t2);
        else if (const auto* t3 = find(interior, "capacitance")) {
            const Mat c = parse_matrix(*t3);
            spec.stiffness = c.llt().solve(Mat::Identity(c.rows(), c.cols()));
        } else
            spec.stiffness = Mat::Identity(1, 1);
        spec.b1 = get_number(interior, "b1", 0.0);
        spec.b2 = get_number(interior, "b2", 1.0);
        spec.n_cells = get_int(interior, "n_cells", 64);
        if (const auto* semi = find(interior, "semi_infinite")) {
            for (const auto& v : semi->array()) {
                if (v.str() == "b1") spec.semi_infinite_b1 = true;
                if (v.str() == "b2") spec.semi_infinite_b2 = true;
            }
        }
        k = spec.components();
        if (const auto* f = find(interior, "force")) spec.body_force = force_from_config(f->table(), k);
        s.interior = std::move(spec);
    } else if (type == "disk") {
        DiskSpec disk;
        disk.radius = get_number(interior, "radius", 1.0);
        disk.sigma = get_number(interior, "sigma", 1.0);
        disk.tension = get_number(interior, "tension", 1.0);
        disk.ring_lambda = get_number(interior, "ring_lambda", 0.0);
        disk.ring_k = get_number(interior, "ring_k", 0.0);
        disk.n_r = get_int(interior, "n_r", 32);
        disk.n_theta = get_int(interior, "n_theta", 64);
        s.interior = disk;
    } else if (type == "none" || type == "reduced") {
        s.interior = ReducedInterior{};
    } else {
        throw SpecError("unknown interior type: " + type);
    }

    const auto* boundary = find(config, "boundary");
    for (int e = 0; e < 2; ++e) {
        const char* name = (e == 0) ? "b1" : "b2";
        BoundaryNodeSpec node;
        node.label = static_cast<End>(e);
        node.mass = Mat::Zero(k, k);
        node.hooke = Mat::Zero(k, k);
        if (boundary) {
            if (const auto* nv = find(boundary->table(), name)) {
                const auto& nt = nv->table();
                if (const auto* m = find(nt, "mass")) node.mass = parse_matrix(*m);
                if (const auto* h = find(nt, "hooke")) node.hooke = parse_matrix(*h);
                if (node.mass.rows() == 1 && k > 1) node.mass = Mat::Identity(k, k) * node.mass(0, 0);
                if (node.hooke.rows() == 1 && k > 1)
                    node.hooke = Mat::Identity(k, k) * node.hooke(0, 0);
                const MemoryKernel kernel = parse_kernel(nt);
                if (!kernel.empty()) node.kernel = kernel;
                if (const auto* f = find(nt, "force"))
                    node.external_force = force_from_config(f->table(), k);
            }
        }
        s.boundaries[e] = std::move(node);
    }

    if (const auto* inter = find(config, "interaction")) {
        for (int e = 0; e < 2; ++e) {
            const char* name = (e == 0) ? "b1" : "b2";
            const auto* iv = find(inter->table(), name);
            if (!iv) continue;
            const auto& it = iv->table();
            const std::string kind = get_string(it, "kind", "none");
            if (kind == "none") {
                s.interactions[e] = InteractionSpec::none();
            } else if (kind == "rigid") {
                s.interactions[e] = InteractionSpec::rigid();
            } else if (kind == "spring") {
                const auto* stiff = find(it, "stiffness");
                if (!stiff) throw SpecError("spring interaction needs a stiffness");
                Mat m = parse_matrix(*stiff);
                if (m.rows() == 1 && k > 1) m = Mat::Identity(k, k) * m(0, 0);
                s.interactions[e] = InteractionSpec::spring(std::move(m));
            } else {
                throw SpecError("unknown interaction kind: " + kind);
            }
        }
    }
    if (s.is_2d()) {
        auto& disk = std::get<DiskSpec>(s.interior);
        disk.interaction = s.interactions[0];
    }

    if (const auto* time = find(config, "time")) {
        const auto& tt = time->table();
        s.dt = get_number(tt, "dt", s.dt);
        s.t_end = get_number(tt, "t_end", s.t_end);
        s.cfl_factor = get_number(tt, "cfl_factor", s.cfl_factor);
    }

    if (const auto* init = find(config, "initial")) {
        const auto& it = init->table();
        const std::string field = get_string(it, "field", "zero");
        auto& f = s.initial.field;
        if (field == "zero")
            f.kind = InitialField::Kind::Zero;
        else if (field == "gaussian")
            f.kind = InitialField::Kind::Gaussian;
        else if (field == "sine_mode")
            f.kind = InitialField::Kind::SineMode;
        else if (field == "bessel_mode")
            f.kind = InitialField::Kind::BesselMode;
        else if (field == "custom")
            f.kind = InitialField::Kind::Custom;
        else
            throw SpecError("unknown initial field: " + field);
        f.amplitude = get_number(it, "amplitude", 1.0);
        f.center = get_number(it, "center", 0.0);
        f.width = get_number(it, "width", 1.0);
        f.mode = get_int(it, "mode", 1);
        f.bessel_beta = get_number(it, "bessel_beta", 0.0);
        f.traveling = get_int(it, "traveling", 0);
        if (const auto* w = find(it, "weights")) f.component_weights = parse_vector(*w);
        if (const auto* cp = find(it, "custom_psi")) {
            for (const auto& v : cp->array()) f.custom_psi.push_back(v.number());
        }
        if (const auto* cv = find(it, "custom_psi_dot")) {
            for (const auto& v : cv->array()) f.custom_psi_dot.push_back(v.number());
        }
        if (const auto* bv = find(it, "boundary_value")) {
            const auto& t = bv->table();
            if (const auto* b1 = find(t, "b1")) s.initial.boundary_value[0] = parse_vector(*b1);
            if (const auto* b2 = find(t, "b2")) s.initial.boundary_value[1] = parse_vector(*b2);
        }
        if (const auto* bd = find(it, "boundary_velocity")) {
            const auto& t = bd->table();
            if (const auto* b1 = find(t, "b1")) s.initial.boundary_velocity[0] = parse_vector(*b1);
            if (const auto* b2 = find(t, "b2")) s.initial.boundary_velocity[1] = parse_vector(*b2);
        }
    }

    if (const auto* out = find(config, "output")) {
        const auto& ot = out->table();
        s.output.stride = get_int(ot, "stride", 1);
        s.output.probe_radius = get_number(ot, "probe_radius", 0.5);
        if (const auto* snaps = find(ot, "snapshots")) {
            for (const auto& v : snaps->array()) s.output.snapshot_times.push_back(v.number());
        }
    }
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SpecError("cannot open scenario file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return scenario_from_config(parse_config(ss.str()));
}

}  // namespace wavebound
