#include "fde/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "fde/models.hpp"

namespace fde {

CoeffFunction CoeffSpec::to_coeff(double t0) const {
    switch (kind) {
        case Kind::number: return CoeffFunction::constant(value);
        case Kind::table: return CoeffFunction::table(ts, vs);
        case Kind::step: return CoeffFunction::step_left(t0, 1.0, 0.0);
        case Kind::unset: break;
    }
    throw scenario_error("coefficient value required but not set");
}

double CoeffSpec::as_number(const std::string& what) const {
    if (kind != Kind::number)
        throw scenario_error(what + " must be a plain number here");
    return value;
}

namespace {

struct Line {
    int number;
    std::string key, value;  // value empty for '}' closers
    bool opener = false, closer = false;
};

[[noreturn]] void fail(const std::string& name, int line, const std::string& msg) {
    std::ostringstream os;
    os << name << ":" << line << ": " << msg;
    throw scenario_error(os.str());
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& name, int line, const std::string& s) {
    const char* b = s.data();
    const char* e = b + s.size();
    double v = 0.0;
    auto res = std::from_chars(b, e, v);
    if (res.ec != std::errc() || res.ptr != e)
        fail(name, line, "expected a number, got '" + s + "'");
    return v;
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string w;
    while (is >> w) out.push_back(w);
    return out;
}

// "(a,b) (c,d)" -> pair list
std::vector<std::pair<double, double>> parse_pairs(const std::string& name, int line,
                                                   const std::string& s) {
    std::vector<std::pair<double, double>> out;
    std::size_t pos = 0;
    while (pos < s.size()) {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos >= s.size()) break;
        if (s[pos] != '(') fail(name, line, "expected '(' in pair list");
        std::size_t close = s.find(')', pos);
        if (close == std::string::npos) fail(name, line, "unterminated pair");
        std::string body = s.substr(pos + 1, close - pos - 1);
        std::size_t comma = body.find(',');
        if (comma == std::string::npos) fail(name, line, "pair needs a comma");
        out.emplace_back(parse_number(name, line, trim(body.substr(0, comma))),
                         parse_number(name, line, trim(body.substr(comma + 1))));
        pos = close + 1;
    }
    return out;
}

CoeffSpec number_spec(double v) {
    CoeffSpec c;
    c.kind = CoeffSpec::Kind::number;
    c.value = v;
    return c;
}

CoeffSpec parse_coeff_value(const std::string& name, int line, const std::string& raw,
                            bool allow_step) {
    CoeffSpec c;
    if (raw == "step") {
        if (!allow_step) fail(name, line, "'step' not valid for this key");
        c.kind = CoeffSpec::Kind::step;
        return c;
    }
    if (!raw.empty() && raw.front() == '(') {
        auto pairs = parse_pairs(name, line, raw);
        c.kind = CoeffSpec::Kind::table;
        for (auto [t, v] : pairs) {
            c.ts.push_back(t);
            c.vs.push_back(v);
        }
        return c;
    }
    return number_spec(parse_number(name, line, raw));
}

}  // namespace

Scenario parse_scenario_text(const std::string& text, const std::string& name) {
    Scenario sc;
    sc.name = name;
    std::istringstream is(text);
    std::string raw;
    int lineno = 0;
    std::string section;
    bool saw_model = false, saw_anchor = false;

    while (std::getline(is, raw)) {
        ++lineno;
        std::string line = raw;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        if (section.empty()) {
            if (line.size() >= 2 && line.back() == '{') {
                section = trim(line.substr(0, line.size() - 1));
                if (section != "model" && section != "anchor" && section != "solve" &&
                    section != "check" && section != "verify" && section != "outputs")
                    fail(name, lineno, "unknown section '" + section + "'");
                if (section == "model") saw_model = true;
                if (section == "anchor") saw_anchor = true;
                continue;
            }
            fail(name, lineno, "expected a section opener 'name {'");
        }
        if (line == "}") {
            section.clear();
            continue;
        }
        std::size_t eq = line.find('=');
        if (eq == std::string::npos) fail(name, lineno, "expected 'key = value'");
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty()) fail(name, lineno, "empty key or value");

        auto num = [&] { return parse_number(name, lineno, val); };

        if (section == "model") {
            ModelSpec& m = sc.model;
            if (key == "id") m.id = val;
            else if (key == "G") m.G = val;
            else if (key == "p") m.p = num();
            else if (key == "a") m.a = num();
            else if (key == "beta") m.beta = num();
            else if (key == "n") m.n_exp = num();
            else if (key == "kappa") m.kappa = num();
            else if (key == "tau") m.tau = parse_coeff_value(name, lineno, val, false);
            else if (key == "wave_speed") m.wave_speed = num();
            else if (key == "r") m.r = num();
            else if (key == "g0") m.g0 = parse_coeff_value(name, lineno, val, false);
            else if (key == "lam_exp") m.lam_exp = num();
            else if (key == "kernel") m.kernel = parse_pairs(name, lineno, val);
            else if (key == "nu_delay") m.nu_delay = num();
            else if (key == "p0") m.p0 = parse_coeff_value(name, lineno, val, true);
            else if (key == "p1") m.p1 = parse_coeff_value(name, lineno, val, true);
            else if (key == "delay0") m.delay0 = parse_coeff_value(name, lineno, val, false);
            else if (key == "delay1") m.delay1 = parse_coeff_value(name, lineno, val, false);
            else if (key == "h") m.h = val;
            else fail(name, lineno, "unknown key '" + key + "' in section 'model'");
        } else if (section == "anchor") {
            if (key == "t0") sc.t0 = num();
            else if (key == "c") sc.c = num();
            else fail(name, lineno, "unknown key '" + key + "' in section 'anchor'");
        } else if (section == "solve") {
            SolveConfig& s = sc.solve;
            if (key == "step") s.step = num();
            else if (key == "truncations") {
                s.a_list.clear();
                for (const auto& w : split_ws(val))
                    s.a_list.push_back(parse_number(name, lineno, w));
            } else if (key == "max_truncations") s.max_truncations = static_cast<int>(num());
            else if (key == "compact_window") s.compact_window = num();
            else if (key == "cauchy_tol") s.cauchy_tol = num();
            else if (key == "shoot_tol") s.shoot_tol = num();
            else if (key == "shoot_max_iter") s.shoot_max_iter = static_cast<int>(num());
            else if (key == "forward_horizon") s.forward_horizon = num();
            else if (key == "blow_limit") s.blow_limit = num();
            else fail(name, lineno, "unknown key '" + key + "' in section 'solve'");
        } else if (section == "check") {
            if (key == "theorems") {
                sc.check.theorems.clear();
                for (const auto& w : split_ws(val)) {
                    auto id = theorem_from_string(w);
                    if (!id) fail(name, lineno, "unknown theorem id '" + w + "'");
                    sc.check.theorems.push_back(*id);
                }
            } else if (key == "window") sc.check.window = num();
            else if (key == "grid_step") sc.check.grid_step = num();
            else fail(name, lineno, "unknown key '" + key + "' in section 'check'");
        } else if (section == "verify") {
            VerifyConfig& v = sc.verify;
            if (key == "left_window") v.windows.left_window = num();
            else if (key == "tail_fraction") v.windows.tail_fraction = num();
            else if (key == "right_fraction") v.windows.right_fraction = num();
            else if (key == "band_tol") v.windows.band_tol = num();
            else if (key == "monotone_tol") v.windows.monotone_tol = num();
            else if (key == "band_lo") v.band_lo = num();
            else if (key == "band_hi") v.band_hi = num();
            else if (key == "expect_band") v.expect_band = (val == "true");
            else if (key == "expect_strict_positive_left")
                v.expect_strict_positive_left = (val == "true");
            else if (key == "expect_positive_forward")
                v.expect_positive_forward = (val == "true");
            else if (key == "expect_monotone_left") v.expect_monotone_left = (val == "true");
            else if (key == "expect_left_limit_max") v.expect_left_limit_max = num();
            else if (key == "expect_right_end") {
                if (val == "limit") v.expect_right_end = RightEndExpect::limit;
                else if (val == "oscillation") v.expect_right_end = RightEndExpect::oscillation;
                else if (val == "limit-or-oscillation")
                    v.expect_right_end = RightEndExpect::limit_or_oscillation;
                else if (val == "none") v.expect_right_end = RightEndExpect::none;
                else fail(name, lineno, "unknown right-end expectation '" + val + "'");
            } else fail(name, lineno, "unknown key '" + key + "' in section 'verify'");
        } else if (section == "outputs") {
            if (key == "trajectory") sc.outputs.trajectory = val;
            else if (key == "report") sc.outputs.report = val;
            else if (key == "full_density") sc.outputs.full_density = (val == "true");
            else if (key == "max_rows") sc.outputs.max_rows = static_cast<std::size_t>(num());
            else fail(name, lineno, "unknown key '" + key + "' in section 'outputs'");
        }
    }
    if (!section.empty()) fail(name, lineno, "unterminated section '" + section + "'");
    if (!saw_model || !saw_anchor)
        throw scenario_error(name + ": sections 'model' and 'anchor' are required");
    if (sc.model.id.empty()) throw scenario_error(name + ": model.id is required");
    return sc;
}

Scenario parse_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw scenario_error("cannot open scenario file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_scenario_text(ss.str(), path);
}

namespace {

ScalarMap build_G(const ModelSpec& m) {
    if (m.G == "power") return make_power_monostable(m.p, m.kappa);
    if (m.G == "nicholson") return make_nicholson(m.p, m.a);
    if (m.G == "mackey-glass") return make_mackey_glass(m.beta, m.n_exp);
    if (m.G == "linear") return make_linear_map(m.p);
    throw scenario_error("unknown nonlinearity kind '" + m.G + "'");
}

}  // namespace

Equation Scenario::build() const {
    const ModelSpec& m = model;
    if (m.id == "delay-G") {
        if (!m.tau.set()) throw scenario_error("delay-G model needs 'tau'");
        return make_delay_eq(build_G(m), m.tau.to_coeff(t0), t0, c, m.kappa);
    }
    if (m.id == "wavefront")
        return make_wavefront(build_G(m), m.wave_speed, m.r, t0, c, m.kappa);
    if (m.id == "logistic") {
        if (m.kernel.empty()) throw scenario_error("logistic model needs 'kernel'");
        double max_delay = 0.0;
        DistributedTerm term;
        for (auto [d, w] : m.kernel) {
            if (d < 0.0) throw scenario_error("kernel delays must be non-negative");
            if (w < 0.0) throw scenario_error("kernel masses must be non-negative");
            term.atoms.push_back(
                {CoeffFunction::constant(d), CoeffFunction::constant(w).nonnegative()});
            max_delay = std::max(max_delay, d);
        }
        double nu_lag = m.nu_delay >= 0.0 ? m.nu_delay : max_delay;
        CoeffFunction nu = CoeffFunction::retarded_by(CoeffFunction::constant(nu_lag));
        CoeffFunction g0 =
            m.g0.set() ? m.g0.to_coeff(t0) : CoeffFunction::constant(1.0);
        double horizon = std::max(200.0, solve.forward_horizon - t0 + 10.0);
        return make_logistic(g0, nu, std::move(term), m.kappa, m.lam_exp, t0, c, horizon);
    }
    if (m.id == "deviating-general") {
        CoeffFunction p0 =
            m.p0.set() ? m.p0.to_coeff(t0) : CoeffFunction::constant(1.0);
        CoeffFunction p1 =
            m.p1.set() ? m.p1.to_coeff(t0) : CoeffFunction::constant(1.0);
        CoeffFunction d0 =
            m.delay0.set() ? m.delay0.to_coeff(t0) : CoeffFunction::constant(0.0);
        CoeffFunction d1 =
            m.delay1.set() ? m.delay1.to_coeff(t0) : CoeffFunction::constant(0.0);
        std::optional<ScalarMap> G;
        if (m.h == "G") G = build_G(m);
        else if (m.h != "zero")
            throw scenario_error("deviating-general 'h' must be 'G' or 'zero'");
        return make_general(p0, p1, CoeffFunction::retarded_by(d0),
                            CoeffFunction::retarded_by(d1), G, t0, c, m.kappa);
    }
    throw scenario_error("unknown model id '" + m.id + "'");
}

void Scenario::set_param(const std::string& path, double value) {
    if (path == "model.tau") model.tau = number_spec(value);
    else if (path == "model.p") model.p = value;
    else if (path == "model.a") model.a = value;
    else if (path == "model.beta") model.beta = value;
    else if (path == "model.n") model.n_exp = value;
    else if (path == "model.kappa") model.kappa = value;
    else if (path == "model.wave_speed") model.wave_speed = value;
    else if (path == "model.r") model.r = value;
    else if (path == "model.lam_exp") model.lam_exp = value;
    else if (path == "model.nu_delay") model.nu_delay = value;
    else if (path == "model.g0") model.g0 = number_spec(value);
    else if (path == "anchor.t0") t0 = value;
    else if (path == "anchor.c") c = value;
    else if (path == "solve.step") solve.step = value;
    else if (path == "solve.compact_window") solve.compact_window = value;
    else if (path == "solve.cauchy_tol") solve.cauchy_tol = value;
    else if (path == "solve.shoot_tol") solve.shoot_tol = value;
    else if (path == "solve.forward_horizon") solve.forward_horizon = value;
    else if (path == "check.window") check.window = value;
    else if (path == "check.grid_step") check.grid_step = value;
    else throw scenario_error("unknown or non-scalar parameter path '" + path + "'");
}

}  // namespace fde
