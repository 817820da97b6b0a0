#include "fde/report.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fde {

std::string fmt17(double v) {
    char buf[48];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

namespace {

// extended-precision values (shot summaries) keep their full exponent range
std::string fmt17x(long double v) {
    char buf[64];
    int n = std::snprintf(buf, sizeof(buf), "%.17Lg", v);
    return std::string(buf, buf + (n > 0 ? n : 0));
}

}  // namespace

void write_text_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
        out << content;
    }
    fs::rename(tmp, target);
}

std::string render_verdict(const TheoremVerdict& v) {
    std::ostringstream os;
    os << "[check " << to_string(v.id) << "]\n";
    os << "status: " << to_string(v.overall) << "\n";
    for (const auto& c : v.conditions) {
        os << "condition: " << c.id << " status=" << to_string(c.status)
           << " value=" << fmt17(c.value) << " threshold=" << fmt17(c.threshold);
        if (c.or_group > 0) os << " or-group=" << c.or_group;
        if (!c.note.empty()) os << " note=\"" << c.note << "\"";
        os << "\n";
    }
    if (v.p_star) os << "p-star: " << fmt17(*v.p_star) << "\n";
    if (v.lambda_star) os << "lambda-star: " << fmt17(*v.lambda_star) << "\n";
    if (v.M_mu) os << "M-mu: " << fmt17(*v.M_mu) << "\n";
    if (v.M_tau) os << "M-tau: " << fmt17(*v.M_tau) << "\n";
    if (v.c_interval) {
        os << "c-interval: " << (v.c_interval->lo_closed ? '[' : '(')
           << fmt17(v.c_interval->lo) << ',' << fmt17(v.c_interval->hi)
           << (v.c_interval->hi_closed ? ']' : ')') << "\n";
        os << "c-inside: " << (*v.c_inside ? "yes" : "no") << "\n";
    }
    os << "caveat: " << v.caveat << "\n";
    return os.str();
}

std::string render_solve(const SolveResult& res, bool extended, double reach,
                         bool extension_complete) {
    std::ostringstream os;
    os << "[solve]\n";
    os << "converged: " << (res.converged ? "yes" : "no") << "\n";
    os << "n-used: " << res.n_used << "\n";
    os << "cauchy-trace:";
    for (double d : res.cauchy_trace) os << ' ' << fmt17(d);
    os << "\n";
    for (const auto& s : res.shots)
        os << "shot: a=" << fmt17(s.a) << " v=" << fmt17x(s.v)
           << " terminal=" << fmt17(s.terminal) << " iterations=" << s.iterations
           << " brackets=" << s.brackets_found << " scan-range=[" << fmt17(s.scan_min) << ','
           << fmt17(s.scan_max) << "]\n";
    os << "clamp-active: " << (res.clamp_active ? "yes" : "no") << "\n";
    os << "clamp-excursion: " << fmt17(res.clamp_excursion) << "\n";
    if (!res.failure_note.empty()) os << "failure: " << res.failure_note << "\n";
    if (extended) {
        os << "extension-complete: " << (extension_complete ? "yes" : "no") << "\n";
        os << "extension-reach: " << fmt17(reach) << "\n";
        if (!extension_complete) os << "failure: blow-up before the forward horizon\n";
    }
    return os.str();
}

std::string render_properties(const PropertyReport& rep) {
    std::ostringstream os;
    os << "[properties]\n";
    os << "bounds: min=" << fmt17(rep.bounds.min) << " max=" << fmt17(rep.bounds.max)
       << " pass=" << (rep.bounds.pass ? "yes" : "no") << "\n";
    os << "left-min: " << fmt17(rep.left_min) << "\n";
    os << "strict-positive-left: " << (rep.strict_positive_left ? "yes" : "no") << "\n";
    os << "forward-min: " << fmt17(rep.forward_min) << "\n";
    os << "positive-forward: " << (rep.positive_forward ? "yes" : "no") << "\n";
    os << "monotone: min-slope=" << fmt17(rep.monotone.min_slope)
       << " pass=" << (rep.monotone.pass ? "yes" : "no") << "\n";
    os << "left-limit: value=" << fmt17(rep.left_limit.value)
       << " spread=" << fmt17(rep.left_limit.spread)
       << " slope=" << fmt17(rep.left_limit.slope) << " status="
       << (rep.left_limit.status == TailStatus::converged ? "converged" : "unresolved")
       << "\n";
    const char* kind = rep.right_end.kind == RightEndKind::limit_to_kappa ? "limit-to-kappa"
                       : rep.right_end.kind == RightEndKind::oscillates  ? "oscillates-about-kappa"
                                                                         : "other";
    os << "right-end: kind=" << kind << " crossings=" << rep.right_end.crossings
       << " estimate=" << fmt17(rep.right_end.estimate) << "\n";
    for (const auto& [level, resid] : rep.equilibrium_residuals)
        os << "equilibrium-residual: level=" << fmt17(level) << " value=" << fmt17(resid)
           << "\n";
    return os.str();
}

void write_trajectory(const std::string& path, const Trajectory& traj, std::size_t max_rows,
                      bool full_density) {
    std::ostringstream os;
    os << "t,u,du\n";
    std::size_t n = traj.knot_count();
    std::size_t stride = 1;
    if (!full_density && max_rows >= 2 && n > max_rows)
        stride = (n + max_rows - 1) / max_rows;
    for (std::size_t i = 0; i < n; ++i) {
        if (stride > 1 && i % stride != 0 && i + 1 != n) continue;
        os << fmt17(traj.knot_time(i)) << ',' << fmt17(traj.knot_value(i)) << ','
           << fmt17(traj.knot_deriv(i)) << "\n";
    }
    write_text_atomic(path, os.str());
}

Trajectory read_trajectory(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open trajectory file '" + path + "'");
    std::string line;
    if (!std::getline(in, line) || line != "t,u,du")
        throw std::runtime_error("trajectory file '" + path + "': bad header");
    std::vector<double> ts, us, ds;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        double v[3];
        const char* p = line.data();
        const char* end = p + line.size();
        for (int k = 0; k < 3; ++k) {
            auto res = std::from_chars(p, end, v[k]);
            if (res.ec != std::errc())
                throw std::runtime_error("trajectory file '" + path + "' line " +
                                         std::to_string(lineno) + ": bad number");
            p = res.ptr;
            if (k < 2) {
                if (p == end || *p != ',')
                    throw std::runtime_error("trajectory file '" + path + "' line " +
                                             std::to_string(lineno) + ": expected comma");
                ++p;
            }
        }
        ts.push_back(v[0]);
        us.push_back(v[1]);
        ds.push_back(v[2]);
    }
    if (ts.empty()) throw std::runtime_error("trajectory file '" + path + "': no rows");
    if (ts.size() == 1) return Trajectory::point(ts[0], us[0]);
    std::vector<double> dl(ds.begin(), ds.end() - 1);
    std::vector<double> dr(ds.begin() + 1, ds.end());
    return Trajectory(std::move(ts), std::move(us), std::move(dl), std::move(dr));
}

}  // namespace fde
