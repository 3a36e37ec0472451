#include "wlab/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

namespace wlab {

namespace {

std::string join(const std::vector<std::string>& v) {
    std::string out = "invalid configuration:";
    for (const auto& s : v) out += "\n  - " + s;
    return out;
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// One flat section -> key -> raw value store with consumption tracking, so
// unknown keys can be reported exhaustively after the known ones are pulled.
struct RawConfig {
    std::map<std::string, std::map<std::string, std::string>> sections;
    std::set<std::pair<std::string, std::string>> consumed;
    std::vector<std::string>* problems;

    bool has(const std::string& sec, const std::string& key) {
        auto s = sections.find(sec);
        return s != sections.end() && s->second.count(key) > 0;
    }

    std::string take(const std::string& sec, const std::string& key) {
        consumed.insert({sec, key});
        return sections.at(sec).at(key);
    }

    double take_double(const std::string& sec, const std::string& key,
                       double fallback, bool required) {
        if (!has(sec, key)) {
            if (required)
                problems->push_back("missing required key [" + sec + "] " + key);
            return fallback;
        }
        const std::string raw = take(sec, key);
        try {
            std::size_t pos = 0;
            const double v = std::stod(raw, &pos);
            if (pos != raw.size()) throw std::invalid_argument("trailing text");
            return v;
        } catch (const std::exception&) {
            problems->push_back("[" + sec + "] " + key + " = '" + raw +
                                "' is not a number");
            return fallback;
        }
    }

    int take_int(const std::string& sec, const std::string& key, int fallback,
                 bool required) {
        const double v = take_double(sec, key, fallback, required);
        if (v != std::floor(v)) {
            problems->push_back("[" + sec + "] " + key + " must be an integer");
            return fallback;
        }
        return static_cast<int>(v);
    }

    std::string take_string(const std::string& sec, const std::string& key,
                            const std::string& fallback, bool required) {
        if (!has(sec, key)) {
            if (required)
                problems->push_back("missing required key [" + sec + "] " + key);
            return fallback;
        }
        return take(sec, key);
    }

    bool take_bool(const std::string& sec, const std::string& key,
                   bool fallback) {
        if (!has(sec, key)) return fallback;
        const std::string raw = take(sec, key);
        if (raw == "true" || raw == "1") return true;
        if (raw == "false" || raw == "0") return false;
        problems->push_back("[" + sec + "] " + key + " = '" + raw +
                            "' is not a boolean (true/false)");
        return fallback;
    }

    void report_unconsumed() {
        for (const auto& [sec, kv] : sections)
            for (const auto& [key, value] : kv)
                if (!consumed.count({sec, key}))
                    problems->push_back("unknown key [" + sec + "] " + key);
    }
};

const std::set<std::string> known_sections = {"grid", "potential", "initial",
                                              "run", "output"};

}  // namespace

ConfigError::ConfigError(std::vector<std::string> violations)
    : std::runtime_error(join(violations)), violations_(std::move(violations)) {}

ExperimentConfig parse_config(const std::string& text) {
    std::vector<std::string> problems;
    RawConfig raw;
    raw.problems = &problems;

    std::istringstream in(text);
    std::string line, section;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[') {
            if (t.back() != ']') {
                problems.push_back("line " + std::to_string(line_no) +
                                   ": malformed section header '" + t + "'");
                continue;
            }
            section = trim(t.substr(1, t.size() - 2));
            if (!known_sections.count(section))
                problems.push_back("unknown section [" + section + "]");
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos) {
            problems.push_back("line " + std::to_string(line_no) +
                               ": expected 'key = value', got '" + t + "'");
            continue;
        }
        if (section.empty()) {
            problems.push_back("line " + std::to_string(line_no) +
                               ": key outside any [section]");
            continue;
        }
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (!known_sections.count(section)) continue;  // already reported
        if (raw.sections[section].count(key))
            problems.push_back("duplicate key [" + section + "] " + key);
        raw.sections[section][key] = value;
    }

    ExperimentConfig c;

    c.nx = raw.take_int("grid", "nx", 0, true);
    c.np = raw.take_int("grid", "np", 0, true);
    c.x_min = raw.take_double("grid", "x_min", 0.0, true);
    c.x_max = raw.take_double("grid", "x_max", 0.0, true);
    c.p_min = raw.take_double("grid", "p_min", 0.0, true);
    c.p_max = raw.take_double("grid", "p_max", 0.0, true);
    c.hbar = raw.take_double("grid", "hbar", 1.0, false);

    const std::string family =
        raw.take_string("potential", "family", "", true);
    if (family == "free") {
        c.family = PotentialFamily::free_particle;
    } else if (family == "linear") {
        c.family = PotentialFamily::linear;
        c.linear_g = raw.take_double("potential", "g", 0.0, true);
    } else if (family == "harmonic") {
        c.family = PotentialFamily::harmonic;
        c.harmonic_m = raw.take_double("potential", "m", 0.0, true);
        c.harmonic_omega = raw.take_double("potential", "omega", 0.0, true);
    } else if (family == "quartic") {
        c.family = PotentialFamily::quartic;
        c.quartic_lambda = raw.take_double("potential", "lambda", 0.0, true);
        c.harmonic_m = raw.take_double("potential", "m", 0.0, false);
        c.harmonic_omega = raw.take_double("potential", "omega", 0.0, false);
    } else if (family == "polynomial") {
        c.family = PotentialFamily::polynomial;
        const std::string coeffs =
            raw.take_string("potential", "coeffs", "", true);
        std::istringstream cs(coeffs);
        double v = 0.0;
        while (cs >> v) c.poly_coeffs.push_back(v);
        if (!cs.eof())
            problems.push_back("[potential] coeffs: could not parse '" + coeffs +
                               "'");
        if (c.poly_coeffs.size() > static_cast<std::size_t>(Potential::max_degree) + 1)
            problems.push_back("[potential] coeffs: polynomial capped at degree " +
                               std::to_string(Potential::max_degree));
    } else if (!family.empty()) {
        problems.push_back("[potential] family '" + family +
                           "' is not one of free/linear/harmonic/quartic/polynomial");
    }

    c.x0 = raw.take_double("initial", "x0", 0.0, true);
    c.p0 = raw.take_double("initial", "p0", 0.0, true);
    c.sigma_x = raw.take_double("initial", "sigma_x", 0.0, true);

    const std::string mech = raw.take_string("run", "mechanics", "", true);
    if (mech == "classical")
        c.mechanics = RunMechanics::classical;
    else if (mech == "quantum")
        c.mechanics = RunMechanics::quantum;
    else if (mech == "both")
        c.mechanics = RunMechanics::both;
    else if (!mech.empty())
        problems.push_back("[run] mechanics '" + mech +
                           "' is not one of classical/quantum/both");

    c.dt = raw.take_double("run", "dt", 0.0, true);
    c.t_final = raw.take_double("run", "t_final", 0.0, true);
    c.mass = raw.take_double("run", "m", 1.0, true);
    c.record_every = raw.take_int("run", "record_every", 100, false);

    c.directory = raw.take_string("output", "directory", "out", false);
    const std::string fmt =
        raw.take_string("output", "snapshot_format", "none", false);
    if (fmt == "none")
        c.snapshot_format = SnapshotFormat::none;
    else if (fmt == "csv")
        c.snapshot_format = SnapshotFormat::csv;
    else if (fmt == "bin")
        c.snapshot_format = SnapshotFormat::binary;
    else if (fmt == "both")
        c.snapshot_format = SnapshotFormat::both;
    else
        problems.push_back("[output] snapshot_format '" + fmt +
                           "' is not one of none/csv/bin/both");
    c.snapshot_every = raw.take_int("output", "snapshot_every", 0, false);
    c.write_hydro = raw.take_bool("output", "write_hydro", false);

    raw.report_unconsumed();

    // Module preconditions, checked here so a bad config fails up front.
    if (!power_of_two(c.nx) || c.nx < 8)
        problems.push_back("nx must be a power of two >= 8");
    if (!power_of_two(c.np) || c.np < 8)
        problems.push_back("np must be a power of two >= 8");
    if (c.x_max <= c.x_min) problems.push_back("x_max must exceed x_min");
    if (c.p_max <= c.p_min) problems.push_back("p_max must exceed p_min");
    if (c.hbar <= 0.0) problems.push_back("hbar must be positive");
    if (c.sigma_x <= 0.0) problems.push_back("sigma_x must be positive");
    if (c.dt <= 0.0) problems.push_back("dt must be positive");
    if (c.t_final <= 0.0) problems.push_back("t_final must be positive");
    if (c.mass <= 0.0) problems.push_back("m must be positive");
    if (c.record_every < 1) problems.push_back("record_every must be >= 1");
    if (c.snapshot_every < 0) problems.push_back("snapshot_every must be >= 0");
    if (c.snapshot_every > 0 && c.record_every > 0 &&
        c.snapshot_every % c.record_every != 0)
        problems.push_back("snapshot_every must be a multiple of record_every");

    if (c.dt > 0.0 && c.t_final > 0.0) {
        const double steps = c.t_final / c.dt;
        c.n_steps = static_cast<int>(std::llround(steps));
        if (c.n_steps < 1 || std::abs(steps - c.n_steps) > 1e-6)
            problems.push_back("t_final must be an integer multiple of dt");
    }

    if (c.sigma_x > 0.0 && c.x_max > c.x_min) {
        if (c.x0 - 4.0 * c.sigma_x < c.x_min || c.x0 + 4.0 * c.sigma_x > c.x_max)
            problems.push_back("initial state needs >= 4 sigma_x margin in x");
        const double sigma_p = 0.5 * c.hbar / c.sigma_x;
        if (c.p0 - 4.0 * sigma_p < c.p_min || c.p0 + 4.0 * sigma_p > c.p_max)
            problems.push_back("initial state needs >= 4 sigma_p margin in p");
    }

    if (!problems.empty()) throw ConfigError(std::move(problems));
    return c;
}

PhaseSpaceGrid ExperimentConfig::make_grid() const {
    return build_phase_space_grid(nx, np, x_min, x_max, p_min, p_max, hbar);
}

Potential ExperimentConfig::make_potential() const {
    switch (family) {
        case PotentialFamily::free_particle: return Potential::free_particle();
        case PotentialFamily::linear: return Potential::linear(linear_g);
        case PotentialFamily::harmonic:
            return Potential::harmonic(harmonic_m, harmonic_omega);
        case PotentialFamily::quartic:
            return Potential::quartic(quartic_lambda, harmonic_m, harmonic_omega);
        case PotentialFamily::polynomial: return Potential::polynomial(poly_coeffs);
    }
    throw std::logic_error("unreachable");
}

PropagatorConfig ExperimentConfig::make_propagator_config(Mechanics mech) const {
    PropagatorConfig pc;
    pc.mechanics = mech;
    pc.dt = dt;
    pc.n_steps = n_steps;
    pc.mass = mass;
    pc.potential = make_potential();
    pc.record_every = record_every;
    return pc;
}

std::string to_string(RunMechanics m) {
    switch (m) {
        case RunMechanics::classical: return "classical";
        case RunMechanics::quantum: return "quantum";
        case RunMechanics::both: return "both";
    }
    return "?";
}

std::string to_string(SnapshotFormat f) {
    switch (f) {
        case SnapshotFormat::none: return "none";
        case SnapshotFormat::csv: return "csv";
        case SnapshotFormat::binary: return "bin";
        case SnapshotFormat::both: return "both";
    }
    return "?";
}

std::string render_config(const ExperimentConfig& c) {
    std::ostringstream out;
    if (!c.preset.empty()) out << "# preset: " << c.preset << "\n";
    out << "[grid]\n";
    out << "nx = " << c.nx << "\n";
    out << "np = " << c.np << "\n";
    out << "x_min = " << fmt17(c.x_min) << "\n";
    out << "x_max = " << fmt17(c.x_max) << "\n";
    out << "p_min = " << fmt17(c.p_min) << "\n";
    out << "p_max = " << fmt17(c.p_max) << "\n";
    out << "hbar = " << fmt17(c.hbar) << "\n";
    out << "\n[potential]\n";
    out << "family = " << to_string(c.family) << "\n";
    switch (c.family) {
        case PotentialFamily::free_particle: break;
        case PotentialFamily::linear:
            out << "g = " << fmt17(c.linear_g) << "\n";
            break;
        case PotentialFamily::harmonic:
            out << "m = " << fmt17(c.harmonic_m) << "\n";
            out << "omega = " << fmt17(c.harmonic_omega) << "\n";
            break;
        case PotentialFamily::quartic:
            out << "lambda = " << fmt17(c.quartic_lambda) << "\n";
            out << "m = " << fmt17(c.harmonic_m) << "\n";
            out << "omega = " << fmt17(c.harmonic_omega) << "\n";
            break;
        case PotentialFamily::polynomial: {
            out << "coeffs =";
            for (double v : c.poly_coeffs) out << " " << fmt17(v);
            out << "\n";
            break;
        }
    }
    out << "\n[initial]\n";
    out << "x0 = " << fmt17(c.x0) << "\n";
    out << "p0 = " << fmt17(c.p0) << "\n";
    out << "sigma_x = " << fmt17(c.sigma_x) << "\n";
    out << "\n[run]\n";
    out << "mechanics = " << to_string(c.mechanics) << "\n";
    out << "dt = " << fmt17(c.dt) << "\n";
    out << "t_final = " << fmt17(c.t_final) << "\n";
    out << "m = " << fmt17(c.mass) << "\n";
    out << "record_every = " << c.record_every << "\n";
    out << "\n[output]\n";
    out << "directory = " << c.directory << "\n";
    out << "snapshot_format = " << to_string(c.snapshot_format) << "\n";
    out << "snapshot_every = " << c.snapshot_every << "\n";
    out << "write_hydro = " << (c.write_hydro ? "true" : "false") << "\n";
    return out.str();
}

}  // namespace wlab
