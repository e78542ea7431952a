#include "hallmild/config.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace hallmild {

namespace {

struct Entry {
    std::string value;
    int line;
    bool used = false;
};

using Table = std::map<std::string, Entry>;  // key "section.key"

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

Table tokenize(const std::string& text) {
    Table table;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int ln = 0;
    while (std::getline(in, line)) {
        ++ln;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("config line " + std::to_string(ln) + ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty())
                throw ConfigError("config line " + std::to_string(ln) + ": empty section name");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(ln) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("config line " + std::to_string(ln) + ": empty key or value");
        if (section.empty())
            throw ConfigError("config line " + std::to_string(ln) + ": key outside any section");
        const std::string full = section + "." + key;
        if (table.count(full))
            throw ConfigError("config line " + std::to_string(ln) + ": duplicate key '" + full + "'");
        table[full] = Entry{value, ln};
    }
    return table;
}

class Reader {
public:
    explicit Reader(Table t) : table_(std::move(t)) {}

    template <typename T>
    void get(const std::string& key, T& out) {
        auto it = table_.find(key);
        if (it == table_.end()) return;
        it->second.used = true;
        parse(key, it->second, out);
    }

    void finish() const {
        for (const auto& [key, entry] : table_)
            if (!entry.used)
                throw ConfigError("config line " + std::to_string(entry.line) + ": unknown key '" +
                                  key + "'");
    }

private:
    static void parse(const std::string& key, const Entry& e, double& out) {
        try {
            std::size_t pos = 0;
            out = std::stod(e.value, &pos);
            if (pos != e.value.size()) throw std::invalid_argument("trailing");
        } catch (...) {
            throw ConfigError("config line " + std::to_string(e.line) + ": key '" + key +
                              "' expects a number, got '" + e.value + "'");
        }
    }
    static void parse(const std::string& key, const Entry& e, int& out) {
        try {
            std::size_t pos = 0;
            out = std::stoi(e.value, &pos);
            if (pos != e.value.size()) throw std::invalid_argument("trailing");
        } catch (...) {
            throw ConfigError("config line " + std::to_string(e.line) + ": key '" + key +
                              "' expects an integer, got '" + e.value + "'");
        }
    }
    static void parse(const std::string& key, const Entry& e, std::uint64_t& out) {
        try {
            std::size_t pos = 0;
            out = std::stoull(e.value, &pos);
            if (pos != e.value.size()) throw std::invalid_argument("trailing");
        } catch (...) {
            throw ConfigError("config line " + std::to_string(e.line) + ": key '" + key +
                              "' expects an unsigned integer, got '" + e.value + "'");
        }
    }
    static void parse(const std::string&, const Entry& e, std::string& out) { out = e.value; }
    static void parse(const std::string& key, const Entry& e, bool& out) {
        if (e.value == "true" || e.value == "1")
            out = true;
        else if (e.value == "false" || e.value == "0")
            out = false;
        else
            throw ConfigError("config line " + std::to_string(e.line) + ": key '" + key +
                              "' expects true/false");
    }

    Table table_;
};

}  // namespace

RunConfig parse_config_text(const std::string& text) {
    RunConfig cfg;
    Reader r(tokenize(text));

    r.get("grid.n", cfg.solver.n);
    r.get("grid.box_length", cfg.solver.box_length);

    r.get("time.t_final", cfg.solver.tg.t_final);
    r.get("time.n_steps", cfg.solver.tg.n_steps);
    r.get("time.quad_order", cfg.solver.tg.quad_order);

    r.get("solver.p", cfg.solver.p);
    r.get("solver.q", cfg.solver.q);
    r.get("solver.alpha", cfg.solver.alpha);
    r.get("solver.max_iterations", cfg.solver.max_iterations);
    r.get("solver.tol", cfg.solver.tol);
    r.get("solver.ceiling", cfg.solver.ceiling);
    r.get("solver.ext_order", cfg.solver.ext_order);

    r.get("data.family", cfg.family);
    r.get("data.amplitude", cfg.amplitude);
    r.get("data.seed", cfg.seed);
    r.get("data.band_lo", cfg.data_params.band_lo);
    r.get("data.band_hi", cfg.data_params.band_hi);
    r.get("data.bump_width", cfg.data_params.bump_width);

    r.get("imex.dt", cfg.imex.dt);
    r.get("imex.steps", cfg.imex.steps);
    std::string scheme = "cnab2";
    r.get("imex.scheme", scheme);
    if (scheme == "euler")
        cfg.imex.scheme = ImexScheme::Euler;
    else if (scheme == "cnab2")
        cfg.imex.scheme = ImexScheme::Cnab2;
    else
        throw ConfigError("config: imex.scheme must be euler or cnab2");
    r.get("imex.c_stab", cfg.imex.c_stab);

    r.get("battery.corpus_size", cfg.battery.corpus_size);
    r.get("battery.n", cfg.battery.n);
    r.get("battery.n_steps", cfg.battery.n_steps);
    r.get("battery.t_final", cfg.battery.t_final);

    r.get("output.directory", cfg.output_dir);
    r.finish();

    cfg.solver.validate();
    cfg.imex.validate();
    cfg.battery.ext_order = cfg.solver.ext_order;
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

std::string config_to_text(const RunConfig& cfg) {
    std::ostringstream os;
    os.precision(17);
    os << "[grid]\n"
       << "n = " << cfg.solver.n << "\n"
       << "box_length = " << cfg.solver.box_length << "\n"
       << "[time]\n"
       << "t_final = " << cfg.solver.tg.t_final << "\n"
       << "n_steps = " << cfg.solver.tg.n_steps << "\n"
       << "quad_order = " << cfg.solver.tg.quad_order << "\n"
       << "[solver]\n"
       << "p = " << cfg.solver.p << "\n"
       << "q = " << cfg.solver.q << "\n"
       << "alpha = " << cfg.solver.alpha << "\n"
       << "max_iterations = " << cfg.solver.max_iterations << "\n"
       << "tol = " << cfg.solver.tol << "\n"
       << "ceiling = " << cfg.solver.ceiling << "\n"
       << "ext_order = " << cfg.solver.ext_order << "\n"
       << "[data]\n"
       << "family = " << cfg.family << "\n"
       << "amplitude = " << cfg.amplitude << "\n"
       << "seed = " << cfg.seed << "\n"
       << "band_lo = " << cfg.data_params.band_lo << "\n"
       << "band_hi = " << cfg.data_params.band_hi << "\n"
       << "bump_width = " << cfg.data_params.bump_width << "\n"
       << "[imex]\n"
       << "dt = " << cfg.imex.dt << "\n"
       << "steps = " << cfg.imex.steps << "\n"
       << "scheme = " << (cfg.imex.scheme == ImexScheme::Euler ? "euler" : "cnab2") << "\n"
       << "c_stab = " << cfg.imex.c_stab << "\n"
       << "[battery]\n"
       << "corpus_size = " << cfg.battery.corpus_size << "\n"
       << "n = " << cfg.battery.n << "\n"
       << "n_steps = " << cfg.battery.n_steps << "\n"
       << "t_final = " << cfg.battery.t_final << "\n"
       << "[output]\n"
       << "directory = " << cfg.output_dir << "\n";
    return os.str();
}

}  // namespace hallmild
