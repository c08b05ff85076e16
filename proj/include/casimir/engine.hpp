#pragma once

#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

namespace casimir {

// Numeric knobs shared by the wedge/cone engines.  Defaults follow the node
// budget that makes every shipped geometry pass its grid-refinement check;
// a key=value config file (or CASIMIR_SHARP_CONFIG) can override them.
struct EngineParams {
    int n_alpha = 48;     // half-line nodes per continuous alpha index
    int n_lambda = 48;    // nodes for lambda grids
    int n_xi = 40;        // nodes for the cone cosh(alpha) grid
    int n_energy = 96;    // outer p / kappa integral nodes
    int m_max = 8;        // azimuthal channel cap (|m|)
    int max_order = 4;    // reflection-order cap for scalars
    int max_order_em = 2; // reflection-order cap for the EM cone
    double lambda_ceiling = 40.0; // lambda grid ceiling at moderate angles
    bool refine_outer = false;    // two-grid refinement of the energy integral

    static EngineParams from_file(const std::string& path);
    void set(const std::string& key, const std::string& value);
};

inline void EngineParams::set(const std::string& key, const std::string& value) {
    auto as_int = [&] { return std::stoi(value); };
    auto as_double = [&] { return std::stod(value); };
    if (key == "n_alpha") n_alpha = as_int();
    else if (key == "n_lambda") n_lambda = as_int();
    else if (key == "n_xi") n_xi = as_int();
    else if (key == "n_energy") n_energy = as_int();
    else if (key == "m_max") m_max = as_int();
    else if (key == "max_order") max_order = as_int();
    else if (key == "max_order_em") max_order_em = as_int();
    else if (key == "lambda_ceiling") lambda_ceiling = as_double();
    else if (key == "refine_outer") refine_outer = (value == "1" || value == "true");
    else throw std::invalid_argument("unknown config key: " + key);
}

inline EngineParams EngineParams::from_file(const std::string& path) {
    EngineParams p;
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        std::string kv;
        if (!(ss >> kv)) continue;
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw std::runtime_error("bad config line: " + line);
        p.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    return p;
}

} // namespace casimir
