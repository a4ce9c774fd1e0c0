#include "config.hpp"

#include <cstdlib>
#include <fstream>

#include "error.hpp"

namespace midsub {

Config Config::load_file(const std::string& path) {
    Config cfg;
    std::ifstream in(path);
    if (!in) fail(ErrorKind::Io, "cannot open config file " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            bool blank = line.find_first_not_of(" \t\r") == std::string::npos;
            if (!blank)
                fail(ErrorKind::InvalidParameter,
                     "config line " + std::to_string(lineno) + " is not key=value");
            continue;
        }
        auto trim = [](std::string s) {
            auto b = s.find_first_not_of(" \t\r");
            auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        cfg.set_key(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return cfg;
}

void Config::set_key(const std::string& key, const std::string& value) {
    if (key == "eps_sym") eps_sym = std::atof(value.c_str());
    else if (key == "eigen_tol") eigen_tol = std::atof(value.c_str());
    else if (key == "power_max_iter") power_max_iter = std::atol(value.c_str());
    else if (key == "char_tol") char_tol = std::atof(value.c_str());
    else if (key == "cone_tol") cone_tol = std::atof(value.c_str());
    else if (key == "cone_levels") cone_levels = std::atoi(value.c_str());
    else if (key == "rho") rho_override = std::atoi(value.c_str());
    else if (key == "c0_l_max") c0_l_max = std::atoi(value.c_str());
    else if (key == "max_grow") max_grow = std::atoi(value.c_str());
    else if (key == "seed") seed = (unsigned)std::atol(value.c_str());
    else fail(ErrorKind::InvalidParameter, "unknown config key '" + key + "'");
}

Json Config::echo() const {
    Json j = Json::object();
    j.set("eps_sym", eps_sym)
        .set("eigen_tol", eigen_tol)
        .set("power_max_iter", (std::int64_t)power_max_iter)
        .set("char_tol", char_tol)
        .set("cone_tol", cone_tol)
        .set("cone_levels", cone_levels)
        .set("rho", rho_override)
        .set("c0_l_max", c0_l_max)
        .set("max_grow", max_grow)
        .set("seed", (std::int64_t)seed);
    return j;
}

} // namespace midsub
