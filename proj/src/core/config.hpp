#pragma once

#include <string>

#include "json_writer.hpp"

namespace midsub {

// Analysis knobs. Defaults are the documented values; a key=value config file
// overrides defaults, command-line flags override the file.
struct Config {
    double eps_sym = 1e-9;          // symmetry predicates, relative to diameter
    double eigen_tol = 1e-10;       // power iteration, relative
    long power_max_iter = 100000;
    double char_tol = 1e-12;        // characteristic iteration convergence
    double cone_tol = 1e-9;         // radians, cone boundary comparisons
    int cone_levels = 4;            // K: finite subdivision levels checked
    int rho_override = 0;           // 0 = automatic rho selection
    int c0_l_max = 40;              // max power for the positive-column search
    int max_grow = 8;               // net auto-grow attempts
    unsigned seed = 20120509;       // randomized property trials
    std::string tool_version = "midsub 1.0.0";

    static Config load_file(const std::string& path);  // key=value lines
    void set_key(const std::string& key, const std::string& value);
    Json echo() const;
};

} // namespace midsub
