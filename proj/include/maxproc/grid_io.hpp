#pragma once

#include <fstream>
#include <iomanip>
#include <string>

#include <json.hpp>

#include "maxproc/errors.hpp"
#include "maxproc/grid_function.hpp"

namespace maxproc {

// sidecar path: table.csv -> table.meta.json, otherwise append .meta.json
inline std::string meta_path_for(const std::string& csv_path) {
    const std::string suffix = ".csv";
    if (csv_path.size() > suffix.size() &&
        csv_path.compare(csv_path.size() - suffix.size(), suffix.size(), suffix) == 0)
        return csv_path.substr(0, csv_path.size() - suffix.size()) + ".meta.json";
    return csv_path + ".meta.json";
}

// CSV with header `x,value`, one row per node.  The value column is the full
// function (regular plus singular part); the node at x = 0 reports the
// regular remainder since the singular part diverges there.  The sidecar
// records the grid layout and the singular coefficient so the sampled
// representation is recoverable.
inline void write_grid_csv(const GridFunction& g, const std::string& path,
                           const std::string& value_name = "value") {
    std::ofstream out(path);
    if (!out) throw Error("write_grid_csv: cannot open " + path);
    out << "x," << value_name << "\n";
    out << std::setprecision(12);
    for (std::size_t k = 0; k < g.size(); ++k) {
        const double x = g.x(k);
        const double v = (x > 0.0) ? g.value_at(x) : g.values[k];
        out << x << "," << v << "\n";
    }
    if (!out) throw Error("write_grid_csv: write failed for " + path);

    nlohmann::json meta;
    meta["x0"] = g.x0;
    meta["dx"] = g.dx;
    meta["n"] = g.size();
    meta["singular_coeff"] = g.singular_coeff;
    std::ofstream mo(meta_path_for(path));
    if (!mo) throw Error("write_grid_csv: cannot open " + meta_path_for(path));
    mo << meta.dump(2) << "\n";
    if (!mo) throw Error("write_grid_csv: write failed for " + meta_path_for(path));
}

}  // namespace maxproc
