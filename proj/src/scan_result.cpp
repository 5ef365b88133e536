#include "swgate/scan_result.hpp"

#include <cstdio>
#include <fstream>

#include "swgate/errors.hpp"

namespace swgate {

void ScanResult::add_series(const std::string& name, std::vector<double> values) {
    if (values.size() != axis_values.size())
        throw ValidationError("series '" + name + "' length does not match axis");
    series.emplace_back(name, std::move(values));
}

void ScanResult::add_probability_series(const std::string& name, std::vector<double> values) {
    for (double& v : values) {
        if (v < -1e-9 || v > 1.0 + 1e-9)
            throw ValidationError("series '" + name + "' has value outside [0,1]: " +
                                  std::to_string(v));
        if (v < 0.0) v = 0.0;
        if (v > 1.0) v = 1.0;
    }
    add_series(name, std::move(values));
}

const std::vector<double>& ScanResult::at(const std::string& name) const {
    for (const auto& [n, v] : series)
        if (n == name) return v;
    throw ValidationError("no series named '" + name + "'");
}

bool ScanResult::has(const std::string& name) const {
    for (const auto& [n, v] : series)
        if (n == name) return true;
    return false;
}

std::string format_float(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.8e", v);
    return buf;
}

void ScanResult::write_csv(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot open " + path + " for writing");
    out << axis_name;
    for (const auto& [name, vals] : series) out << ',' << name;
    out << '\n';
    for (size_t i = 0; i < axis_values.size(); ++i) {
        out << format_float(axis_values[i]);
        for (const auto& [name, vals] : series) out << ',' << format_float(vals[i]);
        out << '\n';
    }
}

}  // namespace swgate
