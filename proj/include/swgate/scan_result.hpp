#ifndef SWGATE_SCAN_RESULT_HPP
#define SWGATE_SCAN_RESULT_HPP

#include <string>
#include <utility>
#include <vector>

namespace swgate {

// Tabulated sweep output: one axis, any number of named series of equal length.
struct ScanResult {
    std::string axis_name;
    std::vector<double> axis_values;
    std::vector<std::pair<std::string, std::vector<double>>> series;

    void add_series(const std::string& name, std::vector<double> values);
    // add_series plus the [0,1] check: values within 1e-9 outside are clamped,
    // anything worse is rejected.
    void add_probability_series(const std::string& name, std::vector<double> values);
    const std::vector<double>& at(const std::string& name) const;
    bool has(const std::string& name) const;

    // Single header row, then one row per axis value; floats in scientific
    // notation with 9 significant digits (byte-stable for fixed inputs).
    void write_csv(const std::string& path) const;
};

std::string format_float(double v);  // %.8e

}  // namespace swgate

#endif
