#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "ifslab/ifslab.h"

namespace ifscli {

/// 17 significant digits, so values round-trip.
std::string num(double x);

/// Writes through a temporary file in the same directory, then renames.
void write_atomic(const std::filesystem::path& path, const std::string& content);

/// Ordered key=value report.
class Report {
public:
    void add(const std::string& key, const std::string& value) { rows_.emplace_back(key, value); }
    void add(const std::string& key, double value) { add(key, num(value)); }
    void add(const std::string& key, long long value) { add(key, std::to_string(value)); }
    void add(const std::string& key, int value) { add(key, std::to_string(value)); }
    void add(const std::string& key, std::size_t value) { add(key, std::to_string(value)); }
    void add(const std::string& key, bool value) { add(key, std::string(value ? "true" : "false")); }
    void add(const std::string& key, const char* value) { add(key, std::string(value)); }
    std::string str() const;

private:
    std::vector<std::pair<std::string, std::string>> rows_;
};

std::vector<std::pair<double, double>> set_parts(const ifslab_set* s);
/// "# domain lo hi" header, then "a,b" rows.
std::string set_csv(const ifslab_set* s);
/// Parses the format written by set_csv.
std::vector<std::pair<double, double>> read_set_csv(const std::string& path, double* dom_lo, double* dom_hi);

std::string measure_csv(double lo, double hi, const std::vector<double>& masses);

/// 1024 x 64 grayscale strip: column = position, darker = more mass.
std::string density_ppm(const std::vector<double>& masses);
/// 1024 x 64 scatter: column = position, row = time band of the orbit.
std::string orbit_ppm(const std::vector<double>& points, double lo, double hi);

std::string word_str(const int* w, std::size_t len, int k);

}  // namespace ifscli
