#include "output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "config.hpp"
#include "handles.hpp"

namespace ifscli {

namespace {

constexpr int kWidth = 1024;
constexpr int kHeight = 64;

std::string ppm(const std::vector<unsigned char>& gray) {
    std::string out = "P6\n" + std::to_string(kWidth) + " " + std::to_string(kHeight) + "\n255\n";
    for (unsigned char g : gray) out.append(3, static_cast<char>(g));
    return out;
}

}  // namespace

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
    const auto tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ApiError(IFSLAB_E_IO, "cannot write " + tmp);
        out << content;
        out.flush();
        if (!out) throw ApiError(IFSLAB_E_IO, "short write to " + tmp);
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw ApiError(IFSLAB_E_IO, "cannot rename " + tmp + ": " + ec.message());
}

std::string Report::str() const {
    std::string out;
    for (const auto& [k, v] : rows_) out += k + "=" + v + "\n";
    return out;
}

std::vector<std::pair<double, double>> set_parts(const ifslab_set* s) {
    std::size_t n = 0;
    check(ifslab_set_count(s, &n), "set_count");
    std::vector<std::pair<double, double>> out(n);
    for (std::size_t i = 0; i < n; ++i) check(ifslab_set_part(s, i, &out[i].first, &out[i].second), "set_part");
    return out;
}

std::string set_csv(const ifslab_set* s) {
    double lo = 0, hi = 0;
    check(ifslab_set_domain(s, &lo, &hi), "set_domain");
    std::string out = "# domain " + num(lo) + " " + num(hi) + "\n";
    for (const auto& [a, b] : set_parts(s)) out += num(a) + "," + num(b) + "\n";
    return out;
}

std::vector<std::pair<double, double>> read_set_csv(const std::string& path, double* dom_lo, double* dom_hi) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read reference set " + path);
    std::string line;
    std::getline(in, line);
    std::istringstream head(line);
    std::string hash, word;
    if (!(head >> hash >> word >> *dom_lo >> *dom_hi) || hash != "#" || word != "domain")
        throw ConfigError(path + ": expected '# domain lo hi' header");
    std::vector<std::pair<double, double>> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto v = parse_list(line);
        if (v.size() != 2) throw ConfigError(path + ": bad row '" + line + "'");
        out.emplace_back(v[0], v[1]);
    }
    return out;
}

std::string measure_csv(double lo, double hi, const std::vector<double>& masses) {
    std::string out = "bin_lo,bin_hi,mass\n";
    const double w = (hi - lo) / static_cast<double>(masses.size());
    for (std::size_t i = 0; i < masses.size(); ++i) {
        const double b = i + 1 == masses.size() ? hi : lo + w * static_cast<double>(i + 1);
        out += num(lo + w * static_cast<double>(i)) + "," + num(b) + "," + num(masses[i]) + "\n";
    }
    return out;
}

std::string density_ppm(const std::vector<double>& masses) {
    const std::size_t n = masses.size();
    std::vector<double> col(kWidth, 0.0);
    // Each bin spreads its mass over the columns it overlaps.
    for (std::size_t b = 0; b < n; ++b) {
        const double c0 = static_cast<double>(b) * kWidth / static_cast<double>(n);
        const double c1 = static_cast<double>(b + 1) * kWidth / static_cast<double>(n);
        for (int c = static_cast<int>(c0); c < std::min(kWidth, static_cast<int>(std::ceil(c1))); ++c) {
            const double overlap = std::min<double>(c + 1, c1) - std::max<double>(c, c0);
            if (overlap > 0) col[static_cast<std::size_t>(c)] += masses[b] * overlap / (c1 - c0);
        }
    }
    const double peak = *std::max_element(col.begin(), col.end());
    std::vector<unsigned char> gray(static_cast<std::size_t>(kWidth * kHeight));
    for (int c = 0; c < kWidth; ++c) {
        const double t = peak > 0 ? col[static_cast<std::size_t>(c)] / peak : 0.0;
        const auto g = static_cast<unsigned char>(std::lround(255.0 * (1.0 - t)));
        for (int r = 0; r < kHeight; ++r) gray[static_cast<std::size_t>(r * kWidth + c)] = g;
    }
    return ppm(gray);
}

std::string orbit_ppm(const std::vector<double>& points, double lo, double hi) {
    std::vector<unsigned char> gray(static_cast<std::size_t>(kWidth * kHeight), 255);
    const std::size_t n = points.size();
    for (std::size_t i = 0; i < n; ++i) {
        const int r = static_cast<int>(i * kHeight / n);
        const int c = std::clamp(static_cast<int>((points[i] - lo) / (hi - lo) * kWidth), 0, kWidth - 1);
        gray[static_cast<std::size_t>(r * kWidth + c)] = 0;
    }
    return ppm(gray);
}

std::string word_str(const int* w, std::size_t len, int k) {
    std::string out;
    for (std::size_t i = 0; i < len; ++i) {
        if (i && k > 9) out += '.';
        out += std::to_string(w[i]);
    }
    return out;
}

}  // namespace ifscli
