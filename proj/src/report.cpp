#include "omegalab/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace omegalab {

static std::string fmt_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string samples_to_csv(std::vector<SampleRow> rows) {
    std::sort(rows.begin(), rows.end(), [](const SampleRow& a, const SampleRow& b) {
        if (a.x != b.x) return a.x < b.x;
        return a.claim < b.claim;
    });
    std::string out = "x,claim,value_re,value_im\n";
    for (const auto& r : rows) {
        out += std::to_string(r.x);
        out += ',';
        out += r.claim;
        out += ',';
        out += fmt_value(r.re);
        out += ',';
        out += fmt_value(r.im);
        out += '\n';
    }
    return out;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open for write: " + path);
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!f) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for read: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::string report_to_string(const ThresholdReport& r) {
    std::ostringstream ss;
    ss << r.claim_id << ": ";
    if (!r.checkable()) {
        ss << "not checkable at this limit (needs x >= " << r.range_lo << ")";
        return ss.str();
    }
    ss << "[" << r.range_lo << ", " << r.range_hi << "] "
       << (r.holds ? "holds" : "VIOLATED");
    if (r.first_violation) ss << " first_violation=" << *r.first_violation;
    if (r.max_residual) ss << " max_residual=" << *r.max_residual;
    if (r.witness_extrema) {
        ss << " witnesses=";
        for (const auto& [x, v] : *r.witness_extrema) ss << "(" << x << "," << v << ")";
    }
    return ss.str();
}

}  // namespace omegalab
