#pragma once
#include <optional>
#include <string>
#include <vector>

#include "omegalab/common.hpp"

namespace omegalab {

// Verdict record for a single claim over a scanned range.
struct ThresholdReport {
    std::string claim_id;
    u64 range_lo = 0;
    u64 range_hi = 0;  // inclusive; range_lo > range_hi means "not checkable at this limit"
    bool holds = true;
    std::optional<u64> first_violation;
    std::optional<std::vector<std::pair<u64, double>>> witness_extrema;
    std::optional<double> max_residual;

    bool checkable() const { return range_lo <= range_hi; }
};

struct SampleRow {
    u64 x = 0;
    std::string claim;
    double re = 0.0;
    double im = 0.0;
};

// `x,claim,value_re,value_im`, rows sorted by (x, claim).
std::string samples_to_csv(std::vector<SampleRow> rows);
void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

std::string report_to_string(const ThresholdReport& r);

}  // namespace omegalab
