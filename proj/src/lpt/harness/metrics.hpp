#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace lpt::harness {

struct LengthMismatchError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct EmptyReferenceError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Unit-cost edit distance over code points (UTF-8 aware).
size_t levenshtein(const std::string& a, const std::string& b);

struct CellStats {
    int count = 0;
    int exact = 0;
    int64_t edit_distance = 0;
    int64_t reference_length = 0;

    double acc_lp() const { return count ? static_cast<double>(exact) / count : 0.0; }
    double cer() const {
        return reference_length ? static_cast<double>(edit_distance) / reference_length : 0.0;
    }
};

struct EvalReport {
    double acc_lp = 0.0;  // exact-match fraction
    double cer = 0.0;     // corpus-level: sum of distances / sum of reference lengths
    CellStats totals;
    std::map<std::pair<int, int>, CellStats> cells;  // keyed by (qf, r_w)
};

// Corpus-level scoring; cell keys optional (same length as the lists when given).
EvalReport score(const std::vector<std::string>& predictions,
                 const std::vector<std::string>& references,
                 const std::vector<std::pair<int, int>>* cell_keys = nullptr);

}  // namespace lpt::harness
