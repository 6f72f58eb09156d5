#include "lpt/harness/metrics.hpp"

#include <algorithm>

#include "lpt/utf8.hpp"

namespace lpt::harness {

size_t levenshtein(const std::string& a, const std::string& b) {
    const std::vector<uint32_t> s = utf8_decode(a);
    const std::vector<uint32_t> t = utf8_decode(b);
    const size_t n = s.size();
    const size_t m = t.size();
    if (n == 0) return m;
    if (m == 0) return n;

    // two-row DP
    std::vector<size_t> prev(m + 1), cur(m + 1);
    for (size_t j = 0; j <= m; ++j) prev[j] = j;
    for (size_t i = 1; i <= n; ++i) {
        cur[0] = i;
        for (size_t j = 1; j <= m; ++j) {
            const size_t sub = prev[j - 1] + (s[i - 1] == t[j - 1] ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    return prev[m];
}

EvalReport score(const std::vector<std::string>& predictions,
                 const std::vector<std::string>& references,
                 const std::vector<std::pair<int, int>>* cell_keys) {
    if (predictions.size() != references.size()) {
        throw LengthMismatchError("score: " + std::to_string(predictions.size()) +
                                  " predictions vs " + std::to_string(references.size()) +
                                  " references");
    }
    if (cell_keys && cell_keys->size() != references.size()) {
        throw LengthMismatchError("score: cell key list length mismatch");
    }

    EvalReport report;
    for (size_t i = 0; i < references.size(); ++i) {
        const std::string& ref = references[i];
        if (ref.empty()) {
            throw EmptyReferenceError("score: empty reference at index " + std::to_string(i));
        }
        const std::string& pred = predictions[i];
        const size_t dist = levenshtein(pred, ref);
        const size_t ref_len = utf8_decode(ref).size();

        auto bump = [&](CellStats& c) {
            c.count += 1;
            c.exact += pred == ref ? 1 : 0;
            c.edit_distance += static_cast<int64_t>(dist);
            c.reference_length += static_cast<int64_t>(ref_len);
        };
        bump(report.totals);
        if (cell_keys) bump(report.cells[(*cell_keys)[i]]);
    }
    report.acc_lp = report.totals.acc_lp();
    report.cer = report.totals.cer();
    return report;
}

}  // namespace lpt::harness
