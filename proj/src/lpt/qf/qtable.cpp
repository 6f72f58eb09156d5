#include "lpt/qf/qtable.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>
#include <vector>

namespace lpt::qf {

const QuantTable& annex_k_luminance() {
    static const QuantTable t = {{
        16, 11, 10, 16, 24, 40, 51, 61,
        12, 12, 14, 19, 26, 58, 60, 55,
        14, 13, 16, 24, 40, 57, 69, 56,
        14, 17, 22, 29, 51, 87, 80, 62,
        18, 22, 37, 56, 68, 109, 103, 77,
        24, 35, 55, 64, 81, 104, 113, 92,
        49, 64, 78, 87, 103, 121, 120, 101,
        72, 92, 95, 98, 112, 100, 103, 99,
    }};
    return t;
}

QuantTable standard_qtable(int qf) {
    if (qf < 1 || qf > 100) {
        throw QfOutOfRangeError("standard_qtable: qf must be in [1,100], got " +
                                std::to_string(qf));
    }
    const int scale = qf < 50 ? 5000 / qf : 200 - 2 * qf;
    QuantTable out;
    const QuantTable& base = annex_k_luminance();
    for (size_t i = 0; i < 64; ++i) {
        int step = (scale * base.steps[i] + 50) / 100;
        out.steps[i] = std::clamp(step, 1, 255);
    }
    return out;
}

namespace {

const std::vector<QuantTable>& all_standard_tables() {
    static const std::vector<QuantTable> tables = [] {
        std::vector<QuantTable> v;
        v.reserve(100);
        for (int qf = 1; qf <= 100; ++qf) v.push_back(standard_qtable(qf));
        return v;
    }();
    return tables;
}

}  // namespace

int estimate_qf(const QuantTable& m, long long* distance_out) {
    const auto& tables = all_standard_tables();
    int best_qf = 1;
    long long best_dist = std::numeric_limits<long long>::max();
    for (int qf = 1; qf <= 100; ++qf) {
        const QuantTable& t = tables[static_cast<size_t>(qf - 1)];
        long long d = 0;
        for (size_t i = 0; i < 64; ++i) {
            const long long diff = m.steps[i] - t.steps[i];
            d += diff * diff;
        }
        if (d <= best_dist) {  // <= keeps the larger qf on ties
            best_dist = d;
            best_qf = qf;
        }
    }
    if (distance_out) *distance_out = best_dist;
    return best_qf;
}

int estimate_qf(const QuantTable& m) { return estimate_qf(m, nullptr); }

KnowledgeClass qf_to_class(int qf, int k) {
    if (qf < 1 || qf > 100) {
        throw QfOutOfRangeError("qf_to_class: qf must be in [1,100], got " +
                                std::to_string(qf));
    }
    if (k < 1) throw ClassOutOfRangeError("qf_to_class: k must be positive");
    // ceil(k*qf/100) - 1 with integer arithmetic
    const int index = (k * qf + 99) / 100 - 1;
    return KnowledgeClass{k, index};
}

QuantTable parse_qtable_text(std::istream& in) {
    QuantTable t;
    for (size_t i = 0; i < 64; ++i) {
        long long v = 0;
        if (!(in >> v)) {
            throw std::runtime_error("quant table: expected 64 integers, got " +
                                     std::to_string(i));
        }
        if (v < 1 || v > 255) {
            throw std::runtime_error("quant table: entry " + std::to_string(i) +
                                     " out of [1,255]: " + std::to_string(v));
        }
        t.steps[i] = static_cast<int>(v);
    }
    return t;
}

QuantTable parse_qtable_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("quant table: cannot open " + path);
    return parse_qtable_text(f);
}

std::string qtable_to_text(const QuantTable& t) {
    std::ostringstream os;
    for (int r = 0; r < 8; ++r) {
        for (int c = 0; c < 8; ++c) {
            os << t.at(r, c) << (c == 7 ? '\n' : ' ');
        }
    }
    return os.str();
}

}  // namespace lpt::qf
