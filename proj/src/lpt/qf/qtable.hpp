#pragma once

#include <array>
#include <iosfwd>
#include <stdexcept>
#include <string>

namespace lpt::qf {

struct QfOutOfRangeError : std::out_of_range {
    using std::out_of_range::out_of_range;
};

// 8x8 quantization step matrix, row-major, entries in [1,255].
struct QuantTable {
    std::array<int, 64> steps{};

    int at(int row, int col) const { return steps[static_cast<size_t>(row) * 8 + col]; }
    int& at(int row, int col) { return steps[static_cast<size_t>(row) * 8 + col]; }

    bool operator==(const QuantTable& o) const { return steps == o.steps; }
};

// ITU-T T.81 Annex K example luminance table.
const QuantTable& annex_k_luminance();

// Reference quality scaling over the Annex K table:
//   scale = qf < 50 ? 5000/qf : 200 - 2*qf
//   step  = clamp((scale*base + 50)/100, 1, 255)
// Throws QfOutOfRangeError unless qf is in [1,100].
QuantTable standard_qtable(int qf);

// Nearest standard table in squared-Euclidean distance over the 64 entries,
// ties broken toward the larger (milder) qf.
int estimate_qf(const QuantTable& m);

// Same, also reporting the distance at the argmin.
int estimate_qf(const QuantTable& m, long long* distance_out);

struct ClassOutOfRangeError : std::out_of_range {
    using std::out_of_range::out_of_range;
};

struct KnowledgeClass {
    int k_total = 0;
    int index = 0;
};

// Discretize qf in [1,100] into k equal bins: index = ceil(k*qf/100) - 1.
KnowledgeClass qf_to_class(int qf, int k);

// CLI text format: 64 whitespace-separated integers, row-major.
QuantTable parse_qtable_text(std::istream& in);
QuantTable parse_qtable_file(const std::string& path);
std::string qtable_to_text(const QuantTable& t);

}  // namespace lpt::qf
