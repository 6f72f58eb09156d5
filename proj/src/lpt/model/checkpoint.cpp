#include "lpt/model/checkpoint.hpp"

#include <cstring>

#include "json.hpp"

namespace lpt::model::ckpt_detail {

namespace {

template <typename U>
void write_le(std::ostream& out, U v) {
    char bytes[sizeof(U)];
    for (size_t i = 0; i < sizeof(U); ++i) {
        bytes[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
    }
    out.write(bytes, sizeof(U));
}

template <typename U>
U read_le(std::istream& in) {
    unsigned char bytes[sizeof(U)];
    in.read(reinterpret_cast<char*>(bytes), sizeof(U));
    U v = 0;
    for (size_t i = 0; i < sizeof(U); ++i) {
        v |= static_cast<U>(bytes[i]) << (8 * i);
    }
    return v;
}

}  // namespace

void write_u16(std::ostream& out, uint16_t v) { write_le(out, v); }
void write_u32(std::ostream& out, uint32_t v) { write_le(out, v); }
uint16_t read_u16(std::istream& in) { return read_le<uint16_t>(in); }
uint32_t read_u32(std::istream& in) { return read_le<uint32_t>(in); }

void write_f32(std::ostream& out, const float* data, size_t n) {
    for (size_t i = 0; i < n; ++i) {
        uint32_t bits;
        std::memcpy(&bits, &data[i], 4);
        write_le(out, bits);
    }
}

void read_f32(std::istream& in, float* data, size_t n) {
    for (size_t i = 0; i < n; ++i) {
        const uint32_t bits = read_le<uint32_t>(in);
        std::memcpy(&data[i], &bits, 4);
    }
}

std::string header_json(const ModelConfig& cfg, const CheckpointMeta& meta) {
    nlohmann::json j;
    j["config"] = cfg;
    j["meta"] = {{"step", meta.step}, {"epoch", meta.epoch}, {"val_loss", meta.val_loss}};
    return j.dump();  // keys come out sorted, so the header is byte-stable
}

void parse_header_json(const std::string& text, ModelConfig& cfg, CheckpointMeta& meta) {
    nlohmann::json j = nlohmann::json::parse(text);
    cfg = j.at("config").get<ModelConfig>();
    const auto& m = j.at("meta");
    meta.step = m.at("step").get<int64_t>();
    meta.epoch = m.at("epoch").get<int>();
    meta.val_loss = m.at("val_loss").get<double>();
}

}  // namespace lpt::model::ckpt_detail
