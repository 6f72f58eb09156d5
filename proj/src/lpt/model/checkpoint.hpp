#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "lpt/model/transformer.hpp"

namespace lpt::model {

struct CheckpointError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CheckpointMeta {
    int64_t step = 0;
    int epoch = 0;
    double val_loss = 0.0;
};

// Byte-stable container: magic line, a JSON header (config + metadata), then
// each named tensor as little-endian f32 with explicit shape. Weights of any
// precision are stored as f32.
inline constexpr char kCheckpointMagic[] = "LPTCKPT1\n";

namespace ckpt_detail {

void write_u16(std::ostream& out, uint16_t v);
void write_u32(std::ostream& out, uint32_t v);
void write_f32(std::ostream& out, const float* data, size_t n);
uint16_t read_u16(std::istream& in);
uint32_t read_u32(std::istream& in);
void read_f32(std::istream& in, float* data, size_t n);

std::string header_json(const ModelConfig& cfg, const CheckpointMeta& meta);
void parse_header_json(const std::string& text, ModelConfig& cfg, CheckpointMeta& meta);

}  // namespace ckpt_detail

template <typename T>
void save_checkpoint(const std::string& path, const LpTransformer<T>& model,
                     const CheckpointMeta& meta = {}) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw CheckpointError("save_checkpoint: cannot open " + path);
    out.write(kCheckpointMagic, sizeof(kCheckpointMagic) - 1);

    const std::string header = ckpt_detail::header_json(model.config(), meta);
    ckpt_detail::write_u32(out, static_cast<uint32_t>(header.size()));
    out.write(header.data(), static_cast<std::streamsize>(header.size()));

    const auto& params = model.named_parameters();
    ckpt_detail::write_u32(out, static_cast<uint32_t>(params.size()));
    std::vector<float> buf;
    for (const auto& [name, tensor] : params) {
        ckpt_detail::write_u16(out, static_cast<uint16_t>(name.size()));
        out.write(name.data(), static_cast<std::streamsize>(name.size()));
        out.put(static_cast<char>(tensor.shape().size()));
        for (int d : tensor.shape()) ckpt_detail::write_u32(out, static_cast<uint32_t>(d));
        buf.resize(tensor.value().size());
        for (size_t i = 0; i < buf.size(); ++i) buf[i] = static_cast<float>(tensor.value()[i]);
        ckpt_detail::write_f32(out, buf.data(), buf.size());
    }
    if (!out) throw CheckpointError("save_checkpoint: write failed for " + path);
}

template <typename T>
std::pair<LpTransformer<T>, CheckpointMeta> load_checkpoint(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CheckpointError("load_checkpoint: cannot open " + path);
    char magic[sizeof(kCheckpointMagic) - 1];
    in.read(magic, sizeof(magic));
    if (!in || std::string(magic, sizeof(magic)) != kCheckpointMagic) {
        throw CheckpointError("load_checkpoint: bad magic in " + path);
    }

    const uint32_t header_len = ckpt_detail::read_u32(in);
    std::string header(header_len, '\0');
    in.read(header.data(), header_len);
    if (!in) throw CheckpointError("load_checkpoint: truncated header");
    ModelConfig cfg;
    CheckpointMeta meta;
    ckpt_detail::parse_header_json(header, cfg, meta);

    LpTransformer<T> model(cfg, /*seed=*/0);
    std::map<std::string, TensorT<T>> by_name;
    for (const auto& [name, tensor] : model.named_parameters()) by_name.emplace(name, tensor);

    const uint32_t count = ckpt_detail::read_u32(in);
    if (count != by_name.size()) {
        throw CheckpointError("load_checkpoint: " + std::to_string(count) + " tensors for " +
                              std::to_string(by_name.size()) + " parameters");
    }
    std::vector<float> buf;
    for (uint32_t t = 0; t < count; ++t) {
        const uint16_t name_len = ckpt_detail::read_u16(in);
        std::string name(name_len, '\0');
        in.read(name.data(), name_len);
        const int ndim = in.get();
        Shape shape;
        for (int d = 0; d < ndim; ++d) {
            shape.push_back(static_cast<int>(ckpt_detail::read_u32(in)));
        }
        auto it = by_name.find(name);
        if (it == by_name.end()) {
            throw CheckpointError("load_checkpoint: unknown tensor " + name);
        }
        TensorT<T> dst = it->second;
        if (dst.shape() != shape) {
            throw CheckpointError("load_checkpoint: shape mismatch for " + name);
        }
        buf.resize(dst.value().size());
        ckpt_detail::read_f32(in, buf.data(), buf.size());
        for (size_t i = 0; i < buf.size(); ++i) dst.value()[i] = static_cast<T>(buf[i]);
        by_name.erase(it);
    }
    if (!in) throw CheckpointError("load_checkpoint: truncated tensor data");
    if (!by_name.empty()) {
        throw CheckpointError("load_checkpoint: missing tensor " + by_name.begin()->first);
    }
    return {std::move(model), meta};
}

}  // namespace lpt::model
