#pragma once

#include <stdexcept>
#include <string>

#include "json.hpp"

namespace lpt::model {

// Architecture knobs. d_model equals the image height because the per-class
// side-information vector is added directly onto the raw column slices; there
// is no input projection in front of the encoder.
struct ModelConfig {
    int d_model = 40;   // image height H
    int seq_w = 180;    // image width W
    int enc_layers = 5;
    int dec_layers = 5;
    int heads = 8;
    int d_ff = 2160;
    int k_classes = 0;  // 0 disables the knowledge embedding
    int vocab_size = 43;
    int max_decode_len = 11;
    double dropout_emb = 0.5;
    double dropout_inner = 0.1;

    static ModelConfig paper(int k = 0) {
        ModelConfig c;
        c.k_classes = k;
        return c;
    }

    // small profile for commodity-CPU experiments
    static ModelConfig desk(int k = 0) {
        ModelConfig c;
        c.d_model = 28;
        c.seq_w = 120;
        c.enc_layers = 2;
        c.dec_layers = 2;
        c.heads = 4;
        c.d_ff = 256;
        c.k_classes = k;
        return c;
    }

    void validate() const {
        if (d_model < 2 || d_model % 2 != 0) {
            throw std::invalid_argument("ModelConfig: d_model must be even and >= 2");
        }
        if (heads < 1 || d_model % heads != 0) {
            throw std::invalid_argument("ModelConfig: d_model must be divisible by heads");
        }
        if (seq_w < 1 || enc_layers < 1 || dec_layers < 1 || d_ff < 1) {
            throw std::invalid_argument("ModelConfig: sizes must be positive");
        }
        if (k_classes < 0) throw std::invalid_argument("ModelConfig: k_classes must be >= 0");
        if (vocab_size < 4) throw std::invalid_argument("ModelConfig: vocabulary too small");
        if (max_decode_len < 3) {
            throw std::invalid_argument("ModelConfig: max_decode_len must be >= 3");
        }
        if (dropout_emb < 0.0 || dropout_emb >= 1.0 || dropout_inner < 0.0 ||
            dropout_inner >= 1.0) {
            throw std::invalid_argument("ModelConfig: dropout must be in [0,1)");
        }
    }

    bool operator==(const ModelConfig&) const = default;
};

inline void to_json(nlohmann::json& j, const ModelConfig& c) {
    j = nlohmann::json{{"d_model", c.d_model},
                       {"seq_w", c.seq_w},
                       {"enc_layers", c.enc_layers},
                       {"dec_layers", c.dec_layers},
                       {"heads", c.heads},
                       {"d_ff", c.d_ff},
                       {"k_classes", c.k_classes},
                       {"vocab_size", c.vocab_size},
                       {"max_decode_len", c.max_decode_len},
                       {"dropout_emb", c.dropout_emb},
                       {"dropout_inner", c.dropout_inner}};
}

inline void from_json(const nlohmann::json& j, ModelConfig& c) {
    j.at("d_model").get_to(c.d_model);
    j.at("seq_w").get_to(c.seq_w);
    j.at("enc_layers").get_to(c.enc_layers);
    j.at("dec_layers").get_to(c.dec_layers);
    j.at("heads").get_to(c.heads);
    j.at("d_ff").get_to(c.d_ff);
    j.at("k_classes").get_to(c.k_classes);
    j.at("vocab_size").get_to(c.vocab_size);
    j.at("max_decode_len").get_to(c.max_decode_len);
    j.at("dropout_emb").get_to(c.dropout_emb);
    j.at("dropout_inner").get_to(c.dropout_inner);
}

}  // namespace lpt::model
