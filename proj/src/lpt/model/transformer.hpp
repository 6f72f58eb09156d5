#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "lpt/ad/ops.hpp"
#include "lpt/image.hpp"
#include "lpt/model/config.hpp"
#include "lpt/rng.hpp"

namespace lpt::model {

using ad::Shape;
using ad::TensorT;

struct ClassOutOfRangeError : std::out_of_range {
    using std::out_of_range::out_of_range;
};

// Carries the per-forward dropout stream; absent pointer means eval mode.
struct DropoutCtx {
    RngStream rng;
    explicit DropoutCtx(uint64_t seed) : rng(seed) {}
};

enum class Init { xavier_uniform, zeros, ones };

// Ordered, uniquely named parameter store. Initialization draws come from a
// stream keyed by (master_seed, name), so adding a parameter elsewhere does
// not disturb the init of the others.
template <typename T>
class ParamRegistry {
  public:
    explicit ParamRegistry(uint64_t master_seed) : seed_(master_seed) {}

    TensorT<T> add(const std::string& name, const Shape& shape, Init kind) {
        for (const auto& [n, t] : entries_) {
            if (n == name) throw std::invalid_argument("ParamRegistry: duplicate name " + name);
        }
        TensorT<T> t = TensorT<T>::zeros(shape, true);
        switch (kind) {
            case Init::zeros: break;
            case Init::ones:
                for (auto& v : t.value()) v = T(1);
                break;
            case Init::xavier_uniform: {
                const int fan_in = shape.size() == 2 ? shape[0] : static_cast<int>(shape[0]);
                const int fan_out = shape.size() == 2 ? shape[1] : static_cast<int>(shape[0]);
                const double limit = std::sqrt(6.0 / (fan_in + fan_out));
                RngStream rng(hash_mix(seed_, fnv1a64(name.data(), name.size())));
                for (auto& v : t.value()) v = static_cast<T>(rng.uniform_sym(limit));
                break;
            }
        }
        entries_.emplace_back(name, t);
        return t;
    }

    const std::vector<std::pair<std::string, TensorT<T>>>& entries() const { return entries_; }

    std::vector<TensorT<T>> tensors() const {
        std::vector<TensorT<T>> out;
        out.reserve(entries_.size());
        for (const auto& [n, t] : entries_) out.push_back(t);
        return out;
    }

    int64_t total_size() const {
        int64_t n = 0;
        for (const auto& [name, t] : entries_) n += t.size();
        return n;
    }

  private:
    uint64_t seed_;
    std::vector<std::pair<std::string, TensorT<T>>> entries_;
};

// Scaled dot-product attention over `heads` column groups of width d_k.
// mask_bias, when given, is added to every head's score matrix (0 for open
// positions, a large negative number for blocked ones).
template <typename T>
class MultiHeadAttention {
  public:
    MultiHeadAttention() = default;

    MultiHeadAttention(int d_model, int heads, const std::string& prefix,
                       ParamRegistry<T>& reg)
        : d_model_(d_model), heads_(heads), d_k_(d_model / heads) {
        wq_ = reg.add(prefix + ".wq", {d_model, d_model}, Init::xavier_uniform);
        bq_ = reg.add(prefix + ".bq", {d_model}, Init::zeros);
        wk_ = reg.add(prefix + ".wk", {d_model, d_model}, Init::xavier_uniform);
        bk_ = reg.add(prefix + ".bk", {d_model}, Init::zeros);
        wv_ = reg.add(prefix + ".wv", {d_model, d_model}, Init::xavier_uniform);
        bv_ = reg.add(prefix + ".bv", {d_model}, Init::zeros);
        wo_ = reg.add(prefix + ".wo", {d_model, d_model}, Init::xavier_uniform);
        bo_ = reg.add(prefix + ".bo", {d_model}, Init::zeros);
    }

    TensorT<T> forward(const TensorT<T>& q_in, const TensorT<T>& k_in, const TensorT<T>& v_in,
                       const TensorT<T>* mask_bias) const {
        const TensorT<T> q = ad::linear(q_in, wq_, bq_);
        const TensorT<T> k = ad::linear(k_in, wk_, bk_);
        const TensorT<T> v = ad::linear(v_in, wv_, bv_);
        const T inv_sqrt_dk = static_cast<T>(1.0 / std::sqrt(static_cast<double>(d_k_)));

        std::vector<TensorT<T>> contexts;
        contexts.reserve(static_cast<size_t>(heads_));
        for (int h = 0; h < heads_; ++h) {
            const int c0 = h * d_k_;
            const int c1 = c0 + d_k_;
            TensorT<T> qh = ad::slice(q, 1, c0, c1);
            TensorT<T> kh = ad::slice(k, 1, c0, c1);
            TensorT<T> vh = ad::slice(v, 1, c0, c1);
            TensorT<T> scores = ad::scale(ad::matmul(qh, ad::transpose(kh)), inv_sqrt_dk);
            if (mask_bias) scores = ad::add(scores, *mask_bias);
            contexts.push_back(ad::matmul(ad::softmax(scores, 1), vh));
        }
        return ad::linear(ad::concat(contexts, 1), wo_, bo_);
    }

  private:
    int d_model_ = 0, heads_ = 0, d_k_ = 0;
    TensorT<T> wq_, bq_, wk_, bk_, wv_, bv_, wo_, bo_;
};

template <typename T>
struct LayerNormBlock {
    TensorT<T> gain, bias;

    LayerNormBlock() = default;
    LayerNormBlock(int width, const std::string& prefix, ParamRegistry<T>& reg) {
        gain = reg.add(prefix + ".gain", {width}, Init::ones);
        bias = reg.add(prefix + ".bias", {width}, Init::zeros);
    }
    TensorT<T> forward(const TensorT<T>& x) const { return ad::layer_norm(x, gain, bias); }
};

template <typename T>
struct FeedForward {
    TensorT<T> w1, b1, w2, b2;

    FeedForward() = default;
    FeedForward(int d_model, int d_ff, const std::string& prefix, ParamRegistry<T>& reg) {
        w1 = reg.add(prefix + ".w1", {d_model, d_ff}, Init::xavier_uniform);
        b1 = reg.add(prefix + ".b1", {d_ff}, Init::zeros);
        w2 = reg.add(prefix + ".w2", {d_ff, d_model}, Init::xavier_uniform);
        b2 = reg.add(prefix + ".b2", {d_model}, Init::zeros);
    }
    TensorT<T> forward(const TensorT<T>& x) const {
        return ad::linear(ad::relu(ad::linear(x, w1, b1)), w2, b2);
    }
};

// Side-informed encoder-decoder Transformer over column-slice sequences.
// Post-norm layers: each sub-layer output is dropped out, added to the
// residual and layer-normalized.
template <typename T>
class LpTransformer {
  public:
    explicit LpTransformer(const ModelConfig& cfg, uint64_t seed = 0)
        : cfg_(cfg), reg_(seed) {
        cfg_.validate();

        for (int l = 0; l < cfg_.enc_layers; ++l) {
            const std::string p = "enc.l" + std::to_string(l);
            enc_.push_back(EncLayer{
                MultiHeadAttention<T>(cfg_.d_model, cfg_.heads, p + ".self", reg_),
                LayerNormBlock<T>(cfg_.d_model, p + ".ln1", reg_),
                FeedForward<T>(cfg_.d_model, cfg_.d_ff, p + ".ff", reg_),
                LayerNormBlock<T>(cfg_.d_model, p + ".ln2", reg_)});
        }
        for (int l = 0; l < cfg_.dec_layers; ++l) {
            const std::string p = "dec.l" + std::to_string(l);
            dec_.push_back(DecLayer{
                MultiHeadAttention<T>(cfg_.d_model, cfg_.heads, p + ".self", reg_),
                LayerNormBlock<T>(cfg_.d_model, p + ".ln1", reg_),
                MultiHeadAttention<T>(cfg_.d_model, cfg_.heads, p + ".cross", reg_),
                LayerNormBlock<T>(cfg_.d_model, p + ".ln2", reg_),
                FeedForward<T>(cfg_.d_model, cfg_.d_ff, p + ".ff", reg_),
                LayerNormBlock<T>(cfg_.d_model, p + ".ln3", reg_)});
        }
        tok_table_ = reg_.add("dec.tok_emb", {cfg_.vocab_size, cfg_.d_model},
                              Init::xavier_uniform);
        out_w_ = reg_.add("out.w", {cfg_.d_model, cfg_.vocab_size}, Init::xavier_uniform);
        out_b_ = reg_.add("out.b", {cfg_.vocab_size}, Init::zeros);
        if (cfg_.k_classes > 0) {
            ke_table_ = reg_.add("ke.table", {cfg_.k_classes, cfg_.d_model},
                                 Init::xavier_uniform);
        }

        pe_enc_ = ad::positional_encoding<T>(cfg_.seq_w, cfg_.d_model);
        pe_dec_ = ad::positional_encoding<T>(cfg_.max_decode_len, cfg_.d_model);
        causal_bias_ = make_causal_bias(cfg_.max_decode_len);
    }

    const ModelConfig& config() const { return cfg_; }
    int sos_id() const { return cfg_.vocab_size - 3; }
    int eos_id() const { return cfg_.vocab_size - 2; }
    int pad_id() const { return cfg_.vocab_size - 1; }

    const std::vector<std::pair<std::string, TensorT<T>>>& named_parameters() const {
        return reg_.entries();
    }
    std::vector<TensorT<T>> parameters() const { return reg_.tensors(); }
    int64_t param_count() const { return reg_.total_size(); }

    // image columns as a W x H sequence, top-to-bottom slices
    static TensorT<T> column_slices(const GrayImage& img) {
        std::vector<T> data(static_cast<size_t>(img.width) * img.height);
        for (int x = 0; x < img.width; ++x) {
            for (int y = 0; y < img.height; ++y) {
                data[static_cast<size_t>(x) * img.height + y] = static_cast<T>(img.at(x, y));
            }
        }
        return TensorT<T>::from_data({img.width, img.height}, std::move(data));
    }

    // x_pos plus the class row replicated over all positions, then the
    // embedding dropout; knowledge_class -1 bypasses the whole stage
    TensorT<T> knowledge_embed(const TensorT<T>& x_pos, int knowledge_class,
                               DropoutCtx* dc) const {
        if (knowledge_class < 0) return x_pos;
        if (knowledge_class >= cfg_.k_classes) {
            throw ClassOutOfRangeError("knowledge_embed: class " +
                                       std::to_string(knowledge_class) + " of " +
                                       std::to_string(cfg_.k_classes));
        }
        TensorT<T> row = ad::embedding_lookup(ke_table_, {knowledge_class});
        TensorT<T> x = ad::add_rowvec(x_pos, row);
        return ad::dropout(x, cfg_.dropout_emb, dc != nullptr, dc ? &dc->rng : nullptr);
    }

    TensorT<T> encode(const TensorT<T>& slices, int knowledge_class, DropoutCtx* dc) const {
        if (slices.ndim() != 2 || slices.dim(0) != cfg_.seq_w || slices.dim(1) != cfg_.d_model) {
            throw ad::ShapeMismatchError("encode: input " + ad::shape_str(slices.shape()) +
                                         " does not match W=" + std::to_string(cfg_.seq_w) +
                                         " H=" + std::to_string(cfg_.d_model));
        }
        TensorT<T> x = ad::add(slices, pe_enc_);
        x = knowledge_embed(x, knowledge_class, dc);
        for (const EncLayer& layer : enc_) {
            TensorT<T> a = layer.self_attn.forward(x, x, x, nullptr);
            x = layer.ln1.forward(ad::add(x, inner_dropout(a, dc)));
            TensorT<T> f = layer.ff.forward(x);
            x = layer.ln2.forward(ad::add(x, inner_dropout(f, dc)));
        }
        return x;
    }

    // causally masked decoder over gold/emitted tokens; returns one logit row
    // per input position
    TensorT<T> decode_logits(const TensorT<T>& memory, const std::vector<int>& input_ids,
                             DropoutCtx* dc) const {
        const int len = static_cast<int>(input_ids.size());
        if (len < 1 || len > cfg_.max_decode_len) {
            throw ad::ShapeMismatchError("decode_logits: sequence of " + std::to_string(len) +
                                         " for max_decode_len " +
                                         std::to_string(cfg_.max_decode_len));
        }
        TensorT<T> x = ad::add(ad::embedding_lookup(tok_table_, input_ids),
                               ad::slice(pe_dec_, 0, 0, len));
        TensorT<T> mask = ad::slice(ad::slice(causal_bias_, 0, 0, len), 1, 0, len);
        for (const DecLayer& layer : dec_) {
            TensorT<T> a = layer.self_attn.forward(x, x, x, &mask);
            x = layer.ln1.forward(ad::add(x, inner_dropout(a, dc)));
            TensorT<T> c = layer.cross_attn.forward(x, memory, memory, nullptr);
            x = layer.ln2.forward(ad::add(x, inner_dropout(c, dc)));
            TensorT<T> f = layer.ff.forward(x);
            x = layer.ln3.forward(ad::add(x, inner_dropout(f, dc)));
        }
        return ad::linear(x, out_w_, out_b_);
    }

    // teacher forcing: the decoder consumes target_ids minus its last token
    // and the logits line up with target_ids[1..]
    TensorT<T> forward_teacher_forced(const GrayImage& img, int knowledge_class,
                                      const std::vector<int>& target_ids,
                                      DropoutCtx* dc) const {
        if (target_ids.size() < 2 || target_ids.front() != sos_id()) {
            throw std::invalid_argument("forward_teacher_forced: target must start with SOS");
        }
        TensorT<T> memory = encode(column_slices(img), knowledge_class, dc);
        const std::vector<int> input(target_ids.begin(), target_ids.end() - 1);
        return decode_logits(memory, input, dc);
    }

    // argmax decoding from SOS until EOS or the glyph budget; returns the
    // emitted tokens (EOS excluded). Ties pick the lowest token id.
    std::vector<int> greedy_decode_ids(const GrayImage& img, int knowledge_class) const {
        ad::NoGradGuard ng;
        const TensorT<T> memory = encode(column_slices(img), knowledge_class, nullptr);
        std::vector<int> ids = {sos_id()};
        std::vector<int> out;
        for (int step = 0; step < cfg_.max_decode_len - 2; ++step) {
            const TensorT<T> logits = decode_logits(memory, ids, nullptr);
            const int last = logits.dim(0) - 1;
            const T* row = logits.value().data() +
                           static_cast<size_t>(last) * cfg_.vocab_size;
            int best = 0;
            for (int v = 1; v < cfg_.vocab_size; ++v) {
                if (row[v] > row[best]) best = v;
            }
            if (best == eos_id()) break;
            out.push_back(best);
            ids.push_back(best);
        }
        return out;
    }

  private:
    struct EncLayer {
        MultiHeadAttention<T> self_attn;
        LayerNormBlock<T> ln1;
        FeedForward<T> ff;
        LayerNormBlock<T> ln2;
    };
    struct DecLayer {
        MultiHeadAttention<T> self_attn;
        LayerNormBlock<T> ln1;
        MultiHeadAttention<T> cross_attn;
        LayerNormBlock<T> ln2;
        FeedForward<T> ff;
        LayerNormBlock<T> ln3;
    };

    TensorT<T> inner_dropout(const TensorT<T>& x, DropoutCtx* dc) const {
        return ad::dropout(x, cfg_.dropout_inner, dc != nullptr, dc ? &dc->rng : nullptr);
    }

    static TensorT<T> make_causal_bias(int len) {
        // 0 on and below the diagonal, a large negative bias above it
        std::vector<T> bias(static_cast<size_t>(len) * len, T(0));
        for (int i = 0; i < len; ++i) {
            for (int j = i + 1; j < len; ++j) {
                bias[static_cast<size_t>(i) * len + j] = T(-1e30);
            }
        }
        return TensorT<T>::from_data({len, len}, std::move(bias));
    }

    ModelConfig cfg_;
    ParamRegistry<T> reg_;
    std::vector<EncLayer> enc_;
    std::vector<DecLayer> dec_;
    TensorT<T> tok_table_, out_w_, out_b_, ke_table_;
    TensorT<T> pe_enc_, pe_dec_, causal_bias_;
};

}  // namespace lpt::model
