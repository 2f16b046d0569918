#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "advt/tokenizer.hpp"

namespace advt {

/// Dimensions and init seed of the classifier:
/// embedding lookup -> masked mean pool -> tanh hidden layer -> linear logits.
/// All arithmetic is IEEE double; forward/backward are pure functions, so
/// identical inputs give bit-identical outputs.
struct ModelConfig {
  int vocab_size = 0;   // V
  int embed_dim = 16;   // d
  int hidden_dim = 32;  // h
  int class_count = 0;  // C
  int max_len = 32;     // L
  uint64_t seed = 1;

  void validate() const;
  bool operator==(const ModelConfig&) const = default;
};

/// Equality of the dimension fields only. The seed initializes tensors but
/// is not part of a model's shape (and is not stored in parameter files).
bool same_shape(const ModelConfig& a, const ModelConfig& b);

/// Trainable tensors, row-major.
struct Parameters {
  ModelConfig config;
  std::vector<double> embedding;  // V x d, row 0 is the PAD row and stays zero
  std::vector<double> hidden_w;   // d x h
  std::vector<double> hidden_b;   // h
  std::vector<double> out_w;      // h x C
  std::vector<double> out_b;      // C

  bool all_finite() const;

  /// Flat binary file: magic "ADVT", version, V,d,h,C,L (u32 LE), then the
  /// five tensors in declaration order as f64 LE. Byte-stable across runs.
  void save(const std::string& path) const;
  static Parameters load(const std::string& path);

  bool operator==(const Parameters&) const = default;
};

/// Entries uniform in the open interval (-0.1, 0.1) from SplitMix64(seed),
/// filled in declaration order; the PAD embedding row is then zeroed.
Parameters init_params(const ModelConfig& config);

/// Intermediates of one forward pass, as backward needs them.
struct ForwardCache {
  std::vector<int> ids;           // L
  std::vector<uint8_t> mask;      // L
  std::vector<double> embedded;   // L x d, embedding rows plus offset
  std::vector<double> pooled;     // d, mask-weighted mean of embedded rows
  std::vector<double> pre_activation;  // h
  std::vector<double> hidden;     // h, tanh(pre_activation)
  std::vector<double> logits;     // C
};

/// offset, when given, is an L x d matrix added to the embedding rows
/// before pooling (the injection point for embedding-space perturbations);
/// its PAD rows must be exactly zero.
ForwardCache forward(const Parameters& params, const EncodedExample& example,
                     const std::vector<double>* offset = nullptr);

/// Cross-entropy with log-sum-exp stabilization; never overflows for
/// finite logits.
double loss(const std::vector<double>& logits, int label);

std::vector<double> softmax(const std::vector<double>& logits);

/// Gradients of loss(forward(...)) w.r.t. every parameter tensor and
/// w.r.t. the embedded input rows. embedded_input rows at PAD positions
/// are exactly zero.
struct Gradients {
  std::vector<double> embedding;       // V x d
  std::vector<double> hidden_w;        // d x h
  std::vector<double> hidden_b;        // h
  std::vector<double> out_w;           // h x C
  std::vector<double> out_b;           // C
  std::vector<double> embedded_input;  // L x d

  static Gradients zeros(const ModelConfig& config);
  /// param tensors += scale * other's param tensors (embedded_input is not
  /// touched; it has no meaning summed across examples).
  void add_scaled_params(const Gradients& other, double scale);
  void scale_params(double factor);
};

Gradients backward(const Parameters& params, const ForwardCache& cache, int label);

}  // namespace advt
