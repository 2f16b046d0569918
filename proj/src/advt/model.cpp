#include "advt/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>

#include "advt/errors.hpp"
#include "advt/rng.hpp"

namespace advt {

namespace {

constexpr char kMagic[4] = {'A', 'D', 'V', 'T'};
constexpr uint32_t kFormatVersion = 1;

void fill_uniform(std::vector<double>& v, SplitMix64& rng) {
  for (double& x : v) {
    x = -0.1 + 0.2 * rng.next_double();  // open interval (-0.1, 0.1)
  }
}

void write_u32(std::ofstream& out, uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v & 0xFF),
                        static_cast<unsigned char>((v >> 8) & 0xFF),
                        static_cast<unsigned char>((v >> 16) & 0xFF),
                        static_cast<unsigned char>((v >> 24) & 0xFF)};
  out.write(reinterpret_cast<const char*>(b), 4);
}

uint32_t read_u32(std::ifstream& in, const std::string& path) {
  unsigned char b[4];
  if (!in.read(reinterpret_cast<char*>(b), 4)) throw ParseError(path + ": truncated header");
  return static_cast<uint32_t>(b[0]) | (static_cast<uint32_t>(b[1]) << 8) |
         (static_cast<uint32_t>(b[2]) << 16) | (static_cast<uint32_t>(b[3]) << 24);
}

void write_f64(std::ofstream& out, const std::vector<double>& v) {
  static_assert(sizeof(double) == 8);
  for (double x : v) {
    uint64_t bits;
    std::memcpy(&bits, &x, 8);
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((bits >> (8 * i)) & 0xFF);
    out.write(reinterpret_cast<const char*>(b), 8);
  }
}

void read_f64(std::ifstream& in, std::vector<double>& v, const std::string& path) {
  for (double& x : v) {
    unsigned char b[8];
    if (!in.read(reinterpret_cast<char*>(b), 8)) throw ParseError(path + ": truncated tensor data");
    uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= static_cast<uint64_t>(b[i]) << (8 * i);
    std::memcpy(&x, &bits, 8);
  }
}

bool vec_finite(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

void ModelConfig::validate() const {
  if (vocab_size < 1 || embed_dim < 1 || hidden_dim < 1 || class_count < 1 || max_len < 1) {
    throw ArgumentError("model config: all dimensions must be >= 1");
  }
}

bool same_shape(const ModelConfig& a, const ModelConfig& b) {
  return a.vocab_size == b.vocab_size && a.embed_dim == b.embed_dim &&
         a.hidden_dim == b.hidden_dim && a.class_count == b.class_count && a.max_len == b.max_len;
}

bool Parameters::all_finite() const {
  return vec_finite(embedding) && vec_finite(hidden_w) && vec_finite(hidden_b) &&
         vec_finite(out_w) && vec_finite(out_b);
}

Parameters init_params(const ModelConfig& config) {
  config.validate();
  Parameters p;
  p.config = config;
  const size_t v = static_cast<size_t>(config.vocab_size);
  const size_t d = static_cast<size_t>(config.embed_dim);
  const size_t h = static_cast<size_t>(config.hidden_dim);
  const size_t c = static_cast<size_t>(config.class_count);
  p.embedding.resize(v * d);
  p.hidden_w.resize(d * h);
  p.hidden_b.resize(h);
  p.out_w.resize(h * c);
  p.out_b.resize(c);

  SplitMix64 rng(config.seed);
  fill_uniform(p.embedding, rng);
  fill_uniform(p.hidden_w, rng);
  fill_uniform(p.hidden_b, rng);
  fill_uniform(p.out_w, rng);
  fill_uniform(p.out_b, rng);
  std::fill_n(p.embedding.begin(), d, 0.0);  // PAD row
  return p;
}

ForwardCache forward(const Parameters& params, const EncodedExample& example,
                     const std::vector<double>* offset) {
  const ModelConfig& cfg = params.config;
  const size_t L = static_cast<size_t>(cfg.max_len);
  const size_t d = static_cast<size_t>(cfg.embed_dim);
  const size_t h = static_cast<size_t>(cfg.hidden_dim);
  const size_t C = static_cast<size_t>(cfg.class_count);

  if (example.ids.size() != L || example.mask.size() != L) {
    throw ArgumentError("forward: example length " + std::to_string(example.ids.size()) +
                        " does not match model max_len " + std::to_string(cfg.max_len));
  }
  if (offset && offset->size() != L * d) {
    throw ArgumentError("forward: offset must be max_len x embed_dim");
  }
  for (size_t i = 0; i < L; ++i) {
    const int id = example.ids[i];
    if (id < 0 || id >= cfg.vocab_size) {
      throw ArgumentError("forward: token id " + std::to_string(id) + " out of range");
    }
    if ((example.mask[i] != 0) != (id != Vocabulary::kPad)) {
      throw ArgumentError("forward: mask/ids mismatch at position " + std::to_string(i));
    }
    if (offset && !example.mask[i]) {
      for (size_t j = 0; j < d; ++j) {
        if ((*offset)[i * d + j] != 0.0) {
          throw ArgumentError("forward: offset must be zero at PAD position " + std::to_string(i));
        }
      }
    }
  }

  ForwardCache cache;
  cache.ids = example.ids;
  cache.mask = example.mask;
  cache.embedded.assign(L * d, 0.0);
  cache.pooled.assign(d, 0.0);
  cache.pre_activation.assign(h, 0.0);
  cache.hidden.assign(h, 0.0);
  cache.logits.assign(C, 0.0);

  int real_tokens = 0;
  for (size_t i = 0; i < L; ++i) {
    const size_t row = static_cast<size_t>(example.ids[i]) * d;
    for (size_t j = 0; j < d; ++j) {
      double e = params.embedding[row + j];
      if (offset) e += (*offset)[i * d + j];
      cache.embedded[i * d + j] = e;
    }
    if (example.mask[i]) {
      ++real_tokens;
      for (size_t j = 0; j < d; ++j) cache.pooled[j] += cache.embedded[i * d + j];
    }
  }
  const double denom = static_cast<double>(std::max(1, real_tokens));
  for (size_t j = 0; j < d; ++j) cache.pooled[j] /= denom;

  for (size_t k = 0; k < h; ++k) {
    double acc = params.hidden_b[k];
    for (size_t j = 0; j < d; ++j) acc += cache.pooled[j] * params.hidden_w[j * h + k];
    cache.pre_activation[k] = acc;
    cache.hidden[k] = std::tanh(acc);
  }
  for (size_t c = 0; c < C; ++c) {
    double acc = params.out_b[c];
    for (size_t k = 0; k < h; ++k) acc += cache.hidden[k] * params.out_w[k * C + c];
    cache.logits[c] = acc;
  }
  return cache;
}

double loss(const std::vector<double>& logits, int label) {
  if (label < 0 || static_cast<size_t>(label) >= logits.size()) {
    throw ArgumentError("loss: label " + std::to_string(label) + " out of range");
  }
  const double m = *std::max_element(logits.begin(), logits.end());
  double sum = 0.0;
  for (double l : logits) sum += std::exp(l - m);
  return std::log(sum) + m - logits[static_cast<size_t>(label)];
}

std::vector<double> softmax(const std::vector<double>& logits) {
  const double m = *std::max_element(logits.begin(), logits.end());
  std::vector<double> p(logits.size());
  double sum = 0.0;
  for (size_t i = 0; i < logits.size(); ++i) {
    p[i] = std::exp(logits[i] - m);
    sum += p[i];
  }
  for (double& x : p) x /= sum;
  return p;
}

Gradients Gradients::zeros(const ModelConfig& config) {
  Gradients g;
  const size_t v = static_cast<size_t>(config.vocab_size);
  const size_t d = static_cast<size_t>(config.embed_dim);
  const size_t h = static_cast<size_t>(config.hidden_dim);
  const size_t c = static_cast<size_t>(config.class_count);
  g.embedding.assign(v * d, 0.0);
  g.hidden_w.assign(d * h, 0.0);
  g.hidden_b.assign(h, 0.0);
  g.out_w.assign(h * c, 0.0);
  g.out_b.assign(c, 0.0);
  g.embedded_input.assign(static_cast<size_t>(config.max_len) * d, 0.0);
  return g;
}

void Gradients::add_scaled_params(const Gradients& other, double scale) {
  auto axpy = [scale](std::vector<double>& dst, const std::vector<double>& src) {
    for (size_t i = 0; i < dst.size(); ++i) dst[i] += scale * src[i];
  };
  axpy(embedding, other.embedding);
  axpy(hidden_w, other.hidden_w);
  axpy(hidden_b, other.hidden_b);
  axpy(out_w, other.out_w);
  axpy(out_b, other.out_b);
}

void Gradients::scale_params(double factor) {
  for (auto* t : {&embedding, &hidden_w, &hidden_b, &out_w, &out_b}) {
    for (double& x : *t) x *= factor;
  }
}

Gradients backward(const Parameters& params, const ForwardCache& cache, int label) {
  const ModelConfig& cfg = params.config;
  const size_t L = static_cast<size_t>(cfg.max_len);
  const size_t d = static_cast<size_t>(cfg.embed_dim);
  const size_t h = static_cast<size_t>(cfg.hidden_dim);
  const size_t C = static_cast<size_t>(cfg.class_count);
  if (label < 0 || static_cast<size_t>(label) >= C) {
    throw ArgumentError("backward: label " + std::to_string(label) + " out of range");
  }

  Gradients g = Gradients::zeros(cfg);

  // d loss / d logits = softmax - onehot
  std::vector<double> dlogits = softmax(cache.logits);
  dlogits[static_cast<size_t>(label)] -= 1.0;

  for (size_t c = 0; c < C; ++c) g.out_b[c] = dlogits[c];
  for (size_t k = 0; k < h; ++k) {
    for (size_t c = 0; c < C; ++c) g.out_w[k * C + c] = cache.hidden[k] * dlogits[c];
  }

  std::vector<double> dpre(h);
  for (size_t k = 0; k < h; ++k) {
    double dhidden = 0.0;
    for (size_t c = 0; c < C; ++c) dhidden += params.out_w[k * C + c] * dlogits[c];
    dpre[k] = dhidden * (1.0 - cache.hidden[k] * cache.hidden[k]);  // tanh'
  }

  for (size_t k = 0; k < h; ++k) g.hidden_b[k] = dpre[k];
  for (size_t j = 0; j < d; ++j) {
    for (size_t k = 0; k < h; ++k) g.hidden_w[j * h + k] = cache.pooled[j] * dpre[k];
  }

  std::vector<double> dpooled(d);
  for (size_t j = 0; j < d; ++j) {
    double acc = 0.0;
    for (size_t k = 0; k < h; ++k) acc += params.hidden_w[j * h + k] * dpre[k];
    dpooled[j] = acc;
  }

  // masked mean: every real token gets dpooled / token_count
  int real_tokens = 0;
  for (size_t i = 0; i < L; ++i) real_tokens += cache.mask[i];
  const double denom = static_cast<double>(std::max(1, real_tokens));
  for (size_t i = 0; i < L; ++i) {
    if (!cache.mask[i]) continue;  // PAD rows stay exactly zero
    const size_t erow = static_cast<size_t>(cache.ids[i]) * d;
    for (size_t j = 0; j < d; ++j) {
      const double v = dpooled[j] / denom;
      g.embedded_input[i * d + j] = v;
      g.embedding[erow + j] += v;
    }
  }
  return g;
}

void Parameters::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out.write(kMagic, 4);
  write_u32(out, kFormatVersion);
  write_u32(out, static_cast<uint32_t>(config.vocab_size));
  write_u32(out, static_cast<uint32_t>(config.embed_dim));
  write_u32(out, static_cast<uint32_t>(config.hidden_dim));
  write_u32(out, static_cast<uint32_t>(config.class_count));
  write_u32(out, static_cast<uint32_t>(config.max_len));
  write_f64(out, embedding);
  write_f64(out, hidden_w);
  write_f64(out, hidden_b);
  write_f64(out, out_w);
  write_f64(out, out_b);
  if (!out) throw IoError("write failure on " + path);
}

Parameters Parameters::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0) {
    throw ParseError(path + ": not a parameter file (bad magic)");
  }
  const uint32_t version = read_u32(in, path);
  if (version != kFormatVersion) {
    throw ParseError(path + ": unsupported format version " + std::to_string(version));
  }
  Parameters p;
  p.config.vocab_size = static_cast<int>(read_u32(in, path));
  p.config.embed_dim = static_cast<int>(read_u32(in, path));
  p.config.hidden_dim = static_cast<int>(read_u32(in, path));
  p.config.class_count = static_cast<int>(read_u32(in, path));
  p.config.max_len = static_cast<int>(read_u32(in, path));
  p.config.validate();
  const size_t v = static_cast<size_t>(p.config.vocab_size);
  const size_t d = static_cast<size_t>(p.config.embed_dim);
  const size_t h = static_cast<size_t>(p.config.hidden_dim);
  const size_t c = static_cast<size_t>(p.config.class_count);
  p.embedding.resize(v * d);
  p.hidden_w.resize(d * h);
  p.hidden_b.resize(h);
  p.out_w.resize(h * c);
  p.out_b.resize(c);
  read_f64(in, p.embedding, path);
  read_f64(in, p.hidden_w, path);
  read_f64(in, p.hidden_b, path);
  read_f64(in, p.out_w, path);
  read_f64(in, p.out_b, path);
  char extra;
  if (in.read(&extra, 1)) throw ParseError(path + ": trailing bytes after tensor data");
  return p;
}

}  // namespace advt
