#include "advt/adversarial.hpp"

#include "advt/errors.hpp"

namespace advt {

const char* schedule_name(Schedule s) {
  switch (s) {
    case Schedule::kEveryEpoch: return "always";
    case Schedule::kAlternateEpochs: return "alternate";
    case Schedule::kNever: return "never";
  }
  return "?";
}

std::optional<Schedule> parse_schedule(std::string_view s) {
  if (s == "always") return Schedule::kEveryEpoch;
  if (s == "alternate") return Schedule::kAlternateEpochs;
  if (s == "never") return Schedule::kNever;
  return std::nullopt;
}

void AdvConfig::validate() const {
  if (!(epsilon >= 0.0)) throw ArgumentError("epsilon must be >= 0");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ArgumentError("alpha must be in [0, 1]");
}

std::vector<double> fgsm_delta(const std::vector<double>& d_embedded,
                               const std::vector<uint8_t>& mask, double epsilon) {
  if (!(epsilon >= 0.0)) throw ArgumentError("fgsm_delta: epsilon must be >= 0");
  if (mask.empty() || d_embedded.size() % mask.size() != 0) {
    throw ArgumentError("fgsm_delta: gradient matrix is not L x d");
  }
  const size_t d = d_embedded.size() / mask.size();
  std::vector<double> delta(d_embedded.size(), 0.0);
  for (size_t i = 0; i < mask.size(); ++i) {
    if (!mask[i]) continue;
    for (size_t j = 0; j < d; ++j) {
      const double g = d_embedded[i * d + j];
      if (g > 0.0) {
        delta[i * d + j] = epsilon;
      } else if (g < 0.0) {
        delta[i * d + j] = -epsilon;
      }
    }
  }
  return delta;
}

bool should_perturb(int epoch, Schedule schedule) {
  if (epoch < 1) throw ArgumentError("should_perturb: epochs count from 1");
  switch (schedule) {
    case Schedule::kEveryEpoch: return true;
    case Schedule::kNever: return false;
    case Schedule::kAlternateEpochs: return epoch % 2 == 0;
  }
  return false;
}

StepResult clean_step(const Parameters& params, const EncodedExample& example) {
  StepResult result;
  ForwardCache cache = forward(params, example);
  result.loss = loss(cache.logits, example.label);
  result.grads = backward(params, cache, example.label);
  return result;
}

StepResult combined_step(const Parameters& params, const EncodedExample& example,
                         const AdvConfig& adv) {
  adv.validate();
  StepResult clean = clean_step(params, example);
  // Degenerate settings return the clean pass untouched; mixing
  // alpha*x + (1-alpha)*x would already be off by an ulp for general alpha.
  if (adv.epsilon == 0.0 || adv.alpha == 1.0) return clean;

  const std::vector<double> delta =
      fgsm_delta(clean.grads.embedded_input, example.mask, adv.epsilon);
  ForwardCache adv_cache = forward(params, example, &delta);
  const double adv_loss = loss(adv_cache.logits, example.label);
  Gradients adv_grads = backward(params, adv_cache, example.label);

  StepResult result;
  result.loss = adv.alpha * clean.loss + (1.0 - adv.alpha) * adv_loss;
  result.grads = Gradients::zeros(params.config);
  result.grads.add_scaled_params(clean.grads, adv.alpha);
  result.grads.add_scaled_params(adv_grads, 1.0 - adv.alpha);
  result.grads.embedded_input = std::move(clean.grads.embedded_input);
  return result;
}

}  // namespace advt
