#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "advt/model.hpp"

namespace advt {

/// When the adversarial pass runs during training. Epochs count from 1;
/// kAlternateEpochs perturbs the even ones, so epoch 1 is always clean and
/// a 1-epoch run equals plain training.
enum class Schedule : uint8_t {
  kEveryEpoch,
  kAlternateEpochs,
  kNever,
};

const char* schedule_name(Schedule s);                       // "always" / "alternate" / "never"
std::optional<Schedule> parse_schedule(std::string_view s);

struct AdvConfig {
  double epsilon = 0.1;
  double alpha = 0.5;
  Schedule schedule = Schedule::kAlternateEpochs;

  void validate() const;
};

/// The sign perturbation: delta[i][j] = epsilon * sign(d_embedded[i][j]) on
/// real-token rows, zero on PAD rows. sign(0) is 0, so a zero gradient (or
/// epsilon = 0) produces no perturbation at all.
std::vector<double> fgsm_delta(const std::vector<double>& d_embedded,
                               const std::vector<uint8_t>& mask, double epsilon);

bool should_perturb(int epoch, Schedule schedule);

/// One example's loss and gradients.
struct StepResult {
  double loss = 0.0;
  Gradients grads;
};

/// forward + backward with no offset.
StepResult clean_step(const Parameters& params, const EncodedExample& example);

/// Clean pass, then an adversarial pass at the FGSM perturbation of the
/// clean input-embedding gradient (the perturbation is a constant w.r.t.
/// the parameters — no second-order term). Returns
///   loss  = alpha * J_clean + (1 - alpha) * J_adv
///   grads = alpha * G_clean + (1 - alpha) * G_adv   (parameter tensors)
/// with grads.embedded_input taken from the clean pass.
/// epsilon == 0 and alpha == 1 skip the adversarial pass entirely, so those
/// settings are bit-identical to clean_step, not merely close.
StepResult combined_step(const Parameters& params, const EncodedExample& example,
                         const AdvConfig& adv);

}  // namespace advt
