#pragma once

#include "polyembed/maps/strip.hpp"
#include "polyembed/sampling.hpp"
#include "polyembed/verify/report.hpp"

namespace polyembed {

/// Measure of the points of the immersion x identity (strip S lifted by the
/// flow for time `lift_time`) that also lie on S' x fiber. Analytically
/// 4 w^2 vol(fiber) without lift and 0 once lift_time >= 2w with a fiber
/// inside B^2(w). Monte Carlo over S x fiber; passes when the estimate
/// agrees with the closed form within 3 standard errors and the closed form
/// is below epsilon.
VerificationReport estimate_double_point_volume(const StripImmersionModel& model, const ShapeDescriptor& fiber,
                                                const SampleSpec& spec, double epsilon, double lift_time = 0.0);

}  // namespace polyembed
