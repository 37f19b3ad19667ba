#pragma once

#include "crosswise/ci_asymptotic.hpp"
#include "crosswise/ci_exact.hpp"
#include "crosswise/errors.hpp"
#include "crosswise/evaluation.hpp"
#include "crosswise/model.hpp"
#include "crosswise/numkernel.hpp"
#include "crosswise/privacy.hpp"
#include "crosswise/sample_size.hpp"
#include "crosswise/types.hpp"
