#pragma once

#include <string>

#include "crcc/probability.hpp"

namespace crcc {

/// Factorization shapes of the auxiliary variables. `general` is the
/// correlated chain used throughout; `cmacc` is the compound-MAC form with
/// no satellite variables; the remaining four are the interference-channel
/// and cognitive-radio specialisations with W0 playing the time-sharing role.
enum class Form { general, cmacc, ic_hodtani, ic_hk, icc, crc };

std::string to_string(Form f);

/// Parent structure of each factor (tables left empty), ready for
/// check_factorization. Covers all nine canonical variables.
FactorizationSpec structure_of(Form f);

}  // namespace crcc
